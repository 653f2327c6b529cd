"""Sentence alignment engine scored by bilingual sentence embeddings."""

from .anchor import AlignStats, align_large, find_delimiter, middle_half
from .core import (
    AlignConfig,
    AlignmentPair,
    AlignmentPath,
    Document,
    InputFormatError,
    Span,
    load_document,
    write_document,
)
from .embed import (
    EmbeddingMatrix,
    SpanVectorCache,
    hash_ngram_embed,
    load_embeddings,
    similarity,
    span_vector,
    write_embeddings,
)
from .evaluate import (
    ConditionScores,
    EvalReport,
    GoldSet,
    evaluate,
    format_path_lines,
    load_gold,
    read_alignment_file,
    write_alignment_file,
)
from .galechurch import GCParams, gc_align, gc_terminal_cost
from .path import (
    PathViolation,
    edge_weight_tables,
    find_path,
    merge_kinds,
    terminal_score,
    validate_path,
)
from .readjust import readjust, reattach_nulls, split_many_to_many
from .score import EdgeScore, candidate_edges, score_edge

__version__ = "0.1.0"

__all__ = [
    "AlignConfig",
    "AlignStats",
    "AlignmentPair",
    "AlignmentPath",
    "ConditionScores",
    "Document",
    "EdgeScore",
    "EmbeddingMatrix",
    "EvalReport",
    "GCParams",
    "GoldSet",
    "InputFormatError",
    "PathViolation",
    "Span",
    "SpanVectorCache",
    "align_large",
    "candidate_edges",
    "edge_weight_tables",
    "evaluate",
    "find_delimiter",
    "find_path",
    "format_path_lines",
    "gc_align",
    "gc_terminal_cost",
    "hash_ngram_embed",
    "load_document",
    "load_embeddings",
    "load_gold",
    "merge_kinds",
    "middle_half",
    "read_alignment_file",
    "readjust",
    "reattach_nulls",
    "score_edge",
    "similarity",
    "span_vector",
    "split_many_to_many",
    "terminal_score",
    "validate_path",
    "write_alignment_file",
    "write_document",
    "write_embeddings",
]
