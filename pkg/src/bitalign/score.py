"""Edge scoring: similarity weighting plus word-length and merge penalties."""

from __future__ import annotations

from dataclasses import dataclass

from .core import AlignConfig, AlignmentPair, Document, Span
from .embed import EmbeddingMatrix, SpanVectorCache, similarity, span_vector


@dataclass(frozen=True)
class EdgeScore:
    """Scored candidate edge ending at some node.

    For real edges ``weighted`` is raw_sim times the total sentence count
    minus penalties. Null edges carry no similarity (``raw_sim`` is NaN)
    and contribute exactly the configured minimum score.
    """

    pair: AlignmentPair
    raw_sim: float
    weighted: float
    is_null: bool

    @classmethod
    def null(cls, pair: AlignmentPair, cfg: AlignConfig) -> "EdgeScore":
        if not pair.is_null:
            raise ValueError("null edge requires an empty side")
        return cls(pair=pair, raw_sim=float("nan"), weighted=cfg.min_score, is_null=True)


def candidate_edges(node: tuple[int, int], cfg: AlignConfig) -> list[tuple[Span, Span]]:
    """All real (merge window bounded) span pairs ending at node (i, j).

    Node indices count sentences consumed, so the candidates for (i, j)
    are the spans [i-a, i) x [j-b, j) for every a, b up to the merge
    window (clipped at the document start).
    """
    i, j = node
    if i < 1 or j < 1:
        raise ValueError("candidate edges exist only for nodes with i >= 1 and j >= 1")
    out = []
    for a in range(1, min(cfg.max_merge, i) + 1):
        for b in range(1, min(cfg.max_merge, j) + 1):
            out.append((Span(i - a, i), Span(j - b, j)))
    return out


def score_edge(
    src_doc: Document,
    tgt_doc: Document,
    src: Span,
    tgt: Span,
    src_matrix: EmbeddingMatrix,
    tgt_matrix: EmbeddingMatrix,
    cfg: AlignConfig,
    pathfinding: bool = True,
    caches: tuple[SpanVectorCache, SpanVectorCache] | None = None,
) -> EdgeScore:
    """Score one real candidate edge.

    raw_sim is the cosine of the two span vectors. The weighted score is
    raw_sim * (total sentences) minus a per-excess-word penalty on each
    side over ``max_words``, minus (in the pathfinding phase only) a
    penalty per merged sentence beyond ``merge_penalty_free``.
    """
    if src.is_empty or tgt.is_empty:
        raise ValueError("score_edge requires non-empty spans on both sides")
    if len(src) > cfg.max_merge or len(tgt) > cfg.max_merge:
        raise ValueError("span exceeds the merge window")
    if src.end > len(src_doc) or tgt.end > len(tgt_doc):
        raise ValueError("span out of document bounds")
    src_cache, tgt_cache = caches if caches is not None else (None, None)
    raw_sim = similarity(
        span_vector(src_matrix, src, src_cache), span_vector(tgt_matrix, tgt, tgt_cache)
    )
    total = len(src) + len(tgt)
    src_words = sum(src_doc.word_counts[src.start : src.end])
    tgt_words = sum(tgt_doc.word_counts[tgt.start : tgt.end])
    word_len_penalty = cfg.word_penalty * max(0, src_words - cfg.max_words) + cfg.word_penalty * max(
        0, tgt_words - cfg.max_words
    )
    merge_count_penalty = 0.0
    if pathfinding:
        merge_count_penalty = cfg.merge_penalty * max(0, total - cfg.merge_penalty_free)
    weighted = raw_sim * total - word_len_penalty - merge_count_penalty
    return EdgeScore(
        pair=AlignmentPair(src, tgt, raw_sim),
        raw_sim=raw_sim,
        weighted=weighted,
        is_null=False,
    )
