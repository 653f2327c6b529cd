"""Shared domain types: documents, spans, alignment pairs, configuration."""

from __future__ import annotations

import os
from dataclasses import dataclass, field


class InputFormatError(ValueError):
    """Raised when an input file (sentences, embeddings, alignments) is malformed."""


@dataclass(frozen=True)
class Span:
    """Half-open range of sentence indices; ``start == end`` encodes an empty span."""

    start: int
    end: int

    def __post_init__(self) -> None:
        if self.start < 0 or self.end < self.start:
            raise ValueError(f"invalid span [{self.start}, {self.end})")

    def __len__(self) -> int:
        return self.end - self.start

    @property
    def is_empty(self) -> bool:
        return self.start == self.end


@dataclass(frozen=True)
class AlignmentPair:
    """One alignment unit: a source span matched to a target span.

    Either side may be empty (a null alignment: 1-0 deletion or 0-1
    insertion) but not both. ``score`` is the pair's similarity for real
    pairs and the per-sentence null value for null pairs.
    """

    src: Span
    tgt: Span
    score: float

    def __post_init__(self) -> None:
        if self.src.is_empty and self.tgt.is_empty:
            raise ValueError("alignment pair with both sides empty")

    @property
    def is_null(self) -> bool:
        return self.src.is_empty or self.tgt.is_empty


# A path is an ordered, non-overlapping, jointly exhaustive pair list.
AlignmentPath = list[AlignmentPair]


@dataclass(frozen=True)
class Document:
    """A pre-segmented text: one sentence per entry plus whitespace word counts."""

    sentences: tuple[str, ...]
    word_counts: tuple[int, ...] = field(default=())

    def __post_init__(self) -> None:
        if not self.word_counts and self.sentences:
            object.__setattr__(
                self, "word_counts", tuple(len(s.split()) for s in self.sentences)
            )
        if len(self.word_counts) != len(self.sentences):
            raise ValueError("word_counts length does not match sentence count")

    def __len__(self) -> int:
        return len(self.sentences)

    def slice(self, start: int, end: int) -> "Document":
        return Document(self.sentences[start:end], self.word_counts[start:end])

    @classmethod
    def from_sentences(cls, sentences) -> "Document":
        return cls(tuple(sentences))


@dataclass(frozen=True)
class AlignConfig:
    """User parameters for scoring, pathfinding and divide-and-conquer.

    ``min_score`` doubles as the value every null edge contributes; values
    above 1.0 are allowed and make every real pair unreachable.
    """

    min_score: float = 0.4
    max_merge: int = 3
    max_words: int = 80
    word_penalty: float = 0.01
    merge_penalty_free: int = 3
    merge_penalty: float = 0.01
    max_nodes: int = 4_000_000
    gc_max_nodes: int = 40_000_000
    band: int = 5

    def __post_init__(self) -> None:
        if self.min_score < 0:
            raise ValueError("min_score must be >= 0")
        if self.max_merge < 1:
            raise ValueError("max_merge must be >= 1")
        if self.max_words < 1:
            raise ValueError("max_words must be >= 1")
        if self.word_penalty < 0 or self.merge_penalty < 0:
            raise ValueError("penalties must be >= 0")
        if self.merge_penalty_free < 0:
            raise ValueError("merge_penalty_free must be >= 0")
        if self.max_nodes < 1 or self.gc_max_nodes < 1:
            raise ValueError("node budgets must be >= 1")
        if self.band < 0:
            raise ValueError("band must be >= 0")


def load_document(path: str | os.PathLike) -> Document:
    """Read a one-sentence-per-line UTF-8 file into a Document.

    Accepts LF or CRLF endings; a trailing newline does not produce an
    empty final sentence, but interior blank lines are kept as empty
    sentences. Invalid UTF-8 is rejected with the byte offset.
    """
    with open(path, "rb") as f:
        raw = f.read()
    try:
        text = raw.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise InputFormatError(
            f"{path}: invalid UTF-8 at byte offset {exc.start}"
        ) from exc
    if text == "":
        return Document(())
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    sentences = tuple(line[:-1] if line.endswith("\r") else line for line in lines)
    return Document(sentences)


def write_document(path: str | os.PathLike, doc: Document) -> None:
    """Write a Document in the format ``load_document`` reads (LF endings)."""
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        for sentence in doc.sentences:
            f.write(sentence)
            f.write("\n")
