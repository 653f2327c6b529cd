"""Sentence vectors: binary file IO, a hash-trigram embedder, span vectors."""

from __future__ import annotations

import math
import os
import struct
from dataclasses import dataclass

import numpy as np

from .core import Document, InputFormatError, Span

MAGIC = b"SAEV"
VERSION = 1

_FNV_OFFSET = 0xCBF29CE484222325
_FNV_PRIME = 0x100000001B3
_FNV_MASK = 0xFFFFFFFFFFFFFFFF


@dataclass(frozen=True)
class EmbeddingMatrix:
    """Unit-norm sentence vectors, row i belonging to sentence i.

    ``vectors`` is a read-only float64 array of shape (count, dim).
    """

    vectors: np.ndarray

    def __post_init__(self) -> None:
        if self.vectors.ndim != 2:
            raise ValueError("embedding matrix must be 2-D")
        self.vectors.flags.writeable = False

    @property
    def dim(self) -> int:
        return self.vectors.shape[1]

    def __len__(self) -> int:
        return self.vectors.shape[0]

    def slice(self, start: int, end: int) -> "EmbeddingMatrix":
        return EmbeddingMatrix(self.vectors[start:end])


class SpanVectorCache:
    """Memo for merged-span vectors, keyed by (start, end).

    Inserts are idempotent (the vector for a span never changes), so
    concurrent lookups and duplicate inserts are harmless.
    """

    def __init__(self) -> None:
        self._store: dict[tuple[int, int], np.ndarray] = {}

    def get(self, key: tuple[int, int]):
        return self._store.get(key)

    def put(self, key: tuple[int, int], vec: np.ndarray) -> None:
        self._store.setdefault(key, vec)

    def __len__(self) -> int:
        return len(self._store)


def _normalize_rows(raw: np.ndarray, source: str) -> np.ndarray:
    norms = np.sqrt(np.einsum("ij,ij->i", raw, raw))
    zero = np.flatnonzero(norms == 0.0)
    if zero.size:
        raise InputFormatError(f"{source}: zero vector at row {zero[0]} cannot be normalized")
    return raw / norms[:, None]


def load_embeddings(path: str | os.PathLike, expected_count: int) -> EmbeddingMatrix:
    """Load a SAEV file and L2-normalize its rows.

    The header is magic ``SAEV``, u32 version, u32 count, u32 dim (all
    little-endian), followed by count*dim float32 values row-major. A count
    that disagrees with ``expected_count`` means the embeddings were built
    from a different sentence file and is rejected.
    """
    with open(path, "rb") as f:
        header = f.read(16)
        if len(header) < 16 or header[:4] != MAGIC:
            raise InputFormatError(f"{path}: not a SAEV embedding file")
        version, count, dim = struct.unpack("<III", header[4:16])
        if version != VERSION:
            raise InputFormatError(f"{path}: unsupported SAEV version {version}")
        payload = f.read()
    if count != expected_count:
        raise InputFormatError(
            f"{path}: embedding count {count} does not match sentence count "
            f"{expected_count} (embeddings built from a different file?)"
        )
    expected_bytes = 4 * count * dim
    if len(payload) != expected_bytes:
        raise InputFormatError(
            f"{path}: truncated payload ({len(payload)} bytes, expected {expected_bytes})"
        )
    raw = np.frombuffer(payload, dtype="<f4").astype(np.float64).reshape(count, dim)
    if not np.isfinite(raw).all():
        bad = np.argwhere(~np.isfinite(raw))[0]
        raise InputFormatError(
            f"{path}: non-finite value at row {bad[0]}, column {bad[1]}"
        )
    return EmbeddingMatrix(_normalize_rows(raw, str(path)))


def write_embeddings(path: str | os.PathLike, vectors: np.ndarray) -> None:
    """Write rows as a SAEV v1 file (float32 payload)."""
    arr = np.ascontiguousarray(vectors, dtype="<f4")
    count, dim = arr.shape
    with open(path, "wb") as f:
        f.write(MAGIC)
        f.write(struct.pack("<III", VERSION, count, dim))
        f.write(arr.tobytes())


def fnv1a64(data: bytes) -> int:
    """64-bit FNV-1a; the fixed cross-platform hash behind the trigram embedder."""
    h = _FNV_OFFSET
    for byte in data:
        h = ((h ^ byte) * _FNV_PRIME) & _FNV_MASK
    return h


def hash_ngram_embed(doc: Document, dim: int = 256) -> EmbeddingMatrix:
    """Deterministic stand-in embedder: hashed character-trigram counts.

    Each sentence is lowercased, its character trigrams are bucket-counted
    modulo ``dim`` and the count vector is L2-normalized. Sentences too
    short to contain a trigram get a one-hot bucket derived from hashing
    the whole sentence, so every row is unit-norm.
    """
    if dim < 16:
        raise ValueError("embedding dim must be >= 16")
    bucket: dict[str, int] = {}
    rows = np.zeros((len(doc), dim), dtype=np.float64)
    for i, sentence in enumerate(doc.sentences):
        text = sentence.lower()
        if len(text) < 3:
            rows[i, fnv1a64(text.encode("utf-8")) % dim] = 1.0
            continue
        row = rows[i]
        for k in range(len(text) - 2):
            gram = text[k : k + 3]
            idx = bucket.get(gram)
            if idx is None:
                idx = fnv1a64(gram.encode("utf-8")) % dim
                bucket[gram] = idx
            row[idx] += 1.0
        row /= math.sqrt(float(np.dot(row, row)))
    return EmbeddingMatrix(rows)


def span_vector(
    matrix: EmbeddingMatrix, span: Span, cache: SpanVectorCache | None = None
) -> np.ndarray:
    """Unit vector for a contiguous non-empty sentence span.

    A single-sentence span returns the matrix row itself; wider spans are
    the L2-normalized mean of their rows. The result is independent of
    cache state.
    """
    if span.is_empty:
        raise ValueError("span_vector requires a non-empty span")
    if span.end > len(matrix):
        raise ValueError(f"span [{span.start}, {span.end}) out of bounds for {len(matrix)} rows")
    if len(span) == 1:
        return matrix.vectors[span.start]
    key = (span.start, span.end)
    if cache is not None:
        hit = cache.get(key)
        if hit is not None:
            return hit
    summed = np.sum(matrix.vectors[span.start : span.end], axis=0)
    norm = math.sqrt(float(np.dot(summed, summed)))
    if norm == 0.0:
        raise ValueError(f"span [{span.start}, {span.end}) sums to a zero vector")
    vec = summed / norm
    vec.flags.writeable = False
    if cache is not None:
        cache.put(key, vec)
    return vec


def similarity(u: np.ndarray, v: np.ndarray) -> float:
    """Cosine of two unit vectors: a dot product clamped to [-1, 1]."""
    s = float(np.dot(u, v))
    if s > 1.0:
        return 1.0
    if s < -1.0:
        return -1.0
    return s
