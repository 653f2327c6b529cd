"""Maximal-score monotone path search over the alignment lattice."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import AlignConfig, AlignmentPair, AlignmentPath, Document, Span
from .embed import EmbeddingMatrix, SpanVectorCache, similarity, span_vector


@dataclass(frozen=True)
class PathViolation:
    """First structural defect found in a path, by pair index."""

    index: int
    message: str


def merge_kinds(max_merge: int) -> list[tuple[int, int]]:
    """Real edge shapes (a source sentences, b target sentences) in the
    order used to break score ties: fewer total sentences first, then the
    larger source side."""
    shapes = [(a, b) for a in range(1, max_merge + 1) for b in range(1, max_merge + 1)]
    return sorted(shapes, key=lambda ab: (ab[0] + ab[1], -ab[0]))


def _span_stacks(vectors: np.ndarray, max_merge: int) -> list[np.ndarray]:
    """Per-width stacks of span vectors; stack[a-1][p] covers rows [p, p+a).

    Width-1 spans are the matrix rows themselves; wider spans are the
    normalized running sums.
    """
    n = vectors.shape[0]
    stacks = [vectors]
    sums = vectors
    for a in range(2, max_merge + 1):
        if n - a + 1 <= 0:
            sums = vectors[:0]
            stacks.append(sums)
            continue
        sums = sums[: n - a + 1] + vectors[a - 1 :]
        norms = np.sqrt(np.einsum("ij,ij->i", sums, sums))
        if np.any(norms == 0.0):
            raise ValueError("merged span sums to a zero vector")
        stacks.append(sums / norms[:, None])
    return stacks


def edge_weight_tables(
    src_doc: Document,
    tgt_doc: Document,
    src_matrix: EmbeddingMatrix,
    tgt_matrix: EmbeddingMatrix,
    cfg: AlignConfig,
    pathfinding: bool = True,
) -> dict[tuple[int, int], np.ndarray]:
    """Gated weighted scores for every real edge shape.

    tables[(a, b)][p, q] is the weighted score of aligning spans
    [p, p+a) x [q, q+b), or -inf where the raw similarity misses the
    acceptance threshold. Entry [i-a, j-b] therefore scores the edge
    ending at node (i, j). The arithmetic mirrors ``score_edge`` term for
    term so the two routes agree.
    """
    N, M = len(src_doc), len(tgt_doc)
    src_stacks = _span_stacks(src_matrix.vectors, cfg.max_merge)
    tgt_stacks = _span_stacks(tgt_matrix.vectors, cfg.max_merge)
    src_cum = np.concatenate(([0], np.cumsum(src_doc.word_counts, dtype=np.int64)))
    tgt_cum = np.concatenate(([0], np.cumsum(tgt_doc.word_counts, dtype=np.int64)))
    tables: dict[tuple[int, int], np.ndarray] = {}
    for a, b in merge_kinds(cfg.max_merge):
        rows, cols = max(N - a + 1, 0), max(M - b + 1, 0)
        if rows == 0 or cols == 0:
            tables[(a, b)] = np.full((rows, cols), -np.inf)
            continue
        sims = np.clip(src_stacks[a - 1] @ tgt_stacks[b - 1].T, -1.0, 1.0)
        total = a + b
        src_excess = np.maximum(0, (src_cum[a:] - src_cum[:-a]) - cfg.max_words)
        tgt_excess = np.maximum(0, (tgt_cum[b:] - tgt_cum[:-b]) - cfg.max_words)
        penalty = cfg.word_penalty * src_excess[:, None] + cfg.word_penalty * tgt_excess[None, :]
        weighted = sims * total - penalty
        if pathfinding:
            weighted = weighted - cfg.merge_penalty * max(0, total - cfg.merge_penalty_free)
        tables[(a, b)] = np.where(sims >= cfg.min_score, weighted, -np.inf)
    return tables


def _solve(
    src_doc: Document,
    tgt_doc: Document,
    src_matrix: EmbeddingMatrix,
    tgt_matrix: EmbeddingMatrix,
    cfg: AlignConfig,
) -> tuple[np.ndarray, np.ndarray, list[tuple[int, int]]]:
    """Fill the DP lattice row-major and return (best, back, kinds).

    Every node exposes the two null moves worth ``min_score`` each, so all
    nodes are reachable. Real edges compete only where their similarity
    clears the threshold. Ties prefer real edges over nulls, then fewer
    merged sentences, then the larger source span; among the nulls,
    deletion wins. That order is realized by scanning candidates in
    preference order with strict-greater updates.
    """
    N, M = len(src_doc), len(tgt_doc)
    if len(src_matrix) != N or len(tgt_matrix) != M:
        raise ValueError(
            f"embedding row counts ({len(src_matrix)}, {len(tgt_matrix)}) do not match "
            f"document sizes ({N}, {M})"
        )
    if (N + 1) * (M + 1) > cfg.max_nodes:
        raise ValueError(
            f"alignment graph has {(N + 1) * (M + 1)} nodes, over the {cfg.max_nodes} budget; "
            "use align_large for inputs this big"
        )
    tables = edge_weight_tables(src_doc, tgt_doc, src_matrix, tgt_matrix, cfg, pathfinding=True)
    kinds = merge_kinds(cfg.max_merge)
    kind_del, kind_ins = len(kinds), len(kinds) + 1
    ms = cfg.min_score
    best = np.full((N + 1, M + 1), -np.inf)
    best[0, 0] = 0.0
    back = np.full((N + 1, M + 1), -1, dtype=np.int8)
    for i in range(N + 1):
        row = best[i]
        brow = back[i]
        for k, (a, b) in enumerate(kinds):
            if i < a or M < b:
                continue
            cand = best[i - a, : M - b + 1] + tables[(a, b)][i - a]
            seg = row[b:]
            upd = cand > seg
            if upd.any():
                seg[upd] = cand[upd]
                brow[b:][upd] = k
        if i >= 1:
            cand = best[i - 1] + ms
            upd = cand > row
            if upd.any():
                row[upd] = cand[upd]
                brow[upd] = kind_del
        if M >= 1:
            vals = row.tolist()
            hits = []
            prev = vals[0]
            for j in range(1, M + 1):
                c = prev + ms
                if c > vals[j]:
                    vals[j] = c
                    hits.append(j)
                prev = vals[j]
            if hits:
                row[:] = vals
                brow[hits] = kind_ins
    return best, back, kinds


def find_path(
    src_doc: Document,
    tgt_doc: Document,
    src_matrix: EmbeddingMatrix,
    tgt_matrix: EmbeddingMatrix,
    cfg: AlignConfig,
) -> AlignmentPath:
    """Best-scoring monotone path from (0, 0) to (N, M), backtraced.

    Scores on emitted pairs are recomputed span similarities (nulls carry
    the per-sentence null value). Inputs above the node budget are
    rejected; route those through ``anchor.align_large``.
    """
    best, back, kinds = _solve(src_doc, tgt_doc, src_matrix, tgt_matrix, cfg)
    del best
    kind_del, kind_ins = len(kinds), len(kinds) + 1
    src_cache, tgt_cache = SpanVectorCache(), SpanVectorCache()
    pairs: AlignmentPath = []
    i, j = len(src_doc), len(tgt_doc)
    while i > 0 or j > 0:
        k = int(back[i, j])
        if k == kind_del:
            pairs.append(AlignmentPair(Span(i - 1, i), Span(j, j), cfg.min_score))
            i -= 1
        elif k == kind_ins:
            pairs.append(AlignmentPair(Span(i, i), Span(j - 1, j), cfg.min_score))
            j -= 1
        elif k >= 0:
            a, b = kinds[k]
            src, tgt = Span(i - a, i), Span(j - b, j)
            raw = similarity(
                span_vector(src_matrix, src, src_cache),
                span_vector(tgt_matrix, tgt, tgt_cache),
            )
            pairs.append(AlignmentPair(src, tgt, raw))
            i -= a
            j -= b
        else:
            raise AssertionError(f"backtrace reached node ({i}, {j}) with no recorded edge")
    pairs.reverse()
    return pairs


def terminal_score(
    src_doc: Document,
    tgt_doc: Document,
    src_matrix: EmbeddingMatrix,
    tgt_matrix: EmbeddingMatrix,
    cfg: AlignConfig,
) -> float:
    """Best achievable score at node (N, M); what ``find_path`` maximizes."""
    best, _, _ = _solve(src_doc, tgt_doc, src_matrix, tgt_matrix, cfg)
    return float(best[len(src_doc), len(tgt_doc)])


def validate_path(path: AlignmentPath, n_src: int, n_tgt: int) -> PathViolation | None:
    """Check monotone, gap-free, exactly-once coverage of both documents.

    Returns the first violation found, or None for a well-formed path.
    Merge-window width is deliberately not checked here: readjustment may
    legitimately grow pairs past it.
    """
    ci = cj = 0
    for idx, pair in enumerate(path):
        if pair.src.is_empty and pair.tgt.is_empty:
            return PathViolation(idx, "pair has both sides empty")
        if pair.src.start != ci:
            return PathViolation(
                idx, f"source coverage breaks at sentence {ci} (pair starts at {pair.src.start})"
            )
        if pair.tgt.start != cj:
            return PathViolation(
                idx, f"target coverage breaks at sentence {cj} (pair starts at {pair.tgt.start})"
            )
        if pair.src.end > n_src:
            return PathViolation(idx, f"source span ends past document ({pair.src.end} > {n_src})")
        if pair.tgt.end > n_tgt:
            return PathViolation(idx, f"target span ends past document ({pair.tgt.end} > {n_tgt})")
        ci, cj = pair.src.end, pair.tgt.end
    if ci != n_src:
        return PathViolation(len(path), f"source sentences [{ci}, {n_src}) left uncovered")
    if cj != n_tgt:
        return PathViolation(len(path), f"target sentences [{cj}, {n_tgt}) left uncovered")
    return None
