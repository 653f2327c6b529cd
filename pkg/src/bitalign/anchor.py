"""Divide and conquer: bound DP table size by splitting at hard 1-1 delimiters."""

from __future__ import annotations

from concurrent.futures import Executor
from dataclasses import dataclass, replace

from .core import AlignConfig, AlignmentPair, AlignmentPath, Document, Span
from .embed import EmbeddingMatrix, similarity
from .galechurch import gc_align
from .path import find_path


@dataclass
class AlignStats:
    """Instrumentation for one align_large run."""

    max_dp_nodes: int = 0
    max_gc_nodes: int = 0
    splits: int = 0
    max_depth: int = 0

    def record_dp(self, nodes: int) -> None:
        self.max_dp_nodes = max(self.max_dp_nodes, nodes)

    def record_gc(self, nodes: int) -> None:
        self.max_gc_nodes = max(self.max_gc_nodes, nodes)


def middle_half(n: int) -> tuple[int, int]:
    """Index window between the first and last quarter of n sentences."""
    return (n + 3) // 4, (3 * n) // 4


def _pick_best(candidates, src_matrix, tgt_matrix, tie_center: float, tie_on_src: bool):
    """Highest-similarity pair; ties prefer proximity to the text middle."""
    best = None
    best_key = None
    for i, j in candidates:
        sim = similarity(src_matrix.vectors[i], tgt_matrix.vectors[j])
        anchor = i if tie_on_src else j
        other = j if tie_on_src else i
        key = (sim, -abs(anchor - tie_center), -anchor, -other)
        if best_key is None or key > best_key:
            best, best_key = (i, j), key
    return best


def _greedy_candidates(n_from: int, n_to: int, lo: int, hi: int, band: int, transpose: bool):
    """Diagonal-band 1-1 candidates (i, j) for indexes in [lo, hi)."""
    out = []
    for p in range(lo, hi):
        diag = int(round(p * n_to / n_from))
        seen = set()
        for w in range(-band, band + 1):
            q = min(max(diag + w, 0), n_to - 1)
            if q in seen:
                continue
            seen.add(q)
            out.append((q, p) if transpose else (p, q))
    return out


def find_delimiter(
    src_doc: Document,
    tgt_doc: Document,
    src_matrix: EmbeddingMatrix,
    tgt_matrix: EmbeddingMatrix,
    cfg: AlignConfig,
    window: tuple[int, int],
    stats: AlignStats | None = None,
) -> tuple[int, int] | None:
    """Best 1-1 delimiter with source index inside ``window``.

    Within the secondary node budget the candidates are the 1-1 pairs of a
    Gale-Church alignment of the chunk, re-scored by embedding similarity.
    Past that budget (or when Gale-Church yields no 1-1 in the window) a
    greedy scan of the diagonal band proposes the candidates instead.
    """
    N, M = len(src_doc), len(tgt_doc)
    lo, hi = max(window[0], 0), min(window[1], N)
    if lo >= hi or M == 0:
        return None
    nodes = (N + 1) * (M + 1)
    if nodes <= cfg.gc_max_nodes:
        if stats is not None:
            stats.record_gc(nodes)
        gc_pairs = [
            (p.src.start, p.tgt.start)
            for p in gc_align(src_doc, tgt_doc)
            if len(p.src) == 1 and len(p.tgt) == 1 and lo <= p.src.start < hi
        ]
        best = _pick_best(gc_pairs, src_matrix, tgt_matrix, N / 2, tie_on_src=True)
        if best is not None:
            return best
    candidates = _greedy_candidates(N, M, lo, hi, cfg.band, transpose=False)
    return _pick_best(candidates, src_matrix, tgt_matrix, N / 2, tie_on_src=True)


def _delimiter_on_target(src_doc, tgt_doc, src_matrix, tgt_matrix, cfg):
    """Fallback for degenerate chunks whose source middle half is empty."""
    N, M = len(src_doc), len(tgt_doc)
    lo, hi = middle_half(M)
    lo, hi = max(lo, 0), min(hi, M)
    if lo >= hi or N == 0:
        return None
    candidates = _greedy_candidates(M, N, lo, hi, cfg.band, transpose=True)
    return _pick_best(candidates, src_matrix, tgt_matrix, M / 2, tie_on_src=False)


def _null_side_path(n_src: int, n_tgt: int, cfg: AlignConfig) -> AlignmentPath:
    """All-null path for a chunk that is empty on one side."""
    path: AlignmentPath = []
    for k in range(n_src):
        path.append(AlignmentPair(Span(k, k + 1), Span(0, 0), cfg.min_score))
    for k in range(n_tgt):
        path.append(AlignmentPair(Span(n_src, n_src), Span(k, k + 1), cfg.min_score))
    return path


def _offset_path(path: AlignmentPath, si: int, sj: int) -> AlignmentPath:
    if si == 0 and sj == 0:
        return path
    return [
        AlignmentPair(
            Span(p.src.start + si, p.src.end + si),
            Span(p.tgt.start + sj, p.tgt.end + sj),
            p.score,
        )
        for p in path
    ]


def align_large(
    src_doc: Document,
    tgt_doc: Document,
    src_matrix: EmbeddingMatrix,
    tgt_matrix: EmbeddingMatrix,
    cfg: AlignConfig,
    stats: AlignStats | None = None,
    pool: Executor | None = None,
) -> AlignmentPath:
    """Align documents of any size, splitting recursively when over budget.

    Chunks that fit ``max_nodes`` go straight to ``find_path``. Larger ones
    are split at a hard delimiter from the source middle half, which is
    fixed in the output as a 1-1 pair. Splitting is planned sequentially
    (so it is deterministic); the resulting leaf searches may run on
    ``pool`` concurrently, which cannot change the output.
    """
    items: list[tuple] = []

    def plan(si: int, sj: int, sdoc: Document, tdoc: Document, smat, tmat, depth: int) -> None:
        if stats is not None:
            stats.max_depth = max(stats.max_depth, depth)
        n, m = len(sdoc), len(tdoc)
        if n == 0 and m == 0:
            return
        nodes = (n + 1) * (m + 1)
        if n == 0 or m == 0:
            items.append(("done", _offset_path(_null_side_path(n, m, cfg), si, sj)))
            return
        if nodes <= cfg.max_nodes:
            if stats is not None:
                stats.record_dp(nodes)
            items.append(("leaf", si, sj, sdoc, tdoc, smat, tmat, cfg))
            return
        delim = find_delimiter(sdoc, tdoc, smat, tmat, cfg, middle_half(n), stats)
        if delim is None:
            delim = _delimiter_on_target(sdoc, tdoc, smat, tmat, cfg)
        if delim is None:
            # Only reachable with a pathological node budget on a tiny grid.
            if stats is not None:
                stats.record_dp(nodes)
            items.append(("leaf", si, sj, sdoc, tdoc, smat, tmat, replace(cfg, max_nodes=nodes)))
            return
        i, j = delim
        if stats is not None:
            stats.splits += 1
        plan(si, sj, sdoc.slice(0, i), tdoc.slice(0, j), smat.slice(0, i), tmat.slice(0, j), depth + 1)
        score = similarity(smat.vectors[i], tmat.vectors[j])
        items.append(("pair", AlignmentPair(Span(si + i, si + i + 1), Span(sj + j, sj + j + 1), score)))
        plan(
            si + i + 1,
            sj + j + 1,
            sdoc.slice(i + 1, n),
            tdoc.slice(j + 1, m),
            smat.slice(i + 1, n),
            tmat.slice(j + 1, m),
            depth + 1,
        )

    plan(0, 0, src_doc, tgt_doc, src_matrix, tgt_matrix, 0)

    futures: dict[int, object] = {}
    if pool is not None:
        for idx, item in enumerate(items):
            if item[0] == "leaf":
                futures[idx] = pool.submit(find_path, *item[3:])

    out: AlignmentPath = []
    for idx, item in enumerate(items):
        if item[0] == "done":
            out.extend(item[1])
        elif item[0] == "pair":
            out.append(item[1])
        else:
            _, si, sj, sdoc, tdoc, smat, tmat, leaf_cfg = item
            if idx in futures:
                chunk_path = futures[idx].result()
            else:
                chunk_path = find_path(sdoc, tdoc, smat, tmat, leaf_cfg)
            out.extend(_offset_path(chunk_path, si, sj))
    return out
