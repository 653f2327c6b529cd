"""Path post-processing: split weak many-to-many pairs, reattach nulls."""

from __future__ import annotations

from dataclasses import replace

from .core import AlignConfig, AlignmentPair, AlignmentPath, Span
from .embed import EmbeddingMatrix, SpanVectorCache, similarity, span_vector


class _SimContext:
    """Canonical span-pair similarity with per-side caches.

    All comparisons in this module go through here, so a pair's score is
    recomputed rather than trusted from whatever produced the path.
    """

    def __init__(self, src_matrix: EmbeddingMatrix, tgt_matrix: EmbeddingMatrix):
        self.src_matrix = src_matrix
        self.tgt_matrix = tgt_matrix
        self._src_cache = SpanVectorCache()
        self._tgt_cache = SpanVectorCache()

    def sim(self, src: Span, tgt: Span) -> float:
        return similarity(
            span_vector(self.src_matrix, src, self._src_cache),
            span_vector(self.tgt_matrix, tgt, self._tgt_cache),
        )


def _renumber_empty_spans(pairs: AlignmentPath) -> AlignmentPath:
    """Pin every empty span to the current consumed position on its side."""
    out: AlignmentPath = []
    ci = cj = 0
    for pair in pairs:
        src = pair.src if not pair.src.is_empty else Span(ci, ci)
        tgt = pair.tgt if not pair.tgt.is_empty else Span(cj, cj)
        if src is not pair.src or tgt is not pair.tgt:
            pair = replace(pair, src=src, tgt=tgt)
        out.append(pair)
        ci, cj = src.end, tgt.end
    return out


def _sub_pairs(src: Span, tgt: Span) -> list[tuple[Span, Span]]:
    """Contiguous non-empty sub-span pairs of src x tgt, the full pair excluded."""
    out = []
    for s0 in range(src.start, src.end):
        for s1 in range(s0 + 1, src.end + 1):
            for t0 in range(tgt.start, tgt.end):
                for t1 in range(t0 + 1, tgt.end + 1):
                    if s1 - s0 == len(src) and t1 - t0 == len(tgt):
                        continue
                    out.append((Span(s0, s1), Span(t0, t1)))
    return out


def _compatible(cand: tuple[Span, Span], chosen: list[tuple[Span, Span]]) -> bool:
    cs, ct = cand
    for s, t in chosen:
        before = cs.end <= s.start and ct.end <= t.start
        after = cs.start >= s.end and ct.start >= t.end
        if not (before or after):
            return False
    return True


def _split_pair(pair: AlignmentPair, ctx: _SimContext, cfg: AlignConfig) -> AlignmentPath:
    original = ctx.sim(pair.src, pair.tgt)
    candidates = _sub_pairs(pair.src, pair.tgt)
    scored = [(ctx.sim(s, t), s, t) for s, t in candidates]
    # Deterministic pick: best similarity, then earliest/shortest spans.
    scored.sort(key=lambda e: (-e[0], e[1].start, e[1].end, e[2].start, e[2].end))
    if not scored or scored[0][0] <= original:
        return [pair]
    best_sim, best_s, best_t = scored[0]
    chosen = [(best_s, best_t)]
    sims = {(best_s, best_t): best_sim}
    while True:
        picked = None
        for sim_val, s, t in scored:
            if sim_val < cfg.min_score:
                break
            if (s, t) in sims:
                continue
            if _compatible((s, t), chosen):
                picked = (sim_val, s, t)
                break
        if picked is None:
            break
        chosen.append((picked[1], picked[2]))
        sims[(picked[1], picked[2])] = picked[0]
    chosen.sort(key=lambda st: st[0].start)

    out: AlignmentPath = []
    cur_s, cur_t = pair.src.start, pair.tgt.start
    for s, t in chosen:
        for k in range(cur_s, s.start):
            out.append(AlignmentPair(Span(k, k + 1), Span(cur_t, cur_t), cfg.min_score))
        for k in range(cur_t, t.start):
            out.append(AlignmentPair(Span(s.start, s.start), Span(k, k + 1), cfg.min_score))
        out.append(AlignmentPair(s, t, sims[(s, t)]))
        cur_s, cur_t = s.end, t.end
    for k in range(cur_s, pair.src.end):
        out.append(AlignmentPair(Span(k, k + 1), Span(cur_t, cur_t), cfg.min_score))
    for k in range(cur_t, pair.tgt.end):
        out.append(AlignmentPair(Span(pair.src.end, pair.src.end), Span(k, k + 1), cfg.min_score))
    return out


def split_many_to_many(
    path: AlignmentPath,
    src_matrix: EmbeddingMatrix,
    tgt_matrix: EmbeddingMatrix,
    cfg: AlignConfig,
) -> AlignmentPath:
    """Break up n x m pairs (n, m > 1) when a sub-pair beats them.

    If some contiguous sub-pair scores strictly higher than the whole
    pair, it replaces the pair; the remaining room is then filled greedily
    with non-overlapping monotone sub-pairs at or above the threshold, and
    anything left over becomes single-sentence null pairs. Comparisons use
    raw similarities (no count weighting, no merge penalty).
    """
    ctx = _SimContext(src_matrix, tgt_matrix)
    out: AlignmentPath = []
    for pair in path:
        if len(pair.src) > 1 and len(pair.tgt) > 1:
            out.extend(_split_pair(pair, ctx, cfg))
        else:
            out.append(pair)
    return _renumber_empty_spans(out)


def _boundary_maps(pairs: AlignmentPath):
    """Lookup from span boundaries of non-null pairs to their path index."""
    src_end: dict[int, int] = {}
    src_start: dict[int, int] = {}
    tgt_end: dict[int, int] = {}
    tgt_start: dict[int, int] = {}
    for idx, pair in enumerate(pairs):
        if pair.is_null:
            continue
        src_start[pair.src.start] = idx
        src_end[pair.src.end] = idx
        tgt_start[pair.tgt.start] = idx
        tgt_end[pair.tgt.end] = idx
    return src_start, src_end, tgt_start, tgt_end


def reattach_nulls(
    path: AlignmentPath,
    src_matrix: EmbeddingMatrix,
    tgt_matrix: EmbeddingMatrix,
    cfg: AlignConfig,
) -> AlignmentPath:
    """Merge null sentences into an adjacent pair when that raises its score.

    Scans nulls left to right; each merge restarts the scan, and the loop
    stops at a fixpoint. When both neighbours would improve, the larger
    improvement wins and ties go to the preceding pair. Merged pairs may
    grow past the merge window.
    """
    ctx = _SimContext(src_matrix, tgt_matrix)
    pairs = list(path)
    while True:
        amended = False
        src_start, src_end, tgt_start, tgt_end = _boundary_maps(pairs)
        for idx, pair in enumerate(pairs):
            if not pair.is_null:
                continue
            side = "src" if not pair.src.is_empty else "tgt"
            sentence = pair.src.start if side == "src" else pair.tgt.start
            if side == "src":
                neighbours = (src_end.get(sentence), src_start.get(sentence + 1))
            else:
                neighbours = (tgt_end.get(sentence), tgt_start.get(sentence + 1))
            options = []
            for following, nb in ((False, neighbours[0]), (True, neighbours[1])):
                if nb is None:
                    continue
                neighbour = pairs[nb]
                if side == "src":
                    grown_src = Span(
                        min(neighbour.src.start, sentence),
                        max(neighbour.src.end, sentence + 1),
                    )
                    grown_tgt = neighbour.tgt
                else:
                    grown_src = neighbour.src
                    grown_tgt = Span(
                        min(neighbour.tgt.start, sentence),
                        max(neighbour.tgt.end, sentence + 1),
                    )
                current = ctx.sim(neighbour.src, neighbour.tgt)
                grown = ctx.sim(grown_src, grown_tgt)
                if grown > current:
                    options.append((grown - current, following, nb, grown_src, grown_tgt, grown))
            if not options:
                continue
            # Larger improvement first; the preceding pair (following=False)
            # wins ties because False sorts before True.
            options.sort(key=lambda o: (-o[0], o[1]))
            _, _, nb, grown_src, grown_tgt, grown = options[0]
            pairs[nb] = AlignmentPair(grown_src, grown_tgt, grown)
            del pairs[idx]
            pairs = _renumber_empty_spans(pairs)
            amended = True
            break
        if not amended:
            return pairs


def readjust(
    path: AlignmentPath,
    src_matrix: EmbeddingMatrix,
    tgt_matrix: EmbeddingMatrix,
    cfg: AlignConfig,
) -> AlignmentPath:
    """Full post-processing: split and reattach until no amendment remains,
    then refresh every score.

    Reattachment can grow a pair into new n x m territory whose best
    sub-pair beats it, so a single split+reattach sweep is not a fixpoint;
    the loop runs the two until the path stops changing. It terminates:
    every amendment strictly raises one pair's recomputed similarity (or
    swaps a pair for a strictly better sub-pair), and the path space is
    finite. The result is idempotent by construction.
    """

    def shape(pairs: AlignmentPath):
        return [(p.src, p.tgt) for p in pairs]

    current = list(path)
    while True:
        amended = split_many_to_many(current, src_matrix, tgt_matrix, cfg)
        amended = reattach_nulls(amended, src_matrix, tgt_matrix, cfg)
        if shape(amended) == shape(current):
            break
        current = amended
    ctx = _SimContext(src_matrix, tgt_matrix)
    refreshed: AlignmentPath = []
    for pair in current:
        if pair.is_null:
            refreshed.append(replace(pair, score=cfg.min_score))
        else:
            refreshed.append(replace(pair, score=ctx.sim(pair.src, pair.tgt)))
    return refreshed
