"""Length-based statistical sentence alignment (Gale-Church style)."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import erfc

from .core import AlignmentPair, AlignmentPath, Document, Span

# The six alignment operations and their canonical published priors.
GC_MOVES: tuple[tuple[int, int], ...] = ((1, 1), (1, 0), (0, 1), (2, 1), (1, 2), (2, 2))

_DEFAULT_PRIORS = {
    (1, 1): 0.89,
    (1, 0): 0.0099,
    (0, 1): 0.0099,
    (2, 1): 0.089,
    (1, 2): 0.089,
    (2, 2): 0.011,
}

_SQRT2 = math.sqrt(2.0)

# Cost ceiling once the two-sided tail probability underflows to zero.
# Chosen above -log(smallest subnormal) so capping never reorders costs.
BIG_COST = 800.0


@dataclass(frozen=True)
class GCParams:
    """Model parameters: expected target/source length ratio, the variance
    of the length difference, and per-operation priors."""

    mean_ratio: float = 1.0
    variance: float = 6.8
    priors: dict[tuple[int, int], float] = field(
        default_factory=lambda: dict(_DEFAULT_PRIORS)
    )

    def __post_init__(self) -> None:
        if self.variance <= 0:
            raise ValueError("variance must be positive")
        if set(self.priors) != set(GC_MOVES):
            raise ValueError(f"priors must cover exactly the moves {GC_MOVES}")
        if any(p <= 0 for p in self.priors.values()):
            raise ValueError("priors must be positive")
        total = sum(self.priors.values())
        if not 0.9 <= total <= 1.1:
            raise ValueError(f"priors sum to {total}, expected about 1")


def _prior_costs(params: GCParams) -> dict[tuple[int, int], float]:
    return {move: float(-np.log(p)) for move, p in params.priors.items()}


def _match_cost(l1, l2, params: GCParams):
    """-log of the two-sided tail probability of the length discrepancy.

    Works elementwise on arrays and on scalars through the same ufuncs, so
    both callers see bit-identical values. Empty-on-both-sides (zero total
    length) is treated as a perfect match.
    """
    total = l1 + l2
    safe = np.where(total > 0, total, 2)
    delta = (l2 - l1 * params.mean_ratio) / np.sqrt(safe / 2.0 * params.variance)
    delta = np.where(total > 0, delta, 0.0)
    p = erfc(np.abs(delta) / _SQRT2)
    return np.where(p > 0.0, -np.log(np.where(p > 0.0, p, 1.0)), BIG_COST)


def gc_move_cost(l1: int, l2: int, move: tuple[int, int], params: GCParams) -> float:
    """Cost of one alignment operation over l1 source / l2 target characters."""
    return _prior_costs(params)[move] + float(_match_cost(l1, l2, params))


def _char_cumsum(doc: Document) -> np.ndarray:
    return np.concatenate(
        ([0], np.cumsum([len(s) for s in doc.sentences], dtype=np.int64))
    )


def _gc_solve(
    src_doc: Document, tgt_doc: Document, params: GCParams
) -> tuple[np.ndarray, np.ndarray]:
    """Minimal-cost DP over character lengths; returns (cost, back).

    back holds indices into GC_MOVES. Rows are filled vectorized for the
    moves that consume a source sentence; the insertion move (0, 1) runs
    as an in-row scan since it depends on the cell to its left.
    """
    N, M = len(src_doc), len(tgt_doc)
    cs, ct = _char_cumsum(src_doc), _char_cumsum(tgt_doc)
    pc = _prior_costs(params)
    move_index = {move: k for k, move in enumerate(GC_MOVES)}
    ins_code = move_index[(0, 1)]

    cost = np.full((N + 1, M + 1), np.inf)
    cost[0, 0] = 0.0
    back = np.full((N + 1, M + 1), -1, dtype=np.int8)

    # Insertion costs depend only on the consumed target sentence.
    ins_mc = (pc[(0, 1)] + _match_cost(0, ct[1:] - ct[:-1], params)).tolist() if M else []

    vec_moves = [move for move in GC_MOVES if move[0] >= 1]
    for i in range(N + 1):
        row = cost[i]
        brow = back[i]
        for move in vec_moves:
            a, b = move
            if i < a or M < b:
                continue
            l1 = int(cs[i] - cs[i - a])
            if b == 0:
                cand = cost[i - a] + (pc[move] + float(_match_cost(l1, 0, params)))
                seg = row
                off = 0
            else:
                mc = pc[move] + _match_cost(l1, ct[b:] - ct[: M - b + 1], params)
                cand = cost[i - a, : M - b + 1] + mc
                seg = row[b:]
                off = b
            upd = cand < seg
            if upd.any():
                seg[upd] = cand[upd]
                brow[off:][upd] = move_index[move]
        if M >= 1:
            vals = row.tolist()
            hits = []
            for j in range(1, M + 1):
                c = vals[j - 1] + ins_mc[j - 1]
                if c < vals[j]:
                    vals[j] = c
                    hits.append(j)
            if hits:
                row[:] = vals
                brow[hits] = ins_code
    return cost, back


def gc_align(
    src_doc: Document, tgt_doc: Document, params: GCParams | None = None
) -> AlignmentPath:
    """Align two documents by character-length statistics alone."""
    params = params or GCParams()
    _, back = _gc_solve(src_doc, tgt_doc, params)
    pairs: AlignmentPath = []
    i, j = len(src_doc), len(tgt_doc)
    while i > 0 or j > 0:
        k = int(back[i, j])
        if k < 0:
            raise AssertionError(f"backtrace reached node ({i}, {j}) with no recorded move")
        a, b = GC_MOVES[k]
        pairs.append(AlignmentPair(Span(i - a, i), Span(j - b, j), 0.0))
        i -= a
        j -= b
    pairs.reverse()
    return pairs


def gc_terminal_cost(
    src_doc: Document, tgt_doc: Document, params: GCParams | None = None
) -> float:
    """Total cost of the optimal path; what ``gc_align`` minimizes."""
    params = params or GCParams()
    cost, _ = _gc_solve(src_doc, tgt_doc, params)
    return float(cost[len(src_doc), len(tgt_doc)])
