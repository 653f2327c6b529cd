"""Strict/lax scoring of hypothesis alignments against a gold set."""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterable, Sequence

from .core import AlignmentPair, InputFormatError

IndexPair = tuple[tuple[int, ...], tuple[int, ...]]


@dataclass(frozen=True)
class GoldSet:
    """Reference alignments as (source indices, target indices) entries.

    Entries need not cover every sentence; null entries (one side empty)
    are tolerated but never scored.
    """

    alignments: tuple[IndexPair, ...]

    def __len__(self) -> int:
        return len(self.alignments)


@dataclass(frozen=True)
class ConditionScores:
    precision: float
    recall: float
    f1: float
    tp: int
    fp: int
    fn: int


@dataclass(frozen=True)
class EvalReport:
    strict: ConditionScores
    lax: ConditionScores
    notes: tuple[str, ...] = ()

    def to_dict(self) -> dict:
        def cond(c: ConditionScores) -> dict:
            return {
                "precision": c.precision,
                "recall": c.recall,
                "f1": c.f1,
                "tp": c.tp,
                "fp": c.fp,
                "fn": c.fn,
            }

        return {"strict": cond(self.strict), "lax": cond(self.lax), "notes": list(self.notes)}


def _as_index_pairs(hyp) -> list[IndexPair]:
    out: list[IndexPair] = []
    for entry in hyp:
        if isinstance(entry, AlignmentPair):
            out.append(
                (
                    tuple(range(entry.src.start, entry.src.end)),
                    tuple(range(entry.tgt.start, entry.tgt.end)),
                )
            )
        else:
            src, tgt = entry
            out.append((tuple(sorted(src)), tuple(sorted(tgt))))
    return out


def _f1(p: float, r: float) -> float:
    return 2 * p * r / (p + r) if p + r > 0 else 0.0


def evaluate(hyp, gold: GoldSet) -> EvalReport:
    """Score a hypothesis against gold under strict and lax conditions.

    Only non-null hypothesis pairs enter precision; only non-null gold
    entries enter recall. Strict demands exact index-set equality; lax
    accepts any hypothesis pair overlapping one gold entry on both sides,
    and several such pairs each count toward precision. A gold entry is
    recalled at most once per condition.
    """
    hyp_pairs = [(frozenset(s), frozenset(t)) for s, t in _as_index_pairs(hyp)]
    hyp_real = [(s, t) for s, t in hyp_pairs if s and t]
    gold_real = [
        (frozenset(s), frozenset(t)) for s, t in gold.alignments if len(s) and len(t)
    ]

    notes: list[str] = []
    gold_keys = set(gold_real)
    hyp_keys = set(hyp_real)

    strict_tp = sum(1 for pair in hyp_real if pair in gold_keys)
    strict_fp = len(hyp_real) - strict_tp
    strict_recalled = sum(1 for entry in gold_real if entry in hyp_keys)
    strict_fn = len(gold_real) - strict_recalled

    # Sentence-index lookup so lax overlap checks stay near-linear.
    by_src: dict[int, set[int]] = {}
    by_tgt: dict[int, set[int]] = {}
    for gid, (gs, gt) in enumerate(gold_real):
        for s in gs:
            by_src.setdefault(s, set()).add(gid)
        for t in gt:
            by_tgt.setdefault(t, set()).add(gid)

    lax_tp = 0
    recalled_ids: set[int] = set()
    for hs, ht in hyp_real:
        src_hits: set[int] = set()
        for s in hs:
            src_hits |= by_src.get(s, set())
        matched = False
        for t in ht:
            both = src_hits & by_tgt.get(t, set())
            if both:
                matched = True
                recalled_ids |= both
        if matched:
            lax_tp += 1
    lax_fp = len(hyp_real) - lax_tp
    lax_fn = len(gold_real) - len(recalled_ids)

    if not hyp_real:
        notes.append("no non-null hypothesis pairs: precision defined as 0")
    if not gold_real:
        notes.append("no non-null gold entries: recall defined as 0")

    def scores(tp: int, fp: int, fn: int, recalled: int) -> ConditionScores:
        p = tp / (tp + fp) if tp + fp > 0 else 0.0
        r = recalled / len(gold_real) if gold_real else 0.0
        return ConditionScores(p, r, _f1(p, r), tp, fp, fn)

    return EvalReport(
        strict=scores(strict_tp, strict_fp, strict_fn, strict_recalled),
        lax=scores(lax_tp, lax_fp, lax_fn, len(recalled_ids)),
        notes=tuple(notes),
    )


def _parse_side(text: str, lineno: int, path) -> tuple[int, ...]:
    if text == "":
        return ()
    indices = []
    for part in text.split(","):
        if not part.isdigit():
            raise InputFormatError(f"{path}:{lineno}: bad sentence index {part!r}")
        indices.append(int(part))
    if len(set(indices)) != len(indices):
        raise InputFormatError(f"{path}:{lineno}: duplicate sentence index")
    return tuple(sorted(indices))


def read_alignment_file(path: str | os.PathLike) -> list[IndexPair]:
    """Parse ``src:tgt`` index lines; ``#`` comments and blank lines skipped.

    A trailing tab-separated score column (as written by ``--scores``) is
    tolerated and ignored.
    """
    out: list[IndexPair] = []
    with open(path, "r", encoding="utf-8") as f:
        for lineno, line in enumerate(f, 1):
            line = line.rstrip("\r\n")
            if not line or line.startswith("#"):
                continue
            body = line.split("\t", 1)[0]
            if body.count(":") != 1:
                raise InputFormatError(f"{path}:{lineno}: expected one ':' separator")
            src_text, tgt_text = body.split(":")
            src = _parse_side(src_text, lineno, path)
            tgt = _parse_side(tgt_text, lineno, path)
            if not src and not tgt:
                raise InputFormatError(f"{path}:{lineno}: both sides empty")
            out.append((src, tgt))
    return out


def load_gold(path: str | os.PathLike) -> GoldSet:
    return GoldSet(tuple(read_alignment_file(path)))


def format_pair(src: Iterable[int], tgt: Iterable[int]) -> str:
    return ",".join(str(i) for i in src) + ":" + ",".join(str(i) for i in tgt)


def format_path_lines(
    path: Sequence[AlignmentPair], with_scores: bool = False
) -> list[str]:
    lines = []
    for pair in path:
        line = format_pair(
            range(pair.src.start, pair.src.end), range(pair.tgt.start, pair.tgt.end)
        )
        if with_scores:
            line += "\tNA" if pair.is_null else f"\t{pair.score:.6f}"
        lines.append(line)
    return lines


def write_alignment_file(
    path: str | os.PathLike, pairs: Sequence[AlignmentPair], with_scores: bool = False
) -> None:
    """Write a path in the exchange format: LF endings, no spaces."""
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        for line in format_path_lines(pairs, with_scores):
            f.write(line)
            f.write("\n")
