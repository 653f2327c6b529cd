"""Time the full alignment pipeline on a large synthetic corpus.

Reports per-stage wall time and the divide-and-conquer instrumentation
(peak DP table, Gale-Church table, split count, recursion depth).
"""

from __future__ import annotations

import argparse
import random
import time

from bitalign import (
    AlignConfig,
    AlignStats,
    Document,
    align_large,
    hash_ngram_embed,
    readjust,
    validate_path,
)

LETTERS = "abcdefghijklmnopqrstuvwxyz"


def build_corpus(size: int, noise: float, seed: int) -> tuple[Document, Document]:
    rng = random.Random(seed)

    def soup() -> str:
        return " ".join(
            "".join(rng.choice(LETTERS) for _ in range(5)) for _ in range(6)
        )

    backbone = [soup() for _ in range(size)]
    src, tgt = list(backbone), list(backbone)
    for _ in range(int(size * noise)):
        src.insert(rng.randrange(len(src)), soup())
        tgt.insert(rng.randrange(len(tgt)), soup())
    return Document.from_sentences(src), Document.from_sentences(tgt)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--size", type=int, default=20_000)
    parser.add_argument("--noise", type=float, default=0.02)
    parser.add_argument("--dim", type=int, default=128)
    parser.add_argument("--max-nodes", type=int, default=4_000_000)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    t0 = time.time()
    src_doc, tgt_doc = build_corpus(args.size, args.noise, args.seed)
    t1 = time.time()
    print(f"corpus {len(src_doc)}x{len(tgt_doc)} built in {t1 - t0:.1f}s")

    src_mat = hash_ngram_embed(src_doc, args.dim)
    tgt_mat = hash_ngram_embed(tgt_doc, args.dim)
    t2 = time.time()
    print(f"embedded (dim {args.dim}) in {t2 - t1:.1f}s")

    cfg = AlignConfig(max_nodes=args.max_nodes)
    stats = AlignStats()
    path = align_large(src_doc, tgt_doc, src_mat, tgt_mat, cfg, stats)
    t3 = time.time()
    print(f"aligned in {t3 - t2:.1f}s")
    print(
        f"  peak DP table {stats.max_dp_nodes} nodes, peak GC table "
        f"{stats.max_gc_nodes}, {stats.splits} splits, depth {stats.max_depth}"
    )

    path = readjust(path, src_mat, tgt_mat, cfg)
    t4 = time.time()
    nulls = sum(1 for p in path if p.is_null)
    print(f"readjusted in {t4 - t3:.1f}s; {len(path)} pairs, {nulls} nulls")

    violation = validate_path(path, len(src_doc), len(tgt_doc))
    print(f"valid: {violation is None}; total {t4 - t0:.1f}s")


if __name__ == "__main__":
    main()
