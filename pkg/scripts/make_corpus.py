"""Generate a synthetic parallel corpus for alignment experiments.

Writes src.txt / tgt.txt / gold.aln into --out-dir. The two sides share a
backbone of identical sentences; noise sentences inserted on either side
become null alignments in the gold file.
"""

from __future__ import annotations

import argparse
import random
from pathlib import Path

LETTERS = "abcdefghijklmnopqrstuvwxyz"


def soup(rng: random.Random, words: int) -> str:
    return " ".join(
        "".join(rng.choice(LETTERS) for _ in range(5)) for _ in range(words)
    )


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--size", type=int, default=1000, help="backbone sentences")
    parser.add_argument("--noise", type=float, default=0.02, help="per-side insertion rate")
    parser.add_argument("--words", type=int, default=6, help="words per sentence")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--out-dir", type=Path, default=Path("corpus"))
    args = parser.parse_args()

    rng = random.Random(args.seed)
    backbone = [soup(rng, args.words) for _ in range(args.size)]

    src, tgt, gold = [], [], []
    for sentence in backbone:
        if rng.random() < args.noise:
            gold.append(f"{len(src)}:")
            src.append(soup(rng, args.words))
        if rng.random() < args.noise:
            gold.append(f":{len(tgt)}")
            tgt.append(soup(rng, args.words))
        gold.append(f"{len(src)}:{len(tgt)}")
        src.append(sentence)
        tgt.append(sentence)

    args.out_dir.mkdir(parents=True, exist_ok=True)
    for name, lines in (("src.txt", src), ("tgt.txt", tgt), ("gold.aln", gold)):
        path = args.out_dir / name
        path.write_text("".join(line + "\n" for line in lines), encoding="utf-8")
        print(f"wrote {path} ({len(lines)} lines)")


if __name__ == "__main__":
    main()
