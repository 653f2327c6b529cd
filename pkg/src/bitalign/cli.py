"""Command-line interface: align, gc-align and eval subcommands."""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor

from .anchor import AlignStats, align_large
from .core import AlignConfig, InputFormatError, load_document
from .embed import hash_ngram_embed, load_embeddings
from .evaluate import evaluate, format_path_lines, load_gold, read_alignment_file
from .galechurch import gc_align
from .path import validate_path
from .readjust import readjust

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INPUT = 2
EXIT_INTERNAL = 3


class _Parser(argparse.ArgumentParser):
    """argparse variant that reports usage problems with exit code 1."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _build_parser() -> _Parser:
    parser = _Parser(prog="bitalign", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    align = sub.add_parser("align", help="align two sentence files")
    align.add_argument("--src", required=True, help="source sentence file, one per line")
    align.add_argument("--tgt", required=True, help="target sentence file, one per line")
    align.add_argument("--src-emb", help="SAEV embedding file for the source side")
    align.add_argument("--tgt-emb", help="SAEV embedding file for the target side")
    align.add_argument("--hash-dim", type=int, default=256, help="built-in embedder dimension")
    align.add_argument("--min-score", type=float, default=0.4)
    align.add_argument("--max-merge", type=int, default=3)
    align.add_argument("--max-words", type=int, default=80)
    align.add_argument("--word-penalty", type=float, default=0.01)
    align.add_argument("--merge-free", type=int, default=3)
    align.add_argument("--merge-penalty", type=float, default=0.01)
    align.add_argument("--max-nodes", type=int, default=4_000_000)
    align.add_argument("--gc-max-nodes", type=int, default=40_000_000)
    align.add_argument("--band", type=int, default=5)
    align.add_argument("--out", default="-", help="output file, or -/stdout for stdout")
    align.add_argument("--scores", action="store_true", help="append a similarity column")
    align.add_argument("--no-readjust", action="store_true", help="skip the readjustment pass")
    align.add_argument("--threads", type=int, default=None, help="chunk alignment workers")

    gc = sub.add_parser("gc-align", help="length-based alignment only")
    gc.add_argument("--src", required=True)
    gc.add_argument("--tgt", required=True)
    gc.add_argument("--out", default="-")

    ev = sub.add_parser("eval", help="score a hypothesis against a gold file")
    ev.add_argument("--hyp", required=True)
    ev.add_argument("--gold", required=True)
    ev.add_argument("--json", action="store_true", help="machine-readable report")
    return parser


def _thread_count(requested: int | None) -> int:
    if requested is not None:
        return max(1, requested)
    env = os.environ.get("BITALIGN_THREADS")
    if env is not None and env.isdigit() and int(env) > 0:
        return int(env)
    return os.cpu_count() or 1


def _emit(lines: list[str], out: str) -> None:
    text = "".join(line + "\n" for line in lines)
    if out in ("-", "stdout"):
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="\n") as f:
            f.write(text)


def _cmd_align(args) -> int:
    src_doc = load_document(args.src)
    tgt_doc = load_document(args.tgt)
    if args.src_emb:
        src_matrix = load_embeddings(args.src_emb, len(src_doc))
    else:
        src_matrix = hash_ngram_embed(src_doc, args.hash_dim)
    if args.tgt_emb:
        tgt_matrix = load_embeddings(args.tgt_emb, len(tgt_doc))
    else:
        tgt_matrix = hash_ngram_embed(tgt_doc, args.hash_dim)
    cfg = AlignConfig(
        min_score=args.min_score,
        max_merge=args.max_merge,
        max_words=args.max_words,
        word_penalty=args.word_penalty,
        merge_penalty_free=args.merge_free,
        merge_penalty=args.merge_penalty,
        max_nodes=args.max_nodes,
        gc_max_nodes=args.gc_max_nodes,
        band=args.band,
    )
    threads = _thread_count(args.threads)
    stats = AlignStats()
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            path = align_large(src_doc, tgt_doc, src_matrix, tgt_matrix, cfg, stats, pool)
    else:
        path = align_large(src_doc, tgt_doc, src_matrix, tgt_matrix, cfg, stats)
    if not args.no_readjust:
        path = readjust(path, src_matrix, tgt_matrix, cfg)
    violation = validate_path(path, len(src_doc), len(tgt_doc))
    if violation is not None:
        print(
            f"bitalign: internal error: invalid path at pair {violation.index}: "
            f"{violation.message}",
            file=sys.stderr,
        )
        return EXIT_INTERNAL
    _emit(format_path_lines(path, with_scores=args.scores), args.out)
    return EXIT_OK


def _cmd_gc_align(args) -> int:
    src_doc = load_document(args.src)
    tgt_doc = load_document(args.tgt)
    path = gc_align(src_doc, tgt_doc)
    violation = validate_path(path, len(src_doc), len(tgt_doc))
    if violation is not None:
        print(
            f"bitalign: internal error: invalid path at pair {violation.index}: "
            f"{violation.message}",
            file=sys.stderr,
        )
        return EXIT_INTERNAL
    _emit(format_path_lines(path), args.out)
    return EXIT_OK


def _cmd_eval(args) -> int:
    hyp = read_alignment_file(args.hyp)
    gold = load_gold(args.gold)
    report = evaluate(hyp, gold)
    if args.json:
        sys.stdout.write(json.dumps(report.to_dict(), indent=2) + "\n")
        return EXIT_OK
    rows = [
        ("condition", "precision", "recall", "f1", "tp", "fp", "fn"),
        (
            "strict",
            f"{report.strict.precision:.3f}",
            f"{report.strict.recall:.3f}",
            f"{report.strict.f1:.3f}",
            str(report.strict.tp),
            str(report.strict.fp),
            str(report.strict.fn),
        ),
        (
            "lax",
            f"{report.lax.precision:.3f}",
            f"{report.lax.recall:.3f}",
            f"{report.lax.f1:.3f}",
            str(report.lax.tp),
            str(report.lax.fp),
            str(report.lax.fn),
        ),
    ]
    widths = [max(len(row[c]) for row in rows) for c in range(len(rows[0]))]
    for row in rows:
        sys.stdout.write("  ".join(cell.ljust(widths[c]) for c, cell in enumerate(row)).rstrip() + "\n")
    for note in report.notes:
        sys.stdout.write(f"note: {note}\n")
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "align":
            return _cmd_align(args)
        if args.command == "gc-align":
            return _cmd_gc_align(args)
        return _cmd_eval(args)
    except (InputFormatError, OSError) as exc:
        print(f"bitalign: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ValueError as exc:
        # Bad parameter combinations (config validation and friends).
        print(f"bitalign: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
