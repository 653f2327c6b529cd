import json
import random
import subprocess
import sys

import pytest

from helpers import planted_corpus


def run_cli(*args, env=None):
    return subprocess.run(
        [sys.executable, "-m", "bitalign", *args],
        capture_output=True,
        text=True,
        env=env,
    )


def write_lines(path, lines):
    path.write_text("".join(line + "\n" for line in lines), encoding="utf-8")
    return str(path)


@pytest.fixture
def identical_docs(tmp_path):
    sentences = [f"distinct sentence number {i} about topic {i * 7}" for i in range(10)]
    src = write_lines(tmp_path / "src.txt", sentences)
    tgt = write_lines(tmp_path / "tgt.txt", sentences)
    return src, tgt


class TestAlign:
    def test_self_alignment_is_diagonal(self, identical_docs):
        src, tgt = identical_docs
        result = run_cli("align", "--src", src, "--tgt", tgt)
        assert result.returncode == 0
        assert result.stdout == "".join(f"{i}:{i}\n" for i in range(10))

    def test_unreachable_threshold_gives_all_nulls(self, identical_docs):
        src, tgt = identical_docs
        result = run_cli("align", "--src", src, "--tgt", tgt, "--min-score", "1.1")
        assert result.returncode == 0
        lines = result.stdout.splitlines()
        assert len(lines) == 20
        assert all(line.startswith(":") or line.endswith(":") for line in lines)

    def test_missing_tgt_is_usage_error(self, identical_docs):
        src, _ = identical_docs
        result = run_cli("align", "--src", src)
        assert result.returncode == 1
        assert "usage" in result.stderr.lower()

    def test_missing_file_is_input_error(self, tmp_path, identical_docs):
        src, _ = identical_docs
        result = run_cli("align", "--src", src, "--tgt", str(tmp_path / "nope.txt"))
        assert result.returncode == 2

    def test_scores_column(self, identical_docs):
        src, tgt = identical_docs
        result = run_cli("align", "--src", src, "--tgt", tgt, "--scores")
        assert result.returncode == 0
        for line in result.stdout.splitlines():
            body, score = line.split("\t")
            assert float(score) > 0.99

    def test_output_file_and_roundtrip(self, tmp_path, identical_docs):
        from bitalign import read_alignment_file

        src, tgt = identical_docs
        out = tmp_path / "out.aln"
        result = run_cli("align", "--src", src, "--tgt", tgt, "--out", str(out), "--scores")
        assert result.returncode == 0
        assert read_alignment_file(out) == [((i,), (i,)) for i in range(10)]

    def test_embedding_count_mismatch(self, tmp_path, identical_docs):
        import numpy as np

        from bitalign import write_embeddings

        src, tgt = identical_docs
        emb = tmp_path / "bad.saev"
        rows = np.eye(3, 32)
        write_embeddings(emb, rows)
        result = run_cli("align", "--src", src, "--tgt", tgt, "--src-emb", str(emb))
        assert result.returncode == 2
        assert "different file" in result.stderr

    def test_embedding_files_used(self, tmp_path):
        import numpy as np

        from bitalign import write_embeddings

        # Two 2-sentence docs whose planted vectors force the anti-diagonal
        # to stay null while (0,0) and (1,1) align.
        src = write_lines(tmp_path / "s.txt", ["first source", "second source"])
        tgt = write_lines(tmp_path / "t.txt", ["first target", "second target"])
        se = tmp_path / "s.saev"
        te = tmp_path / "t.saev"
        write_embeddings(se, np.eye(2, 32))
        write_embeddings(te, np.eye(2, 32))
        result = run_cli(
            "align", "--src", src, "--tgt", tgt, "--src-emb", str(se), "--tgt-emb", str(te)
        )
        assert result.returncode == 0
        assert result.stdout == "0:0\n1:1\n"

    def test_no_readjust_flag(self, identical_docs):
        src, tgt = identical_docs
        with_adj = run_cli("align", "--src", src, "--tgt", tgt)
        without = run_cli("align", "--src", src, "--tgt", tgt, "--no-readjust")
        assert with_adj.stdout == without.stdout

    def test_byte_identical_across_runs_and_threads(self, tmp_path):
        doc = planted_corpus(random.Random(100), 120)
        src = write_lines(tmp_path / "s.txt", doc.sentences)
        tgt = write_lines(tmp_path / "t.txt", doc.sentences)
        flags = ("--max-nodes", "3000", "--hash-dim", "256")
        outputs = set()
        for threads in ("1", "4", "1"):
            result = run_cli(
                "align", "--src", src, "--tgt", tgt, "--threads", threads, *flags
            )
            assert result.returncode == 0
            outputs.add(result.stdout)
        assert len(outputs) == 1

    def test_bad_parameter_values_are_usage_errors(self, identical_docs):
        src, tgt = identical_docs
        for flags in (("--hash-dim", "8"), ("--max-merge", "0"), ("--min-score", "-2")):
            result = run_cli("align", "--src", src, "--tgt", tgt, *flags)
            assert result.returncode == 1, flags
            assert result.stderr.startswith("bitalign:")

    def test_empty_documents_align_to_empty_output(self, tmp_path):
        src = write_lines(tmp_path / "s.txt", [])
        tgt = write_lines(tmp_path / "t.txt", [])
        result = run_cli("align", "--src", src, "--tgt", tgt)
        assert result.returncode == 0
        assert result.stdout == ""

    def test_threads_env_fallback(self, tmp_path, identical_docs):
        import os

        src, tgt = identical_docs
        env = dict(os.environ, BITALIGN_THREADS="2")
        result = run_cli("align", "--src", src, "--tgt", tgt, env=env)
        assert result.returncode == 0
        assert result.stdout == "".join(f"{i}:{i}\n" for i in range(10))


class TestGcAlign:
    def test_equal_documents_all_one_to_one(self, identical_docs):
        src, tgt = identical_docs
        result = run_cli("gc-align", "--src", src, "--tgt", tgt)
        assert result.returncode == 0
        assert result.stdout == "".join(f"{i}:{i}\n" for i in range(10))

    def test_empty_files(self, tmp_path):
        src = write_lines(tmp_path / "s.txt", [])
        tgt = write_lines(tmp_path / "t.txt", [])
        result = run_cli("gc-align", "--src", src, "--tgt", tgt)
        assert result.returncode == 0
        assert result.stdout == ""

    def test_contraction(self, tmp_path):
        src = write_lines(tmp_path / "s.txt", ["x" * 10, "y" * 12])
        tgt = write_lines(tmp_path / "t.txt", ["z" * 22])
        result = run_cli("gc-align", "--src", src, "--tgt", tgt)
        assert result.returncode == 0
        assert result.stdout == "0,1:0\n"


class TestEval:
    def test_identical_files_perfect_scores(self, tmp_path):
        hyp = write_lines(tmp_path / "h.aln", ["0:0", "1:1,2", "2:"])
        result = run_cli("eval", "--hyp", hyp, "--gold", hyp)
        assert result.returncode == 0
        assert "strict" in result.stdout
        assert result.stdout.count("1.000") >= 6

    def test_worked_two_by_two_counts(self, tmp_path):
        gold = write_lines(tmp_path / "g.aln", ["0,1:0,1"])
        hyp = write_lines(tmp_path / "h.aln", ["0:0", "1:1"])
        result = run_cli("eval", "--hyp", hyp, "--gold", gold, "--json")
        assert result.returncode == 0
        report = json.loads(result.stdout)
        assert report["lax"]["tp"] == 2
        assert report["strict"]["fp"] == 2

    def test_empty_hypothesis_zero_recall(self, tmp_path):
        gold = write_lines(tmp_path / "g.aln", ["0:0", "1:1"])
        hyp = write_lines(tmp_path / "h.aln", [])
        result = run_cli("eval", "--hyp", hyp, "--gold", gold, "--json")
        report = json.loads(result.stdout)
        assert report["strict"]["recall"] == 0.0
        assert report["lax"]["recall"] == 0.0

    def test_malformed_line_number_reported(self, tmp_path):
        gold = write_lines(tmp_path / "g.aln", ["0:0"])
        hyp = write_lines(tmp_path / "h.aln", ["0:0", "oops"])
        result = run_cli("eval", "--hyp", hyp, "--gold", gold)
        assert result.returncode == 2
        assert ":2:" in result.stderr

    def test_unknown_subcommand_usage_error(self):
        result = run_cli("frobnicate")
        assert result.returncode == 1


def test_invalid_path_from_aligner_is_internal_error(tmp_path, monkeypatch, capsys):
    # Exit code 3 marks a bug: the aligner handed back a path that fails
    # validation. Forced here by stubbing the aligner.
    from bitalign import AlignmentPair, Span
    from bitalign import cli

    src = write_lines(tmp_path / "s.txt", ["one", "two"])
    tgt = write_lines(tmp_path / "t.txt", ["one", "two"])
    broken = [AlignmentPair(Span(0, 1), Span(0, 1), 0.9)]
    monkeypatch.setattr(cli, "align_large", lambda *a, **k: broken)
    code = cli.main(["align", "--src", src, "--tgt", tgt, "--no-readjust", "--threads", "1"])
    assert code == 3
    assert "internal error" in capsys.readouterr().err
