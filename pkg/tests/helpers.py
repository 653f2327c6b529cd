"""Shared generators and brute-force oracles for the test suite."""

from __future__ import annotations

import math
import random

from bitalign import AlignConfig, Document, hash_ngram_embed
from bitalign.galechurch import GCParams, _match_cost, _prior_costs, GC_MOVES
from bitalign.path import edge_weight_tables, merge_kinds

VOCAB = [
    "alpha", "beta", "gamma", "delta", "epsilon", "zeta", "eta", "theta",
    "iota", "kappa", "lam", "mu", "nu", "xi", "omicron", "pi",
    "rho", "sigma", "tau", "upsilon", "phi", "chi", "psi", "omega",
]


def random_sentence(rng: random.Random, min_words: int = 1, max_words: int = 6) -> str:
    return " ".join(rng.choice(VOCAB) for _ in range(rng.randint(min_words, max_words)))


def random_documents(
    rng: random.Random, n: int, m: int, shared: float = 0.5
) -> tuple[Document, Document]:
    """Two documents where some target sentences copy or shuffle source ones,
    so pairwise similarities spread over the whole range."""
    src = [random_sentence(rng) for _ in range(n)]
    tgt = []
    for _ in range(m):
        roll = rng.random()
        if src and roll < shared * 0.5:
            tgt.append(rng.choice(src))
        elif src and roll < shared:
            words = rng.choice(src).split()
            rng.shuffle(words)
            tgt.append(" ".join(words))
        else:
            tgt.append(random_sentence(rng))
    return Document.from_sentences(src), Document.from_sentences(tgt)


def random_config(rng: random.Random) -> AlignConfig:
    return AlignConfig(
        min_score=rng.choice([0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8]),
        max_merge=rng.choice([1, 2, 3]),
        max_words=rng.choice([80, 6, 12]),
        word_penalty=rng.choice([0.0, 0.01, 0.1]),
        merge_penalty_free=rng.choice([2, 3, 4]),
        merge_penalty=rng.choice([0.0, 0.01, 0.05]),
    )


def random_instance(rng: random.Random, max_size: int = 7, dim: int = 32):
    n, m = rng.randint(0, max_size), rng.randint(0, max_size)
    src_doc, tgt_doc = random_documents(rng, n, m)
    return (
        src_doc,
        tgt_doc,
        hash_ngram_embed(src_doc, dim),
        hash_ngram_embed(tgt_doc, dim),
        random_config(rng),
    )


def brute_force_best(src_doc, tgt_doc, src_matrix, tgt_matrix, cfg) -> float:
    """Maximum left-fold path score by explicit enumeration of every legal
    path: real edges where the gated weight table allows them, plus the two
    null moves at min_score per sentence. Shares the per-edge scores with
    the DP (the quantity under test is the path search) and accumulates in
    path order so equality can be exact."""
    tables = {
        shape: arr.tolist()
        for shape, arr in edge_weight_tables(
            src_doc, tgt_doc, src_matrix, tgt_matrix, cfg, pathfinding=True
        ).items()
    }
    kinds = merge_kinds(cfg.max_merge)
    n, m = len(src_doc), len(tgt_doc)
    ms = cfg.min_score
    neg_inf = float("-inf")
    best = neg_inf

    stack = [(0, 0, 0.0)]
    while stack:
        i, j, acc = stack.pop()
        if i == n and j == m:
            if acc > best:
                best = acc
            continue
        for a, b in kinds:
            if i + a <= n and j + b <= m:
                w = tables[(a, b)][i][j]
                if w != neg_inf:
                    stack.append((i + a, j + b, acc + w))
        if i < n:
            stack.append((i + 1, j, acc + ms))
        if j < m:
            stack.append((i, j + 1, acc + ms))
    return best


def planted_corpus(rng: random.Random, n: int, words: int = 8) -> Document:
    """n mutually dissimilar letter-soup sentences; aligning a copy against
    itself puts similarity ~1.0 on the diagonal. Pair with dim >= 256
    embeddings to keep off-diagonal similarities low."""
    letters = "abcdefghijklmnopqrstuvwxyz"
    sentences = []
    for _ in range(n):
        sentences.append(
            " ".join(
                "".join(rng.choice(letters) for _ in range(5)) for _ in range(words)
            )
        )
    return Document.from_sentences(sentences)


def max_off_diagonal_similarity(matrix_a, matrix_b) -> float:
    """Largest cross-document 1-1 similarity away from the main diagonal."""
    sims = matrix_a.vectors @ matrix_b.vectors.T
    k = min(sims.shape)
    sims[range(k), range(k)] = -1.0
    return float(sims.max())


def gc_move_costs_table(src_doc, tgt_doc, params: GCParams):
    """Per-move scalar costs matching the production arithmetic."""
    pc = _prior_costs(params)
    cs = [0]
    for s in src_doc.sentences:
        cs.append(cs[-1] + len(s))
    ct = [0]
    for s in tgt_doc.sentences:
        ct.append(ct[-1] + len(s))
    return pc, cs, ct


def gc_brute_force_best(src_doc, tgt_doc, params: GCParams | None = None) -> float:
    """Minimum left-fold cost over every legal six-move path."""
    params = params or GCParams()
    pc, cs, ct = gc_move_costs_table(src_doc, tgt_doc, params)
    n, m = len(src_doc), len(tgt_doc)
    best = math.inf

    stack = [(0, 0, 0.0)]
    while stack:
        i, j, acc = stack.pop()
        if i == n and j == m:
            if acc < best:
                best = acc
            continue
        for a, b in GC_MOVES:
            if i + a <= n and j + b <= m:
                l1 = cs[i + a] - cs[i]
                l2 = ct[j + b] - ct[j]
                mc = pc[(a, b)] + float(_match_cost(l1, l2, params))
                stack.append((i + a, j + b, acc + mc))
    return best
