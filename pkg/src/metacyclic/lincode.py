"""Minimum distance and low-weight search for linear codes over F_q.

Generator matrices are code matrices over a table field (see
:mod:`metacyclic.linalg`).  :func:`min_distance` runs a Brouwer-Zimmermann
search over several information sets; :func:`enumerate_words` walks the whole
code in chunks and is the brute-force reference.
"""

from __future__ import annotations

import itertools
import math

import numpy as np

from . import linalg
from .errors import BudgetExceeded, EmptyCode

DEFAULT_BUDGET = 2**24
CHUNK = 1 << 15


def _scaled_rows(F, G) -> np.ndarray:
    """S[c, i] = c * G[i] for every field element c."""
    return F.mul[np.arange(F.size)[:, None, None], G[None, :, :]]


def messages(F, k: int, start: int, stop: int) -> np.ndarray:
    """Messages with index in [start, stop) of the base-q enumeration of F_q^k."""
    idx = np.arange(start, stop, dtype=np.int64)
    return (idx[:, None] // F.size ** np.arange(k, dtype=np.int64)) % F.size


def encode(F, M, G) -> np.ndarray:
    return linalg.matmul(F, M, G)


def _all_combinations(F, G) -> np.ndarray:
    """Every F_q-combination of the rows of G, built by repeated doubling."""
    W = np.zeros((1, G.shape[1]), dtype=np.int16)
    S = _scaled_rows(F, G).astype(np.int16)
    for i in range(G.shape[0]):
        W = F.add[W[None, :, :], S[:, i][:, None, :]].reshape(-1, G.shape[1])
    return W


def enumerate_words(F, G, budget: int | None = None):
    """Yield chunks of all codewords (the zero word included)."""
    G = linalg.as_matrix(G)
    k = G.shape[0]
    total = F.size**k
    if budget is not None and total > budget:
        raise BudgetExceeded(f"{total} codewords exceed the budget {budget}")
    low = min(k, max(1, int(math.log(CHUNK, F.size))))
    base = _all_combinations(F, G[:low])
    high = G[low:]
    for start in range(F.size ** (k - low)):
        if high.shape[0]:
            shift = encode(F, messages(F, high.shape[0], start, start + 1), high)[0]
            if F.D == 1:
                yield (base + shift) % F.p
            else:
                yield F.add[base, shift[None, :]]
        else:
            yield base


def min_distance_enumerate(F, G, budget: int | None = None) -> int:
    G = linalg.row_space(F, G)
    if G.shape[0] == 0:
        raise EmptyCode("code has no nonzero codewords")
    best = G.shape[1]
    for W in enumerate_words(F, G, budget):
        w = np.count_nonzero(W, axis=1)
        w = w[w > 0]
        if w.size:
            best = min(best, int(w.min()))
    return best


def weight_distribution(F, G, budget: int | None = None) -> np.ndarray:
    G = linalg.as_matrix(G)
    counts = np.zeros(G.shape[1] + 1, dtype=np.int64)
    for W in enumerate_words(F, G, budget):
        counts += np.bincount(np.count_nonzero(W, axis=1), minlength=G.shape[1] + 1)
    return counts


def _info_sets(F, G) -> list[tuple[np.ndarray, int]]:
    """Systematic generator matrices on successive information sets and the
    number of pivots each one has outside the previously used columns."""
    k, N = G.shape
    used: list[int] = []
    out = []
    while len(used) < N:
        fresh = [c for c in range(N) if c not in set(used)]
        order = fresh + used
        R, piv = linalg.rref(F, G[:, order])
        pivots = [order[p] for p in piv]
        new = [c for c in pivots if c not in set(used)]
        if not new:
            break
        M = np.zeros_like(G)
        M[:, order] = R
        out.append((M, len(new)))
        used.extend(new)
    return out


def _weight_w_words(F, S, k: int, w: int):
    """Chunks of codewords from messages of Hamming weight w whose first
    nonzero entry is 1."""
    q = F.size
    vals = np.array(list(itertools.product(range(1, q), repeat=w - 1)), dtype=np.int64)
    vals = np.hstack([np.ones((len(vals), 1), dtype=np.int64), vals])
    per = max(1, CHUNK // len(vals))
    combos = itertools.combinations(range(k), w)
    while True:
        block = list(itertools.islice(combos, per))
        if not block:
            return
        pos = np.repeat(np.array(block, dtype=np.int64), len(vals), axis=0)
        cv = np.tile(vals, (len(block), 1))
        acc = S[cv[:, 0], pos[:, 0]]
        for t in range(1, w):
            acc = F.add[acc, S[cv[:, t], pos[:, t]]]
        yield acc


def min_distance(F, G, budget: int | None = None, *, return_word: bool = False):
    """Exact minimum distance by a Brouwer-Zimmermann search.

    ``budget`` caps the number of codewords generated; past it
    :class:`BudgetExceeded` carries the best upper bound found.
    """
    G = linalg.row_space(F, G)
    k, N = G.shape
    if k == 0:
        raise EmptyCode("code has no nonzero codewords")
    budget = DEFAULT_BUDGET if budget is None else budget
    sets = _info_sets(F, G)
    scaled = [_scaled_rows(F, M) for M, _ in sets]
    ranks = [r for _, r in sets]
    upper, word = N + 1, None
    spent = 0
    for w in range(1, k + 1):
        cost = math.comb(k, w) * (F.size - 1) ** (w - 1)
        for S in scaled:
            if spent + cost > budget:
                raise BudgetExceeded(
                    f"distance search needs more than {budget} codewords", best=upper
                )
            spent += cost
            for W in _weight_w_words(F, S, k, w):
                wt = np.count_nonzero(W, axis=1)
                i = int(wt.argmin())
                if wt[i] < upper:
                    upper, word = int(wt[i]), W[i]
        lower = sum(max(0, w + 1 - (k - r)) for r in ranks)
        if lower >= upper:
            break
    return (upper, word) if return_word else upper


def low_weight_words(F, G, below: int, budget: int | None = None) -> tuple[int, bool]:
    """Number of nonzero codewords of weight < ``below``.

    Returns ``(count, exact)``: exhaustive when q^k fits in the budget, else a
    lower bound from low-weight messages on random information sets.
    """
    G = linalg.row_space(F, G)
    k, N = G.shape
    budget = DEFAULT_BUDGET if budget is None else budget
    if k == 0:
        return 0, True
    if F.size**k <= budget:
        count = 0
        for W in enumerate_words(F, G):
            wt = np.count_nonzero(W, axis=1)
            count += int(np.count_nonzero((wt > 0) & (wt < below)))
        return count, True
    rng = np.random.default_rng(0)
    found: set[bytes] = set()
    spent = 0
    while spent < budget:
        perm = rng.permutation(N)
        R, piv = linalg.rref(F, G[:, perm])
        M = np.zeros_like(G)
        M[:, perm] = R
        S = _scaled_rows(F, M)
        for w in (1, 2):
            for W in _weight_w_words(F, S, k, w):
                spent += len(W)
                wt = np.count_nonzero(W, axis=1)
                for row in W[(wt > 0) & (wt < below)]:
                    # count each projective point once, scaled by q - 1 below
                    lead = row[np.flatnonzero(row)[0]]
                    found.add(F.mul[F.inv[lead], row].tobytes())
    return len(found) * (F.size - 1), False
