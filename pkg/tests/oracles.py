"""Deliberately naive reference implementations used only by the tests.

None of these touch standard forms, bit planes or the compiled kernels.
"""

from __future__ import annotations

import itertools

import numpy as np


def span(rows) -> set[tuple[int, ...]]:
    """Closure of the rows under addition mod 4 (breadth-first)."""
    rows = [tuple(int(x) % 4 for x in r) for r in rows]
    n = len(rows[0])
    seen = {(0,) * n}
    frontier = list(seen)
    while frontier:
        nxt = []
        for w in frontier:
            for r in rows:
                s = tuple((a + b) % 4 for a, b in zip(w, r))
                if s not in seen:
                    seen.add(s)
                    nxt.append(s)
        frontier = nxt
    return seen


def weights(word) -> tuple[int, int]:
    lee = sum(min(x, 4 - x) for x in word)
    eu = sum(min(x, 4 - x) ** 2 for x in word)
    return lee, eu


def distributions(words):
    lee, eu, swe = {}, {}, {}
    n = len(next(iter(words)))
    for w in words:
        l, e = weights(w)
        lee[l] = lee.get(l, 0) + 1
        eu[e] = eu.get(e, 0) + 1
        n0 = sum(1 for x in w if x == 0)
        n2 = sum(1 for x in w if x == 2)
        key = (n0, n - n0 - n2, n2)
        swe[key] = swe.get(key, 0) + 1
    return lee, eu, swe


def dual_words(rows, n: int) -> set[tuple[int, ...]]:
    g = np.array(rows, dtype=np.int64)
    allv = np.array(list(itertools.product(range(4), repeat=n)), dtype=np.int64)
    ok = ~((allv @ g.T) % 4).any(axis=1)
    return {tuple(int(x) for x in v) for v in allv[ok]}


def binary_span(rows, n: int) -> set[tuple[int, ...]]:
    out = {(0,) * n}
    for r in rows:
        r = tuple(int(x) % 2 for x in r)
        out |= {tuple(a ^ b for a, b in zip(w, r)) for w in out}
    return out


def torsion_words(words, n: int) -> set[tuple[int, ...]]:
    return {c for c in itertools.product(range(2), repeat=n) if tuple(2 * x for x in c) in words}


def lift_matrices(rows) -> list[np.ndarray]:
    """Every binary k x k matrix satisfying e_i.e_j = 2(m_ij + m_ji) mod 4."""
    e = np.array(rows, dtype=np.int64)
    k = e.shape[0]
    gram = (e @ e.T) % 4
    out = []
    for bits in itertools.product(range(2), repeat=k * k):
        m = np.array(bits, dtype=np.int64).reshape(k, k)
        if not ((gram - 2 * (m + m.T)) % 4).any():
            out.append(m)
    return out
