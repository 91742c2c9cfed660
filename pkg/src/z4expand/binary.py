"""Binary linear codes: duals, doubly-even tests and doubly-even extensions.

A ``BinaryCode`` always carries its generator in reduced row-echelon form, so
membership tests and code equality reduce to comparing echelon forms.  Vectors
are handled either as 0/1 ``uint8`` arrays or, for enumeration, as Python/NumPy
integers with coordinate ``j`` in bit ``j``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator

import numpy as np

# Above this length the dual is not enumerated in full when searching for
# doubly-even extension vectors.
FULL_SCAN_MAX_N = 24


def rref(mat) -> tuple[np.ndarray, list[int]]:
    """Reduced row-echelon form over GF(2); zero rows are dropped."""
    m = np.array(mat, dtype=np.uint8) % 2
    if m.ndim != 2:
        raise ValueError("expected a 2-d binary matrix")
    nrows, n = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(n):
        if r == nrows:
            break
        nz = np.flatnonzero(m[r:, c])
        if nz.size == 0:
            continue
        p = r + int(nz[0])
        if p != r:
            m[[r, p]] = m[[p, r]]
        others = np.flatnonzero(m[:, c])
        others = others[others != r]
        m[others] ^= m[r]
        pivots.append(c)
        r += 1
    return m[:r], pivots


def rank2(mat) -> int:
    mat = np.asarray(mat)
    if mat.size == 0:
        return 0
    return len(rref(mat)[1])


def to_int(v) -> int:
    return sum(1 << j for j, b in enumerate(np.asarray(v).ravel()) if b & 1)


def from_int(x: int, n: int) -> np.ndarray:
    return np.array([(int(x) >> j) & 1 for j in range(n)], dtype=np.uint8)


def _popcount(x: np.ndarray) -> np.ndarray:
    return np.bitwise_count(x.astype(np.uint64)).astype(np.int64)


@dataclass(frozen=True)
class BinaryCode:
    """A binary linear code of length ``n`` given by its RREF generator."""

    generator: np.ndarray
    n: int
    pivots: tuple[int, ...] = field(default=(), compare=False)

    @classmethod
    def from_rows(cls, rows, n: int | None = None) -> BinaryCode:
        arr = np.array(rows, dtype=np.uint8)
        if arr.ndim == 1:
            arr = arr.reshape(1, -1) if arr.size else arr.reshape(0, n or 0)
        if n is None:
            n = arr.shape[1]
        if arr.shape[0] == 0:
            return cls.zero(n)
        if arr.shape[1] != n:
            raise ValueError(f"rows have length {arr.shape[1]}, expected {n}")
        g, piv = rref(arr)
        g.setflags(write=False)
        return cls(generator=g, n=n, pivots=tuple(piv))

    @classmethod
    def parse(cls, *rows: str) -> BinaryCode:
        return cls.from_rows([[int(c) for c in r] for r in rows])

    @classmethod
    def zero(cls, n: int) -> BinaryCode:
        g = np.zeros((0, n), dtype=np.uint8)
        g.setflags(write=False)
        return cls(generator=g, n=n, pivots=())

    @classmethod
    def full(cls, n: int) -> BinaryCode:
        return cls.from_rows(np.eye(n, dtype=np.uint8))

    @property
    def dimension(self) -> int:
        return int(self.generator.shape[0])

    k = dimension

    def __eq__(self, other) -> bool:
        if not isinstance(other, BinaryCode):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.generator, other.generator)

    def __hash__(self) -> int:
        return hash((self.n, self.generator.tobytes()))

    def __repr__(self) -> str:
        return f"BinaryCode([{self.n}, {self.dimension}])"

    def __str__(self) -> str:
        return "\n".join("".join(str(int(b)) for b in r) for r in self.generator)

    def rows_as_ints(self) -> list[int]:
        return [to_int(r) for r in self.generator]

    def reduce(self, v) -> np.ndarray:
        """Remainder of ``v`` after eliminating the pivot columns."""
        v = np.array(v, dtype=np.uint8) % 2
        for row, p in zip(self.generator, self.pivots):
            if v[p]:
                v ^= row
        return v

    def contains(self, v) -> bool:
        return not self.reduce(v).any()

    def contains_code(self, other: BinaryCode) -> bool:
        return all(self.contains(r) for r in other.generator)

    def join(self, *others) -> BinaryCode:
        """The code spanned by ``self`` together with extra codes or vectors."""
        parts = [self.generator]
        for o in others:
            if isinstance(o, BinaryCode):
                parts.append(o.generator)
            else:
                parts.append(np.array(o, dtype=np.uint8).reshape(-1, self.n))
        return BinaryCode.from_rows(np.vstack(parts), self.n)

    def codewords(self) -> np.ndarray:
        """All 2^k codewords as integers (bit j = coordinate j)."""
        if self.n > 64:
            raise ValueError("integer codeword packing supports n <= 64")
        words = np.zeros(1, dtype=np.uint64)
        for r in self.rows_as_ints():
            words = np.concatenate([words, words ^ np.uint64(r)])
        return words

    def weight_distribution(self) -> dict[int, int]:
        w = _popcount(self.codewords())
        vals, counts = np.unique(w, return_counts=True)
        return {int(a): int(b) for a, b in zip(vals, counts)}


def bdual(code: BinaryCode) -> BinaryCode:
    """The dual code, built directly from the echelon form."""
    n = code.n
    free = [c for c in range(n) if c not in set(code.pivots)]
    h = np.zeros((len(free), n), dtype=np.uint8)
    for i, f in enumerate(free):
        h[i, f] = 1
        for row, p in zip(code.generator, code.pivots):
            h[i, p] = row[f]
    if not free:
        return BinaryCode.zero(n)
    return BinaryCode.from_rows(h, n)


def is_self_orthogonal(code: BinaryCode) -> bool:
    g = code.generator.astype(np.int64)
    return not ((g @ g.T) % 2).any()


def is_doubly_even(code: BinaryCode) -> bool:
    """Row weights divisible by 4 and all pairwise overlaps even."""
    g = code.generator.astype(np.int64)
    gram = g @ g.T
    diag = np.diag(gram)
    if (diag % 4).any():
        return False
    return not (gram % 2).any()


def complement_in_dual(a: BinaryCode, b: BinaryCode) -> list[np.ndarray]:
    """Vectors of ``a``'s dual outside ``b`` that complete ``b`` to a basis of it.

    The dual's echelon basis is scanned in order and a vector is kept whenever
    it is not yet in the span of ``b`` and the vectors already kept.
    """
    ad = bdual(a)
    if not ad.contains_code(b):
        raise ValueError("B is not contained in the dual of A")
    chosen: list[np.ndarray] = []
    span = b
    for row in ad.generator:
        if not span.contains(row):
            chosen.append(row.copy())
            span = span.join([row])
    assert span.dimension == ad.dimension
    return chosen


def dual_basis(g1) -> np.ndarray:
    """Rows ``s_j`` with ``e_i . s_j = delta_ij`` for the independent rows ``e_i`` of ``g1``."""
    g1 = np.array(g1, dtype=np.uint8) % 2
    if g1.ndim != 2:
        raise ValueError("expected a 2-d binary matrix")
    k, n = g1.shape
    if k == 0:
        return np.zeros((0, n), dtype=np.uint8)
    _, piv = rref(g1)
    if len(piv) != k:
        raise ValueError("rows are linearly dependent; no dual basis exists")
    sub = g1[:, piv]
    aug, piv2 = rref(np.hstack([sub, np.eye(k, dtype=np.uint8)]))
    inv = aug[:, k:]
    s = np.zeros((k, n), dtype=np.uint8)
    s[:, piv] = inv.T
    assert not (((g1.astype(np.int64) @ s.T.astype(np.int64)) % 2) ^ np.eye(k, dtype=np.int64)).any()
    return s


def self_orthogonal_dim_bound(n: int) -> int:
    """Largest dimension of a binary self-orthogonal code of length n."""
    return n // 2 if n % 2 == 0 else (n - 1) // 2


def _lex_support_first(cands: np.ndarray) -> int:
    """Index of the candidate with lexicographically smallest support."""
    idx = np.arange(cands.size)
    rem = cands.astype(np.uint64)
    while True:
        done = rem == 0
        if done.any():
            return int(idx[np.flatnonzero(done)[0]])
        low = rem & (~rem + np.uint64(1))
        keep = low == low.min()
        idx, rem = idx[keep], rem[keep]
        if idx.size == 1:
            return int(idx[0])
        rem = rem & (rem - np.uint64(1))


def _candidate_vectors(space: BinaryCode, depth: int | None) -> np.ndarray:
    if depth is None:
        return space.codewords()
    rows = np.array(space.rows_as_ints(), dtype=np.uint64)
    out = []
    for r in range(1, min(depth, rows.size) + 1):
        for combo in itertools.combinations(range(rows.size), r):
            out.append(np.bitwise_xor.reduce(rows[list(combo)]))
    return np.array(out, dtype=np.uint64)


def _valid_extensions(current: BinaryCode, cands: np.ndarray) -> np.ndarray:
    ok = (_popcount(cands) % 4) == 0
    red = cands.copy()
    for r, p in zip(current.rows_as_ints(), current.pivots):
        hit = (red >> np.uint64(p)) & np.uint64(1)
        red = np.where(hit == 1, red ^ np.uint64(r), red)
    return cands[ok & (red != 0)]


@dataclass(frozen=True)
class Extension:
    """Result of a greedy doubly-even extension."""

    code: BinaryCode
    added: tuple[np.ndarray, ...]
    certified_maximal: bool


def extend_to_maximal_doubly_even(
    code: BinaryCode,
    constraint: BinaryCode | None = None,
    *,
    max_dim: int | None = None,
    depth: int = 3,
) -> Extension:
    """Greedily add doubly-even vectors from the dual until none remain.

    Candidates come from ``(code + constraint)^perp`` and are taken in
    lexicographic order of their support.  For ``n > FULL_SCAN_MAX_N`` only sums
    of at most ``depth`` echelon basis vectors of that space are scanned and the
    result is flagged as not certified maximal.  ``max_dim`` stops early.
    """
    if not is_doubly_even(code):
        raise ValueError("input code is not doubly-even self-orthogonal")
    n = code.n
    limit = self_orthogonal_dim_bound(n) if max_dim is None else max_dim
    full = n <= FULL_SCAN_MAX_N
    cur = code
    added: list[np.ndarray] = []
    while cur.dimension < limit:
        space = bdual(cur if constraint is None else cur.join(constraint))
        cands = _valid_extensions(cur, _candidate_vectors(space, None if full else depth))
        if cands.size == 0:
            break
        v = from_int(int(cands[_lex_support_first(cands)]), n)
        added.append(v)
        cur = cur.join([v])
    certified = full and (max_dim is None or cur.dimension < max_dim)
    return Extension(code=cur, added=tuple(added), certified_maximal=certified)


def doubly_even_extensions(
    code: BinaryCode,
    dim: int,
    constraint: BinaryCode | None = None,
    *,
    limit: int | None = None,
) -> Iterator[Extension]:
    """Yield distinct doubly-even codes of dimension ``dim`` containing ``code``.

    Search is depth-first with candidates in support-lex order, so the first
    item is the greedy extension.  Meant for short lengths (n <= 24).
    """
    if not is_doubly_even(code):
        raise ValueError("input code is not doubly-even self-orthogonal")
    if dim < code.dimension:
        raise ValueError("target dimension below the dimension of the code")
    if code.n > FULL_SCAN_MAX_N:
        raise ValueError(f"exhaustive extension search limited to n <= {FULL_SCAN_MAX_N}")
    seen: set[BinaryCode] = set()
    visited: set[BinaryCode] = set()
    count = 0

    def order(cands: np.ndarray) -> list[int]:
        rest = cands.copy()
        out = []
        while rest.size:
            i = _lex_support_first(rest)
            out.append(int(rest[i]))
            rest = np.delete(rest, i)
        return out

    def rec(cur: BinaryCode, added: tuple):
        nonlocal count
        if cur.dimension == dim:
            if cur not in seen:
                seen.add(cur)
                count += 1
                yield Extension(code=cur, added=added, certified_maximal=False)
            return
        if cur in visited:
            return
        visited.add(cur)
        space = bdual(cur if constraint is None else cur.join(constraint))
        cands = _valid_extensions(cur, space.codewords())
        for x in order(cands):
            v = from_int(x, code.n)
            yield from rec(cur.join([v]), added + (v,))
            if limit is not None and count >= limit:
                return

    for ext in rec(code, ()):
        yield ext
        if limit is not None and count >= limit:
            return


def random_doubly_even_extension(
    code: BinaryCode,
    dim: int,
    rng: np.random.Generator,
    constraint: BinaryCode | None = None,
    max_tries: int = 10_000,
) -> Extension:
    """Doubly-even extension to ``dim`` built from random dual vectors."""
    if not is_doubly_even(code):
        raise ValueError("input code is not doubly-even self-orthogonal")
    cur = code
    added: list[np.ndarray] = []
    tries = 0
    while cur.dimension < dim:
        space = bdual(cur if constraint is None else cur.join(constraint))
        if space.dimension == 0:
            break
        coeffs = rng.integers(0, 2, size=space.dimension, dtype=np.uint8)
        v = (coeffs.astype(np.int64) @ space.generator.astype(np.int64)) % 2
        tries += 1
        if tries > max_tries:
            raise ValueError(f"no doubly-even extension of dimension {dim} found")
        if v.sum() % 4 or cur.contains(v):
            continue
        v = v.astype(np.uint8)
        added.append(v)
        cur = cur.join([v])
    if cur.dimension < dim:
        raise ValueError(f"no doubly-even extension of dimension {dim} found")
    return Extension(code=cur, added=tuple(added), certified_maximal=False)
