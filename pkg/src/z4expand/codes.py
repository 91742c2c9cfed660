"""Linear codes over Z4: standard form, type, residue/torsion codes and duals."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator

import numpy as np

from .binary import BinaryCode
from .z4algebra import Z4Matrix, Z4Vector


class ZeroMatrixError(ValueError):
    """Raised when a generator matrix has no nonzero entry."""


@dataclass(frozen=True, eq=False)
class CodeProfile:
    """Standard form of a Z4 code.

    ``standard_generator`` has the shape::

        [ I_k1   A       B1 + 2 B2 ]
        [ 0      2 I_k2  2 C       ]

    in permuted coordinates: column ``j`` of it is column
    ``column_permutation[j]`` of the input code.
    """

    standard_generator: Z4Matrix
    column_permutation: tuple[int, ...]
    k1: int
    k2: int

    @property
    def n(self) -> int:
        return self.standard_generator.n

    @property
    def type(self) -> tuple[int, int]:
        return (self.k1, self.k2)

    @property
    def size(self) -> int:
        return 4**self.k1 * 2**self.k2

    @property
    def log2_size(self) -> int:
        return 2 * self.k1 + self.k2

    @cached_property
    def inverse_permutation(self) -> tuple[int, ...]:
        inv = [0] * self.n
        for j, c in enumerate(self.column_permutation):
            inv[c] = j
        return tuple(inv)

    @cached_property
    def generator(self) -> Z4Matrix:
        """The standard-form rows mapped back to the original coordinates."""
        return self.standard_generator.permute_columns(self.inverse_permutation)

    @property
    def free_rows(self) -> np.ndarray:
        """Rows of order 4, original coordinates."""
        return self.generator.array[: self.k1]

    @property
    def order2_rows(self) -> np.ndarray:
        """Rows of order 2 (entries in {0, 2}), original coordinates."""
        return self.generator.array[self.k1 :]

    @property
    def pivot_columns(self) -> tuple[int, ...]:
        """Original column holding the identity entry of each free row."""
        return self.column_permutation[: self.k1]

    def _block(self, r0, r1, c0, c1) -> np.ndarray:
        return self.standard_generator.array[r0:r1, c0:c1]

    @property
    def A(self) -> np.ndarray:
        return self._block(0, self.k1, self.k1, self.k1 + self.k2) % 2

    @property
    def B1(self) -> np.ndarray:
        return self._block(0, self.k1, self.k1 + self.k2, self.n) % 2

    @property
    def B2(self) -> np.ndarray:
        return self._block(0, self.k1, self.k1 + self.k2, self.n) // 2

    @property
    def C(self) -> np.ndarray:
        return self._block(self.k1, self.k1 + self.k2, self.k1 + self.k2, self.n) // 2


def _find_unit(a: np.ndarray, r0: int, c0: int):
    """Leftmost column (>= c0) with a unit entry in rows >= r0; lowest such row."""
    sub = a[r0:, c0:]
    units = (sub % 2) == 1
    cols = np.flatnonzero(units.any(axis=0))
    if cols.size == 0:
        return None
    c = int(cols[0])
    r = int(np.flatnonzero(units[:, c])[0])
    return r0 + r, c0 + c


def standard_form(g: Z4Matrix) -> CodeProfile:
    """Row-reduce over Z4 with column swaps into the standard shape.

    Unit pivots are taken first (leftmost column containing a unit, then the
    lowest row), then pivots equal to 2 among the remaining even rows.
    Zero and duplicate rows disappear in the reduction.
    """
    a = g.array.astype(np.int64).copy()
    m, n = a.shape
    if not a.any():
        raise ZeroMatrixError("the zero matrix generates the zero code")
    perm = list(range(n))

    def swap_cols(i, j):
        if i != j:
            a[:, [i, j]] = a[:, [j, i]]
            perm[i], perm[j] = perm[j], perm[i]

    r = 0
    while r < m:
        hit = _find_unit(a, r, r)
        if hit is None:
            break
        pr, pc = hit
        if pr != r:
            a[[r, pr]] = a[[pr, r]]
        swap_cols(r, pc)
        a[r] = (a[r] * a[r, r]) % 4  # units are self-inverse in Z4
        for i in range(m):
            if i != r and a[i, r]:
                a[i] = (a[i] - a[i, r] * a[r]) % 4
        r += 1
    k1 = r

    # Remaining rows are zero on the first k1 columns and even elsewhere.
    rest = a[k1:] // 2
    k2 = 0
    while k2 < rest.shape[0]:
        sub = rest[k2:, k1 + k2 :]
        cols = np.flatnonzero((sub % 2).any(axis=0))
        if cols.size == 0:
            break
        pc = k1 + k2 + int(cols[0])
        pr = k2 + int(np.flatnonzero(rest[k2:, pc] % 2)[0])
        if pr != k2:
            rest[[k2, pr]] = rest[[pr, k2]]
        ptarget = k1 + k2
        if pc != ptarget:
            rest[:, [ptarget, pc]] = rest[:, [pc, ptarget]]
            swap_cols(ptarget, pc)
        for i in range(rest.shape[0]):
            if i != k2 and rest[i, ptarget] % 2:
                rest[i] = (rest[i] + rest[k2]) % 2
        k2 += 1
    rest = rest[:k2] % 2
    top = a[:k1]
    # Bring the top rows' entries over the 2-pivots down to {0, 1}.
    for j in range(k2):
        col = k1 + j
        odd_twos = top[:, col] >= 2
        top[odd_twos] = (top[odd_twos] + 2 * rest[j]) % 4
    std = np.vstack([top, 2 * rest]) if k2 else top
    if k1 == 0:
        std = 2 * rest
    return CodeProfile(
        standard_generator=Z4Matrix(std.astype(np.int64) % 4),
        column_permutation=tuple(perm),
        k1=k1,
        k2=k2,
    )


def profile(g: Z4Matrix | CodeProfile) -> CodeProfile:
    return g if isinstance(g, CodeProfile) else standard_form(g)


def _unpermute(rows: np.ndarray, prof: CodeProfile) -> np.ndarray:
    return rows[:, list(prof.inverse_permutation)]


def residue(prof: Z4Matrix | CodeProfile) -> BinaryCode:
    """Res(C): generated by the free rows reduced mod 2 (original coordinates)."""
    prof = profile(prof)
    if prof.k1 == 0:
        return BinaryCode.zero(prof.n)
    return BinaryCode.from_rows(prof.free_rows % 2, prof.n)


def torsion(prof: Z4Matrix | CodeProfile) -> BinaryCode:
    """Tor(C) = {c : 2c in C}, of dimension k1 + k2."""
    prof = profile(prof)
    rows = np.vstack([prof.free_rows % 2, prof.order2_rows // 2])
    return BinaryCode.from_rows(rows, prof.n)


def is_self_orthogonal(g: Z4Matrix) -> bool:
    return not g.gram().any()


def is_self_dual(g: Z4Matrix) -> bool:
    if not is_self_orthogonal(g):
        return False
    p = standard_form(g)
    return 2 * p.k1 + p.k2 == p.n


def dual_profile(prof: CodeProfile) -> tuple[np.ndarray, np.ndarray]:
    """Free and order-2 rows of the dual, in the permuted coordinates."""
    k1, k2, n = prof.k1, prof.k2, prof.n
    k3 = n - k1 - k2
    g = prof.standard_generator.array.astype(np.int64)
    a = g[:k1, k1 : k1 + k2]
    b = g[:k1, k1 + k2 :]
    c = g[k1:, k1 + k2 :] // 2
    # H1 = [ -B^T - C^T A^T | C^T | I ],  H2 = [ 2 A^T | 2 I | 0 ]
    h1 = np.zeros((k3, n), dtype=np.int64)
    h1[:, :k1] = (-b.T - c.T @ a.T) % 4
    h1[:, k1 : k1 + k2] = c.T
    h1[:, k1 + k2 :] = np.eye(k3, dtype=np.int64)
    h2 = np.zeros((k2, n), dtype=np.int64)
    h2[:, :k1] = 2 * a.T
    h2[:, k1 : k1 + k2] = 2 * np.eye(k2, dtype=np.int64)
    return h1 % 4, h2 % 4


def dual(g: Z4Matrix | CodeProfile, check: bool = True) -> Z4Matrix:
    """Generator matrix of the dual code, in the input's coordinates."""
    prof = profile(g)
    h1, h2 = dual_profile(prof)
    h = np.vstack([h1, h2])
    if h.shape[0] == 0:
        # C is all of Z4^n? impossible for a proper code; the dual is zero.
        raise ZeroMatrixError("dual of the full space is the zero code")
    out = Z4Matrix(_unpermute(h, prof))
    if check:
        gens = prof.generator.array.astype(np.int64)
        assert not ((gens @ out.array.astype(np.int64).T) % 4).any(), "dual rows not orthogonal"
        dp = standard_form(out)
        assert 2 * (prof.k1 + dp.k1) + prof.k2 + dp.k2 == 2 * prof.n, "|C||C^perp| != 4^n"
    return out


def contains(g: Z4Matrix | CodeProfile, v, parity_check: Z4Matrix | None = None) -> bool:
    """Membership test through the parity-check matrix (C = (C^perp)^perp)."""
    h = dual(g) if parity_check is None else parity_check
    v = np.asarray(list(v) if isinstance(v, Z4Vector) else v, dtype=np.int64)
    return not ((h.array.astype(np.int64) @ v) % 4).any()


def same_code(g1: Z4Matrix, g2: Z4Matrix) -> bool:
    """True iff the two matrices generate the same set of codewords."""
    if g1.n != g2.n:
        return False
    p1, p2 = standard_form(g1), standard_form(g2)
    if p1.type != p2.type:
        return False
    h1 = dual(p1)
    return not ((h1.array.astype(np.int64) @ p2.generator.array.astype(np.int64).T) % 4).any()


def code_contains(big: Z4Matrix, small: Z4Matrix) -> bool:
    h = dual(big)
    return not ((h.array.astype(np.int64) @ small.array.astype(np.int64).T) % 4).any()


def coefficient_space(prof: CodeProfile) -> Iterator[tuple[int, ...]]:
    """Coefficient vectors: Z4 on the free rows, {0,1} on the order-2 rows."""
    return itertools.product(*([range(4)] * prof.k1 + [range(2)] * prof.k2))


def codeword_array(g: Z4Matrix | CodeProfile, start: int = 0, stop: int | None = None) -> np.ndarray:
    """Codewords with coefficient index in ``[start, stop)`` as a 2-d array.

    Index ``i`` encodes the coefficients in mixed radix (free rows base 4,
    then order-2 rows base 2, most significant first), so disjoint index
    ranges give disjoint sets of codewords.
    """
    prof = profile(g)
    total = prof.size
    stop = total if stop is None else min(stop, total)
    idx = np.arange(start, stop, dtype=np.int64)
    radices = [4] * prof.k1 + [2] * prof.k2
    coeffs = np.empty((idx.size, len(radices)), dtype=np.int64)
    rem = idx.copy()
    for j in range(len(radices) - 1, -1, -1):
        coeffs[:, j] = rem % radices[j]
        rem //= radices[j]
    gen = prof.generator.array.astype(np.int64)
    return ((coeffs @ gen) % 4).astype(np.uint8)


def codewords(g: Z4Matrix | CodeProfile, start: int = 0, stop: int | None = None, chunk: int = 1 << 16) -> Iterator[Z4Vector]:
    """Stream every codeword exactly once (optionally a disjoint sub-range)."""
    prof = profile(g)
    stop = prof.size if stop is None else min(stop, prof.size)
    for lo in range(start, stop, chunk):
        for row in codeword_array(prof, lo, min(lo + chunk, stop)):
            yield Z4Vector(row)
