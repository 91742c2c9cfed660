"""Vectors and matrices over Z4 and the Lee/Euclidean weight functions.

Entries are held in read-only ``uint8`` arrays. For the enumeration hot loop each
row can be packed into two bit planes (``lo`` = entry & 1, ``hi`` = entry >> 1),
with coordinate ``j`` stored in bit ``j``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np


def _as_z4_array(data, ndim: int) -> np.ndarray:
    arr = np.array(data, dtype=np.int64)
    if arr.ndim != ndim:
        raise ValueError(f"expected a {ndim}-dimensional array, got shape {arr.shape}")
    if arr.size and (arr.min() < 0 or arr.max() > 3):
        raise ValueError("Z4 entries must lie in {0, 1, 2, 3}")
    out = arr.astype(np.uint8)
    out.setflags(write=False)
    return out


def _parse_digits(text: str) -> list[int]:
    digits = [c for c in text if not c.isspace() and c != ","]
    if any(c not in "0123" for c in digits):
        raise ValueError(f"not a Z4 digit string: {text!r}")
    return [int(c) for c in digits]


class Z4Vector:
    """An immutable vector in Z4^n."""

    __slots__ = ("_a",)

    def __init__(self, entries: Iterable[int] | str | np.ndarray):
        if isinstance(entries, str):
            entries = _parse_digits(entries)
        if not isinstance(entries, np.ndarray):
            entries = list(entries)
        a = _as_z4_array(entries, 1)
        if a.size == 0:
            raise ValueError("a Z4 vector must have positive length")
        object.__setattr__(self, "_a", a)

    def __setattr__(self, name, value):
        raise AttributeError("Z4Vector is immutable")

    @property
    def entries(self) -> np.ndarray:
        return self._a

    def __len__(self) -> int:
        return int(self._a.size)

    def __iter__(self) -> Iterator[int]:
        return (int(x) for x in self._a)

    def __getitem__(self, i):
        return int(self._a[i])

    def __eq__(self, other) -> bool:
        if not isinstance(other, Z4Vector):
            return NotImplemented
        return self._a.shape == other._a.shape and bool(np.array_equal(self._a, other._a))

    def __hash__(self) -> int:
        return hash(self._a.tobytes())

    def __add__(self, other: Z4Vector) -> Z4Vector:
        return add(self, other)

    def __repr__(self) -> str:
        return f"Z4Vector('{self}')"

    def __str__(self) -> str:
        return "".join(str(int(x)) for x in self._a)

    def planes(self) -> tuple[int, int]:
        """Return the (low, high) bit planes as Python ints."""
        return _pack(self._a & 1), _pack(self._a >> 1)


def _pack(bits: np.ndarray) -> int:
    idx = np.flatnonzero(bits)
    return sum(1 << int(j) for j in idx)


class Z4Matrix:
    """An immutable m x n matrix over Z4, usually the generator matrix of a code."""

    __slots__ = ("_a",)

    def __init__(self, rows):
        if isinstance(rows, Z4Matrix):
            a = rows._a
        elif isinstance(rows, np.ndarray):
            a = _as_z4_array(rows, 2)
        else:
            rows = list(rows)
            if not rows:
                raise ValueError("a Z4 matrix needs at least one row")
            parsed = []
            for r in rows:
                if isinstance(r, str):
                    parsed.append(_parse_digits(r))
                elif isinstance(r, Z4Vector):
                    parsed.append(list(r))
                else:
                    parsed.append([int(x) for x in r])
            lengths = {len(r) for r in parsed}
            if len(lengths) != 1:
                raise ValueError(f"rows have differing lengths {sorted(lengths)}")
            a = _as_z4_array(parsed, 2)
        if a.shape[0] < 1 or a.shape[1] < 1:
            raise ValueError("a Z4 matrix must have m >= 1 rows and n >= 1 columns")
        object.__setattr__(self, "_a", a)

    def __setattr__(self, name, value):
        raise AttributeError("Z4Matrix is immutable")

    @classmethod
    def parse(cls, text: str) -> Z4Matrix:
        """Build from a digit grid, one row per line (blank lines ignored)."""
        return cls([ln.strip() for ln in text.strip().splitlines() if ln.strip()])

    @property
    def array(self) -> np.ndarray:
        return self._a

    @property
    def shape(self) -> tuple[int, int]:
        return self._a.shape

    @property
    def nrows(self) -> int:
        return int(self._a.shape[0])

    @property
    def n(self) -> int:
        return int(self._a.shape[1])

    @property
    def rows(self) -> list[Z4Vector]:
        return [Z4Vector(r) for r in self._a]

    def __len__(self) -> int:
        return self.nrows

    def __getitem__(self, i: int) -> Z4Vector:
        return Z4Vector(self._a[i])

    def __eq__(self, other) -> bool:
        if not isinstance(other, Z4Matrix):
            return NotImplemented
        return self._a.shape == other._a.shape and bool(np.array_equal(self._a, other._a))

    def __hash__(self) -> int:
        return hash((self._a.shape, self._a.tobytes()))

    def __str__(self) -> str:
        return "\n".join("".join(str(int(x)) for x in r) for r in self._a)

    def __repr__(self) -> str:
        return f"Z4Matrix({self.nrows}x{self.n})"

    def stack(self, *others: Z4Matrix | Z4Vector | Sequence[int]) -> Z4Matrix:
        """Return a new matrix with the given rows appended below."""
        parts = [self._a]
        for o in others:
            if isinstance(o, Z4Matrix):
                parts.append(o._a)
            else:
                vec = o if isinstance(o, Z4Vector) else Z4Vector(o)
                parts.append(vec.entries[None, :])
        return Z4Matrix(np.vstack(parts))

    def permute_columns(self, perm: Sequence[int]) -> Z4Matrix:
        """Column ``j`` of the result is column ``perm[j]`` of ``self``."""
        return Z4Matrix(self._a[:, list(perm)])

    def gram(self) -> np.ndarray:
        """Pairwise row inner products mod 4."""
        a = self._a.astype(np.int64)
        return (a @ a.T) % 4

    def planes(self) -> tuple[np.ndarray, np.ndarray]:
        """Bit planes of every row as ``uint64`` arrays (requires n <= 64)."""
        if self.n > 64:
            raise ValueError("bit-plane packing supports n <= 64")
        w = (np.uint64(1) << np.arange(self.n, dtype=np.uint64))
        lo = ((self._a & 1).astype(np.uint64) * w).sum(axis=1, dtype=np.uint64)
        hi = ((self._a >> 1).astype(np.uint64) * w).sum(axis=1, dtype=np.uint64)
        return lo, hi


@dataclass(frozen=True)
class WeightTriple:
    lee: int
    euclidean: int
    symbol_counts: tuple[int, int, int, int]


def _check_lengths(u: Z4Vector, v: Z4Vector) -> None:
    if len(u) != len(v):
        raise ValueError(f"length mismatch: {len(u)} vs {len(v)}")


def add(u: Z4Vector, v: Z4Vector) -> Z4Vector:
    _check_lengths(u, v)
    return Z4Vector((u.entries.astype(np.int64) + v.entries) % 4)


def scale(a: int, v: Z4Vector) -> Z4Vector:
    return Z4Vector((int(a) % 4 * v.entries.astype(np.int64)) % 4)


def inner_product(u: Z4Vector, v: Z4Vector) -> int:
    _check_lengths(u, v)
    return int(np.dot(u.entries.astype(np.int64), v.entries.astype(np.int64)) % 4)


def weights(v: Z4Vector) -> WeightTriple:
    counts = np.bincount(v.entries, minlength=4)
    n0, n1, n2, n3 = (int(c) for c in counts)
    return WeightTriple(lee=n1 + 2 * n2 + n3, euclidean=n1 + 4 * n2 + n3, symbol_counts=(n0, n1, n2, n3))


def lee_weight(v: Z4Vector) -> int:
    return weights(v).lee


def euclidean_weight(v: Z4Vector) -> int:
    return weights(v).euclidean
