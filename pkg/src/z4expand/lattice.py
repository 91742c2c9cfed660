"""Construction A_4 data: minimum norm and kissing number.

The lattice of a code C of length n is (1/2){x in Z^n : x mod 4 in C}, so a
vector's norm is |x|^2 / 4.  All counting is done on the scaled vectors x.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import isqrt

import numpy as np

from .analyze import WeightReport, is_type_II, weight_report
from .codes import dual, is_self_dual, profile
from .z4algebra import Z4Matrix


@dataclass(frozen=True)
class LatticeReport:
    n: int
    min_norm: Fraction
    kissing: int
    parity: str  # "even" (Type II code) or "odd"

    @property
    def integral_min_norm(self) -> bool:
        return self.min_norm.denominator == 1

    def to_json(self) -> dict:
        mu = self.min_norm
        return {"mu": int(mu) if mu.denominator == 1 else str(mu), "kissing": self.kissing, "parity": self.parity}


def _poly_mul(p: list[int], q: list[int], top: int) -> list[int]:
    out = [0] * (top + 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q[: top + 1 - i]):
                out[i + j] += a * b
    return out


def _poly_pow(p: list[int], e: int, top: int) -> list[int]:
    out = [1] + [0] * top
    base = p[:]
    while e:
        if e & 1:
            out = _poly_mul(out, base, top)
        base = _poly_mul(base, base, top)
        e >>= 1
    return out


def _residue_class_series(r: int, top: int) -> list[int]:
    """Coefficients of z^(x^2) for integers x = r (mod 4), up to z^top."""
    out = [0] * (top + 1)
    b = isqrt(top)
    for x in range(-b, b + 1):
        if x % 4 == r:
            out[x * x] += 1
    return out


def lift_count(report: WeightReport, target: int) -> int:
    """Number of x with x mod 4 in C and |x|^2 = target.

    Each coordinate contributes a theta series depending only on its residue
    class, so the count is a sum over the SWE of products of three series.
    Needs every SWE term of Euclidean weight <= target.
    """
    if report.capped_at is not None and report.capped_at < target:
        raise ValueError(f"weight report capped at {report.capped_at} < {target}")
    p0, p1, p2 = (_residue_class_series(r, target) for r in (0, 1, 2))
    total = 0
    for (i, j, k), c in report.swe.items():
        mono = _poly_mul(_poly_mul(_poly_pow(p0, i, target), _poly_pow(p1, j, target), target), _poly_pow(p2, k, target), target)
        total += c * mono[target]
    return total


def minimal_lift_count(report: WeightReport) -> int:
    """Kissing number when d_E < 16: every minimal vector is a minimal lift.

    A codeword of Euclidean weight d_E has exactly 2^(number of 2s) lifts of
    norm d_E/4 (entries +-1 lift uniquely, 2 lifts to +-2).
    """
    d = report.d_E
    if d is None or d >= 16:
        raise ValueError("closed form needs d_E < 16")
    return sum(c * 2**k for (i, j, k), c in report.swe.items() if j + 4 * k == d)


def lattice_report(g: Z4Matrix, report: WeightReport | None = None) -> LatticeReport:
    """Minimum norm min{4, d_E/4} and the kissing number of A_4(C).

    The vectors 4 e_i (norm 4) are always present, which caps the minimum.
    """
    if not is_self_dual(g):
        raise ValueError("lattice data is defined here for self-dual codes only")
    if report is None:
        report = weight_report(g, cap=16)
    d = report.d_E
    mu = min(Fraction(4), Fraction(d, 4))
    target = int(4 * mu)
    if report.capped_at is not None and report.capped_at < target:
        raise ValueError(f"weight report capped at {report.capped_at}, below {target}")
    if d < 16:
        kiss = minimal_lift_count(report)
    else:
        kiss = lift_count(report, target)
    if report.capped_at is None:
        parity = "even" if is_type_II(report) else "odd"
    else:
        parity = _parity_from_generators(g)
    return LatticeReport(n=g.n, min_norm=mu, kissing=kiss, parity=parity)


def _parity_from_generators(g: Z4Matrix) -> str:
    # wt_E(x + y) = wt_E(x) + wt_E(y) + 2 x.y (mod 8) and x.y = 0 (mod 4) on a
    # self-orthogonal code, so checking the generators suffices.
    a = g.array.astype(np.int64)
    eu = (a % 2).sum(axis=1) + 4 * (a == 2).sum(axis=1)
    return "even" if not (eu % 8).any() else "odd"


@lru_cache(maxsize=None)
def _vectors_with_norm(n: int, target: int, radius: int) -> np.ndarray:
    """All x in Z^n with |x_i| <= radius and |x|^2 == target."""
    if n == 0:
        return np.zeros((1 if target == 0 else 0, 0), dtype=np.int8)
    parts = []
    for x in range(-radius, radius + 1):
        sq = x * x
        if sq > target:
            continue
        tail = _vectors_with_norm(n - 1, target - sq, radius)
        if tail.shape[0]:
            parts.append(np.hstack([np.full((tail.shape[0], 1), x, dtype=np.int8), tail]))
    if not parts:
        return np.zeros((0, n), dtype=np.int8)
    return np.vstack(parts)


def brute_force_kissing(g: Z4Matrix, norm: int, radius: int) -> int:
    """Count lattice vectors of the given norm by direct search over Z^n.

    Every integer vector with |x|^2 = 4 norm and entries in [-radius, radius]
    is tested for x mod 4 in C.  ``radius^2 >= 4 norm`` makes this exhaustive.
    """
    if norm == 0:
        return 0
    target = 4 * norm
    if radius * radius < target:
        raise ValueError(f"radius {radius} too small to be exhaustive (need radius^2 >= {target})")
    if g.n > 12:
        raise ValueError("brute force is limited to n <= 12")
    h = dual(profile(g)).array.astype(np.int64)
    cands = _vectors_with_norm(g.n, target, radius)
    count = 0
    for s in range(0, cands.shape[0], 1 << 18):
        block = cands[s : s + (1 << 18)].astype(np.int64) % 4
        count += int((~((block @ h.T) % 4).any(axis=1)).sum())
    return count
