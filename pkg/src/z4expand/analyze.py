"""Weight distributions, symmetric weight enumerators and small-n equivalence.

Every quantity reported here is a function of one table: the number of
codewords with ``u`` entries equal to +-1 and ``t`` entries equal to 2.  The
Lee weight is ``u + 2t``, the Euclidean weight ``u + 4t`` and the symmetric
weight enumerator monomial ``a^(n-u-t) b^u c^t``.
"""

from __future__ import annotations

import sys
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Mapping

import numpy as np

from . import _kernels
from .codes import CodeProfile, codeword_array, profile, torsion
from .z4algebra import Z4Matrix

PROGRESS_THRESHOLD = 1 << 30


@dataclass(frozen=True)
class WeightReport:
    n: int
    total: int
    lee_distribution: dict[int, int]
    euclidean_distribution: dict[int, int]
    swe: dict[tuple[int, int, int], int]
    d_L: int | None
    d_E: int | None
    type: tuple[int, int]
    capped_at: int | None = None
    # (units, twos) -> count, restricted like ``swe`` when capped
    unit_two: dict[tuple[int, int], int] = field(default_factory=dict, repr=False)

    def lee(self, w: int) -> int:
        return self.lee_distribution.get(w, 0)

    def euclidean(self, w: int) -> int:
        return self.euclidean_distribution.get(w, 0)

    def to_json(self) -> dict:
        return {
            "type": list(self.type),
            "dL": self.d_L,
            "dE": self.d_E,
            "lee": {str(w): c for w, c in sorted(self.lee_distribution.items())},
            "euclidean": {str(w): c for w, c in sorted(self.euclidean_distribution.items())},
            "swe": [[i, j, k, c] for (i, j, k), c in sorted(self.swe.items(), key=_swe_key)],
        }


def _set_threads(threads: int | None) -> None:
    if threads is None:
        return
    import numba

    numba.set_num_threads(max(1, min(int(threads), numba.config.NUMBA_NUM_THREADS)))


def _kernel_inputs(prof: CodeProfile):
    free = prof.generator.array[: prof.k1]
    if prof.k1:
        lo, hi = Z4Matrix(free).planes()
    else:
        lo = hi = np.zeros(0, dtype=np.uint64)
    tor = np.array(torsion(prof).rows_as_ints(), dtype=np.uint64)
    nmask = np.uint64((1 << prof.n) - 1)
    return lo, hi, tor, nmask


def _stderr_progress(done: int, total: int) -> None:
    print(f"progress: {100.0 * done / total:5.1f}%", file=sys.stderr, flush=True)


def unit_two_histogram(
    g: Z4Matrix | CodeProfile,
    threads: int | None = None,
    progress: Callable[[int, int], None] | None | bool = None,
    method: str = "gray",
) -> np.ndarray:
    """Array ``H[u, t]`` = number of codewords with u units and t twos.

    ``method="gray"`` uses the compiled Gray-code walk (n <= 64);
    ``method="direct"`` forms every coefficient combination explicitly.
    Progress goes to stderr by default once the code exceeds 2^30 codewords.
    """
    prof = profile(g)
    n = prof.n
    if method == "direct" or n > 64:
        return _direct_histogram(prof)
    if method != "gray":
        raise ValueError(f"unknown enumeration method {method!r}")
    _set_threads(threads)
    lo, hi, tor, nmask = _kernel_inputs(prof)
    outer = 1 << prof.k1
    if progress is None:
        progress = _stderr_progress if prof.size > PROGRESS_THRESHOLD else False
    if progress is True:
        progress = _stderr_progress
    batch = max(1, min(4096, outer // 20 if progress else outer))
    hist = np.zeros((n + 1, n + 1), dtype=np.int64)
    for a0 in range(0, outer, batch):
        a1 = min(outer, a0 + batch)
        out = np.zeros((a1 - a0, n + 1, n + 1), dtype=np.int64)
        _kernels.unit_two_histogram(lo, hi, tor, nmask, a0, a1, out)
        hist += out.sum(axis=0)
        if progress:
            progress(a1 * (prof.size // outer), prof.size)
    return hist


def _direct_histogram(prof: CodeProfile, chunk: int = 1 << 16) -> np.ndarray:
    n = prof.n
    hist = np.zeros((n + 1, n + 1), dtype=np.int64)
    for start in range(0, prof.size, chunk):
        words = codeword_array(prof, start, start + chunk)
        units = (words % 2 == 1).sum(axis=1)
        twos = (words == 2).sum(axis=1)
        np.add.at(hist, (units, twos), 1)
    return hist


def report_from_histogram(hist: np.ndarray, prof: CodeProfile, cap: int | None = None) -> WeightReport:
    n = prof.n
    lee: Counter = Counter()
    eucl: Counter = Counter()
    swe: dict[tuple[int, int, int], int] = {}
    ut: dict[tuple[int, int], int] = {}
    d_l = d_e = None
    for u, t in zip(*np.nonzero(hist)):
        u, t = int(u), int(t)
        c = int(hist[u, t])
        wl, we = u + 2 * t, u + 4 * t
        if wl and (d_l is None or wl < d_l):
            d_l = wl
        if we and (d_e is None or we < d_e):
            d_e = we
        if cap is None or wl <= cap:
            lee[wl] += c
        if cap is None or we <= cap:
            eucl[we] += c
            swe[(n - u - t, u, t)] = c
            ut[(u, t)] = c
    return WeightReport(
        n=n,
        total=int(hist.sum()),
        lee_distribution=dict(sorted(lee.items())),
        euclidean_distribution=dict(sorted(eucl.items())),
        swe=swe,
        d_L=d_l,
        d_E=d_e,
        type=prof.type,
        capped_at=cap,
        unit_two=ut,
    )


def weight_report(
    g: Z4Matrix | CodeProfile,
    cap: int | None = None,
    threads: int | None = None,
    progress=None,
    method: str = "gray",
) -> WeightReport:
    """Full Lee/Euclidean/SWE analysis by exhaustive enumeration.

    With ``cap`` every codeword is still counted (so ``total``, ``d_L`` and
    ``d_E`` stay exact) but the Lee distribution keeps only Lee weights
    <= cap, and the Euclidean distribution, ``swe`` and ``unit_two`` keep only
    entries of Euclidean weight <= cap.
    """
    prof = profile(g)
    hist = unit_two_histogram(prof, threads=threads, progress=progress, method=method)
    return report_from_histogram(hist, prof, cap)


def min_weights(g: Z4Matrix | CodeProfile, lee_floor: int = 0, euclidean_floor: int = 0) -> tuple[int, int]:
    """Minimum nonzero (Lee, Euclidean) weights.

    Aborts as soon as a codeword below either floor appears; in that case the
    returned pair is only an upper bound showing the floor was undercut.
    """
    prof = profile(g)
    if prof.n > 64:
        rep = weight_report(prof, method="direct")
        return rep.d_L, rep.d_E
    lo, hi, tor, nmask = _kernel_inputs(prof)
    return tuple(int(x) for x in _kernels.min_weights(lo, hi, tor, nmask, lee_floor, euclidean_floor))


def _swe_key(item):
    (i, j, k), _ = item
    return (-i, -j, -k)


def _monomial(i: int, j: int, k: int) -> str:
    out = ""
    for var, e in (("a", i), ("b", j), ("c", k)):
        if e == 1:
            out += var
        elif e > 1:
            out += f"{var}^{e}"
    return out or "1"


def render_swe(swe: Mapping[tuple[int, int, int], int]) -> str:
    terms = []
    for (i, j, k), c in sorted(swe.items(), key=_swe_key):
        if c == 0:
            continue
        mono = _monomial(i, j, k)
        if mono == "1":
            terms.append(str(c))
        else:
            terms.append(mono if c == 1 else f"{c}{mono}")
    return " + ".join(terms)


def swe_polynomial(g: Z4Matrix | CodeProfile | WeightReport) -> str:
    rep = g if isinstance(g, WeightReport) else weight_report(g)
    return render_swe(rep.swe)


def parse_swe(text: str) -> dict[tuple[int, int, int], int]:
    """Inverse of :func:`render_swe` (accepts arbitrary term order and spacing)."""
    out: Counter = Counter()
    for term in text.replace(" ", "").split("+"):
        if not term:
            continue
        j = 0
        while j < len(term) and term[j].isdigit():
            j += 1
        coeff = int(term[:j]) if j else 1
        exps = {"a": 0, "b": 0, "c": 0}
        rest = term[j:]
        pos = 0
        while pos < len(rest):
            var = rest[pos]
            if var not in exps:
                raise ValueError(f"bad SWE term {term!r}")
            pos += 1
            e = 1
            if pos < len(rest) and rest[pos] == "^":
                pos += 1
                q = pos
                while pos < len(rest) and rest[pos].isdigit():
                    pos += 1
                e = int(rest[q:pos])
            exps[var] += e
        out[(exps["a"], exps["b"], exps["c"])] += coeff
    return dict(out)


def is_type_II(report: WeightReport) -> bool:
    if report.capped_at is not None:
        raise ValueError("type test needs an uncapped report")
    return all(w % 8 == 0 for w, c in report.euclidean_distribution.items() if w and c)


class EquivalenceRefused(ValueError):
    """Raised when a permutation search would be too large."""


def _codeword_matrix(g: Z4Matrix) -> np.ndarray:
    return codeword_array(profile(g)).astype(np.int64)


def permutation_equivalent(g1: Z4Matrix, g2: Z4Matrix, n_max: int = 10, signed: bool = False) -> bool:
    """Whether some coordinate permutation maps one code onto the other.

    Backtracking assigns columns of the first code to columns of the second,
    pruning whenever the projections onto the assigned columns differ as
    multisets.  With ``signed=True`` a column may also be negated, i.e. the
    search is over monomial maps with entries +-1.
    """
    if g1.n != g2.n:
        return False
    n = g1.n
    if n > n_max:
        raise EquivalenceRefused(f"n = {n} exceeds n_max = {n_max}")
    p1, p2 = profile(g1), profile(g2)
    if p1.type != p2.type:
        return False
    r1, r2 = weight_report(p1, method="direct"), weight_report(p2, method="direct")
    if r1.swe != r2.swe:
        return False
    w1, w2 = _codeword_matrix(g1), _codeword_matrix(g2)
    target = {row.tobytes() for row in w2.astype(np.uint8)}

    def col_sig(col):
        c = np.bincount(col, minlength=4)
        return (c[0], c[1] + c[3], c[2]) if signed else tuple(c)

    sig1 = [col_sig(w1[:, j]) for j in range(n)]
    sig2 = [col_sig(w2[:, j]) for j in range(n)]
    if sorted(sig1) != sorted(sig2):
        return False
    # place columns with rare signatures first
    freq = Counter(sig1)
    order = sorted(range(n), key=lambda j: (freq[sig1[j]], j))
    signs = (1, 3) if signed else (1,)
    used = [False] * n

    def keys(words: np.ndarray) -> np.ndarray:
        # pack rows of a (N, depth) matrix over Z4 into integers
        depth = words.shape[1]
        return (words * (4 ** np.arange(depth, dtype=np.int64))).sum(axis=1)

    def rec(depth: int, img1: np.ndarray, img2: np.ndarray) -> bool:
        if depth == n:
            return True
        j = order[depth]
        for c in range(n):
            if used[c] or sig2[c] != sig1[j]:
                continue
            for s in signs:
                a = np.column_stack([img1, w1[:, j]])
                b = np.column_stack([img2, (s * w2[:, c]) % 4])
                if not np.array_equal(np.sort(keys(a)), np.sort(keys(b))):
                    continue
                used[c] = True
                assignment.append((j, c, s))
                if rec(depth + 1, a, b):
                    return True
                assignment.pop()
                used[c] = False
        return False

    assignment: list[tuple[int, int, int]] = []
    empty = np.zeros((w1.shape[0], 0), dtype=np.int64)
    if not rec(0, empty, empty):
        return False
    # final certificate: apply the map to every codeword of code 1
    image = np.zeros_like(w1)
    for j, c, s in assignment:
        image[:, c] = (s * w1[:, j]) % 4
    return {row.tobytes() for row in image.astype(np.uint8)} == target


def compare_codes(g1: Z4Matrix, g2: Z4Matrix, n_max: int = 10, signed: bool = False) -> str:
    """Equivalence verdict; beyond ``n_max`` only SWE equality is checked."""
    if g1.n != g2.n:
        return "inequivalent"
    if g1.n > n_max:
        same = weight_report(g1).swe == weight_report(g2).swe
        return "swe-identical (necessary condition only)" if same else "inequivalent"
    return "equivalent" if permutation_equivalent(g1, g2, n_max, signed) else "inequivalent"
