"""Compiled codeword enumeration over bit planes.

Every codeword is written uniquely as ``x_a + 2 t`` with ``x_a`` a {0,1}
combination of the free rows (summed in Z4) and ``t`` in the torsion code.
Adding ``2t`` only flips the high plane, so for a fixed ``a`` the unit count
``popcount(lo)`` is constant and the count of entries equal to 2 is
``popcount((hi ^ t) & ~lo)``.  The torsion code is walked in Gray-code order,
one XOR per codeword.
"""

from __future__ import annotations

import os

import numba
import numpy as np
from numba import njit, prange
from numba.extending import intrinsic

if "NUMBA_THREADING_LAYER" not in os.environ and "NUMBA_THREADING_LAYER_PRIORITY" not in os.environ:
    # the probe for an old TBB only produces a warning; try it last
    numba.config.THREADING_LAYER_PRIORITY = ["omp", "workqueue", "tbb"]


@intrinsic
def _popcnt(typingctx, x):
    if isinstance(x, numba.types.Integer):

        def codegen(context, builder, sig, args):
            return builder.ctpop(args[0])

        return x(x), codegen


@intrinsic
def _cttz(typingctx, x):
    if isinstance(x, numba.types.Integer):

        def codegen(context, builder, sig, args):
            return builder.cttz(args[0], numba.core.cgutils.true_bit)

        return x(x), codegen


@njit(cache=True, inline="always")
def _z4_add(l1, h1, l2, h2):
    return l1 ^ l2, h1 ^ h2 ^ (l1 & l2)


@njit(cache=True)
def _outer_word(a, free_lo, free_hi):
    lo = np.uint64(0)
    hi = np.uint64(0)
    for i in range(free_lo.size):
        if (a >> i) & 1:
            lo, hi = _z4_add(lo, hi, free_lo[i], free_hi[i])
    return lo, hi


@njit(cache=True)
def _twos_histogram(h, m, tor, hist):
    """hist[w] += #{t in span(tor) : popcount((h ^ t) & m) == w}."""
    k = tor.size
    # Four interleaved tallies break the store-to-load chain on a single bin.
    local = np.zeros((4, hist.size), dtype=np.int64)
    t = np.uint64(0)
    local[0, _popcnt((h ^ t) & m)] += 1
    total = np.uint64(1) << np.uint64(k)
    if k < 2:
        if k == 1:
            local[1, _popcnt((h ^ tor[0]) & m)] += 1
        total = np.uint64(0)
    # 2^k - 1 steps remain, i.e. 3 (mod 4) for k >= 2.
    i = np.uint64(1)
    while i < total:
        t ^= tor[_cttz(i)]
        local[0, _popcnt((h ^ t) & m)] += 1
        t ^= tor[_cttz(i + np.uint64(1))]
        local[1, _popcnt((h ^ t) & m)] += 1
        t ^= tor[_cttz(i + np.uint64(2))]
        local[2, _popcnt((h ^ t) & m)] += 1
        if i + np.uint64(3) < total:
            t ^= tor[_cttz(i + np.uint64(3))]
            local[3, _popcnt((h ^ t) & m)] += 1
        i += np.uint64(4)
    for r in range(4):
        for w in range(hist.size):
            hist[w] += local[r, w]


@njit(cache=True, parallel=True)
def unit_two_histogram(free_lo, free_hi, tor, nmask, a_start, a_stop, out):
    """Fill ``out[a - a_start, u, w]`` with the (unit count, two count) tallies.

    Only the outer indices ``a`` in ``[a_start, a_stop)`` are processed, so
    callers can partition the work and report progress between batches.
    """
    for j in prange(a_stop - a_start):
        a = a_start + j
        lo, hi = _outer_word(a, free_lo, free_hi)
        u = _popcnt(lo)
        _twos_histogram(hi, nmask & ~lo, tor, out[j, u])


@njit(cache=True)
def min_weights(free_lo, free_hi, tor, nmask, lee_floor, eucl_floor):
    """Minimum nonzero Lee and Euclidean weights.

    Returns early (with the offending weights) as soon as a nonzero codeword of
    Lee weight below ``lee_floor`` or Euclidean weight below ``eucl_floor`` is
    seen; pass 0 to disable either bound.
    """
    k1 = free_lo.size
    k = tor.size
    best_lee = 1 << 30
    best_eucl = 1 << 30
    total = np.uint64(1) << np.uint64(k)
    for a in range(1 << k1):
        lo, hi = _outer_word(a, free_lo, free_hi)
        u = _popcnt(lo)
        m = nmask & ~lo
        t = np.uint64(0)
        i = np.uint64(0)
        while i < total:
            if i > 0:
                t ^= tor[_cttz(i)]
            i += np.uint64(1)
            if a == 0 and t == 0:
                continue
            w2 = _popcnt((hi ^ t) & m)
            lee = u + 2 * w2
            eu = u + 4 * w2
            if lee < best_lee:
                best_lee = lee
            if eu < best_eucl:
                best_eucl = eu
            if best_lee < lee_floor or best_eucl < eucl_floor:
                return best_lee, best_eucl
    return best_lee, best_eucl
