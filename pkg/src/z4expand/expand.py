"""Expanding self-orthogonal Z4 codes to self-dual ones.

``algorithm1`` keeps the residue code and fills the torsion code up to the
dual of the residue.  ``algorithm2`` (free codes) and ``algorithm3`` (codes
with order-2 rows) first enlarge the residue to a doubly-even binary code,
lift the new rows to Z4 and then finish with ``algorithm1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

import numpy as np

from .analyze import min_weights
from .binary import (
    FULL_SCAN_MAX_N,
    BinaryCode,
    Extension,
    complement_in_dual,
    self_orthogonal_dim_bound,
    doubly_even_extensions,
    dual_basis,
    extend_to_maximal_doubly_even,
    random_doubly_even_extension,
    rref,
)
from .codes import CodeProfile, is_self_dual, is_self_orthogonal, profile, residue, torsion
from .z4algebra import Z4Matrix


class NotSelfOrthogonal(ValueError):
    pass


@dataclass(frozen=True)
class LiftChoice:
    """A k x k binary matrix M for the lift E = G1 + 2 M S."""

    M: np.ndarray
    index: int


@dataclass(frozen=True)
class ExpansionResult:
    code: Z4Matrix
    chain: tuple[Z4Matrix, ...]
    provenance: dict = field(default_factory=dict)


def _require_self_orthogonal(g: Z4Matrix) -> CodeProfile:
    if not is_self_orthogonal(g):
        raise NotSelfOrthogonal("input code is not self-orthogonal")
    return profile(g)


def algorithm1(g: Z4Matrix) -> ExpansionResult:
    """Append 2 alpha for a basis of Res(C)^perp modulo Tor(C).

    The residue is unchanged and the result is the unique self-dual code
    containing C with that residue.
    """
    prof = _require_self_orthogonal(g)
    res, tor = residue(prof), torsion(prof)
    alphas = complement_in_dual(res, tor)
    chain = [g]
    cur = g
    for a in alphas:
        cur = cur.stack(2 * a.astype(np.int64))
        chain.append(cur)
    assert is_self_dual(cur), "algorithm 1 produced a code that is not self-dual"
    return ExpansionResult(
        code=cur,
        chain=tuple(chain),
        provenance={"algorithm": 1, "torsion_added": [a.tolist() for a in alphas]},
    )


def _lift_layout(rows: np.ndarray) -> tuple[np.ndarray, list[tuple[int, int]]]:
    e = np.asarray(rows, dtype=np.int64)
    if e.ndim != 2 or ((e != 0) & (e != 1)).any():
        raise ValueError("lift rows must be a 0/1 matrix")
    gram = e @ e.T
    if (np.diag(gram) % 4).any() or (gram % 2).any():
        raise ValueError("rows do not span a doubly-even self-orthogonal code")
    k = e.shape[0]
    return gram % 4, [(i, j) for i in range(k) for j in range(i + 1, k)]


def lift_count(k: int) -> int:
    return 2 ** (k * (k + 1) // 2)


def lift_matrix(rows: np.ndarray, index: int) -> LiftChoice:
    """The lift matrix with the given index.

    Bits 0..k-1 of the index are the diagonal entries; the following bits
    give m_ij for i < j in row-major order.  m_ji is then forced:
    equal to m_ij when e_i.e_j = 0 (mod 4), the complement when it is 2.
    """
    gram, pairs = _lift_layout(rows)
    k = gram.shape[0]
    if not 0 <= index < lift_count(k):
        raise IndexError(f"lift index {index} out of range")
    m = np.zeros((k, k), dtype=np.uint8)
    for i in range(k):
        m[i, i] = (index >> i) & 1
    for p, (i, j) in enumerate(pairs):
        b = (index >> (k + p)) & 1
        m[i, j] = b
        m[j, i] = b if gram[i, j] == 0 else 1 - b
    m.setflags(write=False)
    return LiftChoice(M=m, index=index)


def enumerate_lift_matrices(rows: np.ndarray) -> Iterator[LiftChoice]:
    """All 2^(k(k+1)/2) matrices M with e_i.e_j = 2(m_ij + m_ji) (mod 4)."""
    _lift_layout(rows)
    for idx in range(lift_count(np.asarray(rows).shape[0])):
        yield lift_matrix(rows, idx)


def lift_rows(rows: np.ndarray, choice: LiftChoice) -> np.ndarray:
    e = np.asarray(rows, dtype=np.int64)
    s = dual_basis(e).astype(np.int64)
    return (e + 2 * (choice.M.astype(np.int64) @ s)) % 4


def lift_doubly_even(code: BinaryCode, choice: LiftChoice) -> Z4Matrix:
    """Self-dual code with residue ``code``: [G1 + 2 M S ; 2 complement]."""
    g1 = code.generator
    top = lift_rows(g1, choice)
    comp = complement_in_dual(code, code)
    rows = [top] + ([2 * np.array(comp, dtype=np.int64)] if comp else [])
    out = Z4Matrix(np.vstack(rows))
    assert is_self_dual(out), "lift is not self-dual"
    return out


def _added_rows(prof: CodeProfile, sup: BinaryCode) -> np.ndarray:
    """Basis of ``sup`` modulo Res(C), zero at the pivot columns of C's free rows."""
    free = prof.free_rows.astype(np.int64) % 2
    piv = prof.pivot_columns
    red = []
    for v in sup.generator.astype(np.int64):
        v = v.copy()
        for row, p in zip(free, piv):
            if v[p]:
                v ^= row
        if v.any():
            red.append(v)
    if not red:
        return np.zeros((0, prof.n), dtype=np.int64)
    r, _ = rref(np.array(red, dtype=np.uint8))
    return r.astype(np.int64)


def _combine(prof: CodeProfile, added: np.ndarray, choice: LiftChoice, keep_order2: bool) -> Z4Matrix:
    lifted = lift_rows(added, choice)
    free = prof.free_rows.astype(np.int64)
    # F fix-up: cancel the inner products with the original free rows
    ip = (lifted @ free.T) % 4
    assert not (ip % 2).any()
    for j, p in enumerate(prof.pivot_columns):
        lifted[:, p] = (lifted[:, p] + ip[:, j]) % 4
    parts = [free, lifted]
    if keep_order2 and prof.k2:
        parts.append(prof.order2_rows.astype(np.int64))
    out = Z4Matrix(np.vstack(parts))
    assert is_self_orthogonal(out), "lifted rows are not orthogonal"
    return out


def _target(prof: CodeProfile, target_dim: int | None, constraint: BinaryCode | None) -> int:
    n = prof.n
    bound = self_orthogonal_dim_bound(n)
    if target_dim is None:
        return extend_to_maximal_doubly_even(residue(prof), constraint).code.dimension
    if target_dim > bound:
        raise ValueError(f"target k1 = {target_dim} exceeds the bound {bound} for n = {n}")
    if target_dim < prof.k1:
        raise ValueError(f"target k1 = {target_dim} is below the current k1 = {prof.k1}")
    return target_dim


def _supercodes(res: BinaryCode, dim: int, constraint: BinaryCode | None) -> Iterator[BinaryCode]:
    if res.n <= FULL_SCAN_MAX_N:
        found = False
        for ext in doubly_even_extensions(res, dim, constraint):
            found = True
            yield ext.code
        if not found:
            raise ValueError(f"no doubly-even supercode of dimension {dim}")
        return
    ext = extend_to_maximal_doubly_even(res, constraint, max_dim=dim)
    if ext.code.dimension < dim:
        raise ValueError(f"no doubly-even supercode of dimension {dim} found")
    yield ext.code


def _expand(
    g: Z4Matrix,
    algorithm: int,
    target_dim: int | None,
    supercodes: Iterable[BinaryCode | Extension] | None,
    lift_order: Sequence[int] | None,
) -> Iterator[ExpansionResult]:
    # validation happens here, before the stream is first advanced
    prof = _require_self_orthogonal(g)
    res = residue(prof)
    constraint = torsion(prof) if algorithm == 3 else None
    dim = _target(prof, target_dim, constraint)
    if dim == prof.k1:
        return iter([algorithm1(g)])
    if supercodes is None:
        supercodes = _supercodes(res, dim, constraint)
    return _stream(g, prof, res, constraint, dim, algorithm, supercodes, lift_order)


def _stream(g, prof, res, constraint, dim, algorithm, supercodes, lift_order) -> Iterator[ExpansionResult]:
    for si, sup in enumerate(supercodes):
        sup = sup.code if isinstance(sup, Extension) else sup
        if sup.dimension != dim or not sup.contains_code(res):
            raise ValueError("supercode must contain Res(C) and have the target dimension")
        if constraint is not None and (
            (sup.generator.astype(np.int64) @ constraint.generator.astype(np.int64).T) % 2
        ).any():
            raise ValueError("supercode is not orthogonal to Tor(C)")
        added = _added_rows(prof, sup)
        order = range(lift_count(added.shape[0])) if lift_order is None else lift_order
        for li in order:
            choice = lift_matrix(added, li)
            seed = _combine(prof, added, choice, keep_order2=algorithm == 3)
            fin = algorithm1(seed)
            yield ExpansionResult(
                code=fin.code,
                chain=(g,) + fin.chain,
                provenance={
                    "algorithm": algorithm,
                    "supercode_index": si,
                    "supercode": sup.generator.tolist(),
                    "residue_added": added.tolist(),
                    "lift_index": choice.index,
                    "M": choice.M.tolist(),
                    "torsion_added": fin.provenance["torsion_added"],
                },
            )


def algorithm2(
    g: Z4Matrix,
    target_dim: int | None = None,
    supercodes: Iterable[BinaryCode | Extension] | None = None,
    lift_order: Sequence[int] | None = None,
) -> Iterator[ExpansionResult]:
    """Self-dual codes from a free self-orthogonal code (k2 = 0).

    Streams one result per (supercode, lift) pair: supercodes are doubly-even
    codes of dimension ``target_dim`` containing Res(C) (all of them for
    n <= 24, the greedy one otherwise), lifts run over every admissible M.
    ``target_dim`` defaults to the dimension of the greedy maximal extension.
    """
    prof = _require_self_orthogonal(g)
    if prof.k2:
        raise ValueError("code has order-2 rows (k2 > 0); use algorithm3")
    return _expand(g, 2, target_dim, supercodes, lift_order)


def algorithm3(
    g: Z4Matrix,
    target_dim: int | None = None,
    supercodes: Iterable[BinaryCode | Extension] | None = None,
    lift_order: Sequence[int] | None = None,
) -> Iterator[ExpansionResult]:
    """As :func:`algorithm2` for codes with k2 > 0; supercodes lie in Tor(C)^perp."""
    prof = _require_self_orthogonal(g)
    if prof.k2 == 0:
        raise ValueError("code is free (k2 = 0); use algorithm2")
    if is_self_dual(g):
        return iter([ExpansionResult(code=g, chain=(g,), provenance={"algorithm": 3, "already_self_dual": True})])
    return _expand(g, 3, target_dim, supercodes, lift_order)


def expand(g: Z4Matrix, target_dim: int | None = None, **kw) -> Iterator[ExpansionResult]:
    """Dispatch on the type: algorithm 1 when no residue growth is wanted."""
    prof = _require_self_orthogonal(g)
    if target_dim == prof.k1:
        return iter([algorithm1(g)])
    return (algorithm3 if prof.k2 else algorithm2)(g, target_dim, **kw)


@dataclass(frozen=True)
class SearchResult:
    best: ExpansionResult
    d_L: int
    d_E: int
    evaluated: int


_OBJECTIVES = ("dE", "dL")


def expand_search(
    g: Z4Matrix,
    objective: str = "dE",
    budget: int = 256,
    seed: int = 0,
    target_dim: int | None = None,
    supercodes: Iterable[BinaryCode | Extension] | None = None,
) -> SearchResult:
    """Randomised search over (supercode, lift) choices maximising d_E or d_L.

    Lifts are visited in a seeded random order; for n > 24 supercodes are
    drawn at random.  Each candidate's minimum weight is computed with an
    early abort once it falls below the incumbent, and the first best is kept.
    """
    if objective not in _OBJECTIVES:
        raise ValueError(f"objective must be one of {_OBJECTIVES}")
    if budget < 1:
        raise ValueError("budget must be positive")
    prof = _require_self_orthogonal(g)
    rng = np.random.default_rng(seed)
    algorithm = 3 if prof.k2 else 2
    constraint = torsion(prof) if algorithm == 3 else None
    dim = _target(prof, target_dim, constraint)
    res = residue(prof)
    if dim == prof.k1 or is_self_dual(g):
        stream: Iterable[ExpansionResult] = iter([algorithm1(g)])
    else:
        if supercodes is None:
            supercodes = _random_supercodes(res, dim, constraint, rng)
        else:
            supercodes = list(supercodes)
            supercodes = [supercodes[i] for i in rng.permutation(len(supercodes))]
        stream = _search_stream(g, algorithm, dim, supercodes, rng)

    best: ExpansionResult | None = None
    best_score = (-1, -1)
    evaluated = 0
    for cand in stream:
        if evaluated >= budget:
            break
        evaluated += 1
        lee_floor = best_score[0] + 1 if objective == "dL" else 0
        eu_floor = best_score[0] + 1 if objective == "dE" else 0
        d_l, d_e = min_weights(cand.code, lee_floor, eu_floor)
        score = (d_l, d_e) if objective == "dL" else (d_e, d_l)
        if best is None or score[0] > best_score[0]:
            best, best_score = cand, score
    if best is None:
        raise RuntimeError("search produced no self-dual code")
    d_l, d_e = min_weights(best.code)
    return SearchResult(best=best, d_L=d_l, d_E=d_e, evaluated=evaluated)


def _random_supercodes(res, dim, constraint, rng) -> Iterator[BinaryCode]:
    if res.n <= 12:
        allsup = [e.code for e in doubly_even_extensions(res, dim, constraint)]
        if not allsup:
            raise ValueError(f"no doubly-even supercode of dimension {dim}")
        for i in rng.permutation(len(allsup)):
            yield allsup[i]
        return
    seen: set[BinaryCode] = set()
    repeats = 0
    while repeats < 64:
        try:
            code = random_doubly_even_extension(res, dim, rng, constraint).code
        except ValueError:
            code = extend_to_maximal_doubly_even(res, constraint, max_dim=dim).code
            if code.dimension < dim:
                raise
        if code in seen:
            repeats += 1
            continue
        repeats = 0
        seen.add(code)
        yield code


def _search_stream(g, algorithm, dim, supercodes, rng) -> Iterator[ExpansionResult]:
    prof = profile(g)
    for sup in supercodes:
        sup = sup.code if isinstance(sup, Extension) else sup
        k = dim - prof.k1
        total = lift_count(k)
        # permutation() would allocate 2^(k(k+1)/2) entries; sample instead when large
        if total <= 1 << 16:
            order = [int(i) for i in rng.permutation(total)]
        else:
            order = [int(i) for i in rng.integers(0, total, size=1 << 12)]
        yield from _expand(g, algorithm, dim, [sup], order)
