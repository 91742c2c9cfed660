import numpy as np
import pytest
from hypothesis import given, settings

from z4expand.binary import BinaryCode
from z4expand.codes import (
    ZeroMatrixError,
    code_contains,
    codeword_array,
    codewords,
    contains,
    dual,
    is_self_dual,
    is_self_orthogonal,
    profile,
    residue,
    same_code,
    standard_form,
    torsion,
)
from z4expand.z4algebra import Z4Matrix

from oracles import span, dual_words, torsion_words
from strategies import z4_matrices


def words(g):
    return {tuple(int(x) for x in w) for w in codeword_array(g)}


def test_standard_form_shape():
    g = Z4Matrix(["10111200", "01110320", "00321101", "20031110"])
    p = standard_form(g)
    s = p.standard_generator.array
    k1, k2 = p.type
    assert (s[:k1, :k1] == np.eye(k1)).all()
    assert (s[k1:, k1 : k1 + k2] == 2 * np.eye(k2)).all()
    assert not (s[k1:, :k1]).any()
    assert not (s[k1:] % 2).any()
    assert same_code(p.generator, g)


def test_zero_matrix_rejected():
    with pytest.raises(ZeroMatrixError):
        standard_form(Z4Matrix(["000", "000"]))


def test_type_examples():
    assert profile(Z4Matrix(["1111", "0220", "0022"])).type == (1, 2)
    assert profile(Z4Matrix(["2000", "0200", "2200"])).type == (0, 2)
    assert profile(Z4Matrix(["1300", "2200"])).type == (1, 0)


@given(z4_matrices(max_n=7, max_rows=4))
def test_size_residue_torsion_match_naive(g):
    p = profile(g)
    naive = span(g.array)
    assert p.size == len(naive)
    assert words(g) == naive
    assert {tuple(x % 2 for x in w) for w in naive} == {
        tuple(int(b) for b in w) for w in _bin_words(residue(p))
    }
    assert torsion_words(naive, g.n) == {tuple(int(b) for b in w) for w in _bin_words(torsion(p))}
    assert residue(p).dimension == p.k1 and torsion(p).dimension == p.k1 + p.k2


def _bin_words(code: BinaryCode):
    from z4expand.binary import from_int

    return [from_int(int(w), code.n) for w in code.codewords()]


@settings(max_examples=200)
@given(z4_matrices(max_n=10, max_rows=5))
def test_dual_involution_and_size(g):
    p = profile(g)
    if p.log2_size == 2 * g.n:
        with pytest.raises(ZeroMatrixError):
            dual(g)
        return
    h = dual(g)
    hp = profile(h)
    assert p.size * hp.size == 4**g.n
    if hp.log2_size < 2 * g.n:
        assert same_code(dual(h), p.generator)


@given(z4_matrices(max_n=5, max_rows=3))
def test_dual_matches_brute_force(g):
    if profile(g).log2_size == 2 * g.n:
        return
    assert words(dual(g)) == dual_words(g.array, g.n)


def test_self_duality_examples():
    d4 = Z4Matrix(["1111", "0220", "0022"])
    assert is_self_orthogonal(d4) and is_self_dual(d4)
    assert is_self_orthogonal(Z4Matrix(["1111"])) and not is_self_dual(Z4Matrix(["1111"]))
    assert not is_self_orthogonal(Z4Matrix(["1100"]))
    assert same_code(dual(d4), d4)


def test_containment_and_same_code():
    d4 = Z4Matrix(["1111", "0220", "0022"])
    assert contains(d4, [2, 2, 0, 0]) and not contains(d4, [1, 0, 0, 0])
    assert code_contains(d4, Z4Matrix(["1111"])) and not code_contains(Z4Matrix(["1111"]), d4)
    assert same_code(Z4Matrix(["1111", "2200"]), Z4Matrix(["3333", "0022"]))
    assert not same_code(Z4Matrix(["1111"]), Z4Matrix(["111"]))


@given(z4_matrices(max_n=6, max_rows=3))
def test_codeword_ranges_partition(g):
    total = profile(g).size
    mid = total // 3
    a = {str(w) for w in codewords(g, 0, mid, chunk=5)}
    b = {str(w) for w in codewords(g, mid, None, chunk=7)}
    assert not a & b and len(a | b) == total
