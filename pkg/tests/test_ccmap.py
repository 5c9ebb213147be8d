from collections import Counter

import pytest

from orbicc.ccmap import (
    GVector,
    cc_prin,
    g_vector,
    g_vector_band,
    g_vector_string,
    minimal_term_check,
    snake_expansion,
    verify_cc_equals_expansion,
    weight_lemma_failures,
)
from orbicc.laurent import ExponentVector, canonical_text, x_monomial
from orbicc.quiver import c_matrix
from orbicc.repmod import band_representation, g_vector_homological, string_representation
from orbicc.strings import BandWord, StringWord, all_bands, all_strings, parse_word

W1 = "beta^-1 rho beta"
B2 = "band(alpha^-1 mu alpha delta^-1 eps delta)"


def test_gvector_invariant():
    with pytest.raises(ValueError):
        GVector((1,), (0,), (0,), (0,))


def test_example1_g_vector(ex1):
    gv = g_vector_string(ex1.g, parse_word(W1))
    assert (gv.a, gv.b, gv.r, gv.g) == ((0, 2, 0), (0, 0, 1), (0, 0, 0), (0, -2, 1))
    assert gv.presentation == ((0, 2, 0), (0, 0, 1))


def test_example2_g_vector(ex2):
    gv = g_vector_band(ex2.g, parse_word(B2))
    assert (gv.a, gv.b, gv.r, gv.g) == ((2, 0, 0, 0), (0, 1, 1, 0), (0, 0, 0, 0), (-2, 1, 1, 0))


def test_simple_at_sink(ex1):
    gv = g_vector_string(ex1.g, StringWord.trivial(1))
    assert gv.a == (1, 0, 0)
    # alpha^-1 can be appended to e_1 (an inverse letter), so r picks up s(alpha) = 2
    assert gv.r == (0, 1, 0) and gv.g == (-1, 1, 0)


@pytest.mark.parametrize("name", ["example1", "example2", "example44"])
def test_g_vectors_match_homological(pairs, name):
    g = pairs[name].g
    for w in all_strings(g, 6):
        assert g_vector(g, w).g == g_vector_homological(g, string_representation(g, w))
        assert g_vector(g, w).g == g_vector(g, w.inverse()).g
    for b in all_bands(g, 6):
        gv = g_vector(g, b)
        assert gv.r == (0,) * g.n
        assert gv.g == g_vector_homological(g, band_representation(g, b, 3))
        for k in range(len(b)):
            assert g_vector(g, b.rotate(k)).g == gv.g == g_vector(g, b.inverse().rotate(k)).g


def test_example1_cc(ex1):
    p = cc_prin(ex1.g, parse_word(W1))
    assert len(p) == 6
    assert sorted(p.terms.values()) == [1, 1, 1, 1, 1, 2]
    lowest = min(p.terms)
    assert lowest == ExponentVector((0, -2, 1))
    assert canonical_text(p).startswith("x2^-2*x3 + 2*x1*x2^-2*y2")


def test_simple_cc(ex44):
    g = ex44.g
    for v in range(1, g.n + 1):
        w = StringWord.trivial(v)
        gv = g_vector(g, w).g
        C = c_matrix(g.quiver)
        col = [C[i][v - 1] for i in range(g.n)]
        e = [int(i == v - 1) for i in range(g.n)]
        expect = x_monomial(gv) + x_monomial([a + b for a, b in zip(gv, col)], e)
        assert cc_prin(g, w) == expect
        assert len(snake_expansion(g, w)) == 2


def test_example2_cc(ex2):
    b = parse_word(B2)
    p = cc_prin(ex2.g, b)
    assert sum(p.terms.values()) == 14 and len(p) == 13
    assert cc_prin(ex2.g, b, 2, "brute") == cc_prin(ex2.g, b, 1, "brute") == p


@pytest.mark.parametrize("which", ["ex1", "ex2"])
def test_verify_examples(which, ex1, ex2):
    pair, w = (ex1, W1) if which == "ex1" else (ex2, B2)
    word = parse_word(w)
    res = verify_cc_equals_expansion(pair.g, word, t=pair.t)
    assert res.ok and res.report() == "ok"
    assert snake_expansion(pair.g, word) == snake_expansion(pair.g, word, pair.t)
    assert minimal_term_check(pair.g, word, pair.t)


def test_diff_report_lists_terms(ex1):
    from orbicc.ccmap import VerifyResult

    a = x_monomial((1, 0, 0))
    b = x_monomial((0, 1, 0))
    keys = sorted(set(a.terms) | set(b.terms))
    diff = tuple((k, a.terms.get(k, 0), b.terms.get(k, 0)) for k in keys)
    text = VerifyResult(False, a, b, diff).report()
    assert "mismatch" in text and "x1: cc=1 expansion=0" in text and "x2: cc=0 expansion=1" in text


@pytest.mark.parametrize("name", ["example1", "example2", "example44"])
def test_expansion_invariants(pairs, name):
    p = pairs[name]
    for w in all_strings(p.g, 6) + all_bands(p.g, 6):
        cc = cc_prin(p.g, w)
        assert verify_cc_equals_expansion(p.g, w, t=p.t).ok
        assert not weight_lemma_failures(p.g, w, p.t)
        assert minimal_term_check(p.g, w, p.t)
        gv = g_vector(p.g, w).g
        assert cc.y_degree_part((0,) * p.g.n).terms == {ExponentVector(gv): 1}
        assert all(c > 0 for c in cc.specialize_y().terms.values())
        other = w.inverse()
        assert cc_prin(p.g, other) == cc
        if isinstance(w, BandWord):
            assert all(cc_prin(p.g, w.rotate(k)) == cc for k in range(len(w)))
