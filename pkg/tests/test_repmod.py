from fractions import Fraction

import pytest

from orbicc.repmod import (
    band_representation,
    brute_force_submodules,
    canonical_submodules,
    euler_char_table,
    g_vector_homological,
    relations_vanish,
    string_representation,
    tau_homological,
)
from orbicc.snakegraph import build_band_graph, build_snake_graph, enumerate_matchings, height_to_arc_vector
from orbicc.strings import (
    BandWord,
    StringWord,
    WordError,
    all_bands,
    all_strings,
    ar_translate,
    is_projective,
    parse_word,
    same_string,
)

F = Fraction
EX1_TABLE = {(0, 0, 0): 1, (0, 1, 0): 2, (0, 2, 0): 1, (0, 1, 1): 1, (0, 2, 1): 1, (0, 2, 2): 1}
EX2_TABLE = {
    (0, 0, 0, 0): 1, (1, 0, 0, 0): 2, (2, 0, 0, 0): 1, (1, 1, 0, 0): 1, (1, 0, 1, 0): 1,
    (2, 1, 0, 0): 1, (2, 0, 1, 0): 1, (2, 2, 0, 0): 1, (2, 1, 1, 0): 1, (2, 0, 2, 0): 1,
    (2, 2, 1, 0): 1, (2, 1, 2, 0): 1, (2, 2, 2, 0): 1,
}
BAND2 = "band(alpha^-1 mu alpha delta^-1 eps delta)"


def test_example1_module(ex1):
    rep = string_representation(ex1.g, parse_word("beta^-1 rho beta"))
    assert rep.dims == (0, 2, 2)
    assert rep.maps["beta"] == ((F(1), F(0)), (F(0), F(1)))
    assert rep.maps["rho"] == ((F(0), F(0)), (F(1), F(0)))
    assert relations_vanish(ex1.g, rep)


@pytest.mark.parametrize("lam", [1, 2, F(-3, 5)])
def test_example2_band_module(ex2, lam):
    rep = band_representation(ex2.g, parse_word(BAND2), lam)
    assert rep.dims == (2, 2, 2, 0)
    assert rep.maps["delta"] == ((F(0), F(lam)), (F(1), F(0)))
    assert rep.maps["alpha"] == ((F(1), F(0)), (F(0), F(1)))
    assert rep.maps["mu"] == rep.maps["eps"] == ((F(0), F(0)), (F(1), F(0)))
    assert relations_vanish(ex2.g, rep)
    assert brute_force_submodules(rep) == EX2_TABLE


def test_zero_lambda_rejected(ex2):
    with pytest.raises(ValueError):
        band_representation(ex2.g, parse_word(BAND2), 0)


def test_simple_module(ex1):
    rep = string_representation(ex1.g, StringWord.trivial(2))
    assert rep.dims == (0, 1, 0)
    assert brute_force_submodules(rep) == {(0, 0, 0): 1, (0, 1, 0): 1}


def test_euler_tables(ex1, ex2):
    w = parse_word("beta^-1 rho beta")
    assert euler_char_table(ex1.g, w) == EX1_TABLE
    assert len(canonical_submodules(ex1.g, w)) == 7
    assert euler_char_table(ex1.g, w) == brute_force_submodules(string_representation(ex1.g, w))
    b = parse_word(BAND2)
    assert euler_char_table(ex2.g, b) == EX2_TABLE
    assert len(canonical_submodules(ex2.g, b)) == 14
    for k in range(6):
        assert euler_char_table(ex2.g, b.rotate(k)) == EX2_TABLE
        assert euler_char_table(ex2.g, b.inverse().rotate(k)) == EX2_TABLE


def test_empty_and_full_are_closed(ex2):
    for w in all_strings(ex2.g, 5):
        subs = {c.positions for c in canonical_submodules(ex2.g, w)}
        assert frozenset() in subs and frozenset(range(1, len(w) + 2)) in subs


def _lattice(g, w):
    graph = build_band_graph(g, w) if isinstance(w, BandWord) else build_snake_graph(g, w)
    return graph, [m.height for m in enumerate_matchings(graph)]


@pytest.mark.parametrize("name", ["example1", "example2", "example44"])
def test_submodule_matching_bijection(pairs, name):
    """Closed position sets and matchings are the same order ideals (positions
    of the word are the tiles of its graph), so the bijection preserves covers."""
    g = pairs[name].g
    for w in all_strings(g, 6) + all_bands(g, 6):
        graph, hs = _lattice(g, w)
        subs = canonical_submodules(g, w)
        as_heights = {tuple(int(i in c.positions) for i in range(1, graph.size + 1)) for c in subs}
        assert as_heights == set(hs)
        for c in subs:
            h = tuple(int(i in c.positions) for i in range(1, graph.size + 1))
            assert height_to_arc_vector(graph, h, g.n) == c.dimension


@pytest.mark.parametrize("name", ["example1", "example2", "example44"])
def test_homological_g_vectors_on_relations(pairs, name):
    g = pairs[name].g
    for w in all_strings(g, 4):
        assert relations_vanish(g, string_representation(g, w))


def test_g_vector_homological_examples(ex1, ex2):
    assert g_vector_homological(ex1.g, string_representation(ex1.g, parse_word("beta^-1 rho beta"))) == (0, -2, 1)
    assert g_vector_homological(ex2.g, band_representation(ex2.g, parse_word(BAND2), 2)) == (-2, 1, 1, 0)


def test_tau_oracle_basics(ex1):
    assert tau_homological(ex1.g, StringWord.trivial(2)) == ((1, 0, 0), StringWord.trivial(1))
    with pytest.raises(WordError):
        tau_homological(ex1.g, parse_word("alpha"))


@pytest.mark.parametrize("name, max_len", [("example1", 8), ("example2", 8), ("example44", 8)])
def test_ar_translate_matches_oracle(pairs, name, max_len):
    g = pairs[name].g
    for w in all_strings(g, max_len):
        if is_projective(g, w):
            continue
        dims, tau = tau_homological(g, w)
        assert same_string(ar_translate(g, w), tau), str(w)
