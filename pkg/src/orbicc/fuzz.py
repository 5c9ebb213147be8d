"""Seeded property fuzzing over the bundled triangulations.

All randomness comes from one integer seed fed to Python's random.Random
(Mersenne Twister), so a run is reproducible from (seed, count, max_len).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from importlib import resources

from . import ccmap
from .laurent import ExponentVector
from .orbifold import build_gentle_pair, parse_orbifold_text
from .repmod import band_representation, brute_force_submodules, euler_char_table, string_representation, tau_homological
from .snakegraph import (
    brute_force_matchings,
    build_band_graph,
    build_snake_graph,
    enumerate_matchings,
    min_max_matchings,
    twist_parity_violations,
)
from .strings import (
    BandWord,
    StringWord,
    all_bands,
    append_options,
    ar_translate,
    is_projective,
    same_string,
)

PAIRS = ("example1", "example2", "example44")


def example_path(name: str) -> str:
    return str(resources.files("orbicc.data").joinpath(f"{name}.orb"))


def load_example(name: str):
    text = resources.files("orbicc.data").joinpath(f"{name}.orb").read_text(encoding="utf-8")
    return parse_orbifold_text(text)


def random_string(rng: random.Random, g, max_len: int) -> StringWord:
    w = StringWord.trivial(rng.randint(1, g.n))
    target = rng.randint(0, max_len)
    while len(w) < target:
        opts = append_options(g, w)
        if not opts:
            break
        w = StringWord(w.letters + (rng.choice(opts),))
    return w


@dataclass
class CaseResult:
    pair: str
    word: object
    failures: list = field(default_factory=list)

    def repro(self) -> str:
        flag = "--band" if isinstance(self.word, BandWord) else "--string"
        text = str(self.word)
        if isinstance(self.word, BandWord):
            text = " ".join(str(x) for x in self.word.letters)
        return f'orbicc verify {example_path(self.pair)} {flag} "{text}"'


def check_case(t, g, w) -> list[str]:
    """Run every oracle comparison on one word; returns failed check names."""
    fails = []
    band = isinstance(w, BandWord)
    graph = build_band_graph(g, w) if band else build_snake_graph(g, w)
    ms = enumerate_matchings(graph)
    if len(ms) != len(brute_force_matchings(graph)):
        fails.append("matching-count")
    table = euler_char_table(g, w)
    lams = (1, 2) if band else (1,)
    for lam in lams:
        rep = band_representation(g, w, lam) if band else string_representation(g, w)
        if brute_force_submodules(rep) != table:
            fails.append(f"euler-table(lam={lam})")
    lhs = ccmap.cc_prin(g, w)
    if lhs != ccmap.snake_expansion(g, w, t) or lhs != ccmap.snake_expansion(g, w):
        fails.append("cc-vs-expansion")
    if ccmap.weight_lemma_failures(g, w, t):
        fails.append("weight-lemma")
    if not band and not is_projective(g, w):
        _, tau = tau_homological(g, w)
        if tau is None or not same_string(ar_translate(g, w), tau):
            fails.append("ar-translate")
    lo, hi = min_max_matchings(graph)
    heights = [m.height for m in ms]
    if heights[0] != lo.height or heights[-1] != hi.height or set(lo.height) != {0} or set(hi.height) != {1}:
        fails.append("min-max")
    if twist_parity_violations(graph):
        fails.append("twist-parity")
    gv = ccmap.g_vector(g, w).g
    zero = lhs.y_degree_part((0,) * g.n)
    if zero.terms != {ExponentVector(gv): 1}:
        fails.append("y-degree-0")
    if any(c <= 0 for c in lhs.specialize_y().terms.values()):
        fails.append("positivity")
    return fails


def run_fuzz(count: int, max_len: int, seed: int, log=None) -> list[CaseResult]:
    rng = random.Random(seed)
    ctx = {}
    for name in PAIRS:
        t = load_example(name)
        g = build_gentle_pair(t)
        ctx[name] = (t, g, all_bands(g, max_len))
    results = []
    for k in range(count):
        name = PAIRS[k % len(PAIRS)]
        t, g, bands = ctx[name]
        if bands and rng.random() < 0.3:
            w = rng.choice(bands)
            if rng.random() < 0.5:
                w = w.inverse()
            w = w.rotate(rng.randrange(len(w)))
        else:
            w = random_string(rng, g, max_len)
        res = CaseResult(name, w, check_case(t, g, w))
        if log is not None:
            log(res)
        results.append(res)
    return results
