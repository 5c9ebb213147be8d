"""String and band combinatorics over a gentle pair.

A direct letter (a, +1) walks from source(a) to target(a); an inverse letter
(a, -1) walks backwards. Words are immutable tuples of letters; a trivial
string remembers its vertex.

Trivial strings need a convention for which arrows at the vertex belong to
the "start" end and which to the "end" end. The half-edges at v are split
into two classes: an incoming arrow a and an outgoing arrow b are on the
same side exactly when ab is a relation. The class holding the smallest
half-edge is the start side.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .quiver import GentlePair

MAX_WORD = 200


class WordError(ValueError):
    pass


class ZeroResult(Exception):
    """A side operation produced the zero module (an empty arc)."""


@dataclass(frozen=True, order=True)
class Letter:
    arrow: str
    sign: int = 1

    def inverse(self) -> Letter:
        return Letter(self.arrow, -self.sign)

    @property
    def direct(self) -> bool:
        return self.sign > 0

    def __str__(self):
        return self.arrow if self.sign > 0 else f"{self.arrow}^-1"


@dataclass(frozen=True)
class StringWord:
    letters: tuple[Letter, ...] = ()
    vertex: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(self.letters))
        if not self.letters and self.vertex is None:
            raise WordError("a trivial string needs a vertex")
        if self.letters:
            object.__setattr__(self, "vertex", None)

    @classmethod
    def trivial(cls, v: int) -> StringWord:
        return cls((), v)

    @property
    def is_trivial(self) -> bool:
        return not self.letters

    def __len__(self) -> int:
        return len(self.letters)

    def inverse(self) -> StringWord:
        if self.is_trivial:
            return self
        return StringWord(tuple(x.inverse() for x in reversed(self.letters)))

    def signs(self) -> tuple[int, ...]:
        return tuple(x.sign for x in self.letters)

    def __str__(self):
        if self.is_trivial:
            return f"e{self.vertex}"
        return " ".join(str(x) for x in self.letters)


@dataclass(frozen=True)
class BandWord:
    letters: tuple[Letter, ...]

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(self.letters))

    def __len__(self) -> int:
        return len(self.letters)

    def inverse(self) -> BandWord:
        return BandWord(tuple(x.inverse() for x in reversed(self.letters)))

    def rotate(self, k: int) -> BandWord:
        k %= len(self.letters)
        return BandWord(self.letters[k:] + self.letters[:k])

    def signs(self) -> tuple[int, ...]:
        return tuple(x.sign for x in self.letters)

    def __str__(self):
        return "band( " + " ".join(str(x) for x in self.letters) + " )"


def same_string(w1: StringWord, w2: StringWord) -> bool:
    """Equality up to w ~ w^-1."""
    return w1 == w2 or w1 == w2.inverse()


def canonical_string(w: StringWord) -> StringWord:
    if w.is_trivial:
        return w
    return min(w, w.inverse(), key=lambda u: u.letters)


# -- walking ---------------------------------------------------------------

def letter_start(g: GentlePair, x: Letter) -> int:
    a = g.arrow(x.arrow)
    return a.source if x.direct else a.target


def letter_end(g: GentlePair, x: Letter) -> int:
    a = g.arrow(x.arrow)
    return a.target if x.direct else a.source


def window_problem(g: GentlePair, x: Letter, y: Letter) -> str | None:
    if letter_end(g, x) != letter_start(g, y):
        return f"{x} does not end where {y} starts"
    if x.arrow == y.arrow and x.sign != y.sign:
        return f"{x} {y} is a letter followed by its inverse"
    if x.direct and y.direct and g.is_relation(x.arrow, y.arrow):
        return f"{x} {y} is a relation"
    if not x.direct and not y.direct and g.is_relation(y.arrow, x.arrow):
        return f"{x} {y} is the inverse of a relation"
    return None


def vertices(g: GentlePair, w: StringWord) -> list[int]:
    """Quiver vertex at each of the m+1 positions."""
    if w.is_trivial:
        return [w.vertex]
    return [letter_start(g, w.letters[0])] + [letter_end(g, x) for x in w.letters]


def band_vertices(g: GentlePair, b: BandWord) -> list[int]:
    """Quiver vertex at each of the m cyclic positions."""
    return [letter_start(g, x) for x in b.letters]


def start_vertex(g, w: StringWord) -> int:
    return w.vertex if w.is_trivial else letter_start(g, w.letters[0])


def end_vertex(g, w: StringWord) -> int:
    return w.vertex if w.is_trivial else letter_end(g, w.letters[-1])


def validate_string(g: GentlePair, w: StringWord) -> str | None:
    """None when w is a string, otherwise a description of the violation."""
    if w.is_trivial:
        if not 1 <= w.vertex <= g.n:
            return f"vertex {w.vertex} outside 1..{g.n}"
        return None
    for x in w.letters:
        try:
            g.arrow(x.arrow)
        except KeyError:
            return f"unknown arrow {x.arrow}"
    for x, y in zip(w.letters, w.letters[1:]):
        p = window_problem(g, x, y)
        if p:
            return p
    return None


def _is_power(letters) -> bool:
    m = len(letters)
    for d in range(1, m):
        if m % d == 0 and letters == letters[d:] + letters[:d]:
            return True
    return False


def validate_band(g: GentlePair, b: BandWord) -> str | None:
    if len(b) < 2:
        return "a band needs at least two letters"
    for x in b.letters:
        try:
            g.arrow(x.arrow)
        except KeyError:
            return f"unknown arrow {x.arrow}"
    m = len(b)
    for i in range(m):
        p = window_problem(g, b.letters[i], b.letters[(i + 1) % m])
        if p:
            return p
    if all(x.direct for x in b.letters) or not any(x.direct for x in b.letters):
        return "a band needs both direct and inverse letters"
    if _is_power(b.letters):
        return "word is a proper power"
    return None


def check_string(g, w):
    p = validate_string(g, w)
    if p:
        raise WordError(p)
    return w


def check_band(g, b):
    p = validate_band(g, b)
    if p:
        raise WordError(p)
    return b


# -- extension options -----------------------------------------------------

def trivial_sides(g: GentlePair, v: int):
    """(start, end) half-edge sets at v; half-edges are ('in'|'out', arrow id)."""
    halves = [("in", a.id) for a in g.quiver.in_arrows(v)]
    halves += [("out", a.id) for a in g.quiver.out_arrows(v)]
    if not halves:
        return frozenset(), frozenset()
    parent = {h: h for h in halves}

    def find(h):
        while parent[h] != h:
            h = parent[h]
        return h

    for (k1, a) in halves:
        for (k2, b) in halves:
            if k1 == "in" and k2 == "out" and g.is_relation(a, b):
                parent[find(("in", a))] = find(("out", b))
    classes: dict = {}
    for h in halves:
        classes.setdefault(find(h), set()).add(h)
    groups = sorted((sorted(c) for c in classes.values()), key=lambda c: c[0])
    if len(groups) > 2:
        raise WordError(f"vertex {v} has more than two sides; the pair is not gentle")
    start = frozenset(groups[0])
    end = frozenset(groups[1]) if len(groups) > 1 else frozenset()
    return start, end


def prepend_options(g: GentlePair, w: StringWord) -> list[Letter]:
    """Letters x such that x w is a string."""
    if w.is_trivial:
        side, _ = trivial_sides(g, w.vertex)
        return sorted(Letter(a, 1) if k == "in" else Letter(a, -1) for k, a in side)
    first = w.letters[0]
    v = letter_start(g, first)
    opts = [Letter(a.id, 1) for a in g.quiver.in_arrows(v)]
    opts += [Letter(a.id, -1) for a in g.quiver.out_arrows(v)]
    return sorted(x for x in opts if window_problem(g, x, first) is None)


def append_options(g: GentlePair, w: StringWord) -> list[Letter]:
    """Letters y such that w y is a string."""
    if w.is_trivial:
        _, side = trivial_sides(g, w.vertex)
        return sorted(Letter(a, 1) if k == "out" else Letter(a, -1) for k, a in side)
    last = w.letters[-1]
    v = letter_end(g, last)
    opts = [Letter(a.id, 1) for a in g.quiver.out_arrows(v)]
    opts += [Letter(a.id, -1) for a in g.quiver.in_arrows(v)]
    return sorted(y for y in opts if window_problem(g, last, y) is None)


def starts_on_peak(g, w) -> bool:
    return not any(x.direct for x in prepend_options(g, w))


def starts_on_deep(g, w) -> bool:
    return not any(not x.direct for x in prepend_options(g, w))


def ends_on_peak(g, w) -> bool:
    return not any(not y.direct for y in append_options(g, w))


def ends_on_deep(g, w) -> bool:
    return not any(y.direct for y in append_options(g, w))


# -- positions -------------------------------------------------------------

@dataclass(frozen=True)
class PositionClassification:
    vertices: tuple[int, ...]
    peaks: frozenset
    deeps: frozenset
    strict: frozenset
    starts_on_peak: bool | None = None
    starts_on_deep: bool | None = None
    ends_on_peak: bool | None = None
    ends_on_deep: bool | None = None

    def label(self, p: int) -> str:
        if p in self.peaks and p in self.deeps:
            return "peak+deep"
        if p in self.peaks:
            return "peak"
        if p in self.deeps:
            return "deep"
        return "slope"

    @property
    def strict_peaks(self) -> frozenset:
        return self.peaks & self.strict


def classify_positions(g: GentlePair, w: StringWord | BandWord) -> PositionClassification:
    """Positions are 1-based. Interior positions are peaks (sources) when the
    letter before is inverse and the letter after is direct, and deeps
    (sinks) in the opposite case."""
    if isinstance(w, BandWord):
        m = len(w)
        peaks, deeps = set(), set()
        for p in range(1, m + 1):
            before, after = w.letters[p - 2], w.letters[p - 1]
            if not before.direct and after.direct:
                peaks.add(p)
            elif before.direct and not after.direct:
                deeps.add(p)
        return PositionClassification(
            tuple(band_vertices(g, w)), frozenset(peaks), frozenset(deeps),
            frozenset(range(1, m + 1)))
    vs = vertices(g, w)
    m = len(w)
    peaks, deeps = set(), set()
    if w.is_trivial:
        peaks.add(1)
        deeps.add(1)
    else:
        (peaks if w.letters[0].direct else deeps).add(1)
        (deeps if w.letters[-1].direct else peaks).add(m + 1)
        for p in range(2, m + 1):
            before, after = w.letters[p - 2], w.letters[p - 1]
            if not before.direct and after.direct:
                peaks.add(p)
            elif before.direct and not after.direct:
                deeps.add(p)
    return PositionClassification(
        tuple(vs), frozenset(peaks), frozenset(deeps), frozenset(range(2, m + 1)),
        starts_on_peak(g, w), starts_on_deep(g, w), ends_on_peak(g, w), ends_on_deep(g, w))


# -- hooks and cohooks -----------------------------------------------------

def _extend_start(g, w: StringWord, want_direct: bool) -> StringWord:
    """Greedily prepend letters of one sign until no more fit."""
    for _ in range(MAX_WORD):
        opts = [x for x in prepend_options(g, w) if x.direct == want_direct]
        if not opts:
            return w
        w = StringWord((opts[0],) + w.letters)
    raise WordError("maximal completion does not terminate; the algebra is infinite-dimensional")


def _extend_end(g, w: StringWord, want_direct: bool) -> StringWord:
    for _ in range(MAX_WORD):
        opts = [y for y in append_options(g, w) if y.direct == want_direct]
        if not opts:
            return w
        w = StringWord(w.letters + (opts[0],))
    raise WordError("maximal completion does not terminate; the algebra is infinite-dimensional")


def add_hook(g, w: StringWord, side: str) -> StringWord:
    if side == "start":
        opts = [x for x in prepend_options(g, w) if x.direct]
        if not opts:
            raise WordError("w starts on a peak; no hook can be added at the start")
        return _extend_start(g, StringWord((opts[0],) + w.letters), False)
    opts = [y for y in append_options(g, w) if not y.direct]
    if not opts:
        raise WordError("w ends on a peak; no hook can be added at the end")
    return _extend_end(g, StringWord(w.letters + (opts[0],)), True)


def add_cohook(g, w: StringWord, side: str) -> StringWord:
    if side == "start":
        opts = [x for x in prepend_options(g, w) if not x.direct]
        if not opts:
            raise WordError("w starts on a deep; no cohook can be added at the start")
        return _extend_start(g, StringWord((opts[0],) + w.letters), True)
    opts = [y for y in append_options(g, w) if y.direct]
    if not opts:
        raise WordError("w ends on a deep; no cohook can be added at the end")
    return _extend_end(g, StringWord(w.letters + (opts[0],)), False)


def _cut_start(g, w: StringWord, through_direct: bool) -> StringWord:
    """Drop letters up to and including the first letter of the given sign."""
    idx = [i for i, x in enumerate(w.letters) if x.direct == through_direct]
    if not idx:
        raise ZeroResult("no letter of the required sign")
    j = idx[0]
    if j == len(w) - 1:
        return StringWord.trivial(letter_end(g, w.letters[-1]))
    return StringWord(w.letters[j + 1:])


def _cut_end(g, w: StringWord, through_direct: bool) -> StringWord:
    idx = [i for i, x in enumerate(w.letters) if x.direct == through_direct]
    if not idx:
        raise ZeroResult("no letter of the required sign")
    j = idx[-1]
    if j == 0:
        return StringWord.trivial(letter_start(g, w.letters[0]))
    return StringWord(w.letters[:j])


def remove_hook(g, w: StringWord, side: str) -> StringWord:
    # a hook at the start ends in its first direct letter; at the end it
    # begins with the last inverse letter
    return _cut_start(g, w, True) if side == "start" else _cut_end(g, w, False)


def remove_cohook(g, w: StringWord, side: str) -> StringWord:
    return _cut_start(g, w, False) if side == "start" else _cut_end(g, w, True)


_HOOK_OPS = {
    "add_hook": add_hook,
    "add_cohook": add_cohook,
    "remove_hook": remove_hook,
    "remove_cohook": remove_cohook,
}


def hook_op(g, w: StringWord, side: str, kind: str) -> StringWord | None:
    """Returns None for the zero result of a removal."""
    if side not in ("start", "end"):
        raise ValueError(f"side must be start or end, not {side!r}")
    try:
        return _HOOK_OPS[kind](g, w, side)
    except ZeroResult:
        return None


# -- projectives and injectives ---------------------------------------------

def _maximal_path(g, first, forward: bool) -> list[str]:
    path = [first.id]
    for _ in range(MAX_WORD):
        if forward:
            last = g.arrow(path[-1])
            nxt = [b for b in g.quiver.out_arrows(last.target) if not g.is_relation(last.id, b.id)]
        else:
            last = g.arrow(path[0])
            nxt = [a for a in g.quiver.in_arrows(last.source) if not g.is_relation(a.id, last.id)]
        if not nxt:
            return path
        if forward:
            path.append(nxt[0].id)
        else:
            path.insert(0, nxt[0].id)
    raise WordError("maximal path does not terminate; the algebra is infinite-dimensional")


def projective_string(g: GentlePair, v: int) -> StringWord:
    paths = [_maximal_path(g, a, True) for a in sorted(g.quiver.out_arrows(v), key=lambda a: a.id)]
    if not paths:
        return StringWord.trivial(v)
    q = [Letter(a, 1) for a in paths[-1]]
    p = [Letter(a, -1) for a in reversed(paths[0])] if len(paths) == 2 else []
    return StringWord(tuple(p + q))


def injective_string(g: GentlePair, v: int) -> StringWord:
    paths = [_maximal_path(g, a, False) for a in sorted(g.quiver.in_arrows(v), key=lambda a: a.id)]
    if not paths:
        return StringWord.trivial(v)
    p = [Letter(a, 1) for a in paths[0]]
    q = [Letter(a, -1) for a in reversed(paths[1])] if len(paths) == 2 else []
    return StringWord(tuple(p + q))


def is_projective(g, w: StringWord) -> bool:
    return any(same_string(w, projective_string(g, v)) for v in range(1, g.n + 1))


def is_injective(g, w: StringWord) -> bool:
    return any(same_string(w, injective_string(g, v)) for v in range(1, g.n + 1))


# -- AR translation and rotation ---------------------------------------------

def ar_translate(g: GentlePair, w: StringWord) -> StringWord:
    if is_projective(g, w):
        raise WordError(f"M({w}) is projective; its translate is zero")
    deep_start, deep_end = starts_on_deep(g, w), ends_on_deep(g, w)
    # additions first, so a removal never has to eat into an empty side
    cur = w
    if not deep_start:
        cur = add_cohook(g, cur, "start")
    if not deep_end:
        cur = add_cohook(g, cur, "end")
    try:
        if deep_start:
            cur = remove_hook(g, cur, "start")
        if deep_end:
            cur = remove_hook(g, cur, "end")
    except ZeroResult:
        raise WordError(f"translate of {w} collapsed to zero") from None
    return check_string(g, cur)


def ar_translate_inverse(g: GentlePair, w: StringWord) -> StringWord:
    if is_injective(g, w):
        raise WordError(f"M({w}) is injective; its inverse translate is zero")
    peak_start, peak_end = starts_on_peak(g, w), ends_on_peak(g, w)
    cur = w
    if not peak_start:
        cur = add_hook(g, cur, "start")
    if not peak_end:
        cur = add_hook(g, cur, "end")
    try:
        if peak_start:
            cur = remove_cohook(g, cur, "start")
        if peak_end:
            cur = remove_cohook(g, cur, "end")
    except ZeroResult:
        raise WordError(f"inverse translate of {w} collapsed to zero") from None
    return check_string(g, cur)


def rotate(g: GentlePair, w: StringWord, side: str, direction: str) -> StringWord:
    """Rotate one endpoint of the arc of w. Raises ZeroResult when the
    rotated curve is a boundary segment."""
    at_start = side == "start"
    if direction == "plus":
        blocked = starts_on_peak(g, w) if at_start else ends_on_peak(g, w)
        return remove_cohook(g, w, side) if blocked else add_hook(g, w, side)
    if direction == "minus":
        blocked = starts_on_deep(g, w) if at_start else ends_on_deep(g, w)
        return remove_hook(g, w, side) if blocked else add_cohook(g, w, side)
    raise ValueError(f"direction must be plus or minus, not {direction!r}")


def irreducible_targets(g: GentlePair, w: StringWord) -> set[StringWord]:
    """Targets of the irreducible maps out of M(w), up to inversion."""
    out = set()
    if not starts_on_peak(g, w):
        out.add(add_hook(g, w, "start"))
    elif w.is_trivial or not all(x.direct for x in w.letters):
        try:
            out.add(remove_cohook(g, w, "start"))
        except ZeroResult:
            pass
    if not ends_on_peak(g, w):
        out.add(add_hook(g, w, "end"))
    elif w.is_trivial or any(x.direct for x in w.letters):
        try:
            out.add(remove_cohook(g, w, "end"))
        except ZeroResult:
            pass
    return {canonical_string(u) for u in out}


# -- enumeration -----------------------------------------------------------

def all_strings(g: GentlePair, max_len: int) -> list[StringWord]:
    """Every string of length <= max_len, one representative per w ~ w^-1."""
    seen = {}
    frontier = [StringWord.trivial(v) for v in range(1, g.n + 1)]
    for w in frontier:
        seen[canonical_string(w)] = None
    # grow non-trivial words letter by letter from every arrow
    layer = []
    for a in g.quiver.arrows:
        for s in (1, -1):
            layer.append(StringWord((Letter(a.id, s),)))
    length = 1
    while layer and length <= max_len:
        nxt = []
        for w in layer:
            seen.setdefault(canonical_string(w), None)
            if length < max_len:
                for y in append_options(g, w):
                    nxt.append(StringWord(w.letters + (y,)))
        layer = nxt
        length += 1
    return sorted(seen, key=lambda u: (len(u), u.vertex or 0, u.letters))


def band_canonical_form(b: BandWord) -> BandWord:
    def key(letters):
        return tuple((x.arrow, -x.sign) for x in letters)

    cands = [b.rotate(k) for k in range(len(b))]
    inv = b.inverse()
    cands += [inv.rotate(k) for k in range(len(b))]
    return min(cands, key=lambda c: key(c.letters))


def all_bands(g: GentlePair, max_len: int) -> list[BandWord]:
    found = set()
    for w in all_strings_raw(g, max_len):
        if len(w) < 2:
            continue
        b = BandWord(w.letters)
        if validate_band(g, b) is None:
            found.add(band_canonical_form(b))
    return sorted(found, key=lambda b: (len(b), b.letters))


def all_strings_raw(g: GentlePair, max_len: int):
    """Every non-trivial string (both orientations) of length <= max_len."""
    layer = [StringWord((Letter(a.id, s),)) for a in g.quiver.arrows for s in (1, -1)]
    length = 1
    while layer and length <= max_len:
        yield from layer
        if length == max_len:
            break
        layer = [StringWord(w.letters + (y,)) for w in layer for y in append_options(g, w)]
        length += 1


# -- parsing ---------------------------------------------------------------

_TRIVIAL = re.compile(r"^e(\d+)$")


def parse_letters(text: str, names=None) -> tuple[Letter, ...]:
    out = []
    for tok in text.split():
        sign = 1
        if tok.endswith("^-1"):
            tok, sign = tok[:-3], -1
        if names is not None:
            tok = names.get(tok, tok)
        out.append(Letter(tok, sign))
    return tuple(out)


def parse_word(text: str, names=None) -> StringWord | BandWord:
    """Parse the CLI word grammar; `names` maps aliases to arrow ids."""
    s = text.strip()
    m = re.fullmatch(r"band\s*\((.*)\)", s, flags=re.S)
    if m:
        return BandWord(parse_letters(m.group(1), names))
    t = _TRIVIAL.match(s)
    if t and (names is None or s not in names):
        return StringWord.trivial(int(t.group(1)))
    letters = parse_letters(s, names)
    if not letters:
        raise WordError("empty word")
    return StringWord(letters)
