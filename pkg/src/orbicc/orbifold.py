"""Triangulations of unpunctured orbifolds with order-3 orbifold points,
given combinatorially as counterclockwise edge triples."""

from __future__ import annotations

from dataclasses import dataclass, field

from .quiver import Arrow, GeneralizedClusterQuiver, GentlePair, Quiver
from .strings import Letter, StringWord, BandWord, WordError


class ParseError(ValueError):
    def __init__(self, line: int, msg: str):
        super().__init__(f"line {line}: {msg}")
        self.line = line


class ValidationError(ValueError):
    def __init__(self, problems):
        super().__init__("; ".join(problems))
        self.problems = list(problems)


@dataclass(frozen=True)
class TriangulationData:
    arcs: tuple[str, ...]
    pending: frozenset
    boundary: tuple[str, ...]
    triangles: tuple[tuple[str, str, str], ...]
    name: str = ""
    aliases: dict = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "arcs", tuple(self.arcs))
        object.__setattr__(self, "pending", frozenset(self.pending))
        object.__setattr__(self, "boundary", tuple(self.boundary))
        object.__setattr__(self, "triangles", tuple(tuple(t) for t in self.triangles))

    @property
    def n(self) -> int:
        return len(self.arcs)

    def vertex(self, arc: str) -> int:
        return self.arcs.index(arc) + 1

    def arc(self, v: int) -> str:
        return self.arcs[v - 1]

    def is_arc(self, e: str) -> bool:
        return e in self.arcs

    def faces(self) -> list[tuple[str, str, str]]:
        """Triangles followed by one monogon (p, p, p) per pending arc."""
        return list(self.triangles) + [(p, p, p) for p in self.arcs if p in self.pending]

    def monogon(self, arc: str) -> int:
        pend = [p for p in self.arcs if p in self.pending]
        return len(self.triangles) + pend.index(arc)

    def arc_faces(self, arc: str) -> list[int]:
        out = [i for i, t in enumerate(self.triangles) if arc in t]
        if arc in self.pending:
            out.append(self.monogon(arc))
        return out


def validate(t: TriangulationData):
    """Returns (problems, triangle types); types count pending sides."""
    problems = []
    slots: dict[str, int] = {}
    for tri in t.triangles:
        for e in tri:
            slots[e] = slots.get(e, 0) + 1
    if len(set(t.arcs)) != len(t.arcs):
        problems.append("duplicate arc id")
    if set(t.arcs) & set(t.boundary):
        problems.append(f"ids used as both arc and boundary: {sorted(set(t.arcs) & set(t.boundary))}")
    for a in t.arcs:
        want = 1 if a in t.pending else 2
        if slots.get(a, 0) != want:
            kind = "pending" if a in t.pending else "standard"
            problems.append(f"{kind} arc {a} occurs in {slots.get(a, 0)} triangle slots, expected {want}")
    for b in t.boundary:
        if slots.get(b, 0) != 1:
            problems.append(f"boundary edge {b} occurs in {slots.get(b, 0)} triangle slots, expected 1")
    known = set(t.arcs) | set(t.boundary)
    for e in sorted(set(slots) - known):
        problems.append(f"edge {e} is neither an arc nor a boundary edge")
    types = []
    for i, tri in enumerate(t.triangles):
        if len(set(tri)) != 3:
            problems.append(f"triangle {i + 1} repeats an edge id")
        k = sum(e in t.pending for e in tri)
        if k == 3:
            problems.append(f"triangle {i + 1} has three pending edges")
        types.append(k)
    return problems, tuple(types)


def require_valid(t):
    problems, _ = validate(t)
    if problems:
        raise ValidationError(problems)


def _arrow_table(t: TriangulationData):
    """List of (arrow, face index) with generated names, before aliasing."""
    counts: dict = {}
    out = []
    for fi, tri in enumerate(t.triangles):
        for k in range(3):
            a, b = tri[k], tri[(k + 1) % 3]
            if t.is_arc(a) and t.is_arc(b):
                s, e = t.vertex(a), t.vertex(b)
                c = counts.get((s, e), 0)
                counts[(s, e)] = c + 1
                out.append((Arrow(f"{s}>{e}:{c}", s, e), fi))
    for p in t.arcs:
        if p in t.pending:
            v = t.vertex(p)
            out.append((Arrow(f"loop:{v}", v, v), t.monogon(p)))
    return out


def _rename(t: TriangulationData):
    back = {}
    for alias, aid in t.aliases.items():
        back[aid] = alias
    return back


def arrow_faces(t: TriangulationData) -> dict[str, int]:
    back = _rename(t)
    return {back.get(a.id, a.id): fi for a, fi in _arrow_table(t)}


def build_gentle_pair(t: TriangulationData) -> GentlePair:
    require_valid(t)
    back = _rename(t)
    table = [(Arrow(back.get(a.id, a.id), a.source, a.target), fi) for a, fi in _arrow_table(t)]
    rels = set()
    for a, fa in table:
        for b, fb in table:
            if fa == fb and a.target == b.source and (a.id != b.id or a.is_loop):
                rels.add((a.id, b.id))
    return GentlePair(Quiver(t.n, tuple(a for a, _ in table)), frozenset(rels))


def build_generalized_quiver(t: TriangulationData) -> GeneralizedClusterQuiver:
    g = build_gentle_pair(t)
    arrows = tuple(a for a in g.quiver.arrows if not a.is_loop)
    return GeneralizedClusterQuiver(Quiver(t.n, arrows), frozenset(t.vertex(p) for p in t.pending))


def _step(t: TriangulationData, g: GentlePair, faces, a: str, b: str, flag) -> Letter:
    va, vb = t.vertex(a), t.vertex(b)
    if a == b:
        if a not in t.pending:
            raise WordError(f"arc {a} repeated but it is not pending")
        if flag not in ("left", "right"):
            raise WordError(f"loop step at pending arc {a} needs a side flag left or right")
        loop = [x.id for x in g.quiver.arrows if x.source == va and x.target == va][0]
        # the marked point to the right of the curve gives a direct loop
        return Letter(loop, 1 if flag == "right" else -1)
    cands = []
    for x in g.quiver.arrows:
        if x.source == va and x.target == vb:
            cands.append(Letter(x.id, 1))
        elif x.source == vb and x.target == va:
            cands.append(Letter(x.id, -1))
    if flag is not None and flag not in ("left", "right"):
        cands = [c for c in cands if c.arrow == flag]
    if not cands:
        raise WordError(f"arcs {a} and {b} share no triangle")
    if len(cands) > 1:
        raise WordError(f"arcs {a} and {b} share several triangles; name the arrow explicitly")
    return cands[0]


def _normalize(crossings):
    out = []
    for c in crossings:
        if isinstance(c, (tuple, list)):
            out.append((str(c[0]), c[1] if len(c) > 1 else None))
        else:
            out.append((str(c), None))
    return out


def string_from_crossings(t: TriangulationData, crossings) -> StringWord:
    """Crossings are arc ids, or (arc id, flag) pairs. The flag of a
    repeated pending arc is 'left' or 'right' (side of the curve on which the
    monogon's marked point lies); for double adjacency it names the arrow."""
    g = build_gentle_pair(t)
    cr = _normalize(crossings)
    if not cr:
        raise WordError("no crossings")
    for a, _ in cr:
        if not t.is_arc(a):
            raise WordError(f"unknown arc {a}")
    if len(cr) == 1:
        return StringWord.trivial(t.vertex(cr[0][0]))
    faces = arrow_faces(t)
    letters = tuple(_step(t, g, faces, cr[i][0], cr[i + 1][0], cr[i + 1][1]) for i in range(len(cr) - 1))
    return StringWord(letters)


def band_from_crossings(t: TriangulationData, crossings) -> BandWord:
    """Closed curve: the last crossing connects back to the first."""
    g = build_gentle_pair(t)
    cr = _normalize(crossings)
    faces = arrow_faces(t)
    m = len(cr)
    return BandWord(tuple(_step(t, g, faces, cr[i][0], cr[(i + 1) % m][0], cr[(i + 1) % m][1])
                          for i in range(m)))


# -- file format -----------------------------------------------------------

def parse_orbifold_text(text: str) -> TriangulationData:
    name = ""
    arcs, pending, boundary, triangles, aliases = [], set(), [], [], {}
    seen_header = False
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        kw = tok[0]
        if kw == "orbifold":
            if len(tok) != 2 or seen_header:
                raise ParseError(no, "expected a single 'orbifold <name>' header")
            name, seen_header = tok[1], True
        elif kw == "arc":
            if len(tok) == 2:
                arcs.append(tok[1])
            elif len(tok) == 3 and tok[2] == "pending":
                arcs.append(tok[1])
                pending.add(tok[1])
            else:
                raise ParseError(no, "expected 'arc <id> [pending]'")
        elif kw == "boundary":
            if len(tok) != 2:
                raise ParseError(no, "expected 'boundary <id>'")
            boundary.append(tok[1])
        elif kw == "triangle":
            if len(tok) != 4:
                raise ParseError(no, "expected 'triangle <e1> <e2> <e3>'")
            triangles.append(tuple(tok[1:]))
        elif kw == "alias":
            if len(tok) != 3:
                raise ParseError(no, "expected 'alias <name> <arrow-id>'")
            aliases[tok[1]] = tok[2]
        else:
            raise ParseError(no, f"unknown keyword {kw!r}")
        for x in tok[1:]:
            if not all(ch.isalnum() or ch in "_:>" for ch in x):
                raise ParseError(no, f"bad token {x!r}")
    if not seen_header:
        raise ParseError(1, "missing 'orbifold <name>' header")
    t = TriangulationData(tuple(arcs), frozenset(pending), tuple(boundary), tuple(triangles), name, aliases)
    known = {a.id for a, _ in _arrow_table(t)} if not validate(t)[0] else None
    if known is not None:
        for alias, aid in aliases.items():
            if aid not in known:
                raise ParseError(0, f"alias {alias} names unknown arrow {aid}")
    return t


def read_orbifold_file(path) -> TriangulationData:
    with open(path, encoding="utf-8") as fh:
        return parse_orbifold_text(fh.read())


def name_map(t: TriangulationData) -> list[tuple[str, str, int, int]]:
    """(display name, generated id, source, target) for each arrow."""
    back = _rename(t)
    return [(back.get(a.id, a.id), a.id, a.source, a.target) for a, _ in _arrow_table(t)]
