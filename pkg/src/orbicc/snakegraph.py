"""Snake graphs and band graphs, their matching lattices, and edge labels.

Tile i (1-based) has sides N, E, S, W. Tile i+1 is glued on the north or
east side of tile i. Edge ids are (tile, side) with glued sides named from
the lower tile, so (i, "N") and (i + 1, "S") are the same edge when tile
i+1 sits north of tile i.

Heights use the convention that a set S of twisted tiles is an order ideal
(a down-set) of the fence poset. Covers are stored as (lower, upper); an
implication "i in S forces j in S" is the cover (j, i).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .strings import BandWord, StringWord, band_vertices, check_band, check_string, vertices
from .repmod import closed_sets

SIDES = ("N", "E", "S", "W")


@dataclass(frozen=True)
class Tile:
    index: int
    label: int
    rel: int


@dataclass(frozen=True)
class SnakeGraph:
    tiles: tuple[Tile, ...]
    glue_dirs: tuple[str, ...]

    def __post_init__(self):
        if len(self.glue_dirs) != len(self.tiles) - 1:
            raise ValueError("need one glue direction between consecutive tiles")
        for k, t in enumerate(self.tiles):
            if t.index != k + 1 or t.rel != (1 if k % 2 == 0 else -1):
                raise ValueError("tiles must be numbered 1.. with alternating rel")

    @classmethod
    def from_signs(cls, signs, labels=None) -> SnakeGraph:
        d = len(signs) + 1
        labels = list(labels) if labels is not None else list(range(1, d + 1))
        dirs = []
        for i, e in enumerate(signs):
            if i == 0:
                dirs.append("N" if e > 0 else "E")
            elif signs[i - 1] == e:
                dirs.append("E" if dirs[-1] == "N" else "N")
            else:
                dirs.append(dirs[-1])
        tiles = tuple(Tile(k + 1, labels[k], 1 if k % 2 == 0 else -1) for k in range(d))
        return cls(tiles, tuple(dirs))

    @property
    def size(self) -> int:
        return len(self.tiles)

    @property
    def labels(self) -> tuple[int, ...]:
        return tuple(t.label for t in self.tiles)

    def coords(self) -> list[tuple[int, int]]:
        """Lower-left corner of each tile; computed, never stored."""
        out = [(0, 0)]
        for d in self.glue_dirs:
            x, y = out[-1]
            out.append((x, y + 1) if d == "N" else (x + 1, y))
        return out

    def edge(self, tile: int, side: str) -> tuple[int, str]:
        """Canonical id of a tile side."""
        if side == "S" and tile > 1 and self.glue_dirs[tile - 2] == "N":
            return (tile - 1, "N")
        if side == "W" and tile > 1 and self.glue_dirs[tile - 2] == "E":
            return (tile - 1, "E")
        return (tile, side)

    def edges(self) -> list[tuple[int, str]]:
        return sorted({self.edge(i, s) for i in range(1, self.size + 1) for s in SIDES})

    def segment(self, e) -> tuple[tuple[int, int], tuple[int, int]]:
        i, side = e
        x, y = self.coords()[i - 1]
        return {
            "N": ((x, y + 1), (x + 1, y + 1)),
            "E": ((x + 1, y), (x + 1, y + 1)),
            "S": ((x, y), (x + 1, y)),
            "W": ((x, y), (x, y + 1)),
        }[side]

    def glue_implications(self) -> list[tuple[int, int]]:
        """Pairs (i, j): twisting tile i forces twisting tile j."""
        out = []
        forward = None
        for i, d in enumerate(self.glue_dirs, start=1):
            if i == 1:
                forward = d == "N"
            elif d == self.glue_dirs[i - 2]:
                forward = not forward  # straight piece
            out.append((i, i + 1) if forward else (i + 1, i))
        return out

    @cached_property
    def minimal_edges(self) -> frozenset:
        return frozenset(_boundary_matching(self, self.edge(1, "S")))

    @cached_property
    def maximal_edges(self) -> frozenset:
        other = _boundary_cycle(self)
        mins = self.minimal_edges
        return frozenset(e for e in other if e not in mins)


def _boundary_cycle(g: SnakeGraph) -> list:
    count: dict = {}
    for i in range(1, g.size + 1):
        for s in SIDES:
            e = g.edge(i, s)
            count[e] = count.get(e, 0) + 1
    return [e for e, c in count.items() if c == 1]


def _boundary_matching(g: SnakeGraph, start) -> list:
    """Alternate edges of the boundary cycle, starting with `start`."""
    bnd = _boundary_cycle(g)
    at: dict = {}
    for e in bnd:
        for p in g.segment(e):
            at.setdefault(p, []).append(e)
    out = [start]
    prev, cur = start, start
    p = g.segment(start)[1]
    take = False
    while True:
        nxt = [e for e in at[p] if e != cur][0]
        if nxt == start:
            break
        if take:
            out.append(nxt)
        take = not take
        a, b = g.segment(nxt)
        p = b if a == p else a
        prev, cur = cur, nxt
    return out


def build_snake_graph(g, w: StringWord) -> SnakeGraph:
    check_string(g, w)
    return SnakeGraph.from_signs(w.signs(), vertices(g, w))


@dataclass(frozen=True)
class BandGraph:
    snake: SnakeGraph
    glue_rule: tuple[str, str]
    closing_sign: int

    @property
    def size(self) -> int:
        return self.snake.size

    @property
    def cut_edges(self):
        return (1, self.glue_rule[0]), (self.size, self.glue_rule[1])

    @classmethod
    def from_signs(cls, signs, labels=None) -> BandGraph:
        m = len(signs)
        snake = SnakeGraph.from_signs(signs[:-1], labels)
        even = m % 2 == 0
        if signs[-1] > 0:
            rule = ("W", "E") if even else ("W", "N")
        else:
            rule = ("S", "N") if even else ("S", "E")
        return cls(snake, rule, signs[-1])

    def uses_first_cut(self) -> bool:
        """Whether the minimal matching of the cut graph holds the cut side of G_1."""
        e1, ed = self.cut_edges
        mins = self.snake.minimal_edges
        if (e1 in mins) == (ed in mins):
            raise ValueError("minimal matching holds both or neither cut edge")
        return e1 in mins

    def glue_implications(self):
        out = self.snake.glue_implications()
        d = self.size
        out.append((1, d) if self.uses_first_cut() else (d, 1))
        return out


def build_band_graph(g, b: BandWord) -> BandGraph:
    check_band(g, b)
    return BandGraph.from_signs(b.signs(), band_vertices(g, b))


@dataclass(frozen=True)
class FencePoset:
    size: int
    covers: frozenset  # (lower, upper)

    def hasse_arrows(self) -> list[tuple[int, int]]:
        return sorted(self.covers)

    def implications(self) -> list[tuple[int, int]]:
        return [(u, l) for l, u in self.covers]

    def ideals(self) -> list[frozenset]:
        return closed_sets(self.size, self.implications())


def fence_poset(g: SnakeGraph | BandGraph) -> FencePoset:
    return FencePoset(g.size, frozenset((j, i) for i, j in g.glue_implications()))


@dataclass(frozen=True)
class Matching:
    height: tuple[int, ...]
    graph: object = None

    @property
    def edges(self) -> frozenset:
        return matching_edges(self.graph, self.height)

    def __lt__(self, other):
        return self.height < other.height


def _snake(g):
    return g.snake if isinstance(g, BandGraph) else g


def _twist(graph: SnakeGraph, P: set, i: int) -> None:
    s, n, w, e = (graph.edge(i, x) for x in ("S", "N", "W", "E"))
    if s in P and n in P:
        P -= {s, n}
        P |= {w, e}
    elif w in P and e in P:
        P -= {w, e}
        P |= {s, n}
    else:
        raise ValueError(f"tile {i} is not twistable")


def twist_order(poset: FencePoset, ideal) -> list[int]:
    """A linear extension of the ideal: lower elements first."""
    below: dict[int, set] = {}
    for l, u in poset.covers:
        below.setdefault(u, set()).add(l)
    done, order = set(), []
    todo = set(ideal)
    while todo:
        ready = sorted(x for x in todo if below.get(x, set()) & set(ideal) <= done)
        if not ready:
            raise ValueError("not an order ideal")
        x = ready[0]
        order.append(x)
        done.add(x)
        todo.remove(x)
    return order


def snake_matching_edges(g, height) -> frozenset:
    """Edges of the perfect matching of the (cut) snake graph."""
    snake = _snake(g)
    P = set(snake.minimal_edges)
    ideal = [i + 1 for i, h in enumerate(height) if h]
    for i in twist_order(fence_poset(g), ideal):
        _twist(snake, P, i)
    return frozenset(P)


def matching_edges(g, height) -> frozenset:
    """Edge set; for band graphs one copy of the cut edge is dropped so that
    the glued sides count once."""
    P = set(snake_matching_edges(g, height))
    if isinstance(g, BandGraph):
        e1, ed = g.cut_edges
        if ed in P:
            P.discard(ed)
        elif e1 in P:
            P.discard(e1)
        else:
            raise ValueError("not a good matching")
    return frozenset(P)


def enumerate_matchings(g) -> list[Matching]:
    poset = fence_poset(g)
    out = []
    for ideal in poset.ideals():
        out.append(Matching(tuple(int(i in ideal) for i in range(1, g.size + 1)), g))
    return sorted(out)


def min_max_matchings(g) -> tuple[Matching, Matching]:
    d = g.size
    return Matching((0,) * d, g), Matching((1,) * d, g)


def twistable_tiles(g, edges) -> list[int]:
    snake = _snake(g)
    out = []
    for i in range(1, snake.size + 1):
        s, n, w, e = (snake.edge(i, x) for x in ("S", "N", "W", "E"))
        if {s, n} <= edges or {w, e} <= edges:
            out.append(i)
    return out


def height_to_arc_vector(g, h, n: int) -> tuple[int, ...]:
    out = [0] * n
    for t, x in zip(_snake(g).tiles, h):
        out[t.label - 1] += x
    return tuple(out)


# -- brute force oracle -----------------------------------------------------

def brute_force_matchings(g) -> list[frozenset]:
    """All perfect matchings of the cut snake graph (for band graphs only the
    good ones), by exhaustive search over edge subsets."""
    snake = _snake(g)
    segs = {e: snake.segment(e) for e in snake.edges()}
    points = sorted({p for s in segs.values() for p in s})
    at = {p: [e for e, s in segs.items() if p in s] for p in points}
    out = []

    def search(covered: set, chosen: list):
        free = [p for p in points if p not in covered]
        if not free:
            out.append(frozenset(chosen))
            return
        p = free[0]
        for e in at[p]:
            a, b = segs[e]
            if a in covered or b in covered:
                continue
            search(covered | {a, b}, chosen + [e])

    search(set(), [])
    if isinstance(g, BandGraph):
        e1, ed = g.cut_edges
        out = [P for P in out if e1 in P or ed in P]
    return out


def enclosed_tiles(g, P) -> tuple[int, ...]:
    """Per-tile indicator of the region between P and the minimal matching,
    by ray casting to the west from each tile centre."""
    snake = _snake(g)
    diff = P ^ snake.minimal_edges
    vertical = [snake.segment(e) for e in diff if e[1] in ("E", "W")]
    out = []
    for (x, y) in snake.coords():
        crossings = sum(1 for (a, b) in vertical if a[0] <= x and a[1] == y)
        out.append(crossings % 2)
    return tuple(out)


# -- edge labels --------------------------------------------------------------

def _place(tri, arc, rel, lower_left: bool):
    k = tri.index(arc)
    p, q = tri[(k + 1) % 3], tri[(k + 2) % 3]
    if lower_left:
        return {"W": p, "S": q} if rel > 0 else {"W": q, "S": p}
    return {"E": p, "N": q} if rel > 0 else {"E": q, "N": p}


def label_edges(t, w, graph=None) -> dict:
    """Map canonical edge id -> arc id, or None for a boundary segment."""
    from .orbifold import arrow_faces, build_gentle_pair

    g = build_gentle_pair(t)
    band = isinstance(w, BandWord)
    if graph is None:
        graph = build_band_graph(g, w) if band else build_snake_graph(g, w)
    snake = _snake(graph)
    faces = t.faces()
    fmap = arrow_faces(t)
    letters = w.letters
    m = len(letters)
    labels = snake.labels
    d = snake.size

    def other(arc, f):
        rest = [x for x in t.arc_faces(arc) if x != f]
        if len(rest) != 1:
            raise ValueError(f"cannot place the far side of arc {arc}")
        return rest[0]

    out: dict = {}
    for i in range(1, d + 1):
        arc = t.arc(labels[i - 1])
        if band:
            ll, ur = fmap[letters[(i - 2) % m].arrow], fmap[letters[i - 1].arrow]
        else:
            ll = fmap[letters[i - 2].arrow] if i > 1 else None
            ur = fmap[letters[i - 1].arrow] if i <= m else None
            if ll is None and ur is None:
                ll = t.arc_faces(arc)[0]
            if ll is None:
                ll = other(arc, ur)
            if ur is None:
                ur = other(arc, ll)
        rel = snake.tiles[i - 1].rel
        sides = _place(faces[ll], arc, rel, True)
        sides.update(_place(faces[ur], arc, rel, False))
        for side, e in sides.items():
            key = snake.edge(i, side)
            lab = e if t.is_arc(e) else None
            if key in out and out[key] != lab:
                raise ValueError(f"inconsistent labels on edge {key}: {out[key]} vs {lab}")
            out[key] = lab
    if band:
        e1, ed = graph.cut_edges
        if out[e1] != out[ed]:
            raise ValueError("glued sides carry different labels")
    return out


def matching_weight(labels: dict, edges, t) -> tuple[int, ...]:
    """x-exponent vector of the product of edge labels."""
    out = [0] * t.n
    for e in edges:
        lab = labels[e]
        if lab is not None:
            out[t.vertex(lab) - 1] += 1
    return tuple(out)


def crossing_vector(graph, n: int) -> tuple[int, ...]:
    out = [0] * n
    for tile in _snake(graph).tiles:
        out[tile.label - 1] += 1
    return tuple(out)


def cover_twists(g):
    """For each cover h < h' of the lattice: (h, tile, removed, added) on the
    cut snake graph."""
    hs = {m.height for m in enumerate_matchings(g)}
    out = []
    for h in sorted(hs):
        for i in range(len(h)):
            if h[i]:
                continue
            up = h[:i] + (1,) + h[i + 1:]
            if up in hs:
                a, b = snake_matching_edges(g, h), snake_matching_edges(g, up)
                out.append((h, i + 1, a - b, b - a))
    return out


def twist_parity_violations(g) -> list:
    """Going up at tile i trades horizontal edges for vertical ones exactly
    when tile i has rel +1."""
    bad = []
    tiles = _snake(g).tiles
    for h, i, removed, added in cover_twists(g):
        horizontal = {e for e in removed if e[1] in ("N", "S")}
        want_horizontal_out = tiles[i - 1].rel > 0
        if len(removed) != 2 or len(added) != 2:
            bad.append((h, i))
        elif (len(horizontal) == 2) != want_horizontal_out or len(horizontal) not in (0, 2):
            bad.append((h, i))
    return bad
