"""Quivers with loops and parallel arrows, generalized cluster quivers and
gentle pairs."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field


@dataclass(frozen=True)
class Arrow:
    id: str
    source: int
    target: int

    @property
    def is_loop(self) -> bool:
        return self.source == self.target


@dataclass(frozen=True)
class Quiver:
    n: int
    arrows: tuple[Arrow, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "arrows", tuple(self.arrows))
        ids = [a.id for a in self.arrows]
        if len(set(ids)) != len(ids):
            raise ValueError("arrow ids must be unique")
        for a in self.arrows:
            if not (1 <= a.source <= self.n and 1 <= a.target <= self.n):
                raise ValueError(f"arrow {a.id} has an endpoint outside 1..{self.n}")

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    def arrow(self, arrow_id: str) -> Arrow:
        for a in self.arrows:
            if a.id == arrow_id:
                return a
        raise KeyError(arrow_id)

    def out_arrows(self, v: int) -> list[Arrow]:
        return [a for a in self.arrows if a.source == v]

    def in_arrows(self, v: int) -> list[Arrow]:
        return [a for a in self.arrows if a.target == v]

    def multiplicities(self) -> Counter:
        """Counter of (source, target) -> number of arrows."""
        return Counter((a.source, a.target) for a in self.arrows)


@dataclass(frozen=True)
class GeneralizedClusterQuiver:
    quiver: Quiver
    pending: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "pending", frozenset(self.pending))
        mult = self.quiver.multiplicities()
        for (s, t) in mult:
            if s == t:
                raise ValueError(f"loop at vertex {s} in a cluster quiver")
            if (t, s) in mult:
                raise ValueError(f"2-cycle between {s} and {t}")
        if not self.pending <= set(self.quiver.vertices):
            raise ValueError("pending vertices outside the vertex set")

    @property
    def n(self) -> int:
        return self.quiver.n

    def degree(self, v: int) -> int:
        return 2 if v in self.pending else 1

    def exchange_matrix(self) -> list[list[int]]:
        """b_ij = #(i->j) - #(j->i)."""
        mult = self.quiver.multiplicities()
        n = self.n
        return [[mult[(i, j)] - mult[(j, i)] for j in range(1, n + 1)] for i in range(1, n + 1)]

    def same_as(self, other: GeneralizedClusterQuiver) -> bool:
        """Equality up to relabeling arrow ids (vertices fixed)."""
        return (
            self.n == other.n
            and self.pending == other.pending
            and self.quiver.multiplicities() == other.quiver.multiplicities()
        )


def quiver_from_multiplicities(n: int, mult) -> Quiver:
    arrows = []
    for (s, t) in sorted(mult):
        for k in range(mult[(s, t)]):
            arrows.append(Arrow(f"{s}>{t}:{k}", s, t))
    return Quiver(n, tuple(arrows))


def mutate(q: GeneralizedClusterQuiver, k: int) -> GeneralizedClusterQuiver:
    n = q.n
    if not 1 <= k <= n:
        raise ValueError(f"vertex {k} outside 1..{n}")
    A = {(i, j): 0 for i in range(1, n + 1) for j in range(1, n + 1)}
    for (s, t), c in q.quiver.multiplicities().items():
        A[(s, t)] += c
    d = q.degree(k)
    # step 1: compose through k
    added = {}
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i != k and j != k and A[(i, k)] and A[(k, j)]:
                added[(i, j)] = d * A[(i, k)] * A[(k, j)]
    for key, c in added.items():
        A[key] += c
    # step 2: reverse arrows at k
    B = dict(A)
    for i in range(1, n + 1):
        if i != k:
            B[(i, k)], B[(k, i)] = A[(k, i)], A[(i, k)]
    # step 3: cancel 2-cycles
    mult = Counter()
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            net = B[(i, j)] - B[(j, i)]
            if i != j and net > 0:
                mult[(i, j)] = net
    return GeneralizedClusterQuiver(quiver_from_multiplicities(n, mult), q.pending)


def mutate_sequence(q: GeneralizedClusterQuiver, ks) -> GeneralizedClusterQuiver:
    for k in ks:
        q = mutate(q, k)
    return q


def c_matrix(q: Quiver) -> list[list[int]]:
    """c_ij = #(j -> i) - #(i -> j); loops cancel."""
    mult = q.multiplicities()
    n = q.n
    return [
        [mult[(j, i)] - mult[(i, j)] if i != j else 0 for j in range(1, n + 1)]
        for i in range(1, n + 1)
    ]


def c_matrix_principal(q: Quiver) -> list[list[int]]:
    n = q.n
    return c_matrix(q) + [[int(i == j) for j in range(n)] for i in range(n)]


def format_matrix(m) -> str:
    return "\n".join(",".join(str(v) for v in row) for row in m)


@dataclass(frozen=True)
class GentlePair:
    quiver: Quiver
    relations: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "relations", frozenset(self.relations))
        for a, b in self.relations:
            qa, qb = self.quiver.arrow(a), self.quiver.arrow(b)
            if qa.target != qb.source:
                raise ValueError(f"relation {a}{b} is not a composable pair")

    @property
    def n(self) -> int:
        return self.quiver.n

    def arrow(self, arrow_id: str) -> Arrow:
        return self.quiver.arrow(arrow_id)

    def is_relation(self, a: str, b: str) -> bool:
        return (a, b) in self.relations


def is_gentle(g: GentlePair) -> tuple[bool, list[str]]:
    Q = g.quiver
    problems = []
    for v in Q.vertices:
        ins, outs = Q.in_arrows(v), Q.out_arrows(v)
        if len(ins) > 2:
            problems.append(f"(1) vertex {v} has {len(ins)} incoming arrows")
        if len(outs) > 2:
            problems.append(f"(1) vertex {v} has {len(outs)} outgoing arrows")
    for b in Q.arrows:
        before = Q.in_arrows(b.source)
        free = [a.id for a in before if (a.id, b.id) not in g.relations]
        bound = [a.id for a in before if (a.id, b.id) in g.relations]
        if len(free) > 1:
            problems.append(f"(2) arrows {free} all compose with {b.id} outside I")
        if len(bound) > 1:
            problems.append(f"(3) arrows {bound} all compose with {b.id} inside I")
        after = Q.out_arrows(b.target)
        free = [c.id for c in after if (b.id, c.id) not in g.relations]
        bound = [c.id for c in after if (b.id, c.id) in g.relations]
        if len(free) > 1:
            problems.append(f"(2) {b.id} composes with {free} outside I")
        if len(bound) > 1:
            problems.append(f"(3) {b.id} composes with {bound} inside I")
    return (not problems, problems)
