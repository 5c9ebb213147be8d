"""Representations of string and band modules, canonical submodules, and
linear-algebra oracles (brute-force submodules, homological g-vectors and
the Auslander-Reiten translate)."""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from .quiver import GentlePair
from .strings import (BandWord, Letter, StringWord, WordError, append_options,
                      band_vertices, canonical_string, check_band, check_string,
                      is_projective, vertices, MAX_WORD)

BRUTE_FORCE_LIMIT = 16


@dataclass(frozen=True)
class Representation:
    """dims[v-1] = dimension at vertex v; maps[arrow] is a dim(target) x
    dim(source) matrix as a tuple of rows."""
    n: int
    dims: tuple[int, ...]
    maps: dict
    ends: dict
    basis: tuple[tuple[int, ...], ...] = ()

    def dim(self, v: int) -> int:
        return self.dims[v - 1]

    @property
    def total(self) -> int:
        return sum(self.dims)


def _zero(r, c):
    return [[Fraction(0)] * c for _ in range(r)]


def _build(g: GentlePair, pos_vertex: list[int], steps) -> Representation:
    """steps: (arrow, source position, target position, scalar)."""
    n = g.n
    basis = [[] for _ in range(n)]
    for p, v in enumerate(pos_vertex):
        basis[v - 1].append(p)
    index = {}
    for v in range(n):
        for k, p in enumerate(basis[v]):
            index[p] = k
    maps = {}
    for a in g.quiver.arrows:
        maps[a.id] = _zero(len(basis[a.target - 1]), len(basis[a.source - 1]))
    for arrow, src, tgt, scalar in steps:
        maps[arrow][index[tgt]][index[src]] += scalar
    frozen = {a: tuple(tuple(r) for r in m) for a, m in maps.items()}
    return Representation(n, tuple(len(b) for b in basis), frozen, arrow_ends(g),
                          tuple(tuple(p + 1 for p in b) for b in basis))


def string_representation(g: GentlePair, w: StringWord) -> Representation:
    check_string(g, w)
    steps = []
    for i, x in enumerate(w.letters):
        src, tgt = (i, i + 1) if x.direct else (i + 1, i)
        steps.append((x.arrow, src, tgt, Fraction(1)))
    return _build(g, vertices(g, w), steps)


def band_representation(g: GentlePair, b: BandWord, lam=1) -> Representation:
    check_band(g, b)
    lam = Fraction(lam)
    if lam == 0:
        raise ValueError("the band parameter must be nonzero")
    m = len(b)
    steps = []
    for i, x in enumerate(b.letters):
        j = (i + 1) % m
        src, tgt = (i, j) if x.direct else (j, i)
        steps.append((x.arrow, src, tgt, lam if i == m - 1 else Fraction(1)))
    return _build(g, band_vertices(g, b), steps)


def relations_vanish(g: GentlePair, rep: Representation) -> bool:
    for a, b in g.relations:
        A, B = rep.maps[a], rep.maps[b]
        for i in range(len(B)):
            for j in range(len(A[0]) if A else 0):
                if sum(B[i][k] * A[k][j] for k in range(len(A))):
                    return False
    return True


# -- canonical submodules ---------------------------------------------------

def flow_implications(w: StringWord | BandWord) -> list[tuple[int, int]]:
    """Pairs (i, j) of 1-based positions meaning i in S forces j in S."""
    out = []
    m = len(w)
    band = isinstance(w, BandWord)
    for i, x in enumerate(w.letters, start=1):
        j = (i % m) + 1 if band else i + 1
        out.append((i, j) if x.direct else (j, i))
    return out


def closed_sets(size: int, implications) -> list[frozenset]:
    """All subsets of 1..size closed under the implications."""
    forward: dict[int, list[int]] = {}
    backward: dict[int, list[int]] = {}
    for i, j in implications:
        forward.setdefault(i, []).append(j)
        backward.setdefault(j, []).append(i)
    out = []

    def grow(k, chosen: set, banned: set):
        if k > size:
            out.append(frozenset(chosen))
            return
        if k in chosen or k in banned:
            grow(k + 1, chosen, banned)
            return
        # include k with everything it forces
        stack, add = [k], set()
        ok = True
        while stack:
            u = stack.pop()
            if u in add or u in chosen:
                continue
            if u in banned:
                ok = False
                break
            add.add(u)
            stack.extend(forward.get(u, []))
        if ok:
            grow(k + 1, chosen | add, banned)
        # exclude k with everything that forces it
        stack, rem = [k], set()
        ok = True
        while stack:
            u = stack.pop()
            if u in rem or u in banned:
                continue
            if u in chosen:
                ok = False
                break
            rem.add(u)
            stack.extend(backward.get(u, []))
        if ok:
            grow(k + 1, chosen, banned | rem)

    grow(1, set(), set())
    return sorted(out, key=lambda s: (len(s), sorted(s)))


@dataclass(frozen=True)
class ClosedSubset:
    positions: frozenset
    dimension: tuple[int, ...]


def _positions_vertices(g, w):
    return band_vertices(g, w) if isinstance(w, BandWord) else vertices(g, w)


def canonical_submodules(g: GentlePair, w: StringWord | BandWord) -> list[ClosedSubset]:
    if isinstance(w, BandWord):
        check_band(g, w)
    else:
        check_string(g, w)
    pv = _positions_vertices(g, w)
    out = []
    for s in closed_sets(len(pv), flow_implications(w)):
        d = [0] * g.n
        for p in s:
            d[pv[p - 1] - 1] += 1
        out.append(ClosedSubset(s, tuple(d)))
    return out


def euler_char_table(g: GentlePair, w: StringWord | BandWord) -> dict[tuple, int]:
    return dict(sorted(Counter(c.dimension for c in canonical_submodules(g, w)).items()))


def brute_force_submodules(rep: Representation) -> dict[tuple, int]:
    """Histogram of coordinate subspaces invariant under every arrow."""
    if rep.total > BRUTE_FORCE_LIMIT:
        raise ValueError(f"total dimension {rep.total} exceeds {BRUTE_FORCE_LIMIT}")
    offset = [0]
    for d in rep.dims:
        offset.append(offset[-1] + d)
    hist: Counter = Counter()
    N = rep.total
    vertex_of = []
    for v, d in enumerate(rep.dims, start=1):
        vertex_of += [v] * d
    arrow_data = []
    for aid, mat in rep.maps.items():
        src, tgt = rep.ends[aid]
        arrow_data.append((mat, offset[src - 1], offset[tgt - 1]))
    for mask in range(1 << N):
        ok = True
        for mat, so, to in arrow_data:
            if not ok:
                break
            for c in range(len(mat[0]) if mat else 0):
                if not mask >> (so + c) & 1:
                    continue
                for r in range(len(mat)):
                    if mat[r][c] and not mask >> (to + r) & 1:
                        ok = False
                        break
                if not ok:
                    break
        if ok:
            d = [0] * rep.n
            for k in range(N):
                if mask >> k & 1:
                    d[vertex_of[k] - 1] += 1
            hist[tuple(d)] += 1
    return dict(sorted(hist.items()))


def arrow_ends(g: GentlePair) -> dict[str, tuple[int, int]]:
    return {a.id: (a.source, a.target) for a in g.quiver.arrows}


# -- exact linear algebra ----------------------------------------------------

def _F(x) -> Fraction:
    return Fraction(int(x.numerator), int(x.denominator))


def _dm(rows, nrows, ncols):
    return DomainMatrix([[QQ(int(Fraction(x).numerator), int(Fraction(x).denominator)) for x in r]
                         for r in rows], (nrows, ncols), QQ)


def rank(rows, nrows, ncols) -> int:
    if nrows == 0 or ncols == 0:
        return 0
    return _dm(rows, nrows, ncols).rank()


def nullspace(rows, nrows, ncols) -> list[list]:
    """Basis of {v : A v = 0} as a list of column vectors."""
    if ncols == 0:
        return []
    if nrows == 0:
        return [[Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    ns = _dm(rows, nrows, ncols).nullspace()
    return [[_F(x) for x in r] for r in ns.to_list()] if ns.shape[0] else []


def _extend_basis(current: list, candidates: list, dim: int) -> list:
    """Pick candidates that are independent modulo current."""
    chosen = []
    base = list(current)
    r = rank(_cols_to_rows(base, dim), dim, len(base)) if base else 0
    for c in candidates:
        trial = base + [c]
        r2 = rank(_cols_to_rows(trial, dim), dim, len(trial))
        if r2 > r:
            base, r = trial, r2
            chosen.append(c)
    return chosen


def _cols_to_rows(cols, dim):
    return [[c[i] for c in cols] for i in range(dim)]


def _matvec(mat, vec):
    return [sum(mat[i][j] * vec[j] for j in range(len(vec))) for i in range(len(mat))]


# -- homological g-vector ----------------------------------------------------

def g_vector_homological(g: GentlePair, rep: Representation) -> tuple[int, ...]:
    """-dim Hom(S_i, M) + dim Ext^1(S_i, M) from the projective resolution of
    each simple."""
    out = []
    for i in range(1, g.n + 1):
        outs = sorted(g.quiver.out_arrows(i), key=lambda a: a.id)
        di = rep.dim(i)
        blocks = [(a, rep.dim(a.target)) for a in outs]
        n1 = sum(d for _, d in blocks)
        d0 = []
        for a, _ in blocks:
            d0 += [list(r) for r in rep.maps[a.id]]
        r0 = rank(d0, n1, di) if n1 and di else 0
        hom = di - r0
        rels = [(a, b) for a in outs for b in g.quiver.out_arrows(a.target) if g.is_relation(a.id, b.id)]
        n2 = sum(rep.dim(b.target) for _, b in rels)
        d1 = [[Fraction(0)] * n1 for _ in range(n2)]
        row = 0
        for a, b in rels:
            col = 0
            for a2, d in blocks:
                if a2.id == a.id:
                    break
                col += d
            mb = rep.maps[b.id]
            for r in range(len(mb)):
                for c in range(len(mb[r])):
                    d1[row + r][col + c] = mb[r][c]
            row += len(mb)
        ker1 = n1 - (rank(d1, n2, n1) if n2 and n1 else 0)
        out.append(-hom + ker1 - r0)
    return tuple(out)


# -- paths of the bound quiver ---------------------------------------------

def nonzero_paths(g: GentlePair) -> list[tuple[int, int, tuple[str, ...]]]:
    """(source, target, arrows) for every path outside I, trivial ones included."""
    out = [(v, v, ()) for v in range(1, g.n + 1)]
    layer = [(a.source, a.target, (a.id,)) for a in g.quiver.arrows]
    steps = 0
    while layer:
        out += layer
        steps += 1
        if steps > MAX_WORD:
            raise WordError("the bound quiver algebra is infinite-dimensional")
        nxt = []
        for s, t, p in layer:
            for b in g.quiver.out_arrows(t):
                if not g.is_relation(p[-1], b.id):
                    nxt.append((s, b.target, p + (b.id,)))
        layer = nxt
    return out


class PathAlgebra:
    def __init__(self, g: GentlePair):
        self.g = g
        self.paths = nonzero_paths(g)
        self.by_ends: dict[tuple[int, int], list[tuple[str, ...]]] = {}
        for s, t, p in self.paths:
            self.by_ends.setdefault((s, t), []).append(p)
        self.lookup = {(s, p): t for s, t, p in self.paths}

    def between(self, s, t):
        return self.by_ends.get((s, t), [])

    def concat(self, s, p, q):
        """Path p (from s) followed by q, or None when it lies in I."""
        if not p:
            r = q
        elif not q:
            r = p
        else:
            if self.g.is_relation(p[-1], q[0]):
                return None
            r = p + q
        return r if (s, r) in self.lookup else None

    def act(self, rep: Representation, s: int, p, vec):
        for a in p:
            vec = _matvec(rep.maps[a], vec)
        return vec


# -- AR translate oracle -----------------------------------------------------

def _top_generators(rep: Representation, g: GentlePair):
    gens = []
    for v in range(1, g.n + 1):
        d = rep.dim(v)
        if not d:
            continue
        rad = []
        for a in g.quiver.in_arrows(v):
            m = rep.maps[a.id]
            for c in range(rep.dim(a.source)):
                rad.append([m[r][c] for r in range(d)])
        unit = [[Fraction(int(i == j)) for i in range(d)] for j in range(d)]
        for vec in _extend_basis(rad, unit, d):
            gens.append((v, vec))
    return gens


def tau_representation(g: GentlePair, rep: Representation) -> Representation:
    """D Tr M as the kernel of the Nakayama functor applied to a minimal
    projective presentation P1 -> P0 -> M."""
    A = PathAlgebra(g)
    n = g.n
    gens0 = _top_generators(rep, g)
    # P0 at vertex x: pairs (generator k, path from v_k to x)
    p0 = {x: [(k, p) for k, (v, _) in enumerate(gens0) for p in A.between(v, x)] for x in range(1, n + 1)}
    kernel = {}
    for x in range(1, n + 1):
        cols = [A.act(rep, gens0[k][0], p, gens0[k][1]) for k, p in p0[x]]
        kernel[x] = nullspace(_cols_to_rows(cols, rep.dim(x)), rep.dim(x), len(cols)) if cols else []

    def arrow_on_p0(b, vec):
        """Image under arrow b: x -> y of a vector in P0_x."""
        x, y = g.arrow(b).source, g.arrow(b).target
        out = [Fraction(0)] * len(p0[y])
        idx = {kp: i for i, kp in enumerate(p0[y])}
        for coeff, (k, p) in zip(vec, p0[x]):
            if coeff:
                r = A.concat(gens0[k][0], p, (b,))
                if r is not None:
                    out[idx[(k, r)]] += coeff
        return out

    gens1 = []
    for x in range(1, n + 1):
        if not kernel[x]:
            continue
        rad = []
        for b in g.quiver.in_arrows(x):
            for vec in kernel[b.source]:
                rad.append(arrow_on_p0(b.id, vec))
        for vec in _extend_basis(rad, kernel[x], len(p0[x])):
            gens1.append((x, vec))
    # Nakayama functor: I_x at vertex y has the dual basis of paths y -> x
    dims, bases = [], {}
    for y in range(1, n + 1):
        src = [(j, r) for j, (x, _) in enumerate(gens1) for r in A.between(y, x)]
        tgt = [(k, r) for k, (v, _) in enumerate(gens0) for r in A.between(y, v)]
        tidx = {kr: i for i, kr in enumerate(tgt)}
        mat = [[Fraction(0)] * len(src) for _ in tgt]
        for col, (j, r1) in enumerate(src):
            x, vec = gens1[j]
            for coeff, (k, p) in zip(vec, p0[x]):
                if not coeff:
                    continue
                for r in A.between(y, gens0[k][0]):
                    if A.concat(y, r, p) == r1:
                        mat[tidx[(k, r)]][col] += coeff
        bases[y] = (src, nullspace(mat, len(tgt), len(src)) if src else [])
        dims.append(len(bases[y][1]))
    maps = {}
    for b in g.quiver.arrows:
        y, z = b.source, b.target
        src_y, ker_y = bases[y]
        src_z, ker_z = bases[z]
        zidx = {jr: i for i, jr in enumerate(src_z)}
        images = []
        for vec in ker_y:
            img = [Fraction(0)] * len(src_z)
            for coeff, (j, r1) in zip(vec, src_y):
                if coeff and r1 and r1[0] == b.id:
                    rest = r1[1:]
                    img[zidx[(j, rest)]] += coeff
            images.append(img)
        maps[b.id] = _express(images, ker_z, len(src_z))
    return Representation(n, tuple(dims), maps, arrow_ends(g))


def _express(images, basis, dim):
    """Coordinates of each image vector in the given basis (columns)."""
    k = len(basis)
    if not images:
        return tuple(() for _ in range(k))
    if k == 0:
        return ()
    # solve basis * c = image via rref of [basis | images]
    rows = [[basis[j][i] for j in range(k)] + [im[i] for im in images] for i in range(dim)]
    R, pivots = _dm(rows, dim, k + len(images)).rref()
    R = R.to_list()
    coords = [[Fraction(0)] * len(images) for _ in range(k)]
    for r, pc in enumerate(pivots):
        if pc >= k:
            raise ArithmeticError("image leaves the kernel")
        for c in range(len(images)):
            coords[pc][c] = _F(R[r][k + c])
    return tuple(tuple(row) for row in coords)


def hom_dimension_and_iso(g: GentlePair, M: Representation, N: Representation, seed=0) -> bool:
    """True iff M and N are isomorphic."""
    if M.dims != N.dims:
        return False
    blocks, off = {}, 0
    for v in range(1, g.n + 1):
        blocks[v] = off
        off += N.dim(v) * M.dim(v)
    eqs = []
    for a in g.quiver.arrows:
        s, t = a.source, a.target
        Ma, Na = M.maps[a.id], N.maps[a.id]
        # (Na f_s - f_t Ma)[i][j] = 0
        for i in range(N.dim(t)):
            for j in range(M.dim(s)):
                row = [Fraction(0)] * off
                for k in range(N.dim(s)):
                    if Na[i][k]:
                        row[blocks[s] + k * M.dim(s) + j] += Na[i][k]
                for k in range(M.dim(t)):
                    if Ma[k][j]:
                        row[blocks[t] + i * M.dim(t) + k] -= Ma[k][j]
                eqs.append(row)
    sol = nullspace(eqs, len(eqs), off) if eqs else [[Fraction(int(i == j)) for i in range(off)] for j in range(off)]
    if not sol:
        return M.total == 0
    rng = random.Random(seed)
    for _ in range(3):
        coeffs = [rng.randint(-50, 50) for _ in sol]
        f = [sum(c * s[i] for c, s in zip(coeffs, sol)) for i in range(off)]
        if all(_invertible(f, blocks[v], M.dim(v)) for v in range(1, g.n + 1)):
            return True
    return False


def _invertible(f, start, d):
    if d == 0:
        return True
    rows = [[f[start + i * d + j] for j in range(d)] for i in range(d)]
    return _dm(rows, d, d).det() != 0


def strings_with_dimension(g: GentlePair, dims: tuple[int, ...]) -> list[StringWord]:
    total = sum(dims)
    out = set()
    if total == 1:
        return [StringWord.trivial(dims.index(1) + 1)]

    def dfs(w: StringWord, used: list[int]):
        if len(w) == total - 1:
            out.add(canonical_string(w))
            return
        for y in append_options(g, w):
            e = g.arrow(y.arrow)
            v = e.target if y.direct else e.source
            if used[v - 1] < dims[v - 1]:
                used[v - 1] += 1
                dfs(StringWord(w.letters + (y,)), used)
                used[v - 1] -= 1

    for a in g.quiver.arrows:
        for s in (1, -1):
            x = Letter(a.id, s)
            u, v = (a.source, a.target) if s > 0 else (a.target, a.source)
            used = [0] * g.n
            used[u - 1] += 1
            used[v - 1] += 1
            if all(used[i] <= dims[i] for i in range(g.n)):
                dfs(StringWord((x,)), used)
    return sorted(out, key=lambda w: w.letters)


def tau_homological(g: GentlePair, w: StringWord):
    """(dimension vector, string) of the Auslander-Reiten translate of M(w)."""
    check_string(g, w)
    if is_projective(g, w):
        raise WordError(f"M({w}) is projective")
    tau = tau_representation(g, string_representation(g, w))
    if tau.total == 0:
        raise WordError(f"M({w}) is projective")
    for cand in strings_with_dimension(g, tau.dims):
        if hom_dimension_and_iso(g, tau, string_representation(g, cand)):
            return tau.dims, cand
    raise ArithmeticError(f"translate of {w} matches no string module")
