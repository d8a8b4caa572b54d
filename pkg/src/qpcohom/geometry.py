"""Ideal triangulations of once- and twice-punctured polygons and their quivers with potential.

A triangulation is purely combinatorial: arcs with endpoints (boundary indices
``1..n`` or puncture names), ordinary triangles listed by their three sides in
counterclockwise order, and self-folded triangles given as ``(loop, radius)``.
Boundary segments are written ``b(i,j)`` with ``j = i % n + 1``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .potential import QP, Potential, UnionFind
from .quiver import Arrow, Cycle, Quiver


class TriangulationError(ValueError):
    pass


class UnclassifiableTriangle(TriangulationError):
    pass


class UnsupportedReduction(RuntimeError):
    pass


_SEGMENT = re.compile(r"^b\((\d+),(\d+)\)$")


def segment(i: int, n: int) -> str:
    return f"b({i},{i % n + 1})"


@dataclass(frozen=True)
class Arc:
    name: str
    ends: tuple

    @property
    def is_loop(self) -> bool:
        return self.ends[0] == self.ends[1]


@dataclass(frozen=True)
class Triangle:
    name: str
    sides: tuple


@dataclass(frozen=True)
class SelfFolded:
    name: str
    loop: str
    radius: str


@dataclass
class Triangulation:
    n: int
    punctures: tuple
    arcs: dict  # name -> Arc
    triangles: list
    selffolded: list = field(default_factory=list)

    def __post_init__(self):
        self.punctures = tuple(self.punctures)
        self._corners = {}
        self._dirs = {}
        self.validate()

    # -- basic queries -------------------------------------------------
    def is_segment(self, side: str) -> bool:
        return _SEGMENT.match(side) is not None

    def ends(self, side: str) -> tuple:
        m = _SEGMENT.match(side)
        if m:
            return (int(m.group(1)), int(m.group(2)))
        try:
            return self.arcs[side].ends
        except KeyError:
            raise TriangulationError(f"undeclared side {side!r}") from None

    @property
    def loop_of(self) -> dict:
        return {s.loop: s for s in self.selffolded}

    @property
    def radius_of(self) -> dict:
        return {s.radius: s for s in self.selffolded}

    def enclosed_puncture(self, sf: SelfFolded):
        a, b = self.arcs[sf.radius].ends
        return b if a in self.arcs[sf.loop].ends else a

    def valency(self, x) -> int:
        return sum(a.ends.count(x) for a in self.arcs.values())

    def corners(self, t: Triangle) -> tuple:
        """Marked point at corner k, between ``sides[k]`` and ``sides[k+1]``."""
        return self._corners[t.name]

    def is_internal(self, t: Triangle) -> bool:
        return not any(self.is_segment(s) for s in t.sides)

    # -- validation ----------------------------------------------------
    def validate(self):
        n, P = self.n, self.punctures
        if n < 1 or len(P) not in (1, 2):
            raise TriangulationError("need n >= 1 boundary points and one or two punctures")
        expected = n + 3 * len(P) - 3
        if len(self.arcs) != expected:
            raise TriangulationError(f"{len(self.arcs)} arcs, a triangulation needs {expected}")
        points = set(range(1, n + 1)) | set(P)
        for a in self.arcs.values():
            if any(e not in points for e in a.ends):
                raise TriangulationError(f"arc {a.name} has an unknown endpoint")
            if a.is_loop and a.ends[0] in P:
                raise TriangulationError(f"loop {a.name} based at a puncture is not supported")
        for sf in self.selffolded:
            lp, r = self.arcs.get(sf.loop), self.arcs.get(sf.radius)
            if lp is None or r is None:
                raise TriangulationError(f"self-folded {sf.name} uses an undeclared arc")
            if not lp.is_loop or lp.ends[0] not in r.ends or not (set(r.ends) & set(P)):
                raise UnclassifiableTriangle(f"self-folded {sf.name}: needs a loop and a radius to a puncture")
        count = {a: 0 for a in self.arcs}
        segs = {segment(i, n): 0 for i in range(1, n + 1)}
        for t in self.triangles:
            if len(t.sides) != 3:
                raise TriangulationError(f"triangle {t.name} needs three sides")
            for s in t.sides:
                if self.is_segment(s):
                    if s not in segs:
                        raise TriangulationError(f"{s} is not a boundary segment of the {n}-gon")
                    segs[s] += 1
                elif s in count:
                    count[s] += 1
                else:
                    raise TriangulationError(f"undeclared side {s!r} in triangle {t.name}")
        for sf in self.selffolded:
            count[sf.loop] += 1
            count[sf.radius] += 2
        bad = [a for a, c in count.items() if c != 2] + [s for s, c in segs.items() if c != 1]
        if bad:
            raise TriangulationError(f"side incidence violated for {', '.join(sorted(bad))}")
        for t in self.triangles:
            self._corners[t.name] = self._solve_corners(t)
        self._check_orientation()

    def _solve_corners(self, t: Triangle) -> tuple:
        options = []
        for s in t.sides:
            u, v = self.ends(s)
            if self.is_segment(s) or u == v:
                options.append([(u, v)])
            else:
                options.append([(u, v), (v, u)])
        for choice in product(*options):
            if all(choice[k][1] == choice[(k + 1) % 3][0] for k in range(3)):
                self._dirs[t.name] = choice
                return tuple(choice[k][1] for k in range(3))
        raise UnclassifiableTriangle(f"sides of triangle {t.name} do not close up")

    def _check_orientation(self):
        used: dict = {}
        for t in self.triangles:
            for s, d in zip(t.sides, self._dirs[t.name]):
                if self.is_segment(s) or d[0] == d[1]:
                    continue
                if s in used and used[s] == d:
                    raise TriangulationError(f"arc {s} is traversed the same way by two triangles; list sides counterclockwise")
                used[s] = d


# ---------------------------------------------------------------------------
# blocks


@dataclass(frozen=True)
class Block:
    kind: str  # I, II, IIIa, IIIb, IV, V, or 'empty' for triangles without arrows
    triangle: str
    selffolded: tuple
    outlets: tuple  # arcs through which the block is glued to others


def decompose_blocks(T: Triangulation) -> list[Block]:
    loops = T.loop_of
    arrows = _triangle_arrows(T)
    out = []
    for t in T.triangles:
        sf = tuple(loops[s].name for s in t.sides if s in loops)
        boundary = sum(T.is_segment(s) for s in t.sides)
        outlets = tuple(s for s in t.sides if not T.is_segment(s) and s not in loops)
        if len(sf) == 2:
            if boundary:
                raise UnclassifiableTriangle(f"triangle {t.name}: two self-folded sides and a boundary side")
            kind = "V"
        elif len(sf) == 1:
            if boundary == 0:
                kind = "IV"
            elif boundary == 1:
                (gate,) = outlets
                into = any(a.target == gate for a in arrows[t.name])
                kind = "IIIa" if into else "IIIb"
            else:
                kind = "empty"
        else:
            kind = {0: "II", 1: "I"}.get(boundary, "empty")
        out.append(Block(kind, t.name, sf, outlets))
    return out


# ---------------------------------------------------------------------------
# adjacency quiver with potential


def _triangle_arrows(T: Triangulation) -> dict:
    """Arrows contributed by each ordinary triangle, copies through self-folded radii included."""
    loops = T.loop_of
    names: set = set()
    out = {}

    def fresh(s, t):
        base = f"{s}>{t}"
        name = base
        while name in names:
            name += "'"
        names.add(name)
        return name

    for t in T.triangles:
        arr = []
        for k in range(3):
            s, u = t.sides[k], t.sides[(k + 1) % 3]
            if T.is_segment(s) or T.is_segment(u):
                continue
            srcs = [s] + ([loops[s].radius] if s in loops else [])
            tgts = [u] + ([loops[u].radius] if u in loops else [])
            for a in srcs:
                for b in tgts:
                    arr.append(_CornerArrow(fresh(a, b), a, b, t.name, k))
        out[t.name] = arr
    return out


@dataclass(frozen=True)
class _CornerArrow:
    name: str
    source: str
    target: str
    triangle: str
    corner: int


@dataclass
class AdjacencyQP:
    triangulation: Triangulation
    qp: QP
    corner_arrows: dict  # triangle name -> list of _CornerArrow
    triangle_cycles: dict  # triangle name -> Cycle  (C_triangle)
    puncture_cycles: dict  # puncture -> Cycle or None  (C_x)
    pq_cycle: Cycle | None = None


def adjacency_qp(T: Triangulation) -> AdjacencyQP:
    """Unreduced adjacency quiver with its potential, every coefficient 1."""
    corner_arrows = _triangle_arrows(T)
    arrows = [Arrow(a.name, a.source, a.target) for lst in corner_arrows.values() for a in lst]
    q = Quiver(tuple(sorted(T.arcs)), tuple(arrows))
    loops = T.loop_of
    W = Potential()
    tri_cycles = {}
    punct_cycles = {}
    pq = None

    def corner(t, k, src=None, tgt=None):
        for a in corner_arrows[t.name]:
            if a.corner == k and (src is None or a.source == src) and (tgt is None or a.target == tgt):
                return a.name
        raise TriangulationError(f"missing corner arrow in {t.name}")

    def cycle_with(t, replace):
        sides = [replace.get(s, s) for s in t.sides]
        return Cycle(tuple(corner(t, k, sides[k], sides[(k + 1) % 3]) for k in range(3)))

    for t in T.triangles:
        if T.is_internal(t):
            c = cycle_with(t, {})
            tri_cycles[t.name] = c
            W.add(c)

    for x in T.punctures:
        val = T.valency(x)
        if val >= 2:
            at_x = [
                a
                for t in T.triangles
                for a in corner_arrows[t.name]
                if T.corners(t)[a.corner] == x
            ]
            nxt = {a.source: a for a in at_x}
            if len(nxt) != len(at_x) or len(at_x) != val:
                raise TriangulationError(f"corner arrows around puncture {x} do not form a cycle")
            start = min(at_x, key=lambda a: a.name)
            seq, cur = [], start
            while True:
                seq.append(cur.name)
                cur = nxt.get(cur.target)
                if cur is None:
                    raise TriangulationError(f"corner arrows around puncture {x} do not close")
                if cur is start:
                    break
            if len(seq) != val:
                raise TriangulationError(f"cycle around puncture {x} has the wrong length")
            c = Cycle(tuple(seq))
            punct_cycles[x] = c
            W.add(c)
        else:
            sf = next(s for s in T.selffolded if T.enclosed_puncture(s) == x)
            outer = next(t for t in T.triangles if sf.loop in t.sides)
            if not T.is_internal(outer):
                punct_cycles[x] = None  # C_x = 0 inside a IIIa/IIIb block
                continue
            c = cycle_with(outer, {sf.loop: sf.radius})
            punct_cycles[x] = c
            W.add(c)
            lp = [s for s in outer.sides if s in loops]
            if len(lp) == 2 and pq is None:
                pq = cycle_with(outer, {s: loops[s].radius for s in lp})
                W.add(pq)
    return AdjacencyQP(T, QP(q, W), corner_arrows, tri_cycles, punct_cycles, pq)


# ---------------------------------------------------------------------------
# relatedness and the puncture formula


@dataclass
class RelatednessReport:
    valency: dict
    rel_bar: dict  # puncture -> sorted names of internal triangles related to it (self-folded included)
    rel: dict  # puncture -> sorted names of non-self-folded internal triangles related to it
    nrel: list  # non-self-folded internal triangles related to no puncture
    m: dict  # puncture -> 0/1
    m_pq: int

    @property
    def dim(self) -> int:
        return len(self.nrel) + sum(self.m.values()) - self.m_pq

    def to_dict(self) -> dict:
        return {
            "valency": self.valency,
            "rel_bar": self.rel_bar,
            "rel": self.rel,
            "nrel": self.nrel,
            "m": self.m,
            "m_pq": self.m_pq,
            "theorem_b_dim": self.dim,
        }


def related(T: Triangulation, tri, x) -> bool:
    if isinstance(tri, SelfFolded):
        return x in T.arcs[tri.radius].ends
    loops = T.loop_of
    for s in tri.sides:
        if T.is_segment(s):
            continue
        if x in T.arcs[s].ends:
            return True
        if s in loops and T.enclosed_puncture(loops[s]) == x:
            return True
    return False


def relatedness(T: Triangulation) -> RelatednessReport:
    internal = [t for t in T.triangles if T.is_internal(t)]
    rel_bar, rel, m = {}, {}, {}
    val = {x: T.valency(x) for x in T.punctures}
    for x in T.punctures:
        rel[x] = sorted(t.name for t in internal if related(T, t, x))
        rel_bar[x] = sorted(rel[x] + [s.name for s in T.selffolded if related(T, s, x)])
        m[x] = int(val[x] >= 3 or len(rel_bar[x]) >= 2)
    nrel = sorted(t.name for t in internal if not any(t.name in rel[x] for x in T.punctures))
    m_pq = 0
    if len(T.punctures) == 2:
        p, q = T.punctures
        m_pq = int(bool(set(rel[p]) & set(rel[q])))
    return RelatednessReport(val, rel_bar, rel, nrel, m, m_pq)


def theorem_b_dim(T: Triangulation) -> int:
    return relatedness(T).dim


def triangle_classes(T: Triangulation) -> list[list[str]]:
    """Non-self-folded internal triangles up to the closure of 'related to a common puncture'."""
    names = [t.name for t in T.triangles if T.is_internal(t)]
    uf = UnionFind(names)
    rep = relatedness(T)
    for x in T.punctures:
        for a in rep.rel[x][1:]:
            uf.union(rep.rel[x][0], a)
    return uf.groups()


# ---------------------------------------------------------------------------
# local reduction of the 2-cycles around valency-2 punctures


@dataclass
class ReducedQP:
    qp: QP
    configurations: dict  # puncture -> 'A' | 'B' | 'C'
    survived: dict  # puncture -> whether C_x survives in the reduced potential
    removed: list  # arrows deleted as the trivial part


def _configuration(T: Triangulation, x) -> str:
    around = [t for t in T.triangles if x in T.corners(t)]
    if len(around) != 2:
        raise UnsupportedReduction(f"puncture {x} of valency 2 is not surrounded by two triangles")
    loops = T.loop_of
    if any(not T.is_internal(t) for t in around):
        return "B"
    if any(s in loops for t in around for s in t.sides):
        return "C"
    return "A"


def _two_cycles(q: Quiver) -> list[tuple]:
    out = []
    arrows = q.arrows
    for i, a in enumerate(arrows):
        for b in arrows[i + 1 :]:
            if a.source == b.target and a.target == b.source and a.source != a.target:
                out.append((a.name, b.name))
    return out


def _split_two_cycle(q: Quiver, W: Potential, a: str, b: str):
    """Remove the 2-cycle ``c * a b`` from W by a right-equivalence.

    Requires every other cycle to contain at most one occurrence of ``a`` or
    ``b`` in total.  Returns the new potential and whether the term ``U V``
    replacing the pair is nonzero.
    """
    key = Cycle((a, b))
    c = W.terms.get(key)
    if not c:
        raise UnsupportedReduction(f"2-cycle {a}, {b} is not a term of the potential")
    rest = {cyc: v for cyc, v in W.terms.items() if cyc != key}
    U, V, keep = {}, {}, {}
    for cyc, v in rest.items():
        hits = sum(x in (a, b) for x in cyc.arrows)
        if hits == 0:
            keep[cyc] = v
            continue
        if hits > 1:
            raise UnsupportedReduction(f"cycle {cyc} meets the 2-cycle {a}, {b} more than once")
        for rot in cyc.rotations():
            if rot[0] in (a, b):
                (U if rot[0] == a else V)[rot[1:]] = (U if rot[0] == a else V).get(rot[1:], 0) + v
    out = Potential()
    for cyc, v in keep.items():
        out.add(cyc, v)
    for u, cu in U.items():
        for w, cw in V.items():
            if len(u + w) < 3:
                raise UnsupportedReduction("reduction produced a cycle of length < 3")
            out.add(u + w, -Fraction(cu) * cw / c)
    return out, bool(U) and bool(V)


def reduce_local(aqp: AdjacencyQP) -> ReducedQP:
    T = aqp.triangulation
    q, W = aqp.qp.quiver, aqp.qp.potential
    val2 = {}
    for x in T.punctures:
        if T.valency(x) == 2:
            c = aqp.puncture_cycles[x]
            val2[frozenset(c.arrows)] = x
    for pair in _two_cycles(q):
        if frozenset(pair) not in val2:
            raise UnsupportedReduction(f"2-cycle {pair} does not surround a valency-2 puncture")
    configs, survived, removed = {}, {}, []
    for x in T.punctures:
        c = aqp.puncture_cycles.get(x)
        survived[x] = c is not None
    for pair, x in sorted(val2.items(), key=lambda kv: str(kv[1])):
        configs[x] = _configuration(T, x)
        a, b = aqp.puncture_cycles[x].arrows
        W, alive = _split_two_cycle(q, W, a, b)
        survived[x] = alive
        q = q.without_arrows([a, b])
        removed += [a, b]
    if _two_cycles(q):
        raise UnsupportedReduction("reduced quiver still has 2-cycles")
    return ReducedQP(QP(q, W), configs, survived, removed)


def reduced_qp(T: Triangulation) -> QP:
    return reduce_local(adjacency_qp(T)).qp


# ---------------------------------------------------------------------------
# admissible cuts of valency-1 triangulations


@dataclass
class GeometricCut:
    angles: tuple  # (triangle name, corner index) per internal non-self-folded triangle
    arrows: frozenset
    admissible: bool
    algebra_dim: int
    gldim_le_two: bool


def angle_arrows(aqp: AdjacencyQP, triangle: str, corner: int) -> list[str]:
    """Arrows crossing the given angle, copies through self-folded radii included."""
    return [a.name for a in aqp.corner_arrows[triangle] if a.corner == corner]


def is_admissible_cut(qp: QP, cut) -> bool:
    from .quiver import enumerate_chordless_cycles

    cut = set(cut)
    if any(sum(a in cut for a in c.arrows) != 1 for c in qp.potential.cycles()):
        return False
    for c in enumerate_chordless_cycles(qp.quiver):
        if c.oriented and sum(a in cut for a in c.arrows) != 1:
            return False
    return True


def cut_algebra(qp: QP, cut, max_len=None):
    from .algebra import build_algebra
    from .potential import cyclic_derivative

    rels = [cyclic_derivative(qp.potential, a) for a in sorted(cut)]
    return build_algebra(qp.quiver.without_arrows(cut), [r for r in rels if r], max_len)


def geometric_cuts(T: Triangulation, max_len=None) -> list[GeometricCut]:
    from .algebra import gldim_le_two

    bad = [x for x in T.punctures if T.valency(x) != 1]
    if bad:
        raise TriangulationError(f"geometric cuts need every puncture of valency 1; not so for {bad}")
    aqp = adjacency_qp(T)
    qp = aqp.qp
    internal = [t.name for t in T.triangles if T.is_internal(t)]
    out = []
    for corners in product(range(3), repeat=len(internal)):
        angles = tuple(zip(internal, corners))
        cut = frozenset(a for t, k in angles for a in angle_arrows(aqp, t, k))
        A = cut_algebra(qp, cut, max_len)
        out.append(GeometricCut(angles, cut, is_admissible_cut(qp, cut), A.dim, gldim_le_two(A)))
    return out


# ---------------------------------------------------------------------------
# enumeration of triangulations


def _convex_triangulations(k: int):
    """Triangulations of a convex k-gon with vertices 0..k-1, as triples (a, b, c), a < b < c."""
    def rec(lo, hi):
        if hi - lo < 2:
            yield []
            return
        for m in range(lo + 1, hi):
            for left in rec(lo, m):
                for right in rec(m, hi):
                    yield [(lo, m, hi)] + left + right

    yield from rec(0, k - 1)


class _Builder:
    def __init__(self):
        self.arcs: dict = {}
        self.triangles: list = []
        self.selffolded: list = []

    def arc(self, name, a, b):
        if name in self.arcs and self.arcs[name].ends != (a, b):
            raise TriangulationError(f"arc name clash {name}")
        self.arcs[name] = Arc(name, (a, b))
        return name

    def polygon(self, labels, edge, prefix):
        """Yield side triples for all triangulations of a convex polygon.

        ``labels`` are the polygon corners counterclockwise; ``edge(i)`` names the
        side from ``labels[i]`` to ``labels[i+1]`` (indices mod len).
        """
        k = len(labels)

        def side(a, b):
            if b == a + 1:
                return edge(a)
            if a == 0 and b == k - 1:
                return edge(k - 1)
            return f"{prefix}d{labels[a]}_{labels[b]}"

        for tri in _convex_triangulations(k):
            sides, diags = [], {}
            for a, b, c in tri:
                sides.append((side(a, b), side(b, c), side(a, c)))
                for x, y in ((a, b), (b, c), (a, c)):
                    if not (y == x + 1 or (x == 0 and y == k - 1)):
                        diags[side(x, y)] = (labels[x], labels[y])
            yield sides, diags


def _region_options(labels, edge, puncture, prefix):
    """All triangulations of a once-punctured polygon region.

    Yields ``(arcs, triangles, selffolded)`` with arcs as ``{name: ends}``,
    triangles as side triples in counterclockwise order.
    """
    m = len(labels)
    b = _Builder()
    # valency one: a self-folded triangle at each corner
    for i in range(m):
        loop, rad = f"{prefix}l{labels[i]}", f"{prefix}r{labels[i]}"
        order = [labels[(i + j) % m] for j in range(m)] + [labels[i]]

        def dedge(j, i=i, loop=loop):
            return loop if j == m else edge((i + j) % m)

        for sides, diags in b.polygon(order, dedge, prefix):
            arcs = {loop: (labels[i], labels[i]), rad: (labels[i], puncture)}
            arcs.update(diags)
            # the closing side of a doubled polygon triangle is the loop, traversed back to its base
            yield arcs, [_ccw(s) for s in sides], [(loop, rad)]
    # valency >= 2
    from itertools import combinations

    for k in range(2, m + 1):
        for chosen in combinations(range(m), k):
            parts = []
            for j in range(k):
                a, c = chosen[j], chosen[(j + 1) % k]
                gap = (c - a) % m or m
                ra, rc = f"{prefix}r{labels[a]}", f"{prefix}r{labels[c]}"
                if gap == 1:
                    parts.append([({}, [(ra, edge(a), rc)])])
                    continue
                sub = [labels[(a + t) % m] for t in range(gap + 1)]
                dname = f"{prefix}d{labels[a]}_{labels[c]}"

                def sedge(t, a=a, gap=gap, dname=dname):
                    return dname if t == gap else edge((a + t) % m)

                opts = []
                for sides, diags in b.polygon(sub, sedge, prefix):
                    arcs = {dname: (labels[a], labels[c])}
                    arcs.update(diags)
                    opts.append((arcs, [(ra, dname, rc)] + [_ccw(s) for s in sides]))
                parts.append(opts)
            for combo in product(*parts):
                arcs = {f"{prefix}r{labels[i]}": (labels[i], puncture) for i in chosen}
                tris = []
                for a2, t2 in combo:
                    arcs.update(a2)
                    tris += t2
                yield arcs, tris, []


def _ccw(sides):
    # polygon() lists (ab, bc, ac); counterclockwise traversal is ab, bc, ca
    return sides


def _assemble(n, punctures, arcs, tris, sfs) -> Triangulation:
    return Triangulation(
        n,
        punctures,
        {k: Arc(k, v) for k, v in sorted(arcs.items())},
        [Triangle(f"t{i + 1}", tuple(s)) for i, s in enumerate(tris)],
        [SelfFolded(f"s{i + 1}", lp, r) for i, (lp, r) in enumerate(sfs)],
    )


def once_punctured_triangulations(n: int):
    """Every ideal triangulation of the once-punctured n-gon (n >= 2)."""
    labels = list(range(1, n + 1))
    for arcs, tris, sfs in _region_options(labels, lambda i: segment(labels[i], n), "p", ""):
        yield _assemble(n, ("p",), arcs, tris, sfs)


def glued_twice_punctured(n: int, u: int, v: int):
    """Triangulations of the twice-punctured n-gon containing the arc ``s`` from u to v
    that separates the punctures (p on the side of u, u+1, ..., v)."""
    left = [(u - 1 + t) % n + 1 for t in range((v - u) % n + 1)]
    right = [(v - 1 + t) % n + 1 for t in range((u - v) % n + 1)]

    def edges(lab):
        return lambda i: "s" if i == len(lab) - 1 else segment(lab[i], n)

    for la, lt, ls in _region_options(left, edges(left), "p", "p"):
        for ra, rt, rs in _region_options(right, edges(right), "q", "q"):
            arcs = {"s": (u, v), **la, **ra}
            yield _assemble(n, ("p", "q"), arcs, lt + rt, ls + rs)


def loop_core_twice_punctured(n: int, u: int, core: str):
    """Triangulations with a loop ``L`` at u enclosing both punctures.

    ``core='V'``: two self-folded triangles inside L (block of type V).
    ``core='C'``: arcs a1, a2 from u to q bounding a digon around the self-folded
    triangle at p (valency-2 configuration C at q).
    """
    labels = [(u - 1 + t) % n + 1 for t in range(n)] + [u]
    b = _Builder()

    def dedge(j):
        return "L" if j == n else segment(labels[j], n)

    if core == "V":
        inner_arcs = {"l1": (u, u), "r1": (u, "p"), "l2": (u, u), "r2": (u, "q")}
        inner_tris = [("L", "l1", "l2")]
        sfs = [("l1", "r1"), ("l2", "r2")]
    elif core == "C":
        inner_arcs = {"a1": (u, "q"), "a2": (u, "q"), "lp": (u, u), "rp": (u, "p")}
        inner_tris = [("L", "a1", "a2"), ("a2", "a1", "lp")]
        sfs = [("lp", "rp")]
    else:
        raise ValueError("core must be 'C' or 'V'")
    for sides, diags in b.polygon(labels, dedge, ""):
        arcs = {"L": (u, u), **inner_arcs, **diags}
        yield _assemble(n, ("p", "q"), arcs, list(sides) + inner_tris, sfs)
