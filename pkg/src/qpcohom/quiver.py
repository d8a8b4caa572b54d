"""Quivers, paths, cycles, walks and the graph-theoretic predicates used downstream.

Composition convention: the path ``(a, b)`` traverses ``a`` first, then ``b``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator


class QuiverError(ValueError):
    """Structural problem with a quiver or a path on it."""


class LoopError(QuiverError):
    """A loop was met by an operation whose hypotheses exclude loops."""


@dataclass(frozen=True)
class Arrow:
    name: str
    source: object
    target: object
    new: bool = False

    @property
    def kind(self) -> str:
        return "new" if self.new else "old"


@dataclass(frozen=True)
class Path:
    source: object
    target: object
    arrows: tuple = ()

    def __len__(self):
        return len(self.arrows)

    def __str__(self):
        return ".".join(self.arrows) if self.arrows else f"e{self.source}"


@dataclass(frozen=True)
class Cycle:
    """Oriented cycle stored in its least rotation, so equality is up to cyclic permutation."""

    arrows: tuple

    def __post_init__(self):
        if not self.arrows:
            raise QuiverError("a cycle needs at least one arrow")
        object.__setattr__(self, "arrows", canonical_rotation(self.arrows))

    def __len__(self):
        return len(self.arrows)

    def __str__(self):
        return ".".join(self.arrows)

    def rotations(self) -> Iterator[tuple]:
        n = len(self.arrows)
        for i in range(n):
            yield self.arrows[i:] + self.arrows[:i]


def canonical_rotation(arrows: Iterable[str]) -> tuple:
    arrows = tuple(arrows)
    return min(arrows[i:] + arrows[:i] for i in range(len(arrows)))


@dataclass(frozen=True)
class Walk:
    """Sequence of ``(arrow, +1 | -1)``; -1 means the arrow is traversed backwards."""

    steps: tuple

    @property
    def reduced(self) -> bool:
        return all(
            not (a == b and s == -t)
            for (a, s), (b, t) in zip(self.steps, self.steps[1:])
        )

    def __str__(self):
        return " ".join(a if s > 0 else f"{a}^-1" for a, s in self.steps)


@dataclass(frozen=True)
class ChordlessCycle:
    vertices: tuple  # cyclic vertex sequence
    arrows: tuple  # arrows realising consecutive pairs (vertices[i], vertices[i+1])
    oriented: bool

    def cycle(self) -> Cycle:
        if not self.oriented:
            raise QuiverError("non-oriented chordless cycle has no potential cycle")
        return Cycle(self.arrows)


@dataclass(frozen=True)
class Quiver:
    vertices: tuple
    arrows: tuple = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "arrows", tuple(self.arrows))
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise QuiverError("arrow names must be unique")
        if len(set(self.vertices)) != len(self.vertices):
            raise QuiverError("vertex ids must be unique")
        vs = set(self.vertices)
        for a in self.arrows:
            if a.source not in vs or a.target not in vs:
                raise QuiverError(f"arrow {a.name} has an undeclared endpoint")
        object.__setattr__(self, "_by_name", {a.name: a for a in self.arrows})

    @classmethod
    def from_arrows(cls, vertices, arrows, new=()) -> "Quiver":
        """``arrows`` is an iterable of ``(name, source, target)``."""
        new = set(new)
        return cls(tuple(vertices), tuple(Arrow(n, s, t, n in new) for n, s, t in arrows))

    def arrow(self, name: str) -> Arrow:
        try:
            return self._by_name[name]
        except KeyError:
            raise QuiverError(f"unknown arrow {name!r}") from None

    def __contains__(self, name):
        return name in self._by_name

    @property
    def arrow_names(self) -> tuple:
        return tuple(a.name for a in self.arrows)

    @property
    def old_arrows(self) -> tuple:
        return tuple(a for a in self.arrows if not a.new)

    @property
    def new_arrows(self) -> tuple:
        return tuple(a for a in self.arrows if a.new)

    def out_arrows(self, v) -> list:
        return [a for a in self.arrows if a.source == v]

    def has_loops(self) -> bool:
        return any(a.source == a.target for a in self.arrows)

    def require_loop_free(self):
        loops = [a.name for a in self.arrows if a.source == a.target]
        if loops:
            raise LoopError(f"loops are not supported here: {', '.join(loops)}")

    def subquiver(self, keep_arrows) -> "Quiver":
        keep = set(keep_arrows)
        return Quiver(self.vertices, tuple(a for a in self.arrows if a.name in keep))

    def without_arrows(self, drop) -> "Quiver":
        drop = set(drop)
        return Quiver(self.vertices, tuple(a for a in self.arrows if a.name not in drop))

    def path(self, arrows) -> Path:
        arrows = tuple(arrows)
        if not arrows:
            raise QuiverError("use stationary() for length-0 paths")
        objs = [self.arrow(a) for a in arrows]
        for x, y in zip(objs, objs[1:]):
            if x.target != y.source:
                raise QuiverError(f"arrows {x.name} and {y.name} do not compose")
        return Path(objs[0].source, objs[-1].target, arrows)

    def stationary(self, v) -> Path:
        return Path(v, v, ())

    def is_cycle(self, arrows) -> bool:
        try:
            p = self.path(arrows)
        except QuiverError:
            return False
        return p.source == p.target

    def paths_of_length(self, n: int) -> list[Path]:
        if n == 0:
            return [self.stationary(v) for v in self.vertices]
        out = [Path(a.source, a.target, (a.name,)) for a in self.arrows]
        for _ in range(n - 1):
            out = [
                Path(p.source, a.target, p.arrows + (a.name,))
                for p in out
                for a in self.arrows
                if a.source == p.target
            ]
        return out


# ---------------------------------------------------------------------------
# predicates


def has_oriented_cycle(vertices, arrows) -> bool:
    succ = {v: [] for v in vertices}
    for a in arrows:
        succ[a.source].append(a.target)
    state = {v: 0 for v in vertices}

    def visit(v):
        state[v] = 1
        for w in succ[v]:
            if state[w] == 1 or (state[w] == 0 and visit(w)):
                return True
        state[v] = 2
        return False

    return any(state[v] == 0 and visit(v) for v in vertices)


def is_triangular(q: Quiver) -> bool:
    """No oriented cycle made of old arrows."""
    return not has_oriented_cycle(q.vertices, q.old_arrows)


def _edges_between(q: Quiver):
    between: dict = {}
    for a in q.arrows:
        if a.source == a.target:
            continue
        key = frozenset((a.source, a.target))
        between.setdefault(key, []).append(a)
    return between


def _make_chordless(q, vseq, between) -> ChordlessCycle:
    if len(vseq) == 2:
        a, b = between[frozenset(vseq)]
        x, y = vseq
        if a.source == b.target:
            first, second = (a, b) if a.source == x else (b, a)
            return ChordlessCycle((x, y), (first.name, second.name), True)
        return ChordlessCycle((x, y), (a.name, b.name), False)
    arrows = []
    forward = backward = True
    t = len(vseq)
    for i in range(t):
        u, v = vseq[i], vseq[(i + 1) % t]
        (a,) = between[frozenset((u, v))]
        arrows.append(a.name)
        forward &= a.source == u
        backward &= a.source == v
    if backward and not forward:
        vseq = (vseq[0],) + tuple(reversed(vseq[1:]))
        arrows = [between[frozenset((vseq[i], vseq[(i + 1) % t]))][0].name for i in range(t)]
    return ChordlessCycle(tuple(vseq), tuple(arrows), forward or backward)


def enumerate_chordless_cycles(q: Quiver) -> list[ChordlessCycle]:
    """All chordless cycles of ``q``; loops are ignored.

    A pair of vertices joined by exactly two arrows is a chordless 2-cycle.
    Longer cycles are found by growing induced paths from their least vertex.
    """
    between = _edges_between(q)
    order = {v: i for i, v in enumerate(q.vertices)}
    nbrs = {v: set() for v in q.vertices}
    for key in between:
        u, v = tuple(key)
        nbrs[u].add(v)
        nbrs[v].add(u)
    simple = {k for k, arr in between.items() if len(arr) == 1}

    def single(u, v):
        return frozenset((u, v)) in simple

    found = []
    for key, arr in between.items():
        if len(arr) == 2:
            u, v = sorted(key, key=order.get)
            found.append((u, v))

    for s in q.vertices:
        start_rank = order[s]

        def extend(path):
            last = path[-1]
            for w in nbrs[last]:
                if order[w] <= start_rank or w in path or not single(last, w):
                    continue
                # w may touch only `last` among interior vertices
                if any(x in nbrs[w] for x in path[1:-1]):
                    continue
                if len(path) >= 2 and s in nbrs[w]:
                    if single(s, w) and order[path[1]] < order[w]:
                        found.append(tuple(path) + (w,))
                    continue
                extend(path + [w])

        extend([s])
    out = [_make_chordless(q, vseq, between) for vseq in found]
    return sorted(out, key=lambda c: (len(c.vertices), [order[v] for v in c.vertices], c.arrows))


def chordless_vertex_sets_bruteforce(q: Quiver) -> set:
    """Reference enumeration: test every vertex subset for being topologically a cycle."""
    between = _edges_between(q)
    result = set()
    for k in range(2, len(q.vertices) + 1):
        for subset in combinations(q.vertices, k):
            sset = set(subset)
            edges = [(key, arr) for key, arr in between.items() if key <= sset]
            if k == 2:
                if len(edges) == 1 and len(edges[0][1]) == 2:
                    result.add(frozenset(subset))
                continue
            if len(edges) != k or any(len(arr) != 1 for _, arr in edges):
                continue
            deg = {v: 0 for v in subset}
            for key, _ in edges:
                for v in key:
                    deg[v] += 1
            if any(d != 2 for d in deg.values()):
                continue
            # connected 2-regular graph on k vertices
            seen, stack = set(), [subset[0]]
            while stack:
                v = stack.pop()
                if v in seen:
                    continue
                seen.add(v)
                stack.extend(w for key, _ in edges if v in key for w in key)
            if seen == sset:
                result.add(frozenset(subset))
    return result


def is_cyclically_oriented(q: Quiver) -> bool:
    """Every chordless cycle is oriented.

    Three or more arrows between one pair always contain two parallel ones,
    which form a non-oriented cycle even though no chordless cycle is listed.
    """
    if any(len(arr) > 2 for arr in _edges_between(q).values()):
        return False
    return all(c.oriented for c in enumerate_chordless_cycles(q))


def find_double_arrows(q: Quiver) -> list[tuple]:
    out = []
    for a, b in combinations(q.arrows, 2):
        if a.source == b.source and a.target == b.target:
            out.append((a.name, b.name))
    return out


class PathCapExceeded(QuiverError):
    pass


@dataclass(frozen=True)
class Bypass:
    arrow: str
    path: tuple

    @property
    def proper(self) -> bool:
        return len(self.path) >= 2


def find_bypasses(q: Quiver, cap: int | None = None) -> list[Bypass]:
    """Pairs (arrow, path) with the path parallel to the arrow and not using it.

    Paths are explored up to ``cap`` arrows (default: number of vertices).
    Hitting the cap is an error when the old arrows carry an oriented cycle,
    since then the search would not be exhaustive.
    """
    if cap is None:
        cap = len(q.vertices)
    old_cyclic = has_oriented_cycle(q.vertices, q.old_arrows)
    out = []
    for alpha in q.arrows:
        stack = [(alpha.source, ())]
        while stack:
            v, p = stack.pop()
            if p and v == alpha.target:
                out.append(Bypass(alpha.name, p))
            for a in q.out_arrows(v):
                if a.name == alpha.name:
                    continue
                if len(p) >= cap:
                    if old_cyclic:
                        raise PathCapExceeded(f"bypass search for {alpha.name} reached cap {cap}")
                    continue
                stack.append((a.target, p + (a.name,)))
    return sorted(out, key=lambda b: (b.arrow, len(b.path), b.path))


def inner_arrows(q: Quiver) -> set:
    """Arrows lying on at least two distinct chordless cycles."""
    count: dict = {}
    for c in enumerate_chordless_cycles(q):
        for a in set(c.arrows):
            count[a] = count.get(a, 0) + 1
    return {a for a, n in count.items() if n >= 2}
