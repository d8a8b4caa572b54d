"""Relations, potentials, relation extensions and the cycle/arrow equivalences on them."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Iterator

from .quiver import (
    Arrow,
    Cycle,
    Quiver,
    Walk,
    enumerate_chordless_cycles,
    is_cyclically_oriented,
    is_triangular,
)


class PotentialError(ValueError):
    pass


class UnionFind:
    def __init__(self, items=()):
        self.parent = {x: x for x in items}

    def find(self, x):
        self.parent.setdefault(x, x)
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            self.parent[max(rx, ry)] = min(rx, ry)

    def groups(self) -> list[list]:
        out: dict = {}
        for x in self.parent:
            out.setdefault(self.find(x), []).append(x)
        return [sorted(g) for g in sorted(out.values(), key=min)]


@dataclass
class Relation:
    """Linear combination of parallel paths from ``source`` to ``target``."""

    source: object
    target: object
    terms: dict = field(default_factory=dict)  # arrow tuple -> nonzero coefficient
    name: str | None = None

    def __post_init__(self):
        self.terms = {tuple(p): c for p, c in self.terms.items() if c}

    def __bool__(self):
        return bool(self.terms)

    @property
    def min_length(self) -> int:
        return min(len(p) for p in self.terms)

    def paths(self) -> list[tuple]:
        return sorted(self.terms, key=lambda p: (len(p), p))

    def validate(self, q: Quiver, min_len: int = 2):
        if not self.terms:
            raise PotentialError(f"relation {self.name or ''} is zero")
        for p in self.terms:
            if len(p) < min_len:
                raise PotentialError(
                    f"relation {self.name or ''} has a term {'.'.join(p) or 'e'} of length < {min_len}"
                )
            path = q.path(p)
            if (path.source, path.target) != (self.source, self.target):
                raise PotentialError(f"relation {self.name or ''}: term {'.'.join(p)} is not parallel")

    def __str__(self):
        return format_terms(self.terms) or "0"

    @classmethod
    def from_terms(cls, q: Quiver, terms, name=None) -> "Relation":
        """``terms`` is an iterable of ``(coefficient, arrow tuple)``."""
        acc: dict = {}
        src = tgt = None
        for c, p in terms:
            path = q.path(p)
            if src is None:
                src, tgt = path.source, path.target
            elif (path.source, path.target) != (src, tgt):
                raise PotentialError(f"relation {name or ''}: terms are not parallel")
            acc[tuple(p)] = acc.get(tuple(p), 0) + Fraction(c)
        return cls(src, tgt, acc, name)


def format_terms(terms: dict) -> str:
    parts = []
    for p, c in sorted(terms.items(), key=lambda kv: (len(kv[0]), kv[0])):
        word = ".".join(p) if p else "e"
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        coef = "" if mag == 1 else f"{mag} "
        parts.append(f"{sign} {coef}{word}")
    s = " ".join(parts)
    return s[2:] if s.startswith("+ ") else s


class Potential:
    """Formal combination of cycles; each cyclic-shift class is stored once."""

    def __init__(self, terms=None):
        self.terms: dict[Cycle, Fraction] = {}
        for cyc, c in (terms or {}).items():
            self.add(cyc, c)

    def add(self, cycle, coef=1):
        if not isinstance(cycle, Cycle):
            cycle = Cycle(tuple(cycle))
        v = self.terms.get(cycle, 0) + coef
        if v:
            self.terms[cycle] = v
        else:
            self.terms.pop(cycle, None)

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        return isinstance(other, Potential) and self.terms == other.terms

    def cycles(self) -> list[Cycle]:
        return sorted(self.terms, key=lambda c: c.arrows)

    def arrows(self) -> set:
        return {a for c in self.terms for a in c.arrows}

    def scaled(self, factors: dict) -> "Potential":
        return Potential({c: v * factors.get(c, 1) for c, v in self.terms.items()})

    def restrict(self, cycles) -> "Potential":
        return Potential({c: self.terms[c] for c in cycles})

    def validate(self, q: Quiver):
        for c in self.terms:
            if not q.is_cycle(c.arrows):
                raise PotentialError(f"{c} is not an oriented cycle of the quiver")

    def __str__(self):
        return format_terms({c.arrows: v for c, v in self.terms.items()}) or "0"

    def __repr__(self):
        return f"Potential({self})"


@dataclass
class QP:
    quiver: Quiver
    potential: Potential
    relations: list = field(default_factory=list)  # relations of C when built by extension

    def __post_init__(self):
        self.potential.validate(self.quiver)

    @property
    def new_arrow_names(self) -> list[str]:
        return [a.name for a in self.quiver.new_arrows]


def relation_extension(q: Quiver, relations: list[Relation], names=None) -> QP:
    """Add a new arrow ``x -> y`` for every relation ``y ~> x`` and form the Keller potential."""
    if q.new_arrows:
        raise PotentialError("the input quiver must consist of old arrows only")
    if not is_triangular(q):
        raise PotentialError("relation extension needs a triangular (acyclic) quiver")
    arrows = list(q.arrows)
    W = Potential()
    used = set(q.arrow_names)
    for i, rho in enumerate(relations):
        rho.validate(q, min_len=2)
        name = (names[i] if names else None) or rho.name or f"new{i + 1}"
        if name in used:
            name = f"{name}'"
            while name in used:
                name += "'"
        used.add(name)
        arrows.append(Arrow(name, rho.target, rho.source, True))
        for p, c in rho.terms.items():
            W.add((name,) + p, c)
    return QP(Quiver(q.vertices, tuple(arrows)), W, list(relations))


def cyclic_derivative(W: Potential, beta: str, q: Quiver | None = None) -> Relation:
    """Sum over occurrences of ``beta`` of the rotated remainder of each cycle."""
    acc: dict = {}
    src = tgt = None
    for cyc, c in W.terms.items():
        arr = cyc.arrows
        for i, a in enumerate(arr):
            if a != beta:
                continue
            rest = arr[i + 1 :] + arr[:i]
            acc[rest] = acc.get(rest, 0) + c
    acc = {p: c for p, c in acc.items() if c}
    if q is not None:
        b = q.arrow(beta)
        src, tgt = b.target, b.source
    return Relation(src, tgt, acc, f"d_{beta}")


@dataclass
class JacobianRelation:
    arrow: str
    relation: Relation

    @property
    def has_linear_terms(self) -> bool:
        return any(len(p) < 2 for p in self.relation.terms)


def jacobian_relations(qp: QP) -> list[JacobianRelation]:
    out = []
    for a in qp.quiver.arrow_names:
        r = cyclic_derivative(qp.potential, a, qp.quiver)
        if r:
            out.append(JacobianRelation(a, r))
    return out


# ---------------------------------------------------------------------------
# equivalences


def cycle_equivalence_classes(W: Potential) -> list[list[Cycle]]:
    """Classes of the transitive closure of 'shares an arrow'; ``len`` of the result is N_W."""
    uf = UnionFind()
    owner: dict = {}
    for cyc in W.cycles():
        uf.find(cyc.arrows)
        for a in cyc.arrows:
            if a in owner:
                uf.union(owner[a], cyc.arrows)
            else:
                owner[a] = cyc.arrows
    return [[Cycle(c) for c in g] for g in uf.groups()]


def potential_invariant(W: Potential) -> int:
    return len(cycle_equivalence_classes(W))


def direct_decomposition(W: Potential) -> list[Potential]:
    return [W.restrict(cls) for cls in cycle_equivalence_classes(W)]


def arrow_equivalence_classes(qp: QP) -> list[list[str]]:
    """Classes of new arrows linked through a common derivative by an old arrow."""
    new = set(qp.new_arrow_names)
    for cyc in qp.potential.cycles():
        k = sum(1 for a in cyc.arrows if a in new)
        if k != 1:
            raise PotentialError(
                f"cycle {cyc} carries {k} new arrows; each potential cycle must contain exactly one"
            )
    uf = UnionFind(sorted(new))
    for a in qp.quiver.old_arrows:
        rho = cyclic_derivative(qp.potential, a.name)
        hits = sorted({b for p in rho.terms for b in p if b in new})
        for b in hits[1:]:
            uf.union(hits[0], b)
    return uf.groups()


def relation_invariant(qp: QP) -> int:
    return len(arrow_equivalence_classes(qp))


def chordless_potential(q: Quiver) -> Potential:
    """Sum of all chordless cycles, each with coefficient 1 (cyclically oriented quivers only)."""
    if not is_cyclically_oriented(q):
        raise PotentialError("quiver is not cyclically oriented")
    W = Potential()
    for c in enumerate_chordless_cycles(q):
        W.add(c.cycle(), 1)
    return W


def admissible_cuts(q: Quiver) -> Iterator[frozenset]:
    """Arrow sets meeting every chordless oriented cycle exactly once."""
    cycles = [set(c.arrows) for c in enumerate_chordless_cycles(q) if c.oriented]
    cycles.sort(key=len)

    def search(i, chosen, covered):
        if i == len(cycles):
            yield frozenset(chosen)
            return
        hit = cycles[i] & chosen
        if len(hit) > 1:
            return
        if len(hit) == 1:
            yield from search(i + 1, chosen, covered)
            return
        for a in sorted(cycles[i]):
            # a must not land in an already-satisfied cycle
            if any(a in cycles[j] for j in range(i)):
                continue
            yield from search(i + 1, chosen | {a}, covered)

    yield from search(0, frozenset(), None)


# ---------------------------------------------------------------------------
# C-sequential walks


def _letters_of_path(p, sign):
    return [(a, sign) for a in (p if sign > 0 else reversed(p))]


def _is_reduced(letters) -> bool:
    return all(not (a == b and s == -t) for (a, s), (b, t) in zip(letters, letters[1:]))


def _contains_branch(letters, branches) -> bool:
    for sign in (1, -1):
        seq = [a for a, s in letters] if sign > 0 else [a for a, s in reversed(letters)]
        ok = [s == sign for a, s in letters] if sign > 0 else [s == sign for a, s in reversed(letters)]
        for br in branches:
            n = len(br)
            for i in range(len(seq) - n + 1):
                if all(ok[i : i + n]) and tuple(seq[i : i + n]) == br:
                    return True
    return False


def detect_c_sequential_walks(qp: QP, cap: int | None = None) -> list[Walk]:
    """Walks ``alpha w' beta`` through old arrows witnessing a C-sequential configuration.

    The middle walk ``w'`` is reduced, made of old arrows, contains no branch of
    any relation (in either direction), and for every branch ``u`` of the
    relation of ``alpha`` and ``v`` of the relation of ``beta`` the walk
    obtained by replacing the new arrows by those branches stays reduced.
    """
    q = qp.quiver
    if cap is None:
        cap = 2 * len(q.arrows)
    rel_of: dict = {}
    new_names = qp.new_arrow_names
    for name in new_names:
        rho = cyclic_derivative(qp.potential, name, q)
        rel_of[name] = [p for p in rho.terms]
    branches = {p for rho in qp.relations for p in rho.terms}
    branches |= {p for ps in rel_of.values() for p in ps}
    old = q.old_arrows
    adj: dict = {v: [] for v in q.vertices}
    for a in old:
        adj[a.source].append((a.name, 1, a.target))
        adj[a.target].append((a.name, -1, a.source))

    def middle_walks(start, end):
        stack = [(start, [])]
        while stack:
            v, letters = stack.pop()
            if v == end:
                yield letters
            if len(letters) >= cap:
                continue
            for name, s, w in adj[v]:
                nxt = letters + [(name, s)]
                if letters and letters[-1] == (name, -s):
                    continue
                if _contains_branch(nxt, branches):
                    continue
                stack.append((w, nxt))

    found = []
    for alpha, beta in product(new_names, repeat=2):
        A, B = q.arrow(alpha), q.arrow(beta)
        for sign in (1, -1):
            start = A.target if sign > 0 else A.source
            end = B.source if sign > 0 else B.target
            for mid in middle_walks(start, end):
                good = True
                for u in rel_of[alpha]:
                    for v in rel_of[beta]:
                        # alpha^sign is homotopic to u^-sign
                        letters = _letters_of_path(u, -sign) + mid + _letters_of_path(v, -sign)
                        if not _is_reduced(letters):
                            good = False
                            break
                    if not good:
                        break
                if good:
                    found.append(Walk(((alpha, sign),) + tuple(mid) + ((beta, sign),)))
    return found
