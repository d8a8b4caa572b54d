"""Finite-dimensional bound quiver algebras over exact scalars.

``build_algebra`` realises ``kQ/I`` by truncating the path algebra at a length
``L``, closing the relations to a two-sided ideal inside the truncation and
increasing ``L`` until every path of length ``L - 1`` lies in the ideal.  The
normal-form basis keeps the shortest (then lexicographically last) paths.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Callable

from .linalg import Echelon, axpy, kernel, rank, rationals
from .potential import JacobianRelation, QP, Relation, jacobian_relations
from .quiver import Path, Quiver


class NotFiniteDimensional(RuntimeError):
    """The ideal did not stabilise below the length cap."""


class InvalidRelation(ValueError):
    pass


class ExtensionError(ValueError):
    pass


def _key(p: Path):
    return (-len(p.arrows), p.arrows) if p.arrows else (0, (), p.source)


@dataclass
class FiniteDimAlgebra:
    quiver: Quiver
    basis: list  # of Path
    table: dict  # (i, j) -> {k: c}, only nonzero products
    relations: list  # defining relations (Relation)
    field: Callable = rationals
    truncation: int = 0
    _reducers: dict = dc_field(default_factory=dict, repr=False)

    def __post_init__(self):
        self.index = {(p.source, p.target, p.arrows): i for i, p in enumerate(self.basis)}
        self.arrow_vec = {a.name: self.path_element((a.name,)) for a in self.quiver.arrows}

    @property
    def dim(self) -> int:
        return len(self.basis)

    def grade(self, i):
        p = self.basis[i]
        return (p.source, p.target)

    def graded_dims(self) -> dict:
        out: dict = {}
        for p in self.basis:
            out[(p.source, p.target)] = out.get((p.source, p.target), 0) + 1
        return out

    def idempotent(self, v) -> dict:
        return {self.index[(v, v, ())]: self.field(1)}

    def one(self) -> dict:
        return {self.index[(v, v, ())]: self.field(1) for v in self.quiver.vertices}

    def path_element(self, arrows) -> dict:
        """Coordinates of the class of a path (given by its arrow tuple)."""
        arrows = tuple(arrows)
        if not arrows:
            raise ValueError("use idempotent() for stationary paths")
        p = self.quiver.path(arrows)
        return self._normal_form({_key(p): self.field(1)}, p.source, p.target)

    def element(self, terms: dict) -> dict:
        """Coordinates of a linear combination ``{arrow tuple: coefficient}``."""
        out: dict = {}
        for arrows, c in terms.items():
            axpy(out, self.field(c), self.path_element(arrows))
        return out

    def _normal_form(self, vec, s, t) -> dict:
        if vec and min(k[0] for k in vec) <= -self.truncation:
            vec = {k: c for k, c in vec.items() if k[0] > -self.truncation}
        ech = self._reducers.get((s, t))
        if ech is not None:
            vec = ech.reduce(vec)
        out = {}
        for k, c in vec.items():
            arrows = k[1]
            out[self.index[(s, t, arrows)]] = c
        return out

    def mul(self, x: dict, y: dict) -> dict:
        out: dict = {}
        for i, a in x.items():
            for j, b in y.items():
                prod = self.table.get((i, j))
                if prod:
                    axpy(out, a * b, prod)
        return out

    def is_associative(self, triples=None) -> bool:
        n = self.dim
        if triples is None:
            triples = ((i, j, k) for i in range(n) for j in range(n) for k in range(n))
        for i, j, k in triples:
            x, y, z = {i: 1}, {j: 1}, {k: 1}
            if self.mul(self.mul(x, y), z) != self.mul(x, self.mul(y, z)):
                return False
        return True

    def radical_basis(self) -> list[int]:
        return [i for i, p in enumerate(self.basis) if p.arrows]

    def regular_bimodule(self) -> "Bimodule":
        return regular_bimodule(self)


def _relation_vectors(rels, q: Quiver, field):
    out = []
    for r in rels:
        if isinstance(r, JacobianRelation):
            r = r.relation
        if not r.terms:
            continue
        vec = {}
        src = tgt = None
        for arrows, c in r.terms.items():
            if len(arrows) == 0:
                raise InvalidRelation(f"relation {r} has a stationary term")
            try:
                p = q.path(arrows)
            except Exception as exc:
                raise InvalidRelation(str(exc)) from None
            if src is None:
                src, tgt = p.source, p.target
            elif (p.source, p.target) != (src, tgt):
                raise InvalidRelation(f"relation {r} is not homogeneous in its endpoints")
            vec[_key(p)] = field(c)
        out.append(((src, tgt), vec, r))
    return out


def build_algebra(q: Quiver, rels, max_len: int | None = None, field=rationals) -> FiniteDimAlgebra:
    """Normal-form basis and multiplication table of ``kQ/<rels>``.

    Raises ``NotFiniteDimensional`` when the ideal has not absorbed all paths of
    some length ``<= max_len`` (default ``2 * |Q0|``).
    """
    if max_len is None:
        max_len = max(2 * len(q.vertices), 2)
    gens = _relation_vectors(rels, q, field)
    relations = [g[2] for g in gens]
    by_target: dict = {}
    by_source: dict = {}
    for a in q.arrows:
        by_target.setdefault(a.target, []).append(a)
        by_source.setdefault(a.source, []).append(a)

    for L in range(2, max_len + 2):
        blocks: dict = {}
        queue = []

        def insert(block, vec):
            vec = {k: c for k, c in vec.items() if k[0] > -L}
            if not vec:
                return
            ech = blocks.setdefault(block, Echelon())
            if ech.add(vec):
                queue.append((block, vec))

        for block, vec, _ in gens:
            insert(block, vec)
        while queue:
            (s, t), vec = queue.pop()
            for a in by_target.get(s, ()):
                insert((a.source, t), {(k[0] - 1, (a.name,) + k[1]): c for k, c in vec.items()})
            for a in by_source.get(t, ()):
                insert((s, a.target), {(k[0] - 1, k[1] + (a.name,)): c for k, c in vec.items()})
        top = q.paths_of_length(L - 1)
        if all(
            (p.source, p.target) in blocks and blocks[(p.source, p.target)].contains({_key(p): 1})
            for p in top
        ):
            break
    else:
        raise NotFiniteDimensional(f"ideal did not stabilise for path length <= {max_len}")

    basis = [q.stationary(v) for v in q.vertices]
    for n in range(1, L - 1):
        for p in q.paths_of_length(n):
            ech = blocks.get((p.source, p.target))
            if ech is None or _key(p) not in ech.rows:
                basis.append(p)
    alg = FiniteDimAlgebra(q, basis, {}, relations, field, L, blocks)
    table = {}
    one = field(1)
    for i, p in enumerate(basis):
        for j, r in enumerate(basis):
            if p.target != r.source:
                continue
            arrows = p.arrows + r.arrows
            if not arrows:
                table[(i, j)] = {i: one}
                continue
            if len(arrows) >= L:
                continue
            prod = alg._normal_form({(-len(arrows), arrows): one}, p.source, r.target)
            if prod:
                table[(i, j)] = prod
    alg.table = table
    return alg


def path_algebra(q: Quiver, max_len=None, field=rationals) -> FiniteDimAlgebra:
    return build_algebra(q, [], max_len, field)


def jacobian_algebra(qp: QP, max_len: int | None = None, field=rationals) -> FiniteDimAlgebra:
    return build_algebra(qp.quiver, jacobian_relations(qp), max_len, field)


# ---------------------------------------------------------------------------
# bimodules


@dataclass
class Bimodule:
    """Graded bimodule over a quiver algebra, given by arrow actions on a basis.

    ``left[a][m]`` is ``a . m`` and ``right[a][m]`` is ``m . a`` for basis index
    ``m``; missing entries act as zero.  ``grades[m] = (i, j)`` places ``m`` in
    ``e_i M e_j``.
    """

    grades: list
    left: dict
    right: dict
    arrows: dict  # acting arrow name -> (source, target)
    labels: list = dc_field(default_factory=list)

    @property
    def dim(self) -> int:
        return len(self.grades)

    def graded_dims(self) -> dict:
        out: dict = {}
        for g in self.grades:
            out[g] = out.get(g, 0) + 1
        return out

    def act_left(self, a, vec: dict) -> dict:
        out: dict = {}
        act = self.left.get(a, {})
        for m, c in vec.items():
            img = act.get(m)
            if img:
                axpy(out, c, img)
        return out

    def act_right(self, vec: dict, a) -> dict:
        out: dict = {}
        act = self.right.get(a, {})
        for m, c in vec.items():
            img = act.get(m)
            if img:
                axpy(out, c, img)
        return out

    def left_path(self, arrows, vec: dict) -> dict:
        for a in reversed(arrows):
            if not vec:
                break
            vec = self.act_left(a, vec)
        return vec

    def right_path(self, vec: dict, arrows) -> dict:
        for a in arrows:
            if not vec:
                break
            vec = self.act_right(vec, a)
        return vec

    def left_idempotent(self, v, vec):
        return {m: c for m, c in vec.items() if self.grades[m][0] == v}

    def right_idempotent(self, vec, v):
        return {m: c for m, c in vec.items() if self.grades[m][1] == v}

    def act_left_path(self, p: Path, vec):
        if not p.arrows:
            return self.left_idempotent(p.source, vec)
        return self.left_path(p.arrows, vec)

    def act_right_path(self, vec, p: Path):
        if not p.arrows:
            return self.right_idempotent(vec, p.source)
        return self.right_path(vec, p.arrows)

    def restrict_scalars(self, arrow_names) -> "Bimodule":
        """Same space, acted on only by the given arrows (a subalgebra's generators)."""
        keep = set(arrow_names)
        return Bimodule(
            self.grades,
            {a: v for a, v in self.left.items() if a in keep},
            {a: v for a, v in self.right.items() if a in keep},
            {a: st for a, st in self.arrows.items() if a in keep},
            self.labels,
        )

    def is_compatible(self) -> bool:
        """(a m) b == a (m b) on every basis element and arrow pair."""
        for m in range(self.dim):
            for a in self.arrows:
                for b in self.arrows:
                    x = self.act_right(self.act_left(a, {m: 1}), b)
                    y = self.act_left(a, self.act_right({m: 1}, b))
                    if x != y:
                        return False
        return True

    def submodule(self, vectors) -> "Bimodule":
        """Sub-bimodule generated by ``vectors`` (each homogeneous)."""
        by_grade: dict = {}
        queue = []

        def push(vec):
            if not vec:
                return
            g = self.grades[next(iter(vec))]
            ech = by_grade.setdefault(g, Echelon())
            if ech.add(vec):
                queue.append(vec)

        for v in vectors:
            for g in {self.grades[m] for m in v}:
                push({m: c for m, c in v.items() if self.grades[m] == g})
        while queue:
            v = queue.pop()
            for a in self.arrows:
                push(self.act_left(a, v))
                push(self.act_right(v, a))
        rows = []
        for g in sorted(by_grade, key=repr):
            for piv, (row, _) in sorted(by_grade[g].rows.items()):
                rows.append((g, piv, row))
        return _subspace_bimodule(self, rows, by_grade)

    def embedding(self) -> list:
        return getattr(self, "_embedding", [])


def _coordinates(ech: Echelon, vec: dict) -> dict:
    vec = dict(vec)
    coords: dict = {}
    while vec:
        hits = [k for k in vec if k in ech.rows]
        if len(hits) != len(vec):
            raise ValueError("vector is not in the subspace")
        k = min(hits)
        c = vec[k]
        row, _ = ech.rows[k]
        axpy(vec, -c, row)
        coords[k] = coords.get(k, 0) + c
    return coords


def _subspace_bimodule(M: Bimodule, rows, by_grade) -> Bimodule:
    pos = {(g, piv): i for i, (g, piv, _) in enumerate(rows)}
    grades = [g for g, _, _ in rows]

    def coords(vec):
        if not vec:
            return {}
        g = M.grades[next(iter(vec))]
        return {pos[(g, k)]: c for k, c in _coordinates(by_grade[g], vec).items() if c}

    left = {a: {} for a in M.arrows}
    right = {a: {} for a in M.arrows}
    for i, (g, piv, row) in enumerate(rows):
        for a in M.arrows:
            x = coords(M.act_left(a, row))
            if x:
                left[a][i] = x
            y = coords(M.act_right(row, a))
            if y:
                right[a][i] = y
    sub = Bimodule(grades, left, right, dict(M.arrows))
    sub._embedding = [row for _, _, row in rows]
    return sub


def regular_bimodule(A: FiniteDimAlgebra) -> Bimodule:
    left = {a: {} for a in A.arrow_vec}
    right = {a: {} for a in A.arrow_vec}
    for a, av in A.arrow_vec.items():
        for m in range(A.dim):
            x = A.mul(av, {m: 1})
            if x:
                left[a][m] = x
            y = A.mul({m: 1}, av)
            if y:
                right[a][m] = y
    arrows = {a.name: (a.source, a.target) for a in A.quiver.arrows}
    return Bimodule([A.grade(i) for i in range(A.dim)], left, right, arrows, [str(p) for p in A.basis])


def bimodule_hom(M: Bimodule, N: Bimodule, arrows=None) -> tuple[int, list]:
    """Graded maps ``M -> N`` commuting with the left and right action of every arrow.

    Returns the dimension and a basis; each basis map is ``{(n, m): coef}``
    meaning basis vector ``m`` of M contributes ``coef * n`` of N.
    """
    if arrows is None:
        arrows = sorted(set(M.arrows) & set(N.arrows))
    n_by_grade: dict = {}
    for k, g in enumerate(N.grades):
        n_by_grade.setdefault(g, []).append(k)
    unknowns = [(k, l) for l, g in enumerate(M.grades) for k in n_by_grade.get(g, ())]
    col = {u: {} for u in unknowns}

    def bump(u, key, c):
        d = col[u]
        v = d.get(key, 0) + c
        if v:
            d[key] = v
        else:
            d.pop(key, None)

    for a in arrows:
        for side in ("L", "R"):
            for l in range(M.dim):
                img = M.act_left(a, {l: 1}) if side == "L" else M.act_right({l: 1}, a)
                # phi(a m_l) component k  ->  + img[l'] * x[k, l']
                for lp, c in img.items():
                    for k in n_by_grade.get(M.grades[lp], ()):
                        bump((k, lp), (a, side, k, l), c)
            for k, l in unknowns:
                img = N.act_left(a, {k: 1}) if side == "L" else N.act_right({k: 1}, a)
                # a phi(m_l) component k''  ->  - img[k''] * x[k, l]
                for kk, c in img.items():
                    bump((k, l), (a, side, kk, l), -c)
    columns = [col[u] for u in unknowns]
    ker = kernel(columns)
    maps = [{unknowns[i]: c for i, c in v.items()} for v in ker]
    return len(maps), maps


# ---------------------------------------------------------------------------
# split extensions


@dataclass
class SplitExtension:
    B: FiniteDimAlgebra
    C: FiniteDimAlgebra
    E: Bimodule  # as a B-bimodule; use .restrict_scalars for the C-structure
    E_indices: list  # basis indices of B spanning E
    C_indices: list

    @property
    def E_over_C(self) -> Bimodule:
        return self.E.restrict_scalars([a.name for a in self.C.quiver.arrows])


def split_extension(B: FiniteDimAlgebra, new_arrows=None) -> SplitExtension:
    """Split ``B = C + E`` where E is spanned by basis paths through a new arrow."""
    q = B.quiver
    if new_arrows is None:
        new_arrows = [a.name for a in q.new_arrows]
    new = set(new_arrows)
    E_idx = [i for i, p in enumerate(B.basis) if new & set(p.arrows)]
    C_idx = [i for i, p in enumerate(B.basis) if not new & set(p.arrows)]
    Eset, Cset = set(E_idx), set(C_idx)
    for i in E_idx:
        for j in E_idx:
            if B.table.get((i, j)):
                raise ExtensionError(
                    f"E^2 != 0: {B.basis[i]} * {B.basis[j]} survives; not a relation extension"
                )
    for (i, j), prod in B.table.items():
        if i in Cset and j in Cset and any(k in Eset for k in prod):
            raise ExtensionError("product of old paths produced a new-arrow term")
        if (i in Eset or j in Eset) and any(k in Cset for k in prod):
            raise ExtensionError("E is not an ideal of B")
    # C
    old_q = q.without_arrows(new)
    c_pos = {i: n for n, i in enumerate(C_idx)}
    c_table = {}
    for (i, j), prod in B.table.items():
        if i in Cset and j in Cset:
            c_table[(c_pos[i], c_pos[j])] = {c_pos[k]: v for k, v in prod.items()}
    c_rels = []
    for r in B.relations:
        terms = {p: c for p, c in r.terms.items() if not new & set(p)}
        if terms:
            c_rels.append(Relation(r.source, r.target, terms, r.name))
    C = FiniteDimAlgebra.__new__(FiniteDimAlgebra)
    C.quiver = old_q
    C.basis = [B.basis[i] for i in C_idx]
    C.table = c_table
    C.relations = c_rels
    C.field = B.field
    C.truncation = B.truncation
    C._reducers = {}
    C.index = {(p.source, p.target, p.arrows): n for n, p in enumerate(C.basis)}
    C.arrow_vec = {}
    for a in old_q.arrows:
        v = B.arrow_vec[a.name]
        if any(k in Eset for k in v):
            raise ExtensionError(f"old arrow {a.name} reduces to a new-arrow term")
        C.arrow_vec[a.name] = {c_pos[k]: c for k, c in v.items()}
    # E as B-bimodule
    e_pos = {i: n for n, i in enumerate(E_idx)}
    regB = regular_bimodule(B)
    left = {a: {} for a in regB.arrows}
    right = {a: {} for a in regB.arrows}
    for a in regB.arrows:
        for i in E_idx:
            x = regB.left[a].get(i)
            if x:
                left[a][e_pos[i]] = {e_pos[k]: c for k, c in x.items()}
            y = regB.right[a].get(i)
            if y:
                right[a][e_pos[i]] = {e_pos[k]: c for k, c in y.items()}
    E = Bimodule(
        [B.grade(i) for i in E_idx], left, right, dict(regB.arrows), [str(B.basis[i]) for i in E_idx]
    )
    return SplitExtension(B, C, E, E_idx, C_idx)


def bimodule_summands_from_potential(ext: SplitExtension, decomposition) -> list[Bimodule]:
    """Sub-C-bimodules of E generated by the new arrows of each summand of W.

    Raises ``ExtensionError`` unless the summands form a direct sum equal to E.
    """
    E = ext.E_over_C
    new = {a.name for a in ext.B.quiver.new_arrows}
    pos = {i: n for n, i in enumerate(ext.E_indices)}
    out = []
    for W_i in decomposition:
        gens = []
        for a in sorted(W_i.arrows() & new):
            v = ext.B.arrow_vec[a]
            gens.append({pos[k]: c for k, c in v.items()})
        out.append(E.submodule(gens))
    total = sum(S.dim for S in out)
    vectors = [row for S in out for row in S.embedding()]
    if total != E.dim or rank(vectors) != E.dim:
        raise ExtensionError(
            f"summands do not decompose E: dims {[S.dim for S in out]} vs dim E = {E.dim}"
        )
    return out


def hom_between(S: Bimodule, T: Bimodule) -> int:
    return bimodule_hom(S, T)[0]


# ---------------------------------------------------------------------------
# centre and projective resolutions


def center_dim(A: FiniteDimAlgebra) -> int:
    """Dimension of the centre: elements commuting with every arrow and idempotent."""
    columns = []
    for m in range(A.dim):
        col: dict = {}
        x = {m: A.field(1)}
        for a, av in A.arrow_vec.items():
            for k, c in A.mul(av, x).items():
                col[("a", a, k)] = col.get(("a", a, k), 0) + c
            for k, c in A.mul(x, av).items():
                col[("a", a, k)] = col.get(("a", a, k), 0) - c
        for v in A.quiver.vertices:
            e = A.idempotent(v)
            for k, c in A.mul(e, x).items():
                col[("e", v, k)] = col.get(("e", v, k), 0) + c
            for k, c in A.mul(x, e).items():
                col[("e", v, k)] = col.get(("e", v, k), 0) - c
        columns.append({k: c for k, c in col.items() if c})
    return len(kernel(columns))


class _FreeModule:
    """Right module ``(+)_g e_{v_g} A`` with coordinates ``(slot, basis index)``."""

    def __init__(self, A: FiniteDimAlgebra, slots):
        self.A = A
        self.slots = list(slots)

    def basis(self):
        A = self.A
        return [(g, i) for g, v in enumerate(self.slots) for i, p in enumerate(A.basis) if p.source == v]

    def times(self, vec: dict, b: int) -> dict:
        out: dict = {}
        for (g, i), c in vec.items():
            prod = self.A.table.get((i, b))
            if prod:
                for k, d in prod.items():
                    key = (g, k)
                    v = out.get(key, 0) + c * d
                    if v:
                        out[key] = v
                    else:
                        out.pop(key)
        return out

    def end_vertex(self, key):
        return self.A.basis[key[1]].target


def _top_generators(F: _FreeModule, M_basis: list[dict]):
    """Vertex-homogeneous elements of M whose classes form a basis of M / M rad A."""
    A = F.A
    rad = A.radical_basis()
    MJ = Echelon()
    for m in M_basis:
        for b in rad:
            MJ.add(F.times(m, b))
    gens = []
    by_vertex: dict = {}
    for m in M_basis:
        for v in A.quiver.vertices:
            part = {k: c for k, c in m.items() if F.end_vertex(k) == v}
            if part:
                by_vertex.setdefault(v, []).append(part)
    for v in A.quiver.vertices:
        for part in by_vertex.get(v, []):
            if MJ.add(part):
                gens.append((v, part))
    return gens


def _syzygy(F: _FreeModule, M_basis: list[dict]):
    """Projective cover of the submodule spanned by ``M_basis`` and its kernel."""
    gens = _top_generators(F, M_basis)
    P = _FreeModule(F.A, [v for v, _ in gens])
    pb = P.basis()
    columns = []
    for g, i in pb:
        columns.append(F.times(gens[g][1], i))
    ker = kernel(columns)
    K = [{pb[j]: c for j, c in v.items()} for v in ker]
    return [v for v, _ in gens], P, K


def projective_resolution_dims(A: FiniteDimAlgebra, vertex, k: int = 3) -> list[dict]:
    """Multiplicities ``{vertex: n}`` of the projectives ``P_0 .. P_k`` in a minimal
    projective resolution of the simple right module at ``vertex``."""
    out = [{vertex: 1}]
    F = _FreeModule(A, [vertex])
    M = [{(0, i): A.field(1)} for i, p in enumerate(A.basis) if p.source == vertex and p.arrows]
    for _ in range(k):
        if not M:
            out.append({})
            continue
        verts, P, K = _syzygy(F, M)
        mult: dict = {}
        for v in verts:
            mult[v] = mult.get(v, 0) + 1
        out.append(mult)
        F, M = P, K
    return out


def syzygy_dims(A: FiniteDimAlgebra, vertex, k: int = 3) -> list[int]:
    """Dimensions of the syzygies Omega^1 .. Omega^k of the simple right module at ``vertex``."""
    F = _FreeModule(A, [vertex])
    M = [{(0, i): A.field(1)} for i, p in enumerate(A.basis) if p.source == vertex and p.arrows]
    dims = [len(M)]
    for _ in range(k - 1):
        if not M:
            dims.append(0)
            continue
        _, F, M = _syzygy(F, M)
        dims.append(len(M))
    return dims


def global_dimension_at_most(A: FiniteDimAlgebra, n: int) -> bool:
    """True iff every simple module has vanishing (n+1)-st syzygy."""
    return all(syzygy_dims(A, v, n + 1)[n] == 0 for v in A.quiver.vertices)


def gldim_le_two(A: FiniteDimAlgebra) -> bool:
    return global_dimension_at_most(A, 2)
