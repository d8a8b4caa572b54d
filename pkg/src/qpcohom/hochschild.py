"""H^0 and H^1 of a bound quiver algebra with coefficients in a bimodule.

H^1(A, M) is computed as normalised derivations modulo inner ones: a
derivation vanishing on the idempotents is fixed by its values on arrows,
``d(a) in e_s(a) M e_t(a)``, subject to the Leibniz expansion of every
defining relation vanishing.  ``bar_complex_h1`` recomputes the same number
from ``Hom(A, M)`` and ``Hom(A (x) A, M)`` and is only meant for small algebras.
"""

from __future__ import annotations

from .algebra import Bimodule, FiniteDimAlgebra, bimodule_hom, regular_bimodule
from .linalg import axpy, kernel, rank


class GradingMismatch(ValueError):
    pass


def _check(A: FiniteDimAlgebra, M: Bimodule):
    missing = [a.name for a in A.quiver.arrows if a.name not in M.arrows]
    if missing:
        raise GradingMismatch(f"bimodule has no action for arrows {missing}")
    vs = set(A.quiver.vertices)
    if any(i not in vs or j not in vs for i, j in M.grades):
        raise GradingMismatch("bimodule grading uses vertices outside the quiver")


def _unknowns(A: FiniteDimAlgebra, M: Bimodule):
    by_grade: dict = {}
    for m, g in enumerate(M.grades):
        by_grade.setdefault(g, []).append(m)
    return [(a.name, m) for a in A.quiver.arrows for m in by_grade.get((a.source, a.target), ())]


def derivation_columns(A: FiniteDimAlgebra, M: Bimodule):
    """Unknowns ``(arrow, m)`` and, per unknown, its contribution to every relation constraint."""
    _check(A, M)
    unknowns = _unknowns(A, M)
    col = {u: {} for u in unknowns}
    by_arrow: dict = {}
    for u in unknowns:
        by_arrow.setdefault(u[0], []).append(u[1])
    for r_idx, rel in enumerate(A.relations):
        for word, coef in rel.terms.items():
            c = A.field(coef)
            for k, a in enumerate(word):
                prefix, suffix = word[:k], word[k + 1 :]
                for m in by_arrow.get(a, ()):
                    img = M.left_path(prefix, M.right_path({m: c}, suffix))
                    d = col[(a, m)]
                    for n, v in img.items():
                        key = (r_idx, n)
                        s = d.get(key, 0) + v
                        if s:
                            d[key] = s
                        else:
                            d.pop(key, None)
    return unknowns, [col[u] for u in unknowns]


def derivation_basis(A: FiniteDimAlgebra, M: Bimodule) -> list[dict]:
    """Basis of Der_0(A, M); each element maps ``(arrow, m)`` to a coefficient."""
    unknowns, cols = derivation_columns(A, M)
    return [{unknowns[i]: c for i, c in v.items()} for v in kernel(cols)]


def der0_dim(A: FiniteDimAlgebra, M: Bimodule) -> int:
    _, cols = derivation_columns(A, M)
    return len(kernel(cols))


def inner_derivation(A: FiniteDimAlgebra, M: Bimodule, x: dict) -> dict:
    """Values ``{(arrow, m): c}`` of ``a -> a x - x a`` for ``x`` in the diagonal part."""
    out: dict = {}
    for a in A.quiver.arrows:
        v = axpy(M.act_left(a.name, x), -1, M.act_right(x, a.name))
        for m, c in v.items():
            out[(a.name, m)] = c
    return out


def inner_columns(A: FiniteDimAlgebra, M: Bimodule) -> list[dict]:
    return [inner_derivation(A, M, {m: A.field(1)}) for m, (i, j) in enumerate(M.grades) if i == j]


def inn0_dim(A: FiniteDimAlgebra, M: Bimodule) -> int:
    _check(A, M)
    return rank(inner_columns(A, M))


def h1_dim(A: FiniteDimAlgebra, M: Bimodule) -> int:
    return der0_dim(A, M) - inn0_dim(A, M)


def hh1(A: FiniteDimAlgebra) -> int:
    return h1_dim(A, regular_bimodule(A))


def h0_dim(A: FiniteDimAlgebra, M: Bimodule) -> int:
    """``{m : a m = m a for all arrows a}`` inside the diagonal part."""
    diag = [m for m, (i, j) in enumerate(M.grades) if i == j]
    cols = inner_columns(A, M)
    return len(diag) - rank(cols)


# ---------------------------------------------------------------------------
# bar complex cross-check


def _basis_actions(A: FiniteDimAlgebra, M: Bimodule):
    left = [[M.act_left_path(p, {m: A.field(1)}) for m in range(M.dim)] for p in A.basis]
    right = [[M.act_right_path({m: A.field(1)}, p) for m in range(M.dim)] for p in A.basis]
    return left, right


def bar_complex_h1(A: FiniteDimAlgebra, M: Bimodule, max_dim: int = 20) -> int:
    """``dim ker b^2 - rank b^1`` on the unnormalised Hochschild complex."""
    if A.dim > max_dim:
        raise ValueError(f"bar complex check limited to dim A <= {max_dim}")
    n, d = A.dim, M.dim
    left, right = _basis_actions(A, M)
    # b^1 : M -> Hom(A, M), x -> (c -> c x - x c)
    b1 = []
    for x in range(d):
        col: dict = {}
        for i in range(n):
            for k, c in left[i][x].items():
                col[(i, k)] = col.get((i, k), 0) + c
            for k, c in right[i][x].items():
                col[(i, k)] = col.get((i, k), 0) - c
        b1.append({k: v for k, v in col.items() if v})
    # b^2 : Hom(A, M) -> Hom(A(x)A, M), (b f)(c0, c1) = c0 f(c1) - f(c0 c1) + f(c0) c1
    products: dict = {}
    for (j, k), prod in A.table.items():
        for i, lam in prod.items():
            products.setdefault(i, []).append((j, k, lam))
    b2 = []
    for i in range(n):
        for m in range(d):
            col = {}

            def bump(key, v):
                s = col.get(key, 0) + v
                if s:
                    col[key] = s
                else:
                    col.pop(key, None)

            for j in range(n):
                for k, c in left[j][m].items():
                    bump((j, i, k), c)
                for k, c in right[j][m].items():
                    bump((i, j, k), c)
            for j, k, lam in products.get(i, ()):
                bump((j, k, m), -lam)
            b2.append(col)
    cocycles = n * d - rank(b2)
    return cocycles - rank(b1)


def bar_complex_hh1(A: FiniteDimAlgebra, max_dim: int = 20) -> int:
    return bar_complex_h1(A, regular_bimodule(A), max_dim)


# ---------------------------------------------------------------------------
# split extension identities


def ses_terms(ext) -> dict:
    """The three numbers in ``0 -> H^1(B, E) -> HH^1(B) -> HH^1(C) -> 0``."""
    return {
        "hh1_B": hh1(ext.B),
        "h1_B_E": h1_dim(ext.B, ext.E),
        "hh1_C": hh1(ext.C),
    }


def ses_additivity_check(ext) -> bool:
    t = ses_terms(ext)
    return t["hh1_B"] == t["h1_B_E"] + t["hh1_C"]


def splitting_terms(ext) -> dict:
    EC = ext.E_over_C
    return {
        "h1_B_E": h1_dim(ext.B, ext.E),
        "h1_C_E": h1_dim(ext.C, EC),
        "end_E": bimodule_hom(EC, EC)[0],
    }


def h1_splitting_check(ext) -> bool:
    t = splitting_terms(ext)
    return t["h1_B_E"] == t["h1_C_E"] + t["end_E"]
