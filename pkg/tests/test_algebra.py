import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import load
from oracles import ideal_span_dims
from qpcohom.algebra import (
    ExtensionError,
    InvalidRelation,
    NotFiniteDimensional,
    bimodule_hom,
    build_algebra,
    center_dim,
    global_dimension_at_most,
    gldim_le_two,
    jacobian_algebra,
    path_algebra,
    projective_resolution_dims,
    regular_bimodule,
    split_extension,
    syzygy_dims,
)
from qpcohom.linalg import PrimeField
from qpcohom.potential import Relation, jacobian_relations
from qpcohom.quiver import Quiver

A3 = Quiver.from_arrows([1, 2, 3], [("alpha", 1, 2), ("beta", 2, 3)])


def zero_relation():
    return Relation.from_terms(A3, [(1, ("alpha", "beta"))], "rho")


def test_path_algebra_a3():
    A = path_algebra(A3)
    assert A.dim == 6
    assert global_dimension_at_most(A, 1)


def test_zero_relation_gldim_two():
    A = build_algebra(A3, [zero_relation()])
    assert A.dim == 5
    assert gldim_le_two(A)
    assert not global_dimension_at_most(A, 1)
    assert syzygy_dims(A, 1, 3)[2] == 0


def test_hereditary_second_syzygies_vanish():
    q = Quiver.from_arrows([1, 2, 3, 4], [("a", 1, 2), ("b", 1, 2), ("c", 2, 3), ("d", 4, 3)])
    A = path_algebra(q)
    for v in q.vertices:
        assert syzygy_dims(A, v, 2)[1] == 0
    assert projective_resolution_dims(A, 1, 1)


def test_oriented_cycle_without_relations_is_infinite():
    q = Quiver.from_arrows([1, 2], [("a", 1, 2), ("b", 2, 1)])
    with pytest.raises(NotFiniteDimensional):
        path_algebra(q, max_len=6)


def test_stationary_term_rejected():
    q = Quiver.from_arrows([1, 2], [("a", 1, 2)])
    with pytest.raises(InvalidRelation):
        build_algebra(q, [Relation(1, 1, {(): 1})])


@pytest.mark.parametrize(
    "name", ["c_t1.qp", "c_t2.qp", "c_t3.qp", "twin_w1.qp", "twin_w2.qp", "d4_tilted.qp", "three_cycle_qp.qp"]
)
def test_dimensions_match_ideal_span_oracle(name):
    qp = load(name).qp()
    B = jacobian_algebra(qp)
    ext = split_extension(B)
    new = {a.name for a in qp.quiver.new_arrows}
    rels = [r.relation for r in jacobian_relations(qp)]
    assert ideal_span_dims(qp.quiver, rels, 2 * len(qp.quiver.vertices) + 1, new) == (B.dim, ext.E.dim)


@pytest.mark.parametrize("name", ["c_t2.qp", "twin_w2.qp", "d4_tilted.qp"])
def test_associative(name):
    B = jacobian_algebra(load(name).qp())
    assert B.is_associative()


@given(st.permutations(range(5)))
@settings(max_examples=8, deadline=None)
def test_relation_order_does_not_matter(perm):
    doc = load("e8_tilted.qp")
    q = doc.quiver()
    rels = doc.relation_list(q)
    A = build_algebra(q, rels)
    Bp = build_algebra(q, [rels[i] for i in perm])
    assert A.dim == Bp.dim == 25
    assert [p.arrows for p in A.basis] == [p.arrows for p in Bp.basis]
    assert A.graded_dims() == Bp.graded_dims()


def test_prime_field_gives_same_dimensions():
    qp = load("d4_tilted.qp").qp()
    assert jacobian_algebra(qp).dim == jacobian_algebra(qp, field=PrimeField(5)).dim


def test_split_extension_e8():
    B = jacobian_algebra(load("e8_tilted.qp").qp())
    ext = split_extension(B)
    assert (B.dim, ext.C.dim, ext.E.dim) == (41, 25, 16)
    E = ext.E_indices
    for i in E:
        for j in E:
            assert not any(k in B.mul({i: 1}, {j: 1}) for k in range(B.dim))


def test_split_extension_rejects_wrong_new_arrows():
    from qpcohom.potential import QP, Potential
    from qpcohom.quiver import Arrow, Cycle

    base = load("e8_tilted.qp").qp()
    arrows = tuple(
        Arrow(a.name, a.source, a.target, (a.new and a.name != "phi") or a.name == "iota")
        for a in base.quiver.arrows
    )
    qp = QP(Quiver(base.quiver.vertices, arrows), Potential(dict(base.potential.terms)))
    with pytest.raises(ExtensionError):
        split_extension(jacobian_algebra(qp))
    assert Cycle(("phi", "omega", "iota")) in qp.potential.terms


def test_regular_bimodule_and_center():
    for name in ("twin_w1.qp", "c_t2.qp", "kronecker.qp"):
        A = jacobian_algebra(load(name).qp())
        M = regular_bimodule(A)
        assert M.is_compatible()
        assert bimodule_hom(M, M)[0] == center_dim(A)


def test_kronecker_center_is_trivial():
    A = jacobian_algebra(load("kronecker.qp").qp())
    assert center_dim(A) == 1
