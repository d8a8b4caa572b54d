"""Tour of the algebraic side: from a bound quiver to HH^1 of its relation extension.

    python3 demos/01_relation_extensions.py
"""

from _data import fixture

from qpcohom.algebra import jacobian_algebra, split_extension
from qpcohom.hochschild import bar_complex_hh1, hh1
from qpcohom.quiver import enumerate_chordless_cycles
from qpcohom.theorems import lower_bound_check, tame_a_epsilon, theorem_a_from_qp


def show(name):
    doc = fixture(name)
    qp = doc.qp()
    r = theorem_a_from_qp(qp, doc.declared_type)
    print(f"== {name}")
    print(f"   W = {r.potential}")
    print(f"   cycle classes  {r.cycle_classes}")
    print(f"   new-arrow classes  {r.arrow_classes}")
    print(f"   dim B = {r.dim_b} = {r.dim_c} + {r.dim_e}, summands of E {r.summand_dims}")
    print(f"   HH1(B) = {r.hh1_b}, HH1(C) = {r.hh1_c}, H1(C,E) = {r.h1_c_e}, End(E) = {r.end_e}")
    print(f"   cyclically oriented: {r.cyclically_oriented}; all identities hold: {r.passed}")
    return r


# A tilted algebra of affine type E with five relations. Two classes of
# potential cycles give two orthogonal bricks, and HH1 counts them.
r = show("e8_tilted.qp")
print("   lower bound:", lower_bound_check(r))

# The D~4 example is not cyclically oriented, yet the count still works.
show("d4_tilted.qp")
for c in enumerate_chordless_cycles(fixture("d4_tilted.qp").qp().quiver):
    if not c.oriented:
        print("   non-oriented chordless cycle through", c.arrows)

# C_t: t parallel paths of length two under one commutativity-style relation.
for t in (1, 2, 3, 4):
    doc = fixture(f"c_t{t}.qp")
    B = jacobian_algebra(doc.qp())
    print(f"C_{t}: dim B = {B.dim}, HH1 = {hh1(B)}")

# Small algebras can be checked against the bar complex directly.
B = jacobian_algebra(fixture("c_t1.qp").qp())
C = split_extension(B).C
print("bar complex vs derivations on C_1 and its C:", bar_complex_hh1(B), hh1(B), bar_complex_hh1(C), hh1(C))

# The Kronecker quiver: no potential, HH1 = 3, the double-arrow branch.
qp = fixture("kronecker.qp").qp()
eps = tame_a_epsilon(qp.quiver, qp.potential)
print("Kronecker: HH1 =", hh1(jacobian_algebra(qp)), " epsilon =", eps.epsilon, eps.double_arrows)
