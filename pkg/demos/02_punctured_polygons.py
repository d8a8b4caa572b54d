"""Triangulated punctured polygons: relatedness counts, reduction, cuts.

    python3 demos/02_punctured_polygons.py
"""

from collections import Counter

from _data import fixture

from qpcohom.algebra import jacobian_algebra
from qpcohom.geometry import (
    adjacency_qp,
    decompose_blocks,
    geometric_cuts,
    once_punctured_triangulations,
    reduce_local,
    relatedness,
    theorem_b_dim,
)
from qpcohom.hochschild import hh1
from qpcohom.theorems import rep_finite_formula

# Exhaustive sweep of the once-punctured pentagon.
tally = Counter()
for T in once_punctured_triangulations(5):
    qp = reduce_local(adjacency_qp(T)).qp
    d = theorem_b_dim(T)
    assert d == hh1(jacobian_algebra(qp)) == rep_finite_formula(qp.quiver)
    tally[d] += 1
print("once-punctured pentagon, HH1 distribution:", dict(sorted(tally.items())))

# Twice-punctured fixtures, one per local configuration.
for name in ("twice_punctured_config_a.qp", "twice_punctured_config_b.qp",
             "twice_punctured_config_c.qp", "twice_punctured_type_v.qp"):
    T = fixture(name).triangulation()
    rep = relatedness(T)
    red = reduce_local(adjacency_qp(T))
    print(f"{name}: blocks {[b.kind for b in decompose_blocks(T)]}")
    print(f"   valency {rep.valency}, m {rep.m}, m_pq {rep.m_pq}, NRel {rep.nrel}")
    print(f"   configurations {red.configurations}, removed {red.removed}")
    print(f"   count {rep.dim}, HH1 of reduced Jacobian {hh1(jacobian_algebra(red.qp))}")
    print(f"   reduced W = {red.qp.potential}")

# Geometric cuts: one angle per internal triangle.
T = fixture("once_punctured_iv_block.qp").triangulation()
for cut in geometric_cuts(T):
    print(f"cut {cut.angles}: arrows {sorted(cut.arrows)}, admissible {cut.admissible}, "
          f"dim {cut.algebra_dim}, gldim <= 2 {cut.gldim_le_two}")
