"""
Hyperstar ratio profiles
========================

In a k-uniform hypergraph hom(S_b) is a degree power sum, so a union of
stars with b_i branches realizes targets in the same power-sum region.
"""

from fractions import Fraction

from profile_lab.graphs import Hypergraph, hyperstar
from profile_lab.homcount import hyperstar_hom
from profile_lab.profile import ratio_point_hyperstars
from profile_lab.realize import TargetSpec, convergence_experiment, hyperstar_branches

# K_3 as a 2-graph: six ordered edges times two choices for the second branch
K3 = Hypergraph(3, 2, [(0, 1), (0, 2), (1, 2)])
print("hom(S_2; K_3) =", hyperstar_hom(K3, 2))

# a single 3-uniform star with 4 branches
S = hyperstar(3, 4)
print("ratio point of S^(3)_4:", ratio_point_hyperstars(S, 3).as_strings())

target = TargetSpec((Fraction(1, 3), Fraction(2, 3)), 3, 3)
for N in (75, 150, 300, 600):
    print(f"N={N:3d}  branches={hyperstar_branches(target.y, 3, N)}")

# rounding the branch counts makes the k = 3 error jump between N = 75 and 150
for row in convergence_experiment(target, "hyperstars", [75, 150, 300, 600]):
    print(f"N={row.N:3d}  err_inf={row.err_inf:.3e}")
