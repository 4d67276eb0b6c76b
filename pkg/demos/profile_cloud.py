"""
The power-sum region
====================

Ratio points of clique unions are power sums p_j(x) = sum_i x_i^j of a
probability vector x.  This walks through a random cloud of such points,
the boundary patterns of the region, and the inverse problem.
"""

from fractions import Fraction

import numpy as np

from profile_lab import BoundaryPattern, Infeasible, boundary_point, power_sums, realize_weights, sample_profile

# 2000 points (p_2, p_3, p_4) from vectors of length at most 30
pts = sample_profile(4, 30, 2000, seed=1)
print("cloud shape:", pts.shape)
print("coordinate ranges:", np.round(pts.min(axis=0), 4), np.round(pts.max(axis=0), 4))

# every point is a decreasing chain 1 >= p_2 >= p_3 >= p_4 >= 0
print("monotone chain holds:", bool(np.all(np.diff(pts, axis=1) <= 0)))

# boundary of the n = 3 slice: one zero-free block pattern, exact arithmetic
pat = BoundaryPattern(2, (0, 2, 1), (Fraction(1, 4), Fraction(1, 2)))
print("boundary point for (1/4, 1/4, 1/2):", boundary_point(pat, 3).as_strings())
print("same via power sums:", power_sums([Fraction(1, 4), Fraction(1, 4), Fraction(1, 2)], 3).as_strings())

# inverse problem: recover a weight vector from (p_2, p_3)
x = np.array([0.6, 0.3, 0.1])
a = [float((x**j).sum()) for j in (2, 3)]
w = realize_weights(a, 3)
print("recovered weights:", np.round(np.sort(w)[::-1], 6))

# p_2 = 0.9 forces a near-point mass, which then cannot have p_3 = 0.5
print("(0.9, 0.5) infeasible:", isinstance(realize_weights([0.9, 0.5], 3), Infeasible))

# CSV for plotting:  profile-lab sample --l 4 --nmax 50 --count 10000 --seed 0 --out cloud.csv
