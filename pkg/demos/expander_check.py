"""
Triangle-free expanders
=======================

The mixed-necklace construction needs triangle-free regular graphs with a
small second eigenvalue.  The Alon Cayley graphs on Z_2^{3k} are built here
and checked; smaller classics stand in when the size cap is tight.
"""

from fractions import Fraction

from profile_lab.expander import FallbackProvider, expander, feasible_alon_ks, verify_ndlambda
from profile_lab.homcount import necklace_homs
from profile_lab.realize import expander_sequence_mixed, mixed_exponents

print("feasible k under the vertex cap:", feasible_alon_ks())

# 4096 and 32768 vertices; the Cayley structure gives the spectrum directly
for k in feasible_alon_ks():
    r = verify_ndlambda(expander(k))
    print(f"k={k}  n={r.n}  d={r.regular_degree}  lambda2={r.lambda2:.1f}  triangle-free={r.triangle_free}")

# fallback library: Petersen, Clebsch, Hoffman-Singleton
provider = FallbackProvider()
for k in range(3):
    r = verify_ndlambda(provider(k))
    print(f"fallback {k}: n={r.n}  d={r.regular_degree}  lambda2={r.lambda2:.3f}")

# a mixed target over q = 2, 3: the q = 2 pieces never contain a triangle,
# so hom(N_{4j,3}) only sees the 3-ified pieces
ys = ((Fraction(1),), (Fraction(1, 2), Fraction(1, 2)))
print("exponents:", mixed_exponents(ys, 2**8))
G = expander_sequence_mixed(ys, 2**8, provider)
print("vertices:", G.n, " hom(N_{4,3}) =", necklace_homs(G, [4], 3)[4])
