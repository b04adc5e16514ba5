"""Counting lifts tells two diagrams apart.

Both diagrams below live in the walking arrow 0 -> 1.  ``c1`` picks out the
object 1; ``c11`` picks out 1 twice, from two disjoint points.  The inclusion
of one point into the pair looks harmless but is not a weak equivalence.
"""

from fincat import enumerate_lifts, fixtures, is_weak_equivalence_left
from fincat.comma import Diagram

c1, c11 = fixtures.c1(), fixtures.c11()

# lifting along c11 itself: each of the two points may go to either point
print("lifts of c11 along c11:", len(enumerate_lifts(Diagram(c11), c11)))
print("lifts of c1  along c11:", len(enumerate_lifts(Diagram(c1), c11)))

m = fixtures.u_c1_c11()
v = is_weak_equivalence_left(m)
print("u is a weak equivalence:", bool(v))
for k, x in v.witness.items():
    print(f"  {k}: {x}")

# collapsing two parallel arrows onto one is fine
print("S0 is a weak equivalence:", bool(is_weak_equivalence_left(fixtures.S0_left())))
