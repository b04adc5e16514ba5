"""The localized category of diagrams over the walking arrow.

A morphism D -> D' after inverting weak equivalences is a map of comprehensive
copresheaves P_D' -> P_D.  Every such morphism is a two-step zigzag.
"""

from fincat import fixtures
from fincat.comma import Diagram
from fincat.core import identity_functor
from fincat.localization import (
    loc_compose,
    loc_from_diag_morphism,
    loc_from_zigzag,
    loc_hom_set,
    loc_is_iso,
    loc_to_zigzag,
)

c1 = Diagram(fixtures.c1())
c11 = Diagram(fixtures.c11())
whole = Diagram(identity_functor(fixtures.I2()))

for a, b, name in [(c1, c11, "c1 -> c11"), (c11, c1, "c11 -> c1"), (whole, c1, "I2 -> c1")]:
    homs = loc_hom_set(a, b)
    print(f"{name}: {len(homs)} morphisms, isos: {[loc_is_iso(h) for h in homs]}")

u = loc_from_diag_morphism(fixtures.u_c1_c11())
# c1 -> c1 has a single morphism, so both round trips land on the identity
for back in loc_hom_set(c11, c1):
    print("u then back:", loc_compose(u, back).map.comps)

z = loc_to_zigzag(u)
print("apex objects:", z.apex.shape.objects)
print("forward leg:", z.forward.object_map)
print("backward leg (initial):", z.backward.object_map)
print("recovered:", loc_from_zigzag(z) == u)
