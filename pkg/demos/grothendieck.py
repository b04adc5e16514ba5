"""Copresheaves and discrete opfibrations, back and forth."""

import random

from fincat import fibres_copresheaf, grothendieck, is_copresheaf_iso, is_discrete_opfibration
from fincat.fibration import copresheaf_isomorphisms, limit_finset
from fincat.generate import random_copresheaf, random_free_category
from fincat.io import fixtures_bundle

b = fixtures_bundle()
F = b.copresheaves["two_over_1"]
El, p = grothendieck(F)
print("elements:", El.objects)
print("projection is a discrete opfibration:", bool(is_discrete_opfibration(p)))

G = fibres_copresheaf(p)
print("fibres:", G.sets)
print("isomorphic to the original:", any(is_copresheaf_iso(a) for a in copresheaf_isomorphisms(G, F)))

# the swap on a two-element set has no fixed point, so its equalizer is empty
L, _ = limit_finset(b.copresheaves["swap_pair"])
print("families in the limit of swap_pair:", len(L))

rng = random.Random(3)
X = random_free_category(rng, 4, 5)
H = random_copresheaf(rng, X, 3)
print("random base:", X.n_obj, "objects,", X.n_mor, "morphisms; fibre sizes", H.sizes())
print("round trip ok:", bool(copresheaf_isomorphisms(fibres_copresheaf(grothendieck(H)[1]), H)))
