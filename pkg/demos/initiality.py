"""Initial functors, and a composite that is initial without its first factor."""

from fincat import comma_category, compose_functors, fixtures, is_initial, is_relatively_initial, pi0, relative_comma
from fincat.core import constant_functor

R0, S0, PP = fixtures.R0(), fixtures.S0(), fixtures.PP()

# R0 sends the arrow a to alpha; the slice over 1 falls into two pieces
over_1 = comma_category(R0, constant_functor(fixtures.One(), PP, "1")).category
print("R0 / 1 objects:", over_1.objects)
print("components:", pi0(over_1).blocks)

v = is_initial(R0)
print("R0 initial:", bool(v), v.reason, v.witness)
print("S0 initial:", bool(is_initial(S0)))

# S0 after R0 is the identity of the walking arrow
both = compose_functors(R0, S0)
print("S0 . R0 is the identity:", both.object_map, "initial:", bool(is_initial(both)))

# the relative comma category sees alpha and beta as connected through S0
v = fixtures.R0_rel()
print("relative comma over 1:", relative_comma(v, "1").objects)
print("R0 relatively initial:", bool(is_relatively_initial(v)))
