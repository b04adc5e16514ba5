"""Comprehensive factorization: every functor is initial followed by a discrete opfibration."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .comma import Diagram, is_initial, slice_blocks
from .core import FinCat, FinFunctor, check_functor, compose_functors
from .errors import InternalInvariantViolation, NotALift
from .fibration import Copresheaf, Lift, grothendieck, isomorphisms_over, is_discrete_opfibration


@dataclass(frozen=True)
class Factorization:
    """``D = opfibration_part ∘ initial_part`` through the elements of ``P_D``.

    ``P_D(x)`` is the set of connected components of ``D/x``; each component
    is named by its least member ``(j, f)``.
    """

    input: Diagram
    copresheaf: Copresheaf
    initial_part: FinFunctor
    opfibration_part: FinFunctor
    # member[x][(j, f)] = position of the block of (j, f) in copresheaf.sets[x]
    member: tuple = field(compare=False, repr=False)

    @property
    def elements(self) -> FinCat:
        return self.opfibration_part.source

    def block_index(self, x: int, j: int, f: int) -> int:
        return self.member[x][j, f]


def comprehensive_factorize(d: Diagram, check: bool = True) -> Factorization:
    D, J, X = d.functor, d.shape, d.base
    sets, member = [], []
    for x in range(X.n_obj):
        elems, blocks = slice_blocks(D, x)
        where = {}
        for b, blk in enumerate(blocks):
            for e in blk:
                where[elems[e]] = b
        member.append(where)
        sets.append([(J.objects[elems[blk[0]][0]], X.morphisms[elems[blk[0]][1]]) for blk in blocks])
    act = []
    for g in range(X.n_mor):
        x, y = X.dom_i[g], X.cod_i[g]
        reps = [None] * len(sets[x])
        for (j, f), b in member[x].items():
            if reps[b] is None:
                reps[b] = (j, f)
        act.append([member[y][j, X.comp[f, g]] for j, f in reps])
    P = Copresheaf(X, sets, act)
    El, proj = grothendieck(P)
    ob, mor = [], []
    for j in range(J.n_obj):
        x = D.ob[j]
        ob.append(El.ob((X.objects[x], sets[x][member[x][j, X.ident[x]]])))
    for h in range(J.n_mor):
        x = D.ob[J.dom_i[h]]
        s = sets[x][member[x][J.dom_i[h], X.ident[x]]]
        mor.append(El.mor((X.morphisms[D.mor[h]], s)))
    init = FinFunctor(J, El, ob, mor)
    fact = Factorization(d, P, init, proj, tuple(member))
    if check:
        if compose_functors(init, proj).key != D.key:
            raise InternalInvariantViolation("factorization does not compose back to the diagram")
        try:
            check_functor(init)
        except Exception as exc:
            raise InternalInvariantViolation(f"initial part is not a functor: {exc}") from exc
        if not is_initial(init):
            raise InternalInvariantViolation("initial part is not initial")
        if not is_discrete_opfibration(proj):
            raise InternalInvariantViolation("opfibration part is not a discrete opfibration")
    return fact


@lru_cache(maxsize=4096)
def factorize(d: Diagram) -> Factorization:
    """Cached :func:`comprehensive_factorize` without the self-check."""
    return comprehensive_factorize(d, check=False)


def extend_lift_along_initial(fact: Factorization, F: Copresheaf, lift: Lift) -> FinFunctor:
    """The unique functor ``El(P_D) -> El(F)`` over the base extending ``lift``.

    The block of ``(j, f: D j -> x)`` goes to ``F(f)`` applied to the element
    chosen by the lift at ``j``.
    """
    El_F, p = grothendieck(F)
    if lift.over.key != p.key or lift.over.source != El_F or lift.diagram != fact.input:
        raise NotALift("lift is not a lift of the factorized diagram along the elements of F")
    X = F.base
    P = fact.copresheaf
    El_P = fact.elements
    L = lift.total
    pos = [{s: i for i, s in enumerate(ss)} for ss in F.sets]
    chosen = [pos[X.ob(El_F.objects[e][0])][El_F.objects[e][1]] for e in L.ob]
    value = []
    for x in range(X.n_obj):
        row = [None] * len(P.sets[x])
        for (j, f), b in fact.member[x].items():
            v = F.act[f][chosen[j]]
            if row[b] is None:
                row[b] = v
            elif row[b] != v:
                raise InternalInvariantViolation("extension is not constant on a component")
        value.append(row)
    ob = [El_F.ob((x, F.sets[X.ob(x)][value[X.ob(x)][P.sets[X.ob(x)].index(b)]])) for x, b in El_P.objects]
    mor = []
    for g, b in El_P.morphisms:
        x = X.dom_i[X.mor(g)]
        mor.append(El_F.mor((g, F.sets[x][value[x][P.sets[x].index(b)]])))
    ext = check_functor(FinFunctor(El_P, El_F, ob, mor))
    if compose_functors(fact.initial_part, ext).key != L.key:
        raise InternalInvariantViolation("extension does not restrict to the lift")
    return ext


def factorization_comparisons(fact: Factorization, i2: FinFunctor, p2: FinFunctor) -> list[FinFunctor]:
    """Isomorphisms ``φ: El(P_D) -> E'`` with ``p2 ∘ φ = p`` and ``φ ∘ i = i2``.

    ``D = p2 ∘ i2`` must be another factorization with ``p2`` a discrete
    opfibration; for a genuine one exactly one comparison exists.
    """
    if compose_functors(i2, p2).key != fact.input.functor.key:
        raise NotALift("the alternative factorization does not compose to the diagram")
    return [
        phi for phi in isomorphisms_over(fact.opfibration_part, p2)
        if compose_functors(fact.initial_part, phi).key == i2.key
    ]
