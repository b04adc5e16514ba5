"""Morphisms of the diagram category with weak equivalences inverted.

A morphism ``D -> D'`` of the localized category is stored as a map of
comprehensive copresheaves ``P_D' -> P_D`` (note the reversal).  Zigzags
``D' -> apex <- D`` over the base, with the backward leg initial, present the
same morphisms and are normalized back into this form.
"""

from __future__ import annotations

from dataclasses import dataclass

from .comma import DiagMorphismLeft, Diagram, is_initial, strict_left
from .core import FinFunctor, compose_functors
from .equivalence import induced_copresheaf_map
from .errors import BackwardNotInitial, BaseMismatch, EndpointMismatch, NotOverX, TypingMismatch
from .factorization import factorize
from .fibration import (
    CopresheafMap,
    check_copresheaf_map,
    compose_copresheaf_maps,
    enumerate_nat_trans,
    grothendieck,
    identity_copresheaf_map,
    inverse_copresheaf_map,
    is_copresheaf_iso,
)


@dataclass(frozen=True)
class LocHom:
    source: Diagram
    target: Diagram
    map: CopresheafMap

    def __post_init__(self):
        if self.map.source != factorize(self.target).copresheaf or self.map.target != factorize(self.source).copresheaf:
            raise TypingMismatch("map must run from the copresheaf of the target to that of the source")


@dataclass(frozen=True)
class Zigzag:
    """``target --forward--> apex <--backward-- source`` over the base.

    ``forward`` is a functor from the shape of the target diagram and
    ``backward`` one from the shape of the source diagram, both into the
    shape of ``apex`` and commuting with the diagrams.  ``backward`` must be
    initial.
    """

    source: Diagram
    target: Diagram
    apex: Diagram
    forward: FinFunctor
    backward: FinFunctor


def loc_hom_set(d: Diagram, d2: Diagram) -> list[LocHom]:
    if d.base != d2.base:
        raise BaseMismatch("diagrams live in different categories")
    P, P2 = factorize(d).copresheaf, factorize(d2).copresheaf
    return [LocHom(d, d2, a) for a in enumerate_nat_trans(P2, P)]


def loc_identity(d: Diagram) -> LocHom:
    return LocHom(d, d, identity_copresheaf_map(factorize(d).copresheaf))


def loc_from_diag_morphism(m: DiagMorphismLeft) -> LocHom:
    return LocHom(m.source, m.target, induced_copresheaf_map(m))


def loc_compose(a: LocHom, b: LocHom) -> LocHom:
    """``b ∘ a`` for ``a: D -> D'`` and ``b: D' -> D''``; the map is ``a.map ∘ b.map``."""
    if a.target != b.source:
        raise EndpointMismatch("the target of the first morphism is not the source of the second")
    return LocHom(a.source, b.target, compose_copresheaf_maps(b.map, a.map))


def loc_is_iso(a: LocHom) -> bool:
    return is_copresheaf_iso(a.map)


def loc_inverse(a: LocHom) -> LocHom:
    return LocHom(a.target, a.source, inverse_copresheaf_map(a.map))


def elements_functor(a: CopresheafMap) -> FinFunctor:
    """``El(a): El(F) -> El(G)``, ``(x, s) ↦ (x, a_x(s))``, over the base."""
    F, G = a.source, a.target
    X = F.base
    El_F, _ = grothendieck(F)
    El_G, _ = grothendieck(G)
    pos = [{s: i for i, s in enumerate(ss)} for ss in F.sets]
    ob = []
    for x, s in El_F.objects:
        xi = X.ob(x)
        ob.append(El_G.ob((x, G.sets[xi][a.comps[xi][pos[xi][s]]])))
    mor = []
    for g, s in El_F.morphisms:
        xi = X.dom_i[X.mor(g)]
        mor.append(El_G.mor((g, G.sets[xi][a.comps[xi][pos[xi][s]]])))
    return FinFunctor(El_F, El_G, ob, mor)


def loc_to_zigzag(a: LocHom) -> Zigzag:
    """The zigzag through the elements of ``P_D``.

    ``backward`` is the initial part of the factorization of ``D``;
    ``forward`` is the initial part of ``D'`` followed by ``El(a.map)``.
    """
    fd, ft = factorize(a.source), factorize(a.target)
    forward = compose_functors(ft.initial_part, elements_functor(a.map))
    return Zigzag(a.source, a.target, Diagram(fd.opfibration_part), forward, fd.initial_part)


def induced_map_of_functor_over(f: FinFunctor, source: Diagram, target: Diagram) -> CopresheafMap:
    """``P_A -> P_B`` for ``f: shape A -> shape B`` with ``B ∘ f = A``."""
    return induced_copresheaf_map(strict_left(target, source, f))


def loc_from_zigzag(z: Zigzag) -> LocHom:
    for leg, d, name in ((z.forward, z.target, "forward"), (z.backward, z.source, "backward")):
        if leg.target != z.apex.shape or compose_functors(leg, z.apex.functor).key != d.functor.key:
            raise NotOverX(f"{name} leg does not commute with the diagrams over the base")
    v = is_initial(z.backward)
    if not v:
        raise BackwardNotInitial(f"backward leg is not initial: {v.witness}")
    fw = induced_map_of_functor_over(z.forward, z.target, z.apex)
    bw = induced_map_of_functor_over(z.backward, z.source, z.apex)
    m = compose_copresheaf_maps(fw, inverse_copresheaf_map(bw))
    return LocHom(z.source, z.target, check_copresheaf_map(m))
