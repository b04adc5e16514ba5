"""Random small instances for property checks.

Shapes are free categories on random acyclic graphs; functors out of them are
fixed by their values on edges, which makes random generation cheap.
"""

from __future__ import annotations

import random

from .comma import DiagMorphismLeft, DiagMorphismRight, Diagram
from .core import (
    FinCat,
    FinFunctor,
    GraphPresentation,
    NatTransform,
    check_functor,
    check_nat,
    compose_functors,
    free_category_on_acyclic_graph,
)
from .fibration import Copresheaf, check_copresheaf


def random_graph(rng: random.Random, max_vertices: int = 5, max_edges: int = 7, min_vertices: int = 1) -> GraphPresentation:
    """Vertices ``v0..``; every edge runs from a lower to a higher index."""
    n = rng.randint(min_vertices, max_vertices)
    edges = []
    if n > 1:
        for e in range(rng.randint(0, max_edges)):
            a, b = sorted(rng.sample(range(n), 2))
            edges.append((f"e{e}", f"v{a}", f"v{b}"))
    return GraphPresentation([f"v{i}" for i in range(n)], edges)


def random_free_category(rng: random.Random, max_vertices: int = 5, max_edges: int = 7, min_vertices: int = 1) -> FinCat:
    return free_category_on_acyclic_graph(random_graph(rng, max_vertices, max_edges, min_vertices))


def generators(c: FinCat) -> list[int]:
    """Non-identity morphisms that are not composites of two non-identities."""
    idm = c.is_identity_i
    composite = {h for (f, g), h in c.comp.items() if not idm[f] and not idm[g]}
    return [m for m in range(c.n_mor) if not idm[m] and m not in composite]


def extend_from_generators(J: FinCat, X: FinCat, ob, gens: dict[int, int]) -> FinFunctor:
    """Extend values on generating morphisms to a functor, and check it."""
    mor: list[int | None] = [None] * J.n_mor
    for j, e in enumerate(J.ident):
        mor[e] = X.ident[ob[j]]
    for m, v in gens.items():
        mor[m] = v
    changed = True
    while changed:
        changed = False
        for (f, g), h in J.comp.items():
            if mor[h] is None and mor[f] is not None and mor[g] is not None:
                mor[h] = X.comp[mor[f], mor[g]]
                changed = True
    if any(v is None for v in mor):
        raise ValueError("generators do not determine the functor")
    return check_functor(FinFunctor(J, X, list(ob), mor))


def random_functor(rng: random.Random, J: FinCat, X: FinCat, tries: int = 20) -> FinFunctor:
    """A random functor out of a free category ``J``.

    Objects are placed in declaration order so that every incoming generator
    still has somewhere to go; on a dead end the whole attempt restarts, and
    as a last resort everything is sent to one object.
    """
    gens = generators(J)
    incoming: dict[int, list[int]] = {}
    for g in gens:
        incoming.setdefault(J.cod_i[g], []).append(g)
    for _ in range(tries):
        ob: list[int] = []
        ok = True
        for j in range(J.n_obj):
            cands = [
                x for x in range(X.n_obj)
                if all(X.homs_from(ob[J.dom_i[g]], x) for g in incoming.get(j, ()) if J.dom_i[g] < j)
            ]
            if not cands:
                ok = False
                break
            ob.append(rng.choice(cands))
        if not ok:
            continue
        vals = {}
        for g in gens:
            hs = X.homs_from(ob[J.dom_i[g]], ob[J.cod_i[g]])
            if not hs:
                ok = False
                break
            vals[g] = rng.choice(hs)
        if not ok:
            continue
        try:
            return extend_from_generators(J, X, ob, vals)
        except Exception:
            continue
    x = rng.randrange(X.n_obj)
    return extend_from_generators(J, X, [x] * J.n_obj, {g: X.ident[x] for g in gens})


def random_diagram(rng: random.Random, X: FinCat, max_vertices: int = 4, max_edges: int = 4) -> Diagram:
    J = random_free_category(rng, max_vertices, max_edges)
    return Diagram(random_functor(rng, J, X))


def random_left_morphism(
    rng: random.Random, d: Diagram, max_vertices: int = 4, max_edges: int = 4, strict_bias: float = 0.3
) -> DiagMorphismLeft:
    """A random ``(R, ρ): d -> E`` with a freshly generated target shape.

    ``R`` is random, then each ``ρ_k`` is a random morphism out of ``D R k``
    (an identity with probability ``strict_bias``), and ``E`` is chosen on
    generators among the morphisms that keep ``ρ`` natural.
    """
    X = d.base
    K = random_free_category(rng, max_vertices, max_edges)
    R = random_functor(rng, K, d.shape)
    DR = compose_functors(R, d.functor)
    gens = generators(K)
    for _ in range(20):
        rho = []
        for k in range(K.n_obj):
            a = DR.ob[k]
            if rng.random() < strict_bias:
                rho.append(X.ident[a])
            else:
                rho.append(rng.choice(X.out_i[a]))
        ob = [X.cod_i[r] for r in rho]
        vals = {}
        ok = True
        for g in gens:
            a, b = K.dom_i[g], K.cod_i[g]
            target = X.comp[DR.mor[g], rho[b]]
            hs = [h for h in X.homs_from(ob[a], ob[b]) if X.comp[rho[a], h] == target]
            if not hs:
                ok = False
                break
            vals[g] = rng.choice(hs)
        if not ok:
            continue
        try:
            E = extend_from_generators(K, X, ob, vals)
            tau = check_nat(NatTransform(DR, E, rho))
        except Exception:
            continue
        return DiagMorphismLeft(d, Diagram(E), R, tau)
    return DiagMorphismLeft(d, Diagram(DR), R, NatTransform(DR, DR, [X.ident[x] for x in DR.ob]))


def random_left_morphism_pair(rng: random.Random, X: FinCat, **kw) -> tuple[DiagMorphismLeft, DiagMorphismLeft]:
    d = random_diagram(rng, X)
    m = random_left_morphism(rng, d, **kw)
    return m, random_left_morphism(rng, m.target, **kw)


def random_pseudo_right_morphism(rng: random.Random, X: FinCat, max_vertices: int = 4, max_edges: int = 4) -> DiagMorphismRight:
    """A random ``(R, ρ): D -> E`` with every ``ρ_j`` invertible.

    ``E`` and ``R`` are random; ``D`` is ``E∘R`` conjugated by random
    isomorphisms.
    """
    K = random_free_category(rng, max_vertices, max_edges)
    E = random_functor(rng, K, X)
    J = random_free_category(rng, max_vertices, max_edges)
    R = random_functor(rng, J, K)
    ER = compose_functors(R, E)
    isos = []
    for j in range(J.n_obj):
        a = ER.ob[j]
        cands = [m for m in X.out_i[a] if X.inverse_i(m) is not None]
        isos.append(rng.choice(cands))  # σ_j: E R j -> D j
    ob = [X.cod_i[s] for s in isos]
    mor = []
    for h in range(J.n_mor):
        a, b = J.dom_i[h], J.cod_i[h]
        mor.append(X.comp[X.comp[X.inverse_i(isos[a]), ER.mor[h]], isos[b]])
    D = check_functor(FinFunctor(J, X, ob, mor))
    rho = check_nat(NatTransform(D, ER, [X.inverse_i(s) for s in isos]))
    return DiagMorphismRight(Diagram(D), Diagram(E), R, rho)


def random_copresheaf(rng: random.Random, X: FinCat, max_size: int = 3) -> Copresheaf:
    """A random copresheaf on a free category, fixed by its action on generators."""
    sizes = [rng.randint(0, max_size) for _ in range(X.n_obj)]
    act: list[tuple | None] = [None] * X.n_mor
    for x, e in enumerate(X.ident):
        act[e] = tuple(range(sizes[x]))
    for g in generators(X):
        a, b = X.dom_i[g], X.cod_i[g]
        if sizes[a] and not sizes[b]:
            return random_copresheaf(rng, X, max_size)
        act[g] = tuple(rng.randrange(sizes[b]) for _ in range(sizes[a]))
    changed = True
    while changed:
        changed = False
        for (f, g), h in X.comp.items():
            if act[h] is None and act[f] is not None and act[g] is not None:
                act[h] = tuple(act[g][i] for i in act[f])
                changed = True
    sets = [tuple(str(i + 1) for i in range(n)) for n in sizes]
    return check_copresheaf(Copresheaf(X, sets, act))
