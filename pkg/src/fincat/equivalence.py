"""Deciding weak equivalences of diagram morphisms.

A morphism ``m = (R, ρ): D -> E`` of the contravariant diagram category is a
weak equivalence when pushing lifts forward along ``m`` is a bijection
``Lift(D, π) -> Lift(E, π)`` for every discrete opfibration ``π``.  The exact
test compares the comprehensive copresheaves ``P_E -> P_D``; the oracle
checks the definition directly against every small copresheaf.
"""

from __future__ import annotations

from .comma import DiagMorphismLeft, DiagMorphismRight, pi0_indices
from .core import NatTransform, Verdict
from .errors import InternalInvariantViolation, NotPseudo, WrongBase
from .factorization import factorize
from .fibration import (
    DEFAULT_WORK_LIMIT,
    Budget,
    Copresheaf,
    CopresheafMap,
    check_copresheaf_map,
    enumerate_copresheaves,
    enumerate_lifts,
    grothendieck,
    is_copresheaf_iso,
    limit_families,
    pushforward_lift,
)


def _inverted(m) -> list[int]:
    X = m.source.base
    inv = []
    for j, c in enumerate(m.rho.comps):
        i = X.inverse_i(c)
        if i is None:
            raise NotPseudo(
                f"component at {m.rho.domain.objects[j]!r} ({X.morphisms[c]!r}) is not invertible"
            )
        inv.append(i)
    return inv


def mate(m: DiagMorphismLeft | DiagMorphismRight) -> DiagMorphismLeft | DiagMorphismRight:
    """Swap between the two diagram categories by inverting ``ρ``.

    The orientation reverses: the mate of ``D -> E`` runs ``E -> D`` with the
    same functor.
    """
    inv = _inverted(m)
    if isinstance(m, DiagMorphismRight):
        rho = NatTransform(m.rho.target_functor, m.rho.source_functor, inv)
        return DiagMorphismLeft(m.target, m.source, m.r, rho)
    rho = NatTransform(m.rho.target_functor, m.rho.source_functor, inv)
    return DiagMorphismRight(m.target, m.source, m.r, rho)


def induced_copresheaf_map(m: DiagMorphismLeft) -> CopresheafMap:
    """The map ``P_E -> P_D``: block of ``(k, f)`` to block of ``(R k, f∘ρ_k)``."""
    fd, fe = factorize(m.source), factorize(m.target)
    X = m.source.base
    R, rho = m.r, m.rho.comps
    comps = []
    for x in range(X.n_obj):
        row = [None] * len(fe.copresheaf.sets[x])
        for (k, f), b in fe.member[x].items():
            v = fd.member[x][R.ob[k], X.comp[rho[k], f]]
            if row[b] is None:
                row[b] = v
            elif row[b] != v:
                raise InternalInvariantViolation("induced map is not constant on a component")
        comps.append(row)
    return check_copresheaf_map(CopresheafMap(fe.copresheaf, fd.copresheaf, comps))


def lift_pushforward_table(m: DiagMorphismLeft, F: Copresheaf, budget: Budget | None = None):
    """Counts for ``R_*: Lift(D, El F) -> Lift(E, El F)``.

    Returns ``(n_source, n_target, n_image, bijective)``.
    """
    _, p = grothendieck(F)
    src = enumerate_lifts(m.source, p, budget)
    tgt = enumerate_lifts(m.target, p, budget)
    image = {pushforward_lift(m, l)[0].total.key for l in src}
    return len(src), len(tgt), len(image), len(image) == len(src) == len(tgt)


def is_weak_equivalence_left(m: DiagMorphismLeft) -> Verdict:
    """Exact decision: is ``P_E -> P_D`` an isomorphism?

    On failure the witness names an object with a non-bijective component
    and a discrete opfibration (``El P_D`` or ``El P_E``) against which
    pushing lifts forward is not a bijection, with the lift counts.
    """
    phi = induced_copresheaf_map(m)
    X = m.source.base
    if is_copresheaf_iso(phi):
        return Verdict(True, "", {"sizes": {x: len(s) for x, s in zip(X.objects, phi.source.sets)}})
    x = next(
        i for i, (c, t) in enumerate(zip(phi.comps, phi.target.sets)) if sorted(c) != list(range(len(t)))
    )
    witness = {"x": X.objects[x], "size_P_E": len(phi.source.sets[x]), "size_P_D": len(phi.target.sets[x])}
    for label, F in (("P_D", phi.target), ("P_E", phi.source)):
        n_src, n_tgt, n_img, ok = lift_pushforward_table(m, F)
        if not ok:
            witness.update(dopf=label, lifts_source=n_src, lifts_target=n_tgt, image=n_img)
            return Verdict(False, "induced copresheaf map is not invertible", witness)
    raise InternalInvariantViolation("non-invertible comparison map without a lift-count witness")


def is_weak_equivalence_right_pseudo(m: DiagMorphismRight) -> Verdict:
    return is_weak_equivalence_left(mate(m))


def brute_force_weak_equivalence(
    m: DiagMorphismLeft, fibre_bound: int = 2, work_limit: int | None = DEFAULT_WORK_LIMIT
) -> Verdict:
    """Check the definition against every copresheaf with fibres of size ``<= fibre_bound``.

    ``P_D`` and ``P_E`` are always tried first.  The witness records the
    number of copresheaves tried and, on failure, the offending copresheaf and
    its lift counts.
    """
    if fibre_bound < 0:
        raise ValueError("fibre bound must be non-negative")
    X = m.source.base
    budget = Budget(work_limit)
    fd, fe = factorize(m.source), factorize(m.target)
    candidates = [("P_D", fd.copresheaf), ("P_E", fe.copresheaf)]
    tried = 0

    def test(label, F):
        n_src, n_tgt, n_img, ok = lift_pushforward_table(m, F, budget)
        if ok:
            return None
        return Verdict(
            False,
            "pushing lifts forward is not a bijection",
            {"copresheaf": F, "label": label, "lifts_source": n_src, "lifts_target": n_tgt,
             "image": n_img, "tried": tried + 1},
        )

    for label, F in candidates:
        v = test(label, F)
        if v is not None:
            return v
        tried += 1
    for n, F in enumerate(enumerate_copresheaves(X, fibre_bound, work_limit)):
        v = test(f"enumerated #{n}", F)
        if v is not None:
            return v
        tried += 1
    return Verdict(True, "", {"tried": tried})


def weak_equivalence_over_point(m: DiagMorphismLeft) -> Verdict:
    """Over the terminal category: does ``R`` biject connected components?"""
    X = m.source.base
    if X.n_obj != 1 or X.n_mor != 1:
        raise WrongBase("diagrams must live in the terminal category")
    R = m.r
    comp_k, comp_j = pi0_indices(R.source), pi0_indices(R.target)
    nk, nj = max(comp_k, default=-1) + 1, max(comp_j, default=-1) + 1
    image = {}
    for k, b in enumerate(comp_k):
        image[b] = comp_j[R.ob[k]]
    hit = set(image.values())
    ok = len(hit) == nk and nj == nk
    if ok:
        return Verdict(True)
    return Verdict(False, "components do not correspond", {"source_components": nj, "target_components": nk,
                                                            "image": len(hit)})



def brute_force_right_counterexample(
    m: DiagMorphismRight, fibre_bound: int = 2, work_limit: int | None = DEFAULT_WORK_LIMIT
) -> Verdict:
    """Search small copresheaves for a failure of the covariant definition.

    For every lift ``L`` of ``D`` there must be exactly one lift ``L'`` of
    ``E`` with ``L' (R j)`` the codomain of the lifted ``ρ_j``.  A false
    verdict refutes; a true one only says no counterexample exists up to the
    bound.
    """
    X = m.source.base
    J = m.source.shape
    D, E, R, rho = m.source.functor, m.target.functor, m.r, m.rho.comps
    budget = Budget(work_limit)
    tried = 0
    for n, F in enumerate(enumerate_copresheaves(X, fibre_bound, work_limit)):
        fd = limit_families(F.precompose(D), budget)
        fe = limit_families(F.precompose(E), budget)
        for s in fd:
            pushed = [F.act[rho[j]][s[j]] for j in range(J.n_obj)]
            count = sum(all(t[R.ob[j]] == pushed[j] for j in range(J.n_obj)) for t in fe)
            if count != 1:
                return Verdict(False, "a lift of D has no unique partner", {
                    "copresheaf": F, "label": f"enumerated #{n}", "count": count, "tried": tried + 1,
                })
        tried += 1
    return Verdict(True, "no counterexample up to the bound", {"tried": tried})
