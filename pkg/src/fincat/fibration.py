"""Discrete opfibrations and their set-valued avatars.

A discrete opfibration over a finite category ``X`` is handled in two
interchangeable forms: as a functor ``p: E -> X`` with unique lifting, and as
a copresheaf ``X -> FinSet``.  :func:`grothendieck` and
:func:`fibres_copresheaf` translate between them.  Anything that has to range
over "all discrete opfibrations" is phrased over copresheaves, which are
finite and easy to enumerate.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterator, Mapping, Sequence
from dataclasses import dataclass, field

from .comma import DiagMorphismLeft, Diagram, _blocks
from .core import (
    FinCat,
    FinFunctor,
    NatTransform,
    Verdict,
    compose_functors,
    is_isomorphism,
    opposite_functor,
)
from .errors import (
    BaseMismatch,
    BoundTooLargeForBase,
    InternalInvariantViolation,
    NotALift,
    NotNatural,
    NotOpfibration,
    NotOpfibrationAt,
    NotPseudo,
    TypingMismatch,
    ValidationError,
    WorkLimitExceeded,
)

DEFAULT_WORK_LIMIT = 10**7


class Budget:
    """Counts elementary checks and raises once ``limit`` is exceeded."""

    def __init__(self, limit: int | None = DEFAULT_WORK_LIMIT):
        self.limit = limit
        self.spent = 0

    def spend(self, n: int = 1):
        self.spent += n
        if self.limit is not None and self.spent > self.limit:
            raise WorkLimitExceeded(f"work limit of {self.limit} checks exceeded")


# -- finite sets and copresheaves ----------------------------------------------


@dataclass(frozen=True)
class FinSetObj:
    elements: tuple

    def __post_init__(self):
        if len(set(self.elements)) != len(self.elements):
            raise ValidationError("set elements must be unique")

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def index(self, s) -> int:
        return self.elements.index(s)


class Copresheaf:
    """A functor ``X -> FinSet``.

    ``sets[x]`` lists the elements over object index ``x``; ``act[f][i]`` is
    the index in ``sets[cod f]`` of the image of element ``i`` under ``f``.
    """

    def __init__(self, base: FinCat, sets, act, name=None):
        self.base = base
        self.sets = tuple(tuple(s) for s in sets)
        self.act = tuple(tuple(a) for a in act)
        self.name = name

    def at(self, x) -> FinSetObj:
        return FinSetObj(self.sets[self.base.ob(x)])

    def apply(self, f, s):
        """Image of element ``s`` under morphism ``f``."""
        m = self.base.mor(f)
        a = self.base.dom_i[m]
        i = self.sets[a].index(s)
        return self.sets[self.base.cod_i[m]][self.act[m][i]]

    def function(self, f) -> dict:
        m = self.base.mor(f)
        src, tgt = self.sets[self.base.dom_i[m]], self.sets[self.base.cod_i[m]]
        return {s: tgt[i] for s, i in zip(src, self.act[m])}

    def sizes(self) -> tuple[int, ...]:
        return tuple(len(s) for s in self.sets)

    def precompose(self, d: FinFunctor) -> Copresheaf:
        """``F ∘ d`` as a copresheaf on the source of ``d``."""
        if d.target != self.base:
            raise BaseMismatch("functor does not land in the base of the copresheaf")
        return Copresheaf(d.source, [self.sets[x] for x in d.ob], [self.act[m] for m in d.mor])

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Copresheaf):
            return NotImplemented
        return self.sets == other.sets and self.act == other.act and self.base == other.base

    def __hash__(self):
        return hash((self.sets, self.act))

    def __repr__(self):
        return f"Copresheaf(sizes={self.sizes()})"


def check_copresheaf(F: Copresheaf) -> Copresheaf:
    X = F.base
    if len(F.sets) != X.n_obj or len(F.act) != X.n_mor:
        raise ValidationError("copresheaf data is not total on the base")
    for s in F.sets:
        if len(set(s)) != len(s):
            raise ValidationError("set elements must be unique")
    for m, a in enumerate(F.act):
        n_dom, n_cod = len(F.sets[X.dom_i[m]]), len(F.sets[X.cod_i[m]])
        if len(a) != n_dom or any(not 0 <= i < n_cod for i in a):
            raise ValidationError(f"action of {X.morphisms[m]!r} is not a function between its fibres")
    for x, e in enumerate(X.ident):
        if F.act[e] != tuple(range(len(F.sets[x]))):
            raise ValidationError(f"identity of {X.objects[x]!r} does not act trivially")
    for (f, g), h in X.comp.items():
        af, ag = F.act[f], F.act[g]
        if F.act[h] != tuple(ag[i] for i in af):
            raise ValidationError(
                f"action of {X.morphisms[h]!r} differs from {X.morphisms[g]!r} after {X.morphisms[f]!r}"
            )
    return F


def validate_copresheaf(base: FinCat, at: Mapping, act: Mapping, name=None) -> Copresheaf:
    """Build a copresheaf from identifier data.

    ``at`` maps each object to a list of elements; ``act`` maps each morphism
    to a mapping between elements.  Identity actions, and actions out of
    an empty set, may be omitted.
    """
    try:
        sets = [tuple(at[x]) for x in base.objects]
    except KeyError as exc:
        raise ValidationError(f"no set given for object {exc.args[0]!r}") from None
    index = [{s: i for i, s in enumerate(ss)} for ss in sets]
    acts = []
    for m, f in enumerate(base.morphisms):
        a, b = base.dom_i[m], base.cod_i[m]
        if f not in act:
            if base.ident[a] == m or not sets[a]:
                acts.append(tuple(range(len(sets[a]))))
                continue
            raise ValidationError(f"no action given for morphism {f!r}")
        fn = act[f]
        try:
            acts.append(tuple(index[b][fn[s]] for s in sets[a]))
        except KeyError as exc:
            raise ValidationError(f"action of {f!r} is not total or leaves its fibre: {exc}") from None
    return check_copresheaf(Copresheaf(base, sets, acts, name=name))


def constant_singleton(base: FinCat) -> Copresheaf:
    return Copresheaf(base, [("*",)] * base.n_obj, [(0,)] * base.n_mor)


class CopresheafMap:
    """A natural transformation between copresheaves on one base.

    ``comps[x][i]`` is the index in ``target.sets[x]`` of the image of element
    ``i`` of ``source.sets[x]``.
    """

    def __init__(self, source: Copresheaf, target: Copresheaf, comps):
        self.source = source
        self.target = target
        self.comps = tuple(tuple(c) for c in comps)

    def component(self, x) -> dict:
        i = self.source.base.ob(x)
        tgt = self.target.sets[i]
        return {s: tgt[j] for s, j in zip(self.source.sets[i], self.comps[i])}

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, CopresheafMap):
            return NotImplemented
        return self.comps == other.comps and self.source == other.source and self.target == other.target

    def __hash__(self):
        return hash(self.comps)

    def __repr__(self):
        return f"CopresheafMap({self.comps!r})"


def check_copresheaf_map(a: CopresheafMap) -> CopresheafMap:
    F, G = a.source, a.target
    if F.base != G.base:
        raise BaseMismatch("copresheaves live on different bases")
    X = F.base
    for x in range(X.n_obj):
        if len(a.comps[x]) != len(F.sets[x]) or any(not 0 <= j < len(G.sets[x]) for j in a.comps[x]):
            raise TypingMismatch(f"component at {X.objects[x]!r} is not a function between the fibres")
    for m in range(X.n_mor):
        x, y = X.dom_i[m], X.cod_i[m]
        ax, ay, Ff, Gf = a.comps[x], a.comps[y], F.act[m], G.act[m]
        for i in range(len(F.sets[x])):
            if Gf[ax[i]] != ay[Ff[i]]:
                raise NotNatural(X.morphisms[m])
    return a


def identity_copresheaf_map(F: Copresheaf) -> CopresheafMap:
    return CopresheafMap(F, F, [range(len(s)) for s in F.sets])


def compose_copresheaf_maps(a: CopresheafMap, b: CopresheafMap) -> CopresheafMap:
    """``b ∘ a`` (first ``a``)."""
    if a.target != b.source:
        raise TypingMismatch("copresheaf maps are not composable")
    return CopresheafMap(a.source, b.target, [[cb[i] for i in ca] for ca, cb in zip(a.comps, b.comps)])


def is_copresheaf_iso(a: CopresheafMap) -> bool:
    return all(
        sorted(c) == list(range(len(t)))
        for c, t in zip(a.comps, a.target.sets)
    )


def inverse_copresheaf_map(a: CopresheafMap) -> CopresheafMap:
    if not is_copresheaf_iso(a):
        raise ValueError("copresheaf map is not invertible")
    inv = []
    for c in a.comps:
        row = [0] * len(c)
        for i, j in enumerate(c):
            row[j] = i
        inv.append(row)
    return CopresheafMap(a.target, a.source, inv)


# -- discrete opfibrations as functors ----------------------------------------


def _lift_table(p: FinFunctor) -> dict[tuple[int, int], list[int]]:
    """``(e, f) -> [morphisms of E with domain e lying over f]``, cached on ``p``."""
    table = p.__dict__.get("_lift_table")
    if table is None:
        E = p.source
        table = {}
        for m in range(E.n_mor):
            table.setdefault((E.dom_i[m], p.mor[m]), []).append(m)
        p.__dict__["_lift_table"] = table
    return table


def fibres_i(p: FinFunctor) -> list[list[int]]:
    fib = [[] for _ in p.target.objects]
    for e, x in enumerate(p.ob):
        fib[x].append(e)
    return fib


def is_discrete_opfibration_at(p: FinFunctor, f) -> Verdict:
    X, E = p.target, p.source
    m = X.mor(f)
    table = _lift_table(p)
    for e in fibres_i(p)[X.dom_i[m]]:
        n = len(table.get((e, m), ()))
        if n != 1:
            return Verdict(False, "lift count", {"f": f, "e": E.objects[e], "count": n})
    return Verdict(True)


def is_discrete_opfibration(p: FinFunctor) -> Verdict:
    """Does every ``(e, f)`` with ``p e = dom f`` have exactly one lift?

    The witness of a failure is ``{"f", "e", "count"}``.  The result is
    cached on ``p``.
    """
    cached = p.__dict__.get("_dopf_verdict")
    if cached is not None:
        return cached
    X, E = p.target, p.source
    table = _lift_table(p)
    fib = fibres_i(p)
    verdict = Verdict(True, "", {"checked": sum(len(fib[X.dom_i[m]]) for m in range(X.n_mor))})
    for m in range(X.n_mor):
        for e in fib[X.dom_i[m]]:
            n = len(table.get((e, m), ()))
            if n != 1:
                verdict = Verdict(False, "lift count", {"f": X.morphisms[m], "e": E.objects[e], "count": n})
                break
        if not verdict:
            break
    p.__dict__["_dopf_verdict"] = verdict
    return verdict


def is_discrete_fibration(p: FinFunctor) -> Verdict:
    return is_discrete_opfibration(opposite_functor(p))


def is_discrete_fibration_at(p: FinFunctor, f) -> Verdict:
    return is_discrete_opfibration_at(opposite_functor(p), f)


def _require_dopf(p: FinFunctor):
    v = is_discrete_opfibration(p)
    if not v:
        raise NotOpfibration(f"{p!r} is not a discrete opfibration: {v.witness}")


def lift_i(p: FinFunctor, e: int, f: int) -> int:
    """Index of the unique morphism over ``f`` starting at ``e``."""
    found = _lift_table(p).get((e, f), ())
    if len(found) != 1:
        raise NotOpfibrationAt(
            f"{len(found)} lifts of {p.target.morphisms[f]!r} start at {p.source.objects[e]!r}"
        )
    return found[0]


def transport(p: FinFunctor, e, f) -> tuple:
    """The unique lift of ``f`` at ``e`` and its codomain."""
    E, X = p.source, p.target
    ei, fi = E.ob(e), X.mor(f)
    if p.ob[ei] != X.dom_i[fi]:
        raise TypingMismatch(f"{e!r} does not lie over the domain of {f!r}")
    m = lift_i(p, ei, fi)
    return E.morphisms[m], E.objects[E.cod_i[m]]


def fibres_copresheaf(p: FinFunctor) -> Copresheaf:
    """Fibres of a discrete opfibration with transport as the action."""
    _require_dopf(p)
    E, X = p.source, p.target
    fib = fibres_i(p)
    pos = {}
    for es in fib:
        for i, e in enumerate(es):
            pos[e] = i
    table = _lift_table(p)
    act = []
    for m in range(X.n_mor):
        act.append([pos[E.cod_i[table[e, m][0]]] for e in fib[X.dom_i[m]]])
    return Copresheaf(X, [[E.objects[e] for e in es] for es in fib], act)


def grothendieck(F: Copresheaf) -> tuple[FinCat, FinFunctor]:
    """Category of elements of ``F`` and its projection to the base.

    Objects are ``(x, s)``; the morphism ``(g, s)`` runs from ``(x, s)`` to
    ``(y, F(g)(s))`` for ``g: x -> y``.
    """
    X = F.base
    start = []
    n = 0
    for s in F.sets:
        start.append(n)
        n += len(s)
    objects = [(x, s) for x, ss in zip(X.objects, F.sets) for s in ss]
    ob_over = [x for x, ss in enumerate(F.sets) for _ in ss]
    mstart = []
    names, dom, cod, over = [], [], [], []
    for m in range(X.n_mor):
        a, b = X.dom_i[m], X.cod_i[m]
        mstart.append(len(names))
        for i, s in enumerate(F.sets[a]):
            names.append((X.morphisms[m], s))
            dom.append(start[a] + i)
            cod.append(start[b] + F.act[m][i])
            over.append(m)
    ident = [mstart[X.ident[x]] + i for x, ss in enumerate(F.sets) for i in range(len(ss))]
    comp = {}
    for (f, g), h in X.comp.items():
        a = X.dom_i[f]
        af = F.act[f]
        for i in range(len(F.sets[a])):
            comp[mstart[f] + i, mstart[g] + af[i]] = mstart[h] + i
    El = FinCat(objects, names, dom, cod, ident, comp)
    proj = FinFunctor(El, X, ob_over, over)
    proj.__dict__["_dopf_verdict"] = Verdict(True)
    proj.__dict__["_copresheaf"] = F
    return El, proj


# -- lifts ----------------------------------------------------------------------


@dataclass(frozen=True)
class Lift:
    """A functor ``total: J -> E`` with ``over ∘ total = D``."""

    diagram: Diagram
    total: FinFunctor
    over: FinFunctor = field(compare=False)

    def __post_init__(self):
        if self.total.target != self.over.source or self.total.source != self.diagram.shape:
            raise NotALift("lift has the wrong shape")
        if compose_functors(self.total, self.over).key != self.diagram.functor.key:
            raise NotALift("lift does not lie over the diagram")


def limit_families(F: Copresheaf, budget: Budget | None = None) -> list[tuple[int, ...]]:
    """All compatible families of ``F`` as tuples of element indices.

    Objects are assigned in declaration order; an element is forced whenever
    some morphism arrives from an object already assigned.
    """
    C = F.base
    n = C.n_obj
    act = F.act
    ins = [[m for m in C.in_i[x] if C.dom_i[m] < x] for x in range(n)]
    checks = [
        [m for m in C.in_i[x] if C.dom_i[m] <= x and not C.is_identity_i[m]]
        + [m for m in C.out_i[x] if C.cod_i[m] < x]
        for x in range(n)
    ]
    out: list[tuple[int, ...]] = []
    assign = [0] * n

    def go(x):
        if x == n:
            out.append(tuple(assign))
            return
        cands = range(len(F.sets[x]))
        for m in ins[x]:
            cands = (act[m][assign[C.dom_i[m]]],)
            break
        for s in cands:
            assign[x] = s
            if budget is not None:
                budget.spend(len(checks[x]))
            if all(act[m][assign[C.dom_i[m]]] == assign[C.cod_i[m]] for m in checks[x]):
                go(x + 1)

    go(0)
    return out


def limit_finset(F: Copresheaf) -> tuple[FinSetObj, dict]:
    """Limit of a set-valued functor: the set of compatible families.

    A family is the tuple of its chosen elements in object order.  The second
    value maps each object to its projection (a dict family -> element).
    """
    fams = [tuple(F.sets[x][i] for x, i in enumerate(fam)) for fam in limit_families(F)]
    proj = {x: {fam: fam[i] for fam in fams} for i, x in enumerate(F.base.objects)}
    return FinSetObj(tuple(fams)), proj


def enumerate_lifts(d: Diagram, p: FinFunctor, budget: Budget | None = None) -> list[Lift]:
    """All lifts of ``d`` along the discrete opfibration ``p``, in family order."""
    if d.base != p.target:
        raise BaseMismatch("diagram and opfibration have different bases")
    _require_dopf(p)
    fib = fibres_i(p)
    G = Copresheaf(d.shape, [fib[x] for x in d.functor.ob], [()] * d.shape.n_mor)
    # fibre transport, reindexed along the diagram
    table = _lift_table(p)
    E = p.source
    pos = {e: i for es in fib for i, e in enumerate(es)}
    G.act = tuple(
        tuple(pos[E.cod_i[table[e, d.functor.mor[h]][0]]] for e in fib[d.functor.ob[d.shape.dom_i[h]]])
        for h in range(d.shape.n_mor)
    )
    J = d.shape
    lifts = []
    for fam in limit_families(G, budget):
        ob = [G.sets[j][i] for j, i in enumerate(fam)]
        mor = [table[ob[J.dom_i[h]], d.functor.mor[h]][0] for h in range(J.n_mor)]
        lifts.append(Lift(d, FinFunctor(J, E, ob, mor), p))
    return lifts


def functors_over(p: FinFunctor, q: FinFunctor) -> list[FinFunctor]:
    """Functors ``φ`` with ``q ∘ φ = p``, for ``q`` a discrete opfibration."""
    return [l.total for l in enumerate_lifts(Diagram(p), q)]


def isomorphisms_over(p: FinFunctor, q: FinFunctor) -> list[FinFunctor]:
    return [f for f in functors_over(p, q) if is_isomorphism(f)]


def pushforward_lift(m: DiagMorphismLeft, lift: Lift) -> tuple[Lift, NatTransform]:
    """Push a lift of the source of ``m`` to a lift of its target.

    With ``m = (R, ρ)`` and ``L`` the given lift: ``Ē k`` is the codomain of
    the unique lift of ``ρ_k`` starting at ``L(R k)``, and ``Ē g`` the unique
    lift of ``E g`` starting at ``Ē k``.  Returns the new lift and the lifted
    transformation ``ρ̄: L∘R ⇒ Ē``.
    """
    if lift.diagram != m.source:
        raise NotALift("lift is not a lift of the source diagram")
    p = lift.over
    _require_dopf(p)
    Etot = p.source
    K = m.target.shape
    R, E, L = m.r, m.target.functor, lift.total
    rho_bar = [lift_i(p, L.ob[R.ob[k]], m.rho.comps[k]) for k in range(K.n_obj)]
    ob = [Etot.cod_i[t] for t in rho_bar]
    mor = []
    for g in range(K.n_mor):
        t = lift_i(p, ob[K.dom_i[g]], E.mor[g])
        if Etot.cod_i[t] != ob[K.cod_i[g]]:
            raise InternalInvariantViolation("transported codomain disagrees with the lifted component")
        mor.append(t)
    new_total = FinFunctor(K, Etot, ob, mor)
    bar = NatTransform(compose_functors(R, L), new_total, rho_bar)
    return Lift(m.target, new_total, p), bar


# -- set-valued limits along diagram morphisms ----------------------------------


@dataclass(frozen=True)
class SetDiagMorphism:
    """A morphism of set-valued diagrams ``(J, F) -> (K, G)``.

    ``r: K -> J`` and ``comps[k]`` is a function ``F(r k) -> G(k)`` given by
    element indices, natural in ``k``.
    """

    source: Copresheaf
    target: Copresheaf
    r: FinFunctor
    comps: tuple

    def __post_init__(self):
        F, G, r = self.source, self.target, self.r
        if r.source != G.base or r.target != F.base:
            raise TypingMismatch("functor must run from the target shape to the source shape")
        K = G.base
        for k in range(K.n_obj):
            c = self.comps[k]
            if len(c) != len(F.sets[r.ob[k]]) or any(not 0 <= i < len(G.sets[k]) for i in c):
                raise TypingMismatch(f"component at {K.objects[k]!r} is not a function")
        for g in range(K.n_mor):
            a, b = K.dom_i[g], K.cod_i[g]
            Fg, Gg = F.act[r.mor[g]], G.act[g]
            for i in range(len(F.sets[r.ob[a]])):
                if Gg[self.comps[a][i]] != self.comps[b][Fg[i]]:
                    raise NotNatural(K.morphisms[g])


def limit_map(m: SetDiagMorphism) -> dict:
    """The induced function ``lim F -> lim G``, ``(s_j) ↦ (ρ_k(s_{r k}))_k``."""
    F, G, r = m.source, m.target, m.r
    out = {}
    for fam in limit_families(F):
        img = tuple(m.comps[k][fam[r.ob[k]]] for k in range(G.base.n_obj))
        out[tuple(F.sets[x][i] for x, i in enumerate(fam))] = tuple(
            G.sets[k][i] for k, i in enumerate(img)
        )
    return out


def is_bijection(fn: dict, codomain_size: int) -> bool:
    return len(set(fn.values())) == len(fn) == codomain_size


def is_relatively_initial_sets(m: SetDiagMorphism) -> Verdict:
    """Relative initiality of the mate of a set-valued morphism with bijective components.

    For each object ``j`` of the source shape, the category of pairs
    ``(k, f: r k -> j)`` with morphisms ``h: k -> k'`` such that
    ``F(f') ∘ ρ⁻¹_k' ∘ G(h) = F(f) ∘ ρ⁻¹_k`` as functions must be non-empty
    and connected.
    """
    F, G, r = m.source, m.target, m.r
    J, K = F.base, G.base
    inv = []
    for k, c in enumerate(m.comps):
        if sorted(c) != list(range(len(G.sets[k]))) or len(c) != len(G.sets[k]):
            raise NotPseudo(f"component at {K.objects[k]!r} is not a bijection")
        row = [0] * len(c)
        for i, t in enumerate(c):
            row[t] = i
        inv.append(row)
    for j in range(J.n_obj):
        objs = [(k, f) for k in range(K.n_obj) for f in J.homs_from(r.ob[k], j)]
        # each object's leg G(k) -> F(j) as a tuple of indices
        leg = [tuple(F.act[f][i] for i in inv[k]) for k, f in objs]
        pairs = []
        for a, (k, f) in enumerate(objs):
            for h in K.out_i[k]:
                k2 = K.cod_i[h]
                for b, (kk, _) in enumerate(objs):
                    if kk == k2 and tuple(leg[b][t] for t in G.act[h]) == leg[a]:
                        pairs.append((a, b))
        if not objs:
            return Verdict(False, "empty", {"j": J.objects[j]})
        if len(_blocks(len(objs), pairs)) > 1:
            return Verdict(False, "disconnected", {"j": J.objects[j]})
    return Verdict(True)


# -- hom-sets of copresheaves -----------------------------------------------------


def enumerate_nat_trans(F: Copresheaf, G: Copresheaf, budget: Budget | None = None) -> list[CopresheafMap]:
    """All natural transformations ``F ⇒ G``.

    Components are chosen object by object in declaration order.  An element
    reached by a morphism from an already-chosen object has a forced image;
    the remaining elements range freely, and every square touching the new
    component is checked before going deeper.
    """
    if F.base != G.base:
        raise BaseMismatch("copresheaves live on different bases")
    X = F.base
    n = X.n_obj
    comps: list[list[int] | None] = [None] * n
    results = []
    arrive = [[m for m in X.in_i[x] if X.dom_i[m] < x] for x in range(n)]
    squares = [
        [m for m in X.in_i[x] if X.dom_i[m] <= x] + [m for m in X.out_i[x] if X.cod_i[m] < x]
        for x in range(n)
    ]

    def go(x):
        if x == n:
            results.append(CopresheafMap(F, G, comps))
            return
        size = len(F.sets[x])
        forced: list[int | None] = [None] * size
        for m in arrive[x]:
            a = X.dom_i[m]
            for i, j in enumerate(F.act[m]):
                v = G.act[m][comps[a][i]]
                if forced[j] is None:
                    forced[j] = v
                elif forced[j] != v:
                    return
        free = [i for i in range(size) if forced[i] is None]
        for choice in itertools.product(range(len(G.sets[x])), repeat=len(free)):
            c = list(forced)
            for i, v in zip(free, choice):
                c[i] = v
            comps[x] = c
            ok = True
            for m in squares[x]:
                a, b = X.dom_i[m], X.cod_i[m]
                ca, cb, Fm, Gm = comps[a], comps[b], F.act[m], G.act[m]
                if budget is not None:
                    budget.spend(len(ca))
                if any(Gm[ca[i]] != cb[Fm[i]] for i in range(len(ca))):
                    ok = False
                    break
            if ok:
                go(x + 1)
        comps[x] = None

    go(0)
    return results


def copresheaf_isomorphisms(F: Copresheaf, G: Copresheaf) -> list[CopresheafMap]:
    if F.sizes() != G.sizes():
        return []
    return [a for a in enumerate_nat_trans(F, G) if is_copresheaf_iso(a)]


# -- enumerating copresheaves -------------------------------------------------------


def _composite_triples(X: FinCat):
    """Non-identity triples ``(f, g, h = g∘f)`` grouped by their largest index."""
    by_max: list[list[tuple[int, int, int]]] = [[] for _ in range(X.n_mor)]
    idm = X.is_identity_i
    for (f, g), h in X.comp.items():
        if idm[f] or idm[g]:
            continue
        by_max[max(f, g, h)].append((f, g, h))
    return by_max


def estimate_copresheaf_count(X: FinCat, bound: int) -> int:
    """Upper estimate of the search size of :func:`enumerate_copresheaves`.

    Morphisms that are composites of earlier non-identity morphisms are
    forced, so only the remaining ones contribute a factor.
    """
    idm = X.is_identity_i
    forced = set()
    for (f, g), h in X.comp.items():
        if not idm[f] and not idm[g] and f < h and g < h:
            forced.add(h)
    free = [m for m in range(X.n_mor) if not idm[m] and m not in forced]
    total = 0
    for sizes in itertools.product(range(bound + 1), repeat=X.n_obj):
        prod = 1
        for m in free:
            prod *= sizes[X.cod_i[m]] ** sizes[X.dom_i[m]]
        total += prod
    return total


def enumerate_copresheaves(
    X: FinCat, bound: int, work_limit: int | None = DEFAULT_WORK_LIMIT
) -> Iterator[Copresheaf]:
    """Every copresheaf on ``X`` with fibres of size at most ``bound``.

    Fibres are labelled ``"1".."n"``; copresheaves differing only by a
    relabelling are therefore listed once per labelling, but isomorphic
    copresheaves are not merged.
    """
    if work_limit is not None:
        if (bound + 1) ** X.n_obj > work_limit:
            raise BoundTooLargeForBase(f"{(bound + 1) ** X.n_obj} size vectors exceed the work limit")
        est = estimate_copresheaf_count(X, bound)
        if est > work_limit:
            raise BoundTooLargeForBase(f"about {est} copresheaves exceed the work limit {work_limit}")
    budget = Budget(work_limit)
    labels = [tuple(str(i + 1) for i in range(k)) for k in range(bound + 1)]
    triples = _composite_triples(X)
    idm = X.is_identity_i
    arrive: list[list[tuple[int, int]]] = [[] for _ in range(X.n_mor)]
    for (f, g), h in X.comp.items():
        if not idm[f] and not idm[g] and f < h and g < h:
            arrive[h].append((f, g))
    for sizes in itertools.product(range(bound + 1), repeat=X.n_obj):
        act: list[tuple[int, ...] | None] = [None] * X.n_mor
        for x, e in enumerate(X.ident):
            act[e] = tuple(range(sizes[x]))

        def go(m):
            if m == X.n_mor:
                yield Copresheaf(X, [labels[s] for s in sizes], list(act))
                return
            if idm[m]:
                yield from go(m + 1)
                return
            a, b = sizes[X.dom_i[m]], sizes[X.cod_i[m]]
            if arrive[m]:
                f, g = arrive[m][0]
                cands = [tuple(act[g][i] for i in act[f])]
            else:
                cands = itertools.product(range(b), repeat=a)
            for c in cands:
                act[m] = tuple(c)
                budget.spend(len(triples[m]) + 1)
                if all(act[h] == tuple(act[g][i] for i in act[f]) for f, g, h in triples[m]):
                    yield from go(m + 1)
            act[m] = None

        yield from go(0)


def copresheaf_from_sets(base: FinCat, sets: Sequence[Sequence], act: Sequence[Sequence[int]]) -> Copresheaf:
    """Checked constructor from index-level data."""
    return check_copresheaf(Copresheaf(base, sets, act))
