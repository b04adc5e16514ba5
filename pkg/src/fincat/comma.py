"""Comma categories, connected components and initiality.

Also home to diagrams and the two kinds of diagram morphism, since the
relative comma category and the coslice machinery are defined in terms of
them.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from scipy.cluster.hierarchy import DisjointSet

from .core import (
    FinCat,
    FinFunctor,
    NatTransform,
    Verdict,
    compose_functors,
    constant_functor,
    identity_functor,
    identity_nat,
    validate_category,
)
from .errors import TargetMismatch, TypingMismatch, UnknownObject


# -- diagrams -----------------------------------------------------------------


@dataclass(frozen=True)
class Diagram:
    """A functor ``D: J -> X`` read as a diagram of shape ``J`` in ``X``."""

    functor: FinFunctor
    name: str | None = field(default=None, compare=False)

    @property
    def shape(self) -> FinCat:
        return self.functor.source

    @property
    def base(self) -> FinCat:
        return self.functor.target


@dataclass(frozen=True)
class DiagMorphismLeft:
    """Morphism ``(J, D) -> (K, E)`` of the contravariant diagram category.

    ``r`` runs backwards, ``K -> J``, and ``rho: D∘r ⇒ E``.
    """

    source: Diagram
    target: Diagram
    r: FinFunctor
    rho: NatTransform
    name: str | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.source.base != self.target.base:
            raise TypingMismatch("diagrams live in different categories")
        if self.r.source != self.target.shape or self.r.target != self.source.shape:
            raise TypingMismatch("functor must run from the target shape to the source shape")
        if self.rho.source_functor != compose_functors(self.r, self.source.functor):
            raise TypingMismatch("transformation must start at D∘r")
        if self.rho.target_functor != self.target.functor:
            raise TypingMismatch("transformation must end at E")

    @property
    def is_strict(self) -> bool:
        return self.rho.is_identity

    @property
    def is_pseudo(self) -> bool:
        return self.rho.is_iso


@dataclass(frozen=True)
class DiagMorphismRight:
    """Morphism ``(J, D) -> (K, E)`` of the oplax diagram category.

    ``r: J -> K`` and ``rho: D ⇒ E∘r``.
    """

    source: Diagram
    target: Diagram
    r: FinFunctor
    rho: NatTransform
    name: str | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.source.base != self.target.base:
            raise TypingMismatch("diagrams live in different categories")
        if self.r.source != self.source.shape or self.r.target != self.target.shape:
            raise TypingMismatch("functor must run from the source shape to the target shape")
        if self.rho.source_functor != self.source.functor:
            raise TypingMismatch("transformation must start at D")
        if self.rho.target_functor != compose_functors(self.r, self.target.functor):
            raise TypingMismatch("transformation must end at E∘r")

    @property
    def is_strict(self) -> bool:
        return self.rho.is_identity

    @property
    def is_pseudo(self) -> bool:
        return self.rho.is_iso


def strict_left(source: Diagram, target: Diagram, r: FinFunctor) -> DiagMorphismLeft:
    """The strict morphism ``source -> target`` given by ``r`` with ``D∘r = E``."""
    if compose_functors(r, source.functor).key != target.functor.key:
        raise TypingMismatch("D∘r differs from E; the morphism is not strict")
    return DiagMorphismLeft(source, target, r, identity_nat(target.functor))


def strict_right(source: Diagram, target: Diagram, r: FinFunctor) -> DiagMorphismRight:
    if compose_functors(r, target.functor).key != source.functor.key:
        raise TypingMismatch("E∘r differs from D; the morphism is not strict")
    return DiagMorphismRight(source, target, r, identity_nat(source.functor))


def identity_left(d: Diagram) -> DiagMorphismLeft:
    return DiagMorphismLeft(d, d, identity_functor(d.shape), identity_nat(d.functor))


def identity_right(d: Diagram) -> DiagMorphismRight:
    return DiagMorphismRight(d, d, identity_functor(d.shape), identity_nat(d.functor))


def compose_left(m: DiagMorphismLeft, n: DiagMorphismLeft) -> DiagMorphismLeft:
    """``n ∘ m`` in the contravariant diagram category (first ``m``)."""
    if m.target != n.source:
        raise TypingMismatch("diagram morphisms are not composable")
    X = m.source.base
    r = compose_functors(n.r, m.r)
    comps = [X.comp[m.rho.comps[n.r.ob[l]], s] for l, s in enumerate(n.rho.comps)]
    return DiagMorphismLeft(
        m.source, n.target, r,
        NatTransform(compose_functors(r, m.source.functor), n.target.functor, comps),
    )


def compose_right(m: DiagMorphismRight, n: DiagMorphismRight) -> DiagMorphismRight:
    """``n ∘ m`` in the oplax diagram category (first ``m``)."""
    if m.target != n.source:
        raise TypingMismatch("diagram morphisms are not composable")
    X = m.source.base
    r = compose_functors(m.r, n.r)
    comps = [X.comp[p, n.rho.comps[m.r.ob[j]]] for j, p in enumerate(m.rho.comps)]
    return DiagMorphismRight(
        m.source, n.target, r,
        NatTransform(m.source.functor, compose_functors(r, n.target.functor), comps),
    )


# -- connected components -----------------------------------------------------


def _blocks(n: int, pairs) -> list[list[int]]:
    """Connected blocks of ``range(n)`` under ``pairs``, least member first."""
    ds = DisjointSet(range(n))
    for a, b in pairs:
        ds.merge(a, b)
    order: dict[int, int] = {}
    blocks: list[list[int]] = []
    for i in range(n):
        root = ds[i]
        if root not in order:
            order[root] = len(blocks)
            blocks.append([])
        blocks[order[root]].append(i)
    return blocks


@dataclass(frozen=True)
class Partition:
    """Objects of ``category`` split into zigzag-connected blocks.

    Blocks and their members follow declaration order; the representative of
    a block is its first member.
    """

    category: FinCat
    blocks: tuple

    @property
    def representatives(self) -> tuple:
        return tuple(b[0] for b in self.blocks)

    def block_of(self, x) -> int:
        for i, b in enumerate(self.blocks):
            if x in b:
                return i
        raise UnknownObject(x)

    def __len__(self):
        return len(self.blocks)


def pi0(c: FinCat) -> Partition:
    blocks = _blocks(c.n_obj, zip(c.dom_i, c.cod_i))
    return Partition(c, tuple(tuple(c.objects[i] for i in b) for b in blocks))


def pi0_indices(c: FinCat) -> list[int]:
    """Block number of every object index."""
    out = [0] * c.n_obj
    for n, b in enumerate(_blocks(c.n_obj, zip(c.dom_i, c.cod_i))):
        for i in b:
            out[i] = n
    return out


def zigzag_between(c: FinCat, a, b) -> list[tuple] | None:
    """A path of morphisms joining ``a`` to ``b`` ignoring direction.

    Returns ``[(morphism, +1 or -1), ...]`` (``+1`` when traversed forwards),
    or ``None`` when the two objects lie in different components.
    """
    start, goal = c.ob(a), c.ob(b)
    prev: dict[int, tuple[int, int, int] | None] = {start: None}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        if x == goal:
            break
        steps = [(m, c.cod_i[m], 1) for m in c.out_i[x]] + [(m, c.dom_i[m], -1) for m in c.in_i[x]]
        for m, y, d in steps:
            if y not in prev:
                prev[y] = (x, m, d)
                queue.append(y)
    if goal not in prev:
        return None
    path = []
    x = goal
    while prev[x] is not None:
        x0, m, d = prev[x]
        path.append((c.morphisms[m], d))
        x = x0
    return path[::-1]


# -- comma categories ---------------------------------------------------------


@dataclass(frozen=True)
class CommaResult:
    category: FinCat
    proj_left: FinFunctor
    proj_right: FinFunctor
    canonical_2cell: NatTransform


def comma_category(f: FinFunctor, g: FinFunctor) -> CommaResult:
    """The comma category ``f/g`` with its projections and canonical 2-cell.

    Objects are ``(a, b, γ)`` with ``γ: f a -> g b``; a morphism
    ``(h, k, γ, γ')`` is a pair ``h: a -> a'``, ``k: b -> b'`` making the
    square commute.
    """
    if f.target != g.target:
        raise TargetMismatch("comma category needs functors with a common target")
    A, B, C = f.source, g.source, f.target
    objs = []
    for a in range(A.n_obj):
        for b in range(B.n_obj):
            for gam in C.homs_from(f.ob[a], g.ob[b]):
                objs.append((a, b, gam))
    oidx = {o: i for i, o in enumerate(objs)}
    mors, dom, cod = [], [], []
    for i, (a, b, gam) in enumerate(objs):
        for h in A.out_i[a]:
            fh = f.mor[h]
            a2 = A.cod_i[h]
            for k in B.out_i[b]:
                top = C.comp[gam, g.mor[k]]
                b2 = B.cod_i[k]
                for gam2 in C.homs_from(f.ob[a2], g.ob[b2]):
                    if C.comp[fh, gam2] == top:
                        mors.append((h, k, gam, gam2))
                        dom.append(i)
                        cod.append(oidx[a2, b2, gam2])
    midx = {m: i for i, m in enumerate(mors)}
    ident = [midx[A.ident[a], B.ident[b], gam, gam] for a, b, gam in objs]
    out = [[] for _ in objs]
    for i, a in enumerate(dom):
        out[a].append(i)
    comp = {}
    for i, (h, k, gam, gam2) in enumerate(mors):
        for j in out[cod[i]]:
            h2, k2, _, gam3 = mors[j]
            comp[i, j] = midx[A.comp[h, h2], B.comp[k, k2], gam, gam3]
    cat = FinCat(
        [(A.objects[a], B.objects[b], C.morphisms[gam]) for a, b, gam in objs],
        [(A.morphisms[h], B.morphisms[k], C.morphisms[x], C.morphisms[y]) for h, k, x, y in mors],
        dom, cod, ident, comp,
    )
    pl = FinFunctor(cat, A, [o[0] for o in objs], [m[0] for m in mors])
    pr = FinFunctor(cat, B, [o[1] for o in objs], [m[1] for m in mors])
    cell = NatTransform(compose_functors(pl, f), compose_functors(pr, g), [o[2] for o in objs])
    return CommaResult(cat, pl, pr, cell)


def slice_blocks(F: FinFunctor, x: int):
    """Connected components of the comma category ``F/x``, by index.

    Returns ``(elements, blocks)`` where ``elements`` lists the pairs
    ``(j, f)`` with ``f: F j -> x`` (indices, in declaration order) and
    ``blocks`` groups element positions, least member first.  This is the
    same partition as ``pi0(comma_category(F, constant x))`` without
    materializing the comma category.
    """
    J, X = F.source, F.target
    elems = []
    where = {}
    for j in range(J.n_obj):
        for f in X.homs_from(F.ob[j], x):
            where[j, f] = len(elems)
            elems.append((j, f))
    pairs = []
    for h in range(J.n_mor):
        a, b = J.dom_i[h], J.cod_i[h]
        fh = F.mor[h]
        for f2 in X.homs_from(F.ob[b], x):
            pairs.append((where[a, X.comp[fh, f2]], where[b, f2]))
    return elems, _blocks(len(elems), pairs)


def is_initial(r: FinFunctor) -> Verdict:
    """Is every comma category ``r/k`` non-empty and connected?

    On failure the witness names the first offending ``k`` and, for a
    disconnected comma category, one representative per component.  On
    success it lists a representative of each (connected) comma category.
    """
    K = r.target
    reps = {}
    for k in range(K.n_obj):
        elems, blocks = slice_blocks(r, k)
        if not blocks:
            return Verdict(False, "empty", {"k": K.objects[k]})
        if len(blocks) > 1:
            J = r.source
            comps = [(J.objects[elems[b[0]][0]], K.morphisms[elems[b[0]][1]]) for b in blocks]
            return Verdict(False, "disconnected", {"k": K.objects[k], "components": comps})
        j, f = elems[0]
        reps[K.objects[k]] = (r.source.objects[j], K.morphisms[f])
    return Verdict(True, "", {"representatives": reps})


# -- relative comma categories ------------------------------------------------


def relative_comma(m: DiagMorphismRight, k) -> FinCat:
    """The relative comma category ``(r, ρ)/k``.

    Objects are ``(j, f)`` with ``f: r j -> k``; a morphism
    ``(h, (j, f), (j', f'))`` is any ``h: j -> j'`` with
    ``E f' ∘ ρ_j' ∘ D h = E f ∘ ρ_j`` in the base.
    """
    J, K = m.r.source, m.r.target
    X = m.source.base
    D, E, R, rho = m.source.functor, m.target.functor, m.r, m.rho.comps
    kk = K.ob(k)
    objs = [(j, f) for j in range(J.n_obj) for f in K.homs_from(R.ob[j], kk)]
    by_j: dict[int, list[int]] = {}
    for i, (j, f) in enumerate(objs):
        by_j.setdefault(j, []).append(i)
    # value of the leg E f ∘ ρ_j for each object
    leg = [X.comp[rho[j], E.mor[f]] for j, f in objs]
    mors, dom, cod = [], [], []
    for i, (j, f) in enumerate(objs):
        for h in J.out_i[j]:
            j2 = J.cod_i[h]
            for i2 in by_j.get(j2, ()):
                if X.comp[D.mor[h], leg[i2]] == leg[i]:
                    mors.append((h, i, i2))
                    dom.append(i)
                    cod.append(i2)
    midx = {mm: n for n, mm in enumerate(mors)}
    ident = [midx[J.ident[j], i, i] for i, (j, f) in enumerate(objs)]
    out = [[] for _ in objs]
    for n, a in enumerate(dom):
        out[a].append(n)
    comp = {}
    for n, (h, a, b) in enumerate(mors):
        for n2 in out[b]:
            h2, _, c = mors[n2]
            comp[n, n2] = midx[J.comp[h, h2], a, c]
    names = [(J.objects[j], K.morphisms[f]) for j, f in objs]
    return FinCat(
        names,
        [(J.morphisms[h], names[a], names[b]) for h, a, b in mors],
        dom, cod, ident, comp,
    )


def is_relatively_initial(m: DiagMorphismRight) -> Verdict:
    K = m.r.target
    reps = {}
    for k in K.objects:
        c = relative_comma(m, k)
        if c.n_obj == 0:
            return Verdict(False, "empty", {"k": k})
        p = pi0(c)
        if len(p) > 1:
            return Verdict(False, "disconnected", {"k": k, "components": list(p.representatives)})
        reps[k] = c.objects[0]
    return Verdict(True, "", {"representatives": reps})


# -- coslices and strictification ----------------------------------------------


def coslice(d: Diagram) -> tuple[CommaResult, FinFunctor]:
    """The coslice ``D/X`` and the splitting ``ι: J -> D/X`` of its projection.

    ``ι`` sends ``j`` to ``(j, D j, id)`` and is left adjoint to the
    projection onto ``J``.
    """
    D, J, X = d.functor, d.shape, d.base
    res = comma_category(D, identity_functor(X))
    C = res.category
    ob = [C.ob((J.objects[j], X.objects[D.ob[j]], X.morphisms[X.ident[D.ob[j]]])) for j in range(J.n_obj)]
    mor = []
    for h in range(J.n_mor):
        a, b = X.ident[D.ob[J.dom_i[h]]], X.ident[D.ob[J.cod_i[h]]]
        mor.append(C.mor((J.morphisms[h], X.morphisms[D.mor[h]], X.morphisms[a], X.morphisms[b])))
    return res, FinFunctor(J, C, ob, mor)


def strictify(m: DiagMorphismLeft) -> tuple[DiagMorphismLeft, DiagMorphismLeft]:
    """Factor ``m = (R, ρ)`` through the coslice of its source diagram.

    Returns ``(strict, coslice_leg)`` with ``compose_left(coslice_leg, strict) == m``:
    ``coslice_leg = (π, ω)`` from ``D`` to the projection ``D/X -> X`` and
    ``strict = (ρ̂, id)`` where ``ρ̂ k = (R k, E k, ρ_k)``.
    """
    res, _ = coslice(m.source)
    C = res.category
    J, K, X = m.source.shape, m.target.shape, m.source.base
    R, E, rho = m.r, m.target.functor, m.rho.comps
    apex = Diagram(res.proj_right)
    ob = [C.ob((J.objects[R.ob[k]], X.objects[E.ob[k]], X.morphisms[rho[k]])) for k in range(K.n_obj)]
    mor = [
        C.mor((J.morphisms[R.mor[g]], X.morphisms[E.mor[g]],
               X.morphisms[rho[K.dom_i[g]]], X.morphisms[rho[K.cod_i[g]]]))
        for g in range(K.n_mor)
    ]
    hat = FinFunctor(K, C, ob, mor)
    leg = DiagMorphismLeft(m.source, apex, res.proj_left, res.canonical_2cell)
    return strict_left(apex, m.target, hat), leg


def comma_with_object(r: FinFunctor, k) -> CommaResult:
    """``r/k`` as a comma category against the constant functor at ``k``."""
    one = validate_category(["*"], [("id_*", "*", "*")], {"*": "id_*"}, [("id_*", "id_*", "id_*")])
    return comma_category(r, constant_functor(one, r.target, k))
