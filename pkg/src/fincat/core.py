"""Finite categories, functors and natural transformations.

Everything is stored as explicit tables.  Identifiers are whatever hashable
values the caller supplies (strings when read from a workspace file, tuples
for categories built by the library); internally objects and morphisms are
addressed by dense integer indices assigned in declaration order, and every
enumeration in the package follows that order.

Values are immutable once built.  The plain constructors trust their input;
the ``validate_*`` functions check every law exhaustively and are the entry
points for untrusted data.
"""

from __future__ import annotations

from collections.abc import Hashable, Iterable, Mapping, Sequence
from dataclasses import dataclass
from functools import cached_property

from .errors import (
    BadComponentTyping,
    BadIdentity,
    CyclicGraph,
    DanglingReference,
    DuplicateIdentifier,
    IllTypedComposite,
    MissingComposite,
    NonAssociative,
    NotComposable,
    NotFunctorial,
    NotNatural,
    SourceTargetMismatch,
    TypingMismatch,
    UnknownMorphism,
    UnknownObject,
)

Ident = Hashable


class FinCat:
    """A finite category given by object, morphism and composition tables.

    ``comp[(f, g)]`` is the index of ``g ∘ f`` (first ``f``, then ``g``).
    Use :func:`validate_category` to build one from untrusted tables.
    """

    def __init__(self, objects, morphisms, dom, cod, ident, comp, name=None):
        self.objects = tuple(objects)
        self.morphisms = tuple(morphisms)
        self.dom_i = tuple(dom)
        self.cod_i = tuple(cod)
        self.ident = tuple(ident)
        self.comp = comp
        self.name = name
        self._ob = {x: i for i, x in enumerate(self.objects)}
        self._mor = {f: i for i, f in enumerate(self.morphisms)}

    # -- lookup -------------------------------------------------------------

    def ob(self, x) -> int:
        try:
            return self._ob[x]
        except (KeyError, TypeError):
            raise UnknownObject(f"{x!r} is not an object of {self}") from None

    def mor(self, f) -> int:
        try:
            return self._mor[f]
        except (KeyError, TypeError):
            raise UnknownMorphism(f"{f!r} is not a morphism of {self}") from None

    def has_object(self, x) -> bool:
        try:
            return x in self._ob
        except TypeError:
            return False

    def has_morphism(self, f) -> bool:
        try:
            return f in self._mor
        except TypeError:
            return False

    def dom(self, f):
        return self.objects[self.dom_i[self.mor(f)]]

    def cod(self, f):
        return self.objects[self.cod_i[self.mor(f)]]

    def identity(self, x):
        return self.morphisms[self.ident[self.ob(x)]]

    def compose(self, f, g):
        """Identifier of ``g ∘ f``."""
        i, j = self.mor(f), self.mor(g)
        try:
            return self.morphisms[self.comp[i, j]]
        except KeyError:
            raise NotComposable(f"cannot compose {g!r} after {f!r}") from None

    def hom(self, x, y) -> tuple:
        return tuple(self.morphisms[m] for m in self.hom_i.get((self.ob(x), self.ob(y)), ()))

    @property
    def n_obj(self) -> int:
        return len(self.objects)

    @property
    def n_mor(self) -> int:
        return len(self.morphisms)

    @cached_property
    def hom_i(self) -> dict[tuple[int, int], tuple[int, ...]]:
        out: dict[tuple[int, int], list[int]] = {}
        for m, (a, b) in enumerate(zip(self.dom_i, self.cod_i)):
            out.setdefault((a, b), []).append(m)
        return {k: tuple(v) for k, v in out.items()}

    @cached_property
    def out_i(self) -> tuple[tuple[int, ...], ...]:
        out = [[] for _ in self.objects]
        for m, a in enumerate(self.dom_i):
            out[a].append(m)
        return tuple(tuple(v) for v in out)

    @cached_property
    def in_i(self) -> tuple[tuple[int, ...], ...]:
        inc = [[] for _ in self.objects]
        for m, b in enumerate(self.cod_i):
            inc[b].append(m)
        return tuple(tuple(v) for v in inc)

    @cached_property
    def is_identity_i(self) -> tuple[bool, ...]:
        flags = [False] * self.n_mor
        for m in self.ident:
            flags[m] = True
        return tuple(flags)

    def homs_from(self, a: int, b: int) -> tuple[int, ...]:
        return self.hom_i.get((a, b), ())

    def inverse_i(self, m: int) -> int | None:
        a, b = self.dom_i[m], self.cod_i[m]
        for g in self.homs_from(b, a):
            if self.comp[m, g] == self.ident[a] and self.comp[g, m] == self.ident[b]:
                return g
        return None

    def is_iso(self, f) -> bool:
        return self.inverse_i(self.mor(f)) is not None

    def inverse(self, f):
        g = self.inverse_i(self.mor(f))
        if g is None:
            raise ValueError(f"{f!r} is not invertible")
        return self.morphisms[g]

    # -- comparison and display ---------------------------------------------

    def tables(self) -> dict:
        """Plain-data view: objects, (id, dom, cod) rows, identities, composites."""
        return {
            "objects": list(self.objects),
            "morphisms": [
                (f, self.objects[a], self.objects[b])
                for f, a, b in zip(self.morphisms, self.dom_i, self.cod_i)
            ],
            "identity": {x: self.morphisms[m] for x, m in zip(self.objects, self.ident)},
            "compose": [
                (self.morphisms[f], self.morphisms[g], self.morphisms[h])
                for (f, g), h in sorted(self.comp.items())
            ],
        }

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, FinCat):
            return NotImplemented
        return (
            self.objects == other.objects
            and self.morphisms == other.morphisms
            and self.dom_i == other.dom_i
            and self.cod_i == other.cod_i
            and self.ident == other.ident
            and self.comp == other.comp
        )

    def __hash__(self):
        return hash((self.objects, self.morphisms))

    def __repr__(self):
        label = f"{self.name!r}, " if self.name is not None else ""
        return f"FinCat({label}{self.n_obj} objects, {self.n_mor} morphisms)"


def validate_category(objects, morphisms, identity, compose, name=None) -> FinCat:
    """Check raw tables and build a :class:`FinCat`.

    ``morphisms`` is a sequence of ``(id, dom, cod)`` rows, ``identity`` maps
    each object to its identity morphism and ``compose`` maps ``(f, g)`` to
    the identifier of ``g ∘ f`` (or is a sequence of ``(f, g, h)`` triples).
    The first violated law is reported.
    """
    objects = list(objects)
    ob = {}
    for x in objects:
        if x in ob:
            raise DuplicateIdentifier(f"object {x!r} declared twice")
        ob[x] = len(ob)
    mor, dom, cod = {}, [], []
    names = []
    for row in morphisms:
        f, a, b = row
        if f in mor:
            raise DuplicateIdentifier(f"morphism {f!r} declared twice")
        for end in (a, b):
            if end not in ob:
                raise DanglingReference(f"morphism {f!r} refers to unknown object {end!r}")
        mor[f] = len(names)
        names.append(f)
        dom.append(ob[a])
        cod.append(ob[b])

    ident = []
    identity = dict(identity)
    for x in objects:
        if x not in identity:
            raise BadIdentity(f"object {x!r} has no identity")
        e = identity[x]
        if e not in mor:
            raise DanglingReference(f"identity of {x!r} is unknown morphism {e!r}")
        if dom[mor[e]] != ob[x] or cod[mor[e]] != ob[x]:
            raise BadIdentity(f"identity {e!r} of {x!r} is not an endomorphism of {x!r}")
        ident.append(mor[e])
    extra = set(identity) - set(ob)
    if extra:
        raise DanglingReference(f"identity given for unknown objects {sorted(map(repr, extra))}")

    triples = compose.items() if isinstance(compose, Mapping) else (((f, g), h) for f, g, h in compose)
    comp: dict[tuple[int, int], int] = {}
    for (f, g), h in triples:
        for m in (f, g, h):
            if m not in mor:
                raise DanglingReference(f"composite entry ({f!r}, {g!r}) -> {h!r} names unknown {m!r}")
        i, j, k = mor[f], mor[g], mor[h]
        if cod[i] != dom[j]:
            raise DanglingReference(f"composite of {g!r} after {f!r} declared on a non-composable pair")
        if (i, j) in comp and comp[i, j] != k:
            raise DuplicateIdentifier(f"two composites declared for {g!r} after {f!r}")
        if dom[k] != dom[i] or cod[k] != cod[j]:
            raise IllTypedComposite(f"{h!r} cannot be {g!r} after {f!r}: endpoints differ")
        comp[i, j] = k

    n = len(names)
    out = [[] for _ in objects]
    for m in range(n):
        out[dom[m]].append(m)
    for i in range(n):
        for j in out[cod[i]]:
            if (i, j) not in comp:
                raise MissingComposite(f"no composite declared for {names[j]!r} after {names[i]!r}")
    for i in range(n):
        if comp[ident[dom[i]], i] != i or comp[i, ident[cod[i]]] != i:
            raise BadIdentity(f"identity law fails for {names[i]!r}")
    for i in range(n):
        for j in out[cod[i]]:
            ij = comp[i, j]
            for k in out[cod[j]]:
                if comp[ij, k] != comp[i, comp[j, k]]:
                    raise NonAssociative(
                        f"({names[k]!r} ∘ {names[j]!r}) ∘ {names[i]!r} differs from "
                        f"{names[k]!r} ∘ ({names[j]!r} ∘ {names[i]!r})"
                    )
    return FinCat(objects, names, dom, cod, ident, comp, name=name)


def recheck(c: FinCat) -> FinCat:
    """Run :func:`validate_category` on the tables of an existing category."""
    t = c.tables()
    return validate_category(t["objects"], t["morphisms"], t["identity"], t["compose"], name=c.name)


def relabel(c: FinCat, objects=None, morphisms=None, name=None) -> FinCat:
    """Copy of ``c`` with identifiers renamed by the given callables."""
    fo = objects or (lambda x: x)
    fm = morphisms or (lambda f: f)
    obs = [fo(x) for x in c.objects]
    mors = [fm(f) for f in c.morphisms]
    if len(set(obs)) != len(obs) or len(set(mors)) != len(mors):
        raise DuplicateIdentifier("relabelling is not injective")
    return FinCat(obs, mors, c.dom_i, c.cod_i, c.ident, dict(c.comp), name=name)


def empty_category(name=None) -> FinCat:
    return FinCat((), (), (), (), (), {}, name=name)


def discrete_category(objects: Sequence, name=None) -> FinCat:
    objects = list(objects)
    n = len(objects)
    return FinCat(
        objects, [f"id_{x}" for x in objects], range(n), range(n), range(n),
        {(i, i): i for i in range(n)}, name=name,
    )


# -- free categories ----------------------------------------------------------


@dataclass(frozen=True)
class GraphPresentation:
    """A directed multigraph: ``edges`` are ``(id, src, dst)`` triples."""

    vertices: tuple
    edges: tuple

    def __init__(self, vertices: Iterable, edges: Iterable):
        object.__setattr__(self, "vertices", tuple(vertices))
        object.__setattr__(self, "edges", tuple(tuple(e) for e in edges))
        if len(set(self.vertices)) != len(self.vertices):
            raise DuplicateIdentifier("vertex declared twice")
        ids = [e[0] for e in self.edges]
        if len(set(ids)) != len(ids):
            raise DuplicateIdentifier("edge declared twice")
        vs = set(self.vertices)
        for e, s, t in self.edges:
            if s not in vs or t not in vs:
                raise DanglingReference(f"edge {e!r} refers to an unknown vertex")


def _path_name(v, path: tuple):
    if not path:
        return f"id_{v}"
    if len(path) == 1:
        return path[0]
    return "∘".join(str(e) for e in reversed(path))


def free_category_on_acyclic_graph(g: GraphPresentation, name=None) -> FinCat:
    """Free category on an acyclic graph; morphisms are the directed paths.

    Identities come first (in vertex order), then paths by length, each
    length in depth-first order.  A path ``a`` then ``b`` is named ``"b∘a"``.
    """
    vidx = {v: i for i, v in enumerate(g.vertices)}
    out = [[] for _ in g.vertices]
    for e, s, t in g.edges:
        out[vidx[s]].append((e, vidx[t]))

    state = [0] * len(g.vertices)  # 0 new, 1 on stack, 2 done

    def visit(v):
        state[v] = 1
        for e, w in out[v]:
            if state[w] == 1:
                raise CyclicGraph(f"edge {e!r} closes a directed cycle; the free category would be infinite")
            if state[w] == 0:
                visit(w)
        state[v] = 2

    for v in range(len(g.vertices)):
        if state[v] == 0:
            visit(v)

    by_len: list[list[tuple[int, int, tuple]]] = [[(v, v, ()) for v in range(len(g.vertices))]]
    frontier = [(s, s, ()) for s in range(len(g.vertices))]
    while frontier:
        nxt = []
        for s, t, p in frontier:
            for e, w in out[t]:
                nxt.append((s, w, p + (e,)))
        if nxt:
            by_len.append(nxt)
        frontier = nxt
    paths = [p for layer in by_len for p in layer]
    index = {(s, p): i for i, (s, t, p) in enumerate(paths)}
    names = [_path_name(g.vertices[s], p) for s, t, p in paths]
    if len(set(names)) != len(names):
        raise DuplicateIdentifier("path names collide; rename edges or vertices")
    dom = [s for s, t, p in paths]
    cod = [t for s, t, p in paths]
    ident = list(range(len(g.vertices)))
    starting = [[] for _ in g.vertices]
    for i, (s, t, p) in enumerate(paths):
        starting[s].append(i)
    comp = {}
    for i, (s, t, p) in enumerate(paths):
        for j in starting[t]:
            comp[i, j] = index[s, p + paths[j][2]]
    return FinCat(g.vertices, names, dom, cod, ident, comp, name=name)


def opposite(c: FinCat) -> FinCat:
    """Same identifiers, endpoints swapped, composition reversed."""
    comp = {(g, f): h for (f, g), h in c.comp.items()}
    name = None if c.name is None else f"{c.name}^op"
    return FinCat(c.objects, c.morphisms, c.cod_i, c.dom_i, c.ident, comp, name=name)


# -- functors -----------------------------------------------------------------


class FinFunctor:
    """A functor between finite categories, stored as index maps."""

    def __init__(self, source: FinCat, target: FinCat, ob, mor, name=None):
        self.source = source
        self.target = target
        self.ob = tuple(ob)
        self.mor = tuple(mor)
        self.name = name

    @property
    def object_map(self) -> dict:
        t = self.target.objects
        return {x: t[i] for x, i in zip(self.source.objects, self.ob)}

    @property
    def morphism_map(self) -> dict:
        t = self.target.morphisms
        return {f: t[i] for f, i in zip(self.source.morphisms, self.mor)}

    def on_object(self, x):
        return self.target.objects[self.ob[self.source.ob(x)]]

    def on_morphism(self, f):
        return self.target.morphisms[self.mor[self.source.mor(f)]]

    @property
    def key(self) -> tuple:
        return (self.ob, self.mor)

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, FinFunctor):
            return NotImplemented
        return (
            self.ob == other.ob
            and self.mor == other.mor
            and self.source == other.source
            and self.target == other.target
        )

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        label = f"{self.name!r}: " if self.name is not None else ""
        return f"FinFunctor({label}{self.source!r} -> {self.target!r})"


def check_functor(F: FinFunctor) -> FinFunctor:
    s, t = F.source, F.target
    if len(F.ob) != s.n_obj or len(F.mor) != s.n_mor:
        raise NotFunctorial("totality", None, "maps are not total on the source")
    for m in range(s.n_mor):
        fm = F.mor[m]
        if t.dom_i[fm] != F.ob[s.dom_i[m]]:
            raise NotFunctorial("dom", s.morphisms[m], f"domain of image of {s.morphisms[m]!r} is wrong")
        if t.cod_i[fm] != F.ob[s.cod_i[m]]:
            raise NotFunctorial("cod", s.morphisms[m], f"codomain of image of {s.morphisms[m]!r} is wrong")
    for x in range(s.n_obj):
        if F.mor[s.ident[x]] != t.ident[F.ob[x]]:
            raise NotFunctorial("identity", s.objects[x])
    for (i, j), k in s.comp.items():
        if t.comp[F.mor[i], F.mor[j]] != F.mor[k]:
            raise NotFunctorial("composition", (s.morphisms[i], s.morphisms[j]))
    return F


def validate_functor(object_map: Mapping, morphism_map: Mapping, source: FinCat, target: FinCat, name=None) -> FinFunctor:
    """Build a functor from identifier maps, checking every preservation law."""
    try:
        ob = [target.ob(object_map[x]) for x in source.objects]
        mor = [target.mor(morphism_map[f]) for f in source.morphisms]
    except KeyError as exc:
        raise NotFunctorial("totality", exc.args[0] if exc.args else None,
                            f"map is not total or names unknown value: {exc}") from None
    return check_functor(FinFunctor(source, target, ob, mor, name=name))


def identity_functor(c: FinCat) -> FinFunctor:
    return FinFunctor(c, c, range(c.n_obj), range(c.n_mor), name=None)


def constant_functor(source: FinCat, target: FinCat, x) -> FinFunctor:
    i = target.ob(x)
    return FinFunctor(source, target, [i] * source.n_obj, [target.ident[i]] * source.n_mor)


def compose_functors(f: FinFunctor, g: FinFunctor, check: bool = False) -> FinFunctor:
    """``g ∘ f``: first ``f``, then ``g``."""
    if f.target != g.source:
        raise SourceTargetMismatch(f"target of {f!r} is not the source of {g!r}")
    h = FinFunctor(f.source, g.target, [g.ob[i] for i in f.ob], [g.mor[i] for i in f.mor])
    return check_functor(h) if check else h


def opposite_functor(f: FinFunctor) -> FinFunctor:
    return FinFunctor(opposite(f.source), opposite(f.target), f.ob, f.mor)


def is_isomorphism(f: FinFunctor) -> bool:
    return (
        sorted(f.ob) == list(range(f.target.n_obj))
        and sorted(f.mor) == list(range(f.target.n_mor))
    )


def inverse_functor(f: FinFunctor) -> FinFunctor:
    if not is_isomorphism(f):
        raise ValueError(f"{f!r} is not an isomorphism of categories")
    ob = [0] * f.target.n_obj
    mor = [0] * f.target.n_mor
    for i, j in enumerate(f.ob):
        ob[j] = i
    for i, j in enumerate(f.mor):
        mor[j] = i
    return FinFunctor(f.target, f.source, ob, mor)


def coproduct_categories(c: FinCat, d: FinCat, name=None):
    """Disjoint union with identifiers tagged ``("inl", x)`` / ``("inr", x)``.

    Returns the sum and its two injections.
    """
    n, m = c.n_obj, c.n_mor
    objects = [("inl", x) for x in c.objects] + [("inr", x) for x in d.objects]
    mors = [("inl", f) for f in c.morphisms] + [("inr", f) for f in d.morphisms]
    dom = list(c.dom_i) + [a + n for a in d.dom_i]
    cod = list(c.cod_i) + [b + n for b in d.cod_i]
    ident = list(c.ident) + [e + m for e in d.ident]
    comp = dict(c.comp)
    comp.update({(f + m, g + m): h + m for (f, g), h in d.comp.items()})
    s = FinCat(objects, mors, dom, cod, ident, comp, name=name)
    inl = FinFunctor(c, s, range(n), range(m))
    inr = FinFunctor(d, s, range(n, n + d.n_obj), range(m, m + d.n_mor))
    return s, inl, inr


# -- natural transformations --------------------------------------------------


class NatTransform:
    """A natural transformation; ``comps[j]`` is a morphism index of the target."""

    def __init__(self, source_functor: FinFunctor, target_functor: FinFunctor, comps):
        self.source_functor = source_functor
        self.target_functor = target_functor
        self.comps = tuple(comps)

    @property
    def domain(self) -> FinCat:
        return self.source_functor.source

    @property
    def codomain(self) -> FinCat:
        return self.source_functor.target

    @property
    def components(self) -> dict:
        t = self.codomain.morphisms
        return {x: t[m] for x, m in zip(self.domain.objects, self.comps)}

    def component(self, x):
        return self.codomain.morphisms[self.comps[self.domain.ob(x)]]

    @property
    def is_identity(self) -> bool:
        ident = self.codomain.ident
        return all(m == ident[self.source_functor.ob[j]] for j, m in enumerate(self.comps)) and (
            self.source_functor.key == self.target_functor.key
        )

    @property
    def is_iso(self) -> bool:
        return all(self.codomain.inverse_i(m) is not None for m in self.comps)

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, NatTransform):
            return NotImplemented
        return (
            self.comps == other.comps
            and self.source_functor == other.source_functor
            and self.target_functor == other.target_functor
        )

    def __hash__(self):
        return hash(self.comps)

    def __repr__(self):
        return f"NatTransform({self.components!r})"


def check_nat(t: NatTransform) -> NatTransform:
    F, G = t.source_functor, t.target_functor
    if F.source != G.source or F.target != G.target:
        raise TypingMismatch("functors are not parallel")
    J, X = F.source, F.target
    if len(t.comps) != J.n_obj:
        raise BadComponentTyping("components are not total")
    for j, m in enumerate(t.comps):
        if X.dom_i[m] != F.ob[j] or X.cod_i[m] != G.ob[j]:
            raise BadComponentTyping(
                f"component at {J.objects[j]!r} should run {X.objects[F.ob[j]]!r} -> {X.objects[G.ob[j]]!r}"
            )
    for h in range(J.n_mor):
        a, b = J.dom_i[h], J.cod_i[h]
        if X.comp[t.comps[a], G.mor[h]] != X.comp[F.mor[h], t.comps[b]]:
            raise NotNatural(J.morphisms[h])
    return t


def validate_nat_trans(components: Mapping, f: FinFunctor, g: FinFunctor) -> NatTransform:
    """Build ``f ⇒ g`` from a map of source objects to target morphisms."""
    if f.source != g.source or f.target != g.target:
        raise TypingMismatch("functors are not parallel")
    X = f.target
    try:
        comps = [X.mor(components[x]) for x in f.source.objects]
    except KeyError as exc:
        raise BadComponentTyping(f"missing or unknown component: {exc}") from None
    return check_nat(NatTransform(f, g, comps))


def identity_nat(f: FinFunctor) -> NatTransform:
    return NatTransform(f, f, [f.target.ident[i] for i in f.ob])


def nat_vertical_compose(sigma: NatTransform, tau: NatTransform) -> NatTransform:
    """``tau · sigma`` for ``sigma: F ⇒ G`` and ``tau: G ⇒ H``."""
    if sigma.target_functor != tau.source_functor:
        raise TypingMismatch("transformations are not composable")
    X = sigma.codomain
    return NatTransform(
        sigma.source_functor, tau.target_functor,
        [X.comp[a, b] for a, b in zip(sigma.comps, tau.comps)],
    )


def nat_whisker(h: FinFunctor, tau: NatTransform, side: str) -> NatTransform:
    """Whisker ``tau: F ⇒ G`` by a functor.

    ``side="post"`` gives ``h F ⇒ h G`` (``h`` applied to components);
    ``side="pre"`` gives ``F h ⇒ G h`` (components reindexed along ``h``).
    """
    if side == "post":
        if h.source != tau.codomain:
            raise TypingMismatch("functor does not start where the transformation lands")
        return NatTransform(
            compose_functors(tau.source_functor, h), compose_functors(tau.target_functor, h),
            [h.mor[m] for m in tau.comps],
        )
    if side == "pre":
        if h.target != tau.domain:
            raise TypingMismatch("functor does not land where the transformation starts")
        return NatTransform(
            compose_functors(h, tau.source_functor), compose_functors(h, tau.target_functor),
            [tau.comps[i] for i in h.ob],
        )
    raise ValueError("side must be 'post' or 'pre'")


def inverse_nat(tau: NatTransform) -> NatTransform:
    X = tau.codomain
    inv = []
    for m in tau.comps:
        g = X.inverse_i(m)
        if g is None:
            raise ValueError(f"component {X.morphisms[m]!r} is not invertible")
        inv.append(g)
    return NatTransform(tau.target_functor, tau.source_functor, inv)


@dataclass(frozen=True)
class Verdict:
    """Answer of a decision procedure together with its certificate.

    Truthiness is the answer, so ``if is_initial(r): ...`` reads naturally;
    ``witness`` holds whatever data explains the answer.
    """

    value: bool
    reason: str = ""
    witness: dict | None = None

    def __bool__(self):
        return self.value
