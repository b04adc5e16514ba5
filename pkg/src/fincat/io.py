"""Workspace files: one YAML document per file, sections keyed by kind.

A workspace maps names to categories, functors, transformations, diagrams,
copresheaves and diagram morphisms.  Identifiers are strings; a YAML list
stands for a tuple identifier, which is how constructed categories (comma
categories, categories of elements) round-trip.  Every entry is validated on
load, and errors carry the file and line of the offending entry.

Grammar (all sections optional)::

    category:
      NAME:
        objects: [ID, ...]
        morphisms: [[ID, DOM, COD], ...]
        identity: {OBJ: MOR, ...}        # default: id_<object>
        compose: [[F, G, G∘F], ...]     # composites with an identity may be left out
      NAME:
        graph: {vertices: [ID, ...], edges: [[ID, SRC, DST], ...]}
    functor:
      NAME: {source: CAT, target: CAT, objects: MAP, morphisms: MAP}   # identities may be left out
    nat:
      NAME: {source: FUNCTOR, target: FUNCTOR, components: MAP}
    diagram:
      NAME: FUNCTOR                     # every functor is also a diagram under its own name
    copresheaf:
      NAME: {base: CAT, sets: {OBJ: [ELEMENT, ...]}, act: {MOR: MAP}}
    diagram_morphism:
      NAME: {kind: left|right, source: DIAGRAM, target: DIAGRAM, functor: FUNCTOR, nat: NAT}

``MAP`` is a YAML mapping or, when keys are tuples, a list of ``[key, value]``
pairs.  ``nat`` may be omitted for a strict diagram morphism.
"""

from __future__ import annotations

import os
from collections.abc import Iterable
from dataclasses import dataclass, field
from importlib import resources

import yaml

from .comma import DiagMorphismLeft, DiagMorphismRight, Diagram, strict_left, strict_right
from .core import (
    FinCat,
    FinFunctor,
    GraphPresentation,
    NatTransform,
    free_category_on_acyclic_graph,
    validate_category,
    validate_functor,
    validate_nat_trans,
)
from .errors import (
    DuplicateIdentifier,
    FinCatError,
    ParseError,
    UnresolvedReference,
    WorkspaceValidationError,
)
from .fibration import Copresheaf, validate_copresheaf

SECTIONS = ("category", "functor", "nat", "diagram", "copresheaf", "diagram_morphism")


@dataclass
class Bundle:
    categories: dict[str, FinCat] = field(default_factory=dict)
    functors: dict[str, FinFunctor] = field(default_factory=dict)
    nats: dict[str, NatTransform] = field(default_factory=dict)
    diagrams: dict[str, Diagram] = field(default_factory=dict)
    copresheaves: dict[str, Copresheaf] = field(default_factory=dict)
    morphisms: dict[str, DiagMorphismLeft | DiagMorphismRight] = field(default_factory=dict)

    def section(self, kind: str) -> dict:
        return {
            "category": self.categories,
            "functor": self.functors,
            "nat": self.nats,
            "diagram": self.diagrams,
            "copresheaf": self.copresheaves,
            "diagram_morphism": self.morphisms,
        }[kind]

    def get(self, kind: str, name: str):
        try:
            return self.section(kind)[name]
        except KeyError:
            raise UnresolvedReference(f"no {kind} named {name!r}") from None


# -- YAML nodes with line numbers ------------------------------------------------


class _Str(str):
    line: int | None = None


class _Seq(list):
    line: int | None = None


class _Map(dict):
    line: int | None = None


def _hashable(v):
    if isinstance(v, list):
        return tuple(_hashable(x) for x in v)
    return v


def _from_node(node):
    line = node.start_mark.line + 1
    if isinstance(node, yaml.ScalarNode):
        if node.tag.endswith(":null"):
            return None
        out = _Str(node.value)
    elif isinstance(node, yaml.SequenceNode):
        out = _Seq(_from_node(n) for n in node.value)
    else:
        out = _Map()
        for k, v in node.value:
            out[_hashable(_from_node(k))] = _from_node(v)
    out.line = line
    return out


def _parse(text: str, file: str):
    try:
        node = yaml.compose(text, Loader=yaml.SafeLoader)
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        raise ParseError(str(exc).splitlines()[0], file, mark.line + 1 if mark else None) from None
    if node is None:
        return _Map()
    doc = _from_node(node)
    if not isinstance(doc, dict):
        raise ParseError("a workspace document must be a mapping of sections", file, doc.line)
    for key in doc:
        if key not in SECTIONS:
            raise ParseError(f"unknown section {key!r}", file, getattr(key, "line", None) or doc.line)
    return doc


def _ident(v):
    """Identifier from parsed YAML: strings stay strings, lists become tuples."""
    if isinstance(v, (list, tuple)):
        return tuple(_ident(x) for x in v)
    if v is None:
        raise ValueError("identifier may not be empty")
    return str(v)


def _pairs(v) -> list[tuple]:
    if v is None:
        return []
    if isinstance(v, dict):
        return [(_ident(k), val) for k, val in v.items()]
    if isinstance(v, list) and all(isinstance(p, list) and len(p) == 2 for p in v):
        return [(_ident(k), val) for k, val in v]
    raise ValueError("expected a mapping or a list of [key, value] pairs")


class _Loader:
    def __init__(self, bundle: Bundle):
        self.b = bundle
        self.file = None
        self.auto: set[str] = set()

    def fail(self, exc, node, entry):
        raise WorkspaceValidationError(exc, self.file, getattr(node, "line", None), entry) from exc

    def ref(self, kind, name, node):
        try:
            return self.b.get(kind, _ident(name))
        except UnresolvedReference as exc:
            raise UnresolvedReference(str(exc), self.file, getattr(node, "line", None) or getattr(name, "line", None)) from None

    def need(self, body, key, entry):
        if not isinstance(body, dict) or key not in body:
            raise ParseError(f"{entry}: missing field {key!r}", self.file, getattr(body, "line", None))
        return body[key]

    def add(self, kind, name, value, node):
        sec = self.b.section(kind)
        if name in sec:
            self.fail(DuplicateIdentifier(f"{kind} {name!r} defined twice"), node, name)
        sec[name] = value

    # sections

    def category(self, name, body):
        try:
            if isinstance(body, dict) and "graph" in body:
                g = body["graph"]
                c = free_category_on_acyclic_graph(
                    GraphPresentation(
                        [_ident(v) for v in self.need(g, "vertices", name)],
                        [tuple(_ident(x) for x in e) for e in g.get("edges") or []],
                    ),
                    name=name,
                )
            else:
                objects = [_ident(x) for x in self.need(body, "objects", name)]
                morphisms = [tuple(_ident(x) for x in m) for m in self.need(body, "morphisms", name) or []]
                if "identity" in body:
                    identity = dict((k, _ident(v)) for k, v in _pairs(body["identity"]))
                else:
                    identity = {x: f"id_{x}" for x in objects if isinstance(x, str)}
                compose = {}
                for t in body.get("compose") or []:
                    f, g, h = (_ident(x) for x in t)
                    if (f, g) in compose:
                        raise DuplicateIdentifier(f"composite of {f!r} and {g!r} given twice")
                    compose[f, g] = h
                for m, a, b in morphisms:
                    if a in identity:
                        compose.setdefault((identity[a], m), m)
                    if b in identity:
                        compose.setdefault((m, identity[b]), m)
                c = validate_category(objects, morphisms, identity, compose, name=name)
        except ParseError:
            raise
        except (FinCatError, ValueError, TypeError) as exc:
            self.fail(exc, body, name)
        self.add("category", name, c, body)

    def functor(self, name, body):
        src = self.ref("category", self.need(body, "source", name), body)
        tgt = self.ref("category", self.need(body, "target", name), body)
        try:
            ob = dict((k, _ident(v)) for k, v in _pairs(self.need(body, "objects", name)))
            mor = dict((k, _ident(v)) for k, v in _pairs(body.get("morphisms")))
            for x, e in zip(src.objects, (src.morphisms[i] for i in src.ident)):
                if e not in mor and x in ob and tgt.has_object(ob[x]):
                    mor[e] = tgt.identity(ob[x])
            f = validate_functor(ob, mor, src, tgt, name=name)
        except ParseError:
            raise
        except (FinCatError, ValueError, TypeError) as exc:
            self.fail(exc, body, name)
        self.add("functor", name, f, body)

    def nat(self, name, body):
        f = self.ref("functor", self.need(body, "source", name), body)
        g = self.ref("functor", self.need(body, "target", name), body)
        try:
            comps = dict((k, _ident(v)) for k, v in _pairs(self.need(body, "components", name)))
            t = validate_nat_trans(comps, f, g)
        except ParseError:
            raise
        except (FinCatError, ValueError, TypeError) as exc:
            self.fail(exc, body, name)
        self.add("nat", name, t, body)

    def diagram(self, name, body):
        fname = body["functor"] if isinstance(body, dict) else body
        f = self.ref("functor", fname, body)
        if name in self.auto:
            del self.b.diagrams[name]
            self.auto.discard(name)
        self.add("diagram", name, Diagram(f, name), body)

    def copresheaf(self, name, body):
        base = self.ref("category", self.need(body, "base", name), body)
        try:
            at = {k: [_ident(s) for s in (v or [])] for k, v in _pairs(self.need(body, "sets", name))}
            act = {k: dict((a, _ident(b)) for a, b in _pairs(v)) for k, v in _pairs(body.get("act"))}
            F = validate_copresheaf(base, at, act, name=name)
        except ParseError:
            raise
        except (FinCatError, ValueError, TypeError) as exc:
            self.fail(exc, body, name)
        self.add("copresheaf", name, F, body)

    def diagram_morphism(self, name, body):
        kind = str(body.get("kind", "left")) if isinstance(body, dict) else None
        if kind not in ("left", "right"):
            raise ParseError(f"{name}: kind must be 'left' or 'right'", self.file, getattr(body, "line", None))
        src = self.ref("diagram", self.need(body, "source", name), body)
        tgt = self.ref("diagram", self.need(body, "target", name), body)
        r = self.ref("functor", self.need(body, "functor", name), body)
        try:
            if body.get("nat") is None:
                m = (strict_left if kind == "left" else strict_right)(src, tgt, r)
                rho = m.rho
            else:
                rho = self.ref("nat", body["nat"], body)
            cls = DiagMorphismLeft if kind == "left" else DiagMorphismRight
            m = cls(src, tgt, r, rho, name=name)
        except (UnresolvedReference, ParseError):
            raise
        except (FinCatError, ValueError, TypeError) as exc:
            self.fail(exc, body, name)
        self.add("diagram_morphism", name, m, body)

    def load(self, doc, file):
        self.file = file
        for kind in SECTIONS:
            sec = doc.get(kind)
            if sec is None:
                continue
            if not isinstance(sec, dict):
                raise ParseError(f"section {kind!r} must be a mapping of names", file, getattr(sec, "line", None))
            for name, body in sec.items():
                getattr(self, kind)(str(name), body)
                if kind == "functor" and str(name) not in self.b.diagrams:
                    self.b.diagrams[str(name)] = Diagram(self.b.functors[str(name)], str(name))
                    self.auto.add(str(name))


def load_bundle_text(texts: Iterable[tuple[str, str]], bundle: Bundle | None = None) -> Bundle:
    """Load ``(filename, text)`` pairs into one bundle, in order."""
    b = bundle if bundle is not None else Bundle()
    loader = _Loader(b)
    for file, text in texts:
        loader.load(_parse(text, file), file)
    return b


def load_bundle(paths, bundle: Bundle | None = None) -> Bundle:
    """Load workspace files; a directory contributes its ``*.yaml``/``*.yml`` files in name order."""
    if isinstance(paths, (str, os.PathLike)):
        paths = [paths]
    files = []
    for p in paths:
        p = os.fspath(p)
        if os.path.isdir(p):
            files += sorted(
                os.path.join(p, f) for f in os.listdir(p) if f.endswith((".yaml", ".yml"))
            )
        else:
            files.append(p)
    texts = []
    for f in files:
        try:
            with open(f, encoding="utf-8") as fh:
                texts.append((f, fh.read()))
        except OSError as exc:
            raise ParseError(f"cannot read: {exc.strerror}", f) from None
    return load_bundle_text(texts, bundle)


def fixtures_bundle() -> Bundle:
    text = resources.files("fincat").joinpath("data/fixtures.yaml").read_text(encoding="utf-8")
    return load_bundle_text([("fixtures.yaml", text)])


# -- serialization ----------------------------------------------------------------


def _out(v):
    if isinstance(v, tuple):
        return [_out(x) for x in v]
    return v


def _mapping(pairs) -> dict | list:
    pairs = list(pairs)
    if all(isinstance(k, str) for k, _ in pairs):
        return {k: v for k, v in pairs}
    return [[_out(k), v] for k, v in pairs]


class _Dumper:
    def __init__(self, b: Bundle):
        self.b = b
        self.doc = {k: {} for k in SECTIONS}
        self.names: dict[str, list[tuple[object, str]]] = {k: [] for k in SECTIONS}
        self.counter = 0

    def name_of(self, kind, value, hint=None):
        for v, n in self.names[kind]:
            if v is value or v == value:
                return n
        for n, v in self.b.section(kind).items():
            if v is value or v == value:
                self.emit(kind, n, v)
                return n
        self.counter += 1
        n = f"{hint or kind}_{self.counter}"
        while n in self.b.section(kind):
            self.counter += 1
            n = f"{hint or kind}_{self.counter}"
        self.emit(kind, n, value)
        return n

    def emit(self, kind, name, value):
        if any(n == name for _, n in self.names[kind]):
            return
        self.names[kind].append((value, name))
        self.doc[kind][name] = getattr(self, "dump_" + kind)(value)

    def dump_category(self, c: FinCat):
        return {
            "objects": [_out(x) for x in c.objects],
            "morphisms": [[_out(c.morphisms[m]), _out(c.objects[c.dom_i[m]]), _out(c.objects[c.cod_i[m]])]
                          for m in range(c.n_mor)],
            "identity": _mapping((c.objects[x], _out(c.morphisms[e])) for x, e in enumerate(c.ident)),
            "compose": [[_out(c.morphisms[f]), _out(c.morphisms[g]), _out(c.morphisms[h])]
                        for (f, g), h in sorted(c.comp.items())],
        }

    def dump_functor(self, f: FinFunctor):
        return {
            "source": self.name_of("category", f.source),
            "target": self.name_of("category", f.target),
            "objects": _mapping((f.source.objects[i], _out(f.target.objects[x])) for i, x in enumerate(f.ob)),
            "morphisms": _mapping((f.source.morphisms[i], _out(f.target.morphisms[m])) for i, m in enumerate(f.mor)),
        }

    def dump_nat(self, t: NatTransform):
        X = t.codomain
        return {
            "source": self.name_of("functor", t.source_functor),
            "target": self.name_of("functor", t.target_functor),
            "components": _mapping((t.domain.objects[i], _out(X.morphisms[m])) for i, m in enumerate(t.comps)),
        }

    def dump_diagram(self, d: Diagram):
        return self.name_of("functor", d.functor)

    def dump_copresheaf(self, F: Copresheaf):
        X = F.base
        act = []
        for m in range(X.n_mor):
            src, tgt = F.sets[X.dom_i[m]], F.sets[X.cod_i[m]]
            act.append((X.morphisms[m], _mapping((s, _out(tgt[i])) for s, i in zip(src, F.act[m]))))
        return {
            "base": self.name_of("category", X),
            "sets": _mapping((X.objects[x], [_out(s) for s in ss]) for x, ss in enumerate(F.sets)),
            "act": _mapping(act),
        }

    def dump_diagram_morphism(self, m):
        return {
            "kind": "left" if isinstance(m, DiagMorphismLeft) else "right",
            "source": self.name_of("diagram", m.source),
            "target": self.name_of("diagram", m.target),
            "functor": self.name_of("functor", m.r),
            "nat": self.name_of("nat", m.rho),
        }


def dump_bundle(b: Bundle) -> str:
    """Serialize a bundle; referenced but unnamed values get generated names."""
    d = _Dumper(b)
    for kind in SECTIONS:
        for name, value in b.section(kind).items():
            d.emit(kind, name, value)
    doc = {k: v for k, v in d.doc.items() if v}
    return yaml.safe_dump(doc, sort_keys=False, allow_unicode=True, default_flow_style=None, width=100)
