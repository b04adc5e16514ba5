"""Small named categories, functors and diagram morphisms used throughout.

``One`` is the terminal category, ``I2`` the walking arrow ``0 -> 1``,
``PP`` the parallel pair ``alpha, beta: 0 ⇉ 1``, ``D2`` the discrete
category on two objects and ``Iso`` the walking isomorphism.
"""

from __future__ import annotations

from functools import lru_cache

from .comma import DiagMorphismLeft, DiagMorphismRight, Diagram, identity_left, strict_left, strict_right
from .core import (
    FinCat,
    FinFunctor,
    GraphPresentation,
    discrete_category,
    free_category_on_acyclic_graph,
    identity_functor,
    validate_category,
    validate_functor,
)


@lru_cache(maxsize=None)
def One() -> FinCat:
    return free_category_on_acyclic_graph(GraphPresentation(["*"], []), name="One")


@lru_cache(maxsize=None)
def I2() -> FinCat:
    return free_category_on_acyclic_graph(GraphPresentation(["0", "1"], [("a", "0", "1")]), name="I2")


@lru_cache(maxsize=None)
def PP() -> FinCat:
    g = GraphPresentation(["0", "1"], [("alpha", "0", "1"), ("beta", "0", "1")])
    return free_category_on_acyclic_graph(g, name="PP")


@lru_cache(maxsize=None)
def D2() -> FinCat:
    return discrete_category(["0", "1"], name="D2")


@lru_cache(maxsize=None)
def Iso() -> FinCat:
    return validate_category(
        ["0", "1"],
        [("id_0", "0", "0"), ("id_1", "1", "1"), ("f", "0", "1"), ("g", "1", "0")],
        {"0": "id_0", "1": "id_1"},
        [
            ("id_0", "id_0", "id_0"), ("id_1", "id_1", "id_1"),
            ("id_0", "f", "f"), ("f", "id_1", "f"),
            ("id_1", "g", "g"), ("g", "id_0", "g"),
            ("f", "g", "id_0"), ("g", "f", "id_1"),
        ],
        name="Iso",
    )


@lru_cache(maxsize=None)
def R0() -> FinFunctor:
    return validate_functor(
        {"0": "0", "1": "1"}, {"id_0": "id_0", "id_1": "id_1", "a": "alpha"}, I2(), PP(), name="R0"
    )


@lru_cache(maxsize=None)
def S0() -> FinFunctor:
    return validate_functor(
        {"0": "0", "1": "1"},
        {"id_0": "id_0", "id_1": "id_1", "alpha": "a", "beta": "a"},
        PP(), I2(), name="S0",
    )


@lru_cache(maxsize=None)
def c1() -> FinFunctor:
    return validate_functor({"*": "1"}, {"id_*": "id_1"}, One(), I2(), name="c1")


@lru_cache(maxsize=None)
def c11() -> FinFunctor:
    return validate_functor({"0": "1", "1": "1"}, {"id_0": "id_1", "id_1": "id_1"}, D2(), I2(), name="c11")


@lru_cache(maxsize=None)
def u() -> FinFunctor:
    return validate_functor({"0": "*", "1": "*"}, {"id_0": "id_*", "id_1": "id_*"}, D2(), One(), name="u")


@lru_cache(maxsize=None)
def id_I2() -> FinFunctor:
    f = identity_functor(I2())
    f.name = "id_I2"
    return f


@lru_cache(maxsize=None)
def u_c1_c11() -> DiagMorphismLeft:
    """The strict morphism ``c1 -> c11`` collapsing both objects of ``D2``."""
    m = strict_left(Diagram(c1(), "c1"), Diagram(c11(), "c11"), u())
    return DiagMorphismLeft(m.source, m.target, m.r, m.rho, name="u_c1_c11")


@lru_cache(maxsize=None)
def R0_rel() -> DiagMorphismRight:
    """``(R0, id)`` from ``id_I2`` to ``S0``: relatively initial but ``R0`` is not initial."""
    m = strict_right(Diagram(id_I2(), "id_I2"), Diagram(S0(), "S0"), R0())
    return DiagMorphismRight(m.source, m.target, m.r, m.rho, name="R0_rel")


@lru_cache(maxsize=None)
def S0_left() -> DiagMorphismLeft:
    """The strict morphism ``id_I2 -> S0`` given by ``S0`` itself."""
    m = strict_left(Diagram(id_I2(), "id_I2"), Diagram(S0(), "S0"), S0())
    return DiagMorphismLeft(m.source, m.target, m.r, m.rho, name="S0_left")


def categories() -> dict[str, FinCat]:
    return {"One": One(), "I2": I2(), "PP": PP(), "D2": D2(), "Iso": Iso()}


def functors() -> dict[str, FinFunctor]:
    return {"R0": R0(), "S0": S0(), "c1": c1(), "c11": c11(), "u": u(), "id_I2": id_I2()}


def diagrams() -> dict[str, Diagram]:
    """Every fixture functor read as a diagram in its target."""
    return {name: Diagram(f, name) for name, f in functors().items()}


def left_morphisms() -> dict[str, DiagMorphismLeft]:
    out = {"u_c1_c11": u_c1_c11(), "S0_left": S0_left()}
    for name, d in diagrams().items():
        out[f"id_{name}"] = identity_left(d)
    return out


def right_morphisms() -> dict[str, DiagMorphismRight]:
    return {"R0_rel": R0_rel()}
