import random

from hypothesis import given
from hypothesis import strategies as st

import oracles
from fincat import fixtures
from fincat.comma import (
    Diagram,
    DiagMorphismRight,
    comma_category,
    comma_with_object,
    compose_left,
    coslice,
    identity_right,
    is_initial,
    is_relatively_initial,
    pi0,
    relative_comma,
    strict_right,
    strictify,
    zigzag_between,
)
from fincat.core import (
    FinFunctor,
    compose_functors,
    constant_functor,
    empty_category,
    identity_functor,
    identity_nat,
    is_isomorphism,
    recheck,
)
from fincat.generate import random_diagram, random_free_category, random_functor, random_left_morphism

seeds = st.integers(min_value=0, max_value=2**32 - 1)


def const(x, target):
    return constant_functor(fixtures.One(), target, x)


class TestComma:
    def test_slice_of_walking_arrow(self):
        res = comma_category(identity_functor(fixtures.I2()), const("1", fixtures.I2()))
        c = res.category
        assert set(c.objects) == {("0", "*", "a"), ("1", "*", "id_1")}
        non_identity = [m for m in range(c.n_mor) if not c.is_identity_i[m]]
        assert len(non_identity) == 1
        assert recheck(c) == c

    def test_R0_over_1_is_disconnected(self):
        c = comma_category(fixtures.R0(), const("1", fixtures.PP())).category
        assert set(c.objects) == {("0", "*", "alpha"), ("0", "*", "beta"), ("1", "*", "id_1")}
        assert zigzag_between(c, ("0", "*", "alpha"), ("0", "*", "beta")) is None
        assert len(pi0(c)) == 2

    def test_from_empty(self):
        e = empty_category()
        f = FinFunctor(e, fixtures.I2(), [], [])
        assert comma_category(f, identity_functor(fixtures.I2())).category.n_obj == 0

    def test_canonical_cell_and_projections(self):
        res = comma_category(fixtures.R0(), const("1", fixtures.PP()))
        assert res.canonical_2cell.component(("0", "*", "beta")) == "beta"
        assert res.proj_left.on_object(("1", "*", "id_1")) == "1"

    @given(seeds)
    def test_objects_are_pairs(self, seed):
        rng = random.Random(seed)
        J, K = random_free_category(rng), random_free_category(rng)
        r = random_functor(rng, J, K)
        for k in K.objects:
            c = comma_with_object(r, k).category
            assert set(c.objects) == {(a, "*", f) for a, b, f in oracles.comma_object_triples(r, const(k, K))}
            assert recheck(c) == c


class TestPi0:
    def test_examples(self):
        assert len(pi0(fixtures.D2())) == 2
        assert len(pi0(fixtures.I2())) == 1
        assert pi0(fixtures.PP()).representatives == ("0",)

    @given(seeds)
    def test_matches_bfs(self, seed):
        c = random_free_category(random.Random(seed))
        assert sorted(map(set, pi0(c).blocks), key=sorted) == sorted(oracles.components_bfs(c), key=sorted)

    def test_zigzag_path(self):
        path = zigzag_between(fixtures.PP(), "1", "0")
        assert path == [("alpha", -1)]


class TestInitial:
    def test_examples(self):
        v = is_initial(fixtures.R0())
        assert not v and v.witness["k"] == "1" and v.reason == "disconnected"
        assert is_initial(fixtures.S0())
        assert set(is_initial(fixtures.S0()).witness["representatives"]) == {"0", "1"}
        for f in fixtures.categories().values():
            assert is_initial(identity_functor(f))

    def test_empty_witness(self):
        v = is_initial(fixtures.c11())
        assert not v and v.reason == "empty" and v.witness["k"] == "0"

    @given(seeds)
    def test_matches_brute_force(self, seed):
        rng = random.Random(seed)
        r = random_functor(rng, random_free_category(rng, 4, 5), random_free_category(rng, 3, 3))
        assert bool(is_initial(r)) == oracles.is_initial_brute(r)

    @given(seeds)
    def test_closed_under_composition(self, seed):
        rng = random.Random(seed)
        A, B, C = (random_free_category(rng, 3, 3) for _ in range(3))
        f, g = random_functor(rng, A, B), random_functor(rng, B, C)
        if is_initial(f) and is_initial(g):
            assert is_initial(compose_functors(f, g))


class TestRelativeComma:
    def test_example_connects_alpha_and_beta(self):
        c = relative_comma(fixtures.R0_rel(), "1")
        assert set(c.objects) == {("0", "alpha"), ("0", "beta"), ("1", "id_1")}
        assert ("id_0", ("0", "alpha"), ("0", "beta")) in c.morphisms
        assert len(pi0(c)) == 1
        assert recheck(c) == c

    def test_relatively_initial(self):
        assert is_relatively_initial(fixtures.R0_rel())
        for d in fixtures.diagrams().values():
            assert is_relatively_initial(identity_right(d))

    def test_empty(self):
        # nothing maps into an object outside the image of r
        one, D2 = fixtures.One(), fixtures.D2()
        r = constant_functor(one, D2, "0")
        m = strict_right(Diagram(constant_functor(one, one, "*")), Diagram(constant_functor(D2, one, "*")), r)
        assert relative_comma(m, "1").n_obj == 0
        v = is_relatively_initial(m)
        assert not v and v.reason == "empty" and v.witness["k"] == "1"

    @given(seeds)
    def test_contains_comma(self, seed):
        rng = random.Random(seed)
        J, K, X = (random_free_category(rng, 3, 4) for _ in range(3))
        R = random_functor(rng, J, K)
        E = random_functor(rng, K, X)
        m = strict_right(Diagram(compose_functors(R, E)), Diagram(E), R)
        for k in K.objects:
            rel = relative_comma(m, k)
            plain = comma_with_object(R, k).category
            rel_mors = set(rel.morphisms)
            for h, _, g1, g2 in plain.morphisms:
                j1, j2 = J.dom(h), J.cod(h)
                assert (h, (j1, g1), (j2, g2)) in rel_mors

    @given(seeds)
    def test_equals_comma_for_faithful_target(self, seed):
        rng = random.Random(seed)
        J, K = random_free_category(rng, 3, 4), random_free_category(rng, 3, 4)
        R = random_functor(rng, J, K)
        E = identity_functor(K)
        m = strict_right(Diagram(R), Diagram(E), R)
        for k in K.objects:
            rel = relative_comma(m, k)
            plain = comma_with_object(R, k).category
            assert len(rel.morphisms) == len(plain.morphisms)


class TestCoslice:
    def test_point(self):
        res, iota = coslice(Diagram(fixtures.c1()))
        assert res.category.objects == (("*", "1", "id_1"),)
        assert is_isomorphism(iota)

    def test_walking_arrow(self):
        res, _ = coslice(Diagram(identity_functor(fixtures.I2())))
        assert set(res.category.objects) == {("0", "0", "id_0"), ("0", "1", "a"), ("1", "1", "id_1")}

    @given(seeds)
    def test_unit_is_initial_section(self, seed):
        d = random_diagram(random.Random(seed), random_free_category(random.Random(seed + 1), 3, 4))
        res, iota = coslice(d)
        assert compose_functors(iota, res.proj_left).key == identity_functor(d.shape).key
        assert is_initial(iota)


class TestStrictify:
    def test_fixtures(self):
        for m in fixtures.left_morphisms().values():
            strict, leg = strictify(m)
            assert compose_left(leg, strict) == m
            assert strict.rho.is_identity

    def test_strict_input(self):
        m = fixtures.u_c1_c11()
        strict, _ = strictify(m)
        _, iota = coslice(m.source)
        assert strict.r.key == compose_functors(m.r, iota).key

    @given(seeds)
    def test_recomposes(self, seed):
        rng = random.Random(seed)
        X = random_free_category(rng, 3, 4)
        m = random_left_morphism(rng, random_diagram(rng, X), strict_bias=0.0)
        strict, leg = strictify(m)
        assert compose_left(leg, strict) == m


def test_identity_right_is_identity():
    d = Diagram(fixtures.S0())
    m = identity_right(d)
    assert isinstance(m, DiagMorphismRight) and m.rho == identity_nat(d.functor)
