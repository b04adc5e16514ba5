import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fincat import fixtures
from fincat.comma import Diagram, coslice, identity_left, strictify
from fincat.core import constant_functor, identity_functor
from fincat.equivalence import is_weak_equivalence_left
from fincat.errors import BackwardNotInitial, EndpointMismatch, NotOverX, TypingMismatch
from fincat.factorization import comprehensive_factorize
from fincat.fibration import identity_copresheaf_map, is_discrete_opfibration
from fincat.generate import random_diagram, random_free_category, random_left_morphism
from fincat.localization import (
    LocHom,
    Zigzag,
    loc_compose,
    loc_from_diag_morphism,
    loc_from_zigzag,
    loc_hom_set,
    loc_identity,
    loc_inverse,
    loc_is_iso,
    loc_to_zigzag,
)

seeds = st.integers(min_value=0, max_value=2**32 - 1)

c1 = Diagram(fixtures.c1())
c11 = Diagram(fixtures.c11())


def fixture_homs():
    ds = list(fixtures.diagrams().values())
    for d, d2 in itertools.product(ds, ds):
        if d.base == d2.base:
            yield from loc_hom_set(d, d2)


class TestHomSets:
    def test_counts(self):
        assert len(loc_hom_set(c1, c1)) == 1
        assert len(loc_hom_set(c1, c11)) == 1
        assert len(loc_hom_set(c11, c1)) == 2

    def test_typing(self):
        with pytest.raises(TypingMismatch):
            LocHom(c1, c11, identity_copresheaf_map(comprehensive_factorize(c1).copresheaf))


class TestFromMorphism:
    def test_identity(self):
        for d in fixtures.diagrams().values():
            assert loc_from_diag_morphism(identity_left(d)) == loc_identity(d)

    def test_u(self):
        a = loc_from_diag_morphism(fixtures.u_c1_c11())
        assert loc_hom_set(c1, c11) == [a]
        assert not loc_is_iso(a)

    def test_weak_equivalence(self):
        a = loc_from_diag_morphism(fixtures.S0_left())
        assert loc_is_iso(a)
        assert loc_is_iso(loc_identity(c1))


class TestComposition:
    def test_unit(self):
        for a in fixture_homs():
            assert loc_compose(loc_identity(a.source), a) == a
            assert loc_compose(a, loc_identity(a.target)) == a

    def test_associative(self):
        ds = [d for d in fixtures.diagrams().values() if d.base == fixtures.I2()]
        for d1, d2, d3, d4 in itertools.product(ds, repeat=4):
            for a, b, c in itertools.product(loc_hom_set(d1, d2), loc_hom_set(d2, d3), loc_hom_set(d3, d4)):
                assert loc_compose(loc_compose(a, b), c) == loc_compose(a, loc_compose(b, c))

    def test_inverse(self):
        for a in fixture_homs():
            if loc_is_iso(a):
                assert loc_compose(a, loc_inverse(a)) == loc_identity(a.source)
                assert loc_compose(loc_inverse(a), a) == loc_identity(a.target)

    def test_endpoint_mismatch(self):
        a = loc_from_diag_morphism(fixtures.u_c1_c11())
        with pytest.raises(EndpointMismatch):
            loc_compose(a, a)


class TestZigzags:
    def test_identity_on_point(self):
        z = loc_to_zigzag(loc_identity(c1))
        i = comprehensive_factorize(c1).initial_part
        assert z.forward.key == i.key and z.backward.key == i.key

    def test_round_trip(self):
        for a in fixture_homs():
            z = loc_to_zigzag(a)
            assert is_discrete_opfibration(z.apex.functor)
            assert loc_from_zigzag(z) == a

    def test_identity_legs(self):
        for d in fixtures.diagrams().values():
            idf = identity_functor(d.shape)
            assert loc_from_zigzag(Zigzag(d, d, d, idf, idf)) == loc_identity(d)

    def test_through_coslice(self):
        for m in fixtures.left_morphisms().values():
            self._check_coslice(m)

    @given(seeds)
    def test_through_coslice_generated(self, seed):
        rng = random.Random(seed)
        m = random_left_morphism(rng, random_diagram(rng, random_free_category(rng, 3, 4)))
        self._check_coslice(m)
        assert loc_from_zigzag(loc_to_zigzag(loc_from_diag_morphism(m))) == loc_from_diag_morphism(m)
        assert bool(is_weak_equivalence_left(m)) == loc_is_iso(loc_from_diag_morphism(m))

    @staticmethod
    def _check_coslice(m):
        strict, _ = strictify(m)
        res, iota = coslice(m.source)
        z = Zigzag(m.source, m.target, Diagram(res.proj_right), strict.r, iota)
        assert loc_from_zigzag(z) == loc_from_diag_morphism(m)

    def test_backward_not_initial(self):
        # R0 commutes with S0 over I2 but is not initial
        apex = Diagram(fixtures.S0())
        d = Diagram(identity_functor(fixtures.I2()))
        with pytest.raises(BackwardNotInitial):
            loc_from_zigzag(Zigzag(d, d, apex, fixtures.R0(), fixtures.R0()))

    def test_not_over_base(self):
        apex = Diagram(fixtures.S0())
        d = Diagram(identity_functor(fixtures.I2()))
        wrong = constant_functor(fixtures.One(), fixtures.PP(), "0")
        with pytest.raises(NotOverX):
            loc_from_zigzag(Zigzag(d, c1, apex, wrong, identity_functor(fixtures.PP())))
