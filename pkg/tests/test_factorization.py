import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from fincat import fixtures
from fincat.comma import Diagram, comma_with_object, pi0
from fincat.core import compose_functors, identity_functor, is_isomorphism
from fincat.errors import NotALift
from fincat.factorization import comprehensive_factorize, extend_lift_along_initial, factorization_comparisons
from fincat.fibration import Lift, enumerate_lifts, grothendieck, isomorphisms_over
from fincat.generate import random_copresheaf, random_diagram, random_free_category

seeds = st.integers(min_value=0, max_value=2**32 - 1)


def test_point_at_1():
    fact = comprehensive_factorize(Diagram(fixtures.c1()))
    assert fact.copresheaf.sizes() == (0, 1)
    assert fact.copresheaf.sets[1] == (("*", "id_1"),)
    assert is_isomorphism(fact.initial_part)
    assert isomorphisms_over(fact.opfibration_part, fixtures.c1())


def test_identity():
    for X in fixtures.categories().values():
        fact = comprehensive_factorize(Diagram(identity_functor(X)))
        assert set(fact.copresheaf.sizes()) == {1}
        assert is_isomorphism(fact.opfibration_part)


def test_already_dopf():
    assert is_isomorphism(comprehensive_factorize(Diagram(fixtures.c11())).initial_part)


def test_R0_blocks():
    fact = comprehensive_factorize(Diagram(fixtures.R0()))
    # over 1 the slice splits into the alpha side and the beta side
    assert fact.copresheaf.sets[1] == (("0", "alpha"), ("0", "beta"))
    assert fact.block_index(1, 1, fixtures.PP().mor("id_1")) == 0


@given(seeds)
def test_dopf_input_has_invertible_initial_part(seed):
    rng = random.Random(seed)
    _, p = grothendieck(random_copresheaf(rng, random_free_category(rng, 3, 4)))
    assert is_isomorphism(comprehensive_factorize(Diagram(p)).initial_part)


@given(seeds)
def test_block_counts_match_comma(seed):
    rng = random.Random(seed)
    d = random_diagram(rng, random_free_category(rng, 4, 5))
    fact = comprehensive_factorize(d)
    for x, name in enumerate(d.base.objects):
        assert len(fact.copresheaf.sets[x]) == len(pi0(comma_with_object(d.functor, name).category))


@given(seeds)
def test_essentially_unique(seed):
    rng = random.Random(seed)
    d = random_diagram(rng, random_free_category(rng, 4, 5))
    fact = comprehensive_factorize(d)
    i2, p2 = oracles.closure_factorization(d.functor, seed)
    comps = factorization_comparisons(fact, i2, p2)
    assert len(comps) == 1
    assert oracles.is_iso_over(comps[0], fact.opfibration_part, p2)


def test_comparison_rejects_wrong_factorization():
    fact = comprehensive_factorize(Diagram(fixtures.c1()))
    with pytest.raises(NotALift):
        factorization_comparisons(fact, identity_functor(fixtures.I2()), identity_functor(fixtures.I2()))


class TestExtension:
    def test_identity(self):
        for d in fixtures.diagrams().values():
            fact = comprehensive_factorize(d)
            lift = Lift(d, fact.initial_part, fact.opfibration_part)
            ext = extend_lift_along_initial(fact, fact.copresheaf, lift)
            assert ext.key == identity_functor(fact.elements).key

    def test_fixture_bijection(self):
        c11 = fixtures.c11()
        F = comprehensive_factorize(Diagram(c11)).copresheaf
        _, q = grothendieck(F)
        for d in fixtures.diagrams().values():
            if d.base != c11.target:
                continue
            fact = comprehensive_factorize(d)
            lifts = enumerate_lifts(d, q)
            exts = [extend_lift_along_initial(fact, F, l) for l in lifts]
            assert len({e.key for e in exts}) == len(lifts)
            assert len(lifts) == len(oracles.functors_over_brute(fact.opfibration_part, q))

    @given(seeds)
    def test_bijection(self, seed):
        rng = random.Random(seed)
        X = random_free_category(rng, 3, 3)
        d = random_diagram(rng, X, 3, 3)
        F = random_copresheaf(rng, X, 2)
        _, q = grothendieck(F)
        fact = comprehensive_factorize(d)
        lifts = enumerate_lifts(d, q)
        keys = set()
        for l in lifts:
            ext = extend_lift_along_initial(fact, F, l)
            assert compose_functors(fact.initial_part, ext).key == l.total.key
            keys.add(ext.key)
        assert len(keys) == len(lifts) == len(oracles.functors_over_brute(fact.opfibration_part, q))

    def test_rejects_foreign_lift(self):
        fact = comprehensive_factorize(Diagram(fixtures.c1()))
        other = comprehensive_factorize(Diagram(fixtures.c11()))
        lift = Lift(other.input, other.initial_part, other.opfibration_part)
        with pytest.raises(NotALift):
            extend_lift_along_initial(fact, other.copresheaf, lift)
