import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fincat import fixtures
from fincat.comma import (
    DiagMorphismLeft,
    DiagMorphismRight,
    Diagram,
    comma_category,
    identity_left,
    identity_right,
    is_initial,
    is_relatively_initial,
    strict_left,
)
from fincat.core import NatTransform, compose_functors, constant_functor, identity_functor
from fincat.equivalence import (
    brute_force_right_counterexample,
    brute_force_weak_equivalence,
    induced_copresheaf_map,
    is_weak_equivalence_left,
    is_weak_equivalence_right_pseudo,
    lift_pushforward_table,
    mate,
    weak_equivalence_over_point,
)
from fincat.errors import NotPseudo, WrongBase
from fincat.factorization import comprehensive_factorize
from fincat.fibration import copresheaf_isomorphisms, fibres_copresheaf, identity_copresheaf_map, is_copresheaf_iso
from fincat.generate import (
    random_diagram,
    random_free_category,
    random_functor,
    random_left_morphism,
    random_pseudo_right_morphism,
)

seeds = st.integers(min_value=0, max_value=2**32 - 1)


def non_pseudo():
    """From the identity diagram on I2 to the point at 1, with component a."""
    I2, one = fixtures.I2(), fixtures.One()
    r = constant_functor(one, I2, "0")
    d = Diagram(identity_functor(I2))
    e = Diagram(fixtures.c1())
    return DiagMorphismLeft(d, e, r, NatTransform(compose_functors(r, d.functor), e.functor, [I2.mor("a")]))


def non_pseudo_right():
    """From the point at 0 to the point at 1, with component a."""
    I2, one = fixtures.I2(), fixtures.One()
    d = Diagram(constant_functor(one, I2, "0"))
    e = Diagram(fixtures.c1())
    return DiagMorphismRight(d, e, identity_functor(one), NatTransform(d.functor, e.functor, [I2.mor("a")]))


def over_point(r):
    one = fixtures.One()
    return strict_left(Diagram(constant_functor(r.target, one, "*")), Diagram(constant_functor(r.source, one, "*")), r)


class TestMate:
    def test_strict(self):
        m = fixtures.u_c1_c11()
        n = mate(m)
        assert n.source == m.target and n.target == m.source
        assert n.r == m.r and n.rho.is_identity

    def test_involution(self):
        for m in list(fixtures.left_morphisms().values()) + list(fixtures.right_morphisms().values()):
            assert mate(mate(m)) == m

    def test_non_pseudo(self):
        with pytest.raises(NotPseudo):
            mate(non_pseudo())

    @given(seeds)
    def test_involution_generated(self, seed):
        m = random_pseudo_right_morphism(random.Random(seed), fixtures.Iso())
        assert mate(mate(m)) == m


class TestInducedMap:
    def test_identity(self):
        for d in fixtures.diagrams().values():
            phi = induced_copresheaf_map(identity_left(d))
            assert phi == identity_copresheaf_map(comprehensive_factorize(d).copresheaf)

    def test_u(self):
        phi = induced_copresheaf_map(fixtures.u_c1_c11())
        assert len(phi.source.sets[1]) == 2 and len(phi.target.sets[1]) == 1
        assert phi.comps[1] == (0, 0)

    @given(seeds)
    def test_initial_gives_iso(self, seed):
        rng = random.Random(seed)
        X = random_free_category(rng, 3, 4)
        d = random_diagram(rng, X)
        r = random_functor(rng, random_free_category(rng, 4, 4), d.shape)
        m = strict_left(d, Diagram(compose_functors(r, d.functor)), r)
        if is_initial(r):
            assert is_copresheaf_iso(induced_copresheaf_map(m))
            assert is_weak_equivalence_left(m)


class TestLeftDecision:
    def test_u(self):
        v = is_weak_equivalence_left(fixtures.u_c1_c11())
        assert not v
        assert v.witness["size_P_E"] == 2 and v.witness["size_P_D"] == 1
        assert (v.witness["lifts_source"], v.witness["lifts_target"]) == (2, 4)

    def test_identities(self):
        for d in fixtures.diagrams().values():
            v = is_weak_equivalence_left(identity_left(d))
            assert v and "sizes" in v.witness

    def test_S0(self):
        m = fixtures.S0_left()
        assert is_weak_equivalence_left(m)
        assert brute_force_weak_equivalence(m, 2)

    def test_representables_do_not_suffice(self):
        # pushing lifts along (u, id) is a bijection against identity and every coslice projection of I2
        m = fixtures.u_c1_c11()
        I2 = fixtures.I2()
        dopfs = [identity_functor(I2)] + [
            comma_category(constant_functor(fixtures.One(), I2, x), identity_functor(I2)).proj_right for x in I2.objects
        ]
        for p in dopfs:
            assert lift_pushforward_table(m, fibres_copresheaf(p))[3]
        assert not is_weak_equivalence_left(m)

    @given(seeds)
    def test_two_dopfs_suffice(self, seed):
        rng = random.Random(seed)
        m = random_left_morphism(rng, random_diagram(rng, random_free_category(rng, 3, 3), 3, 3), 3, 3)
        fd, fe = comprehensive_factorize(m.source), comprehensive_factorize(m.target)
        both = lift_pushforward_table(m, fd.copresheaf)[3] and lift_pushforward_table(m, fe.copresheaf)[3]
        assert bool(is_weak_equivalence_left(m)) == both


class TestOracle:
    def test_u(self):
        v = brute_force_weak_equivalence(fixtures.u_c1_c11(), 2)
        assert not v
        assert copresheaf_isomorphisms(v.witness["copresheaf"], fibres_copresheaf(fixtures.c11()))
        assert (v.witness["lifts_source"], v.witness["lifts_target"]) == (2, 4)

    def test_identity(self):
        v = brute_force_weak_equivalence(identity_left(Diagram(fixtures.c1())), 1)
        assert v and v.witness["tried"] == 2 + 3

    def test_negative_bound(self):
        with pytest.raises(ValueError):
            brute_force_weak_equivalence(fixtures.u_c1_c11(), -1)


class TestRightDecision:
    def test_example(self):
        assert is_weak_equivalence_right_pseudo(fixtures.R0_rel())

    def test_identity(self):
        for d in fixtures.diagrams().values():
            assert is_weak_equivalence_right_pseudo(identity_right(d))

    def test_non_pseudo(self):
        with pytest.raises(NotPseudo):
            is_weak_equivalence_right_pseudo(non_pseudo_right())

    def test_oracle_refutes_mate_of_u(self):
        m = mate(fixtures.u_c1_c11())
        assert not is_weak_equivalence_right_pseudo(m)
        assert not brute_force_right_counterexample(m, 2)
        assert brute_force_right_counterexample(fixtures.R0_rel(), 2)

    @given(seeds)
    def test_relatively_initial_gives_weak_equivalence(self, seed):
        rng = random.Random(seed)
        m = random_pseudo_right_morphism(rng, rng.choice([fixtures.Iso(), fixtures.I2(), random_free_category(rng, 3, 3)]))
        if is_relatively_initial(m):
            assert is_weak_equivalence_left(mate(m))

    @given(seeds)
    def test_oracle_consistent(self, seed):
        rng = random.Random(seed)
        m = random_pseudo_right_morphism(rng, rng.choice([fixtures.Iso(), random_free_category(rng, 3, 3)]), 3, 3)
        decided = bool(is_weak_equivalence_right_pseudo(m))
        refuted = not brute_force_right_counterexample(m, 2)
        assert not (decided and refuted)


class TestOverPoint:
    def test_u(self):
        v = weak_equivalence_over_point(over_point(fixtures.u()))
        assert not v and v.witness["source_components"] == 1 and v.witness["target_components"] == 2

    def test_iso(self):
        assert weak_equivalence_over_point(over_point(identity_functor(fixtures.PP())))

    def test_S0(self):
        assert weak_equivalence_over_point(over_point(fixtures.S0()))

    def test_wrong_base(self):
        with pytest.raises(WrongBase):
            weak_equivalence_over_point(fixtures.u_c1_c11())
