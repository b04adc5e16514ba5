"""Finite categories, diagrams in them, and their weak equivalences."""

from .comma import (
    CommaResult,
    DiagMorphismLeft,
    DiagMorphismRight,
    Diagram,
    Partition,
    comma_category,
    compose_left,
    compose_right,
    coslice,
    identity_left,
    identity_right,
    is_initial,
    is_relatively_initial,
    pi0,
    relative_comma,
    strict_left,
    strict_right,
    strictify,
)
from .core import (
    FinCat,
    FinFunctor,
    GraphPresentation,
    NatTransform,
    Verdict,
    compose_functors,
    coproduct_categories,
    free_category_on_acyclic_graph,
    nat_vertical_compose,
    nat_whisker,
    opposite,
    validate_category,
    validate_functor,
    validate_nat_trans,
)
from .equivalence import (
    brute_force_weak_equivalence,
    induced_copresheaf_map,
    is_weak_equivalence_left,
    is_weak_equivalence_right_pseudo,
    mate,
    weak_equivalence_over_point,
)
from .factorization import Factorization, comprehensive_factorize, extend_lift_along_initial
from .fibration import (
    Copresheaf,
    CopresheafMap,
    FinSetObj,
    Lift,
    enumerate_lifts,
    enumerate_nat_trans,
    fibres_copresheaf,
    grothendieck,
    is_copresheaf_iso,
    is_discrete_fibration,
    is_discrete_opfibration,
    is_discrete_opfibration_at,
    limit_finset,
    limit_map,
    pushforward_lift,
    transport,
)
from .localization import (
    LocHom,
    Zigzag,
    loc_compose,
    loc_from_diag_morphism,
    loc_from_zigzag,
    loc_hom_set,
    loc_is_iso,
    loc_to_zigzag,
)

__version__ = "0.1.0"
