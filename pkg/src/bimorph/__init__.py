"""Bimorphisms, Kleisli and Eilenberg-Moore laws, and classifying objects for monads on finite sets."""

from .adjlift import LiftedAdjunction, check_lifted_adjunction, lift_adjunction, transpose_check
from .algebras import (
    Algebra,
    algebras_up_to,
    coequalize,
    congruence_closure,
    count_algebra_morphisms,
    enumerate_algebra_morphisms,
    enumerate_algebras,
    free_algebra,
    is_algebra,
    is_algebra_morphism,
    make_algebra,
    product_algebra,
    quotient_algebra,
)
from .bimorphisms import (
    check_distributive_law_algebra,
    compose_bimorphisms,
    em_lift,
    em_law_inverse_is_kleisli,
    extract_law,
    is_bilinear,
    is_em_law,
    is_kleisli_law,
    is_left_lambda_morphism,
    is_right_rho_morphism,
    kleisli_lift,
    left_component,
    nary_kleisli_law_check,
    right_component,
)
from .classify import (
    ClassifyingObject,
    classifying_object,
    coproduct_lift,
    free_iso,
    hat,
    lift_on_morphisms,
    tensor,
    unhat,
    verify_universal,
)
from .errors import *  # noqa: F401,F403
from .finset import FinMap, FinSet, LazyMap, ProductMap, ProductSet, budget_limit, get_budget, set_budget
from .functors import Compose, Coproduct, Identity, MonadFunctor, NatFamily, Product, Tuple
from .monads import (
    MonadMorphism,
    check_monad_laws,
    check_monad_morphism,
    identity_monad,
    maybe_monad,
    maybe_to_semimodule,
    product_monad,
    semimodule_monad,
    writer_monad,
)
from .report import LawReport, Verdict
from .strength import canonical_strength, check_strength_axioms, dst, dst_prime, is_commutative, st, st_prime
from .structures import FiniteMonoid, FiniteSemiring, boolean_semiring, f2, upper_triangular_boolean, z4

__version__ = "0.1.0"
