"""Lifting the identity adjunction along a monad morphism ``sigma : S => T``.

The right functor is restriction of scalars ``(B, beta) -> (B, beta . sigma_B)``.
Its left adjoint sends ``alpha`` to the classifying object of
``sigma``-morphisms out of ``alpha``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .algebras import Algebra, morphism_tables, morphism_witness
from .bimorphisms import EMLift, em_lift, is_em_law, is_kleisli_law, left_witness
from .classify import ClassifyingObject, classifying_object, hat, lift_on_morphisms
from .errors import NotAMorphism
from .finset import FinMap, compose, identity, tabulate
from .functors import Identity, NatFamily, morphism_family
from .monads import MonadMorphism, compare
from .report import LawReport


def _first_failing_object(rep: LawReport):
    f = rep.first_failure()
    return None if f is None else f.scope.get("object") if f.scope else None


def transpose_check(sigma: MonadMorphism, test_sets) -> LawReport:
    """``sigma`` as an EM law ``S.Id => Id.T`` and as a Kleisli law ``Id.S => T.Id``."""
    sets = list(test_sets)
    fam = morphism_family(sigma)
    em = is_em_law(fam, Identity(), sigma.source, sigma.target, sets)
    kl = is_kleisli_law(fam, Identity(), sigma.source, sigma.target, sets)
    rep = LawReport(f"transpose of {sigma.name}")
    rep.extend(em, "em:")
    rep.extend(kl, "kleisli:")
    verdicts = (em.ok, kl.ok)

    def agree():
        if em.ok != kl.ok:
            return {"em": em.ok, "kleisli": kl.ok}
        if not em.ok and _first_failing_object(em) != _first_failing_object(kl):
            return {"em_object": _first_failing_object(em), "kleisli_object": _first_failing_object(kl)}
        return None

    rep.run("laws-agree", agree, "EM law iff Kleisli law", {"verdicts": list(verdicts)})
    return rep


@dataclass
class LiftedAdjunction:
    sigma: MonadMorphism
    right: EMLift
    family: NatFamily
    _left: dict = field(default_factory=dict, repr=False)

    def right_functor(self, beta: Algebra) -> Algebra:
        return self.right(beta)

    def classifying(self, alpha: Algebra) -> ClassifyingObject:
        key = id(alpha)
        hit = self._left.get(key)
        if hit is None:
            hit = (alpha, classifying_object(Identity(), self.family.at(alpha.carrier), alpha, self.sigma.target, name=f"L({alpha.name})"))
            self._left[key] = hit
        return hit[1]

    def left_functor(self, alpha: Algebra) -> Algebra:
        return self.classifying(alpha).result

    def transpose(self, phi, alpha: Algebra, beta: Algebra) -> FinMap:
        """``phi : alpha -> R(beta)`` to ``L(alpha) -> beta``: a sigma-morphism, then its hat."""
        w = morphism_witness(phi, alpha, self.right(beta))
        if w is not None:
            raise NotAMorphism("phi is not a morphism into the restricted algebra", w)
        return hat(phi, self.classifying(alpha), beta)

    def unit(self, alpha: Algebra) -> FinMap:
        """``u : A -> L(alpha)``, an S-morphism ``alpha -> R(L(alpha))``."""
        return self.classifying(alpha).universal

    def counit(self, beta: Algebra) -> FinMap:
        """``L(R(beta)) -> beta``, the transpose of the identity."""
        rb = self.right(beta)
        return self.transpose(identity(beta.carrier), rb, beta)

    def hom_counts(self, alpha: Algebra, beta: Algebra) -> tuple[int, int]:
        return len(morphism_tables(self.left_functor(alpha), beta)), len(morphism_tables(alpha, self.right(beta)))

    def check_pair(self, alpha: Algebra, beta: Algebra):
        """Counts agree and transposition is a bijection onto the T-morphisms."""
        left = morphism_tables(self.left_functor(alpha), beta)
        right = morphism_tables(alpha, self.right(beta))
        if len(left) != len(right):
            return {"alpha": alpha.name, "beta": beta.name, "hom_T": len(left), "hom_S": len(right)}
        images = {tuple(self.transpose(FinMap(alpha.carrier, beta.carrier, r, check=False), alpha, beta).table.tolist()) for r in right}
        if images != {tuple(t) for t in left.tolist()}:
            return {"alpha": alpha.name, "beta": beta.name, "reason": "transpose is not a bijection"}
        return None

    def naturality_in_beta(self, alpha: Algebra, beta: Algebra, beta2: Algebra, k):
        """``transpose(k . phi) == k . transpose(phi)`` for every ``phi``."""
        w = morphism_witness(k, beta, beta2)
        if w is not None:
            raise NotAMorphism("k is not a T-algebra morphism", w)
        kt = k.table.astype(np.int64)
        for r in morphism_tables(alpha, self.right(beta)):
            phi = FinMap(alpha.carrier, beta.carrier, r, check=False)
            lhs = self.transpose(FinMap(alpha.carrier, beta2.carrier, kt[r], check=False), alpha, beta2)
            rhs = kt[self.transpose(phi, alpha, beta).table.astype(np.int64)]
            if not np.array_equal(lhs.table.astype(np.int64), rhs):
                return {"phi": r.tolist(), "k": kt.tolist()}
        return None

    def triangle_left(self, alpha: Algebra):
        """``counit_{L(alpha)} . L(unit_alpha) == id``."""
        co = self.classifying(alpha)
        La = co.result
        RLa = self.right(La)
        co2 = self.classifying(RLa)
        L_unit = lift_on_morphisms(self.unit(alpha), co, co2)
        eps = self.counit(La)
        return compare(tabulate(compose(eps, L_unit)), identity(La.carrier))

    def triangle_right(self, beta: Algebra):
        """``R(counit_beta) . unit_{R(beta)} == id``."""
        rb = self.right(beta)
        return compare(tabulate(compose(self.counit(beta), self.unit(rb))), identity(beta.carrier))


def lift_adjunction(sigma: MonadMorphism) -> LiftedAdjunction:
    fam = morphism_family(sigma)
    return LiftedAdjunction(sigma, em_lift(Identity(), fam, sigma.source), fam)


def check_lifted_adjunction(adj: LiftedAdjunction, sources, targets, target_maps=()) -> LawReport:
    """Hom bijection for every pair, naturality in beta along the given maps, and both triangles."""
    rep = LawReport(f"lifted adjunction along {adj.sigma.name}")
    sources, targets = list(sources), list(targets)
    for alpha in sources:
        rep.run("unit-morphism", lambda a=alpha: morphism_witness(adj.unit(a), a, adj.right(adj.left_functor(a))), "u : alpha -> R(L(alpha))", {"alpha": alpha.name})
        rep.run("triangle-left", lambda a=alpha: adj.triangle_left(a), "eps_L . L(eta) = id", {"alpha": alpha.name})
        for beta in targets:
            rep.run("hom-bijection", lambda a=alpha, b=beta: adj.check_pair(a, b), "Hom_T(L a, b) = Hom_S(a, R b)", {"alpha": alpha.name, "beta": beta.name})
    for beta in targets:
        rep.run("triangle-right", lambda b=beta: adj.triangle_right(b), "R(eps) . eta_R = id", {"beta": beta.name})
    for alpha in sources:
        for beta, beta2, k in target_maps:
            rep.run(
                "naturality",
                lambda a=alpha, b=beta, b2=beta2, k=k: adj.naturality_in_beta(a, b, b2, k),
                "transpose natural in beta",
                {"alpha": alpha.name, "beta": beta.name, "beta2": beta2.name},
            )
    return rep
