"""Left lambda-morphisms, right rho-morphisms, bilinearity, and Kleisli / EM laws.

Left:   beta . T(h) . lambda == h . H(alpha)        h : H(A) -> B
Right:  G(beta) . rho . S(h) == h . alpha           h : A -> G(B)
"""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .algebras import Algebra, morphism_witness, product_algebra
from .errors import ArityMismatch, CarrierMismatch, NonCommutativeWarning, NotABimorphism, TypeMismatch
from .finset import (
    FinMap,
    FinSet,
    LazyMap,
    ProductMap,
    ProductSet,
    all_map_tables,
    check_budget,
    compose,
    compose_all,
    identity,
    maps_between,
    product,
    product_map,
    product_set,
    tabulate,
)
from .functors import (
    Compose,
    Functor,
    Identity,
    MonadFunctor,
    NatFamily,
    Product,
    dst_family,
    em_law_shape,
    law_shape,
)
from .monads import MonadInstance, ProductMonad, compare, identity_monad, product_monad
from .report import LawReport, Verdict
from .strength import canonical_strength, dst, is_commutative, st, st_prime


def _table(m) -> np.ndarray:
    return tabulate(m).table.astype(np.int64)


# ---------------------------------------------------------------------------
# left and right bimorphisms


def left_witness(h, lam, H: Functor, alpha: Algebra, beta: Algebra):
    """``None`` when ``h : alpha =>lam beta``; otherwise the offending element of ``H(S(A))``."""
    T = beta.monad
    A = alpha.carrier
    HA = H.obj(A)
    Halpha = H.fmap(alpha.structure)
    if h.dom != HA:
        raise TypeMismatch("leg h: domain must be H(A)")
    if h.cod != beta.carrier:
        raise TypeMismatch("leg h: codomain must be the carrier of beta")
    if lam.dom != Halpha.dom:
        raise TypeMismatch("leg lambda: domain must be H(S(A))")
    if lam.cod != T.obj(HA):
        raise TypeMismatch("leg lambda: codomain must be T(H(A))")
    ht = _table(h)
    lhs = T.evaluate(beta, ht[None, :], _table(lam))
    rhs = ht[_table(Halpha)]
    bad = np.nonzero(lhs != rhs)[0]
    if len(bad):
        x = int(bad[0])
        return {"element": x, "label": lam.dom.label(x), "lhs": int(lhs[x]), "rhs": int(rhs[x])}
    return None


def is_left_lambda_morphism(h, lam, H: Functor, alpha: Algebra, beta: Algebra) -> bool:
    return left_witness(h, lam, H, alpha, beta) is None


def left_morphism_tables(lam, H: Functor, alpha: Algebra, beta: Algebra) -> np.ndarray:
    """Every ``h : H(A) -> B`` that is a left lambda-morphism, in lexicographic order."""
    T = beta.monad
    HA = H.obj(alpha.carrier)
    hs = all_map_tables(HA, beta.carrier)
    lt = _table(lam)
    Ht = _table(H.fmap(alpha.structure))
    m = len(lt)
    keep = []
    step = max(1, (1 << 22) // max(1, m))
    for lo in range(0, len(hs), step):
        blk = hs[lo : lo + step]
        k = len(blk)
        lhs = T.evaluate(beta, np.repeat(blk, m, axis=0), np.tile(lt, k)).reshape(k, m)
        keep.append(blk[(lhs == blk[:, Ht]).all(axis=1)])
    out = np.concatenate(keep) if keep else np.zeros((0, HA.size), dtype=np.int64)
    return out.reshape(len(out), HA.size)


def right_witness(h, rho, G: Functor, alpha: Algebra, beta: Algebra):
    """``None`` when ``G(beta) . rho . S(h) == h . alpha``."""
    S = alpha.monad
    GB = G.obj(beta.carrier)
    if h.dom != alpha.carrier or h.cod != GB:
        raise TypeMismatch("leg h: must go A -> G(B)")
    if rho.dom != S.obj(GB):
        raise TypeMismatch("leg rho: domain must be S(G(B))")
    lhs = compose_all(G.fmap(beta.structure), rho, S.fmap_best(h))
    return compare(tabulate(lhs), compose(h, alpha.structure))


def is_right_rho_morphism(h, rho, G: Functor, alpha: Algebra, beta: Algebra) -> bool:
    return right_witness(h, rho, G, alpha, beta) is None


# ---------------------------------------------------------------------------
# bilinearity for strong monads


def _bilinear_setup(h, alpha: Algebra, beta: Algebra, gamma: Algebra):
    T = gamma.monad
    if alpha.monad != T or beta.monad != T:
        raise TypeMismatch("alpha, beta, gamma must share the monad")
    if h.dom != product_set(alpha.carrier, beta.carrier) or h.cod != gamma.carrier:
        raise TypeMismatch("h must go A x B -> C")
    return T


def bilinear_witness(h, alpha: Algebra, beta: Algebra, gamma: Algebra, warn: bool = True):
    """Diagram with ``dst``: ``gamma . T(h) . dst == h . (alpha x beta)``."""
    T = _bilinear_setup(h, alpha, beta, gamma)
    A, B = alpha.carrier, beta.carrier
    if warn:
        v = is_commutative(T, [A, B]) if max(A.size, B.size) <= 2 else is_commutative(T, [FinSet(1), FinSet(2)])
        if not v:
            warnings.warn(f"{T.name} is not commutative on these sets", NonCommutativeWarning, stacklevel=2)
    lam = dst(T, A, B)
    return left_witness(h, lam, Product(), product_algebra([alpha, beta]), gamma)


def is_bilinear(h, T, alpha: Algebra, beta: Algebra, gamma: Algebra) -> bool:
    if T != gamma.monad:
        raise TypeMismatch("T must be the monad of the algebras")
    return bilinear_witness(h, alpha, beta, gamma) is None


def _component(h, gamma, strength_map, lower):
    T = gamma.monad
    ht = _table(h)
    lhs = T.evaluate(gamma, ht[None, :], _table(strength_map))
    rhs = ht[_table(lower)]
    bad = np.nonzero(lhs != rhs)[0]
    if len(bad):
        x = int(bad[0])
        return {"element": x, "label": strength_map.dom.label(x), "lhs": int(lhs[x]), "rhs": int(rhs[x])}
    return None


def right_component_witness(h, alpha, beta, gamma):
    """Linearity in the second argument: ``gamma . T(h) . st == h . (A x beta)``."""
    T = _bilinear_setup(h, alpha, beta, gamma)
    A, B = alpha.carrier, beta.carrier
    return _component(h, gamma, st(T, A, B), product_map(identity(A), beta.structure))


def left_component_witness(h, alpha, beta, gamma):
    """Linearity in the first argument: ``gamma . T(h) . st' == h . (alpha x B)``."""
    T = _bilinear_setup(h, alpha, beta, gamma)
    A, B = alpha.carrier, beta.carrier
    return _component(h, gamma, st_prime(T, A, B), product_map(alpha.structure, identity(B)))


def right_component(h, alpha, beta, gamma) -> bool:
    return right_component_witness(h, alpha, beta, gamma) is None


def left_component(h, alpha, beta, gamma) -> bool:
    return left_component_witness(h, alpha, beta, gamma) is None


def bilinearity_profile(alpha: Algebra, beta: Algebra, gamma: Algebra):
    """Boolean arrays (dst, left, right) over every map ``A x B -> C`` in table order."""
    T = gamma.monad
    A, B, C = alpha.carrier, beta.carrier, gamma.carrier
    P = product_set(A, B)
    hs = all_map_tables(P, C)

    def holds(lam, lower):
        lt, Lt = _table(lam), _table(lower)
        m = len(lt)
        k = len(hs)
        lhs = T.evaluate(gamma, np.repeat(hs, m, axis=0), np.tile(lt, k)).reshape(k, m)
        return (lhs == hs[:, Lt]).all(axis=1)

    d = holds(dst(T, A, B), product_map(alpha.structure, beta.structure))
    left = holds(st_prime(T, A, B), product_map(alpha.structure, identity(B)))
    right = holds(st(T, A, B), product_map(identity(A), beta.structure))
    return hs, d, left, right


# ---------------------------------------------------------------------------
# Kleisli and Eilenberg-Moore laws


def _scope(X):
    return [p.size for p in X.parts] if isinstance(X, ProductSet) else X.size


def is_kleisli_law(lam: NatFamily, H: Functor, S: MonadInstance, T: MonadInstance, test_objects) -> LawReport:
    """Naturality, unit axiom and multiplication axiom of ``lam : H.S => T.H``."""
    objs = list(test_objects)
    rep = LawReport(f"Kleisli law {lam.name}")
    for X in objs:
        sc = {"object": _scope(X)}
        rep.run("unit", lambda X=X: compare(tabulate(compose(lam.at(X), H.fmap(S.unit(X)))), T.unit(H.obj(X))), "lambda . H(eta) = eta", sc)

        def mult(X=X):
            lhs = compose(lam.at(X), H.fmap(S.mult_best(X)))
            rhs = compose_all(T.mult_best(H.obj(X)), T.fmap_best(lam.at(X)), lam.at(S.obj(X)))
            return compare(tabulate(lhs), rhs)

        rep.run("multiplication", mult, "lambda . H(mu) = mu . T(lambda) . lambda", sc)
    for X, Y in itertools.product(objs, repeat=2):

        def nat(X=X, Y=Y):
            for f in maps_between(X, Y):
                w = lam.naturality_witness(f)
                if w:
                    w["map"] = repr(f)
                    return w
            return None

        rep.run("naturality", nat, "lambda natural", {"objects": [_scope(X), _scope(Y)]})
    return rep


def is_em_law(rho: NatFamily, G: Functor, S: MonadInstance, T: MonadInstance, test_objects) -> LawReport:
    """Naturality and the two axioms of ``rho : S.G => G.T``."""
    objs = list(test_objects)
    rep = LawReport(f"Eilenberg-Moore law {rho.name}")
    for X in objs:
        sc = {"object": _scope(X)}
        GX = G.obj(X)
        rep.run("unit", lambda X=X, GX=GX: compare(tabulate(compose(rho.at(X), S.unit(GX))), tabulate(G.fmap(T.unit(X)))), "rho . eta = G(eta)", sc)

        def mult(X=X, GX=GX):
            lhs = compose(rho.at(X), S.mult_best(GX))
            rhs = compose_all(G.fmap(T.mult_best(X)), rho.at(T.obj(X)), S.fmap_best(rho.at(X)))
            return compare(tabulate(lhs), rhs)

        rep.run("multiplication", mult, "rho . mu = G(mu) . rho . S(rho)", sc)
    for X, Y in itertools.product(objs, repeat=2):

        def nat(X=X, Y=Y):
            for f in maps_between(X, Y):
                w = rho.naturality_witness(f)
                if w:
                    w["map"] = repr(f)
                    return w
            return None

        rep.run("naturality", nat, "rho natural", {"objects": [_scope(X), _scope(Y)]})
    return rep


def em_law_inverse_is_kleisli(rho: NatFamily, G: Functor, S: MonadInstance, T: MonadInstance, test_objects) -> LawReport:
    """Invert every component of ``rho : S.G => G.T`` and check ``G.T => S.G`` as a Kleisli law.

    Raises NotInvertible naming the first non-bijective component.
    """
    objs = list(test_objects)
    inv = rho.inverse()
    for X in objs:
        inv.at(X)
        inv.at(T.obj(X))
    rep = is_kleisli_law(inv, G, T, S, objs)
    rep.subject = f"inverse of {rho.name} as a Kleisli law"
    return rep


# ---------------------------------------------------------------------------
# liftings


@dataclass
class KleisliLift:
    """The lifting ``f : X -> S(Y)  |->  lambda_Y . H(f)`` of ``H`` to Kleisli categories."""

    H: Functor
    lam: NatFamily
    S: MonadInstance
    T: MonadInstance

    def __call__(self, f, Y=None):
        Y = Y if Y is not None else _kleisli_target(self.S, f)
        return tabulate(compose(self.lam.at(Y), self.H.fmap(f)))

    def check_functorial(self, objects) -> LawReport:
        S, T, H = self.S, self.T, self.H
        objs = list(objects)
        rep = LawReport(f"Kleisli lifting of {H.describe()} along {self.lam.name}")
        for X in objs:
            rep.run("identity", lambda X=X: compare(self(S.unit(X), X), T.unit(H.obj(X))), "lift(eta) = eta", {"object": _scope(X)})
        for X, Y, Z in itertools.product(objs, repeat=3):

            def comp(X=X, Y=Y, Z=Z):
                for f in maps_between(X, S.obj(Y)):
                    for g in maps_between(Y, S.obj(Z)):
                        gf = kleisli_compose(S, g, f, Z)
                        lhs = self(gf, Z)
                        rhs = kleisli_compose(T, self(g, Z), self(f, Y), H.obj(Z))
                        w = compare(lhs, rhs)
                        if w:
                            return w
                return None

            rep.run("composition", comp, "lift(g . f) = lift(g) . lift(f)", {"objects": [_scope(X), _scope(Y), _scope(Z)]})
        return rep


def _kleisli_target(S, f):
    raise TypeMismatch("pass the Kleisli target object explicitly")


def kleisli_compose(T: MonadInstance, g, f, Z):
    """``mu_Z . T(g) . f`` for ``f : X -> T(Y)`` and ``g : Y -> T(Z)``."""
    return tabulate(compose_all(T.mult_best(Z), T.fmap_best(g), f))


def kleisli_lift(H: Functor, lam: NatFamily, S: MonadInstance, T: MonadInstance) -> KleisliLift:
    return KleisliLift(H, lam, S, T)


def extract_law(lift: KleisliLift, X):
    """The law component at ``X``: the lift of ``id_{S(X)}`` read as a Kleisli map ``S(X) -> S(X)``."""
    return lift(identity(lift.S.obj(X)), X)


@dataclass
class EMLift:
    """``(A, alpha) |-> (G(A), G(alpha) . rho_A)`` from T-algebras to S-algebras."""

    G: Functor
    rho: NatFamily
    S: MonadInstance

    def __call__(self, alg: Algebra) -> Algebra:
        GA = self.G.obj(alg.carrier)
        structure = tabulate(compose(self.G.fmap(alg.structure), self.rho.at(alg.carrier)))
        return Algebra(self.S, GA, structure, f"lift({alg.name})")

    def on_morphism(self, h):
        return tabulate(self.G.fmap(h))


def em_lift(G: Functor, rho: NatFamily, S: MonadInstance) -> EMLift:
    return EMLift(G, rho, S)


# ---------------------------------------------------------------------------
# composition and n-ary laws


def compose_bimorphisms(h, lam, H: Functor, alpha: Algebra, beta: Algebra, g, lam2: NatFamily, G: Functor, gamma: Algebra):
    """``g . G(h) : alpha =>lam'' gamma`` with ``lam'' = lam2_{H(A)} . G(lam)``.

    Requires ``h : alpha =>lam beta``, ``g : beta =>lam2 gamma`` and the
    naturality square of ``lam2`` at ``h``.
    """
    if not is_left_lambda_morphism(h, lam, H, alpha, beta):
        raise NotABimorphism("h is not a left lambda-morphism")
    if not is_left_lambda_morphism(g, lam2.at(beta.carrier), G, beta, gamma):
        raise NotABimorphism("g is not a left lambda-morphism")
    w = lam2.naturality_witness(h)
    if w is not None:
        raise NotABimorphism("lambda' is not natural at h", w)
    HA = H.obj(alpha.carrier)
    lam3 = tabulate(compose(lam2.at(HA), G.fmap(lam)))
    out = tabulate(compose(g, G.fmap(h)))
    w = left_witness(out, lam3, Compose(G, H), alpha, gamma)
    if w is not None:
        raise AssertionError(f"composite bimorphism check failed: {w}")
    return out, lam3


def nary_kleisli_law_check(lam: NatFamily, H: Functor, monads, T: MonadInstance, test_objects) -> LawReport:
    """The n-ary Kleisli law checked twice: through the product monad and directly.

    The direct route evaluates ``lambda . H(eta, ..., eta) = eta`` and
    ``lambda . H(mu, ..., mu) = mu . T(lambda) . lambda`` with per-component
    monads; a final ``routes-agree`` check compares the two verdict lists.
    """
    monads = list(monads)
    n = len(monads)
    if H.arity != n:
        raise ArityMismatch(f"H has arity {H.arity}, {n} monads given")
    objs = list(test_objects)
    S = monads[0] if n == 1 else product_monad(monads)
    via_product = is_kleisli_law(lam, H, S, T, objs)
    direct = LawReport("direct n-ary diagrams")

    def parts(X):
        return [X] if n == 1 else list(X.parts)

    def tup(maps):
        return maps[0] if n == 1 else ProductMap(tuple(maps))

    def sobj(X):
        return monads[0].obj(X) if n == 1 else ProductSet(tuple(M.obj(P) for M, P in zip(monads, X.parts)))

    for X in objs:
        sc = {"object": _scope(X)}
        direct.run(
            "unit",
            lambda X=X: compare(tabulate(compose(lam.at(X), H.fmap(tup([M.unit(P) for M, P in zip(monads, parts(X))])))), T.unit(H.obj(X))),
            "lambda . H(eta,...,eta) = eta",
            sc,
        )

        def mult(X=X):
            Hmu = H.fmap(tup([M.mult_best(P) for M, P in zip(monads, parts(X))]))
            lhs = compose(lam.at(X), Hmu)
            rhs = compose_all(T.mult_best(H.obj(X)), T.fmap_best(lam.at(X)), lam.at(sobj(X)))
            return compare(tabulate(lhs), rhs)

        direct.run("multiplication", mult, "lambda . H(mu,...,mu) = mu . T(lambda) . lambda", sc)
    for X, Y in itertools.product(objs, repeat=2):

        def nat(X=X, Y=Y):
            for f in maps_between(X, Y):
                w = lam.naturality_witness(f)
                if w:
                    return w
            return None

        direct.run("naturality", nat, "lambda natural", {"objects": [_scope(X), _scope(Y)]})
    rep = LawReport(f"{n}-ary Kleisli law {lam.name}")
    rep.extend(via_product, "product-monad:")
    rep.extend(direct, "direct:")
    a = [(c.name, c.verdict) for c in via_product.checks]
    b = [(c.name, c.verdict) for c in direct.checks]
    rep.run("routes-agree", lambda: None if a == b else {"product_route": a, "direct_route": b}, "n-ary law = law for the product monad")
    return rep


def check_distributive_law_algebra(lam, alpha_S: Algebra, alpha_T: Algebra) -> Verdict:
    """``alpha_S : alpha_T =>lam alpha_T`` for ``lam_C : S(T(C)) -> T(S(C))``."""
    if alpha_S.carrier != alpha_T.carrier:
        raise CarrierMismatch("the two algebras must share a carrier")
    H = MonadFunctor(alpha_S.monad)
    w = left_witness(alpha_S.structure, lam, H, alpha_T, alpha_T)
    return Verdict(w is None, w, {"carrier": alpha_S.carrier.size})


# ---------------------------------------------------------------------------
# axioms phrased as bimorphisms


def identity_algebra(C: FinSet) -> Algebra:
    return Algebra(identity_monad(), C, identity(C), "id")


def em_unit_as_bimorphism(alpha: Algebra):
    """``id : id =>eta alpha`` with ``H = Id`` and the identity monad as source."""
    T = alpha.monad
    C = alpha.carrier
    return left_witness(identity(C), T.unit(C), Identity(), identity_algebra(C), alpha)


def em_mult_as_bimorphism(alpha: Algebra):
    """``alpha : alpha =>mu id`` with ``H = T`` and the identity monad as target."""
    T = alpha.monad
    C = alpha.carrier
    return left_witness(alpha.structure, T.mult(C), MonadFunctor(T), alpha, identity_algebra(C))


def monad_axioms_as_bimorphisms(T: MonadInstance, A: FinSet) -> LawReport:
    """Unit laws as ``id : id =>lam mu`` (lam = eta_T, T(eta)); associativity as ``mu : mu =>id mu``."""
    rep = LawReport(f"monad axioms as bimorphisms for {T.name}")
    TA = T.obj(A)
    sc = {"object": A.size}
    free = Algebra(T, TA, T.mult(A), "mu", free_on=A)
    src = identity_algebra(TA)
    rep.run("unit:eta_T", lambda: left_witness(identity(TA), T.unit(TA), Identity(), src, free), "id : id =>eta_T mu", sc)
    rep.run("unit:T(eta)", lambda: left_witness(identity(TA), T.fmap(T.unit(A)), Identity(), src, free), "id : id =>T(eta) mu", sc)

    def assoc():
        TTA = T.obj(TA)
        upper = Algebra(T, TTA, T.mult(TA), "mu_T")
        return left_witness(T.mult(A), identity(T.obj(TTA)), Identity(), upper, free)

    rep.run("associativity", assoc, "mu : mu_T =>id mu", sc)
    return rep
