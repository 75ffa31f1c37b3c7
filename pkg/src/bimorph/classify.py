"""Classifying objects for left lambda-morphisms.

``W`` is the coequalizer of ``mu . T(lambda)`` and ``T(H(alpha))`` out of the
free algebra on ``H(S(A))``.  It is computed as a quotient of the free
algebra on ``H(A)`` by the congruence generated by the pairs
``(lambda(y), eta(H(alpha)(y)))``, one per ``y`` in ``H(S(A))``.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from .algebras import (
    Algebra,
    Congruence,
    Partition,
    congruence_closure,
    count_algebra_morphisms,
    free_algebra,
    morphism_tables,
    morphism_witness,
    product_algebra,
    quotient_algebra,
)
from .bimorphisms import _table, left_morphism_tables, left_witness
from .errors import (
    KleisliAxiomFails,
    NaturalitySquareFails,
    NonCommutativeWarning,
    NotABimorphism,
    NotAMorphism,
)
from .finset import (
    FinMap,
    FinSet,
    ProductSet,
    compose,
    compose_all,
    identity,
    tabulate,
    within_budget,
)
from .functors import Coproduct, Functor, NatFamily, Product, coproduct_law, dst_family
from .monads import MonadInstance, compare
from .report import LawReport
from .strength import is_commutative


@dataclass
class ClassifyingObject:
    """``(W, omega)`` with ``q : T(H(A)) -> W`` and ``u = q . eta : H(A) -> W``."""

    H: Functor
    lam: FinMap
    base_algebra: Algebra
    result: Algebra
    quotient: FinMap
    universal: FinMap
    section: np.ndarray
    congruence: Congruence | None = None
    metadata: dict = field(default_factory=dict)

    @property
    def monad(self) -> MonadInstance:
        return self.result.monad

    @property
    def size(self) -> int:
        return self.result.size


def _fill(gamma: Algebra, h_table: np.ndarray, ts: np.ndarray) -> np.ndarray:
    """``gamma . T(h)`` at each ``t`` in ``ts``."""
    return gamma.monad.evaluate(gamma, np.asarray(h_table, dtype=np.int64)[None, :], np.asarray(ts, dtype=np.int64))


def classifying_object(
    H: Functor,
    lam,
    alpha: Algebra,
    T: MonadInstance,
    method: str = "auto",
    fast_path: bool = False,
    name: str | None = None,
) -> ClassifyingObject:
    """Build ``(W_alpha, omega_alpha)`` together with ``q`` and ``u``.

    ``lam`` is the component ``H(S(A)) -> T(H(A))`` or a NatFamily.  With
    ``fast_path`` and a free ``alpha`` (and a family), the quotient is
    ``T(H(A0))`` with ``q = mu . T(lambda_{A0})``, after checking that ``q``
    coequalizes the generating pairs and splits through ``T(H(eta))``.
    """
    A = alpha.carrier
    HA = H.obj(A)
    if fast_path and isinstance(lam, NatFamily) and alpha.free_on is not None:
        return _free_fast_path(H, lam, alpha, T, name)
    lam_A = lam.at(A) if isinstance(lam, NatFamily) else lam
    Halpha = tabulate(H.fmap(alpha.structure))
    if lam_A.dom != Halpha.dom:
        from .errors import TypeMismatch

        raise TypeMismatch("lambda must go H(S(A)) -> T(H(A))")
    F = free_algebra(T, HA)
    eta = T.unit(HA).table.astype(np.int64)
    lt = _table(lam_A)
    pairs = zip(lt.tolist(), eta[Halpha.table.astype(np.int64)].tolist())
    cong = congruence_closure(F, pairs, method)
    quo = quotient_algebra(F, cong, name or f"W({alpha.name})")
    q = quo.q
    u = FinMap(HA, quo.algebra.carrier, q.table[eta], check=False)
    co = ClassifyingObject(H, lam_A, alpha, quo.algebra, q, u, quo.section, cong, {"method": cong.method, "rounds": cong.iterations})
    w = left_witness(u, lam_A, H, alpha, co.result)
    if w is not None:
        raise NotABimorphism("u is not a left lambda-morphism", w)
    return co


def _free_fast_path(H, lam: NatFamily, alpha: Algebra, T, name):
    S = alpha.monad
    A0 = alpha.free_on
    A = alpha.carrier
    HA, HA0 = H.obj(A), H.obj(A0)
    lam0 = lam.at(A0)
    F0 = free_algebra(T, HA0)
    TA = T.obj(HA)
    ts = np.arange(TA.size, dtype=np.int64)
    qt = _fill(F0, _table(lam0), ts)
    q = FinMap(TA, F0.carrier, qt, check=False)
    eta = T.unit(HA).table.astype(np.int64)
    u = FinMap(HA, F0.carrier, qt[eta], check=False)
    # q coequalizes the generating pairs
    Halpha = _table(H.fmap(alpha.structure))
    lam_A = lam.at(A)
    lt = _table(lam_A)
    bad = np.nonzero(qt[lt] != qt[eta[Halpha]])[0]
    if len(bad):
        raise NotABimorphism("fast path: q does not coequalize the generating pairs", {"element": int(bad[0])})
    # split by T(H(eta_A0)): q . T(H(eta)) = id
    split = _table(T.fmap_best(H.fmap(S.unit(A0))))
    bad = np.nonzero(qt[split] != np.arange(F0.size))[0]
    if len(bad):
        raise NotABimorphism("fast path: T(H(eta)) is not a section of q", {"element": int(bad[0])})
    result = Algebra(T, F0.carrier, F0.structure, name or f"W({alpha.name})", free_on=HA0)
    co = ClassifyingObject(H, lam_A, alpha, result, q, u, split, None, {"method": "free", "rounds": 0})
    w = left_witness(u, lam_A, H, alpha, result)
    if w is not None:
        raise NotABimorphism("u is not a left lambda-morphism", w)
    return co


# ---------------------------------------------------------------------------
# the universal property


def hat(h, co: ClassifyingObject, gamma: Algebra) -> FinMap:
    """The unique algebra morphism ``k : W -> gamma`` with ``k . u = h``."""
    w = left_witness(h, co.lam, co.H, co.base_algebra, gamma)
    if w is not None:
        raise NotABimorphism("h is not a left lambda-morphism", w)
    k = FinMap(co.result.carrier, gamma.carrier, _fill(gamma, _table(h), co.section), check=False)
    back = compose(k, co.universal)
    if compare(tabulate(back), tabulate(h)) is not None:
        raise AssertionError("hat(h) . u differs from h")
    return k


def unhat(k, co: ClassifyingObject, gamma: Algebra) -> FinMap:
    """``k . u``; a left lambda-morphism whenever ``k`` is an algebra morphism."""
    w = morphism_witness(k, co.result, gamma)
    if w is not None:
        raise NotAMorphism("k is not an algebra morphism out of W", w)
    h = tabulate(compose(k, co.universal))
    w = left_witness(h, co.lam, co.H, co.base_algebra, gamma)
    if w is not None:
        raise AssertionError(f"k . u is not a bimorphism: {w}")
    return h


def universal_counts(co: ClassifyingObject, gamma: Algebra) -> tuple[int, int]:
    """(number of lambda-morphisms into gamma, number of algebra morphisms W -> gamma)."""
    bis = left_morphism_tables(co.lam, co.H, co.base_algebra, gamma)
    return len(bis), count_algebra_morphisms(co.result, gamma)


def _universal_against(co: ClassifyingObject, gamma: Algebra):
    bis = left_morphism_tables(co.lam, co.H, co.base_algebra, gamma)
    ks = morphism_tables(co.result, gamma)
    if len(bis) != len(ks):
        return {"target": gamma.name, "bimorphisms": len(bis), "morphisms": len(ks)}
    ut = co.universal.table.astype(np.int64)
    restricted = ks[:, ut] if len(ks) else np.zeros((0, len(ut)), dtype=np.int64)
    # unhat lands in bimorphisms and is injective: uniqueness of fill-ins
    if len(np.unique(restricted, axis=0)) != len(ks):
        return {"target": gamma.name, "reason": "two morphisms agree on u"}
    bis_set = {tuple(b) for b in bis.tolist()}
    for k, r in zip(ks.tolist(), restricted.tolist()):
        if tuple(r) not in bis_set:
            return {"target": gamma.name, "reason": "k . u is not a bimorphism", "k": k}
    # hat . unhat and unhat . hat are identities
    for b in bis:
        kb = _fill(gamma, b, co.section)
        if not (kb[ut] == b).all():
            return {"target": gamma.name, "reason": "hat(h) . u != h", "h": b.tolist()}
        if not (ks == kb).all(axis=1).any():
            return {"target": gamma.name, "reason": "hat(h) is not a morphism", "h": b.tolist()}
    return None


def verify_universal(co: ClassifyingObject, targets) -> LawReport:
    """Counts, round trips and uniqueness of fill-ins against every target algebra."""
    rep = LawReport(f"universal property of {co.result.name}")
    rep.run("u-bimorphism", lambda: left_witness(co.universal, co.lam, co.H, co.base_algebra, co.result), "u : alpha =>lam omega")
    for gamma in targets:
        rep.run("bijection", lambda gamma=gamma: _universal_against(co, gamma), "bimorphisms = morphisms out of W", {"target": gamma.name, "size": gamma.size})
    return rep


# ---------------------------------------------------------------------------
# functoriality and the free case


def naturality_square(f, lam_A, lam_B, H: Functor, S: MonadInstance, T: MonadInstance):
    """``None`` when ``lambda_B . H(S(f)) == T(H(f)) . lambda_A``."""
    lhs = compose(lam_B, H.fmap(S.fmap_best(f)))
    rhs = compose(T.fmap_best(H.fmap(f)), lam_A)
    return compare(tabulate(lhs), tabulate(rhs))


def lift_on_morphisms(f, co1: ClassifyingObject, co2: ClassifyingObject) -> FinMap:
    """The induced morphism ``W_alpha -> W_alpha'`` for an algebra morphism ``f : A -> A'``."""
    H, T = co1.H, co1.monad
    S = co1.base_algebra.monad
    w = morphism_witness(f, co1.base_algebra, co2.base_algebra)
    if w is not None:
        raise NotAMorphism("f is not an algebra morphism", w)
    w = naturality_square(f, co1.lam, co2.lam, H, S, T)
    if w is not None:
        raise NaturalitySquareFails("lambda is not natural at f", w)
    g = tabulate(compose(co2.universal, H.fmap(f)))
    out = FinMap(co1.result.carrier, co2.result.carrier, _fill(co2.result, _table(g), co1.section), check=False)
    if compare(tabulate(compose(out, co1.universal)), g) is not None:
        raise AssertionError("induced map does not extend u' . H(f)")
    return out


@dataclass
class FreeIso:
    co: ClassifyingObject
    free: Algebra
    forward: FinMap  # W -> T(H(A))
    backward: FinMap  # T(H(A)) -> W
    report: LawReport


def _kleisli_preconditions(H, lam: NatFamily, S, T, A):
    SA = S.obj(A)
    lam_A, lam_SA = lam.at(A), lam.at(SA)
    w = compare(tabulate(compose(lam_A, H.fmap(S.unit(A)))), T.unit(H.obj(A)))
    if w is not None:
        raise KleisliAxiomFails("unit axiom fails at A", {"axiom": "unit", **w})
    lhs = compose(lam_A, H.fmap(S.mult_best(A)))
    rhs = compose_all(T.mult_best(H.obj(A)), T.fmap_best(lam_A), lam_SA)
    w = compare(tabulate(lhs), tabulate(rhs))
    if w is not None:
        raise KleisliAxiomFails("multiplication axiom fails at A", {"axiom": "multiplication", **w})
    w = lam.naturality_witness(S.unit(A))
    if w is not None:
        raise KleisliAxiomFails("lambda is not natural at eta_A", {"axiom": "eta-naturality", **w})


def free_iso(H: Functor, lam: NatFamily, S: MonadInstance, T: MonadInstance, A, method: str = "auto", fast_path: bool = False, test_maps=()) -> FreeIso:
    """Mutually inverse algebra morphisms between ``W`` for ``free(S, A)`` and ``free(T, H(A))``."""
    _kleisli_preconditions(H, lam, S, T, A)
    alpha = free_algebra(S, A)
    co = classifying_object(H, lam, alpha, T, method=method, fast_path=fast_path)
    HA = H.obj(A)
    F = free_algebra(T, HA)
    fwd = FinMap(co.result.carrier, F.carrier, _fill(F, _table(lam.at(A)), co.section), check=False)
    g = tabulate(compose(co.universal, H.fmap(S.unit(A))))
    bwd = FinMap(F.carrier, co.result.carrier, _fill(co.result, _table(g), np.arange(F.size)), check=False)
    rep = LawReport(f"free isomorphism at {H.describe()}")
    n = co.result.size
    rep.run("backward.forward", lambda: compare(tabulate(compose(bwd, fwd)), identity(co.result.carrier)), "identity on W")
    rep.run("forward.backward", lambda: compare(tabulate(compose(fwd, bwd)), identity(F.carrier)), "identity on T(H(A))")
    rep.run("forward-morphism", lambda: morphism_witness(fwd, co.result, F), "forward is an algebra morphism", {"size": n})
    rep.run("backward-morphism", lambda: morphism_witness(bwd, F, co.result), "backward is an algebra morphism", {"size": n})
    for h in test_maps:
        B = h.cod

        def nat(h=h, B=B):
            co_B = classifying_object(H, lam, free_algebra(S, B), T, method=method, fast_path=fast_path)
            Wh = lift_on_morphisms(S.fmap_best(h), co, co_B)
            fwd_B = _fill(free_algebra(T, H.obj(B)), _table(lam.at(B)), co_B.section)
            lhs = fwd_B[Wh.table.astype(np.int64)]
            rhs = _table(T.fmap_best(H.fmap(h)))[fwd.table.astype(np.int64)]
            bad = np.nonzero(lhs != rhs)[0]
            return None if not len(bad) else {"element": int(bad[0]), "lhs": int(lhs[bad[0]]), "rhs": int(rhs[bad[0]])}

        rep.run("naturality", nat, "forward natural in A", {"map": repr(h)})
    return FreeIso(co, F, fwd, bwd, rep)


# ---------------------------------------------------------------------------
# instances


def tensor(alpha: Algebra, beta: Algebra, T: MonadInstance | None = None, method: str = "auto", fast_path: bool = False) -> ClassifyingObject:
    """``alpha (x) beta`` classifying bimorphisms along ``dst``."""
    T = T or alpha.monad
    sets = [FinSet(1), FinSet(2)]
    if not is_commutative(T, sets):
        warnings.warn(f"{T.name} is not commutative; tensor uses dst", NonCommutativeWarning, stacklevel=2)
    pair = product_algebra([alpha, beta])
    return classifying_object(Product(), dst_family(T), pair, T, method=method, fast_path=fast_path, name=f"{alpha.name}(x){beta.name}")


def coproduct_lift(alpha: Algebra, beta: Algebra, T: MonadInstance | None = None, method: str = "auto", fast_path: bool = False) -> ClassifyingObject:
    """``alpha + beta`` in the category of algebras, via the law ``[T(k1), T(k2)]``."""
    T = T or alpha.monad
    pair = product_algebra([alpha, beta])
    return classifying_object(Coproduct(), coproduct_law(T), pair, T, method=method, fast_path=fast_path, name=f"{alpha.name}+{beta.name}")


def coproduct_injections(co: ClassifyingObject) -> tuple[FinMap, FinMap]:
    """``u . k1`` and ``u . k2``."""
    A, B = co.base_algebra.carrier.parts
    ut = co.universal.table.astype(np.int64)
    W = co.result.carrier
    return FinMap(A, W, ut[: A.size], check=False), FinMap(B, W, ut[A.size :], check=False)


def check_coproduct(co: ClassifyingObject, targets) -> LawReport:
    """Hom counts multiply and every pair of morphisms has exactly one mediating morphism."""
    alpha, beta = _components(co.base_algebra)
    i1, i2 = coproduct_injections(co)
    rep = LawReport(f"coproduct {co.result.name}")
    rep.run("injection-1", lambda: morphism_witness(i1, alpha, co.result), "u . k1 algebra morphism")
    rep.run("injection-2", lambda: morphism_witness(i2, beta, co.result), "u . k2 algebra morphism")
    t1, t2 = i1.table.astype(np.int64), i2.table.astype(np.int64)
    for gamma in targets:

        def check(gamma=gamma):
            fs = morphism_tables(alpha, gamma)
            gs = morphism_tables(beta, gamma)
            ks = morphism_tables(co.result, gamma)
            if len(ks) != len(fs) * len(gs):
                return {"target": gamma.name, "hom_sum": len(ks), "hom_alpha": len(fs), "hom_beta": len(gs)}
            pairs = {(tuple(k[t1].tolist()), tuple(k[t2].tolist())) for k in ks}
            if len(pairs) != len(ks):
                return {"target": gamma.name, "reason": "mediating morphism not unique"}
            want = {(tuple(f), tuple(g)) for f in fs.tolist() for g in gs.tolist()}
            if pairs != want:
                return {"target": gamma.name, "reason": "some pair has no mediating morphism"}
            return None

        rep.run("universal", check, "Hom(a+b, c) = Hom(a, c) x Hom(b, c)", {"target": gamma.name, "size": gamma.size})
    return rep


def _components(alg: Algebra):
    from .monads import ProductMonad

    P = alg.monad
    if not isinstance(P, ProductMonad):
        raise ValueError("expected an algebra for a product monad")
    return tuple(Algebra(T, C, s, f"{alg.name}[{i}]") for i, (T, C, s) in enumerate(zip(P.components, alg.carrier.parts, alg.structure.parts)))
