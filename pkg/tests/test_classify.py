"""Classifying objects: tensor products, coproducts, functoriality and the free case."""

import numpy as np
import pytest

from bimorph.algebras import enumerate_algebras, find_isomorphism, free_algebra, morphism_tables, product_algebra
from bimorph.bimorphisms import left_morphism_tables
from bimorph.classify import (
    check_coproduct,
    classifying_object,
    coproduct_lift,
    free_iso,
    hat,
    lift_on_morphisms,
    tensor,
    unhat,
    universal_counts,
    verify_universal,
)
from bimorph.errors import KleisliAxiomFails, NaturalitySquareFails, NonCommutativeWarning, NotABimorphism
from bimorph.finset import FinMap, FinSet, ProductMap, ProductSet, compose, identity, tabulate
from bimorph.functors import Product, dst_family
from bimorph.monads import product_monad


def targets(T, n=3):
    return [a for k in range(1, n + 1) for a in enumerate_algebras(T, k)]


@pytest.mark.parametrize("r,s", [(0, 1), (1, 1), (1, 2), (2, 1)])
def test_f2_tensor_of_free_has_dimension_rs(MF2, r, s):
    W = tensor(free_algebra(MF2, FinSet(r)), free_algebra(MF2, FinSet(s)))
    assert W.size == 2 ** (r * s)


def test_tensor_universal_property_f2(MF2):
    F1 = free_algebra(MF2, FinSet(1))
    V2 = enumerate_algebras(MF2, 2)[0]
    for alpha, beta in [(F1, F1), (F1, V2), (V2, V2)]:
        co = tensor(alpha, beta)
        rep = verify_universal(co, targets(MF2, 4))
        assert rep.ok, rep.first_failure()


def test_tensor_universal_property_bool(MBool):
    chains = enumerate_algebras(MBool, 2)
    co = tensor(chains[0], chains[1])
    # 2 (x) 2 is the 2-chain again for semilattices
    assert co.size == 2
    rep = verify_universal(co, targets(MBool, 3))
    assert rep.ok, rep.first_failure()


def test_bilinear_counts_equal_morphism_counts(MBool):
    F1 = free_algebra(MBool, FinSet(1))
    co = tensor(F1, F1)
    for gamma in targets(MBool, 3):
        n_bi, n_mor = universal_counts(co, gamma)
        # free on one generator: a bilinear map is fixed by the image of the pair of generators
        assert n_bi == n_mor == gamma.size


def test_tensor_warns_for_noncommutative(WS3):
    F0 = free_algebra(WS3, FinSet(1))
    with pytest.warns(NonCommutativeWarning):
        tensor(F0, F0)


def test_fast_path_agrees_with_congruence(MF2):
    F1, F2_ = free_algebra(MF2, FinSet(1)), free_algebra(MF2, FinSet(2))
    for a, b in [(F1, F1), (F1, F2_)]:
        slow = tensor(a, b)
        fast = tensor(a, b, fast_path=True)
        assert fast.metadata["method"] == "free"
        assert slow.size == fast.size
        assert find_isomorphism(slow.result, fast.result) is not None


def test_congruence_methods_agree(MBool):
    a, b = enumerate_algebras(MBool, 2)[0], free_algebra(MBool, FinSet(1))
    ex = tensor(a, b, method="exact")
    op = tensor(a, b, method="operations")
    assert np.array_equal(ex.quotient.table, op.quotient.table)


def test_hat_unhat_round_trip(MF2):
    F1 = free_algebra(MF2, FinSet(1))
    co = tensor(F1, F1)
    for gamma in targets(MF2, 2):
        for b in left_morphism_tables(co.lam, co.H, co.base_algebra, gamma):
            h = FinMap(co.universal.dom, gamma.carrier, b, check=False)
            k = hat(h, co, gamma)
            assert np.array_equal(unhat(k, co, gamma).table, b)


def test_hat_rejects_non_bimorphism(MF2):
    F1 = free_algebra(MF2, FinSet(1))
    co = tensor(F1, F1)
    h = FinMap(FinSet(4), FinSet(2), [0, 1, 1, 1])
    with pytest.raises(NotABimorphism):
        hat(h, co, F1)


def test_coproducts(MF2, MBool):
    F1 = free_algebra(MF2, FinSet(1))
    co = coproduct_lift(F1, F1)
    assert co.size == 4
    assert check_coproduct(co, targets(MF2, 2)).ok
    c2 = enumerate_algebras(MBool, 2)
    co = coproduct_lift(c2[0], c2[1])
    # free semilattice on 2 generators
    assert co.size == 4
    rep = check_coproduct(co, targets(MBool, 3))
    assert rep.ok, rep.first_failure()


def test_lift_on_morphisms_is_functorial(MBool):
    c2 = enumerate_algebras(MBool, 2)
    c3 = enumerate_algebras(MBool, 3)
    alpha, alpha2, alpha3 = c2[0], c3[0], c3[1]
    beta = c2[1]
    cos = {id(a): tensor(a, beta) for a in (alpha, alpha2, alpha3)}
    idb = identity(beta.carrier)
    for f in morphism_tables(alpha, alpha2)[:4]:
        for g in morphism_tables(alpha2, alpha3)[:4]:
            fm = FinMap(alpha.carrier, alpha2.carrier, f, check=False)
            gm = FinMap(alpha2.carrier, alpha3.carrier, g, check=False)
            P = lambda m: ProductMap((m, idb))  # noqa: E731
            Wf = lift_on_morphisms(P(fm), cos[id(alpha)], cos[id(alpha2)])
            Wg = lift_on_morphisms(P(gm), cos[id(alpha2)], cos[id(alpha3)])
            Wgf = lift_on_morphisms(P(tabulate(compose(gm, fm))), cos[id(alpha)], cos[id(alpha3)])
            assert np.array_equal(Wgf.table, Wg.table[Wf.table.astype(np.int64)])
    co = cos[id(alpha)]
    Wid = lift_on_morphisms(ProductMap((identity(alpha.carrier), idb)), co, co)
    assert np.array_equal(Wid.table, np.arange(co.size))


def test_lift_detects_unnatural_lambda(MF2):
    F1 = free_algebra(MF2, FinSet(1))
    V = enumerate_algebras(MF2, 2)[0]
    X = ProductSet((FinSet(2), FinSet(2)))
    fam = dst_family(MF2)
    bad = fam.patched(X, 5, 0)
    co1 = classifying_object(Product(), fam.at(X), product_algebra([F1, F1]), MF2)
    co2 = classifying_object(Product(), bad.at(X), product_algebra([V, V]), MF2)
    f = FinMap(F1.carrier, V.carrier, morphism_tables(F1, V)[1], check=False)
    with pytest.raises(NaturalitySquareFails):
        lift_on_morphisms(ProductMap((f, f)), co1, co2)


@pytest.mark.parametrize("which", ["MF2", "MBool"])
def test_free_iso(request, which):
    T = request.getfixturevalue(which)
    P = product_monad([T, T])
    A = ProductSet((FinSet(1), FinSet(1)))
    maps = [ProductMap((FinMap(FinSet(1), FinSet(2), [0]), FinMap(FinSet(1), FinSet(1), [0])))]
    iso = free_iso(Product(), dst_family(T), P, T, A, test_maps=maps)
    assert iso.report.ok, iso.report.first_failure()
    # W for the free pair is T(1 x 1), not T(H(S(A)))
    assert iso.co.size == T.obj(FinSet(1)).size == 2


def test_free_iso_refuses_noncommutative(WS3):
    P = product_monad([WS3, WS3])
    with pytest.raises(KleisliAxiomFails) as exc:
        free_iso(Product(), dst_family(WS3), P, WS3, ProductSet((FinSet(1), FinSet(1))))
    assert exc.value.witness["axiom"] == "multiplication"
