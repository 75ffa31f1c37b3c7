"""Left/right morphisms, bilinearity, laws and their lifts."""

import itertools
import warnings

import numpy as np
import pytest

from bimorph.algebras import Algebra, brute_force_algebras, enumerate_algebras, free_algebra, morphism_tables
from bimorph.bimorphisms import (
    bilinear_witness,
    bilinearity_profile,
    check_distributive_law_algebra,
    compose_bimorphisms,
    em_law_inverse_is_kleisli,
    em_lift,
    em_mult_as_bimorphism,
    em_unit_as_bimorphism,
    extract_law,
    identity_algebra,
    is_bilinear,
    is_em_law,
    is_kleisli_law,
    is_left_lambda_morphism,
    kleisli_lift,
    left_morphism_tables,
    left_witness,
    monad_axioms_as_bimorphisms,
    nary_kleisli_law_check,
)
from bimorph.errors import CarrierMismatch, NonCommutativeWarning, NotInvertible, TypeMismatch
from bimorph.finset import FinMap, FinSet, ProductSet, all_map_tables, compose, compose_all, identity, product_objects, tabulate
from bimorph.functors import Coproduct, Identity, MonadFunctor, Product, coproduct_law, dst_family, identity_family, morphism_family
from bimorph.monads import PatchedMultMonad, maybe_monad, maybe_to_semimodule, product_monad, semimodule_monad, writer_automorphism
from bimorph.structures import boolean_semiring, symmetric_group

from conftest import builtin_monads


def combo(alg, terms):
    """``alg`` applied to the formal sum ``sum c . x`` of carrier elements."""
    T = alg.monad
    S = T.S
    v = [S.zero] * alg.size
    for x, c in terms:
        v[x] = int(S.add[v[x], c])
    return alg(T.encode(v))


def brute_bilinear(h, alpha, beta, gamma):
    # h(sum s_i a_i, sum r_j b_j) = sum (r_j s_i) h(a_i, b_j)
    T = gamma.monad
    S = T.S
    nb = beta.size
    for t, u in itertools.product(range(T.obj(alpha.carrier).size), range(T.obj(beta.carrier).size)):
        ss, rs = T.digits(t, alpha.size), T.digits(u, nb)
        terms = [(h[a * nb + b], int(S.mul[r, s])) for (a, s), (b, r) in itertools.product(enumerate(ss), enumerate(rs))]
        if h[alpha(t) * nb + beta(u)] != combo(gamma, terms):
            return False
    return True


def brute_left_linear(h, alpha, beta, gamma):
    # h(sum s_i a_i, b) = sum s_i h(a_i, b)
    T = gamma.monad
    nb = beta.size
    return all(
        h[alpha(t) * nb + b] == combo(gamma, [(h[a * nb + b], s) for a, s in enumerate(T.digits(t, alpha.size))])
        for t in range(T.obj(alpha.carrier).size)
        for b in range(nb)
    )


def brute_right_linear(h, alpha, beta, gamma):
    # h(a, sum r_j b_j) = sum r_j h(a, b_j)
    T = gamma.monad
    nb = beta.size
    return all(
        h[a * nb + beta(u)] == combo(gamma, [(h[a * nb + b], r) for b, r in enumerate(T.digits(u, nb))])
        for a in range(alpha.size)
        for u in range(T.obj(beta.carrier).size)
    )


def _profile_against_brute(alpha, beta, gamma):
    hs, d, left, right = bilinearity_profile(alpha, beta, gamma)
    for k, h in enumerate(hs.tolist()):
        assert bool(left[k]) == brute_left_linear(h, alpha, beta, gamma)
        assert bool(right[k]) == brute_right_linear(h, alpha, beta, gamma)
        assert bool(d[k]) == brute_bilinear(h, alpha, beta, gamma)
    return hs, d, left, right


@pytest.mark.parametrize("which", ["MF2", "MBool"])
def test_bilinearity_profile_matches_expansion(request, which):
    T = request.getfixturevalue(which)
    F1 = free_algebra(T, FinSet(1))
    algs = [F1] + enumerate_algebras(T, 2)[:1]
    for alpha, beta, gamma in itertools.product(algs, repeat=3):
        hs, d, left, right = _profile_against_brute(alpha, beta, gamma)
        # commutative scalars: both linearities together are bilinearity
        assert np.array_equal(d, left & right)


def test_f2_bilinear_maps_count(MF2):
    # bilinear F2 x F2 -> V correspond to linear F2 -> V
    F1 = free_algebra(MF2, FinSet(1))
    for gamma in [F1, free_algebra(MF2, FinSet(2))]:
        _, d, _, _ = bilinearity_profile(F1, F1, gamma)
        assert int(d.sum()) == gamma.size


def restricted_bool(T, diag):
    """Bool as a ut2bool-module through the diagonal entry ``diag`` (0 top-left, 1 bottom-right)."""
    C = FinSet(2)
    TC = T.obj(C)
    shift = 2 if diag == 0 else 0
    table = [(T.digits(t, 2)[1] >> shift) & 1 for t in range(TC.size)]
    return Algebra(T, C, FinMap(TC, C, table), f"bool[{diag}]")


def test_noncommutative_profile_matches_expansion(MUT):
    top, bottom = restricted_bool(MUT, 0), restricted_bool(MUT, 1)
    for alpha, beta in [(top, bottom), (bottom, top)]:
        hs, d, left, right = _profile_against_brute(alpha, beta, top)
        # expanding one argument after the other yields the dst coefficients r_j s_i
        assert np.array_equal(d, left & right)
        assert 0 < int(d.sum()) < len(hs)


def test_bilinear_warns_on_noncommutative(MUT):
    top = restricted_bool(MUT, 0)
    h = FinMap(FinSet(4), FinSet(2), [0, 0, 0, 1])
    with pytest.warns(NonCommutativeWarning):
        assert is_bilinear(h, MUT, top, top, top)


def test_bilinear_no_warning_when_commutative(MF2):
    F1 = free_algebra(MF2, FinSet(1))
    h = FinMap(FinSet(4), FinSet(2), [0, 0, 0, 1])
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        assert is_bilinear(h, MF2, F1, F1, F1)
        assert bilinear_witness(FinMap(FinSet(4), FinSet(2), [0, 1, 1, 1]), F1, F1, F1) is not None


def test_bilinear_rejects_monad_mismatch(MF2, MBool):
    F1 = free_algebra(MF2, FinSet(1))
    h = FinMap(FinSet(4), FinSet(2), [0, 0, 0, 1])
    with pytest.raises(TypeMismatch):
        is_bilinear(h, MBool, F1, F1, F1)


def literal_left(h, lam, H, alpha, beta):
    T = beta.monad
    lhs = tabulate(compose_all(beta.structure, T.fmap(h), lam))
    rhs = tabulate(compose(h, H.fmap(alpha.structure)))
    return np.array_equal(lhs.table, rhs.table)


def test_left_morphism_tables_match_literal_composites(MBool):
    sig = maybe_to_semimodule(boolean_semiring())
    lam = sig.at(FinSet(2))
    alphas = enumerate_algebras(maybe_monad(), 2)
    betas = enumerate_algebras(MBool, 2) + enumerate_algebras(MBool, 3)[:2]
    for alpha, beta in itertools.product(alphas, betas):
        expect = [t for t in all_map_tables(alpha.carrier, beta.carrier).tolist() if literal_left(FinMap(alpha.carrier, beta.carrier, t, check=False), lam, Identity(), alpha, beta)]
        assert left_morphism_tables(lam, Identity(), alpha, beta).tolist() == expect


def test_left_witness_names_leg(MF2):
    F1 = free_algebra(MF2, FinSet(1))
    with pytest.raises(TypeMismatch, match="leg h"):
        left_witness(identity(FinSet(3)), MF2.unit(FinSet(2)), Identity(), F1, F1)
    with pytest.raises(TypeMismatch, match="leg lambda"):
        left_witness(identity(FinSet(2)), identity(FinSet(2)), Identity(), F1, F1)


@pytest.mark.parametrize("which", ["MF2", "MBool"])
def test_dst_is_kleisli_law_for_commutative(request, which):
    T = request.getfixturevalue(which)
    rep = nary_kleisli_law_check(dst_family(T), Product(), [T, T], T, product_objects(range(2), 2))
    assert rep.ok, rep.first_failure()


def test_dst_fails_for_noncommutative_writer(WS3):
    rep = nary_kleisli_law_check(dst_family(WS3), Product(), [WS3, WS3], WS3, product_objects(range(2), 2))
    failed = {c.name for c in rep.failures}
    assert "product-monad:multiplication" in failed and "direct:multiplication" in failed
    assert "routes-agree" not in failed
    assert "product-monad:unit" not in failed


@pytest.mark.parametrize("T", builtin_monads(), ids=lambda T: T.name)
def test_coproduct_law(T):
    objs = product_objects(range(2), 2)
    rep = is_kleisli_law(coproduct_law(T), Coproduct(), product_monad([T, T]), T, objs)
    assert rep.ok, rep.first_failure()


def test_mutated_dst_fails_a_law(MF2):
    X = ProductSet((FinSet(1), FinSet(2)))
    bad = dst_family(MF2).patched(X, 7, 0)
    rep = is_kleisli_law(bad, Product(), product_monad([MF2, MF2]), MF2, [X, *product_objects(range(2), 2)])
    assert not rep.ok


def test_kleisli_lift_is_functorial_and_recovers_law(MBool):
    P = product_monad([MBool, MBool])
    lam = coproduct_law(MBool)
    lift = kleisli_lift(Coproduct(), lam, P, MBool)
    objs = product_objects([0, 1], 2)
    assert lift.check_functorial(objs).ok
    for X in objs:
        assert np.array_equal(tabulate(extract_law(lift, X)).table, tabulate(lam.at(X)).table)


def test_monad_morphism_is_em_law_and_lift_is_restriction(MBool):
    sig = maybe_to_semimodule(boolean_semiring())
    fam = morphism_family(sig)
    assert is_em_law(fam, Identity(), maybe_monad(), MBool, [FinSet(k) for k in range(3)]).ok
    R = em_lift(Identity(), fam, maybe_monad())
    for beta in enumerate_algebras(MBool, 3):
        pointed = R(beta)
        # the distinguished point is the empty join
        assert pointed(3) == beta(0)
        assert is_em_law(identity_family(MonadFunctor(MBool)), Identity(), MBool, MBool, [FinSet(1)]).ok


def test_em_law_inverse(WS3):
    M = symmetric_group(3)
    sig = writer_automorphism(M, _conjugation(M))
    fam = morphism_family(sig)
    rep = em_law_inverse_is_kleisli(fam, Identity(), WS3, WS3, [FinSet(1), FinSet(2)])
    assert rep.ok, rep.first_failure()
    non_inv = morphism_family(maybe_to_semimodule(boolean_semiring()))
    with pytest.raises(NotInvertible):
        em_law_inverse_is_kleisli(non_inv, Identity(), maybe_monad(), semimodule_bool(), [FinSet(1)])


def _conjugation(M):
    g = next(x for x in range(M.size) if any(M.mul(x, y) != M.mul(y, x) for y in range(M.size)))
    ginv = next(y for y in range(M.size) if M.mul(g, y) == M.unit)
    return [M.mul(M.mul(g, x), ginv) for x in range(M.size)]


def semimodule_bool():
    return semimodule_monad(boolean_semiring())


def test_compose_bimorphisms(MBool):
    sig = maybe_to_semimodule(boolean_semiring())
    lam = sig.at(FinSet(2))
    ident = identity_family(MonadFunctor(MBool))
    alpha = enumerate_algebras(maybe_monad(), 2)[0]
    betas = enumerate_algebras(MBool, 2)
    gamma = enumerate_algebras(MBool, 3)[0]
    checked = 0
    for beta in betas:
        for ht in left_morphism_tables(lam, Identity(), alpha, beta):
            h = FinMap(alpha.carrier, beta.carrier, ht, check=False)
            for gt in morphism_tables(beta, gamma):
                g = FinMap(beta.carrier, gamma.carrier, gt, check=False)
                out, lam3 = compose_bimorphisms(h, lam, Identity(), alpha, beta, g, ident, Identity(), gamma)
                assert np.array_equal(out.table, gt[ht])
                assert literal_left(out, lam3, Identity(), alpha, gamma)
                checked += 1
    assert checked > 0


def test_distributive_law_algebra():
    C = FinSet(2)
    alpha_S = identity_algebra(C)
    T = semimodule_bool()
    for alpha_T in enumerate_algebras(T, 2):
        lam = identity(T.obj(C))
        v = check_distributive_law_algebra(lam, alpha_S, alpha_T)
        assert v.holds
    with pytest.raises(CarrierMismatch):
        check_distributive_law_algebra(identity(T.obj(FinSet(3))), identity_algebra(FinSet(3)), alpha_T)


def test_em_axioms_as_bimorphisms(MF2):
    for alpha in enumerate_algebras(MF2, 2) + [free_algebra(MF2, FinSet(1))]:
        assert em_unit_as_bimorphism(alpha) is None
        assert em_mult_as_bimorphism(alpha) is None
    # every unital structure on 2 points: the mult square picks out exactly the algebras
    C = FinSet(2)
    TC = MF2.obj(C)
    eta = MF2.unit(C).table.tolist()
    free_pos = [t for t in range(TC.size) if t not in eta]
    valid = {tuple(a.structure.table.tolist()) for a in brute_force_algebras(MF2, 2)}
    rejected = 0
    for vals in itertools.product(range(2), repeat=len(free_pos)):
        table = [0] * TC.size
        for x, t in enumerate(eta):
            table[t] = x
        for t, v in zip(free_pos, vals):
            table[t] = v
        cand = Algebra(MF2, C, FinMap(TC, C, table), "cand")
        assert em_unit_as_bimorphism(cand) is None
        ok = em_mult_as_bimorphism(cand) is None
        assert ok == (tuple(table) in valid)
        rejected += not ok
    assert rejected == 2


@pytest.mark.parametrize("T", builtin_monads(), ids=lambda T: T.name)
def test_monad_axioms_as_bimorphisms(T):
    assert monad_axioms_as_bimorphisms(T, FinSet(1)).ok


def test_monad_axioms_as_bimorphisms_detect_bad_mult(MF2):
    bad = PatchedMultMonad(MF2, FinSet(2), 5, 3)
    rep = monad_axioms_as_bimorphisms(bad, FinSet(2))
    assert "associativity" in {c.name for c in rep.failures}
