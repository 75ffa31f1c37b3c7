"""Strength, costrength and double strengths checked against closed-form expansions."""

import itertools

import numpy as np
import pytest

from bimorph.finset import FinSet
from bimorph.structures import symmetric_group
from bimorph.strength import canonical_strength, check_strength_axioms, dst, dst_prime, is_commutative, st, st_prime

from conftest import builtin_monads, small_sets


def _sum_terms(T, n, terms):
    """Encode a formal sum ``sum c . x`` in ``T(n)`` with repeated positions added up."""
    S = T.S
    out = [S.zero] * n
    for pos, c in terms:
        out[pos] = int(S.add[out[pos], c])
    return T.encode(out)


def expected_st(T, A, B, a, u):
    # st(a, sum s_j b_j) = sum s_j (a, b_j)
    return _sum_terms(T, A.size * B.size, [(a * B.size + b, s) for b, s in enumerate(T.digits(u, B.size))])


def expected_st_prime(T, A, B, t, b):
    # st'(sum s_i a_i, b) = sum s_i (a_i, b)
    return _sum_terms(T, A.size * B.size, [(a * B.size + b, s) for a, s in enumerate(T.digits(t, A.size))])


def expected_dst(T, A, B, t, u, prime=False):
    # dst: sum (r_j x s_i)(a_i, b_j); dst': sum (s_i x r_j)(a_i, b_j)
    S = T.S
    terms = []
    for (a, s), (b, r) in itertools.product(enumerate(T.digits(t, A.size)), enumerate(T.digits(u, B.size))):
        c = S.mul[s, r] if prime else S.mul[r, s]
        terms.append((a * B.size + b, int(c)))
    return _sum_terms(T, A.size * B.size, terms)


SEMIMODULE_SIZES = [(1, 1), (2, 1), (1, 2), (0, 2)]


@pytest.mark.parametrize("which", ["MF2", "MUT", "MZ4"])
@pytest.mark.parametrize("na,nb", SEMIMODULE_SIZES)
def test_semimodule_strengths_match_expansion(request, which, na, nb):
    T = request.getfixturevalue(which)
    A, B = FinSet(na), FinSet(nb)
    s, sp = st(T, A, B), st_prime(T, A, B)
    for a, u in itertools.product(range(na), range(T.obj(B).size)):
        assert s(a * T.obj(B).size + u) == expected_st(T, A, B, a, u)
    for t, b in itertools.product(range(T.obj(A).size), range(nb)):
        assert sp(t * nb + b) == expected_st_prime(T, A, B, t, b)
    d, d2 = dst(T, A, B), dst_prime(T, A, B)
    ntb = T.obj(B).size
    for t, u in itertools.product(range(T.obj(A).size), range(ntb)):
        assert d(t * ntb + u) == expected_dst(T, A, B, t, u)
        assert d2(t * ntb + u) == expected_dst(T, A, B, t, u, prime=True)


def test_writer_double_strengths(WS3):
    M = symmetric_group(3)
    A, B = FinSet(2), FinSet(1)
    d, d2 = dst(WS3, A, B), dst_prime(WS3, A, B)
    ntb = WS3.obj(B).size
    for (m, a), (n, b) in itertools.product(itertools.product(range(6), range(2)), itertools.product(range(6), range(1))):
        i = (m * 2 + a) * ntb + (n * 1 + b)
        assert d(i) == M.mul(n, m) * 2 + (a * 1 + b)
        assert d2(i) == M.mul(m, n) * 2 + (a * 1 + b)


@pytest.mark.parametrize("T", builtin_monads(), ids=lambda T: T.name)
def test_canonical_strength_axioms(T):
    rep = check_strength_axioms(T, small_sets(2) if T.name != "writer(s3)" else small_sets(1))
    assert rep.ok, rep.first_failure()


@pytest.mark.parametrize(
    "name,expected",
    [("identity", True), ("maybe", True), ("writer(s3)", False), ("semimodule(bool)", True), ("semimodule(f2)", True), ("semimodule(z4)", True)],
)
def test_commutativity_of_builtins(name, expected):
    T = {m.name: m for m in builtin_monads()}[name]
    v = is_commutative(T, small_sets(1))
    assert v.holds is expected
    if not expected:
        w = v.witness
        assert w["dst"] != w["dst_prime"]


def test_ut2bool_is_not_commutative(MUT):
    v = is_commutative(MUT, [FinSet(1)])
    assert not v.holds
    assert v.witness["A"] == 1 and v.witness["B"] == 1


def test_writer_commutative_monoid_is_commutative(WC3):
    assert is_commutative(WC3, small_sets(2)).holds


def test_corrupted_strength_fails_an_axiom(MF2):
    S = canonical_strength(MF2)
    A, B = FinSet(1), FinSet(1)
    # st(a0, 0) must be 0 since the strength preserves the zero vector
    bad = S.patched(A, B, 0, 0, 1)
    rep = check_strength_axioms(bad, small_sets(1))
    assert not rep.ok


def test_costrength_derived_from_strength_via_swap(MUT):
    A, B = FinSet(2), FinSet(1)
    S = canonical_strength(MUT)
    for t in range(MUT.obj(A).size):
        assert S.st_co(A, B, t, 0) == expected_st_prime(MUT, A, B, t, 0)


def test_dst_tables_are_cached(MF2):
    A = FinSet(1)
    assert dst(MF2, A, A) is dst(MF2, A, A)
    assert np.array_equal(dst(MF2, A, A).table, dst_prime(MF2, A, A).table)
