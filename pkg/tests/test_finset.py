import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from bimorph.errors import DomainMismatch, SizeBudgetExceeded
from bimorph.finset import (
    FinMap,
    FinSet,
    all_maps,
    budget_limit,
    compose,
    coproduct,
    count_maps,
    get_budget,
    identity,
    product,
    swap,
)


def maps_up_to(n):
    sets = [FinSet(k) for k in range(n + 1)]
    for A, B in itertools.product(sets, repeat=2):
        yield from all_maps(A, B)


@st.composite
def finmaps(draw, max_size=4):
    a = draw(st.integers(0, max_size))
    b = draw(st.integers(1, max_size))
    table = draw(st.lists(st.integers(0, b - 1), min_size=a, max_size=a))
    return FinMap(FinSet(a), FinSet(b), table)


def test_compose_example():
    f = FinMap(FinSet(2), FinSet(3), [2, 0])
    g = FinMap(FinSet(3), FinSet(2), [1, 1, 0])
    assert compose(g, f).tolist() == [0, 1]


@given(finmaps())
def test_identity_is_unit(f):
    assert compose(identity(f.cod), f) == f
    assert compose(f, identity(f.dom)) == f


def test_compose_rejects_mismatch():
    f = FinMap(FinSet(2), FinSet(3), [0, 1])
    with pytest.raises(DomainMismatch):
        compose(f, f)


def test_composition_associative_exhaustive():
    sets = [FinSet(k) for k in range(3)]
    for A, B, C, D in itertools.product(sets, repeat=4):
        for f in all_maps(A, B):
            for g in all_maps(B, C):
                for h in all_maps(C, D):
                    assert compose(h, compose(g, f)) == compose(compose(h, g), f)


def test_labels_do_not_affect_equality():
    assert FinSet(2, labels=("x", "y")) == FinSet(2)
    with pytest.raises(ValueError):
        FinSet(2, labels=("x", "x"))


@pytest.mark.parametrize("a,b", [(1, 3), (2, 3), (0, 2), (3, 3)])
def test_product_sizes_and_order(a, b):
    P, p1, p2, _ = product(FinSet(a), FinSet(b))
    assert P.size == a * b
    # a-major order
    for i in range(P.size):
        assert (p1(i), p2(i)) == divmod(i, b)


def test_product_with_point_projects_bijectively():
    _, _, p2, _ = product(FinSet(1), FinSet(3))
    assert p2.is_bijective()


def test_product_universal_property():
    sets = [FinSet(k) for k in range(1, 4)]
    for X, A, B in itertools.product(sets, repeat=3):
        P, p1, p2, pair = product(A, B)
        for f in all_maps(X, A):
            for g in all_maps(X, B):
                m = pair(f, g)
                assert compose(p1, m) == f and compose(p2, m) == g
                # uniqueness: only m among all maps X -> P
                fits = [k for k in all_maps(X, P) if compose(p1, k) == f and compose(p2, k) == g]
                assert fits == [m]


def test_coproduct_universal_property():
    sets = [FinSet(k) for k in range(0, 4)]
    for A, B, Y in itertools.product(sets, repeat=3):
        S, k1, k2, copair = coproduct(A, B)
        assert S.size == A.size + B.size
        for f in all_maps(A, Y):
            for g in all_maps(B, Y):
                m = copair(f, g)
                assert compose(m, k1) == f and compose(m, k2) == g
                fits = [k for k in all_maps(S, Y) if compose(k, k1) == f and compose(k, k2) == g]
                assert fits == [m]


def test_coproduct_with_empty_left():
    _, _, k2, _ = coproduct(FinSet(0), FinSet(3))
    assert k2.is_bijective()
    assert coproduct(FinSet(2), FinSet(2))[0].size == 4


def test_all_maps_counts():
    assert [m.tolist() for m in all_maps(FinSet(0), FinSet(3))] == [[]]
    assert len(list(all_maps(FinSet(2), FinSet(2)))) == 4
    tables = [tuple(m.tolist()) for m in all_maps(FinSet(3), FinSet(3))]
    assert len(tables) == 27 == len(set(tables))
    assert tables == sorted(tables)


def test_all_maps_respects_budget():
    assert count_maps(FinSet(5), FinSet(4)) == 1024
    with budget_limit(1000):
        assert get_budget() == 1000
        with pytest.raises(SizeBudgetExceeded):
            list(all_maps(FinSet(5), FinSet(4)))
    assert get_budget() == 10**6


def test_swap_is_involution():
    A, B = FinSet(2), FinSet(3)
    assert compose(swap(B, A), swap(A, B)) == identity(compose(swap(B, A), swap(A, B)).dom)


def test_inverse_and_entries():
    f = FinMap(FinSet(3), FinSet(3), [2, 0, 1])
    assert compose(f.inverse(), f) == identity(FinSet(3))
    g = f.with_entry(0, 0)
    assert g.tolist() == [0, 0, 1] and f.tolist() == [2, 0, 1]
    assert np.array_equal(f.table, [2, 0, 1])
