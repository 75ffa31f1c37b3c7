import itertools

import pytest

from bimorph.errors import ValidationError
from bimorph.finset import FinSet
from bimorph.structures import (
    FiniteMonoid,
    FiniteSemiring,
    boolean_semiring,
    cyclic_monoid,
    enumerate_monoids,
    f2,
    symmetric_group,
    upper_triangular_boolean,
    z4,
)


@pytest.mark.parametrize("make", [boolean_semiring, f2, z4, upper_triangular_boolean])
def test_fixture_semirings_validate(make):
    S = make()
    S.validate()
    assert S.mul[S.one, S.zero] == S.zero


def test_commutativity_flags():
    assert f2().is_commutative() and boolean_semiring().is_commutative() and z4().is_commutative()
    ut = upper_triangular_boolean()
    assert not ut.is_commutative()
    x, y = ut.noncommuting_pair()
    assert ut.mul[x, y] != ut.mul[y, x]


def test_nondistributive_table_is_rejected():
    # Z3 addition with an associative multiplication that saturates at 2
    add = [[(x + y) % 3 for y in range(3)] for x in range(3)]
    mul = [[0, 0, 0], [0, 1, 2], [0, 2, 2]]
    with pytest.raises(ValidationError) as exc:
        FiniteSemiring(FinSet(3), add, mul, 0, 1, "bad")
    assert "distributivity" in exc.value.axiom
    assert len(exc.value.witness) == 3


def test_monoid_unit_law_is_checked():
    with pytest.raises(ValidationError):
        FiniteMonoid(FinSet(2), [[0, 0], [0, 0]], 0, "bad")


def test_s3_is_noncommutative_group():
    S3 = symmetric_group(3)
    assert S3.size == 6
    assert not S3.is_commutative()
    for x in range(6):
        assert any(S3.mul(x, y) == S3.unit for y in range(6))


def brute_monoid_count(n):
    count = 0
    for t in itertools.product(range(n), repeat=(n - 1) ** 2):
        op = [[x if y == 0 else y if x == 0 else t[(x - 1) * (n - 1) + (y - 1)] for y in range(n)] for x in range(n)]
        if all(op[op[x][y]][z] == op[x][op[y][z]] for x, y, z in itertools.product(range(n), repeat=3)):
            count += 1
    return count


@pytest.mark.parametrize("n", [1, 2, 3])
def test_enumerate_monoids_matches_brute_force(n):
    assert len(enumerate_monoids(n)) == brute_monoid_count(n)


def test_cyclic_monoid_is_commutative():
    assert cyclic_monoid(4).is_commutative()
