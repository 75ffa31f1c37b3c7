import itertools

import numpy as np
import pytest

from bimorph.algebras import (
    brute_force_algebras,
    check_algebra,
    check_coequalizer,
    coequalize,
    congruence_closure,
    enumerate_algebras,
    find_isomorphism,
    free_algebra,
    isomorphism_classes,
    make_algebra,
    morphism_tables,
    product_algebra,
    quotient_algebra,
    semimodule_algebras,
)
from bimorph.errors import NotAnAlgebra
from bimorph.finset import FinMap, FinSet, all_map_tables
from bimorph.monads import maybe_monad


def brute_morphisms(a, b):
    return sorted(
        tuple(t)
        for t in all_map_tables(a.carrier, b.carrier).tolist()
        if all(t[a(x)] == b(a.monad.fmap(FinMap(a.carrier, b.carrier, t, check=False))(x)) for x in range(a.monad.obj(a.carrier).size))
    )


# the structure search needs T(T(n)) tabulated, which caps n
@pytest.mark.parametrize("which,n", [(w, n) for w in ("MBool", "MF2", "MZ4") for n in range(4) if not (w == "MZ4" and n >= 2)])
def test_monoid_route_matches_structure_search(request, which, n):
    T = request.getfixturevalue(which)
    fast = {tuple(a.structure.table.tolist()) for a in semimodule_algebras(T, n)}
    slow = {tuple(a.structure.table.tolist()) for a in brute_force_algebras(T, n)}
    assert fast == slow


def test_f2_algebras_are_labelled_vector_spaces(MF2):
    # 4 points: 4! / |GL(2, F2)| = 24 / 6
    assert [len(enumerate_algebras(MF2, n)) for n in range(5)] == [0, 1, 2, 0, 4]


def test_bool_algebras_are_labelled_semilattices(MBool):
    # with bottom and at most 3 points every join-semilattice is a chain: n! labellings
    assert [len(enumerate_algebras(MBool, n)) for n in range(4)] == [0, 1, 2, 6]


def test_maybe_algebras_are_pointed_sets():
    T = maybe_monad()
    for n in range(4):
        algs = enumerate_algebras(T, n)
        assert len(algs) == n
        assert sorted(int(a.structure.table[n]) for a in algs) == list(range(n))


def test_writer_algebras_are_actions(WS3):
    # S3 acts on 2 points through the trivial map or the sign
    assert len(enumerate_algebras(WS3, 2)) == 2


@pytest.mark.parametrize("which", ["MBool", "MF2"])
def test_morphism_tables_match_brute_force(request, which):
    T = request.getfixturevalue(which)
    algs = [a for n in range(1, 4) for a in enumerate_algebras(T, n)] + [free_algebra(T, FinSet(1))]
    for a, b in itertools.product(algs[:8], repeat=2):
        assert sorted(map(tuple, morphism_tables(a, b).tolist())) == brute_morphisms(a, b)


def test_free_algebra_morphisms_are_maps_on_generators(MBool):
    F = free_algebra(MBool, FinSet(2))
    for b in enumerate_algebras(MBool, 3):
        assert len(morphism_tables(F, b)) == 3**2


def test_free_algebra_axioms(MF2, WS3):
    for T in (MF2, WS3):
        F = free_algebra(T, FinSet(1))
        assert check_algebra(T, F.carrier, F.structure).ok


def test_make_algebra_rejects_bad_structure(MF2):
    C = FinSet(2)
    with pytest.raises(NotAnAlgebra):
        make_algebra(MF2, C, [0, 0, 1, 1])


def test_congruence_methods_agree(MBool):
    F = free_algebra(MBool, FinSet(2))
    for pairs in ([(1, 2)], [(0, 3)], [(1, 3)], []):
        a = congruence_closure(F, pairs, "exact").partition.labels()
        b = congruence_closure(F, pairs, "operations").partition.labels()
        assert a.tolist() == b.tolist()


def test_congruence_closes_under_join(MBool):
    # identifying {a} with {} forces {a,b} ~ {b}
    F = free_algebra(MBool, FinSet(2))
    bot, a, b, ab = (MBool.encode(v) for v in ([0, 0], [1, 0], [0, 1], [1, 1]))
    part = congruence_closure(F, [(a, bot)]).partition
    assert part.same(ab, b)
    assert not part.same(b, bot)


def test_coequalizer_universal_property(MBool):
    A = free_algebra(MBool, FinSet(1))
    B = free_algebra(MBool, FinSet(2))
    tabs = morphism_tables(A, B)
    f = FinMap(A.carrier, B.carrier, tabs[1], check=False)
    g = FinMap(A.carrier, B.carrier, tabs[2], check=False)
    quo = coequalize(f, g, A, B)
    targets = [a for n in range(1, 4) for a in enumerate_algebras(MBool, n)]
    rep = check_coequalizer(quo, f, g, A, B, targets)
    assert rep.ok, rep.first_failure()


def test_quotient_by_trivial_congruence_is_iso(MF2):
    F = free_algebra(MF2, FinSet(2))
    quo = quotient_algebra(F, congruence_closure(F, []))
    assert quo.algebra.size == F.size
    assert find_isomorphism(quo.algebra, F) is not None


def test_isomorphism_classes_of_semilattices(MBool):
    reps = isomorphism_classes([a for n in range(1, 5) for a in enumerate_algebras(MBool, n)])
    # bounded lattices: one each on 1, 2, 3 points and two on 4 points
    assert [r.size for r in reps] == [1, 2, 3, 4, 4]


def test_product_algebra_of_free_is_free(MF2):
    P = product_algebra([free_algebra(MF2, FinSet(1)), free_algebra(MF2, FinSet(2))])
    assert [p.size for p in P.free_on.parts] == [1, 2]
    assert [p.size for p in P.carrier.parts] == [2, 4]


def _join_irreducibles(alg):
    T = alg.monad
    n = alg.size

    def join(xs):
        return alg.structure(T.encode([1 if i in xs else 0 for i in range(n)]))

    below = [[y for y in range(n) if join({x, y}) == x and y != x] for x in range(n)]
    return [x for x in range(n) if x != join(set()) and join(set(below[x])) != x]


def test_presentations_shrink_to_join_irreducibles(MBool):
    for alg in enumerate_algebras(MBool, 4):
        G, q = alg.generators()
        assert G.size == len(_join_irreducibles(alg))
        assert set(q.table.tolist()) == set(range(alg.size))


def test_coproduct_morphisms_match_brute_force(MBool):
    from bimorph.classify import coproduct_lift

    a, b = enumerate_algebras(MBool, 2)[0], enumerate_algebras(MBool, 3)[0]
    co = coproduct_lift(a, b).result
    for gamma in enumerate_algebras(MBool, 3):
        assert sorted(map(tuple, morphism_tables(co, gamma).tolist())) == brute_morphisms(co, gamma)
