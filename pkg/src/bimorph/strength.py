"""Canonical strength, costrength and the two double strengths.

``st(a, t) = T(b -> (a, b))(t)``; the costrength is derived from it through
the symmetry of the cartesian product, never supplied separately.  The
double strengths are evaluated as the literal composites

    dst  = mu . T(st') . st        dst' = mu . T(st) . st'

element by element, so intermediate objects such as ``T(T(A) x B)`` are
never tabulated.
"""

from __future__ import annotations

import itertools
import weakref
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import SizeBudgetExceeded, TypeMismatch
from .finset import (
    FinMap,
    FinSet,
    LazyMap,
    ProductSet,
    check_budget,
    compose,
    compose_all,
    identity,
    product,
    product_map,
    product_set,
)
from .monads import MonadInstance, ProductMonad, compare
from .report import LawReport, Verdict


def _pairing(a: int, B: FinSet, P: FinSet) -> LazyMap:
    nb = B.size
    off = a * nb
    return LazyMap(B, P, lambda b: off + b)


def _canonical_st_elem(T: MonadInstance, A: FinSet, B: FinSet, a: int, t: int) -> int:
    return T.fmap_at(_pairing(a, B, product_set(A, B)), t)


@dataclass(eq=False)
class StrengthData:
    """Strength ``st : A x T(B) -> T(A x B)`` for a monad on FinSet."""

    monad: MonadInstance
    st_elem: Callable[[FinSet, FinSet, int, int], int] | None = None
    name: str = "st"
    canonical: bool = field(default=False, init=False)
    _tables: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if isinstance(self.monad, ProductMonad):
            raise TypeMismatch("strengths are defined here for monads on FinSet only")
        if self.st_elem is None:
            self.canonical = True
            T = self.monad
            self.st_elem = lambda A, B, a, t: _canonical_st_elem(T, A, B, a, t)

    # elementwise --------------------------------------------------------
    def st(self, A, B, a, t) -> int:
        return self.st_elem(A, B, a, t)

    def st_co(self, A, B, t, b) -> int:
        """``st'(t, b) = T(swap)(st(b, t))``."""
        T = self.monad
        s = self.st_elem(B, A, b, t)
        na = A.size
        nb = B.size
        sw = LazyMap(product_set(B, A), product_set(A, B), lambda i: (i % na) * nb + i // na)
        return T.fmap_at(sw, s)

    def dst_at(self, A, B, t, u) -> int:
        """``mu . T(st'_{A,B}) . st_{T(A),B}`` at ``(t, u)``."""
        T = self.monad
        TA = T.obj(A)
        x = self.st_elem(TA, B, t, u)  # in T(T(A) x B)
        nb = B.size
        st_co = LazyMap(product_set(TA, B), T.obj(product_set(A, B)), lambda i: self.st_co(A, B, i // nb, i % nb))
        return T.mult_at(product_set(A, B), T.fmap_at(st_co, x))

    def dst_prime_at(self, A, B, t, u) -> int:
        """``mu . T(st_{A,B}) . st'_{A,T(B)}`` at ``(t, u)``."""
        T = self.monad
        TB = T.obj(B)
        x = self.st_co(A, TB, t, u)  # in T(A x T(B))
        ntb = TB.size
        st = LazyMap(product_set(A, TB), T.obj(product_set(A, B)), lambda i: self.st_elem(A, B, i // ntb, i % ntb))
        return T.mult_at(product_set(A, B), T.fmap_at(st, x))

    # tables ---------------------------------------------------------------
    def _cached(self, key, build):
        hit = self._tables.get(key)
        if hit is None:
            hit = build()
            self._tables[key] = hit
        return hit

    def st_at(self, A: FinSet, B: FinSet) -> FinMap:
        T = self.monad
        TB = T.obj(B)
        dom = product_set(A, TB)
        cod = T.obj(product_set(A, B))
        check_budget("strength table", dom.size)

        def build():
            if self.canonical:
                P = product_set(A, B)
                parts = [T.fmap(FinMap(B, P, a * B.size + np.arange(B.size, dtype=np.int64), check=False)).table for a in range(A.size)]
                tab = np.concatenate(parts) if parts else np.zeros(0, dtype=np.int64)
                return FinMap(dom, cod, tab, check=False)
            ntb = TB.size
            return FinMap.from_function(dom, cod, lambda i: self.st_elem(A, B, i // ntb, i % ntb))

        return self._cached(("st", A.size, B.size), build)

    def st_co_at(self, A: FinSet, B: FinSet) -> FinMap:
        T = self.monad
        dom = product_set(T.obj(A), B)
        check_budget("costrength table", dom.size)
        nb = B.size
        return self._cached(
            ("st'", A.size, B.size),
            lambda: FinMap.from_function(dom, T.obj(product_set(A, B)), lambda i: self.st_co(A, B, i // nb, i % nb)),
        )

    def dst(self, A: FinSet, B: FinSet) -> FinMap:
        T = self.monad
        dom = product_set(T.obj(A), T.obj(B))
        check_budget("double strength table", dom.size)
        ntb = T.obj(B).size
        return self._cached(
            ("dst", A.size, B.size),
            lambda: FinMap.from_function(dom, T.obj(product_set(A, B)), lambda i: self.dst_at(A, B, i // ntb, i % ntb)),
        )

    def dst_prime(self, A: FinSet, B: FinSet) -> FinMap:
        T = self.monad
        dom = product_set(T.obj(A), T.obj(B))
        check_budget("double strength table", dom.size)
        ntb = T.obj(B).size
        return self._cached(
            ("dst'", A.size, B.size),
            lambda: FinMap.from_function(dom, T.obj(product_set(A, B)), lambda i: self.dst_prime_at(A, B, i // ntb, i % ntb)),
        )

    def patched(self, A: FinSet, B: FinSet, a: int, t: int, value: int) -> "StrengthData":
        """A copy whose ``st_{A,B}`` has the entry at ``(a, t)`` replaced."""
        base = self.st_elem

        def elem(A2, B2, a2, t2):
            if A2 == A and B2 == B and a2 == a and t2 == t:
                return value
            return base(A2, B2, a2, t2)

        return StrengthData(self.monad, elem, self.name + "[corrupted]")


_STRENGTHS: "weakref.WeakKeyDictionary[MonadInstance, StrengthData]" = weakref.WeakKeyDictionary()


def canonical_strength(T: MonadInstance) -> StrengthData:
    """The strength every monad on FinSet carries: ``st(a, t) = T(b -> (a,b))(t)``."""
    s = _STRENGTHS.get(T)
    if s is None:
        s = StrengthData(T)
        _STRENGTHS[T] = s
    return s


def _as_strength(T) -> StrengthData:
    return T if isinstance(T, StrengthData) else canonical_strength(T)


def st(T, A, B) -> FinMap:
    return _as_strength(T).st_at(A, B)


def st_prime(T, A, B) -> FinMap:
    return _as_strength(T).st_co_at(A, B)


def dst(T, A: FinSet, B: FinSet) -> FinMap:
    """``dst : T(A) x T(B) -> T(A x B)``."""
    return _as_strength(T).dst(A, B)


def dst_prime(T, A: FinSet, B: FinSet) -> FinMap:
    """``dst' : T(A) x T(B) -> T(A x B)``."""
    return _as_strength(T).dst_prime(A, B)


def check_strength_axioms(T, test_sets) -> LawReport:
    """Unit-object and associativity diagrams plus eta/mu compatibility."""
    S = _as_strength(T)
    M = S.monad
    sets = list(test_sets)
    rep = LawReport(f"strength axioms for {M.name}")
    one = FinSet(1)
    for B in sets:
        scope = {"B": B.size}

        def unit_obj(B=B):
            _, _, p2, _ = product(one, M.obj(B))
            _, _, q2, _ = product(one, B)
            return compare(compose(M.fmap(q2), S.st_at(one, B)), p2)

        rep.run("unit-object", unit_obj, "T(pi2) . st_{1,B} = pi2", scope)
    for A, B in itertools.product(sets, repeat=2):
        scope = {"A": A.size, "B": B.size}
        rep.run(
            "eta",
            lambda A=A, B=B: compare(compose(S.st_at(A, B), product_map(identity(A), M.unit(B))), M.unit(product_set(A, B))),
            "st . (A x eta) = eta",
            scope,
        )

        def mu(A=A, B=B):
            lhs = compose(S.st_at(A, B), product_map(identity(A), M.mult(B)))
            rhs = compose_all(M.mult(product_set(A, B)), M.fmap(S.st_at(A, B)), S.st_at(A, M.obj(B)))
            return compare(lhs, rhs)

        rep.run("mu", mu, "st . (A x mu) = mu . T(st) . st", scope)
    for A, B, C in itertools.product(sets, repeat=3):
        scope = {"A": A.size, "B": B.size, "C": C.size}

        def assoc(A=A, B=B, C=C):
            # the associators (A x B) x X = A x (B x X) are identities on indices
            lhs = S.st_at(product_set(A, B), C)
            rhs = compose(S.st_at(A, product_set(B, C)), product_map(identity(A), S.st_at(B, C)))
            return compare(lhs, rhs)

        rep.run("associativity", assoc, "st_{AxB,C} = st_{A,BxC} . (A x st_{B,C})", scope)
    return rep


def is_commutative(T, test_sets) -> Verdict:
    """``dst == dst'`` on every pair of test sets; a witness pair otherwise."""
    S = _as_strength(T)
    M = S.monad
    sets = list(test_sets)
    checked, skipped = [], []
    for A, B in itertools.product(sets, repeat=2):
        try:
            d, d2 = S.dst(A, B), S.dst_prime(A, B)
        except SizeBudgetExceeded:
            skipped.append([A.size, B.size])
            continue
        bad = np.nonzero(d.table != d2.table)[0]
        if len(bad):
            i = int(bad[0])
            ntb = M.obj(B).size
            t, u = divmod(i, ntb)
            cod = d.cod
            witness = {
                "A": A.size,
                "B": B.size,
                "left": M.obj(A).label(t),
                "right": M.obj(B).label(u),
                "dst": cod.label(d(i)),
                "dst_prime": cod.label(d2(i)),
            }
            return Verdict(False, witness, {"checked": checked + [[A.size, B.size]], "skipped": skipped})
        checked.append([A.size, B.size])
    return Verdict(True, None, {"checked": checked, "skipped": skipped})
