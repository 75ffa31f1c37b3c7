"""Functor expressions and componentwise families of maps.

A functor is a closed expression: ``Identity``, binary ``Product`` and
``Coproduct`` on ``FinSet^2``, ``MonadFunctor(T)``, ``Compose`` and
``Tuple``.  Objects of ``FinSet^n`` with ``n > 1`` are ProductSets; plain
FinSets are the objects of ``FinSet^1``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import ArityMismatch, NotInvertible, TypeMismatch
from .finset import (
    FinMap,
    FinSet,
    LazyMap,
    ProductMap,
    ProductSet,
    compose,
    coproduct_map,
    coproduct_set,
    maps_between,
    product_map,
    product_set,
    tabulate,
)
from .monads import MonadInstance, MonadMorphism, ProductMonad, compare, product_monad


class Functor:
    arity = 1  # source is FinSet^arity
    target_arity = 1

    def obj(self, X):
        raise NotImplementedError

    def fmap(self, f):
        raise NotImplementedError

    def describe(self) -> str:
        raise NotImplementedError

    def __repr__(self):
        return self.describe()

    def __eq__(self, other):
        return isinstance(other, Functor) and self.describe() == other.describe()

    def __hash__(self):
        return hash(self.describe())


def _check_arity(X, n):
    if n == 1:
        if not isinstance(X, FinSet):
            raise ArityMismatch("expected a plain finite set")
    elif not isinstance(X, ProductSet) or X.arity != n:
        raise ArityMismatch(f"expected an object of FinSet^{n}")


@dataclass(frozen=True, eq=False)
class Identity(Functor):
    n: int = 1

    @property
    def arity(self):
        return self.n

    @property
    def target_arity(self):
        return self.n

    def obj(self, X):
        return X

    def fmap(self, f):
        return f

    def describe(self):
        return "Id" if self.n == 1 else f"Id^{self.n}"


class Product(Functor):
    """``(A, B) -> A x B`` with a-major element order."""

    arity = 2

    def obj(self, X):
        _check_arity(X, 2)
        return product_set(X.parts[0], X.parts[1])

    def fmap(self, F):
        return product_map(F.parts[0], F.parts[1])

    def describe(self):
        return "product"


class Coproduct(Functor):
    """``(A, B) -> A + B`` with the A-block first."""

    arity = 2

    def obj(self, X):
        _check_arity(X, 2)
        return coproduct_set(X.parts[0], X.parts[1])

    def fmap(self, F):
        return coproduct_map(F.parts[0], F.parts[1])

    def describe(self):
        return "coproduct"


@dataclass(frozen=True, eq=False)
class MonadFunctor(Functor):
    monad: MonadInstance

    @property
    def arity(self):
        return self.monad.arity if isinstance(self.monad, ProductMonad) else 1

    @property
    def target_arity(self):
        return self.arity

    def obj(self, X):
        return self.monad.obj(X)

    def fmap(self, f):
        return self.monad.fmap_best(f)

    def describe(self):
        return self.monad.name


@dataclass(frozen=True, eq=False)
class Compose(Functor):
    """``outer . inner``."""

    outer: Functor
    inner: Functor

    def __post_init__(self):
        if self.inner.target_arity != self.outer.arity:
            raise ArityMismatch(f"cannot compose {self.outer.describe()} after {self.inner.describe()}")

    @property
    def arity(self):
        return self.inner.arity

    @property
    def target_arity(self):
        return self.outer.target_arity

    def obj(self, X):
        return self.outer.obj(self.inner.obj(X))

    def fmap(self, f):
        return self.outer.fmap(self.inner.fmap(f))

    def describe(self):
        return f"{self.outer.describe()}.{self.inner.describe()}"


@dataclass(frozen=True, eq=False)
class Tuple(Functor):
    """``X -> (F_1(X), ..., F_k(X))`` into ``FinSet^k``."""

    parts: tuple

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(self.parts))
        if len({p.arity for p in self.parts}) != 1 or any(p.target_arity != 1 for p in self.parts):
            raise ArityMismatch("tuple components must share a source and land in FinSet")

    @property
    def arity(self):
        return self.parts[0].arity

    @property
    def target_arity(self):
        return len(self.parts)

    def obj(self, X):
        return ProductSet(tuple(p.obj(X) for p in self.parts))

    def fmap(self, f):
        return ProductMap(tuple(p.fmap(f) for p in self.parts))

    def describe(self):
        return "<" + ",".join(p.describe() for p in self.parts) + ">"


def check_functor(F: Functor, objects) -> list:
    """Witnesses of failures of identity/composition preservation on the given objects."""
    from .finset import identity

    bad = []
    objects = list(objects)
    for X in objects:
        w = compare(tabulate(F.fmap(identity(X))), identity(F.obj(X)))
        if w:
            bad.append(("identity", w))
    for X, Y, Z in itertools.product(objects, repeat=3):
        for f in maps_between(X, Y):
            for g in maps_between(Y, Z):
                w = compare(tabulate(F.fmap(compose(g, f))), tabulate(compose(F.fmap(g), F.fmap(f))))
                if w:
                    bad.append(("composition", w))
    return bad


# ---------------------------------------------------------------------------
# families


def _key(X):
    if isinstance(X, ProductSet):
        return tuple(p.size for p in X.parts)
    return X.size


@dataclass(eq=False)
class NatFamily:
    """A family ``lambda_X : source(X) -> target(X)`` given componentwise.

    Naturality is not assumed; ask for it per morphism with
    :meth:`naturality_witness`.
    """

    source: Functor
    target: Functor
    component: Callable
    name: str = "lambda"
    _cache: dict = field(default_factory=dict, repr=False)

    def at(self, X):
        k = _key(X)
        hit = self._cache.get(k)
        if hit is None:
            hit = self.component(X)
            if hit.dom != self.source.obj(X) or hit.cod != self.target.obj(X):
                raise TypeMismatch(f"{self.name} at {k}: component has the wrong type")
            self._cache[k] = hit
        return hit

    def __call__(self, X):
        return self.at(X)

    def naturality_witness(self, f):
        """``None`` when ``target(f) . lambda_X == lambda_Y . source(f)``."""
        lhs = compose(self.target.fmap(f), self.at(f.dom))
        rhs = compose(self.at(f.cod), self.source.fmap(f))
        return compare(lhs, rhs)

    def patched(self, X, x, value) -> "NatFamily":
        """A copy whose component at ``X`` has one entry replaced."""
        k = _key(X)
        base = self

        def comp(Y):
            m = base.at(Y)
            if _key(Y) == k:
                return tabulate(m).with_entry(x, value)
            return m

        return NatFamily(self.source, self.target, comp, self.name + "[corrupted]")

    def inverse(self) -> "NatFamily":
        base = self

        def comp(X):
            m = tabulate(base.at(X))
            if not m.is_bijective():
                raise NotInvertible(f"{base.name} at {_key(X)} is not bijective", {"object": _key(X)})
            return m.inverse()

        return NatFamily(self.target, self.source, comp, self.name + "^-1")


def identity_family(F: Functor, name="id") -> NatFamily:
    from .finset import identity

    return NatFamily(F, F, lambda X: identity(F.obj(X)), name)


def law_shape(H: Functor, S: MonadInstance, T: MonadInstance):
    """Source and target functors ``H.S`` and ``T.H`` of a Kleisli law."""
    return Compose(H, MonadFunctor(S)), Compose(MonadFunctor(T), H)


def em_law_shape(G: Functor, S: MonadInstance, T: MonadInstance):
    """Source and target functors ``S.G`` and ``G.T`` of an Eilenberg-Moore law."""
    return Compose(MonadFunctor(S), G), Compose(G, MonadFunctor(T))


def dst_family(T: MonadInstance) -> NatFamily:
    """``dst`` as a law ``product . (T x T) => T . product``."""
    from .strength import dst

    src, tgt = law_shape(Product(), product_monad([T, T]), T)
    return NatFamily(src, tgt, lambda X: dst(T, X.parts[0], X.parts[1]), "dst")


def dst_prime_family(T: MonadInstance) -> NatFamily:
    from .strength import dst_prime

    src, tgt = law_shape(Product(), product_monad([T, T]), T)
    return NatFamily(src, tgt, lambda X: dst_prime(T, X.parts[0], X.parts[1]), "dst'")


def coproduct_law(T: MonadInstance) -> NatFamily:
    """``[T(k1), T(k2)] : T(A) + T(B) -> T(A + B)``."""
    from .finset import coproduct

    def comp(X):
        A, B = X.parts
        _, k1, k2, _ = coproduct(A, B)
        _, _, _, copair = coproduct(T.obj(A), T.obj(B))
        f = tabulate(T.fmap_best(k1))
        g = tabulate(T.fmap_best(k2))
        return copair(f, g)

    src, tgt = law_shape(Coproduct(), product_monad([T, T]), T)
    return NatFamily(src, tgt, comp, "[T(k1),T(k2)]")


def morphism_family(sigma: MonadMorphism) -> NatFamily:
    """A monad morphism as a law ``Id . S => T . Id`` (equally ``S . Id => Id . T``)."""
    src, tgt = law_shape(Identity(), sigma.source, sigma.target)
    return NatFamily(src, tgt, sigma.at, sigma.name)


def strength_family(S: MonadInstance, T: MonadInstance, M: FinSet) -> NatFamily:
    """``st_{M,X} : M x T(X) -> T(M x X)`` viewed as ``S.T => T.S`` for ``S(X) = M x X``.

    ``S`` must be a monad whose objects are ``M x X`` in a-major order, e.g.
    a writer monad over a monoid with carrier ``M``.
    """
    from .strength import st

    src = Compose(MonadFunctor(S), MonadFunctor(T))
    tgt = Compose(MonadFunctor(T), MonadFunctor(S))
    return NatFamily(src, tgt, lambda X: st(T, M, X), "st")
