"""Finite sets, total maps between them, and finite powers of that category.

Elements of a :class:`FinSet` are the indices ``0 .. size-1``; labels are
display metadata and never take part in equality.  Objects of a finite
power of the category are :class:`ProductSet` tuples, whose "elements" are
``(component, index)`` pairs, so every pointwise comparison in the package
works uniformly on both kinds of object.
"""

from __future__ import annotations

import contextlib
import contextvars
import itertools
from dataclasses import dataclass, field
from typing import Any, Callable, Iterator, Sequence

import numpy as np

from .errors import DomainMismatch, SizeBudgetExceeded

DEFAULT_BUDGET = 10**6

_budget = contextvars.ContextVar("bimorph_budget", default=DEFAULT_BUDGET)

# int64 tables are used whenever every codomain index fits comfortably.
_INT_LIMIT = 2**62


def get_budget() -> int:
    return _budget.get()


def set_budget(n: int) -> None:
    if n < 1:
        raise ValueError("budget must be positive")
    _budget.set(int(n))


@contextlib.contextmanager
def budget_limit(n: int):
    """Temporarily run with a different enumeration budget."""
    token = _budget.set(int(n))
    try:
        yield
    finally:
        _budget.reset(token)


def check_budget(what: str, needed: int) -> None:
    limit = _budget.get()
    if needed > limit:
        raise SizeBudgetExceeded(what, needed, limit)


def within_budget(needed: int) -> bool:
    return needed <= _budget.get()


# ---------------------------------------------------------------------------
# objects


@dataclass(frozen=True, eq=False)
class FinSet:
    size: int
    labels: tuple | None = field(default=None, repr=False)
    labeler: Callable[[int], Any] | None = field(default=None, repr=False)

    def __post_init__(self):
        if self.size < 0:
            raise ValueError("negative size")
        if self.labels is not None:
            labels = tuple(self.labels)
            object.__setattr__(self, "labels", labels)
            if len(labels) != self.size:
                raise ValueError(f"{len(labels)} labels for a set of size {self.size}")
            if len(set(labels)) != len(labels):
                raise ValueError("labels must be pairwise distinct")

    def __eq__(self, other):
        return isinstance(other, FinSet) and self.size == other.size

    def __hash__(self):
        return hash(("FinSet", self.size))

    def label(self, i: int):
        if self.labels is not None:
            return self.labels[i]
        if self.labeler is not None:
            return self.labeler(i)
        return i

    def elements(self) -> range:
        check_budget("elements of a set", self.size)
        return range(self.size)

    def relabel(self, labels) -> "FinSet":
        return FinSet(self.size, labels=tuple(labels))


@dataclass(frozen=True)
class ProductSet:
    """An object of ``FinSet^n``."""

    parts: tuple

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(self.parts))

    @property
    def arity(self) -> int:
        return len(self.parts)

    @property
    def size(self) -> int:
        # number of (component, index) points; used only for budgeting
        return sum(p.size for p in self.parts)

    def __getitem__(self, i):
        return self.parts[i]

    def __iter__(self):
        return iter(self.parts)

    def label(self, point):
        i, x = point
        return (i, self.parts[i].label(x))

    def elements(self) -> Iterator[tuple[int, int]]:
        check_budget("elements of a product object", self.size)
        for i, p in enumerate(self.parts):
            for x in range(p.size):
                yield (i, x)


def point_set(n: int = 1) -> FinSet:
    return FinSet(n)


# ---------------------------------------------------------------------------
# maps


def _dtype_for(cod_size: int):
    return np.int64 if cod_size < _INT_LIMIT else object


class FinMap:
    """A tabulated total map ``dom -> cod``."""

    __slots__ = ("dom", "cod", "table")

    def __init__(self, dom: FinSet, cod: FinSet, table, check: bool = True):
        arr = np.asarray(table, dtype=_dtype_for(cod.size))
        if arr.ndim != 1:
            arr = arr.reshape(-1)
        if check:
            if arr.shape[0] != dom.size:
                raise DomainMismatch(f"table has {arr.shape[0]} entries for a domain of size {dom.size}")
            if arr.shape[0] and (min(arr) < 0 or max(arr) >= cod.size):
                raise DomainMismatch("table entry outside the codomain")
        arr.setflags(write=False)
        self.dom = dom
        self.cod = cod
        self.table = arr

    @classmethod
    def identity(cls, A: FinSet) -> "FinMap":
        check_budget("identity table", A.size)
        return cls(A, A, np.arange(A.size, dtype=np.int64), check=False)

    @classmethod
    def from_function(cls, dom: FinSet, cod: FinSet, fn: Callable[[int], int]) -> "FinMap":
        check_budget("tabulating a map", dom.size)
        return cls(dom, cod, [fn(x) for x in range(dom.size)])

    @classmethod
    def constant(cls, dom: FinSet, cod: FinSet, value: int) -> "FinMap":
        return cls(dom, cod, np.full(dom.size, value, dtype=np.int64))

    def __call__(self, x):
        return int(self.table[x])

    def __eq__(self, other):
        if not isinstance(other, FinMap):
            return NotImplemented
        return self.dom == other.dom and self.cod == other.cod and np.array_equal(self.table, other.table)

    def __hash__(self):
        return hash((self.dom.size, self.cod.size, self.table.tobytes() if self.table.dtype != object else tuple(self.table)))

    def __repr__(self):
        body = list(map(int, self.table[:12]))
        more = "..." if self.dom.size > 12 else ""
        return f"FinMap({self.dom.size}->{self.cod.size}, {body}{more})"

    def tolist(self) -> list[int]:
        return [int(v) for v in self.table]

    def then(self, other):
        return compose(other, self)

    def is_injective(self) -> bool:
        return len(set(self.tolist())) == self.dom.size

    def is_surjective(self) -> bool:
        return len(set(self.tolist())) == self.cod.size

    def is_bijective(self) -> bool:
        return self.dom.size == self.cod.size and self.is_injective()

    def inverse(self) -> "FinMap":
        if not self.is_bijective():
            raise DomainMismatch("map is not a bijection")
        inv = np.empty(self.dom.size, dtype=np.int64)
        inv[self.table.astype(np.int64)] = np.arange(self.dom.size)
        return FinMap(self.cod, self.dom, inv, check=False)

    def with_entry(self, x: int, value: int) -> "FinMap":
        """Copy with one table entry replaced (mutation fixtures)."""
        t = self.table.copy()
        t[x] = value
        return FinMap(self.dom, self.cod, t)


class LazyMap:
    """A map given by a function, evaluated pointwise on demand."""

    __slots__ = ("dom", "cod", "fn")

    def __init__(self, dom, cod, fn: Callable[[int], int]):
        self.dom = dom
        self.cod = cod
        self.fn = fn

    def __call__(self, x):
        return self.fn(x)

    def __repr__(self):
        return f"LazyMap({self.dom.size}->{self.cod.size})"

    def then(self, other):
        return compose(other, self)


@dataclass(frozen=True, eq=False)
class ProductMap:
    """A morphism of ``FinSet^n``: one map per component."""

    parts: tuple

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(self.parts))

    @property
    def dom(self) -> ProductSet:
        return ProductSet(tuple(p.dom for p in self.parts))

    @property
    def cod(self) -> ProductSet:
        return ProductSet(tuple(p.cod for p in self.parts))

    def __call__(self, point):
        i, x = point
        return (i, self.parts[i](x))

    def __getitem__(self, i):
        return self.parts[i]

    def __iter__(self):
        return iter(self.parts)

    def __eq__(self, other):
        if not isinstance(other, ProductMap) or len(other.parts) != len(self.parts):
            return NotImplemented
        return all(a == b for a, b in zip(self.parts, other.parts))

    def __hash__(self):
        return hash(self.parts)

    def __repr__(self):
        return f"ProductMap({', '.join(map(repr, self.parts))})"

    def then(self, other):
        return compose(other, self)


def identity(X):
    if isinstance(X, ProductSet):
        return ProductMap(tuple(FinMap.identity(p) for p in X.parts))
    return FinMap.identity(X)


def compose(g, f):
    """``g . f``; requires ``f.cod == g.dom``."""
    if isinstance(f, ProductMap) or isinstance(g, ProductMap):
        if not (isinstance(f, ProductMap) and isinstance(g, ProductMap)) or len(f.parts) != len(g.parts):
            raise DomainMismatch("cannot compose product and plain maps")
        return ProductMap(tuple(compose(gi, fi) for gi, fi in zip(g.parts, f.parts)))
    if f.cod != g.dom:
        raise DomainMismatch(f"codomain of size {f.cod.size} does not match domain of size {g.dom.size}")
    if isinstance(f, FinMap) and isinstance(g, FinMap):
        if g.table.dtype != object and f.table.dtype != object:
            return FinMap(f.dom, g.cod, g.table[f.table], check=False)
        return FinMap(f.dom, g.cod, [g(int(x)) for x in f.table], check=False)
    return LazyMap(f.dom, g.cod, lambda x: g(f(x)))


def compose_all(*maps):
    """``compose_all(h, g, f) == h . g . f``."""
    out = maps[-1]
    for m in reversed(maps[:-1]):
        out = compose(m, out)
    return out


def tabulate(m) -> FinMap | ProductMap:
    """Evaluate a lazy map (or product of lazy maps) into a table."""
    if isinstance(m, FinMap):
        return m
    if isinstance(m, ProductMap):
        return ProductMap(tuple(tabulate(p) for p in m.parts))
    return FinMap.from_function(m.dom, m.cod, m)


def elements(X):
    return X.elements()


def first_difference(f, g):
    """First domain point where ``f`` and ``g`` disagree, or ``None``.

    Raises :class:`SizeBudgetExceeded` when the shared domain is too large
    to scan.
    """
    if f.dom != g.dom or f.cod != g.cod:
        raise DomainMismatch("maps have different types")
    if isinstance(f, ProductMap):
        for i, (fi, gi) in enumerate(zip(f.parts, g.parts)):
            d = first_difference(fi, gi)
            if d is not None:
                return (i, d)
        return None
    if isinstance(f, FinMap) and isinstance(g, FinMap):
        bad = np.nonzero(f.table != g.table)[0]
        return int(bad[0]) if len(bad) else None
    for x in f.dom.elements():
        if f(x) != g(x):
            return x
    return None


def maps_equal(f, g) -> bool:
    return first_difference(f, g) is None


# ---------------------------------------------------------------------------
# products and coproducts


def pair_index(a: int, b: int, B: FinSet) -> int:
    return a * B.size + b


def product_set(A: FinSet, B: FinSet) -> FinSet:
    return FinSet(A.size * B.size, labeler=lambda i: (A.label(i // B.size), B.label(i % B.size)) if B.size else i)


def coproduct_set(A: FinSet, B: FinSet) -> FinSet:
    return FinSet(A.size + B.size, labeler=lambda i: ("inl", A.label(i)) if i < A.size else ("inr", B.label(i - A.size)))


def product(A: FinSet, B: FinSet):
    """Cartesian product with a-major order: ``(P, p1, p2, pair)``."""
    P = product_set(A, B)
    nb = B.size
    idx = np.arange(P.size, dtype=np.int64)
    p1 = FinMap(P, A, idx // nb if nb else idx, check=False)
    p2 = FinMap(P, B, idx % nb if nb else idx, check=False)

    def pair(f, g):
        if f.dom != g.dom or f.cod != A or g.cod != B:
            raise DomainMismatch("pairing needs maps X->A and X->B")
        return FinMap(f.dom, P, f.table.astype(np.int64) * nb + g.table.astype(np.int64), check=False)

    return P, p1, p2, pair


def coproduct(A: FinSet, B: FinSet):
    """Disjoint union with the A-block first: ``(S, k1, k2, copair)``."""
    S = coproduct_set(A, B)
    k1 = FinMap(A, S, np.arange(A.size, dtype=np.int64), check=False)
    k2 = FinMap(B, S, np.arange(A.size, A.size + B.size, dtype=np.int64), check=False)

    def copair(f, g):
        if f.dom != A or g.dom != B or f.cod != g.cod:
            raise DomainMismatch("copairing needs maps A->X and B->X")
        return FinMap(S, f.cod, np.concatenate([f.table, g.table]).astype(np.int64), check=False)

    return S, k1, k2, copair


def product_map(f, g):
    """``f x g : A x B -> A' x B'``."""
    P = product_set(f.dom, g.dom)
    Q = product_set(f.cod, g.cod)
    nb, nq = g.dom.size, g.cod.size
    if isinstance(f, FinMap) and isinstance(g, FinMap) and Q.size < _INT_LIMIT:
        t = (f.table.astype(np.int64)[:, None] * nq + g.table.astype(np.int64)[None, :]).reshape(-1)
        return FinMap(P, Q, t, check=False)
    return LazyMap(P, Q, lambda i: f(i // nb) * nq + g(i % nb))


def coproduct_map(f, g):
    """``f + g : A + B -> A' + B'``."""
    S = coproduct_set(f.dom, g.dom)
    R = coproduct_set(f.cod, g.cod)
    na, nc = f.dom.size, f.cod.size
    if isinstance(f, FinMap) and isinstance(g, FinMap):
        t = np.concatenate([f.table.astype(np.int64), g.table.astype(np.int64) + nc])
        return FinMap(S, R, t, check=False)
    return LazyMap(S, R, lambda i: f(i) if i < na else nc + g(i - na))


def swap(A: FinSet, B: FinSet) -> FinMap:
    """``A x B -> B x A``."""
    P = product_set(A, B)
    Q = product_set(B, A)
    nb = B.size
    idx = np.arange(P.size, dtype=np.int64)
    t = (idx % nb) * A.size + idx // nb if nb else idx
    return FinMap(P, Q, t, check=False)


# ---------------------------------------------------------------------------
# exhaustive enumeration


def count_maps(A: FinSet, B: FinSet) -> int:
    return B.size ** A.size


def all_map_tables(A: FinSet, B: FinSet) -> np.ndarray:
    """Every table ``A -> B`` as rows of an array, lexicographic order."""
    n = count_maps(A, B)
    check_budget(f"maps {A.size}->{B.size}", n)
    if A.size == 0:
        return np.zeros((1, 0), dtype=np.int64)
    idx = np.arange(n, dtype=np.int64)
    out = np.empty((n, A.size), dtype=np.int64)
    for pos in range(A.size - 1, -1, -1):
        out[:, pos] = idx % B.size
        idx //= B.size
    return out


def all_maps(A: FinSet, B: FinSet) -> Iterator[FinMap]:
    """Enumerate all ``|B|^|A|`` maps once each, in lexicographic table order."""
    check_budget(f"maps {A.size}->{B.size}", count_maps(A, B))
    for t in itertools.product(range(B.size), repeat=A.size):
        yield FinMap(A, B, np.array(t, dtype=np.int64), check=False)


def all_product_maps(X: ProductSet, Y: ProductSet) -> Iterator[ProductMap]:
    total = 1
    for a, b in zip(X.parts, Y.parts):
        total *= count_maps(a, b)
    check_budget("maps between product objects", total)
    for parts in itertools.product(*(list(all_maps(a, b)) for a, b in zip(X.parts, Y.parts))):
        yield ProductMap(parts)


def maps_between(X, Y):
    if isinstance(X, ProductSet):
        return all_product_maps(X, Y)
    return all_maps(X, Y)


def sets_up_to(n: int) -> list[FinSet]:
    return [FinSet(k) for k in range(n + 1)]


def product_objects(sizes: Sequence[int], arity: int = 2) -> list[ProductSet]:
    return [ProductSet(tuple(FinSet(s) for s in combo)) for combo in itertools.product(sizes, repeat=arity)]
