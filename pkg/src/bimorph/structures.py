"""Finite semirings and monoids given by operation tables, plus fixtures."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .errors import ValidationError
from .finset import FinSet


def _table(rows, n, what):
    arr = np.asarray(rows, dtype=np.int64)
    if arr.shape != (n, n):
        raise ValidationError(what, f"table shape {arr.shape} != {(n, n)}")
    if n and (arr.min() < 0 or arr.max() >= n):
        raise ValidationError(what, "table entry outside the carrier")
    arr.setflags(write=False)
    return arr


def _first_nonassociative(op):
    n = op.shape[0]
    for x, y, z in itertools.product(range(n), repeat=3):
        if op[op[x, y], z] != op[x, op[y, z]]:
            return (x, y, z)
    return None


def _first_noncommuting(op):
    n = op.shape[0]
    for x, y in itertools.combinations(range(n), 2):
        if op[x, y] != op[y, x]:
            return (x, y)
    return None


@dataclass(frozen=True, eq=False)
class FiniteMonoid:
    carrier: FinSet
    op: np.ndarray
    unit: int
    name: str = "monoid"

    def __post_init__(self):
        object.__setattr__(self, "op", _table(self.op, self.carrier.size, self.name))
        self.validate()

    @property
    def size(self) -> int:
        return self.carrier.size

    def validate(self) -> None:
        n = self.size
        if not 0 <= self.unit < n:
            raise ValidationError(self.name, "unit is not an element")
        for x in range(n):
            if self.op[self.unit, x] != x or self.op[x, self.unit] != x:
                raise ValidationError(self.name, "unit law", (x,))
        w = _first_nonassociative(self.op)
        if w is not None:
            raise ValidationError(self.name, "associativity", w)

    def mul(self, x: int, y: int) -> int:
        return int(self.op[x, y])

    def is_commutative(self) -> bool:
        return _first_noncommuting(self.op) is None

    def noncommuting_pair(self):
        return _first_noncommuting(self.op)

    def label(self, x):
        return self.carrier.label(x)


@dataclass(frozen=True, eq=False)
class FiniteSemiring:
    carrier: FinSet
    add: np.ndarray
    mul: np.ndarray
    zero: int
    one: int
    name: str = "semiring"
    _lists: tuple = field(default=None, repr=False)

    def __post_init__(self):
        n = self.carrier.size
        object.__setattr__(self, "add", _table(self.add, n, self.name))
        object.__setattr__(self, "mul", _table(self.mul, n, self.name))
        self.validate()
        # python lists are much faster than numpy for scalar lookups
        object.__setattr__(self, "_lists", (self.add.tolist(), self.mul.tolist()))

    @property
    def size(self) -> int:
        return self.carrier.size

    @property
    def add_list(self):
        return self._lists[0]

    @property
    def mul_list(self):
        return self._lists[1]

    def validate(self) -> None:
        n, a, m, z, o = self.size, self.add, self.mul, self.zero, self.one
        if not (0 <= z < n and 0 <= o < n):
            raise ValidationError(self.name, "zero/one are not elements")
        w = _first_nonassociative(a)
        if w is not None:
            raise ValidationError(self.name, "additive associativity", w)
        w = _first_noncommuting(a)
        if w is not None:
            raise ValidationError(self.name, "additive commutativity", w)
        for x in range(n):
            if a[z, x] != x:
                raise ValidationError(self.name, "additive unit", (x,))
            if m[o, x] != x or m[x, o] != x:
                raise ValidationError(self.name, "multiplicative unit", (x,))
            if m[z, x] != z or m[x, z] != z:
                raise ValidationError(self.name, "zero annihilation", (x,))
        w = _first_nonassociative(m)
        if w is not None:
            raise ValidationError(self.name, "multiplicative associativity", w)
        for x, y, t in itertools.product(range(n), repeat=3):
            if m[x, a[y, t]] != a[m[x, y], m[x, t]]:
                raise ValidationError(self.name, "left distributivity", (x, y, t))
            if m[a[x, y], t] != a[m[x, t], m[y, t]]:
                raise ValidationError(self.name, "right distributivity", (x, y, t))

    def is_commutative(self) -> bool:
        return _first_noncommuting(self.mul) is None

    def noncommuting_pair(self):
        return _first_noncommuting(self.mul)

    def label(self, x):
        return self.carrier.label(x)


# ---------------------------------------------------------------------------
# fixtures


def boolean_semiring() -> FiniteSemiring:
    return FiniteSemiring(FinSet(2, labels=(0, 1)), [[0, 1], [1, 1]], [[0, 0], [0, 1]], 0, 1, "bool")


def f2() -> FiniteSemiring:
    return FiniteSemiring(FinSet(2, labels=(0, 1)), [[0, 1], [1, 0]], [[0, 0], [0, 1]], 0, 1, "f2")


def zmod(n: int, name=None) -> FiniteSemiring:
    add = [[(x + y) % n for y in range(n)] for x in range(n)]
    mul = [[(x * y) % n for y in range(n)] for x in range(n)]
    return FiniteSemiring(FinSet(n, labels=tuple(range(n))), add, mul, 0, 1 % n, name or f"z{n}")


def z4() -> FiniteSemiring:
    return zmod(4, "z4")


def upper_triangular_boolean() -> FiniteSemiring:
    """2x2 upper-triangular Boolean matrices ``[[a, b], [0, c]]``; non-commutative."""
    elems = list(itertools.product((0, 1), repeat=3))
    index = {e: i for i, e in enumerate(elems)}
    add = [[index[tuple(p | q for p, q in zip(x, y))] for y in elems] for x in elems]

    def matmul(x, y):
        a, b, c = x
        a2, b2, c2 = y
        return (a & a2, (a & b2) | (b & c2), c & c2)

    mul = [[index[matmul(x, y)] for y in elems] for x in elems]
    labels = tuple(f"[[{a},{b}],[0,{c}]]" for a, b, c in elems)
    return FiniteSemiring(FinSet(8, labels=labels), add, mul, index[(0, 0, 0)], index[(1, 0, 1)], "ut2bool")


def trivial_monoid() -> FiniteMonoid:
    return FiniteMonoid(FinSet(1, labels=("e",)), [[0]], 0, "trivial")


def cyclic_monoid(n: int) -> FiniteMonoid:
    return FiniteMonoid(FinSet(n, labels=tuple(range(n))), [[(x + y) % n for y in range(n)] for x in range(n)], 0, f"c{n}")


def _cycle_notation(perm) -> str:
    seen, cycles = set(), []
    for start in range(len(perm)):
        if start in seen or perm[start] == start:
            seen.add(start)
            continue
        cyc, x = [], start
        while x not in seen:
            seen.add(x)
            cyc.append(str(x + 1))
            x = perm[x]
        cycles.append("(" + "".join(cyc) + ")")
    return "".join(cycles) or "e"


def symmetric_group(n: int = 3) -> FiniteMonoid:
    """Permutations of ``n`` points; ``p*q`` applies ``q`` first."""
    perms = list(itertools.permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    op = [[index[tuple(p[q[i]] for i in range(n))] for q in perms] for p in perms]
    labels = tuple(_cycle_notation(p) for p in perms)
    return FiniteMonoid(FinSet(len(perms), labels=labels), op, index[tuple(range(n))], f"s{n}")


def enumerate_monoids(n: int) -> list[FiniteMonoid]:
    """All monoid structures on ``{0..n-1}`` with unit ``0``, by brute force."""
    if n == 0:
        return []
    if n == 1:
        return [FiniteMonoid(FinSet(1), [[0]], 0, "m1_0")]
    free = [(x, y) for x in range(1, n) for y in range(1, n)]
    count = n ** len(free)
    idx = np.arange(count, dtype=np.int64)
    tables = np.zeros((count, n * n), dtype=np.int64)
    for x in range(n):
        tables[:, x] = x
        tables[:, x * n] = x
    for pos in range(len(free) - 1, -1, -1):
        x, y = free[pos]
        tables[:, x * n + y] = idx % n
        idx //= n
    rows = np.arange(count)
    ok = np.ones(count, dtype=bool)
    for x, y, z in itertools.product(range(1, n), repeat=3):
        xy = tables[:, x * n + y]
        yz = tables[:, y * n + z]
        ok &= tables[rows, xy * n + z] == tables[rows, x * n + yz]
    out = []
    for k, t in enumerate(tables[ok]):
        out.append(FiniteMonoid(FinSet(n), t.reshape(n, n), 0, f"m{n}_{k}"))
    return out


SEMIRINGS = {
    "bool": boolean_semiring,
    "f2": f2,
    "z4": z4,
    "ut2bool": upper_triangular_boolean,
}

MONOIDS = {
    "trivial": trivial_monoid,
    "c2": lambda: cyclic_monoid(2),
    "c3": lambda: cyclic_monoid(3),
    "s3": lambda: symmetric_group(3),
}
