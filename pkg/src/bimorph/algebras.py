"""Eilenberg-Moore algebras, their morphisms, and coequalizers by congruence generation.

Every algebra carries a *presentation*: a set of generators ``G`` and a
surjective algebra morphism ``q : (T(G), mu) -> (C, alpha)``.  A free
algebra is presented by itself, a quotient by its quotient map, and any
other algebra by its own structure map.  Algebra morphisms out of a
presented algebra are then enumerated generator-first, which keeps the
search at ``|target|^|G|`` instead of ``|target|^|C|``.  Algebras given
only by a structure map are presented by a greedily chosen generating
subset of the carrier, and every presentation is shrunk to an irredundant
set of generators when ``T(G)`` fits the budget.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable

import numpy as np

from .errors import CarrierMismatch, MonadMismatch, NotAMorphism, SizeBudgetExceeded, TypeMismatch
from .finset import (
    FinMap,
    FinSet,
    ProductMap,
    ProductSet,
    all_map_tables,
    check_budget,
    compose,
    first_difference,
    identity,
    tabulate,
    within_budget,
)
from .monads import MonadInstance, ProductMonad, SemimoduleMonad, compare, product_monad
from .report import LawReport, Verdict


@dataclass(frozen=True, eq=False)
class Algebra:
    """An Eilenberg-Moore algebra ``(carrier, structure : T(carrier) -> carrier)``."""

    monad: MonadInstance
    carrier: FinSet
    structure: object
    name: str = "alg"
    free_on: object = None
    presentation: tuple | None = field(default=None, repr=False)

    def __post_init__(self):
        if self.structure.dom != self.monad.obj(self.carrier) or self.structure.cod != self.carrier:
            raise TypeMismatch(f"{self.name}: structure map must go T(carrier) -> carrier")

    @property
    def size(self) -> int:
        return self.carrier.size

    def __call__(self, t):
        return self.structure(t)

    def generators(self):
        """``(G, q)`` with ``q : T(G) -> carrier`` a surjective algebra morphism from the free algebra."""
        if self.free_on is not None:
            return self.free_on, identity(self.carrier)
        hit = self.__dict__.get("_generated")
        if hit is None:
            base = self.presentation or (self.carrier, self.structure)
            hit = _irredundant(self, *base) or base
            object.__setattr__(self, "_generated", hit)
        return hit

    def with_name(self, name: str) -> "Algebra":
        return Algebra(self.monad, self.carrier, self.structure, name, self.free_on, self.presentation)

    def __repr__(self):
        return f"Algebra({self.name}, {self.monad.name}, size={_size_repr(self.carrier)})"


def _irredundant(alg: Algebra, G, q):
    """Shrink a presentation ``q : T(G) -> carrier`` to an irredundant subset of ``G``.

    ``q . T(incl)`` stays an algebra morphism for any subset, and is a
    presentation whenever it is still surjective.  ``None`` when ``q`` is
    lazy or ``T(G)`` is over the budget.
    """
    T = alg.monad
    if isinstance(T, ProductMonad) or not isinstance(q, FinMap) or not within_budget(T.obj(G).size):
        return None
    n = alg.size

    def generates(chosen):
        S = FinSet(len(chosen))
        incl = FinMap(S, G, np.array(chosen, dtype=np.int64).reshape(-1), check=False)
        r = tabulate(compose(q, T.fmap_best(incl)))
        return (S, r) if len(np.unique(r.table)) == n else None

    chosen, best = list(range(G.size)), (G, q)
    for x in reversed(range(G.size)):
        rest = [y for y in chosen if y != x]
        smaller = generates(rest)
        if smaller is not None:
            chosen, best = rest, smaller
    return best


def _size_repr(X):
    return [p.size for p in X.parts] if isinstance(X, ProductSet) else X.size


# ---------------------------------------------------------------------------
# axioms and morphisms


def check_algebra(T: MonadInstance, carrier, alpha) -> LawReport:
    """The two Eilenberg-Moore axioms as a report (mult axiom skipped over budget)."""
    rep = LawReport(f"algebra axioms on {_size_repr(carrier)} for {T.name}")
    rep.run("unit", lambda: compare(compose(alpha, T.unit(carrier)), identity(carrier)), "alpha . eta = id", {"carrier": _size_repr(carrier)})

    def mult():
        lhs = compose(alpha, T.mult(carrier))
        rhs = compose(alpha, T.fmap(alpha))
        return compare(lhs, rhs)

    rep.run("multiplication", mult, "alpha . mu = alpha . T(alpha)", {"carrier": _size_repr(carrier)})
    return rep


def is_algebra(T: MonadInstance, carrier, alpha) -> Verdict:
    """Both EM axioms.  ``holds`` is ``None`` when the multiplication axiom did not fit the budget."""
    rep = check_algebra(T, carrier, alpha)
    f = rep.first_failure()
    if f is not None:
        return Verdict(False, {"axiom": f.name, **f.witness}, reason=f"{f.name} axiom fails")
    if rep.skipped:
        return Verdict(None, None, scope=rep.skipped[0].scope, reason="multiplication axiom over budget")
    return Verdict(True, None, scope={"carrier": _size_repr(carrier)})


def make_algebra(T, carrier, structure, name="alg", check=True) -> Algebra:
    if not isinstance(structure, (FinMap, ProductMap)):
        structure = FinMap(T.obj(carrier), carrier, structure)
    alg = Algebra(T, carrier, structure, name)
    if check:
        v = is_algebra(T, carrier, structure)
        if v.holds is False:
            from .errors import NotAnAlgebra

            raise NotAnAlgebra(f"{name}: {v.reason}", v.witness)
    return alg


def free_algebra(T: MonadInstance, A) -> Algebra:
    """``(T(A), mu_A)``; the multiplication is tabulated when it fits, lazy otherwise."""
    TA = T.obj(A)
    return Algebra(T, TA, T.mult_best(A), f"free({_size_repr(A)})", free_on=A)


def product_algebra(algs) -> Algebra:
    """An algebra for the product monad from one algebra per component."""
    algs = tuple(algs)
    P = product_monad([a.monad for a in algs])
    free = ProductSet(tuple(a.free_on for a in algs)) if all(a.free_on is not None for a in algs) else None
    name = "(" + ",".join(a.name for a in algs) + ")"
    return Algebra(P, ProductSet(tuple(a.carrier for a in algs)), ProductMap(tuple(a.structure for a in algs)), name, free_on=free)


def _same_monad(a: Algebra, b: Algebra):
    if a.monad != b.monad:
        raise MonadMismatch(f"{a.name} is over {a.monad.name}, {b.name} over {b.monad.name}")


def morphism_witness(h, alpha: Algebra, beta: Algebra):
    """``None`` if ``h . alpha = beta . T(h)``, else the first offending element."""
    _same_monad(alpha, beta)
    if h.dom != alpha.carrier or h.cod != beta.carrier:
        raise TypeMismatch("h must go carrier(alpha) -> carrier(beta)")
    T = alpha.monad
    if isinstance(h, FinMap) and isinstance(alpha.structure, FinMap) and not isinstance(T, ProductMonad):
        n = T.obj(alpha.carrier).size
        check_budget("algebra morphism check", n)
        lhs = h.table[alpha.structure.table.astype(np.int64)]
        rhs = T.evaluate(beta, h.table[None, :], np.arange(n, dtype=np.int64))
        bad = np.nonzero(lhs != rhs)[0]
        if len(bad):
            t = int(bad[0])
            return {"element": t, "label": T.obj(alpha.carrier).label(t), "lhs": int(lhs[t]), "rhs": int(rhs[t])}
        return None
    return compare(compose(h, alpha.structure), compose(beta.structure, T.fmap(h)))


def is_algebra_morphism(h, alpha: Algebra, beta: Algebra) -> bool:
    return morphism_witness(h, alpha, beta) is None


def enumerate_algebra_morphisms(alpha: Algebra, beta: Algebra) -> list[FinMap]:
    """All algebra morphisms ``alpha -> beta`` in lexicographic table order."""
    return [FinMap(alpha.carrier, beta.carrier, t, check=False) for t in morphism_tables(alpha, beta)]


def count_algebra_morphisms(alpha: Algebra, beta: Algebra) -> int:
    return len(morphism_tables(alpha, beta))


def morphism_tables(alpha: Algebra, beta: Algebra) -> np.ndarray:
    """Tables of every morphism, found by extending maps on generators."""
    _same_monad(alpha, beta)
    T = alpha.monad
    G, q = alpha.generators()
    q = q if isinstance(q, FinMap) else None
    if q is None or isinstance(T, ProductMonad):
        check_budget(f"maps {alpha.size}->{beta.size}", beta.size**alpha.size)
        tabs = all_map_tables(alpha.carrier, beta.carrier)
        keep = [t for t in tabs if is_algebra_morphism(FinMap(alpha.carrier, beta.carrier, t, check=False), alpha, beta)]
        return np.array(keep, dtype=np.int64).reshape(len(keep), alpha.size)
    TG = T.obj(G)
    check_budget("free extensions", TG.size)
    qt = q.table.astype(np.int64)
    # least preimage of each carrier element under q
    section = np.full(alpha.size, -1, dtype=np.int64)
    for t in range(TG.size - 1, -1, -1):
        section[qt[t]] = t
    if (section < 0).any():
        raise NotAMorphism(f"{alpha.name}: presentation map is not surjective")
    gens = all_map_tables(G, beta.carrier)
    found = []
    ts = np.arange(TG.size, dtype=np.int64)
    step = max(1, (1 << 22) // max(1, TG.size))
    for lo in range(0, len(gens), step):
        g = gens[lo : lo + step]
        k = len(g)
        ext = T.evaluate(beta, np.repeat(g, TG.size, axis=0), np.tile(ts, k)).reshape(k, TG.size)
        h = ext[:, section]
        ok = (h[:, qt] == ext).all(axis=1)
        found.append(h[ok])
    tabs = np.unique(np.concatenate(found), axis=0) if found else np.zeros((0, alpha.size), dtype=np.int64)
    return tabs.reshape(len(tabs), alpha.size)


# ---------------------------------------------------------------------------
# partitions


class Partition:
    """Union-find over ``0..n-1`` whose class representatives are least indices."""

    def __init__(self, n: int):
        self.n = n
        self.parent = list(range(n))
        self.merges = 0

    def find(self, x: int) -> int:
        p = self.parent
        root = x
        while p[root] != root:
            root = p[root]
        while p[x] != root:
            p[x], x = root, p[x]
        return root

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if rb < ra:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.merges += 1
        return True

    def same(self, a: int, b: int) -> bool:
        return self.find(a) == self.find(b)

    def roots(self) -> np.ndarray:
        return np.array([self.find(x) for x in range(self.n)], dtype=np.int64)

    def labels(self) -> np.ndarray:
        """Class index of each element; classes are numbered by least member."""
        roots = self.roots()
        reps = np.unique(roots)
        out = np.searchsorted(reps, roots)
        return out

    def num_classes(self) -> int:
        return len(np.unique(self.roots())) if self.n else 0

    def representatives(self) -> np.ndarray:
        return np.unique(self.roots())

    def classes(self) -> list[list[int]]:
        out: dict[int, list[int]] = {}
        for x in range(self.n):
            out.setdefault(self.find(x), []).append(x)
        return [out[r] for r in sorted(out)]

    def merge_groups(self, keys: np.ndarray, values: np.ndarray) -> int:
        """Merge ``values`` that share a key; returns the number of new merges."""
        if len(keys) < 2:
            return 0
        roots = self.roots()
        order = np.lexsort((roots[values], keys))
        k, v = keys[order], roots[values[order]]
        same = (k[1:] == k[:-1]) & (v[1:] != v[:-1])
        a, b = v[:-1][same], v[1:][same]
        if not len(a):
            return 0
        pairs = np.unique(np.stack([a, b], axis=1), axis=0)
        before = self.merges
        for x, y in pairs.tolist():
            self.union(x, y)
        return self.merges - before


# ---------------------------------------------------------------------------
# congruences and quotients


@dataclass
class Congruence:
    partition: Partition
    method: str
    iterations: int
    merges: int


def _exact_round(beta: Algebra, part: Partition, beta_table: np.ndarray) -> int:
    T = beta.monad
    labels = part.labels()
    Q = FinSet(int(labels.max()) + 1 if len(labels) else 0)
    Tq = T.fmap(FinMap(beta.carrier, Q, labels, check=False)).table
    return part.merge_groups(Tq.astype(np.int64), beta_table)


def _operation_tables(beta: Algebra, k: int):
    """``op_t(x) = beta(T(x)(t))`` on all of ``C^k`` for every ``t`` in ``T(k)``."""
    T = beta.monad
    n = beta.size
    check_budget("operation tables", n**k)
    X = all_map_tables(FinSet(k), beta.carrier)
    Tk = T.obj(FinSet(k))
    check_budget("operation tables", Tk.size * n**k)
    return X, [T.evaluate(beta, X, np.full(len(X), t, dtype=np.int64)) for t in range(Tk.size)]


def congruence_closure(beta: Algebra, pairs: Iterable, method: str = "auto") -> Congruence:
    """Least T-congruence on ``beta`` containing ``pairs``.

    ``exact`` groups ``T(carrier)`` by ``T(q_E)`` each round.  ``operations``
    uses the derived operations of the monad's declared arity instead, which
    never tabulates ``T(carrier)``.  ``auto`` prefers ``exact``.
    """
    T = beta.monad
    if isinstance(T, ProductMonad):
        raise TypeMismatch("congruences are computed for monads on FinSet")
    part = Partition(beta.size)
    for a, b in pairs:
        part.union(int(a), int(b))
    if method == "auto":
        if within_budget(T.obj(beta.carrier).size) and isinstance(beta.structure, FinMap):
            method = "exact"
        elif T.congruence_arity is not None:
            method = "operations"
        else:
            raise SizeBudgetExceeded("congruence closure over T(carrier)", T.obj(beta.carrier).size, _budget())
    rounds = 0
    if method == "exact":
        check_budget("congruence closure over T(carrier)", T.obj(beta.carrier).size)
        table = tabulate_structure(beta)
        while True:
            rounds += 1
            if not _exact_round(beta, part, table):
                break
    elif method == "operations":
        k = T.congruence_arity
        if k is None:
            raise TypeMismatch(f"{T.name} declares no operation arity")
        X, ops = _operation_tables(beta, k)
        n = beta.size
        while True:
            rounds += 1
            labels = part.labels()
            key = np.zeros(len(X), dtype=np.int64)
            for j in range(k):
                key = key * n + labels[X[:, j]]
            merged = 0
            for op in ops:
                merged += part.merge_groups(key, op)
            if not merged:
                break
    else:
        raise ValueError(f"unknown congruence method {method!r}")
    return Congruence(part, method, rounds, part.merges)


def _budget():
    from .finset import get_budget

    return get_budget()


def tabulate_structure(alg: Algebra) -> np.ndarray:
    s = alg.structure
    if isinstance(s, FinMap):
        return s.table.astype(np.int64)
    check_budget("structure table", s.dom.size)
    return np.array([s(t) for t in range(s.dom.size)], dtype=np.int64)


@dataclass
class Quotient:
    algebra: Algebra
    q: FinMap
    section: np.ndarray
    congruence: Congruence
    metadata: dict = field(default_factory=dict)


def quotient_algebra(beta: Algebra, cong: Congruence, name: str = "quotient") -> Quotient:
    """``carrier/E`` with ``omega([t]) = q(beta(T(s)(t)))`` for the least-representative section ``s``."""
    T = beta.monad
    labels = cong.partition.labels()
    nq = int(labels.max()) + 1 if len(labels) else 0
    Q = FinSet(nq)
    q = FinMap(beta.carrier, Q, labels, check=False)
    least = np.full(nq, -1, dtype=np.int64)
    greatest = np.full(nq, -1, dtype=np.int64)
    for x in range(beta.size - 1, -1, -1):
        least[labels[x]] = x
    for x in range(beta.size):
        greatest[labels[x]] = x
    TQ = T.obj(Q)
    check_budget("quotient structure", TQ.size)
    ts = np.arange(TQ.size, dtype=np.int64)
    omega = labels[T.evaluate(beta, least[None, :], ts)]
    other = labels[T.evaluate(beta, greatest[None, :], ts)]
    bad = np.nonzero(omega != other)[0]
    if len(bad):
        raise AssertionError(f"quotient structure depends on the section at {int(bad[0])}: not a congruence")
    alg = Algebra(T, Q, FinMap(TQ, Q, omega, check=False), name)
    if beta.generators() is not None:
        G, p = beta.generators()
        if isinstance(p, FinMap):
            alg = Algebra(T, Q, alg.structure, name, presentation=(G, compose(q, p)))
    return Quotient(alg, q, least, cong)


def coequalize(f, g, alpha: Algebra, beta: Algebra, method: str = "auto", check: bool = True) -> Quotient:
    """Coequalizer of two algebra morphisms ``f, g : alpha -> beta``."""
    _same_monad(alpha, beta)
    if check:
        for name, m in (("f", f), ("g", g)):
            w = morphism_witness(m, alpha, beta)
            if w is not None:
                raise NotAMorphism(f"{name} is not an algebra morphism", w)
    T = alpha.monad
    if alpha.free_on is not None:
        # generators suffice: a congruence containing the generator pairs contains all pairs
        gens = [T.unit_at(alpha.free_on, a) for a in range(alpha.free_on.size)]
    else:
        gens = range(alpha.size)
    pairs = [(f(x), g(x)) for x in gens]
    cong = congruence_closure(beta, pairs, method)
    quo = quotient_algebra(beta, cong, "coequalizer")
    hit = np.zeros(beta.size, dtype=bool)
    ft, gt = np.asarray([f(x) for x in range(alpha.size)]), np.asarray([g(x) for x in range(alpha.size)])
    hit[ft[ft == gt]] = True
    quo.metadata["reflexive_on_carriers"] = bool(hit.all())
    return quo


def check_coequalizer(quo: Quotient, f, g, alpha: Algebra, beta: Algebra, targets) -> LawReport:
    """Universal property against every target algebra: exactly one fill-in per coequalizing morphism."""
    rep = LawReport("coequalizer universal property")
    rep.run("q-is-morphism", lambda: morphism_witness(quo.q, beta, quo.algebra), "q algebra morphism")
    ft = np.array([f(x) for x in range(alpha.size)], dtype=np.int64)
    gt = np.array([g(x) for x in range(alpha.size)], dtype=np.int64)
    rep.run("coequalizes", lambda: _first(quo.q.table[ft] != quo.q.table[gt]), "q . f = q . g")
    qt = quo.q.table.astype(np.int64)
    for gamma in targets:

        def universal(gamma=gamma):
            ks = morphism_tables(beta, gamma)
            ms = morphism_tables(quo.algebra, gamma)
            comp = ms[:, qt] if len(ms) else np.zeros((0, beta.size), dtype=np.int64)
            for k in ks:
                if (k[ft] != k[gt]).any():
                    continue
                fills = int((comp == k).all(axis=1).sum()) if len(comp) else 0
                if fills != 1:
                    return {"target": gamma.name, "k": k.tolist(), "fill_ins": fills}
            return None

        rep.run("universal", universal, "unique fill-in", {"target": gamma.name, "size": gamma.size})
    return rep


def _first(mask):
    bad = np.nonzero(mask)[0]
    return None if not len(bad) else {"element": int(bad[0])}


# ---------------------------------------------------------------------------
# enumeration of algebras


def _additively_generated_by_one(S) -> list[int] | None:
    """``counts[s] = j`` with ``s = 1 + ... + 1`` (j terms), or None."""
    counts = {S.zero: 0}
    x, j = S.zero, 0
    while True:
        x, j = int(S.add[x, S.one]), j + 1
        if x in counts:
            break
        counts[x] = j
    if len(counts) != S.size:
        return None
    return [counts[s] for s in range(S.size)]


def semimodule_algebras(T: SemimoduleMonad, n: int, verify: bool = True) -> list[Algebra]:
    """All M_S-algebras on ``n`` labelled points, via commutative monoids.

    Only for semirings whose elements are sums of ones; then the scalar
    action is forced (``s.x = x + ... + x``) and only the module axioms
    remain to be checked.
    """
    S = T.S
    reps = _additively_generated_by_one(S)
    if reps is None:
        raise TypeMismatch(f"{S.name} is not additively generated by 1")
    out = []
    C = FinSet(n)
    TC = T.obj(C)
    check_budget("structure tables", TC.size)
    coeff = T.coefficient_matrix(n)
    for add, zero in _commutative_monoids(n):
        act = np.empty((S.size, n), dtype=np.int64)
        for s in range(S.size):
            for x in range(n):
                y = zero
                for _ in range(reps[s]):
                    y = add[y, x]
                act[s, x] = y
        if not _module_axioms(S, add, act):
            continue
        alpha = np.full(TC.size, zero, dtype=np.int64)
        for c in range(n):
            alpha = add[alpha, act[coeff[:, c], c]]
        alg = Algebra(T, C, FinMap(TC, C, alpha, check=False), f"mod{n}_{len(out)}")
        if verify:
            v = is_algebra(T, C, alg.structure)
            if v.holds is False:
                raise AssertionError(f"module on {n} points failed EM axioms: {v.witness}")
        out.append(alg)
    return out


def _module_axioms(S, add, act) -> bool:
    sa, sm = S.add, S.mul
    n = add.shape[0]
    for s, t in itertools.product(range(S.size), repeat=2):
        if not np.array_equal(act[sa[s, t]], add[act[s], act[t]]):
            return False
        if not np.array_equal(act[sm[s, t]], act[s][act[t]]):
            return False
    for s in range(S.size):
        for x, y in itertools.product(range(n), repeat=2):
            if act[s, add[x, y]] != add[act[s, x], act[s, y]]:
                return False
    return bool((act[S.one] == np.arange(n)).all())


def _commutative_monoids(n: int):
    """Every commutative monoid table on ``n`` labelled points, with its unit."""
    if n == 0:
        return
    pairs = [(x, y) for x in range(n) for y in range(x, n)]
    for zero in range(n):
        free = [(x, y) for x, y in pairs if x != zero and y != zero]
        check_budget("commutative monoid tables", n ** len(free))
        for vals in itertools.product(range(n), repeat=len(free)):
            t = np.empty((n, n), dtype=np.int64)
            t[zero, :] = np.arange(n)
            t[:, zero] = np.arange(n)
            for (x, y), v in zip(free, vals):
                t[x, y] = t[y, x] = v
            if _associative(t):
                yield t, zero


def _associative(t: np.ndarray) -> bool:
    n = t.shape[0]
    lhs = t[t]  # lhs[x, y, z] = t[t[x, y], z]
    rhs = t[np.arange(n)[:, None, None], t[None, :, :]]  # rhs[x, y, z] = t[x, t[y, z]]
    return bool((lhs == rhs).all())


def brute_force_algebras(T: MonadInstance, n: int) -> list[Algebra]:
    """Every structure map on ``n`` points passing both axioms.

    The unit axiom fixes ``alpha`` on the image of ``eta``; the other entries
    range over all values.  Raises SizeBudgetExceeded when the search or the
    multiplication check does not fit.
    """
    C = FinSet(n)
    TC = T.obj(C)
    check_budget("structure tables", TC.size)
    eta = T.unit(C).table.astype(np.int64)
    fixed = np.full(TC.size, -1, dtype=np.int64)
    fixed[eta] = np.arange(n)
    free_pos = np.nonzero(fixed < 0)[0]
    check_budget(f"candidate structures on {n} points", n ** len(free_pos))
    check_budget("multiplication axiom", T.obj(TC).size)
    mu = T.mult(C).table.astype(np.int64)
    out = []
    if n == 0 and TC.size:
        return out
    for vals in itertools.product(range(n), repeat=len(free_pos)):
        alpha = fixed.copy()
        alpha[free_pos] = vals
        cand = Algebra(T, C, FinMap(TC, C, alpha, check=False), f"alg{n}_{len(out)}")
        if np.array_equal(alpha[mu], alpha[T.fmap(cand.structure).table.astype(np.int64)]):
            out.append(cand)
    return out


def enumerate_algebras(T: MonadInstance, n: int) -> list[Algebra]:
    """All T-algebras on ``n`` labelled points (semimodules via monoid tables when possible)."""
    return list(_enumerate_cached(T, n))


@lru_cache(maxsize=256)
def _enumerate_cached(T: MonadInstance, n: int) -> tuple:
    return tuple(_enumerate(T, n))


def _enumerate(T: MonadInstance, n: int) -> list[Algebra]:
    if isinstance(T, SemimoduleMonad) and _additively_generated_by_one(T.S) is not None:
        return semimodule_algebras(T, n, verify=within_budget(T.obj(T.obj(FinSet(n))).size))
    return brute_force_algebras(T, n)


def algebras_up_to(T: MonadInstance, n: int) -> list[Algebra]:
    out = []
    for k in range(n + 1):
        out.extend(enumerate_algebras(T, k))
    return out


def isomorphism_classes(algs) -> list[Algebra]:
    """One representative per isomorphism class, first occurrence kept."""
    reps: list[Algebra] = []
    for a in algs:
        if not any(r.size == a.size and find_isomorphism(r, a) is not None for r in reps):
            reps.append(a)
    return reps


def find_isomorphism(a: Algebra, b: Algebra) -> FinMap | None:
    """A bijective algebra morphism ``a -> b`` if one exists."""
    if a.size != b.size:
        return None
    for t in morphism_tables(a, b):
        if len(set(t.tolist())) == a.size:
            return FinMap(a.carrier, b.carrier, t, check=False)
    return None


def check_carrier(a: Algebra, b: Algebra):
    if a.carrier != b.carrier:
        raise CarrierMismatch(f"{a.name} and {b.name} have different carriers")
