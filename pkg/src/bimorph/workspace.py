"""Workspace files: named semirings, monoids, sets, maps, algebras, morphisms and families.

Text format, one section per definition, closed by ``end``::

    semiring f2
      elements 0 1
      zero 0
      one 1
      add
        0 1
        1 0
      mul
        0 0
        0 1
    end

A key followed by values on the same line sets a list; a bare key is
followed by the rows of a matrix.  ``#`` starts a comment.  A file whose
first non-blank character is ``{`` is read as JSON with the same schema
(``{"semirings": {name: {...}}, ...}``).
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .algebras import Algebra, check_algebra, enumerate_algebras, free_algebra
from .errors import BimorphError, ParseError, ValidationError
from .finset import FinMap, FinSet, ProductSet
from .functors import (
    NatFamily,
    coproduct_law,
    dst_family,
    dst_prime_family,
    identity_family,
    MonadFunctor,
    morphism_family,
)
from .monads import (
    MonadInstance,
    MonadMorphism,
    identity_monad,
    identity_morphism,
    maybe_monad,
    maybe_to_semimodule,
    product_monad,
    semimodule_monad,
    writer_automorphism,
    writer_monad,
)
from .structures import MONOIDS, SEMIRINGS, FiniteMonoid, FiniteSemiring, cyclic_monoid, symmetric_group, zmod

SECTIONS = {"semiring": "semirings", "monoid": "monoids", "set": "sets", "map": "maps", "algebra": "algebras", "morphism": "morphisms", "family": "families"}


# ---------------------------------------------------------------------------
# text format


def _value(tok: str):
    try:
        return int(tok)
    except ValueError:
        return tok


def parse_text(text: str, path=None) -> dict:
    """Parse the line format into the JSON schema."""
    out = {v: {} for v in SECTIONS.values()}
    section = None
    body: dict = {}
    key = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        if section is None:
            kind = toks[0]
            if kind not in SECTIONS:
                raise ParseError(f"unknown section {kind!r}", path, lineno)
            if len(toks) < 2:
                raise ParseError(f"{kind} needs a name", path, lineno)
            name = toks[1]
            if name in out[SECTIONS[kind]]:
                raise ParseError(f"duplicate {kind} {name!r}", path, lineno)
            section = (kind, name, lineno)
            body = {"_line": lineno}
            if len(toks) > 2:
                body["args"] = [_value(t) for t in toks[2:]]
            key = None
            continue
        if toks == ["end"]:
            kind, name, _ = section
            out[SECTIONS[kind]][name] = body
            section = None
            continue
        if re.fullmatch(r"-?\d+", toks[0]):
            if key is None:
                raise ParseError("matrix row outside a matrix key", path, lineno)
            body[key].append([int(t) for t in toks])
            continue
        if toks[0] == "patch":
            body.setdefault("patch", []).append(_patch(toks[1:], path, lineno))
            continue
        if len(toks) == 1:
            key = toks[0]
            body[key] = []
        else:
            key = None
            body[toks[0]] = [_value(t) for t in toks[1:]]
    if section is not None:
        raise ParseError(f"section {section[0]} {section[1]!r} is missing 'end'", path, section[2])
    return out


def _patch(toks, path, lineno):
    # patch <object sizes...> : <element> <value>
    if ":" not in toks:
        raise ParseError("patch needs ': <element> <value>'", path, lineno)
    i = toks.index(":")
    try:
        sizes = [int(t) for t in toks[:i]]
        elem, value = (int(t) for t in toks[i + 1 :])
    except ValueError:
        raise ParseError("patch entries must be integers", path, lineno) from None
    return {"object": sizes, "element": elem, "value": value}


def _unwrap(v):
    """A one-item list becomes its item."""
    return v[0] if isinstance(v, list) and len(v) == 1 else v


# ---------------------------------------------------------------------------
# monad expressions


def _split_args(s: str) -> list[str]:
    parts, depth, cur = [], 0, ""
    for ch in s:
        if ch == "," and depth == 0:
            parts.append(cur.strip())
            cur = ""
            continue
        depth += ch == "("
        depth -= ch == ")"
        cur += ch
    if cur.strip():
        parts.append(cur.strip())
    return parts


@dataclass
class Workspace:
    semirings: dict = field(default_factory=dict)
    monoids: dict = field(default_factory=dict)
    sets: dict = field(default_factory=dict)
    maps: dict = field(default_factory=dict)
    algebras: dict = field(default_factory=dict)
    morphisms: dict = field(default_factory=dict)
    families: dict = field(default_factory=dict)
    sources: list = field(default_factory=list)

    def __len__(self):
        return sum(len(getattr(self, k)) for k in SECTIONS.values())

    # names ----------------------------------------------------------------
    def semiring(self, name: str) -> FiniteSemiring:
        if name in self.semirings:
            return self.semirings[name]
        if name in SEMIRINGS:
            return SEMIRINGS[name]()
        m = re.fullmatch(r"z(\d+)", name)
        if m and int(m.group(1)) >= 2:
            return zmod(int(m.group(1)))
        raise ValidationError(name, "unknown semiring")

    def monoid(self, name: str) -> FiniteMonoid:
        if name in self.monoids:
            return self.monoids[name]
        if name in MONOIDS:
            return MONOIDS[name]()
        m = re.fullmatch(r"c(\d+)", name)
        if m and int(m.group(1)) >= 1:
            return cyclic_monoid(int(m.group(1)))
        m = re.fullmatch(r"s(\d)", name)
        if m and 1 <= int(m.group(1)) <= 4:
            return symmetric_group(int(m.group(1)))
        raise ValidationError(name, "unknown monoid")

    def monad(self, expr: str) -> MonadInstance:
        expr = expr.strip()
        m = re.fullmatch(r"([a-z_]+)(?:\((.*)\))?", expr)
        if not m:
            raise ValidationError(expr, "malformed monad expression")
        head, inner = m.group(1), m.group(2)
        if head == "identity" and inner is None:
            return identity_monad()
        if head == "maybe" and inner is None:
            return maybe_monad()
        if head == "semimodule" and inner:
            return semimodule_monad(self.semiring(inner.strip()))
        if head == "writer" and inner:
            return writer_monad(self.monoid(inner.strip()))
        if head == "product" and inner:
            return product_monad([self.monad(p) for p in _split_args(inner)])
        raise ValidationError(expr, "unknown monad expression")

    def set(self, ref) -> FinSet:
        if isinstance(ref, int):
            return FinSet(ref)
        if isinstance(ref, str) and ref.isdigit():
            return FinSet(int(ref))
        if ref in self.sets:
            return self.sets[ref]
        raise ValidationError(str(ref), "unknown set")

    def map(self, name: str) -> FinMap:
        if name not in self.maps:
            raise ValidationError(name, "unknown map")
        return self.maps[name]

    def algebra(self, ref: str, T: MonadInstance | None = None) -> Algebra:
        """A named algebra, ``free(n)`` / ``free(n,m,...)``, or ``enum(n,k)`` (k-th algebra on n points)."""
        if ref in self.algebras:
            alg = self.algebras[ref]
            if T is not None and alg.monad != T:
                raise ValidationError(ref, f"algebra is over {alg.monad.name}, not {T.name}")
            return alg
        m = re.fullmatch(r"(free|enum)\(([\d,\s]*)\)", ref.strip())
        if not m or T is None:
            raise ValidationError(ref, "unknown algebra")
        nums = [int(x) for x in m.group(2).split(",") if x.strip()]
        if m.group(1) == "free":
            if len(nums) == 1:
                return free_algebra(T, FinSet(nums[0]))
            return free_algebra(T, ProductSet(tuple(FinSet(n) for n in nums)))
        if len(nums) != 2:
            raise ValidationError(ref, "enum takes (size, index)")
        algs = enumerate_algebras(T, nums[0])
        if not 0 <= nums[1] < len(algs):
            raise ValidationError(ref, f"there are {len(algs)} algebras on {nums[0]} points")
        return algs[nums[1]]

    def morphism(self, ref: str) -> MonadMorphism:
        if ref in self.morphisms:
            return self.morphisms[ref]
        m = re.fullmatch(r"maybe=>semimodule\((\w+)\)", ref.replace(" ", ""))
        if m:
            return maybe_to_semimodule(self.semiring(m.group(1)))
        m = re.fullmatch(r"id\((.*)\)", ref.strip())
        if m:
            return identity_morphism(self.monad(m.group(1)))
        raise ValidationError(ref, "unknown monad morphism")

    def family(self, ref: str, T: MonadInstance | None = None):
        """``(family, H, S, T)`` for a named family or one of dst, dst', coproduct, id, sigma(NAME)."""
        if ref in self.families:
            return self.families[ref]
        return builtin_family(self, ref, T)


def builtin_family(ws: Workspace, ref: str, T: MonadInstance | None):
    from .functors import Coproduct, Identity, Product

    ref = ref.strip()
    m = re.fullmatch(r"sigma\((.*)\)", ref)
    if m:
        sig = ws.morphism(m.group(1))
        return morphism_family(sig), Identity(), sig.source, sig.target
    if T is None:
        raise ValidationError(ref, "this family needs --monad")
    if ref == "dst":
        return dst_family(T), Product(), product_monad([T, T]), T
    if ref in ("dst'", "dst_prime"):
        return dst_prime_family(T), Product(), product_monad([T, T]), T
    if ref == "coproduct":
        return coproduct_law(T), Coproduct(), product_monad([T, T]), T
    if ref == "id":
        return identity_family(MonadFunctor(T)), Identity(), T, T
    raise ValidationError(ref, "unknown family")


# ---------------------------------------------------------------------------
# building


def _need(body, key, name):
    if key not in body:
        raise ValidationError(name, f"missing field {key!r}")
    return body[key]


def _matrix(v, name, key):
    if not isinstance(v, list) or not all(isinstance(r, list) for r in v):
        raise ValidationError(name, f"{key} must be a matrix")
    return v


def _carrier(body, name):
    if "elements" in body:
        labels = tuple(body["elements"])
        return FinSet(len(labels), labels=labels)
    return FinSet(int(_unwrap(_need(body, "size", name))))


def _wrap(name, fn):
    try:
        return fn()
    except ValidationError as exc:
        if exc.definition == name:
            raise
        raise ValidationError(name, exc.axiom, exc.witness) from exc
    except BimorphError as exc:
        raise ValidationError(name, str(exc), exc.witness) from exc
    except (ValueError, TypeError) as exc:
        raise ValidationError(name, str(exc)) from exc


def build(data: dict, ws: Workspace | None = None) -> Workspace:
    ws = Workspace() if ws is None else ws
    for k in data:
        if k not in SECTIONS.values():
            raise ParseError(f"unknown top-level key {k!r}")
    for name, b in data.get("semirings", {}).items():
        ws.semirings[name] = _wrap(
            name,
            lambda b=b, name=name: FiniteSemiring(
                _carrier(b, name),
                _matrix(_need(b, "add", name), name, "add"),
                _matrix(_need(b, "mul", name), name, "mul"),
                int(_unwrap(_need(b, "zero", name))),
                int(_unwrap(_need(b, "one", name))),
                name,
            ),
        )
    for name, S in ws.semirings.items():
        if name in SEMIRINGS and not _same_tables(S, SEMIRINGS[name]()):
            raise ValidationError(name, "name of a built-in semiring with different tables")
    for name, b in data.get("monoids", {}).items():
        ws.monoids[name] = _wrap(
            name,
            lambda b=b, name=name: FiniteMonoid(_carrier(b, name), _matrix(_need(b, "mul", name), name, "mul"), int(_unwrap(_need(b, "unit", name))), name),
        )
    for name, M in ws.monoids.items():
        if name in MONOIDS and not _same_tables(M, MONOIDS[name]()):
            raise ValidationError(name, "name of a built-in monoid with different tables")
    for name, b in data.get("sets", {}).items():
        if "elements" in b:
            ws.sets[name] = _carrier(b, name)
        else:
            size = b.get("size", b.get("args"))
            if size is None:
                raise ValidationError(name, "missing field 'size'")
            ws.sets[name] = FinSet(int(_unwrap(size)))
    for name, b in data.get("maps", {}).items():

        def mk_map(b=b, name=name):
            dom, cod = ws.set(_unwrap(_need(b, "dom", name))), ws.set(_unwrap(_need(b, "cod", name)))
            table = list(_need(b, "table", name))
            if len(table) != dom.size or any(not 0 <= int(v) < cod.size for v in table):
                raise ValidationError(name, "table is not a total map dom -> cod")
            return FinMap(dom, cod, table)

        ws.maps[name] = _wrap(name, mk_map)
    for name, b in data.get("algebras", {}).items():

        def mk_alg(b=b, name=name):
            T = ws.monad(_text(_need(b, "monad", name)))
            C = ws.set(_unwrap(_need(b, "carrier", name)))
            table = list(_need(b, "structure", name))
            TC = T.obj(C)
            if len(table) != TC.size or any(not 0 <= int(v) < C.size for v in table):
                raise ValidationError(name, "structure is not a total map T(C) -> C")
            alpha = FinMap(TC, C, table)
            rep = check_algebra(T, C, alpha)
            f = rep.first_failure()
            if f is not None:
                raise ValidationError(name, f"{f.name} axiom", f.witness)
            return Algebra(T, C, alpha, name)

        ws.algebras[name] = _wrap(name, mk_alg)
    for name, b in data.get("morphisms", {}).items():
        ws.morphisms[name] = _wrap(name, lambda b=b, name=name: _morphism(ws, name, b))
    for name, b in data.get("families", {}).items():
        ws.families[name] = _wrap(name, lambda b=b, name=name: _family(ws, name, b))
    return ws


def _same_tables(a, b) -> bool:
    import numpy as np

    if isinstance(a, FiniteSemiring):
        return a.size == b.size and np.array_equal(a.add, b.add) and np.array_equal(a.mul, b.mul) and (a.zero, a.one) == (b.zero, b.one)
    return a.size == b.size and np.array_equal(a.op, b.op) and a.unit == b.unit


def _morphism(ws: Workspace, name: str, b: dict) -> MonadMorphism:
    kind = _unwrap(_need(b, "kind", name))
    if kind == "identity":
        sig = identity_morphism(ws.monad(_text(_need(b, "monad", name))))
    elif kind == "maybe-inclusion":
        sig = maybe_to_semimodule(ws.semiring(_unwrap(_need(b, "semiring", name))))
    elif kind == "writer-automorphism":
        sig = writer_automorphism(ws.monoid(_unwrap(_need(b, "monoid", name))), list(_need(b, "perm", name)), name)
    else:
        raise ValidationError(name, f"unknown morphism kind {kind!r}")
    for p in b.get("patch", []):
        sizes = p["object"]
        if len(sizes) != 1:
            raise ValidationError(name, "morphism patches name a single set size")
        sig = sig.patched(FinSet(sizes[0]), p["element"], p["value"])
    return MonadMorphism(sig.source, sig.target, sig.component_elem, name)


def _text(v):
    return " ".join(str(x) for x in v) if isinstance(v, list) else str(v)


def _family(ws: Workspace, name: str, b: dict):
    kind = _unwrap(_need(b, "kind", name))
    T = ws.monad(_text(b["monad"])) if "monad" in b else None
    if kind == "sigma":
        ref = f"sigma({_unwrap(_need(b, 'morphism', name))})"
    else:
        ref = str(kind)
    fam, H, S, T2 = builtin_family(ws, ref, T)
    for p in b.get("patch", []):
        sizes = p["object"]
        X = FinSet(sizes[0]) if len(sizes) == 1 else ProductSet(tuple(FinSet(s) for s in sizes))
        fam = fam.patched(X, p["element"], p["value"])
    fam = NatFamily(fam.source, fam.target, fam.component, name)
    return fam, H, S, T2


# ---------------------------------------------------------------------------
# files


def parse_file(path) -> dict:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ParseError(f"cannot read: {exc.strerror}", str(path)) from None
    if text.lstrip().startswith("{"):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(exc.msg, str(path), exc.lineno) from None
        if not isinstance(data, dict):
            raise ParseError("top level must be an object", str(path))
        return data
    return parse_text(text, str(path))


def parse_workspace(paths=()) -> Workspace:
    """Parse and validate every file; later files may refer to names from earlier ones."""
    ws = Workspace()
    for p in paths:
        build(parse_file(p), ws)
        ws.sources.append(str(p))
    return ws


def bundled(name: str) -> Path:
    """Path of a bundled workspace file such as ``f2.ws``."""
    return Path(str(resources.files("bimorph") / "data" / name))
