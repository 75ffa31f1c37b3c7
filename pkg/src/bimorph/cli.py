"""Command-line front end.

Exit codes: 0 every check passed, 1 some check failed, 2 usage or
validation error, 3 a construction exceeded the size budget.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import warnings
from pathlib import Path

import numpy as np

from .errors import BimorphError, NonCommutativeWarning, SizeBudgetExceeded
from .finset import DEFAULT_BUDGET, FinSet, budget_limit, product_objects, sets_up_to
from .report import FAIL, LawReport, jsonable

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3
MAX_TABLE = 4096  # larger tables are reported by size only


class UsageError(Exception):
    pass


class Report:
    def __init__(self, command: str, inputs: dict):
        self.command = command
        self.inputs = inputs
        self.sections: list[LawReport] = []
        self.artifacts: list[dict] = []

    def add(self, rep: LawReport, prefix: str = "") -> LawReport:
        if prefix:
            r = LawReport(rep.subject)
            r.extend(rep, prefix)
            rep = r
        self.sections.append(rep)
        return rep

    def artifact(self, name: str, value) -> None:
        if isinstance(value, np.ndarray):
            value = value.tolist()
        if isinstance(value, list) and len(value) > MAX_TABLE:
            value = {"size": len(value), "omitted": True}
        self.artifacts.append({"name": name, "value": jsonable(value)})

    @property
    def checks(self):
        return [c for s in self.sections for c in s.checks]

    @property
    def failed(self) -> bool:
        return any(c.verdict == FAIL for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "command": self.command,
            "inputs": jsonable(self.inputs),
            "checks": [c.to_dict() for c in self.checks],
            "artifacts": self.artifacts,
        }

    def text(self) -> str:
        lines = [f"{self.command}"]
        for s in self.sections:
            lines.append(f"  {s.summary()}")
            for c in s.checks:
                if c.verdict == FAIL:
                    lines.append(f"    FAIL {c.name}: {json.dumps(jsonable(c.witness), sort_keys=True)}")
                elif c.verdict != "pass":
                    lines.append(f"    SKIP {c.name}: {json.dumps(jsonable(c.scope), sort_keys=True)}")
        for a in self.artifacts:
            v = a["value"]
            shown = json.dumps(v, sort_keys=True)
            if len(shown) > 200:
                shown = shown[:197] + "..."
            lines.append(f"  {a['name']} = {shown}")
        lines.append("result: " + ("FAIL" if self.failed else "PASS"))
        return "\n".join(lines)


# ---------------------------------------------------------------------------
# commands


def _sets(args):
    return sets_up_to(args.max_size)


def _objects(arity: int, args):
    if arity == 1:
        return _sets(args)
    return product_objects(range(1, args.max_size + 1), arity)


def _monad(ws, args, required=True):
    if args.monad is None:
        if required:
            raise UsageError("--monad is required")
        return None
    return ws.monad(args.monad)


def cmd_check_monad(ws, args, out: Report):
    from .monads import ProductMonad, check_monad_laws

    T = _monad(ws, args)
    objs = product_objects(range(args.max_size + 1), T.arity) if isinstance(T, ProductMonad) else _sets(args)
    out.add(check_monad_laws(T, objs))


def cmd_check_morphism(ws, args, out: Report):
    from .monads import check_monad_morphism

    sig = ws.morphism(_require(args.morphism, "--morphism"))
    out.add(check_monad_morphism(sig, _sets(args)))


def cmd_check_strength(ws, args, out: Report):
    from .strength import check_strength_axioms

    out.add(check_strength_axioms(_monad(ws, args), _sets(args)))


def cmd_check_commutative(ws, args, out: Report):
    from .strength import is_commutative

    T = _monad(ws, args)
    v = is_commutative(T, [FinSet(n) for n in range(1, args.max_size + 1)])
    rep = LawReport(f"commutativity of {T.name}")
    rep.add("dst = dst'", "pass" if v.holds else FAIL, "dst = dst'", v.scope, v.witness)
    out.add(rep)
    out.artifact("commutative", bool(v.holds))


def _require(value, flag):
    if value is None:
        raise UsageError(f"{flag} is required")
    return value


def _source_algebra(ws, args, S):
    from .algebras import product_algebra
    from .monads import ProductMonad

    src = _require(args.source, "--source")
    if isinstance(S, ProductMonad):
        refs = src.split(";") if ";" in src else [src, _require(args.source2, "--source2")]
        if len(refs) != S.arity:
            raise UsageError(f"the source needs {S.arity} algebras")
        return product_algebra([ws.algebra(r.strip(), M) for r, M in zip(refs, S.components)])
    return ws.algebra(src, S)


def cmd_check_bimorphism(ws, args, out: Report):
    from .bimorphisms import left_component_witness, left_witness, right_component_witness
    from .functors import Product

    T = _monad(ws, args, required=False)
    fam, H, S, T = ws.family(args.family, T)
    alpha = _source_algebra(ws, args, S)
    gamma = ws.algebra(_require(args.target, "--target"), T)
    h = ws.map(_require(args.map, "--map"))
    lam = fam.at(alpha.carrier)
    rep = LawReport(f"{args.map} as a {fam.name}-morphism")
    rep.run("left-morphism", lambda: left_witness(h, lam, H, alpha, gamma), "beta . T(h) . lambda = h . H(alpha)", {"map": args.map})
    if isinstance(H, Product) and args.family == "dst":
        from .algebras import Algebra

        a, b = (Algebra(M, C, s, n) for M, C, s, n in zip(S.components, alpha.carrier.parts, alpha.structure.parts, ("a", "b")))
        rep.run("right-component", lambda: right_component_witness(h, a, b, gamma), "gamma . T(h) . st = h . (A x beta)")
        rep.run("left-component", lambda: left_component_witness(h, a, b, gamma), "gamma . T(h) . st' = h . (alpha x B)")
    out.add(rep)


def cmd_check_kleisli_law(ws, args, out: Report):
    from .bimorphisms import is_kleisli_law

    fam, H, S, T = ws.family(_require(args.family, "--family"), _monad(ws, args, required=False))
    out.add(is_kleisli_law(fam, H, S, T, _objects(H.arity, args)))


def cmd_check_em_law(ws, args, out: Report):
    from .bimorphisms import is_em_law

    fam, G, S, T = ws.family(_require(args.family, "--family"), _monad(ws, args, required=False))
    if G.arity != 1:
        raise UsageError("EM laws are checked here for endofunctors of FinSet")
    out.add(is_em_law(fam, G, S, T, _objects(1, args)))


def cmd_lift(ws, args, out: Report):
    from .algebras import check_algebra
    from .bimorphisms import em_lift, is_em_law, kleisli_lift

    fam, G, S, T = ws.family(_require(args.family, "--family"), _monad(ws, args, required=False))
    if G.arity != 1:
        raise UsageError("lift needs a law along an endofunctor of FinSet")
    out.add(is_em_law(fam, G, S, T, _objects(1, args)), "em-law:")
    out.add(kleisli_lift(G, fam, S, T).check_functorial([FinSet(n) for n in range(1, args.max_size + 1)]), "kleisli-lift:")
    if args.algebra:
        beta = ws.algebra(args.algebra, T)
        lifted = em_lift(G, fam, S)(beta)
        out.add(check_algebra(S, lifted.carrier, lifted.structure), "lifted:")
        out.artifact("lifted.carrier_size", lifted.size)
        out.artifact("lifted.structure", lifted.structure.table)


def _classify_from_args(ws, args):
    from .classify import classifying_object

    fam, H, S, T = ws.family(_require(args.family, "--family"), _monad(ws, args, required=False))
    alpha = _source_algebra(ws, args, S)
    return classifying_object(H, fam, alpha, T, method=args.method, fast_path=args.fast_path)


def _classifying_artifacts(out: Report, co):
    out.artifact("carrier_size", co.size)
    out.artifact("structure", co.result.structure.table if hasattr(co.result.structure, "table") else [])
    out.artifact("q", co.quotient.table)
    out.artifact("u", co.universal.table)
    out.artifact("method", co.metadata.get("method"))


def _targets(ws, args, T):
    from .algebras import algebras_up_to

    if args.targets:
        return [ws.algebra(r.strip(), T) for r in args.targets.split(";")]
    return algebras_up_to(T, args.target_size)


def cmd_classify(ws, args, out: Report):
    from .bimorphisms import left_witness

    co = _classify_from_args(ws, args)
    rep = LawReport(f"classifying object {co.result.name}")
    rep.run("u-bimorphism", lambda: left_witness(co.universal, co.lam, co.H, co.base_algebra, co.result), "u : alpha =>lam omega")
    out.add(rep)
    _classifying_artifacts(out, co)


def cmd_verify_universal(ws, args, out: Report):
    from .classify import verify_universal

    co = _classify_from_args(ws, args)
    out.add(verify_universal(co, _targets(ws, args, co.monad)))
    _classifying_artifacts(out, co)


def cmd_tensor(ws, args, out: Report):
    from .classify import tensor, verify_universal

    T = _monad(ws, args)
    a = ws.algebra(_require(args.left, "--left"), T)
    b = ws.algebra(_require(args.right, "--right"), T)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", NonCommutativeWarning)
        co = tensor(a, b, T, method=args.method, fast_path=args.fast_path)
    out.add(verify_universal(co, _targets(ws, args, T)))
    _classifying_artifacts(out, co)
    out.artifact("warnings", sorted({str(w.message) for w in caught}))


def cmd_coproduct_lift(ws, args, out: Report):
    from .classify import check_coproduct, coproduct_lift

    T = _monad(ws, args)
    a = ws.algebra(_require(args.left, "--left"), T)
    b = ws.algebra(_require(args.right, "--right"), T)
    co = coproduct_lift(a, b, T, method=args.method, fast_path=args.fast_path)
    out.add(check_coproduct(co, _targets(ws, args, T)))
    _classifying_artifacts(out, co)


def cmd_adjoint_lift(ws, args, out: Report):
    from .adjlift import check_lifted_adjunction, lift_adjunction, transpose_check
    from .algebras import algebras_up_to, enumerate_algebra_morphisms
    from .workspace import parse_workspace

    ref = _require(args.sigma, "--sigma")
    if Path(ref).is_file():
        extra = parse_workspace([ref])
        if len(extra.morphisms) != 1:
            raise UsageError(f"{ref} must define exactly one morphism")
        sig = next(iter(extra.morphisms.values()))
    else:
        sig = ws.morphism(ref)
    laws = out.add(transpose_check(sig, _sets(args)))
    if not laws.ok:
        # without the law there is no lifted adjunction to check
        return
    adj = lift_adjunction(sig)
    sources = algebras_up_to(sig.source, args.max_size + 1)
    targets = algebras_up_to(sig.target, args.target_size)
    maps = []
    for b in targets:
        for b2 in targets:
            ks = enumerate_algebra_morphisms(b, b2)
            if ks and b is not b2:
                maps.append((b, b2, ks[-1]))
    out.add(check_lifted_adjunction(adj, sources, targets, maps[: args.samples]))
    out.artifact("left_carrier_sizes", [[a.name, adj.left_functor(a).size] for a in sources])


COMMANDS = {
    "check-monad": (cmd_check_monad, "monad laws on all sets up to --max-size"),
    "check-morphism": (cmd_check_morphism, "monad-morphism axioms"),
    "check-strength": (cmd_check_strength, "strength axioms of the canonical strength"),
    "check-commutative": (cmd_check_commutative, "dst = dst' on sets up to --max-size"),
    "check-bimorphism": (cmd_check_bimorphism, "is a map a left lambda-morphism"),
    "check-kleisli-law": (cmd_check_kleisli_law, "naturality, unit and multiplication of a Kleisli law"),
    "check-em-law": (cmd_check_em_law, "naturality, unit and multiplication of an Eilenberg-Moore law"),
    "lift": (cmd_lift, "liftings induced by a law"),
    "classify": (cmd_classify, "classifying object of lambda-morphisms"),
    "tensor": (cmd_tensor, "tensor product of two algebras"),
    "coproduct-lift": (cmd_coproduct_lift, "coproduct of two algebras"),
    "verify-universal": (cmd_verify_universal, "universal property against target algebras"),
    "adjoint-lift": (cmd_adjoint_lift, "lifted adjunction along a monad morphism"),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--workspace", action="append", default=[], metavar="PATH", help="workspace file (repeatable)")
    common.add_argument("--budget", type=int, default=None, help="size budget (overrides BIMORPH_BUDGET)")
    common.add_argument("--json", metavar="PATH", help="write the JSON report here ('-' for stdout)")
    common.add_argument("--max-size", type=int, default=2, help="largest test set (default 2)")
    common.add_argument("--monad", help="monad expression, e.g. semimodule(f2)")
    p = argparse.ArgumentParser(prog="bimorph", description="Verify bimorphism laws and build classifying objects over finite monads.")
    sub = p.add_subparsers(dest="command", required=True)
    for name, (_, helptext) in COMMANDS.items():
        s = sub.add_parser(name, parents=[common], help=helptext)
        if name == "check-morphism":
            s.add_argument("--morphism", help="morphism name, id(<monad>) or maybe=>semimodule(<semiring>)")
        if name in ("check-bimorphism", "check-kleisli-law", "check-em-law", "lift", "classify", "verify-universal"):
            s.add_argument("--family", default="dst" if name == "check-bimorphism" else None, help="dst, dst', coproduct, id, sigma(<morphism>) or a family name")
        if name in ("check-bimorphism", "classify", "verify-universal"):
            s.add_argument("--source", help="source algebra (or 'a;b' for a pair)")
            s.add_argument("--source2", help="second source algebra")
        if name == "check-bimorphism":
            s.add_argument("--target", help="target algebra")
            s.add_argument("--map", help="map name")
        if name == "lift":
            s.add_argument("--algebra", help="algebra to lift")
        if name in ("tensor", "coproduct-lift"):
            s.add_argument("--left", help="left algebra")
            s.add_argument("--right", help="right algebra")
        if name in ("classify", "verify-universal", "tensor", "coproduct-lift"):
            s.add_argument("--method", default="auto", choices=["auto", "exact", "operations"])
            s.add_argument("--fast-path", action="store_true", help="skip the quotient when the source is free")
        if name in ("verify-universal", "tensor", "coproduct-lift", "adjoint-lift"):
            s.add_argument("--target-size", type=int, default=3, help="largest target carrier (default 3)")
        if name in ("verify-universal", "tensor", "coproduct-lift"):
            s.add_argument("--targets", help="';'-separated target algebras instead of all small ones")
        if name == "adjoint-lift":
            s.add_argument("--sigma", help="morphism name or workspace file with one morphism")
            s.add_argument("--samples", type=int, default=5, help="naturality spot checks (default 5)")
    return p


def _budget(args) -> int:
    if args.budget is not None:
        return args.budget
    env = os.environ.get("BIMORPH_BUDGET")
    if env:
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"BIMORPH_BUDGET={env!r} is not an integer") from None
    return DEFAULT_BUDGET


def run_command(ws, command: str, args) -> Report:
    """Run one subcommand and return its report (exceptions propagate)."""
    fn, _ = COMMANDS[command]
    inputs = {k: v for k, v in sorted(vars(args).items()) if k not in ("command", "json") and v is not None}
    out = Report(command, inputs)
    with budget_limit(_budget(args)):
        fn(ws, args, out)
    return out


def main(argv=None) -> int:
    from .workspace import parse_workspace

    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        if args.max_size < 0:
            raise UsageError("--max-size must be non-negative")
        ws = parse_workspace(args.workspace)
        report = run_command(ws, args.command, args)
    except SizeBudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (UsageError, BimorphError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    payload = json.dumps(report.to_dict(), indent=2, sort_keys=True)
    if args.json == "-":
        print(payload)
    else:
        print(report.text())
        if args.json:
            Path(args.json).write_text(payload + "\n")
    return EXIT_FAIL if report.failed else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
