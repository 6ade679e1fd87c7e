"""Command-line surface: evaluation, conjugation tables, relation checks,
norms, multiplier estimates, the trichotomy predictor and the gap-construction
report, all with deterministic JSON/CSV output.

Exit codes: 0 success, 1 domain/validation error (machine-readable JSON on
stdout), 2 refuted check (check subcommands only).
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

import numpy as np

from .errors import (DomainError, GapSequenceError, NumericError,
                     ValidationError)
from .extreal import INF, is_inf
from . import conjugation as conj
from . import equivalence as eq
from . import functions as fn
from . import multipliers as mult
from . import pathology as path
from . import spaces as sp
from . import young


# ---------------------------------------------------------------------------
# shorthand parsers
# ---------------------------------------------------------------------------

def parse_young(spec: str) -> young.YoungFunction:
    """Function shorthand: power:p[:c], hinge[:a], step[:a], named entries,
    inline JSON descriptors and @file paths."""
    spec = spec.strip()
    if spec.startswith("@"):
        with open(spec[1:], "r", encoding="utf-8") as f:
            return young.from_json_dict(json.load(f))
    if spec.startswith("{"):
        return young.from_json_dict(json.loads(spec))
    head, *args = spec.split(":")
    args = [a for a in args if a != ""]
    try:
        if head == "power":
            p = float(args[0])
            c = float(args[1]) if len(args) > 1 else 1.0
            return fn.power(p, c)
        if head == "hinge":
            return fn.hinge(float(args[0]) if args else 1.0)
        if head == "step":
            return fn.step(float(args[0]) if args else 1.0)
        if head == "trunclin":
            return fn.truncated_linear(float(args[0]) if args else 2.0)
        if head == "recip":
            pole = float(args[0]) if args else 1.0
            c = float(args[1]) if len(args) > 1 else 1.0
            return fn.reciprocal(pole, c)
        if head == "exp":
            k = float(args[0]) if args else 1.0
            c = float(args[1]) if len(args) > 1 else 1.0
            return fn.exp_minus_one(k, c)
        if head == "powerexp":
            p = float(args[0])
            k = float(args[1]) if len(args) > 1 else 1.0
            c = float(args[2]) if len(args) > 2 else 1.0
            return fn.power_exp(p, k, c)
        if head == "logpow":
            p = float(args[0])
            q = float(args[1]) if len(args) > 1 else 1.0
            c = float(args[2]) if len(args) > 2 else 1.0
            s = float(args[3]) if len(args) > 3 else 1.0
            return fn.log_power(p, q, c, s)
        if head == "example11_phi_p":
            return fn.example11_phi_p(float(args[0]))
        if head == "example9_psi":
            n = int(args[0]) if args else 8
            return path.build_psi(path.build_gap_sequence(n)).young
        if head in fn.NAMED:
            return fn.NAMED[head]()
    except (IndexError, ValueError) as exc:
        raise DomainError(f"malformed function shorthand {spec!r}: {exc}") from exc
    raise DomainError(f"unknown function shorthand {spec!r}")


def parse_model(spec: str) -> sp.MeasureModel:
    head, *args = spec.strip().split(":")
    try:
        if head == "grid01":
            return sp.MeasureModel.grid01(int(args[0]) if args else 512)
        if head == "counting":
            return sp.MeasureModel.counting(int(args[0]))
        if head == "halfline":
            T = float(args[0]) if args else 2.0 ** 16
            n = int(args[1]) if len(args) > 1 else 1024
            return sp.MeasureModel.half_line(T, n)
    except (IndexError, ValueError) as exc:
        raise DomainError(f"malformed model shorthand {spec!r}: {exc}") from exc
    raise DomainError(f"unknown model shorthand {spec!r}")


def _split_top(s: str) -> list:
    """Split on commas that are not nested in parentheses."""
    out, depth, cur = [], 0, []
    for ch in s:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            out.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    out.append("".join(cur))
    return out


def parse_space(spec: str):
    """Space shorthand: lp:p, linf, lorentz:alpha[:c], marcinkiewicz:alpha[:c],
    cl(<base>,<function shorthand>)."""
    spec = spec.strip()
    if spec.startswith("cl(") and spec.endswith(")"):
        inner = _split_top(spec[3:-1])
        if len(inner) != 2:
            raise DomainError(f"cl(...) needs a base space and a function: {spec!r}")
        return sp.CL(parse_space(inner[0]), parse_young(inner[1]))
    head, *args = spec.split(":")
    try:
        if head == "lp":
            return sp.Lp(float(args[0]))
        if head == "linf":
            return sp.Linf()
        if head == "lorentz":
            alpha = float(args[0])
            c = float(args[1]) if len(args) > 1 else 1.0
            return sp.Lorentz(sp.PowerProfile(c, alpha))
        if head == "marcinkiewicz":
            alpha = float(args[0])
            c = float(args[1]) if len(args) > 1 else 1.0
            return sp.Marcinkiewicz(sp.PowerProfile(c, alpha))
    except (IndexError, ValueError) as exc:
        raise DomainError(f"malformed space shorthand {spec!r}: {exc}") from exc
    raise DomainError(f"unknown space shorthand {spec!r}")


def parse_values(spec: str, model: sp.MeasureModel) -> sp.StepFunction:
    vals = [float(v) for v in spec.split(",") if v.strip() != ""]
    if len(vals) == 1 and model.n > 1:
        vals = vals * model.n
    return sp.StepFunction(model, tuple(vals))


# ---------------------------------------------------------------------------
# output helpers
# ---------------------------------------------------------------------------

def _jsonable(obj):
    if obj is None or isinstance(obj, (bool, int, str)):
        return obj
    if isinstance(obj, float):
        return "inf" if is_inf(obj) else obj
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, (np.floating, np.integer)):
        return _jsonable(float(obj))
    if isinstance(obj, np.ndarray):
        return [_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, young.YoungFunction):
        return young.to_json_dict(obj)
    if hasattr(obj, "__dict__"):
        return {k: _jsonable(v) for k, v in vars(obj).items()}
    return str(obj)


def emit_json(doc, out=None):
    print(json.dumps(_jsonable(doc), sort_keys=True), file=out or sys.stdout)


def _fmt(v) -> str:
    if is_inf(v):
        return "inf"
    return repr(float(v))


# ---------------------------------------------------------------------------
# subcommand handlers
# ---------------------------------------------------------------------------

def cmd_eval(args) -> int:
    phi = parse_young(args.phi)
    val = phi(args.u)
    if args.json:
        emit_json({"u": args.u, "value": float(val) if not is_inf(val) else INF})
    else:
        print(_fmt(val))
    return 0


def cmd_inverse(args) -> int:
    phi = parse_young(args.phi)
    v = INF if args.v == "inf" else float(args.v)
    val = phi.inverse(v)
    if args.json:
        emit_json({"v": "inf" if is_inf(v) else float(v), "inverse": val})
    else:
        print(_fmt(val))
    return 0


def cmd_ominus(args) -> int:
    phi = parse_young(args.phi)
    phi1 = parse_young(args.phi1)
    us = np.geomspace(args.u_min, args.u_max, args.grid)
    result = conj.ominus_table(phi, phi1, us, zero=args.zero)
    if args.json:
        emit_json({
            "us": result.us, "values": result.values,
            "maximizers": result.maximizers, "diverged": result.diverged,
            "closed_form": result.closed_form,
        })
        return 0
    print("u,value,maximizer_v")
    for u, v, m in zip(result.us, result.values, result.maximizers):
        print(f"{_fmt(u)},{_fmt(v)},{'' if m is None else _fmt(m)}")
    if result.closed_form is not None:
        print("# closed_form: " + json.dumps(
            young.to_json_dict(result.closed_form), sort_keys=True))
    return 0


def cmd_check_equiv(args) -> int:
    phi1 = parse_young(args.phi1)
    phi2 = parse_young(args.phi2)
    phi = parse_young(args.phi)
    rng = eq.ArgRange(args.range, args.threshold)
    doc = {}
    refuted = False
    directions = ["left", "right"] if args.direction == "both" else [args.direction]
    for d in directions:
        rep = eq.check_product_relation(phi1, phi2, phi, d, rng, n=args.n)
        doc[d] = {
            "holds": rep.holds, "constant": rep.constant,
            "sampled_min_ratio": rep.sampled_min_ratio,
            "sampled_max_ratio": rep.sampled_max_ratio,
            "extremal_trace": rep.extremal_trace,
            "skipped_fraction": rep.skipped_fraction,
            "witnesses": rep.witnesses,
        }
        refuted = refuted or rep.refuted
    links = eq.degeneracy_links(phi1, phi2, phi, rng)
    doc["degeneracy_links_consistent"] = links.consistent
    emit_json(doc)
    return 2 if refuted else 0


def cmd_norm(args) -> int:
    model = parse_model(args.model)
    space = parse_space(args.space)
    x = parse_values(args.values, model)
    val = sp.norm(space, x)
    if args.json:
        emit_json({"norm": val})
    else:
        print(_fmt(val))
    return 0


def cmd_mult_norm(args) -> int:
    model = parse_model(args.model)
    E = parse_space(args.space_e)
    F = parse_space(args.space_f)
    x = parse_values(args.values, model)
    est = mult.multiplier_norm(E, F, x, n_starts=args.starts)
    emit_json({
        "value": est.value, "certificate": est.certificate, "gap": est.gap,
        "n_starts": est.n_starts, "optimizer": list(est.optimizer.values),
    })
    return 0


def cmd_predict(args) -> int:
    phi1 = parse_young(args.phi1)
    phi = parse_young(args.phi)
    tri = mult.predict_multiplier_space(phi1, phi)
    doc = {"case": tri.case, "space": tri.space}
    if tri.case == "i":
        doc["side_conditions"] = tri.side_conditions
        if tri.phi2 is not None:
            doc["phi2"] = young.to_json_dict(tri.phi2)
    if args.trace:
        doc["ratio_trace"] = tri.ratio_trace
    emit_json(doc)
    return 0


def cmd_pathology(args) -> int:
    seq = path.build_gap_sequence(args.n)
    build = path.build_psi(seq)
    if args.csv:
        print("u,psi,half_square")
        for u, p, q in path.csv_rows(build, args.rows):
            print(f"{_fmt(u)},{_fmt(p)},{_fmt(q)}")
        return 0
    report = path.verify_pathology(build)
    emit_json({
        "n": report.n,
        "passed": report.passed,
        "checks": [{"name": c.name, "passed": c.passed, "detail": c.detail}
                   for c in report.checks],
        "identity_chain": report.identity_chain,
        "a": [str(a) for a in seq.a],
        "u": [str(u) for u in seq.u],
    })
    return 0 if report.passed else 2


def cmd_report(args) -> int:
    phi = parse_young(args.phi)
    rep = young.validate(phi)
    chars = phi.characteristics()
    emit_json({
        "characteristics": chars,
        "validation": {
            "passed": rep.passed,
            "checks": [{"name": c.name, "passed": c.passed, "witness": c.witness}
                       for c in rep.checks],
            "flags": rep.flags,
        },
        "descriptor": young.to_json_dict(phi),
    })
    return 0 if rep.passed else 2


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        emit_json({"error": {"kind": "usage", "message": message}},
                  out=sys.stderr)
        raise SystemExit(1)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="youngcalc",
                     description="Young-function calculus and finite ideal-space models")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate a Young function")
    p.add_argument("--phi", required=True)
    p.add_argument("--u", type=float, required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(handler=cmd_eval)

    p = sub.add_parser("inverse", help="generalized inverse")
    p.add_argument("--phi", required=True)
    p.add_argument("--v", required=True, help="argument value, or 'inf'")
    p.add_argument("--json", action="store_true")
    p.set_defaults(handler=cmd_inverse)

    p = sub.add_parser("ominus", help="complementary operation table")
    p.add_argument("--phi", required=True)
    p.add_argument("--phi1", required=True)
    p.add_argument("--grid", type=int, default=64)
    p.add_argument("--u-min", type=float, default=1e-3)
    p.add_argument("--u-max", type=float, default=1e3)
    p.add_argument("--zero", action="store_true",
                   help="restrict the supremum to v in [0, 1]")
    p.add_argument("--json", action="store_true")
    p.set_defaults(handler=cmd_ominus)

    p = sub.add_parser("check-equiv", help="product relation between inverses")
    p.add_argument("--phi1", required=True)
    p.add_argument("--phi2", required=True)
    p.add_argument("--phi", required=True)
    p.add_argument("--direction", choices=["left", "right", "both"], default="both")
    p.add_argument("--range", choices=["all", "large", "small"], default="all")
    p.add_argument("--threshold", type=float, default=1.0)
    p.add_argument("--n", type=int, default=10_000)
    p.set_defaults(handler=cmd_check_equiv)

    p = sub.add_parser("norm", help="norm of a step function")
    p.add_argument("--space", required=True)
    p.add_argument("--model", required=True)
    p.add_argument("--values", required=True,
                   help="comma-separated atom values (one value broadcasts)")
    p.add_argument("--json", action="store_true")
    p.set_defaults(handler=cmd_norm)

    p = sub.add_parser("mult-norm", help="pointwise multiplier norm estimate")
    p.add_argument("--space-e", required=True)
    p.add_argument("--space-f", required=True)
    p.add_argument("--model", required=True)
    p.add_argument("--values", required=True)
    p.add_argument("--starts", type=int, default=16)
    p.set_defaults(handler=cmd_mult_norm)

    p = sub.add_parser("predict", help="multiplier-space growth trichotomy")
    p.add_argument("--phi1", required=True)
    p.add_argument("--phi", required=True)
    p.add_argument("--trace", action="store_true")
    p.set_defaults(handler=cmd_predict)

    p = sub.add_parser("pathology", help="gap-construction verification report")
    p.add_argument("--n", type=int, default=8)
    p.add_argument("--csv", action="store_true",
                   help="emit (u, psi(u), u^2/2) rows instead of the report")
    p.add_argument("--rows", type=int, default=200)
    p.set_defaults(handler=cmd_pathology)

    p = sub.add_parser("report", help="validation and characteristics report")
    p.add_argument("--phi", required=True)
    p.set_defaults(handler=cmd_report)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.handler(args)
    except (DomainError, ValidationError, GapSequenceError, NumericError) as exc:
        emit_json({"error": {"kind": type(exc).__name__, "message": str(exc)}})
        return 1
    except (json.JSONDecodeError, OSError) as exc:
        emit_json({"error": {"kind": "input", "message": str(exc)}})
        return 1


if __name__ == "__main__":
    sys.exit(main())
