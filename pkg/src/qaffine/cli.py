"""Command line front end: ``qaffine verify | basis | show``."""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import basis, extremal, sweeps
from .repmod import TensorElement
from .scalars import Scalar, SpecializationError, canonical_string


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}")


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("bound must be positive")
    return v


def _dump(obj) -> str:
    return json.dumps(obj, default=str, sort_keys=False)


def _swap_vector(t: TensorElement) -> TensorElement:
    return TensorElement(t.m, t.n, {k: v.swap_xy() for k, v in t.coeffs.items()})


def cmd_verify(args) -> int:
    scopes = sweeps.SCOPES if args.scope == "all" else (args.scope,)
    cfg = sweeps.SweepConfig(
        max_m=args.max_m,
        max_n=args.max_n,
        normalization=args.norm or "unit",
        point=(args.q, args.x, args.y),
        seed=args.seed,
    )
    passed = failed = 0
    for rec in sweeps.run(scopes, cfg):
        if rec["ok"]:
            passed += 1
        else:
            failed += 1
        if args.json:
            print(_dump(rec), flush=True)
        elif not rec["ok"] or args.verbose:
            params = " ".join(f"{k}={v}" for k, v in rec["params"].items())
            status = "PASS" if rec["ok"] else "FAIL"
            detail = ""
            if not rec["ok"]:
                detail = " " + _dump({k: v for k, v in rec.items() if k not in ("check", "params", "ok")})
            print(f"{status} {rec['check']} {params}{detail}", flush=True)
    summary = {"passed": passed, "failed": failed, "scopes": list(scopes)}
    if args.json:
        print(_dump({"summary": summary}))
    else:
        print(f"{passed} passed, {failed} failed ({', '.join(scopes)})")
    return 0 if failed == 0 else 1


def cmd_basis(args) -> int:
    q0, x0, y0 = args.q, args.x, args.y
    if args.swap_legs:
        x0, y0 = y0, x0
    report = basis.certify_basis(args.m, args.n, q0, x0, y0, args.dual, args.norm or "unit")
    if args.json:
        print(_dump(report.to_json()))
    else:
        name = "Lambda" if args.dual else "Delta"
        verdict = "pass" if report.criterion_pass else f"fail j={report.failing_j}"
        print(f"{name} for V_{args.m}(x) (x) V_{args.n}(y) at q={args.q}, x={args.x}, y={args.y}")
        print(f"criterion: {verdict}")
        print(f"rank: {report.rank} / {report.expected_rank} ({report.size} vectors)")
        if not report.consistent:
            print("warning: criterion and certified rank disagree", file=sys.stderr)
    return 0 if report.consistent else 1


def _show_vector(ev, args):
    value = _swap_vector(ev.value) if args.swap_legs else ev.value
    if ev.degenerate:
        print(f"warning: {ev.kind}_{ev.l} vanishes identically under the {ev.convention} convention", file=sys.stderr)
    if args.json:
        data = ev.to_json()
        data["value"] = value.to_json()
        print(_dump(data))
    else:
        print(value)


def cmd_show(args) -> int:
    p = args.params
    need = {"omega": 3, "phi": 3, "alpha": 3, "matrix": 3, "det": 3}[args.object]
    if len(p) != need:
        raise ValueError(f"show {args.object} takes {need} integers: m n l")
    m, n, l = p
    swap = (lambda s: s.swap_xy()) if args.swap_legs else (lambda s: s)
    if args.object in ("omega", "phi"):
        fn = extremal.omega if args.object == "omega" else extremal.phi
        _show_vector(fn(m, n, l, args.norm or "paper"), args)
    elif args.object == "alpha":
        a = extremal.alpha_direct(m, n, l, args.norm or "paper")
        print(_dump(a.to_json()) if args.json else canonical_string(a.value))
    elif args.object == "matrix":
        mat = basis.delta_matrix(m, n, l, args.norm or "unit")
        data = mat.to_json()
        data["rows"] = [[canonical_string(swap(v)) for v in row] for row in mat.entries]
        print(_dump(data) if args.json else json.dumps(data["rows"], indent=1))
    else:
        norm = args.norm or "unit"
        if args.json and l >= 1:
            data = basis.determinant_report(m, n, l - 1, norm).to_json()
            print(_dump(data))
        else:
            d = basis.det_exact(basis.delta_matrix(m, n, l, norm))
            print(_dump({"m": m, "n": n, "l": l, "det": canonical_string(swap(d))}) if args.json else canonical_string(swap(d)))
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--norm", choices=basis.NORMALIZATIONS, default=None, help="Omega_0 / coefficient normalization")
    common.add_argument("--q", type=_rational, default=Fraction(2))
    common.add_argument("--x", type=_rational, default=Fraction(3))
    common.add_argument("--y", type=_rational, default=Fraction(5))
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--swap-legs", action="store_true", help="evaluate the left factor at y and the right at x")

    parser = argparse.ArgumentParser(prog="qaffine", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", parents=[common], help="run verification sweeps")
    v.add_argument("scope", choices=(*sweeps.SCOPES, "all"))
    v.add_argument("--max-m", type=_positive, default=None)
    v.add_argument("--max-n", type=_positive, default=None)
    v.add_argument("-v", "--verbose", action="store_true", help="print passing records too")
    v.set_defaults(func=cmd_verify)

    b = sub.add_parser("basis", parents=[common], help="build and certify Delta (or Lambda with --dual)")
    b.add_argument("m", type=int)
    b.add_argument("n", type=int)
    b.add_argument("--dual", action="store_true")
    b.set_defaults(func=cmd_basis)

    s = sub.add_parser("show", parents=[common], help="print one object")
    s.add_argument("object", choices=("omega", "phi", "alpha", "matrix", "det"))
    s.add_argument("params", type=int, nargs="+")
    s.set_defaults(func=cmd_show)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, SpecializationError, ZeroDivisionError) as exc:
        print(f"qaffine: error: {exc}", file=sys.stderr)
        return 2
    except BrokenPipeError:
        # output piped into head or similar; silence the flush at exit
        devnull = os.open(os.devnull, os.O_WRONLY)
        os.dup2(devnull, sys.stdout.fileno())
        return 1


if __name__ == "__main__":
    sys.exit(main())
