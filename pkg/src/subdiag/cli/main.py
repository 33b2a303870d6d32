"""``subdiag`` command line.

Exit status: 0 on success, 1 when a check fails or a computation is
rejected on numerical grounds, 2 on usage errors (bad arguments, unreadable
or malformed input files).
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

from ..algebra import fk_det, phi, pnorm
from ..factor import (
    FactorizationError,
    arveson_factor,
    inner_outer,
    is_outer,
    outer_factor_scalar,
    riesz_factor,
    szego_factor,
    szego_factor_projection,
    wilson_factor,
)
from ..serialize import ElementFormatError, dumps, jsonable, read_element, write_element
from ..szego_opt import SzegoError, brute_force_infimum, szego_infimum
from .suites import SUITES, SuiteConfig, run_suite

FACTOR_METHODS = ("qr", "szego", "szego-proj", "riesz", "inner-outer", "wilson", "outer-scalar")


class UsageError(Exception):
    pass


def _exponent(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not v > 0:
        raise argparse.ArgumentTypeError(f"exponent must be positive, got {text}")
    return v


def _load(path: str):
    try:
        return read_element(path)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror or exc}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}:{exc.lineno}:{exc.colno}: malformed JSON: {exc.msg}") from None
    except ElementFormatError as exc:
        raise UsageError(f"{path}: not a valid element: {exc}") from None


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(jsonable(payload), indent=2))
    else:
        print(text)


def _fmt(d: dict) -> str:
    return "\n".join(f"{k}: {v}" for k, v in d.items())


# -- commands -----------------------------------------------------------------


def cmd_det(args) -> int:
    x = _load(args.element)
    value, degenerate = fk_det(x, with_flag=True)
    _emit(args, {"det": value, "degenerate": degenerate}, repr(value))
    return 0


def cmd_phi(args) -> int:
    y = phi(_load(args.element))
    if args.output:
        write_element(y, args.output)
    else:
        print(dumps(y))
    return 0


def cmd_norm(args) -> int:
    x = _load(args.element)
    value = pnorm(x, args.p)
    _emit(args, {"p": args.p, "norm": value}, repr(value))
    return 0


def _check_tol(args, default: float) -> float:
    return default if args.tol is None else args.tol


def cmd_factor(args) -> int:
    x = _load(args.element)
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    method = args.method
    tol = _check_tol(args, 1e-8)
    if method == "riesz":
        res = riesz_factor(x, args.q, args.r, args.eps, p=args.p, pathway=args.pathway, nodes=args.nodes)
        write_element(res.y, out / "y.json")
        write_element(res.z, out / "z.json")
        bound = res.norm_x + (res.eps if res.pathway != "outer" else 0.0)
        ok = res.reconstruction <= tol and res.product <= bound + tol
        payload = dict(res.to_dict(), bound_ok=ok)
        text = (
            f"||y||_{res.q:g} * ||z||_{res.r:g} = {res.product!r}\n"
            f"||x||_{res.p:g} + eps      = {res.norm_x + res.eps!r}\n"
            f"reconstruction = {res.reconstruction:.3e}\n"
            f"bound {'holds' if ok else 'FAILS'}; wrote {out / 'y.json'}, {out / 'z.json'}"
        )
        _emit(args, payload, text)
        return 0 if ok else 1
    if method in ("wilson", "outer-scalar"):
        fac = wilson_factor(x) if method == "wilson" else outer_factor_scalar(x)
        write_element(fac.h, out / "h.json")
        ok = fac.residual <= tol
        _emit(args, fac.to_dict(), _fmt(fac.to_dict()) + f"\nwrote {out / 'h.json'}")
        return 0 if ok else 1
    if method == "qr":
        res = arveson_factor(x)
    elif method == "szego-proj":
        res = szego_factor_projection(x)
    elif method == "szego":
        res = szego_factor(x, args.p or 2.0, args.q or 2.0, nodes=args.nodes)
    else:
        res = inner_outer(x, nodes=args.nodes)
    write_element(res.unitary, out / "u.json")
    write_element(res.analytic, out / "h.json")
    ok = res.residuals.worst() <= tol
    if res.certificate is not None:
        ok = ok and res.certificate.passed
    payload = res.to_dict()
    _emit(args, payload, _fmt(payload["residuals"]) + f"\nwrote {out / 'u.json'}, {out / 'h.json'}")
    return 0 if ok else 1


def cmd_outer_test(args) -> int:
    rep = is_outer(_load(args.element))
    _emit(args, rep.to_dict(), _fmt(rep.to_dict()))
    return 0 if rep.agree else 1


def cmd_szego_formula(args) -> int:
    w = _load(args.element)
    rep = szego_infimum(w, args.p, budget=args.budget, seed=args.seed, starts=args.starts)
    payload = rep.to_dict()
    if args.brute:
        payload["brute_force"] = brute_force_infimum(w, args.p, samples=args.brute, seed=args.seed)
    tol = _check_tol(args, 1e-4 if args.p == 2 else 1e-2)
    ok = abs(rep.relative_gap) <= tol and rep.bound_violation <= 1e-9
    payload["pass"] = ok
    _emit(args, payload, _fmt(payload))
    return 0 if ok else 1


def cmd_verify(args) -> int:
    data = {}
    if args.config:
        try:
            data = json.loads(Path(args.config).read_text())
        except OSError as exc:
            raise UsageError(f"cannot read {args.config}: {exc.strerror or exc}") from None
        except json.JSONDecodeError as exc:
            raise UsageError(f"{args.config}:{exc.lineno}:{exc.colno}: malformed JSON: {exc.msg}") from None
    for key in ("suite", "trials", "seed", "blocks", "torus_n", "degree", "quad_nodes"):
        val = getattr(args, key)
        if val is not None:
            data[key] = val
    tols = dict(data.get("tolerances", {}))
    for item in args.set_tol or []:
        name, _, value = item.partition("=")
        try:
            tols[name] = float(value)
        except ValueError:
            raise UsageError(f"bad --set-tol {item!r}; expected NAME=VALUE") from None
    data["tolerances"] = tols
    data["include_runtime"] = args.runtime
    try:
        config = SuiteConfig.from_dict(data)
    except (TypeError, ValueError) as exc:
        raise UsageError(f"invalid suite configuration: {exc}") from None
    report = run_suite(config)
    text = report.to_json()
    if args.output:
        Path(args.output).write_text(text + "\n")
    if args.json:
        print(text)
    else:
        print(report.table())
    return 0 if report.passed else 1


# -- parser --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None, help="random seed")
    common.add_argument("--tol", type=float, default=None, help="pass/fail tolerance for the command's check")
    common.add_argument("--json", action="store_true", help="print machine-readable JSON")

    parser = argparse.ArgumentParser(prog="subdiag", description="Factorization toolkit for subdiagonal algebras.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("det", parents=[common], help="Fuglede-Kadison determinant")
    p.add_argument("element")
    p.set_defaults(func=cmd_det)

    p = sub.add_parser("phi", parents=[common], help="conditional expectation onto the diagonal")
    p.add_argument("element")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_phi)

    p = sub.add_parser("norm", parents=[common], help="p-(quasi)norm")
    p.add_argument("element")
    p.add_argument("-p", type=_exponent, required=True, help="exponent in (0, inf]")
    p.set_defaults(func=cmd_norm)

    p = sub.add_parser("factor", parents=[common], help="factorizations")
    p.add_argument("method", choices=FACTOR_METHODS)
    p.add_argument("element")
    p.add_argument("--p", type=_exponent, default=None)
    p.add_argument("--q", type=_exponent, default=None)
    p.add_argument("--r", type=_exponent, default=None)
    p.add_argument("--eps", type=_exponent, default=1e-2)
    p.add_argument("--pathway", choices=("eps", "outer"), default="eps")
    p.add_argument("--nodes", type=int, default=None, help="refined torus grid size (odd)")
    p.add_argument("--out-dir", default=".")
    p.set_defaults(func=cmd_factor)

    p = sub.add_parser("outer-test", parents=[common], help="outer classification")
    p.add_argument("element")
    p.set_defaults(func=cmd_outer_test)

    p = sub.add_parser("szego-formula", parents=[common], help="numerical Szegő infimum")
    p.add_argument("element")
    p.add_argument("--p", type=_exponent, default=2.0)
    p.add_argument("--budget", type=int, default=400)
    p.add_argument("--starts", type=int, default=8)
    p.add_argument("--brute", type=int, default=0, help="also run the Monte-Carlo oracle with this many samples")
    p.set_defaults(func=cmd_szego_formula)

    p = sub.add_parser("verify", parents=[common], help="run property suites")
    p.add_argument("--suite", choices=sorted(SUITES) + ["all"], default=None)
    p.add_argument("--trials", type=int, default=None)
    p.add_argument("--blocks", type=int, nargs="+", default=None)
    p.add_argument("--torus-n", type=int, default=None)
    p.add_argument("--degree", type=int, default=None)
    p.add_argument("--quad-nodes", type=int, default=None)
    p.add_argument("--config", help="SuiteConfig JSON file")
    p.add_argument("--set-tol", action="append", metavar="NAME=VALUE", help="override a check tolerance")
    p.add_argument("--output", help="also write the JSON report here")
    p.add_argument("--runtime", action="store_true", help="include wall-clock runtime in the JSON report")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "factor" and args.method == "riesz":
        if args.q is None or args.r is None:
            parser.error("factor riesz needs --q and --r")
    if args.command == "szego-formula" and args.seed is None:
        args.seed = 0
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"subdiag: error: {exc}", file=sys.stderr)
        return 2
    except (FactorizationError, SzegoError, ValueError, ArithmeticError, RuntimeError) as exc:
        print(f"subdiag: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
