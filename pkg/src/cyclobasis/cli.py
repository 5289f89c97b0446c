"""Command-line front end.

Exit codes: 0 success, 1 a solution of the tan equation (or a failed audit)
was found, 2 usage error.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

import mpmath

from .arith import euler_phi, format_rational, parse_rational
from .audit import audit_n
from .basis import build_basis, decompose_root, key_to_str
from .sines import Rho, classify_ratio
from .tan import PoleProximityError, check_identity, find_real_root, sweep


def _rho(text: str) -> Rho:
    try:
        return Rho.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"{exc}; expected p/q with 0 < p/q < 1") from exc


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def _at_least_two(text: str) -> int:
    value = _positive(text)
    if value < 2:
        raise argparse.ArgumentTypeError(f"n must be at least 2, got {value}")
    return value


def _integer(text: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None


def _exact(text: str) -> Fraction:
    # decimal literals are read exactly; p/q also accepted
    try:
        return parse_rational(text) if "/" in text else Fraction(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected an exact number like 0.35 or 7/20, got {text!r}") from exc


def _global_flags(defaults: bool) -> argparse.ArgumentParser:
    # subcommands repeat the flags with suppressed defaults so that a value
    # given before the subcommand is not overwritten
    def d(value):
        return value if defaults else argparse.SUPPRESS

    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--format", choices=("text", "json"), default=d("text"))
    p.add_argument("--jobs", type=_positive, default=d(1), help="worker processes for sweep")
    p.add_argument("--bits", type=_positive, default=d(192), help="numeric precision in bits")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _global_flags(defaults=False)
    parser = argparse.ArgumentParser(
        prog="cyclobasis", description=__doc__.splitlines()[0], parents=[_global_flags(defaults=True)]
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("basis", parents=[common], help="list the basis D_n")
    p.add_argument("n", type=_positive)

    p = sub.add_parser("decompose", parents=[common], help="coordinates of Re and i*Im of omega_n^t")
    p.add_argument("n", type=_positive)
    p.add_argument("t", type=_integer)

    p = sub.add_parser("sin-ratio", parents=[common], help="classify sin(k pi rho)/sin(m pi rho)")
    p.add_argument("rho", type=_rho)
    p.add_argument("k", type=_integer)
    p.add_argument("m", type=_integer)

    p = sub.add_parser("check", parents=[common], help="exact test of n tan(pi rho) = tan(n pi rho)")
    p.add_argument("rho", type=_rho)
    p.add_argument("n", type=_at_least_two)

    p = sub.add_parser("sweep", parents=[common], help="check all p/q, n on a grid")
    p.add_argument("--qmax", type=_positive, required=True)
    p.add_argument("--nmax", type=_at_least_two, required=True)

    p = sub.add_parser("verify-basis", parents=[common], help="audit D_n against the power basis")
    p.add_argument("--nmax", type=_positive, required=True)

    p = sub.add_parser("find-root", parents=[common], help="bisect for a real root in [a, b]")
    p.add_argument("n", type=_at_least_two)
    p.add_argument("a", type=_exact)
    p.add_argument("b", type=_exact)
    return parser


def _emit(args, payload: dict, text: str) -> None:
    if args.format == "json":
        print(json.dumps(payload, sort_keys=False))
    else:
        print(text)


def _vec_text(v) -> str:
    return " + ".join(f"({format_rational(c)})*[{key_to_str(k)}]" for k, c in v.items()) or "0"


def cmd_basis(args) -> int:
    desc = build_basis(args.n)
    keys = [key_to_str(k) for k in desc.keys]
    payload = {"n": args.n, "phi": euler_phi(args.n), "factors": [list(f) for f in desc.factorization], "keys": keys}
    _emit(args, payload, f"D_{args.n}: {len(keys)} elements (phi = {euler_phi(args.n)})\n" + "\n".join(keys))
    return 0


def cmd_decompose(args) -> int:
    re, im = decompose_root(args.n, args.t)
    payload = {"n": args.n, "t": args.t, "re": re.to_json(), "im": im.to_json()}
    _emit(args, payload, f"Re(w_{args.n}^{args.t})   = {_vec_text(re)}\ni*Im(w_{args.n}^{args.t}) = {_vec_text(im)}")
    return 0


def cmd_sin_ratio(args) -> int:
    c = classify_ratio(args.rho, args.k, args.m)
    payload = {"rho": str(args.rho), "k": args.k, "m": args.m} | c.to_json()
    _emit(args, payload, f"sin({args.k}*pi*{args.rho}) / sin({args.m}*pi*{args.rho}): {c}")
    return 0


def cmd_check(args) -> int:
    v = check_identity(args.rho, args.n)
    payload = {"rho": str(args.rho), "n": args.n} | v.to_json()
    _emit(args, payload, f"{args.n}*tan(pi*{args.rho}) = tan({args.n}*pi*{args.rho}): {v.kind}")
    return 1 if v.kind == "holds" else 0


def cmd_sweep(args) -> int:
    if args.qmax < 3:
        raise _Usage("sweep: --qmax must be at least 3")
    report = sweep(args.qmax, args.nmax, jobs=args.jobs)
    lines = [f"q <= {args.qmax}, n <= {args.nmax}: {report.total} checks"]
    lines += [f"  {k}: {c}" for k, c in report.tallies.items()]
    lines.append(f"violations: {len(report.violations)}")
    lines += [f"  p={p} q={q} n={n}" for p, q, n in report.violations]
    _emit(args, report.to_json(), "\n".join(lines))
    return 1 if report.violations else 0


def cmd_verify_basis(args) -> int:
    rows = [audit_n(n, args.bits) for n in range(1, args.nmax + 1)]
    ok = all(r.passed for r in rows)
    payload = {"nmax": args.nmax, "bits": args.bits, "rows": [r.to_json() for r in rows], "all_pass": ok}
    lines = [f"{'n':>4} {'phi':>4} {'size':>4} exact numeric indep  result"]
    for r in rows:
        lines.append(
            f"{r.n:>4} {r.phi:>4} {r.size:>4} {_yn(r.exact):>5} {_yn(r.numeric):>7} {_yn(r.independent):>5}  "
            + ("pass" if r.passed else "FAIL")
        )
    lines.append("all pass" if ok else "FAILURES")
    _emit(args, payload, "\n".join(lines))
    return 0 if ok else 1


def _yn(b: bool) -> str:
    return "yes" if b else "no"


def cmd_find_root(args) -> int:
    bits = args.bits
    try:
        root = find_real_root(args.n, args.a, args.b, bits)
    except PoleProximityError as exc:
        raise _Usage(str(exc)) from None
    payload = {"n": args.n, "a": format_rational(args.a), "b": format_rational(args.b), "bits": bits, "root": None}
    if root is None:
        _emit(args, payload, f"no certified sign change on [{args.a}, {args.b}]")
        return 0
    digits = int(bits * 0.30103)
    payload |= {
        "root": mpmath.nstr(root.rho, digits),
        "tan_residual_log2": float(mpmath.log(root.tan_residual, 2)) if root.tan_residual else None,
        "ratio_residual_log2": float(mpmath.log(root.ratio_residual, 2)) if root.ratio_residual else None,
    }
    _emit(
        args,
        payload,
        f"rho* = {payload['root']}\n"
        f"|n tan(pi rho*) - tan(n pi rho*)| = {mpmath.nstr(root.tan_residual, 5)}\n"
        f"|sin((n-1) pi rho*)/sin((n+1) pi rho*) - (n-1)/(n+1)| = {mpmath.nstr(root.ratio_residual, 5)}",
    )
    return 0


class _Usage(Exception):
    pass


COMMANDS = {
    "basis": cmd_basis,
    "decompose": cmd_decompose,
    "sin-ratio": cmd_sin_ratio,
    "check": cmd_check,
    "sweep": cmd_sweep,
    "verify-basis": cmd_verify_basis,
    "find-root": cmd_find_root,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (_Usage, ValueError) as exc:
        parser.print_usage(sys.stderr)
        print(f"{parser.prog} {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
