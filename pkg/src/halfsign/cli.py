"""Command-line drivers: expand, verify, angles, signs, simulate, report.

Exit codes: 0 success, 1 invalid input, 2 computation failure, 3 a
``verify`` identity failed.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from .arith import sieve
from .characters import DirichletCharacter, RotationNumber, character_from_spec
from .densities import SCHEMA, fiber_densities, oscillation_report, synthetic_family
from .modforms import CATALOG, catalog_form
from .satotate import form_angles
from .shimura import LiftContext, build_family
from .verify import CHECKS, run_suite

EXIT_OK, EXIT_INPUT, EXIT_COMPUTE, EXIT_ACCEPT = 0, 1, 2, 3

DEFAULT_ORDER = 100001


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _phi(text: str) -> Fraction:
    try:
        phi = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"phi must be a fraction like 1/4 (meaning pi/4), got {text!r}")
    if not 0 <= phi < 1:
        raise argparse.ArgumentTypeError(f"phi must lie in [0, 1) as a multiple of pi, got {text}")
    return phi


def _odd(text: str) -> int:
    nu = int(text)
    if nu < 1 or nu % 2 == 0:
        raise argparse.ArgumentTypeError(f"nu must be a positive odd integer, got {text}")
    return nu


def _positive(text: str) -> int:
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return n


def _exponents(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"exponents must be comma-separated integers, got {text!r}")


def _character(args) -> DirichletCharacter:
    if args.modulus is None:
        if args.exponents is not None or args.char_index is not None:
            raise InputError("--exponents/--char-index need --modulus")
        return DirichletCharacter(4, [0])
    if args.exponents is None and args.char_index is None:
        raise InputError("give --exponents or --char-index together with --modulus")
    try:
        return character_from_spec(args.modulus, args.exponents, args.char_index)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def _dump_json(obj) -> str:
    try:
        return json.dumps(obj, indent=2, sort_keys=True, allow_nan=False) + "\n"
    except ValueError as exc:
        raise RuntimeError(f"non-finite number in output: {exc}") from None


def _emit(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def _form(label: str, order: int):
    if label not in CATALOG:
        raise InputError(f"unknown form {label!r}; choose from {', '.join(CATALOG)}")
    if order < 2:
        raise InputError(f"order must be >= 2, got {order}")
    return catalog_form(label, order)


def cmd_expand(args) -> int:
    F = _form(args.form, args.order)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "coefficient"])
    for n in range(1, F.order):
        w.writerow([n, str(F.coeffs[n])])
    _emit(buf.getvalue(), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.inject_fault is not None and args.inject_fault not in CHECKS:
        raise InputError(f"unknown check {args.inject_fault!r}")
    results = run_suite(args.order, args.inject_fault)
    width = max(len(r.name) for r in results)
    lines = [f"{'identity':<{width}}  result  detail"]
    for r in results:
        lines.append(f"{r.name:<{width}}  {'PASS' if r.ok else 'FAIL'}    {r.detail}")
    failed = [r.name for r in results if not r.ok]
    lines.append(f"{len(results) - len(failed)}/{len(results)} identity groups pass")
    if failed:
        lines.append("FAILED: " + ", ".join(failed))
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_ACCEPT if failed else EXIT_OK


def cmd_angles(args) -> int:
    order = args.order or args.x + 1
    if args.x >= order:
        raise InputError(f"x={args.x} needs order > x, got order {order}")
    F = _form(args.form, order)
    chi = _character(args)
    if chi.order > 2:
        raise InputError("angles of catalog forms need a character of order <= 2")
    A = form_angles(F, sieve(args.x, args.threads), None if chi.is_trivial() else chi)
    if args.csv:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["p", "fiber_num", "fiber_den", "theta"])
        for i, p in enumerate(A.primes):
            z = RotationNumber(int(A.fiber_logs[i]), A.chi_order)
            w.writerow([int(p), z.num, z.den, repr(float(A.theta[i]))])
        Path(args.csv).write_text(buf.getvalue(), encoding="utf-8")
    stats = A.stats()
    stats.update({"schema": "halfsign.angles/1", "x": args.x, "character": chi.spec})
    _emit(_dump_json(stats), args.out)
    return EXIT_OK


def _family_csv(family, phi: Fraction, path: str) -> None:
    from .densities import rotation_signs

    rot = rotation_signs(family.chi_order, family.nu, phi)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["p", "zeta", "scalar", "normalized", "sign"])
    for i, p in enumerate(family.primes):
        z = family.fiber(i)
        s = family.scalars[i]
        w.writerow([int(p), str(z), repr(s) if isinstance(s, float) else str(s),
                    repr(float(family.normalized[i])), int(family.signs[i]) * int(rot[family.fiber_logs[i]])])
    Path(path).write_text(buf.getvalue(), encoding="utf-8")


def _report(family, args) -> dict:
    rep = fiber_densities(family, args.phi).to_dict()
    phis = [args.phi] + [p for p in (Fraction(0), Fraction(1, 4), Fraction(1, 2)) if p != args.phi]
    rep["oscillation"] = oscillation_report(family, phis)
    rep["version"] = __version__
    return rep


def cmd_signs(args) -> int:
    if args.synthetic:
        return cmd_simulate(args)
    if args.form is None:
        raise InputError("signs needs --form, or --synthetic with a character")
    order = args.order or args.x + 1
    F = _form(args.form, order)
    chi = _character(args)
    try:
        ctx = LiftContext(F, chi, args.t)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    family = build_family(ctx, args.nu, sieve(args.x, args.threads))
    if args.csv:
        _family_csv(family, args.phi, args.csv)
    _emit(_dump_json(_report(family, args)), args.out)
    return EXIT_OK


def cmd_simulate(args) -> int:
    if args.modulus is None:
        raise InputError("simulate needs --modulus with --exponents or --char-index")
    chi = _character(args)
    if (args.x is None) == (args.primes is None):
        raise InputError("give exactly one of --x or --primes")
    try:
        family = synthetic_family(chi, args.k, args.t, args.nu, x=args.x, seed=args.seed, n_primes=args.primes)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    if args.csv:
        _family_csv(family, args.phi, args.csv)
    _emit(_dump_json(_report(family, args)), args.out)
    return EXIT_OK


def cmd_report(args) -> int:
    try:
        rep = json.loads(Path(args.report).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read report {args.report}: {exc}") from None
    if rep.get("schema") != SCHEMA:
        raise InputError(f"{args.report}: expected schema {SCHEMA}, got {rep.get('schema')!r}")
    g = rep["global"]
    p = rep["params"]
    lines = [
        f"mode={p.get('mode')} character={p.get('character')} (order {rep['chi_order']}) "
        f"t={p.get('t')} nu={p.get('nu')} phi={p.get('phi')}*pi",
        f"x={rep['x']} pi(x)={rep['pi_x']} excluded={rep['excluded_primes']}",
        "",
        f"{'fiber':>7} {'size':>8} {'d(fiber)':>9} {'d(>0)':>8} {'d(<0)':>8} {'Re sign':>7}",
    ]
    for f in rep["fibers"]:
        lines.append(
            f"{f['fiber']:>7} {f['n_fiber']:>8} {f['fiber_density']:>9.4f} "
            f"{f['density_pos']:>8.4f} {f['density_neg']:>8.4f} {f['rotation_sign']:>7}"
        )
    lines += [
        "",
        f"predicted per-fiber sign density 1/(2r) = {1 / (2 * rep['chi_order']):.4f}",
        f"d(P>0) = {g['density_pos']:.4f}  d(P<0) = {g['density_neg']:.4f}  "
        f"d(P!=0)/2 = {g['density_nonzero'] / 2:.4f}  predicted {g['predicted_density_pos']:.4f}",
        f"zero fibers: {', '.join(rep['zero_fibers']) or 'none'}",
    ]
    for osc in rep.get("oscillation", []):
        lines.append(
            f"phi={osc['phi']}: {osc['alternations']} sign changes, "
            f"evidence {'yes' if osc['oscillatory_evidence'] else 'no'}"
        )
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def _add_character(p):
    p.add_argument("--modulus", type=_positive, help="character modulus 4N (N odd, square-free)")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--exponents", type=_exponents, help="CRT exponents, e.g. 0,1 for mod 20")
    g.add_argument("--char-index", type=int, help="index into the enumeration of characters mod 4N")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="halfsign", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--threads", type=_positive, default=1, help="worker threads (output is identical)")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("expand", help="q-expansion of a catalog form as CSV (n, coefficient)")
    p.add_argument("--form", required=True, help=f"one of {', '.join(CATALOG)}")
    p.add_argument("--order", type=int, default=DEFAULT_ORDER, help="number of terms, q^0..q^(order-1)")
    p.add_argument("--out", help="output file (default stdout)")
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("verify", help="run the identity suite and print a pass/fail table")
    p.add_argument("--order", type=int, default=10001)
    p.add_argument("--out")
    p.add_argument("--inject-fault", help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("angles", help="Sato-Tate angles of a catalog form; stats JSON, optional CSV")
    p.add_argument("--form", required=True)
    p.add_argument("--x", type=_positive, default=100000)
    p.add_argument("--order", type=int)
    _add_character(p)
    p.add_argument("--csv", help="write per-prime angles (p, fiber_num, fiber_den, theta)")
    p.add_argument("--out")
    p.set_defaults(func=cmd_angles)

    for name, helptext in (
        ("signs", "sign densities of a(t p^(2 nu)) for a catalog form (or --synthetic)"),
        ("simulate", "synthetic experiment with Sato-Tate angles and a true character table"),
    ):
        p = sub.add_parser(name, help=helptext)
        if name == "signs":
            p.add_argument("--form")
            p.add_argument("--order", type=int)
            p.add_argument("--synthetic", action="store_true")
        _add_character(p)
        p.add_argument("--k", type=_positive, default=2, help="half-integral weight is k + 1/2 (synthetic)")
        p.add_argument("--t", type=int, default=1)
        p.add_argument("--nu", type=_odd, default=1)
        p.add_argument("--phi", type=_phi, default=Fraction(0), help="phase as a fraction of pi, e.g. 1/4")
        p.add_argument("--x", type=_positive, default=None if name == "simulate" else 100000)
        if name == "simulate":
            p.add_argument("--primes", type=_positive, help="number of good primes instead of --x")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--csv", help="per-prime dump (p, zeta, scalar, normalized, sign)")
        p.add_argument("--out")
        p.set_defaults(func=cmd_signs if name == "signs" else cmd_simulate)

    p = sub.add_parser("report", help="summarize a signs/simulate JSON report")
    p.add_argument("report")
    p.add_argument("--out")
    p.set_defaults(func=cmd_report)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "synthetic", False) and not hasattr(args, "primes"):
        args.primes = None
    try:
        return args.func(args)
    except (InputError, KeyError) as exc:
        print(f"halfsign: error: {exc.args[0] if exc.args else exc}", file=sys.stderr)
        return EXIT_INPUT
    except Exception as exc:  # noqa: BLE001
        print(f"halfsign: computation failed: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_COMPUTE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
