"""Command-line front end.

Subcommands: coeffs, check, threshold, scan, bound, multiplier, selftest.
Output is JSON (default) or CSV with full-precision decimals; exit codes are
0 on success (verdict Equivalent counts as success unless --strict), 1 for an
inconclusive verdict under --strict, 2 for usage errors, 3 for numerical
failures.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__, coeff_bounds, criterion, dirichlet, profiles, thresholds, torusmin
from .profiles import ProfileSpec

__all__ = ["main", "run_selftest"]


class CliUsageError(Exception):
    pass


def _fmt(v) -> str:
    if isinstance(v, float):
        return format(v, ".17g")
    return str(v)


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _emit_json(obj, out: str | None) -> None:
    obj = dict(obj)
    obj["version"] = __version__
    _emit(json.dumps(obj, indent=2, sort_keys=True) + "\n", out)


def _emit_csv(header, rows, out: str | None) -> None:
    lines = [",".join(header)]
    lines += [",".join(_fmt(v) for v in row) for row in rows]
    _emit("\n".join(lines) + "\n", out)


_PROFILE_PARAM_FLAG = {
    "jump": None,
    "jump_smoothed": "eps",
    "trapezoid": "alpha",
    "cubic": "beta",
    "psine": "p",
}


def _profile_from_args(args) -> ProfileSpec:
    kind = args.profile
    if kind not in _PROFILE_PARAM_FLAG:
        raise CliUsageError(f"unknown profile {kind!r}")
    given = {
        name: getattr(args, name)
        for name in ("eps", "alpha", "beta", "p")
        if getattr(args, name, None) is not None
    }
    wanted = _PROFILE_PARAM_FLAG[kind]
    if wanted is None:
        if given:
            raise CliUsageError("profile 'jump' takes no parameter")
        return profiles.jump()
    if set(given) != {wanted}:
        raise CliUsageError(f"profile {kind!r} requires exactly --{wanted}")
    try:
        return ProfileSpec(kind, given[wanted])
    except ValueError as exc:
        raise CliUsageError(str(exc)) from None


def _parse_support(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(tok) for tok in text.split(","))
    except ValueError:
        raise CliUsageError(f"bad support list {text!r}") from None


def _cmd_coeffs(args) -> int:
    spec = _profile_from_args(args)
    series = profiles.CoefficientSeries(spec)
    vals = series.values_upto(args.jmax)
    try:
        env = profiles.envelope_values(spec, list(range(1, args.jmax + 1)))
    except ValueError:
        env = None
    header = ["j", "coeff"] + (["envelope"] if env is not None else [])
    rows = []
    for i in range(args.jmax):
        row = [i + 1, float(vals[i])]
        if env is not None:
            row.append(float(env[i]))
        rows.append(row)
    if args.format == "json":
        _emit_json({"profile": spec.label(), "rows": [dict(zip(header, r)) for r in rows]}, args.out)
    else:
        _emit_csv(header, rows, args.out)
    return 0


def _cmd_check(args) -> int:
    spec = _profile_from_args(args)
    support = _parse_support(args.support)
    report = criterion.check_multi_term(
        spec, support, args.k,
        grid_n=args.grid_n, refine_tol=args.tol, jobs=args.jobs,
    )
    _emit_json(report.to_dict(), args.out)
    if args.strict and report.verdict != criterion.EQUIVALENT:
        return 1
    return 0


def _cmd_threshold(args) -> int:
    try:
        rec = thresholds.recipe(args.name)
    except KeyError as exc:
        raise CliUsageError(str(exc)) from None
    if args.tol is not None:
        rec = thresholds.ThresholdRecipe(
            rec.name, rec.margin, rec.bracket, args.tol, rec.description, rec.params
        )
    value = thresholds.solve(rec)
    payload = {
        "name": rec.name,
        "value": value,
        "bracket": list(rec.bracket),
        "tol": rec.tol,
        "description": rec.description,
    }
    payload.update(rec.params)
    _emit_json(payload, args.out)
    return 0


def _cmd_scan(args) -> int:
    try:
        header, rows = thresholds.figure_table(args.figure, args.n)
    except KeyError as exc:
        raise CliUsageError(str(exc)) from None
    if args.format == "json":
        _emit_json({"figure": args.figure, "rows": [dict(zip(header, r)) for r in rows]}, args.out)
    else:
        _emit_csv(header, rows, args.out)
    return 0


def _parse_counts(k: int, text: str) -> tuple[tuple[int, ...], tuple[int, ...]]:
    vals = [int(t) for t in text.split(",")]
    if k % 4 == 3:
        j = (k + 1) // 4
        need = 2 * j
    else:
        j = (k + 3) // 4
        need = 2 * j - 1
    if len(vals) != need:
        raise CliUsageError(
            f"order {k} needs {need} counts interleaved as m1-,m1+,m2-,m2+,..."
        )
    return tuple(vals[0::2]), tuple(vals[1::2])


def _cmd_bound(args) -> int:
    if args.table:
        rows = {"k3": (3, coeff_bounds.K3_TABLE_ROWS), "k9": (9, coeff_bounds.K9_TABLE_ROWS)}
        k, combos = rows[args.table]
        results = [
            coeff_bounds.interval_bound(k, lam, cm, cp, n_scan=args.scan_n)
            for lam, cm, cp in combos
        ]
        _emit_json({"table": args.table, "rows": results}, args.out)
        return 0
    if args.k is None or args.p is None or args.counts is None:
        raise CliUsageError("bound requires --table or all of --k, --p, --counts")
    cm, cp = _parse_counts(args.k, args.counts)
    result = coeff_bounds.lower_bound_spk(args.k, args.p, cm, cp, args.placement)
    payload = result.to_dict()
    payload["coefficient"] = profiles.coeff(profiles.psine(args.p), args.k)
    _emit_json(payload, args.out)
    return 0


def _cmd_multiplier(args) -> int:
    spec = _profile_from_args(args)
    z = complex(args.z_re, args.z_im)
    value, tail = dirichlet.eval_multiplier_truncated(spec, z, args.jmax)
    payload = {
        "profile": spec.label(),
        "z_re": z.real,
        "z_im": z.imag,
        "jmax": args.jmax,
        "value_re": value.real,
        "value_im": value.imag,
        "tail_bound": tail,
    }
    if spec.kind == "jump_smoothed" and spec.param > 0.0 and z.imag == 0.0 and z.real > -spec.param:
        payload["closed_form"] = dirichlet.jump_smoothed_multiplier(spec.param, z.real).real
    _emit_json(payload, args.out)
    return 0


def run_selftest() -> list[dict]:
    """Fast subset of the acceptance checks; failures are report content."""
    import math

    items: list[dict] = []

    def record(name: str, ok: bool, detail: str) -> None:
        items.append({"name": name, "ok": bool(ok), "detail": detail})

    val = thresholds.solve(thresholds.recipe("alpha0"))
    ref = math.asin(math.pi ** 2 / 8.0 - 1.0) / math.pi
    record("alpha0-closed-form", abs(val - ref) < 1e-8, f"{val:.9f} vs {ref:.9f}")

    s1 = profiles.coeff(profiles.psine(2.0), 1)
    s3 = profiles.coeff(profiles.psine(2.0), 3)
    record(
        "psine-p2-degeneracy",
        abs(s1 - 1.0) < 1e-10 and abs(s3) < 1e-10,
        f"s(1)={s1:.3e}, s(3)={s3:.3e}",
    )

    sup = dirichlet.build_support([1, 3, 9])
    ok = True
    detail = []
    for c in ((1.0, -0.5, 0.1), (1.0, 0.1, 0.5)):
        poly = dirichlet.DirichletPolynomial.from_map(sup, dict(zip((1, 3, 9), c)))
        grid = torusmin.min_modulus(poly, grid_n=4096).mu
        closed = torusmin.min_modulus_three_term(*c)
        ok = ok and abs(grid - closed) < 1e-6
        detail.append(f"{closed:.6f}/{grid:.6f}")
    record("three-term-minimum-oracle", ok, " ".join(detail))

    beta0 = thresholds.solve(thresholds.recipe("beta0"))
    record("beta0-regression", abs(beta0 - 0.159059) < 1e-4, f"{beta0:.6f}")

    lhs, rhs = profiles.trapezoid_sum_identity(0.25)
    record("trapezoid-sum-identity", abs(lhs - rhs) < 1e-8, f"|lhs-rhs|={abs(lhs-rhs):.2e}")
    return items


def _cmd_selftest(args) -> int:
    items = run_selftest()
    for item in items:
        status = "PASS" if item["ok"] else "FAIL"
        print(f"[{status}] {item['name']}: {item['detail']}")
    failed = sum(not item["ok"] for item in items)
    print(f"{len(items) - failed}/{len(items)} selftest items passed")
    if args.strict and failed:
        return 1
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dilbasis",
        description="Riesz-basis criteria for families of dilated periodic functions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_profile_flags(p: argparse.ArgumentParser) -> None:
        p.add_argument("--profile", required=True,
                       choices=list(_PROFILE_PARAM_FLAG))
        p.add_argument("--alpha", type=float)
        p.add_argument("--beta", type=float)
        p.add_argument("--eps", type=float)
        p.add_argument("--p", type=float)

    def add_output_flags(p: argparse.ArgumentParser, default_format: str) -> None:
        p.add_argument("--format", choices=["csv", "json"], default=default_format)
        p.add_argument("--out", help="output path (stdout if omitted)")

    p = sub.add_parser("coeffs", help="dump Fourier coefficients")
    add_profile_flags(p)
    p.add_argument("--jmax", type=int, default=51)
    add_output_flags(p, "json")
    p.set_defaults(fn=_cmd_coeffs)

    p = sub.add_parser("check", help="run the multi-term criterion")
    add_profile_flags(p)
    p.add_argument("--support", default="1", help="comma-separated indices incl. 1")
    p.add_argument("--k", type=int, default=0)
    p.add_argument("--grid-n", type=int, default=None, dest="grid_n")
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--strict", action="store_true")
    p.add_argument("--out")
    p.set_defaults(fn=_cmd_check)

    p = sub.add_parser("threshold", help="solve a named threshold")
    p.add_argument("--name", required=True)
    p.add_argument("--tol", type=float, default=None)
    p.add_argument("--out")
    p.set_defaults(fn=_cmd_threshold)

    p = sub.add_parser("scan", help="emit figure scan data")
    p.add_argument("--figure", required=True, choices=sorted(thresholds.FIGURES))
    p.add_argument("--n", type=int, default=None)
    add_output_flags(p, "csv")
    p.set_defaults(fn=_cmd_scan)

    p = sub.add_parser("bound", help="coefficient lower bounds")
    p.add_argument("--k", type=int)
    p.add_argument("--p", type=float)
    p.add_argument("--counts", help="interleaved counts m1-,m1+,m2-,...")
    p.add_argument("--placement", choices=list(coeff_bounds.PLACEMENTS),
                   default="uniform-u")
    p.add_argument("--table", choices=["k3", "k9"])
    p.add_argument("--scan-n", type=int, default=200, dest="scan_n")
    p.add_argument("--out")
    p.set_defaults(fn=_cmd_bound)

    p = sub.add_parser("multiplier", help="truncated multiplier evaluation")
    add_profile_flags(p)
    p.add_argument("--z-re", type=float, required=True, dest="z_re")
    p.add_argument("--z-im", type=float, default=0.0, dest="z_im")
    p.add_argument("--jmax", type=int, default=10000)
    p.add_argument("--out")
    p.set_defaults(fn=_cmd_multiplier)

    p = sub.add_parser("selftest", help="fast built-in checks")
    p.add_argument("--strict", action="store_true")
    p.set_defaults(fn=_cmd_selftest)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except CliUsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ArithmeticError, thresholds.BracketError, thresholds.IterationLimitError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    raise SystemExit(main())
