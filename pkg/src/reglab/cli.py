"""Command-line front end.

    reglab eisenstein [--N n] [--j j --l l]
    reglab periods --l n [--method series|quadrature|both]
    reglab regulator --l n
    reglab classify --family i|ii|iii|iv|v|eisenstein|custom --l n [--kappa p/q] [--g2 .. --g3 ..]
    reglab gm-connection (--g2 .. --g3 .. | --f .. --genus g)
    reglab families list

Global flags (accepted before or after the subcommand): --prec, --terms,
--tol-exp, --format json|table, --quiet.  REGLAB_PREC sets the default
precision.  Exit codes: 0 ok, 1 a computation flag was raised, 2 usage.

Polynomials are comma-separated rational coefficients, lowest degree first.
For --f the x-coefficients are separated by ';' and each one is a
t-polynomial, optionally "num|den" for a rational function.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import asdict, dataclass

from .eisenstein import DEFAULT_TERMS, coefficient_family, eisenstein_e3a, eisenstein_e3b
from .exact import Polynomial, RationalFunction, format_rational, parse_rational
from .fibration import (
    EISENSTEIN_FAMILY,
    EISENSTEIN_KAPPA,
    catalog,
    family_by_name,
    invariants,
    make_spec,
)
from .gauss_manin import (
    HyperellipticFamily,
    connection_matrix,
    reduction_type,
    weierstrass_connection,
)
from .periods import DEFAULT_PREC, max_relative_deviation, period_table
from .regulator import check_prime, reg_value

EXIT_OK, EXIT_FLAG, EXIT_USAGE = 0, 1, 2
CROSS_METHOD_TOL = 1e-9


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    prec: int = DEFAULT_PREC
    terms: int = DEFAULT_TERMS
    tol_exp: int | None = None
    format: str = "json"
    quiet: bool = False

    def __post_init__(self):
        if self.prec < 20:
            raise UsageError(f"--prec must be >= 20, got {self.prec}")
        if self.terms < 8:
            raise UsageError(f"--terms must be >= 8, got {self.terms}")
        if self.format not in ("json", "table"):
            raise UsageError(f"unknown format {self.format!r}")

    def to_json(self) -> dict:
        d = asdict(self)
        if d["tol_exp"] is None:
            d["tol_exp"] = self.prec // 2
        return d


def _default_prec() -> int:
    env = os.environ.get("REGLAB_PREC")
    if env is None:
        return DEFAULT_PREC
    try:
        return int(env)
    except ValueError:
        raise UsageError(f"REGLAB_PREC must be an integer, got {env!r}") from None


def _global_flags(parser: argparse.ArgumentParser) -> None:
    S = argparse.SUPPRESS
    parser.add_argument("--prec", type=int, default=S, help="decimal digits (default 60 or $REGLAB_PREC)")
    parser.add_argument("--terms", type=int, default=S, help="series terms N (default 64)")
    parser.add_argument("--tol-exp", type=int, default=S, dest="tol_exp", help="quadrature tolerance 10^-E (default prec/2)")
    parser.add_argument("--format", choices=("json", "table"), default=S)
    parser.add_argument("--quiet", action="store_true", default=S)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="reglab", description="Periods, regulators and Gauss-Manin connections of elliptic fibrations.")
    _global_flags(p)
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("eisenstein", help="q-expansions of E3a, E3b or the a_n(j), b_n(j) families")
    e.add_argument("--N", type=int, default=None)
    e.add_argument("--j", type=int, default=None)
    e.add_argument("--l", type=int, default=None)

    pe = sub.add_parser("periods", help="table of I(j), J(j)")
    pe.add_argument("--l", type=int, required=True)
    pe.add_argument("--method", choices=("series", "quadrature", "both"), default="series")

    r = sub.add_parser("regulator", help="regulator value and intermediate data")
    r.add_argument("--l", type=int, required=True)

    c = sub.add_parser("classify", help="fiber types and invariants")
    c.add_argument("--family", default="eisenstein")
    c.add_argument("--l", type=int, default=1)
    c.add_argument("--kappa", default=None)
    c.add_argument("--g2", default=None)
    c.add_argument("--g3", default=None)

    g = sub.add_parser("gm-connection", help="Gauss-Manin connection matrix")
    g.add_argument("--g2", default=None)
    g.add_argument("--g3", default=None)
    g.add_argument("--f", default=None)
    g.add_argument("--genus", type=int, default=None)

    f = sub.add_parser("families", help="the catalog of admissible (g2, g3)")
    f.add_argument("action", choices=("list",))

    for sp in (e, pe, r, c, g, f):
        _global_flags(sp)
    return p


def _parse_tpoly(text: str) -> Polynomial:
    try:
        return Polynomial([parse_rational(s) for s in text.split(",")], "t")
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"cannot parse polynomial {text!r}: {exc}") from None


def _parse_f(text: str) -> Polynomial:
    try:
        coeffs = [RationalFunction.parse(part.strip(), "t") for part in text.split(";")]
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"cannot parse --f {text!r}: {exc}") from None
    return Polynomial(coeffs, "x")


def _poly_json(p: Polynomial) -> list[str]:
    return [format_rational(c) for c in p.coeffs]


# ---------------------------------------------------------------------------
# commands; each returns (payload, flagged, warnings)
# ---------------------------------------------------------------------------


def cmd_eisenstein(args, cfg: RunConfig):
    N = args.N if args.N is not None else cfg.terms
    if N < 1:
        raise UsageError("--N must be >= 1")
    if args.j is None and args.l is None:
        a, b = eisenstein_e3a(N), eisenstein_e3b(N)
        payload = {
            "N": N,
            "E3a": {"offset": 0, "coefficients": [format_rational(c) for c in a.series.coefficients(0, N + 1)]},
            "E3b": {"offset": 1, "coefficients": [format_rational(c) for c in b.series.coefficients(1, N + 1)]},
        }
        return payload, False, []
    if args.j is None or args.l is None:
        raise UsageError("--j and --l must be given together")
    if args.l < 2 or not 1 <= args.j <= args.l - 1:
        raise UsageError(f"need 1 <= j <= l-1, got j={args.j}, l={args.l}")
    return coefficient_family(args.j, args.l, N).to_json(), False, []


def cmd_periods(args, cfg: RunConfig):
    if args.l < 2:
        raise UsageError("--l must be >= 2")
    warnings = []
    if args.method == "both":
        s = period_table(args.l, "series", cfg.prec, cfg.terms)
        q = period_table(args.l, "quadrature", cfg.prec, tol_exp=cfg.tol_exp)
        dev = max_relative_deviation(q, s)
        flagged = s.flagged or q.flagged or dev > CROSS_METHOD_TOL
        if dev > CROSS_METHOD_TOL:
            warnings.append(f"series and quadrature differ by {float(dev):.3g} (relative)")
        payload = {"l": args.l, "series": s.to_json(), "quadrature": q.to_json(),
                   "max_relative_deviation": f"{float(dev):.3e}"}
        tables = (s, q)
    else:
        t = period_table(args.l, args.method, cfg.prec, cfg.terms, tol_exp=cfg.tol_exp)
        payload, flagged, tables = t.to_json(), t.flagged, (t,)
    for t in tables:
        if t.flagged:
            warnings.append(f"{t.method}: error estimate {float(t.err_estimate):.3g} above target")
    return payload, flagged, warnings


def cmd_regulator(args, cfg: RunConfig):
    check_prime(args.l)
    res = reg_value(args.l, period_table(args.l, "series", cfg.prec, cfg.terms), cfg.prec)
    warnings = []
    if res.extrapolated:
        warnings.append(f"l = {args.l}: rational normalization extrapolated beyond the worked examples")
    return res.to_json(), res.flagged, warnings


def cmd_classify(args, cfg: RunConfig):
    kappa = parse_rational(args.kappa) if args.kappa is not None else EISENSTEIN_KAPPA
    if args.family == "custom":
        if args.g2 is None or args.g3 is None:
            raise UsageError("--family custom needs --g2 and --g3")
        spec = make_spec(_parse_tpoly(args.g2), _parse_tpoly(args.g3), args.l, kappa)
    else:
        try:
            entry = family_by_name(args.family)
        except KeyError as exc:
            raise UsageError(str(exc.args[0])) from None
        spec = entry.spec(args.l, kappa)
    inv = invariants(spec)
    payload = {"spec": spec.to_json(), **inv.to_json()}
    g2l, g3l = spec.substituted()
    payload["reduction_at_0_and_1"] = {str(P): str(reduction_type(g2l, g3l, P)) for P in (0, 1)}
    return payload, False, []


def cmd_gm(args, cfg: RunConfig):
    if args.f is not None:
        if args.g2 is not None or args.g3 is not None:
            raise UsageError("give either --f or --g2/--g3")
        fam = HyperellipticFamily(_parse_f(args.f), args.genus)
        conn = connection_matrix(fam)
        payload = {"genus": fam.genus, "basis": _basis_names(fam.genus), "matrix": conn.to_json()}
        return payload, False, []
    if args.g2 is None or args.g3 is None:
        raise UsageError("need --g2 and --g3, or --f")
    g2, g3 = _parse_tpoly(args.g2), _parse_tpoly(args.g3)
    conn = connection_matrix(HyperellipticFamily.weierstrass(g2, g3))
    closed = weierstrass_connection(g2, g3)
    same = conn.entries == closed.entries
    payload = {"genus": 1, "basis": _basis_names(1), "matrix": conn.to_json(), "matches_closed_form": same}
    return payload, not same, [] if same else ["generic algorithm disagrees with the closed form"]


def _basis_names(g: int) -> list[str]:
    return [f"omega_{i}" for i in range(1, g + 1)] + [f"omega_{i}*" for i in range(1, g + 1)]


def cmd_families(args, cfg: RunConfig):
    out = []
    for e in catalog() + [EISENSTEIN_FAMILY]:
        out.append({"name": e.name, "g2": _poly_json(e.g2), "g3": _poly_json(e.g3), "a": e.a, "b": e.b})
    return {"families": out}, False, []


COMMANDS = {
    "eisenstein": cmd_eisenstein,
    "periods": cmd_periods,
    "regulator": cmd_regulator,
    "classify": cmd_classify,
    "gm-connection": cmd_gm,
    "families": cmd_families,
}


def _render_table(obj, indent: int = 0) -> list[str]:
    pad = "  " * indent
    lines = []
    items = obj.items() if isinstance(obj, dict) else enumerate(obj)
    for k, v in items:
        if isinstance(v, dict) or (isinstance(v, list) and any(isinstance(x, (dict, list)) for x in v)):
            lines.append(f"{pad}{k}:")
            lines.extend(_render_table(v, indent + 1))
        elif isinstance(v, list):
            lines.append(f"{pad}{k}: " + "  ".join(str(x) for x in v))
        else:
            lines.append(f"{pad}{k}: {v}")
    return lines


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = RunConfig(
            prec=getattr(args, "prec", None) or _default_prec(),
            terms=getattr(args, "terms", DEFAULT_TERMS),
            tol_exp=getattr(args, "tol_exp", None),
            format=getattr(args, "format", "json"),
            quiet=getattr(args, "quiet", False),
        )
        payload, flagged, warnings = COMMANDS[args.command](args, cfg)
    except (UsageError, ValueError, KeyError) as exc:
        print(f"reglab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ArithmeticError as exc:
        # invalid family, out-of-range l and friends
        print(f"reglab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    out = {"command": args.command, "config": cfg.to_json(), "result": payload, "flagged": bool(flagged)}
    if cfg.format == "json":
        print(json.dumps(out, indent=2))
    else:
        print("\n".join(_render_table(out)))
    if warnings and not cfg.quiet:
        for w in warnings:
            print(f"reglab: warning: {w}", file=sys.stderr)
    return EXIT_FLAG if flagged else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
