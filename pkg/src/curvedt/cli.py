"""Command-line front end.

Subcommands:

* ``betti`` — Betti numbers of intersection cohomology of M(r,d);
* ``hdt`` — the Donaldson-Thomas invariant HDT_{r,d} (rank 0 with
  d >= 1 switches to the torsion-sheaf invariants);
* ``detfactor`` — the fixed-determinant factor of the Poincare
  polynomial (quotient by (1-y)^(2g));
* ``strata`` — the Luna-stratum virtual-smallness certificate;
* ``verify`` — the built-in golden-table and property suites.

A class is selected either by ``-r/-d`` or by ``--slope p/q --rmax N``
(all ranks up to N along one slope).  Output formats: a human table
(default), canonical JSON (sorted keys, two-space indent, no floats —
re-serializing parsed output is byte-identical), or CSV.

Exit codes: 0 success; 1 verification failure (a consistency assertion
tripped, a division left a remainder, a certificate or suite failed);
2 usage error.

Exact numbers only: integers print as integers, rationals as p/q, and
half-integer exponents as ^(1/2), ^(-3/2), and so on.  Polynomials
print with terms sorted by total degree, then by u-degree (u before v).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .invariants import (
    VerificationError,
    determinant_factor,
    dim_moduli,
    ih_poincare,
    torsion_dt,
)
from .ring import LaurentPoly, NotDivisibleError, UniPoly, specialize_y
from .strata import certify_virtual_smallness
from .verify import run_suite

__all__ = ["main", "RunConfig", "ReportTable"]


@dataclass(frozen=True)
class RunConfig:
    """Validated per-command options."""

    genus: int
    rank: Optional[int]
    degree: Optional[int]
    slope: Optional[Fraction]
    rmax: Optional[int]
    fmt: str  # "table" | "json" | "csv"
    half: bool
    force_genus: bool
    generic: bool
    checks: str  # "on" | "warn" | "off"


@dataclass(frozen=True)
class ReportTable:
    """Aligned text table; every cell an exact-number string."""

    headers: Tuple[str, ...]
    rows: Tuple[Tuple[str, ...], ...]

    def render(self) -> str:
        widths = [len(h) for h in self.headers]
        for row in self.rows:
            for i, cell in enumerate(row):
                widths[i] = max(widths[i], len(cell))
        lines = [
            "  ".join(h.ljust(w) for h, w in zip(self.headers, widths)).rstrip()
        ]
        for row in self.rows:
            lines.append(
                "  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip()
            )
        return "\n".join(lines)

    def render_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(self.headers)
        writer.writerows(self.rows)
        return buf.getvalue().rstrip("\n")


def _canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


def _exp_str(e2: int) -> str:
    """Exponent markup for a doubled exponent e2 (the power is e2/2)."""
    if e2 == 2:
        return ""
    if e2 % 2 == 0:
        e = e2 // 2
        return f"^{e}" if e >= 0 else f"^({e})"
    return f"^({e2}/2)"


def _coeff_str(c: Fraction) -> str:
    return str(c) if c.denominator == 1 else f"({c})"


def _join_terms(terms: List[Tuple[Fraction, str]]) -> str:
    """Assemble [(coefficient, monomial-string), ...] into a sum."""
    if not terms:
        return "0"
    parts: List[str] = []
    for i, (c, mono) in enumerate(terms):
        mag = abs(c)
        if mono:
            body = mono if mag == 1 else _coeff_str(mag) + mono
        else:
            body = _coeff_str(mag)
        if i == 0:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append(("- " if c < 0 else "+ ") + body)
    return " ".join(parts)


def render_poly(p: LaurentPoly) -> str:
    """Human form of a two-variable Laurent polynomial in u, v."""
    terms = []
    for (eu2, ev2) in sorted(p.terms, key=lambda m: (m[0] + m[1], m[0], m[1])):
        c = p.terms[(eu2, ev2)]
        mono = ""
        if eu2:
            mono += "u" + _exp_str(eu2)
        if ev2:
            mono += "v" + _exp_str(ev2)
        terms.append((c, mono))
    return _join_terms(terms)


def render_uni(p: UniPoly) -> str:
    """Human form of a one-variable Laurent polynomial in y."""
    terms = []
    for e2 in sorted(p.terms):
        mono = "y" + _exp_str(e2) if e2 else ""
        terms.append((p.terms[e2], mono))
    return _join_terms(terms)


def _parse_slope(text: str) -> Fraction:
    try:
        if "/" in text:
            num, den = text.split("/", 1)
            return Fraction(int(num), int(den))
        return Fraction(int(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"invalid slope {text!r}: {exc}")


def _add_class_args(parser: argparse.ArgumentParser, torsion_ok: bool = False):
    parser.add_argument("-g", "--genus", type=int, required=True)
    parser.add_argument(
        "-r",
        "--rank",
        type=int,
        help="rank of the class" + (" (0 selects torsion mode)" if torsion_ok else ""),
    )
    parser.add_argument("-d", "--degree", type=int, help="degree of the class")
    parser.add_argument(
        "--slope",
        type=_parse_slope,
        help="slope p/q; with --rmax, runs every rank q, 2q, ... up to N",
    )
    parser.add_argument("--rmax", type=int, help="largest rank in slope mode")
    parser.add_argument(
        "--format",
        dest="fmt",
        choices=("table", "json", "csv"),
        default="table",
    )
    parser.add_argument(
        "--force-genus",
        action="store_true",
        help="allow genus < 2 (consistency checks downgrade to warnings)",
    )
    parser.add_argument(
        "--checks",
        choices=("on", "warn", "off"),
        default="on",
        help="consistency-assertion mode (default: on)",
    )


def _config(args: argparse.Namespace, parser: argparse.ArgumentParser) -> RunConfig:
    slope_mode = args.slope is not None or args.rmax is not None
    class_mode = args.rank is not None or args.degree is not None
    if slope_mode and class_mode:
        parser.error("give either -r/-d or --slope/--rmax, not both")
    if slope_mode and (args.slope is None or args.rmax is None):
        parser.error("slope mode needs both --slope and --rmax")
    if not slope_mode and (args.rank is None or args.degree is None):
        parser.error("give -r and -d, or --slope and --rmax")
    if slope_mode and args.rmax < args.slope.denominator:
        parser.error(
            f"--rmax {args.rmax} is below the slope denominator "
            f"{args.slope.denominator}; no class has that slope"
        )
    if args.genus < 2 and not args.force_genus:
        parser.error(
            f"genus {args.genus} is below 2; pass --force-genus for exploratory runs"
        )
    checks = args.checks
    if args.force_genus and args.genus < 2 and checks == "on":
        checks = "warn"
    return RunConfig(
        genus=args.genus,
        rank=args.rank,
        degree=args.degree,
        slope=args.slope,
        rmax=args.rmax,
        fmt=args.fmt,
        half=getattr(args, "half", False),
        force_genus=args.force_genus,
        generic=getattr(args, "generic_bound", False),
        checks=checks,
    )


def _classes(cfg: RunConfig) -> List[Tuple[int, int]]:
    if cfg.slope is not None:
        q = cfg.slope.denominator
        return [
            (r, r * cfg.slope.numerator // q)
            for r in range(q, cfg.rmax + 1, q)
        ]
    return [(cfg.rank, cfg.degree)]


def _emit(text: str) -> None:
    print(text)


def cmd_betti(cfg: RunConfig) -> int:
    results = [ih_poincare(cfg.genus, r, d, checks=cfg.checks) for r, d in _classes(cfg)]
    if cfg.fmt == "json":
        payload = [res.as_json() for res in results]
        _emit(_canonical_json(payload[0] if cfg.slope is None else payload))
        return 0
    blocks = []
    for res in results:
        shown = res.betti[: res.dim + 1] if cfg.half else res.betti
        if cfg.fmt == "csv":
            table = ReportTable(
                ("k", "b_k"), tuple((str(k), str(b)) for k, b in enumerate(shown))
            )
            blocks.append(table.render_csv())
        else:
            label = "half Betti" if cfg.half else "Betti"
            blocks.append(
                f"genus={res.genus} rank={res.rank} degree={res.degree} dim={res.dim}\n"
                f"{label}: " + ", ".join(str(b) for b in shown)
            )
    _emit("\n\n".join(blocks))
    return 0


def cmd_hdt(cfg: RunConfig) -> int:
    blocks, payloads = [], []
    for r, d in _classes(cfg):
        if r == 0:
            if d < 1:
                raise VerificationError("torsion mode needs degree >= 1")
            h = torsion_dt(cfg.genus, d, checks=cfg.checks)[d]
            payloads.append(
                {"genus": cfg.genus, "rank": 0, "degree": d, "hdt": h.records()}
            )
            blocks.append(
                f"genus={cfg.genus} rank=0 degree={d} (torsion)\nHDT = {render_poly(h)}"
            )
            table_rows = h.records()
        else:
            res = ih_poincare(cfg.genus, r, d, checks=cfg.checks)
            payloads.append(res.as_json())
            neg = specialize_y(res.hdt).at_neg_y()
            blocks.append(
                f"genus={res.genus} rank={res.rank} degree={res.degree} dim={res.dim}\n"
                f"HDT = {render_poly(res.hdt)}\n"
                f"HDT(-y,-y) = {render_uni(neg)}"
            )
            table_rows = res.hdt.records()
        if cfg.fmt == "csv":
            table = ReportTable(
                ("eu2", "ev2", "num", "den"),
                tuple(
                    (str(t["eu2"]), str(t["ev2"]), str(t["num"]), str(t["den"]))
                    for t in table_rows
                ),
            )
            blocks[-1] = table.render_csv()
    if cfg.fmt == "json":
        _emit(_canonical_json(payloads[0] if cfg.slope is None else payloads))
    else:
        _emit("\n\n".join(blocks))
    return 0


def cmd_detfactor(cfg: RunConfig) -> int:
    blocks, payloads = [], []
    for r, d in _classes(cfg):
        res = ih_poincare(cfg.genus, r, d, checks=cfg.checks)
        coeffs = determinant_factor(cfg.genus, res.betti)
        payloads.append(
            {"genus": cfg.genus, "rank": r, "degree": d, "detfactor": coeffs}
        )
        shown = coeffs[: len(coeffs) // 2 + 1] if cfg.half else coeffs
        if cfg.fmt == "csv":
            table = ReportTable(
                ("k", "c_k"), tuple((str(k), str(c)) for k, c in enumerate(shown))
            )
            blocks.append(table.render_csv())
        else:
            label = "half factor" if cfg.half else "factor"
            blocks.append(
                f"genus={cfg.genus} rank={r} degree={d}\n"
                f"{label}: " + ", ".join(str(c) for c in shown)
            )
    if cfg.fmt == "json":
        _emit(_canonical_json(payloads[0] if cfg.slope is None else payloads))
    else:
        _emit("\n\n".join(blocks))
    return 0


def cmd_strata(cfg: RunConfig) -> int:
    reports = []
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        for r, d in _classes(cfg):
            reports.append(
                certify_virtual_smallness(cfg.genus, r, d, generic=cfg.generic)
            )
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    if cfg.fmt == "json":
        payload = [rep.as_json() for rep in reports]
        _emit(_canonical_json(payload[0] if cfg.slope is None else payload))
    else:
        blocks = []
        for rep in reports:
            table = ReportTable(
                ("parts", "codim", "bound", "maximal", "pass"),
                tuple(
                    (
                        rec.stratum.label(),
                        str(rec.codim),
                        str(rec.bound),
                        "yes" if rec.is_maximal else "no",
                        "yes" if rec.passes else "no",
                    )
                    for rec in rep.records
                ),
            )
            body = table.render_csv() if cfg.fmt == "csv" else table.render()
            if cfg.fmt == "csv":
                blocks.append(body)
            else:
                blocks.append(
                    f"genus={rep.genus} rank={rep.rank} degree={rep.degree} "
                    f"d0={rep.d0} in-theorem-range={'yes' if rep.in_theorem_range else 'no'}"
                    f"{' (generic bound)' if rep.generic else ''}\n"
                    f"{body}\nverdict: {rep.verdict}"
                )
        _emit("\n\n".join(blocks))
    return 0 if all(rep.passes for rep in reports) else 1


def cmd_verify(args: argparse.Namespace) -> int:
    rmax = 3 if args.quick else 4
    results = run_suite(rmax=rmax)
    fmt = "json" if args.json else args.fmt
    if fmt == "json":
        payload = {
            "checks": [res.as_json() for res in results],
            "rmax": rmax,
            "verdict": "PASS" if all(res.ok for res in results) else "FAIL",
        }
        _emit(_canonical_json(payload))
    else:
        table = ReportTable(
            ("check", "status", "detail"),
            tuple((res.name, res.status, res.detail) for res in results),
        )
        body = table.render_csv() if fmt == "csv" else table.render()
        verdict = "PASS" if all(res.ok for res in results) else "FAIL"
        _emit(body + ("" if fmt == "csv" else f"\nverdict: {verdict}"))
    return 0 if all(res.ok for res in results) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="curvedt",
        description=(
            "Exact Donaldson-Thomas invariants and intersection-cohomology "
            "Betti numbers of moduli of semistable bundles on a smooth "
            "projective curve"
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_betti = sub.add_parser(
        "betti", help="Betti numbers of IH*(M(r,d))"
    )
    _add_class_args(p_betti)
    half = p_betti.add_mutually_exclusive_group()
    half.add_argument(
        "--half", action="store_true", help="print b_0..b_dim only"
    )
    half.add_argument(
        "--full",
        dest="half",
        action="store_false",
        help="print the whole palindrome (default)",
    )
    p_betti.set_defaults(func=lambda a, p: cmd_betti(_config(a, p)))

    p_hdt = sub.add_parser("hdt", help="Donaldson-Thomas invariant HDT_{r,d}")
    _add_class_args(p_hdt, torsion_ok=True)
    p_hdt.set_defaults(func=lambda a, p: cmd_hdt(_config(a, p)))

    p_det = sub.add_parser(
        "detfactor",
        help="fixed-determinant factor: Poincare polynomial over (1-y)^(2g)",
    )
    _add_class_args(p_det)
    half = p_det.add_mutually_exclusive_group()
    half.add_argument("--half", action="store_true", help="print the first half only")
    half.add_argument(
        "--full", dest="half", action="store_false", help="print everything (default)"
    )
    p_det.set_defaults(func=lambda a, p: cmd_detfactor(_config(a, p)))

    p_strata = sub.add_parser(
        "strata", help="Luna-stratum virtual-smallness certificate"
    )
    _add_class_args(p_strata)
    p_strata.add_argument(
        "--generic-bound",
        dest="generic_bound",
        action="store_true",
        help="use the generic quiver estimate instead of the curve Euler form",
    )
    p_strata.set_defaults(func=lambda a, p: cmd_strata(_config(a, p)))

    p_verify = sub.add_parser("verify", help="run the built-in check suites")
    p_verify.add_argument(
        "--quick", action="store_true", help="cap golden/property checks at rank 3"
    )
    p_verify.add_argument(
        "--json", action="store_true", help="shorthand for --format json"
    )
    p_verify.add_argument(
        "--format", dest="fmt", choices=("table", "json", "csv"), default="table"
    )
    p_verify.set_defaults(func=lambda a, p: cmd_verify(a))

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, parser)
    except (VerificationError, NotDivisibleError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
