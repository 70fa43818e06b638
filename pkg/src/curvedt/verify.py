"""Built-in verification suites: golden tables plus property checks.

``run_suite`` executes a fixed registry of named checks and returns one
record per check.  Every comparison is exact; a check either PASSes,
FAILs with a locating detail string, or — for the single exploratory
genus-1 check, whose expected value lies outside the proven range of
the pipeline's theorems — WARNs instead of failing.

The golden constants are frozen reference data for low rank: half
Betti sequences of M(r,d) at genus 2 (plus the genus-3 rank-3 row) and
the fixed-determinant factors at genus 2 and 3.  Sequences are
prefixes: each is compared against the same number of leading computed
values.  Every golden row is independently cross-checked by the closed
rational expressions in ``closedforms``, so a transcription error here
cannot pass silently.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Sequence, Tuple

from .closedforms import (
    CLOSED_FORM_CLASSES,
    ih_closed_form_check,
    q_rank_closed_form_check,
    resolution_check,
)
from .invariants import (
    curve_epoly,
    determinant_factor,
    dim_moduli,
    hdt,
    ih_poincare,
    torsion_dt,
    zeta_series,
)
from .ring import (
    CycloDenominator,
    LaurentPoly,
    RingElem,
    dualize,
    half_lefschetz,
    monomial,
    specialize_y,
)
from .series import (
    GradedSeries,
    pleth_exp,
    pleth_log,
    series_mul,
    zero_series,
)
from .strata import certify_virtual_smallness

GOLDEN_BETTI: Dict[int, Dict[Tuple[int, int], List[int]]] = {
    2: {
        (2, 0): [1, 4, 7, 8, 8, 8],
        (2, 1): [1, 4, 7, 12, 24, 32],
        (3, 0): [1, 4, 7, 12, 25, 40, 47, 48, 49, 52, 54],
        (3, 1): [1, 4, 7, 12, 26, 48, 76, 112, 157],
        (4, 0): [1, 4, 7, 12, 26, 48, 77, 120, 181, 256, 331, 392, 435, 464,
                 486, 500, 504, 504],
        (4, 1): [1, 4, 7, 12, 26, 48, 78, 128, 211, 328, 476, 680, 963, 1292,
                 1621, 1948, 2249, 2384],
        (4, 2): [1, 4, 7, 12, 26, 48, 78, 128, 211, 332, 491, 696, 950, 1232,
                 1506, 1724, 1850, 1888],
    },
    3: {
        (3, 1): [1, 6, 16, 32, 69, 146, 272, 474, 809, 1354, 2186],
    },
}

GOLDEN_DETFACTOR: Dict[int, Dict[Tuple[int, int], List[int]]] = {
    2: {
        (2, 0): [1, 0, 1, 0],
        (2, 1): [1, 0, 1, 4],
        (3, 0): [1, 0, 1, 4, 2, 4, 2, 4, 3],
        (3, 1): [1, 0, 1, 4, 3, 8, 9, 12, 20],
        (4, 0): [1, 0, 1, 4, 3, 8, 10, 16, 22, 24, 29, 28, 31, 32, 31, 32],
        (4, 1): [1, 0, 1, 4, 3, 8, 11, 20, 30, 36, 61, 80, 103, 120, 142, 168],
        (4, 2): [1, 0, 1, 4, 3, 8, 11, 20, 30, 40, 60, 76, 96, 112, 118, 120],
    },
    3: {
        (2, 0): [1, 0, 1, 6, 1, 6, 2],
        (2, 1): [1, 0, 1, 6, 2, 6, 16],
        (3, 0): [1, 0, 1, 6, 3, 12, 19, 24, 57, 56, 88, 138, 127, 170, 156,
                 176, 179],
        (3, 1): [1, 0, 1, 6, 3, 12, 19, 24, 58, 62, 104, 170, 194, 292, 344,
                 394, 472],
        (4, 0): [1, 0, 1, 6, 3, 12, 20, 30, 60, 74, 145, 212, 306, 486, 667,
                 1018, 1365, 1888, 2610, 3352, 4397, 5408, 6636, 7862, 8852,
                 9880, 10556, 11212, 11640, 11808, 11978],
        (4, 1): [1, 0, 1, 6, 3, 12, 20, 30, 60, 74, 145, 212, 307, 492, 683,
                 1050, 1435, 2034, 2897, 3838, 5260, 6884, 9039, 11568, 14288,
                 17708, 21031, 24320, 27046, 29052, 30128],
        (4, 2): [1, 0, 1, 6, 3, 12, 20, 30, 60, 74, 145, 212, 307, 492, 684,
                 1056, 1449, 2060, 2934, 3934, 5393, 7052, 9240, 11766, 14454,
                 17562, 20472, 23256, 25437, 26696, 27216],
    },
}

# HDT of every coprime class on a genus-1 curve: -(1-u)(1-v)(uv)^(-1/2)
ELLIPTIC_COPRIME_HDT: LaurentPoly = (
    monomial(-1, -1, -1) + monomial(1, -1) + monomial(-1, 1) + monomial(1, 1, -1)
)


@dataclass(frozen=True)
class CheckResult:
    name: str
    status: str  # "PASS" | "FAIL" | "WARN"
    detail: str

    @property
    def ok(self) -> bool:
        return self.status != "FAIL"

    def as_json(self) -> dict:
        return {"name": self.name, "status": self.status, "detail": self.detail}


def _result(name: str, failures: List[str], detail: str) -> CheckResult:
    if failures:
        return CheckResult(name, "FAIL", "; ".join(failures))
    return CheckResult(name, "PASS", detail)


def check_betti_tables(rmax: int = 4) -> CheckResult:
    """Half Betti sequences against the golden prefixes."""
    failures, count = [], 0
    for g, table in GOLDEN_BETTI.items():
        for (r, d), want in sorted(table.items()):
            if r > rmax:
                continue
            got = list(ih_poincare(g, r, d).betti[: len(want)])
            count += 1
            if got != want:
                failures.append(f"g={g} M({r},{d}): {got} != {want}")
    return _result("betti-tables", failures, f"{count} golden rows matched")


def check_detfactor_tables(rmax: int = 4) -> CheckResult:
    """Fixed-determinant factors against the golden prefixes, g = 2, 3."""
    failures, count = [], 0
    for g, table in GOLDEN_DETFACTOR.items():
        for (r, d), want in sorted(table.items()):
            if r > rmax:
                continue
            res = ih_poincare(g, r, d)
            got = determinant_factor(g, res.betti)[: len(want)]
            count += 1
            if got != want:
                failures.append(f"g={g} M({r},{d}): {got} != {want}")
    return _result("detfactor-tables", failures, f"{count} golden rows matched")


def check_closed_forms(rmax: int = 4) -> CheckResult:
    """Closed rational expressions for the signed Poincare polynomials."""
    failures, count = [], 0
    for g in (2, 3):
        for r, d in CLOSED_FORM_CLASSES:
            if r > rmax:
                continue
            count += 1
            if not ih_closed_form_check(g, r, d):
                failures.append(f"g={g} M({r},{d}) closed form mismatch")
    return _result("closed-forms", failures, f"{count} identities verified")


def check_q_rank_closed_forms(rmax: int = 4) -> CheckResult:
    """Univariate closed form of the rank-r building block."""
    failures, count = [], 0
    for g in (2, 3):
        for r in range(1, rmax + 1):
            count += 1
            if not q_rank_closed_form_check(g, r):
                failures.append(f"g={g} r={r} building-block mismatch")
    return _result("q-rank-closed-forms", failures, f"{count} identities verified")


def check_resolutions(rmax: int = 4) -> CheckResult:
    """Grouped composition weights against the tabulated resolutions."""
    classes = [(1, 0), (2, 0), (2, 1), (3, 0), (3, 1), (4, 0), (4, 1), (4, 2)]
    failures, count = [], 0
    for r, d in classes:
        if r > rmax:
            continue
        count += 1
        if not resolution_check(r, d):
            failures.append(f"resolution ({r},{d}) mismatch")
    return _result("composition-resolutions", failures, f"{count} resolutions verified")


def _rand_elem(rng: random.Random) -> RingElem:
    terms = {}
    for _ in range(3):
        terms[(rng.randint(-2, 2), rng.randint(-2, 2))] = Fraction(
            rng.randint(-4, 4), rng.randint(1, 3)
        )
    den = CycloDenominator(tuple(rng.randint(1, 2) for _ in range(rng.randint(0, 1))))
    return RingElem(LaurentPoly(terms), den)


def _rand_series(rng: random.Random, rmax: int, const: RingElem) -> GradedSeries:
    return GradedSeries((const,) + tuple(_rand_elem(rng) for _ in range(rmax)))


def check_plethystic_inverse(trials: int = 20, seed: int = 2027) -> CheckResult:
    """pleth_log(pleth_exp(f)) = f and pleth_exp(pleth_log(g)) = g."""
    rng = random.Random(seed)
    failures = []
    for trial in range(trials):
        rmax = rng.randint(1, 6)
        f = _rand_series(rng, rmax, RingElem.zero())
        if pleth_log(pleth_exp(f)).coeffs != f.coeffs:
            failures.append(f"trial {trial}: Log(Exp(f)) != f")
        g = _rand_series(rng, rmax, RingElem.one())
        if pleth_exp(pleth_log(g)).coeffs != g.coeffs:
            failures.append(f"trial {trial}: Exp(Log(g)) != g")
    return _result(
        "plethystic-inverse", failures, f"{trials} random series round-tripped"
    )


def check_log_coefficients(trials: int = 3, seed: int = 911) -> CheckResult:
    """First four plethystic-Log coefficients against their closed formulas.

    With Log(1 + a1 t + a2 t^2 + ...) = b1 t + b2 t^2 + ...:
      b1 = a1
      b2 = a2 - a1^2/2 - psi2(a1)/2
      b3 = a3 - a1 a2 + a1^3/3 - psi3(a1)/3
      b4 = a4 - a1 a3 + a1^2 a2 - a2^2/2 - psi2(a2)/2 - a1^4/4 + psi2(a1)^2/4
    """
    rng = random.Random(seed)
    half, third, quarter = Fraction(1, 2), Fraction(1, 3), Fraction(1, 4)
    failures = []
    for trial in range(trials):
        a1, a2, a3, a4 = (_rand_elem(rng) for _ in range(4))
        f = GradedSeries((RingElem.one(), a1, a2, a3, a4))
        b = pleth_log(f)
        want = {
            1: a1,
            2: a2 - a1 * a1 * half - a1.adams(2) * half,
            3: a3 - a1 * a2 + a1 * a1 * a1 * third - a1.adams(3) * third,
            4: (a4 - a1 * a3 + a1 * a1 * a2 - a2 * a2 * half
                - a2.adams(2) * half - a1 * a1 * a1 * a1 * quarter
                + a1.adams(2) * a1.adams(2) * quarter),
        }
        for n, expected in want.items():
            if b[n] != expected:
                failures.append(f"trial {trial}: b{n} formula mismatch")
    return _result(
        "log-coefficient-formulas", failures, f"{trials} random assignments verified"
    )


def check_zeta_is_exp(gmax: int = 4, order: int = 6) -> CheckResult:
    """Zeta series equals Exp(E(X) t) up to the given order."""
    failures = []
    for g in range(gmax + 1):
        f = GradedSeries(
            (RingElem.zero(), RingElem.from_poly(curve_epoly(g)))
            + (RingElem.zero(),) * (order - 1)
        )
        if pleth_exp(f).coeffs != zeta_series(g, order).coeffs:
            failures.append(f"g={g}: Exp(E(X) t) != zeta series")
    return _result(
        "zeta-is-exp", failures, f"genera 0..{gmax} verified to order {order}"
    )


def check_dt_corollaries(rmax: int = 4) -> CheckResult:
    """Integrality, self-duality, positivity, palindromicity of every class.

    For r <= rmax, every residue d mod r, g in {2, 3}: HDT_{r,d} is a
    Laurent polynomial (construction already enforces it), self-dual
    under (u,v) -> (1/u,1/v); HDT(-y,-y) has non-negative integer
    coefficients; the Betti sequence is palindromic with ends 1.
    """
    failures, count = [], 0
    for g in (2, 3):
        for r in range(1, rmax + 1):
            for d in range(r):
                count += 1
                try:
                    h = hdt(g, r, d)
                except Exception as exc:  # integrality is a hard error inside
                    failures.append(f"g={g} ({r},{d}): {exc}")
                    continue
                if dualize(h) != h:
                    failures.append(f"g={g} ({r},{d}): not self-dual")
                neg = specialize_y(h).at_neg_y()
                if not all(
                    c >= 0 and c.denominator == 1 for c in neg.terms.values()
                ):
                    failures.append(f"g={g} ({r},{d}): negative HDT(-y,-y)")
                betti = ih_poincare(g, r, d).betti
                dim = dim_moduli(g, r)
                if len(betti) != 2 * dim + 1 or betti[0] != 1 or betti[-1] != 1:
                    failures.append(f"g={g} ({r},{d}): Betti ends not 1")
                if list(betti) != list(reversed(betti)):
                    failures.append(f"g={g} ({r},{d}): Betti not palindromic")
    return _result("dt-corollaries", failures, f"{count} classes verified")


def check_torsion(dmax: int = 6) -> CheckResult:
    """Torsion invariants: E(X)/L^(1/2) at d = 1, zero for d >= 2."""
    failures = []
    for g in (2, 3, 4):
        vals = torsion_dt(g, dmax)
        want1 = curve_epoly(g) * half_lefschetz(-1)
        if vals[1] != want1:
            failures.append(f"g={g}: HDT_(0,1) != E(X)/L^(1/2)")
        for d in range(2, dmax + 1):
            if not vals[d].is_zero():
                failures.append(f"g={g}: HDT_(0,{d}) != 0")
    return _result("torsion", failures, f"g in {{2,3,4}}, d <= {dmax} verified")


def check_strata(rmax: int = 6) -> CheckResult:
    """Virtual-smallness certificates over one full residue period.

    For every r <= rmax, g in {2, 3}, both bound variants, and each of
    the r degrees just above the slope threshold r(2g-2): the maximal
    stratum bound is exactly 0, all others strictly negative, and
    codimension vanishes only at the maximal type.
    """
    failures, count = [], 0
    for generic in (False, True):
        for g in (2, 3):
            for r in range(1, rmax + 1):
                base = r * (2 * g - 2) + 1
                for d in range(base, base + r):
                    count += 1
                    rep = certify_virtual_smallness(g, r, d, generic=generic)
                    if not rep.passes or not rep.in_theorem_range:
                        failures.append(
                            f"g={g} ({r},{d}) generic={generic}: {rep.verdict}"
                        )
    return _result("strata-certificates", failures, f"{count} certificates passed")


def check_elliptic() -> CheckResult:
    """Exploratory genus-1 check (WARN on mismatch, never FAIL).

    Expected: HDT_{r,d} = -(1-u)(1-v)(uv)^(-1/2) for coprime (r,d) with
    r <= 3, and 0 otherwise.  The closed composition formula is not
    proven at genus 1, so a mismatch demotes to a warning.
    """
    import warnings as _warnings

    mismatches = []
    with _warnings.catch_warnings():
        _warnings.simplefilter("ignore")
        for r in (1, 2, 3):
            for d in range(r):
                try:
                    h = hdt(1, r, d, checks="warn")
                except Exception as exc:
                    mismatches.append(f"({r},{d}): {type(exc).__name__}")
                    continue
                from math import gcd

                if gcd(r, d) == 1:
                    if h != ELLIPTIC_COPRIME_HDT:
                        mismatches.append(f"({r},{d}): not -(1-u)(1-v)(uv)^(-1/2)")
                elif not h.is_zero():
                    mismatches.append(f"({r},{d}): expected 0")
    if mismatches:
        return CheckResult(
            "elliptic-exploratory", "WARN", "; ".join(mismatches)
        )
    return CheckResult(
        "elliptic-exploratory", "PASS", "r <= 3 genus-1 values match the remark"
    )


def run_suite(rmax: int = 4) -> List[CheckResult]:
    """Run every registered check; rmax caps the rank of the heavy ones."""
    return [
        check_betti_tables(rmax),
        check_detfactor_tables(rmax),
        check_closed_forms(rmax),
        check_q_rank_closed_forms(rmax),
        check_resolutions(rmax),
        check_plethystic_inverse(),
        check_log_coefficients(),
        check_zeta_is_exp(),
        check_dt_corollaries(rmax),
        check_torsion(),
        check_strata(),
        check_elliptic(),
    ]
