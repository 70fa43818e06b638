"""Donaldson-Thomas invariants of a curve and Betti numbers of bundle moduli.

For a smooth projective curve of genus g the computation chains through:

1. the motivic zeta function Z(t) = (1-ut)^g (1-vt)^g / ((1-t)(1-Lt)),
   evaluated at integer powers of L;
2. the rank-r building block
   Q_r = L^((1-g) r^2 / 2) (1-u)^g (1-v)^g / (L-1) * prod_{i<r} Z(L^i),
   the motive of the stack of all rank-r bundles (any degree twist);
3. the semistable class Q_{r,d}: a sum over the 2^(r-1) compositions of
   r whose L-exponents are fractional parts of slope differences -- the
   closed solution of the slope-filtration recursion;
4. HDT_{r,d}: the t^r coefficient of (L^(1/2) - L^(-1/2)) Log(Q_tau),
   where Q_tau collects all Q_{r,d} of one slope tau = d/r; the result
   must clear every denominator factor, i.e. be an honest Laurent
   polynomial in u, v and (uv)^(-1/2);
5. Betti numbers: specialize u = v = y, shift by y^dim with sign
   (-1)^dim (dim = (g-1)r^2 + 1), then flip y -> -y.  The coefficients
   are the intersection-cohomology Betti numbers of the moduli space
   M(r,d) of semistable bundles, Poincare-dual and starting at 1.

Everything is exact.  The always-on consistency checks (integrality,
self-duality, non-negativity, palindromicity) can be downgraded to
warnings with checks="warn" for exploratory genus values.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Dict, Iterator, List, Sequence, Tuple

from .ring import (
    CycloDenominator,
    LaurentPoly,
    RingElem,
    half_lefschetz,
    lefschetz,
    monomial,
    ring_sum,
    specialize_y,
)
from .series import GradedSeries, pleth_exp, pleth_log, series


class VerificationError(AssertionError):
    """A structural consistency check of the computation failed."""


def _ensure(ok: bool, message: str, checks: str) -> None:
    if ok or checks == "off":
        return
    if checks == "warn":
        warnings.warn(message, stacklevel=3)
    else:
        raise VerificationError(message)


def dim_moduli(g: int, r: int) -> int:
    """Complex dimension of M(r,d): (g-1) r^2 + 1."""
    return (g - 1) * r * r + 1


def curve_epoly(g: int) -> LaurentPoly:
    """Hodge-Euler polynomial of the curve itself: 1 - gu - gv + uv."""
    return LaurentPoly({(0, 0): 1, (2, 0): -g, (0, 2): -g, (2, 2): 1})


def _kappa() -> LaurentPoly:
    """L^(1/2) - L^(-1/2) = (uv)^(-1/2) - (uv)^(1/2)."""
    return half_lefschetz(1) - half_lefschetz(-1)


def zeta_series(g: int, rmax: int) -> GradedSeries:
    """Z(t) = (1-ut)^g (1-vt)^g / ((1-t)(1-Lt)), truncated at t^rmax."""
    coeffs: List[LaurentPoly] = []
    for j in range(rmax + 1):
        terms = {}
        for a in range(max(0, j - g), min(g, j) + 1):
            b = j - a
            c = comb(g, a) * comb(g, b) * (-1 if j % 2 else 1)
            terms[(2 * a, 2 * b)] = c
        coeffs.append(LaurentPoly(terms))
    # divide by (1 - t): running sum
    for j in range(1, rmax + 1):
        coeffs[j] = coeffs[j] + coeffs[j - 1]
    # divide by (1 - Lt): running L-weighted sum
    for j in range(1, rmax + 1):
        coeffs[j] = coeffs[j] + coeffs[j - 1] * lefschetz(1)
    return series(RingElem.from_poly(p) for p in coeffs)


def zeta_at_lefschetz(g: int, i: int) -> RingElem:
    """Z(L^i) = (1-uL^i)^g (1-vL^i)^g / ((1-L^i)(1-L^(i+1)))."""
    one = LaurentPoly.one()
    a = (one - monomial(2 + 2 * i, 2 * i)) ** g
    b = (one - monomial(2 * i, 2 + 2 * i)) ** g
    return RingElem(a * b, CycloDenominator.of(i, i + 1))


@lru_cache(maxsize=None)
def q_rank(g: int, r: int) -> RingElem:
    """The rank-r building block Q_r (degree-independent)."""
    if r < 1:
        raise ValueError("Q_r is defined for r >= 1")
    one = LaurentPoly.one()
    num = half_lefschetz((1 - g) * r * r) * (one - monomial(2, 0)) ** g * (
        one - monomial(0, 2)
    ) ** g
    # 1/(L-1) = -1/(1-L)
    out = RingElem(-num, CycloDenominator.of(1))
    for i in range(1, r):
        out = out * zeta_at_lefschetz(g, i)
    return out


def compositions(r: int) -> Iterator[Tuple[int, ...]]:
    """All 2^(r-1) ordered sequences of positive integers summing to r."""
    if r < 1:
        raise ValueError("compositions of r >= 1 only")

    def rec(remaining: int, prefix: Tuple[int, ...]) -> Iterator[Tuple[int, ...]]:
        if remaining == 0:
            yield prefix
            return
        for first in range(1, remaining + 1):
            yield from rec(remaining - first, prefix + (first,))

    yield from rec(r, ())


def composition_weight(comp: Tuple[int, ...], d: int) -> RingElem:
    """prod_i L^((r_i + r_{i+1}) {s_i d / r}) / (1 - L^(r_i + r_{i+1})).

    s_i is the i-th partial sum of the composition and {x} the fractional
    part with floor toward minus infinity.  The accumulated L-exponent is
    kept as an exact Fraction and must land in (1/2) Z.
    """
    r = sum(comp)
    exponent = Fraction(0)
    dens: List[int] = []
    s = 0
    for i in range(len(comp) - 1):
        s += comp[i]
        exponent += (comp[i] + comp[i + 1]) * Fraction((s * d) % r, r)
        dens.append(comp[i] + comp[i + 1])
    doubled = 2 * exponent
    if doubled.denominator != 1:
        raise VerificationError(
            f"composition {comp}, degree {d}: L-exponent {exponent} is not half-integral"
        )
    return RingElem(half_lefschetz(int(doubled)), CycloDenominator(tuple(dens)))


def composition_prefactors(r: int, d: int) -> Dict[Tuple[int, ...], RingElem]:
    """Weights summed over compositions with the same multiset of parts.

    Keys are sorted part tuples; the values are genus-independent.
    """
    groups: Dict[Tuple[int, ...], List[RingElem]] = {}
    for comp in compositions(r):
        groups.setdefault(tuple(sorted(comp)), []).append(composition_weight(comp, d))
    return {parts: ring_sum(ws) for parts, ws in groups.items()}


@lru_cache(maxsize=None)
def q_class(g: int, r: int, d: int) -> RingElem:
    """The semistable class Q_{r,d} as a composition sum."""
    terms = []
    for parts, weight in composition_prefactors(r, d).items():
        prod = weight
        for c in parts:
            prod = prod * q_rank(g, c)
        terms.append(prod)
    return ring_sum(terms)


def slope_series(g: int, tau: Fraction, rmax: int) -> GradedSeries:
    """Q_tau(t) = 1 + sum over ranks r with r*tau integral of Q_{r, r*tau} t^r."""
    tau = Fraction(tau)
    q = tau.denominator
    if rmax < q:
        raise ValueError("rmax must reach the slope denominator")
    coeffs = [RingElem.zero()] * (rmax + 1)
    coeffs[0] = RingElem.one()
    for r in range(q, rmax + 1, q):
        coeffs[r] = q_class(g, r, int(r * tau))
    return GradedSeries(tuple(coeffs))


@lru_cache(maxsize=None)
def _dt_polys(g: int, tau: Fraction, rmax: int) -> Tuple[Tuple[int, LaurentPoly], ...]:
    f = slope_series(g, tau, rmax)
    logf = pleth_log(f)
    kappa = _kappa()
    out = []
    for r in range(tau.denominator, rmax + 1, tau.denominator):
        out.append((r, (logf[r] * kappa).to_polynomial()))
    return tuple(out)


def dt_series(
    g: int, tau: Fraction, rmax: int, checks: str = "on"
) -> Dict[int, LaurentPoly]:
    """HDT_{r, r*tau} for all r <= rmax with r*tau integral.

    Integrality (clearing the cyclotomic denominators) is structural and
    always enforced; self-duality under u,v -> 1/u,1/v is a consistency
    check governed by the checks mode.
    """
    out = dict(_dt_polys(g, Fraction(tau), rmax))
    if checks != "off":
        for r, p in out.items():
            _ensure(
                p.dual() == p,
                f"HDT at rank {r}, slope {tau}, genus {g} is not self-dual",
                checks,
            )
    return out


def hdt(g: int, r: int, d: int, checks: str = "on") -> LaurentPoly:
    """The Donaldson-Thomas invariant HDT_{r,d} (rank r >= 1)."""
    if r < 1:
        raise ValueError("hdt needs rank >= 1; rank 0 is the torsion case")
    return dt_series(g, Fraction(d, r), r, checks)[r]


def torsion_dt(g: int, dmax: int, checks: str = "on") -> Dict[int, LaurentPoly]:
    """Rank-0 invariants HDT_{0,d} for 1 <= d <= dmax.

    The degree series of torsion sheaves is Exp(E(X)/(L-1) * t); its
    plethystic logarithm times L^(1/2) - L^(-1/2) collapses to the
    single term E(X)/L^(1/2) at d = 1.
    """
    if dmax < 1:
        raise ValueError("dmax >= 1")
    coeffs = [RingElem.zero()] * (dmax + 1)
    coeffs[1] = RingElem(-curve_epoly(g), CycloDenominator.of(1))
    f = pleth_exp(GradedSeries(tuple(coeffs)))
    logf = pleth_log(f)
    kappa = _kappa()
    out = {}
    for d in range(1, dmax + 1):
        out[d] = (logf[d] * kappa).to_polynomial()
    if checks != "off":
        for d, p in out.items():
            _ensure(
                p.dual() == p,
                f"torsion HDT at degree {d}, genus {g} is not self-dual",
                checks,
            )
    return out


def ih_epoly(g: int, r: int, d: int, checks: str = "on") -> LaurentPoly:
    """Hodge-Euler polynomial of IH*(M(r,d)): HDT_{r,d} * L^(dim/2).

    Integer powers of u and v only; the half-integer contributions of
    HDT must cancel against the dimension shift.
    """
    p = hdt(g, r, d, checks) * half_lefschetz(dim_moduli(g, r))
    _ensure(
        all(a % 2 == 0 and b % 2 == 0 for a, b in p.terms),
        f"IH Euler polynomial of M({r},{d}), genus {g} has half-integer exponents",
        checks,
    )
    return p


@dataclass(frozen=True)
class DTResult:
    """One moduli space, fully evaluated."""

    genus: int
    rank: int
    degree: int
    dim: int
    hdt: LaurentPoly
    ih: LaurentPoly
    betti: Tuple[int, ...]

    def as_json(self) -> dict:
        return {
            "genus": self.genus,
            "rank": self.rank,
            "degree": self.degree,
            "dim": self.dim,
            "hdt": self.hdt.records(),
            "ih_epoly": self.ih.records(),
            "betti": list(self.betti),
        }


def ih_poincare(g: int, r: int, d: int, checks: str = "on") -> DTResult:
    """Betti numbers of IH*(M(r,d)) via specialize, shift, sign flip."""
    h = hdt(g, r, d, checks)
    dim = dim_moduli(g, r)
    ih = h * half_lefschetz(dim)
    _ensure(
        all(a % 2 == 0 and b % 2 == 0 for a, b in ih.terms),
        f"IH Euler polynomial of M({r},{d}), genus {g} has half-integer exponents",
        checks,
    )
    spec = specialize_y(h)
    betti = [0] * (2 * dim + 1)
    dim_sign = -1 if dim % 2 else 1
    for e2, c in spec.terms.items():
        if e2 % 2:
            _ensure(False, f"specialized HDT of M({r},{d}) has a half-integer power", checks)
            continue
        k2 = e2 + 2 * dim
        k = k2 // 2
        value = c * dim_sign * (-1 if k % 2 else 1)
        if not (0 <= k <= 2 * dim):
            _ensure(False, f"Betti index {k} of M({r},{d}) out of range [0, {2*dim}]", checks)
            continue
        if value.denominator != 1 or value < 0:
            _ensure(
                False,
                f"Betti number b_{k} of M({r},{d}), genus {g} is {value}",
                checks,
            )
            continue
        betti[k] = int(value)
    for k in range(2 * dim + 1):
        _ensure(
            betti[k] == betti[2 * dim - k],
            f"Betti sequence of M({r},{d}), genus {g} is not palindromic at {k}",
            checks,
        )
    return DTResult(g, r, d, dim, h, ih, tuple(betti))


def determinant_factor(g: int, betti: Sequence[int]) -> List[int]:
    """Quotient of the Poincare polynomial by the Jacobian factor.

    The signed polynomial sum b_k (-y)^k is divided by (1-y)^(2g)
    (synthetic division, remainder must vanish at each of the 2g steps)
    and the quotient is reported back at -y, which makes it the
    non-negative factor corresponding to fixed-determinant bundles.
    """
    s = [(-b if k % 2 else b) for k, b in enumerate(betti)]
    for _ in range(2 * g):
        if len(s) < 2:
            raise ValueError("polynomial too short for the Jacobian factor")
        q = [0] * (len(s) - 1)
        q[0] = s[0]
        for j in range(1, len(s) - 1):
            q[j] = s[j] + q[j - 1]
        if s[-1] + q[-1] != 0:
            raise VerificationError(
                f"Poincare polynomial is not divisible by (1-y)^{2*g}"
            )
        s = q
    return [(-c if k % 2 else c) for k, c in enumerate(s)]
