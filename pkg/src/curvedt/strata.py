"""Luna strata, fiber quivers, and the virtual-smallness certificate.

A polystable bundle on a genus-g curve decomposes as a direct sum of
pairwise non-isomorphic stable bundles E_i of rank r_i and degree d_i,
each taken with multiplicity m_i, all of one slope d/r.  The locus of
bundles with a fixed decomposition type is a Luna stratum of the moduli
space M(r,d); the dense (maximal) stratum is the single-part type with
multiplicity one.

Attached to a type is a symmetric framed quiver: one vertex per part,
a_ij = delta_ij + (g-1) r_i r_j arrows between vertices i and j, and
w_i = d_i + (1-g) r_i framing arrows (the section count of E_i for large
slope).  Its Euler form computes stratum codimensions, and the
inequality chain for the framed bundle map pi: M_f(r,d) -> M(r,d) boils
down to a per-type rational bound:

    bound(s) = 1/2 + 1/2 * sum_i ( (m_i - 1) chi_ii + 1 - 2 m_i ),

with chi_ii = -(g-1) r_i^2 the Euler pairing of a vertex with itself.
The map is virtually small precisely when the bound is 0 on the maximal
type and strictly negative elsewhere; ``certify_virtual_smallness``
checks this exhaustively over all types of (r, d).

The curve-specific value chi_ii <= 0 is the default; ``generic=True``
substitutes the weaker generic-quiver estimate chi_ii <= 1 (bound
1/2 - 1/2 sum_i m_i) to cross-check that even the coarse inequality
suffices.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Dict, Iterator, List, Sequence, Tuple

from .invariants import VerificationError, dim_moduli

Part = Tuple[Tuple[int, int], int]  # ((rank, degree), multiplicity)


@dataclass(frozen=True)
class StratumType:
    """A Luna-stratum type: a multiset of ((r_i, d_i), m_i) parts.

    Parts are kept canonically sorted by (r_i, d_i, m_i).  Repeated
    (gamma, m) pairs are allowed and meaningful: two non-isomorphic
    stable bundles may share rank and degree, so {(gamma,1),(gamma,1)}
    and {(gamma,2)} are distinct types.
    """

    parts: Tuple[Part, ...]

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(sorted(self.parts)))
        for (r_i, d_i), m_i in self.parts:
            if r_i < 1 or m_i < 1:
                raise ValueError(f"invalid part (({r_i},{d_i}),{m_i})")

    @property
    def n(self) -> int:
        return len(self.parts)

    @property
    def rank(self) -> int:
        return sum(m * r_i for (r_i, _), m in self.parts)

    @property
    def degree(self) -> int:
        return sum(m * d_i for (_, d_i), m in self.parts)

    @property
    def is_maximal(self) -> bool:
        return self.n == 1 and self.parts[0][1] == 1

    def label(self) -> str:
        return " + ".join(f"{m}*({r_i},{d_i})" for (r_i, d_i), m in self.parts)


@dataclass(frozen=True)
class FramedQuiver:
    """Symmetric quiver with framing vector attached to a stratum type."""

    n: int
    arrows: Tuple[Tuple[int, ...], ...]
    framing: Tuple[int, ...]


def _pair_multisets(total: int) -> Iterator[Tuple[Tuple[int, int], ...]]:
    """Multisets of (k, m) pairs, k, m >= 1, with sum k*m = total."""
    pairs = [(k, m) for k in range(1, total + 1) for m in range(1, total // k + 1)]

    def rec(remaining: int, start: int, acc: List[Tuple[int, int]]):
        if remaining == 0:
            yield tuple(acc)
            return
        for idx in range(start, len(pairs)):
            k, m = pairs[idx]
            if k * m <= remaining:
                acc.append((k, m))
                yield from rec(remaining - k * m, idx, acc)
                acc.pop()

    yield from rec(total, 0, [])


def enumerate_strata(r: int, d: int) -> List[StratumType]:
    """All stratum types of (r, d): multisets of equal-slope parts.

    Every part slope must equal d/r exactly, so with d/r = p/q in lowest
    terms the parts are (kq, kp) for k >= 1 and the multiset condition
    is sum m_i k_i = r/q.  Returns canonically sorted types, maximal
    type first, then by part list.
    """
    if r < 1:
        raise ValueError(f"rank must be positive, got {r}")
    t = gcd(r, abs(d)) if d else r
    q, p = r // t, d // t
    types = []
    for pairs in _pair_multisets(t):
        parts = tuple((((k * q), (k * p)), m) for k, m in pairs)
        types.append(StratumType(parts))
    types.sort(key=lambda s: (not s.is_maximal, s.parts))
    return types


def build_fiber_quiver(g: int, s: StratumType) -> FramedQuiver:
    """The framed quiver of a stratum type.

    Vertex i per part; a_ij = delta_ij + (g-1) r_i r_j arrows; framing
    w_i = d_i + (1-g) r_i.
    """
    ranks = [r_i for (r_i, _), _ in s.parts]
    degrees = [d_i for (_, d_i), _ in s.parts]
    n = s.n
    arrows = tuple(
        tuple((1 if i == j else 0) + (g - 1) * ranks[i] * ranks[j] for j in range(n))
        for i in range(n)
    )
    framing = tuple(degrees[i] + (1 - g) * ranks[i] for i in range(n))
    return FramedQuiver(n=n, arrows=arrows, framing=framing)


def euler_form(q: FramedQuiver, m: Sequence[int], m2: Sequence[int]) -> int:
    """chi_Q(m, m') = sum_i m_i m'_i - sum_{ij} a_ij m_i m'_j."""
    if len(m) != q.n or len(m2) != q.n:
        raise ValueError(f"dimension vectors must have length {q.n}")
    diag = sum(a * b for a, b in zip(m, m2))
    cross = sum(
        q.arrows[i][j] * m[i] * m2[j] for i in range(q.n) for j in range(q.n)
    )
    return diag - cross


def codim_stratum(g: int, s: StratumType) -> int:
    """Complex codimension of the stratum in M(r, d).

    (g-1) r^2 + 1 - sum_i ((g-1) r_i^2 + 1) over the n parts, where r is
    the total rank.  Non-negative, zero exactly at the maximal type;
    a negative value means the formula was misapplied and raises.
    """
    codim = dim_moduli(g, s.rank) - sum(
        dim_moduli(g, r_i) for (r_i, _), _ in s.parts
    )
    if codim < 0:
        raise VerificationError(
            f"negative codimension {codim} for stratum {s.label()} at genus {g}"
        )
    return codim


def d_zero(g: int, r: int, d: int) -> int:
    """Fiber dimension of the framed map over the dense stratum.

    d0 = (framing dimension of the full class) - 1 = d + (1-g) r - 1.
    """
    return d + (1 - g) * r - 1


def smallness_bound(g: int, s: StratumType, generic: bool = False) -> Fraction:
    """Upper bound for dim(fiber) - d0 - codim/2 on one stratum type.

    1/2 + 1/2 sum_i ((m_i - 1) chi_ii + 1 - 2 m_i) with the curve value
    chi_ii = -(g-1) r_i^2, or chi_ii = 1 (the generic symmetric-quiver
    estimate) when generic=True.  Virtual smallness needs 0 at the
    maximal type and < 0 elsewhere.
    """
    total = Fraction(1, 2)
    for (r_i, _), m_i in s.parts:
        chi_ii = 1 if generic else -(g - 1) * r_i * r_i
        total += Fraction((m_i - 1) * chi_ii + 1 - 2 * m_i, 2)
    return total


@dataclass(frozen=True)
class StratumRecord:
    """One certified row: a type with its codimension, bound, verdict."""

    stratum: StratumType
    codim: int
    bound: Fraction
    is_maximal: bool
    passes: bool

    def as_json(self) -> dict:
        return {
            "parts": [[[r_i, d_i], m] for (r_i, d_i), m in self.stratum.parts],
            "codim": self.codim,
            "bound": str(self.bound),
            "maximal": self.is_maximal,
            "pass": self.passes,
        }


@dataclass(frozen=True)
class SmallnessReport:
    """Certificate that the framed bundle map is virtually small."""

    genus: int
    rank: int
    degree: int
    d0: int
    in_theorem_range: bool
    generic: bool
    records: Tuple[StratumRecord, ...]

    @property
    def passes(self) -> bool:
        return all(rec.passes for rec in self.records)

    @property
    def verdict(self) -> str:
        return "PASS" if self.passes else "FAIL"

    def as_json(self) -> dict:
        return {
            "genus": self.genus,
            "rank": self.rank,
            "degree": self.degree,
            "d0": self.d0,
            "strata": [rec.as_json() for rec in self.records],
            "verdict": self.verdict,
        }


def certify_virtual_smallness(
    g: int, r: int, d: int, generic: bool = False
) -> SmallnessReport:
    """Certify the smallness inequality over every stratum type of (r, d).

    Each type passes iff its bound is exactly 0 (maximal type) or
    strictly negative (every other type).  The slope hypothesis
    d/r > 2g-2 is advisory: outside it the arithmetic still runs, a
    warning is emitted, and the report notes the range.  Structural
    impossibilities (several maximal types, zero codimension off the
    dense stratum, non-positive framing in range) raise instead of
    being reported.
    """
    in_range = Fraction(d, r) > 2 * g - 2
    if not in_range:
        warnings.warn(
            f"slope {d}/{r} is not above {2 * g - 2}: smallness is certified "
            "arithmetic only, outside the theorem's hypothesis",
            stacklevel=2,
        )
    records = []
    n_maximal = 0
    for s in enumerate_strata(r, d):
        codim = codim_stratum(g, s)
        bound = smallness_bound(g, s, generic=generic)
        maximal = s.is_maximal
        n_maximal += maximal
        if maximal != (codim == 0):
            raise VerificationError(
                f"codimension {codim} inconsistent with maximality of {s.label()}"
            )
        if in_range:
            quiver = build_fiber_quiver(g, s)
            if any(w <= 0 for w in quiver.framing):
                raise VerificationError(
                    f"non-positive framing {quiver.framing} for {s.label()} "
                    f"despite slope {d}/{r} > {2 * g - 2}"
                )
        passes = bound == 0 if maximal else bound < 0
        records.append(
            StratumRecord(
                stratum=s, codim=codim, bound=bound, is_maximal=maximal, passes=passes
            )
        )
    if n_maximal != 1:
        raise VerificationError(f"expected exactly one maximal type, got {n_maximal}")
    return SmallnessReport(
        genus=g,
        rank=r,
        degree=d,
        d0=d_zero(g, r, d),
        in_theorem_range=in_range,
        generic=generic,
        records=tuple(records),
    )
