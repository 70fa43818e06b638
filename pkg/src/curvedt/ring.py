"""Exact arithmetic in Q[u^(1/2), v^(1/2), u^(-1/2), v^(-1/2)] with cyclotomic denominators.

Conventions used throughout the package:

* Exponents are stored doubled, so the monomial key (a, b) stands for
  u^(a/2) * v^(b/2) and every key is a plain pair of ints.
* L denotes the Lefschetz class uv.  Its formal square root carries a
  sign: L^(1/2) = -(uv)^(1/2).  The monomial L^(e/2) is therefore the
  key (e, e) with coefficient (-1)^e, which is what half_lefschetz
  builds.  With this convention the Adams operation, which just scales
  exponent keys by n, automatically satisfies
  psi_n(L^(1/2)) = (-1)^(n-1) L^(n/2).
* Denominators are products of factors (1 - L^k), kept unexpanded as a
  multiset of the integers k.  Fractions are never reduced: addition
  expands both numerators to the multiset-wise maximum denominator,
  multiplication concatenates multisets, and equality is decided by
  cross-multiplication.

Coefficients are fractions.Fraction; all arithmetic is exact.
"""

from __future__ import annotations

import heapq
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Mapping, Tuple, Union

Monomial = Tuple[int, int]
Scalar = Union[int, Fraction]

_ZERO = Fraction(0)


class NotDivisibleError(ArithmeticError):
    """Raised when an exact division by (1 - L^k) leaves a remainder."""


def _sign(e: int) -> int:
    return -1 if e % 2 else 1


class LaurentPoly:
    """Sparse Laurent polynomial with doubled exponents and Fraction coefficients.

    The term dict is treated as immutable after construction; operations
    always build fresh instances.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Monomial, Scalar] | None = None):
        clean: Dict[Monomial, Fraction] = {}
        if terms:
            for mon, c in terms.items():
                c = Fraction(c)
                if c:
                    clean[(int(mon[0]), int(mon[1]))] = c
        self.terms = clean

    @staticmethod
    def _raw(terms: Dict[Monomial, Fraction]) -> "LaurentPoly":
        # internal fast path: caller guarantees no zero coefficients
        p = LaurentPoly.__new__(LaurentPoly)
        p.terms = terms
        return p

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls._raw({})

    @classmethod
    def one(cls) -> "LaurentPoly":
        return cls._raw({(0, 0): Fraction(1)})

    @classmethod
    def const(cls, c: Scalar) -> "LaurentPoly":
        c = Fraction(c)
        return cls._raw({(0, 0): c} if c else {})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, LaurentPoly):
            return self.terms == other.terms
        return NotImplemented

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly._raw({m: -c for m, c in self.terms.items()})

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, _ZERO) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return LaurentPoly._raw(out)

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, _ZERO) - c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return LaurentPoly._raw(out)

    def __mul__(self, other: Union["LaurentPoly", Scalar]) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            if len(self.terms) > len(other.terms):
                big, small = self.terms, other.terms
            else:
                big, small = other.terms, self.terms
            out: Dict[Monomial, Fraction] = {}
            for (a1, b1), c1 in small.items():
                for (a2, b2), c2 in big.items():
                    key = (a1 + a2, b1 + b2)
                    s = out.get(key, _ZERO) + c1 * c2
                    if s:
                        out[key] = s
                    else:
                        del out[key]
            return LaurentPoly._raw(out)
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            if not c:
                return LaurentPoly.zero()
            return LaurentPoly._raw({m: k * c for m, k in self.terms.items()})
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            raise ValueError("negative powers are not defined for polynomials")
        result = LaurentPoly.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def adams(self, n: int) -> "LaurentPoly":
        """Adams operation: scale every exponent key by n (coefficients fixed)."""
        if n < 1:
            raise ValueError("Adams operations are indexed by n >= 1")
        return LaurentPoly._raw({(n * a, n * b): c for (a, b), c in self.terms.items()})

    def dual(self) -> "LaurentPoly":
        """Substitute u -> 1/u, v -> 1/v (negate all exponents)."""
        return LaurentPoly._raw({(-a, -b): c for (a, b), c in self.terms.items()})

    def shift(self, da2: int, db2: int) -> "LaurentPoly":
        """Multiply by the plain monomial u^(da2/2) v^(db2/2)."""
        return LaurentPoly._raw({(a + da2, b + db2): c for (a, b), c in self.terms.items()})

    def max_total(self) -> int:
        if not self.terms:
            raise ValueError("zero polynomial has no degree")
        return max(a + b for a, b in self.terms)

    def min_total(self) -> int:
        if not self.terms:
            raise ValueError("zero polynomial has no degree")
        return min(a + b for a, b in self.terms)

    def records(self) -> list:
        """JSON-friendly term list sorted by (eu2, ev2)."""
        out = []
        for (a, b) in sorted(self.terms):
            c = self.terms[(a, b)]
            out.append({"eu2": a, "ev2": b, "num": c.numerator, "den": c.denominator})
        return out

    def __repr__(self) -> str:
        items = ", ".join(f"{m}: {c}" for m, c in sorted(self.terms.items()))
        return f"LaurentPoly({{{items}}})"


def monomial(eu2: int, ev2: int, coeff: Scalar = 1) -> LaurentPoly:
    """The single term coeff * u^(eu2/2) v^(ev2/2)."""
    return LaurentPoly({(eu2, ev2): coeff})


def half_lefschetz(e2: int) -> LaurentPoly:
    """L^(e2/2) under the convention L^(1/2) = -(uv)^(1/2)."""
    return LaurentPoly._raw({(e2, e2): Fraction(_sign(e2))})


def lefschetz(k: int) -> LaurentPoly:
    """L^k = (uv)^k."""
    return half_lefschetz(2 * k)


def dualize(p: LaurentPoly) -> LaurentPoly:
    """Exponent negation u -> 1/u, v -> 1/v; an involution."""
    return p.dual()


def exact_divide_cyclo(p: LaurentPoly, k: int) -> LaurentPoly:
    """Divide p by (1 - L^k) exactly, raising NotDivisibleError on failure.

    Works stratum by stratum in ascending total degree: the minimal-degree
    block of the remainder must belong to the quotient, because (1 - L^k)
    has constant term 1 and its other term raises total degree.  In an
    exact division every extracted block sits at least 4k (doubled) below
    the top of p, which gives the termination test.
    """
    if k < 1:
        raise ValueError("cyclotomic factors are indexed by k >= 1")
    if p.is_zero():
        return LaurentPoly.zero()
    buckets: Dict[int, Dict[Monomial, Fraction]] = {}
    for mon, c in p.terms.items():
        buckets.setdefault(mon[0] + mon[1], {})[mon] = c
    heap = list(buckets)
    heapq.heapify(heap)
    limit = max(buckets) - 4 * k
    shift = 2 * k
    out: Dict[Monomial, Fraction] = {}
    while heap:
        deg = heapq.heappop(heap)
        stratum = buckets.pop(deg, None)
        if not stratum:
            continue
        if deg > limit:
            raise NotDivisibleError(f"not divisible by 1 - L^{k}")
        target = deg + 4 * k
        tb = buckets.get(target)
        if tb is None:
            tb = buckets[target] = {}
            heapq.heappush(heap, target)
        for (a, b), c in stratum.items():
            out[(a, b)] = c
            key = (a + shift, b + shift)
            s = tb.get(key, _ZERO) + c
            if s:
                tb[key] = s
            else:
                del tb[key]
    return LaurentPoly._raw(out)


@dataclass(frozen=True)
class CycloDenominator:
    """Multiset of positive integers k, each standing for one factor (1 - L^k)."""

    factors: Tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(sorted(self.factors)))
        if any(k < 1 for k in self.factors):
            raise ValueError("denominator factors must be positive integers")

    @classmethod
    def empty(cls) -> "CycloDenominator":
        return cls(())

    @classmethod
    def of(cls, *ks: int) -> "CycloDenominator":
        return cls(tuple(ks))

    def is_empty(self) -> bool:
        return not self.factors

    def __mul__(self, other: "CycloDenominator") -> "CycloDenominator":
        return CycloDenominator(self.factors + other.factors)

    def lcm(self, other: "CycloDenominator") -> "CycloDenominator":
        """Multiset-wise maximum of multiplicities."""
        a, b = Counter(self.factors), Counter(other.factors)
        out = []
        for k in set(a) | set(b):
            out.extend([k] * max(a[k], b[k]))
        return CycloDenominator(tuple(out))

    def diff(self, other: "CycloDenominator") -> Tuple[int, ...]:
        """Multiset difference self - other; other must be contained in self."""
        a, b = Counter(self.factors), Counter(other.factors)
        if b - a:
            raise ValueError("denominator is not a sub-multiset")
        return tuple(sorted((a - b).elements()))

    def adams(self, n: int) -> "CycloDenominator":
        if n < 1:
            raise ValueError("Adams operations are indexed by n >= 1")
        return CycloDenominator(tuple(n * k for k in self.factors))

    def expand(self) -> LaurentPoly:
        """The product of the factors as an actual polynomial."""
        out = LaurentPoly.one()
        for k in self.factors:
            out = out * (LaurentPoly.one() - lefschetz(k))
        return out


def _expand_onto(num: LaurentPoly, missing: Iterable[int]) -> LaurentPoly:
    for k in missing:
        num = num * (LaurentPoly.one() - lefschetz(k))
    return num


@dataclass(frozen=True, eq=False)
class RingElem:
    """num / prod_k (1 - L^k), never reduced; equality by cross-multiplication."""

    num: LaurentPoly
    den: CycloDenominator = CycloDenominator.empty()

    @classmethod
    def zero(cls) -> "RingElem":
        return cls(LaurentPoly.zero())

    @classmethod
    def one(cls) -> "RingElem":
        return cls(LaurentPoly.one())

    @classmethod
    def const(cls, c: Scalar) -> "RingElem":
        return cls(LaurentPoly.const(c))

    @classmethod
    def from_poly(cls, p: LaurentPoly) -> "RingElem":
        return cls(p)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __neg__(self) -> "RingElem":
        return RingElem(-self.num, self.den)

    def __add__(self, other: "RingElem") -> "RingElem":
        if not isinstance(other, RingElem):
            return NotImplemented
        lcd = self.den.lcm(other.den)
        a = _expand_onto(self.num, lcd.diff(self.den))
        b = _expand_onto(other.num, lcd.diff(other.den))
        return RingElem(a + b, lcd)

    def __sub__(self, other: "RingElem") -> "RingElem":
        if not isinstance(other, RingElem):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other: Union["RingElem", LaurentPoly, Scalar]) -> "RingElem":
        if isinstance(other, RingElem):
            return RingElem(self.num * other.num, self.den * other.den)
        if isinstance(other, (LaurentPoly, int, Fraction)):
            return RingElem(self.num * other, self.den)
        return NotImplemented

    def __rmul__(self, other: Union[LaurentPoly, Scalar]) -> "RingElem":
        return self.__mul__(other)

    def __eq__(self, other: object) -> bool:
        """Cross-multiplication equality, after cancelling the common multiset."""
        if not isinstance(other, RingElem):
            return NotImplemented
        ca, cb = Counter(self.den.factors), Counter(other.den.factors)
        common = ca & cb
        extra_self = (cb - common).elements()   # factors to push onto self.num
        extra_other = (ca - common).elements()  # factors to push onto other.num
        return _expand_onto(self.num, extra_self) == _expand_onto(other.num, extra_other)

    __hash__ = None  # mathematical equality is not hash-compatible

    def adams(self, n: int) -> "RingElem":
        return RingElem(self.num.adams(n), self.den.adams(n))

    def to_polynomial(self) -> LaurentPoly:
        """Divide out every denominator factor; NotDivisibleError if any fails."""
        out = self.num
        for k in self.den.factors:
            out = exact_divide_cyclo(out, k)
        return out


def adams(n: int, x: Union[RingElem, LaurentPoly]) -> Union[RingElem, LaurentPoly]:
    """Adams operation on either representation."""
    return x.adams(n)


def ring_sum(items: Iterable[RingElem]) -> RingElem:
    """Sum with a single expansion to the common (multiset-max) denominator."""
    items = list(items)
    if not items:
        return RingElem.zero()
    lcd = items[0].den
    for x in items[1:]:
        lcd = lcd.lcm(x.den)
    total = LaurentPoly.zero()
    for x in items:
        total = total + _expand_onto(x.num, lcd.diff(x.den))
    return RingElem(total, lcd)


def to_polynomial(x: RingElem) -> LaurentPoly:
    return x.to_polynomial()


class UniPoly:
    """Univariate Laurent polynomial in y, exponents stored doubled."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[int, Scalar] | None = None):
        clean: Dict[int, Fraction] = {}
        if terms:
            for e, c in terms.items():
                c = Fraction(c)
                if c:
                    clean[int(e)] = c
        self.terms = clean

    @staticmethod
    def _raw(terms: Dict[int, Fraction]) -> "UniPoly":
        p = UniPoly.__new__(UniPoly)
        p.terms = terms
        return p

    @classmethod
    def zero(cls) -> "UniPoly":
        return cls._raw({})

    @classmethod
    def one(cls) -> "UniPoly":
        return cls._raw({0: Fraction(1)})

    @classmethod
    def const(cls, c: Scalar) -> "UniPoly":
        c = Fraction(c)
        return cls._raw({0: c} if c else {})

    @classmethod
    def y_pow(cls, e2: int, coeff: Scalar = 1) -> "UniPoly":
        """coeff * y^(e2/2)."""
        return cls({e2: coeff})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, UniPoly):
            return self.terms == other.terms
        return NotImplemented

    def __neg__(self) -> "UniPoly":
        return UniPoly._raw({e: -c for e, c in self.terms.items()})

    def __add__(self, other: "UniPoly") -> "UniPoly":
        if not isinstance(other, UniPoly):
            return NotImplemented
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, _ZERO) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return UniPoly._raw(out)

    def __sub__(self, other: "UniPoly") -> "UniPoly":
        return self + (-other)

    def __mul__(self, other: Union["UniPoly", Scalar]) -> "UniPoly":
        if isinstance(other, UniPoly):
            out: Dict[int, Fraction] = {}
            for e1, c1 in self.terms.items():
                for e2, c2 in other.terms.items():
                    key = e1 + e2
                    s = out.get(key, _ZERO) + c1 * c2
                    if s:
                        out[key] = s
                    else:
                        del out[key]
            return UniPoly._raw(out)
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            if not c:
                return UniPoly.zero()
            return UniPoly._raw({e: k * c for e, k in self.terms.items()})
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "UniPoly":
        if n < 0:
            raise ValueError("negative powers are not defined for polynomials")
        result = UniPoly.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def at_neg_y(self) -> "UniPoly":
        """Substitute y -> -y; requires all exponents integral (even keys)."""
        out: Dict[int, Fraction] = {}
        for e, c in self.terms.items():
            if e % 2:
                raise ValueError("y -> -y needs integer exponents")
            out[e] = c if (e // 2) % 2 == 0 else -c
        return UniPoly._raw(out)

    def records(self) -> list:
        return [
            {"e2": e, "num": self.terms[e].numerator, "den": self.terms[e].denominator}
            for e in sorted(self.terms)
        ]

    def __repr__(self) -> str:
        items = ", ".join(f"{e}: {c}" for e, c in sorted(self.terms.items()))
        return f"UniPoly({{{items}}})"


def specialize_y(p: LaurentPoly) -> UniPoly:
    """Set u = v = y: the monomial (a, b) lands on y^((a+b)/2)."""
    out: Dict[int, Fraction] = {}
    for (a, b), c in p.terms.items():
        key = a + b
        s = out.get(key, _ZERO) + c
        if s:
            out[key] = s
        else:
            del out[key]
    return UniPoly._raw(out)


def specialize_elem(x: RingElem) -> Tuple[UniPoly, UniPoly]:
    """Specialize num and den separately; (1 - L^k) becomes (1 - y^(2k))."""
    den = UniPoly.one()
    for k in x.den.factors:
        den = den * (UniPoly.one() - UniPoly.y_pow(4 * k))
    return specialize_y(x.num), den
