"""Exact arithmetic in Q(beta) for generalized golden ratio bases.

For an odd digit count m = 2k+1 the base is beta = (k+1+sqrt(k^2+6k+5))/2,
the positive root of beta^2 = (k+1)*beta + (k+1).  For an even digit count
m = 2k the base is the integer k+1 and the field degenerates to Q.

Every element is stored as (p*beta + q)/r with integers p, q and a positive
denominator r, reduced so gcd(p, q, r) = 1.  All comparisons are decided by
integer case analysis on the sign of u + v*sqrt(D); nothing in this module
touches floating point.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from math import gcd

ODD = "odd"
EVEN = "even"


class ParameterError(ValueError):
    """Invalid system parameters (k, parity)."""


class DomainError(ValueError):
    """Input outside the domain of an operation."""


@dataclass(frozen=True)
class Params:
    """The expansion system: digit bound m, base beta, digit classes.

    k >= 1; odd parity means m = 2k+1 with irrational beta, even parity
    means m = 2k with beta = k+1.  D is the discriminant k^2+6k+5 (odd
    parity only).
    """

    k: int
    parity: str
    m: int
    D: int | None

    @property
    def small_digits(self) -> range:
        return range(0, self.k + 1)

    @property
    def big_digits(self) -> range:
        return range(self.k + 1, self.m + 1)

    @property
    def small_except_top(self) -> range:
        """{0,...,k-1}: small digits without the largest one."""
        return range(0, self.k)

    @property
    def small_except_zero(self) -> range:
        return range(1, self.k + 1)

    @property
    def big_except_top(self) -> range:
        return range(self.k + 1, self.m)

    @property
    def big_except_bottom(self) -> range:
        return range(self.k + 2, self.m + 1)

    def in_small(self, d: int) -> bool:
        return 0 <= d <= self.k

    def in_big(self, d: int) -> bool:
        return self.k + 1 <= d <= self.m

    @property
    def beta(self) -> "FieldElem":
        if self.parity == ODD:
            return FieldElem(self, 1, 0, 1)
        return FieldElem(self, 0, self.k + 1, 1)

    @property
    def zero(self) -> "FieldElem":
        return FieldElem(self, 0, 0, 1)

    @property
    def one(self) -> "FieldElem":
        return FieldElem(self, 0, 1, 1)

    @property
    def interval_bound(self) -> "FieldElem":
        """m/(beta-1): beta-k for odd parity, 2 for even parity."""
        if self.parity == ODD:
            return FieldElem(self, 1, -self.k, 1)
        return FieldElem(self, 0, 2, 1)

    def from_int(self, n: int) -> "FieldElem":
        return FieldElem(self, 0, n, 1)

    def from_rational(self, num: int, den: int) -> "FieldElem":
        return FieldElem(self, 0, num, den)


def make_params(k: int, parity: str) -> Params:
    if not isinstance(k, int) or k < 1:
        raise ParameterError(f"k must be a positive integer, got {k!r}")
    if parity == ODD:
        return Params(k=k, parity=ODD, m=2 * k + 1, D=k * k + 6 * k + 5)
    if parity == EVEN:
        return Params(k=k, parity=EVEN, m=2 * k, D=None)
    raise ParameterError(f"parity must be 'odd' or 'even', got {parity!r}")


@dataclass(frozen=True)
class FieldElem:
    """An exact element (p*beta + q)/r of Q(beta), canonically reduced."""

    params: Params
    p: int
    q: int
    r: int = 1

    def __post_init__(self):
        p, q, r = self.p, self.q, self.r
        if r == 0:
            raise ZeroDivisionError("FieldElem denominator is zero")
        if self.params.parity == EVEN and p != 0:
            # beta is the integer k+1: fold the beta coefficient away.
            q += p * (self.params.k + 1)
            p = 0
        if r < 0:
            p, q, r = -p, -q, -r
        g = gcd(gcd(abs(p), abs(q)), r)
        if g > 1:
            p, q, r = p // g, q // g, r // g
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "r", r)

    # -- ring operations -------------------------------------------------

    def _check_same(self, other: "FieldElem") -> None:
        if self.params != other.params:
            raise DomainError("operands belong to different systems")

    def __add__(self, other):
        if isinstance(other, int):
            other = self.params.from_int(other)
        self._check_same(other)
        return FieldElem(
            self.params,
            self.p * other.r + other.p * self.r,
            self.q * other.r + other.q * self.r,
            self.r * other.r,
        )

    __radd__ = __add__

    def __neg__(self):
        return FieldElem(self.params, -self.p, -self.q, self.r)

    def __sub__(self, other):
        if isinstance(other, int):
            other = self.params.from_int(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return FieldElem(self.params, self.p * other, self.q * other, self.r)
        self._check_same(other)
        k1 = self.params.k + 1
        # (a*beta+b)(c*beta+d) with beta^2 = (k+1)(beta+1)
        a, b, c, d = self.p, self.q, other.p, other.q
        return FieldElem(
            self.params,
            a * c * k1 + a * d + b * c,
            a * c * k1 + b * d,
            self.r * other.r,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, int):
            return FieldElem(self.params, self.p, self.q, self.r * other)
        self._check_same(other)
        return self * other.inverse()

    def inverse(self) -> "FieldElem":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        k1 = self.params.k + 1
        p, q, r = self.p, self.q, self.r
        # conjugate of p*beta+q is -p*beta + p*(k+1)+q; the norm is an integer.
        norm = -p * p * k1 + p * q * k1 + q * q
        return FieldElem(self.params, -p * r, (p * k1 + q) * r, norm)

    def mul_beta(self) -> "FieldElem":
        """Exact multiplication by beta, reducing beta^2 = (k+1)(beta+1)."""
        k1 = self.params.k + 1
        if self.params.parity == EVEN:
            return FieldElem(self.params, 0, self.q * k1, self.r)
        return FieldElem(self.params, self.p * k1 + self.q, self.p * k1, self.r)

    def div_beta(self) -> "FieldElem":
        """Exact division by beta via 1/beta = (beta-(k+1))/(k+1)."""
        k1 = self.params.k + 1
        if self.params.parity == EVEN:
            return FieldElem(self.params, 0, self.q, self.r * k1)
        return FieldElem(self.params, self.q, k1 * (self.p - self.q), self.r * k1)

    # -- ordering --------------------------------------------------------

    def sign(self) -> int:
        """Sign of the value, by integer case analysis only."""
        p, q = self.p, self.q
        if self.params.parity == EVEN or p == 0:
            return (q > 0) - (q < 0)
        # p*beta+q = (U + V*sqrt(D))/2 with U = p(k+1)+2q, V = p.
        D = self.params.D
        U = p * (self.params.k + 1) + 2 * q
        V = p
        if U >= 0 and V >= 0:
            return 1
        if U <= 0 and V <= 0:
            return -1
        lhs, rhs = U * U, V * V * D
        if U > 0:  # V < 0
            return 1 if lhs > rhs else -1
        return 1 if rhs > lhs else -1  # U < 0, V > 0

    def is_zero(self) -> bool:
        return self.p == 0 and self.q == 0

    def compare(self, other) -> int:
        if isinstance(other, int):
            other = self.params.from_int(other)
        return (self - other).sign()

    def __lt__(self, other):
        return self.compare(other) < 0

    def __le__(self, other):
        return self.compare(other) <= 0

    def __gt__(self, other):
        return self.compare(other) > 0

    def __ge__(self, other):
        return self.compare(other) >= 0

    def __repr__(self):
        return f"FieldElem({format_field(self)!r}, k={self.params.k}, {self.params.parity})"


def fe_arith(op: str, a: FieldElem, b: FieldElem | None = None) -> FieldElem:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "neg":
        return -a
    raise ValueError(f"unknown arithmetic op {op!r}")


def fe_mul_beta(a: FieldElem) -> FieldElem:
    return a.mul_beta()


LT, EQ, GT = "LT", "EQ", "GT"


def fe_cmp(a: FieldElem, b: FieldElem) -> str:
    s = a.compare(b)
    return LT if s < 0 else (GT if s > 0 else EQ)


IN_S, NOT_IN_S = "InS", "NotInS"
IN_F, NOT_IN_F = "InF", "NotInF"


def fe_membership(x: FieldElem) -> str:
    """Decide whether x is (p*beta+q)/(k+1)^n for some integers p, q, n.

    After reduction this holds exactly when every prime factor of the
    denominator divides k+1.  Only defined strictly inside the expansion
    interval; endpoints are the classifier's business.
    """
    params = x.params
    if x.sign() <= 0 or x >= params.interval_bound:
        raise DomainError("membership is defined on the open expansion interval")
    member = _denominator_supported(x.r, params.k + 1)
    if params.parity == ODD:
        return IN_S if member else NOT_IN_S
    return IN_F if member else NOT_IN_F


def _denominator_supported(r: int, base: int) -> bool:
    g = r
    while g > 1:
        d = gcd(g, base)
        if d == 1:
            return False
        g //= d
    return True


# -- text literals -------------------------------------------------------

_RAT_RE = re.compile(r"^([+-]?\d+)(?:/(\d+))?$")
_SURD_RE = re.compile(r"^\(([+-]?\d+)([+-]\d+)\*b\)(?:/(\d+))?$")


def parse_field(text: str, params: Params) -> FieldElem:
    """Parse a literal like ``(1+1*b)/6``, ``(0+1*b)/2`` or ``3/4``."""
    text = text.strip()
    m = _RAT_RE.match(text)
    if m:
        num, den = int(m.group(1)), int(m.group(2) or 1)
        return FieldElem(params, 0, num, den)
    m = _SURD_RE.match(text)
    if m:
        const, coeff, den = int(m.group(1)), int(m.group(2)), int(m.group(3) or 1)
        return FieldElem(params, coeff, const, den)
    raise DomainError(f"malformed field literal: {text!r}")


def format_field(x: FieldElem) -> str:
    if x.p == 0:
        return f"{x.q}" if x.r == 1 else f"{x.q}/{x.r}"
    body = f"({x.q}{x.p:+d}*b)"
    return body if x.r == 1 else f"{body}/{x.r}"
