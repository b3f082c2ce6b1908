"""Exact truncated q-expansions over Q * (2*pi*i)**Z.

A :class:`QExpansion` is a truncated Laurent series

    sum_{m=lower}^{truncation} c_m * q**(offset + m)

with a single rational global exponent offset (eta powers are the only
source of fractional exponents and introduce them uniformly).  Coefficients
beyond the truncation order are *unknown*, not zero; ring operations
propagate the reliable order pessimistically.  Coefficients below ``lower``
are known to vanish.

Named series: Eisenstein series G_{2k} (constants rationalized through
Bernoulli numbers), Dedekind eta powers, and the geometric factors
(1-q**k)**-1 together with their tau-derivatives.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial

from .scaled import ScaledRational, TpiSum, as_fraction, format_fraction


class OffsetError(ValueError):
    """Arithmetic between expansions whose offsets do not differ by an integer."""


class NonUnitError(ValueError):
    """Inversion of a series whose leading coefficient is not invertible."""


DEFAULT_ORDER = 40


class QExpansion:
    __slots__ = ("offset", "lower", "coeffs", "truncation")

    def __init__(self, offset, lower: int, coeffs, truncation: int):
        offset = as_fraction(offset)
        coeffs = [TpiSum.of(c) for c in coeffs]
        if len(coeffs) != truncation - lower + 1:
            raise ValueError("coefficient list does not match [lower, truncation]")
        self.offset = offset
        self.lower = lower
        self.coeffs = coeffs
        self.truncation = truncation

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, truncation: int = DEFAULT_ORDER, offset=0) -> "QExpansion":
        return cls(offset, 0, [TpiSum()] * (truncation + 1), truncation)

    @classmethod
    def one(cls, truncation: int = DEFAULT_ORDER) -> "QExpansion":
        c = [TpiSum.term(1)] + [TpiSum()] * truncation
        return cls(0, 0, c, truncation)

    @classmethod
    def from_dict(cls, d, truncation: int, offset=0) -> "QExpansion":
        """d maps integer m -> coefficient, for exponents offset + m."""
        if d:
            lower = min(min(d), 0)
        else:
            lower = 0
        coeffs = [TpiSum.of(d.get(m, 0)) for m in range(lower, truncation + 1)]
        return cls(offset, lower, coeffs, truncation)

    @classmethod
    def q_power(cls, m: int, truncation: int = DEFAULT_ORDER) -> "QExpansion":
        return cls.from_dict({m: 1}, truncation)

    # -- bookkeeping -------------------------------------------------------

    def coefficient(self, m: int) -> TpiSum:
        """Coefficient of q**(offset + m); m must not exceed the truncation."""
        if m > self.truncation:
            raise IndexError(f"coefficient q^(offset+{m}) beyond truncation {self.truncation}")
        if m < self.lower:
            return TpiSum()
        return self.coeffs[m - self.lower]

    def is_zero(self) -> bool:
        return all(not c for c in self.coeffs)

    def truncate(self, truncation: int) -> "QExpansion":
        if truncation > self.truncation:
            raise ValueError("cannot extend a truncated expansion")
        lower = min(self.lower, truncation)
        return QExpansion(self.offset, lower,
                          [self.coefficient(m) for m in range(lower, truncation + 1)],
                          truncation)

    def _aligned(self, other: "QExpansion") -> int:
        d = other.offset - self.offset
        if d.denominator != 1:
            raise OffsetError(f"offsets {self.offset} and {other.offset} differ by a non-integer")
        return int(d)

    # -- ring operations ---------------------------------------------------

    def __neg__(self):
        return QExpansion(self.offset, self.lower, [-c for c in self.coeffs], self.truncation)

    def __add__(self, other):
        if not isinstance(other, QExpansion):
            return NotImplemented
        d = self._aligned(other)
        lower = min(self.lower, other.lower + d)
        trunc = min(self.truncation, other.truncation + d)
        coeffs = []
        for m in range(lower, trunc + 1):
            a = self.coefficient(m) if m >= self.lower else TpiSum()
            b = other.coefficient(m - d) if m - d >= other.lower else TpiSum()
            coeffs.append(a + b)
        return QExpansion(self.offset, lower, coeffs, trunc)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, ScaledRational, TpiSum)):
            return self.scalar_mul(other)
        if not isinstance(other, QExpansion):
            return NotImplemented
        lower = self.lower + other.lower
        trunc = min(self.truncation + other.lower, other.truncation + self.lower)
        out = [TpiSum() for _ in range(trunc - lower + 1)]
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            mi = self.lower + i
            jmax = min(other.truncation, trunc - mi)
            for mj in range(other.lower, jmax + 1):
                b = other.coeffs[mj - other.lower]
                if b:
                    out[mi + mj - lower] = out[mi + mj - lower] + a * b
        return QExpansion(self.offset + other.offset, lower, out, trunc)

    __rmul__ = __mul__

    def scalar_mul(self, s) -> "QExpansion":
        s = TpiSum.of(s)
        return QExpansion(self.offset, self.lower, [c * s for c in self.coeffs], self.truncation)

    def power(self, k: int) -> "QExpansion":
        if k < 0:
            return self.invert_unit().power(-k)
        result = None
        base = self
        while k:
            if k & 1:
                result = base if result is None else result * base
            k >>= 1
            if k:
                base = base * base
        if result is None:
            return QExpansion.one(self.truncation - self.lower).scalar_mul(1)
        return result

    def invert_unit(self) -> "QExpansion":
        """Inverse of a series with invertible (single-grade) leading coefficient."""
        low = next((m for m in range(self.lower, self.truncation + 1) if self.coefficient(m)), None)
        if low is None:
            raise NonUnitError("cannot invert the zero series")
        try:
            c0 = self.coefficient(low).single()
        except ValueError:
            raise NonUnitError("leading coefficient is a mixed-grade sum; not invertible "
                               "in Q*(2*pi*i)^Z") from None
        b0 = c0.inverse()
        n = self.truncation - low  # number of reliable unit-part coefficients beyond leading
        u = [self.coefficient(low + j) for j in range(n + 1)]
        inv = [TpiSum.of(b0)]
        for m in range(1, n + 1):
            acc = TpiSum()
            for j in range(1, m + 1):
                if u[j]:
                    acc = acc + u[j] * inv[m - j]
            inv.append(acc * (-b0))
        return QExpansion(-self.offset, -low, inv, -low + n)

    # -- derivatives -------------------------------------------------------

    def q_derivative(self) -> "QExpansion":
        """q d/dq: multiplies the coefficient of q**(offset+m) by offset+m."""
        coeffs = [c.scale(self.offset + m)
                  for m, c in zip(range(self.lower, self.truncation + 1), self.coeffs)]
        return QExpansion(self.offset, self.lower, coeffs, self.truncation)

    def tau_derivative(self) -> "QExpansion":
        """d/dtau = 2*pi*i * q d/dq; raises the 2*pi*i grade by one."""
        d = self.q_derivative()
        return QExpansion(d.offset, d.lower, [c.shift(1) for c in d.coeffs], d.truncation)

    # -- comparisons -------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, QExpansion):
            return NotImplemented
        try:
            return (self - other).is_zero()
        except OffsetError:
            return False

    __hash__ = None  # not hashable; equality is coefficientwise

    # -- numerics ----------------------------------------------------------

    def evaluate(self, tau=None, q=None) -> complex:
        """Numeric sum of the stored coefficients at q = exp(2*pi*i*tau)."""
        import cmath
        if q is None:
            if tau is None:
                raise ValueError("need tau or q")
            q = cmath.exp(2j * cmath.pi * tau)
        if abs(q) >= 1:
            raise ValueError("divergent evaluation: |q| >= 1")
        qo = q ** complex(self.offset)
        total = 0j
        for m in range(self.lower, self.truncation + 1):
            c = self.coefficient(m)
            if c:
                total += complex(c) * q ** m
        return qo * total

    def tail_estimate(self, tau=None, q=None) -> float:
        """Geometric tail bound |q|**(N+1)/(1-|q|) scaled by recent coefficient size."""
        import cmath
        if q is None:
            q = cmath.exp(2j * cmath.pi * tau)
        aq = abs(q)
        if aq >= 1:
            return float("inf")
        recent = [abs(complex(self.coefficient(m)))
                  for m in range(max(self.lower, self.truncation - 4), self.truncation + 1)]
        scale = max(recent) if recent else 1.0
        return max(scale, 1.0) * aq ** (self.truncation + 1 - self.lower + max(self.lower, 0)) / (1 - aq)

    # -- serialization -----------------------------------------------------

    def to_json(self) -> dict:
        return {
            "offset": format_fraction(self.offset),
            "lower": self.lower,
            "truncation": self.truncation,
            "coeffs": [c.to_pairs() for c in self.coeffs],
        }

    @classmethod
    def from_json(cls, data) -> "QExpansion":
        return cls(Fraction(data["offset"]), data["lower"],
                   [TpiSum.from_pairs(p) for p in data["coeffs"]], data["truncation"])

    def __repr__(self):
        parts = []
        shown = 0
        for m in range(self.lower, self.truncation + 1):
            c = self.coefficient(m)
            if c:
                e = self.offset + m
                parts.append(f"({c!r})*q^{format_fraction(e)}" if e else f"({c!r})")
                shown += 1
                if shown >= 6:
                    parts.append("...")
                    break
        body = " + ".join(parts) if parts else "0"
        return f"<QExpansion {body} + O(q^{format_fraction(self.offset + self.truncation + 1)})>"


# -- named series -----------------------------------------------------------

@lru_cache(maxsize=None)
def _bernoulli(m: int) -> Fraction:
    if m == 0:
        return Fraction(1)
    # sum_{j=0}^{m} binom(m+1, j) B_j = 0
    from math import comb
    acc = Fraction(0)
    for j in range(m):
        acc += comb(m + 1, j) * _bernoulli(j)
    return -acc / (m + 1)


def bernoulli(two_k: int) -> Fraction:
    """Bernoulli number B_{2k} (also defined at odd/0 arguments)."""
    if two_k < 0:
        raise ValueError("argument must be nonnegative")
    return _bernoulli(two_k)


def sigma(k: int, n: int) -> int:
    """Divisor power sum sigma_k(n)."""
    if n < 1:
        raise ValueError("n must be positive")
    return sum(d ** k for d in range(1, n + 1) if n % d == 0)


def eisenstein(two_k: int, truncation: int = DEFAULT_ORDER) -> QExpansion:
    """G_{2k} with every coefficient carried at 2*pi*i grade 2k.

    Constant term -B_{2k}/(2k)!; the coefficient of q**n is
    2*sigma_{2k-1}(n)/(2k-1)!.
    """
    if two_k < 2 or two_k % 2:
        raise ValueError("weight must be a positive even integer")
    const = -bernoulli(two_k) / factorial(two_k)
    coeffs = [TpiSum.term(const, two_k)]
    pref = Fraction(2, factorial(two_k - 1))
    for n in range(1, truncation + 1):
        coeffs.append(TpiSum.term(pref * sigma(two_k - 1, n), two_k))
    return QExpansion(0, 0, coeffs, truncation)


def euler_product(truncation: int) -> QExpansion:
    """prod_{n>=1} (1 - q**n) to the given order."""
    result = QExpansion.one(truncation)
    for n in range(1, truncation + 1):
        result = result * QExpansion.from_dict({0: 1, n: -1}, truncation)
    return result


def eta_power(ell: int, truncation: int = DEFAULT_ORDER) -> QExpansion:
    """eta(q)**ell = q**(ell/24) prod (1-q**n)**ell, offset ell/24."""
    base = euler_product(truncation)
    series = base.power(ell) if ell >= 0 else base.invert_unit().power(-ell)
    return QExpansion(Fraction(ell, 24), series.lower, series.coeffs, series.truncation)


def geometric_inverse_factor(k: int, truncation: int = DEFAULT_ORDER) -> QExpansion:
    """(1 - q**k)**-1 expanded in nonnegative powers of q (k != 0).

    For k < 0 this is the rewriting -q**|k|/(1-q**|k|), the unique expansion
    convergent for |q| < 1.
    """
    if k == 0:
        raise ValueError("k must be nonzero")
    if k > 0:
        return QExpansion.from_dict({k * i: 1 for i in range(truncation // k + 1)}, truncation)
    a = -k
    return QExpansion.from_dict({a * i: -1 for i in range(1, truncation // a + 1)}, truncation)


def w_factor(k: int, truncation: int = DEFAULT_ORDER) -> QExpansion:
    """q**k/(1-q**k) (k != 0), expanded in nonnegative powers of q."""
    if k == 0:
        raise ValueError("k must be nonzero")
    if k > 0:
        return QExpansion.from_dict({k * i: 1 for i in range(1, truncation // k + 1)}, truncation)
    a = -k
    return QExpansion.from_dict({0: -1}, truncation) - w_factor(a, truncation)


def dtau_inverse_factor(k: int, n: int, truncation: int = DEFAULT_ORDER) -> QExpansion:
    """d/dtau applied n times to (1-q**k)**-1, by direct differentiation."""
    if k == 0:
        raise ValueError("k must be nonzero")
    result = geometric_inverse_factor(k, truncation)
    for _ in range(n):
        result = result.tau_derivative()
    return result
