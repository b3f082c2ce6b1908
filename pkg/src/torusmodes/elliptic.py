"""Two-variable special functions: P_k, the shifted P~_1, and g^i_j.

A :class:`BivariateExpansion` collects the layers of a double expansion

    (2*pi*i)**tpi * sum_{m=0}^{N} layer_m(zeta) * q**m

convergent on |q| < |zeta| < 1.  Only the m = 0 layer may be a genuine
rational function of zeta; all higher layers are Laurent polynomials built
from a divisor rule.  The n < 0 half of the defining sums is expanded as
-sum_{i>=1} zeta**n q**(-n*i), the unique rewriting convergent in the
region.

The q**0 layers come from the Eulerian closed form
sum_{n>0} n**(k-1) zeta**n = zeta A_{k-1}(zeta) / (1-zeta)**k, which ties
this module to the combinatorics of permutation descents.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, factorial

from .combinatorics import eulerian_polynomial
from .qseries import DEFAULT_ORDER, QExpansion, eisenstein
from .ratfunc import LaurentPoly, ZetaRational
from .scaled import ScaledRational, TpiSum


class BivariateExpansion:
    __slots__ = ("tpi", "layers", "truncation")

    def __init__(self, tpi: int, layers, truncation: int):
        layers = list(layers)
        if len(layers) != truncation + 1:
            raise ValueError("layer list does not match truncation")
        self.tpi = tpi
        self.layers = layers
        self.truncation = truncation

    @classmethod
    def zero(cls, truncation: int, tpi: int = 0) -> "BivariateExpansion":
        return cls(tpi, [ZetaRational.const(0) for _ in range(truncation + 1)], truncation)

    def layer(self, m: int) -> ZetaRational:
        return self.layers[m]

    def is_zero(self) -> bool:
        return all(l.is_zero() for l in self.layers)

    def __neg__(self):
        return BivariateExpansion(self.tpi, [-l for l in self.layers], self.truncation)

    def _check_grade(self, other):
        if self.tpi != other.tpi:
            raise ValueError(f"grade mismatch: (2*pi*i)^{self.tpi} vs (2*pi*i)^{other.tpi}")

    def __add__(self, other):
        if not isinstance(other, BivariateExpansion):
            return NotImplemented
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        self._check_grade(other)
        n = min(self.truncation, other.truncation)
        return BivariateExpansion(self.tpi,
                                  [self.layers[m] + other.layers[m] for m in range(n + 1)], n)

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        if not isinstance(other, BivariateExpansion):
            return NotImplemented
        return (self - other).is_zero()

    def scalar_mul(self, s: ScaledRational) -> "BivariateExpansion":
        """Multiply by a ScaledRational, tracking its 2*pi*i grade."""
        if not s:
            return BivariateExpansion.zero(self.truncation)
        return BivariateExpansion(self.tpi + s.tpi,
                                  [l * s.value for l in self.layers], self.truncation)

    def tau_derivative(self) -> "BivariateExpansion":
        """d/dtau: multiplies layer m by m and raises the grade."""
        return BivariateExpansion(self.tpi + 1,
                                  [l * Fraction(m) for m, l in enumerate(self.layers)],
                                  self.truncation)

    def zeta_derivative(self) -> "BivariateExpansion":
        """zeta d/dzeta applied layerwise; grade unchanged."""
        return BivariateExpansion(self.tpi, [l.zeta_ddzeta() for l in self.layers],
                                  self.truncation)

    def truncate(self, n: int) -> "BivariateExpansion":
        if n > self.truncation:
            raise ValueError("cannot extend a truncated expansion")
        return BivariateExpansion(self.tpi, self.layers[: n + 1], n)

    def eval_numeric(self, z: complex, tau: complex):
        """Numeric value and crude tail estimate on 0 < Im z < Im tau.

        Returns (value, tail_estimate).  The layer sum requires
        |q| < |zeta| < 1, i.e. z in the open fundamental strip.
        """
        import cmath
        if not (0 < z.imag < tau.imag):
            raise ValueError(f"z={z} outside the strip 0 < Im z < Im tau for tau={tau}")
        zeta = cmath.exp(2j * cmath.pi * z)
        q = cmath.exp(2j * cmath.pi * tau)
        total = 0j
        recent = []
        for m, layer in enumerate(self.layers):
            v = layer.evaluate(zeta) * q ** m
            recent.append(abs(v))
            total += v
        r = max(abs(q), abs(q / zeta), abs(q * zeta))
        scale = max(recent[-5:]) if recent else 0.0
        tail = scale * r / max(1e-300, 1 - r)
        grade = abs(complex(TpiSum.term(1, self.tpi)))
        return complex(TpiSum.term(1, self.tpi)) * total, grade * tail

    def to_json(self) -> dict:
        return {"tpi": self.tpi, "truncation": self.truncation,
                "layers": [dict(m=m, **l.to_json()) for m, l in enumerate(self.layers)]}


def _positive_sum_closed_form(k: int) -> ZetaRational:
    """sum_{n>0} n**(k-1) zeta**n = zeta A_{k-1}(zeta) / (1-zeta)**k."""
    a = eulerian_polynomial(k - 1)
    num = LaurentPoly({1 + j: c for j, c in enumerate(a)})
    den = LaurentPoly.const(1)
    one_minus = LaurentPoly({0: 1, 1: -1})
    for _ in range(k):
        den = den * one_minus
    return ZetaRational(num, den)


def _divisor_layer(power: int, m: int) -> LaurentPoly:
    """sum_{d | m} (d**power zeta**d - (-d)**power zeta**-d) with rational powers of d."""
    coeffs = {}
    for d in range(1, m + 1):
        if m % d:
            continue
        pos = Fraction(d) ** power
        neg = Fraction(-d) ** power
        coeffs[d] = coeffs.get(d, 0) + pos
        coeffs[-d] = coeffs.get(-d, 0) - neg
    return LaurentPoly(coeffs)


def p_expansion(k: int, truncation: int = DEFAULT_ORDER) -> BivariateExpansion:
    """P_k/(2*pi*i)**k at grade k.

    Layer 0 is the Eulerian closed form of the n > 0 half; layer m >= 1 is
    the divisor rule obtained from expanding 1/(1-q**n) for n > 0 and
    -q**(-n)/(1-q**(-n)) for n < 0.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    pref = Fraction(1, factorial(k - 1))
    layers = [_positive_sum_closed_form(k) * pref]
    for m in range(1, truncation + 1):
        layers.append(ZetaRational.from_poly(_divisor_layer(k - 1, m) * pref))
    return BivariateExpansion(k, layers, truncation)


def p_tilde_1(truncation: int = DEFAULT_ORDER) -> BivariateExpansion:
    """P~_1 = P_1 + pi*i; the constant enters layer 0 as 1/2 at grade 1."""
    p1 = p_expansion(1, truncation)
    layers = list(p1.layers)
    layers[0] = layers[0] + ZetaRational.const(Fraction(1, 2))
    return BivariateExpansion(1, layers, truncation)


def g_expansion(i: int, j: int, truncation: int = DEFAULT_ORDER) -> BivariateExpansion:
    """g^i_j/(2*pi*i)**(i+j) at grade i+j.

    For i = 0 this is P_j.  For i >= 1 the q**0 layer vanishes and layer m
    carries the extra factor m**i from the tau-derivatives of the geometric
    factors.
    """
    if j < 1:
        raise ValueError("j must be >= 1")
    if i < 0:
        raise ValueError("i must be >= 0")
    if i == 0:
        return p_expansion(j, truncation)
    pref = Fraction(1, factorial(j - 1))
    layers = [ZetaRational.const(0)]
    for m in range(1, truncation + 1):
        layers.append(ZetaRational.from_poly(
            _divisor_layer(j - i - 1, m) * (pref * Fraction(m) ** i)))
    return BivariateExpansion(i + j, layers, truncation)


def zeta_derivative(b: BivariateExpansion) -> BivariateExpansion:
    return b.zeta_derivative()


class ZSeries:
    """Laurent series in z whose coefficients are exact QExpansions in q."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        self.coeffs = {e: c for e, c in (coeffs or {}).items() if not c.is_zero()}

    def coefficient(self, e: int, truncation: int | None = None) -> QExpansion:
        c = self.coeffs.get(e)
        if c is None:
            if truncation is None:
                truncation = 0
            return QExpansion.zero(truncation)
        return c

    def exponents(self):
        return sorted(self.coeffs)

    def d_dz(self) -> "ZSeries":
        return ZSeries({e - 1: c.scalar_mul(e) for e, c in self.coeffs.items() if e != 0})

    def scalar_mul(self, s) -> "ZSeries":
        return ZSeries({e: c.scalar_mul(s) for e, c in self.coeffs.items()})

    def __sub__(self, other):
        exps = set(self.coeffs) | set(other.coeffs)
        out = {}
        for e in exps:
            a, b = self.coeffs.get(e), other.coeffs.get(e)
            if a is None:
                out[e] = -b
            elif b is None:
                out[e] = a
            else:
                out[e] = a - b
        return ZSeries(out)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs.values())

    def __eq__(self, other):
        if not isinstance(other, ZSeries):
            return NotImplemented
        return (self - other).is_zero()

    def to_json(self) -> dict:
        return {"z_coeffs": {str(e): self.coeffs[e].to_json() for e in self.exponents()}}


def wp_laurent(k: int, z_order: int, q_order: int) -> ZSeries:
    """Laurent expansion of wp_k about z = 0 to z-order ``z_order``:

        1/z**k + (-1)**k sum_{n>=1} binom(2n+1, k-1) G_{2n+2} z**(2n+2-k).
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    coeffs = {-k: QExpansion.from_dict({0: 1}, q_order)}
    sign = (-1) ** k
    n = 1
    while 2 * n + 2 - k <= z_order:
        c = comb(2 * n + 1, k - 1)
        if c:
            g = eisenstein(2 * n + 2, q_order).scalar_mul(sign * c)
            e = 2 * n + 2 - k
            coeffs[e] = coeffs[e] + g if e in coeffs else g
        n += 1
    return ZSeries(coeffs)


def g1m_z_expansion(m: int, z_order: int, q_order: int) -> ZSeries:
    """z-expansion of g^m_1 about z = 0:

        (2*pi*i)**m sum_{n>=0} d_tau^m G_{2n+2} z**(2n+1+m) / ((2n+2)...(2n+1+m))
        + sum_{odd k<=m} c_k (2*pi*i)**(m-k) z**(m-k) / (m-k)!

    obtained by integrating the tau-derivatives of the P_1 z-expansion m
    times from 0.  The definite integrals contribute the constants
    c_k = 2*pi*i sum_{n!=0} n**-k d_tau^m (1-q**n)**-1, which vanish for even
    k and equal 2 (2*pi*i)**(m+1) sum_N (sum_{d|N} d**(m-k) (N/d)**m) q**N for
    odd k.  Only z-exponents of parity (1+m) mod 2 appear.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    coeffs = {}
    n = 0
    while 2 * n + 1 + m <= z_order:
        g = eisenstein(2 * n + 2, q_order)
        for _ in range(m):
            g = g.tau_derivative()
        denom = 1
        for f in range(2 * n + 2, 2 * n + 2 + m):
            denom *= f
        coeffs[2 * n + 1 + m] = g.scalar_mul(TpiSum.term(Fraction(1, denom), m))
        n += 1
    for k in range(1, m + 1, 2):
        if m - k > z_order:
            continue
        ck = {}
        for bign in range(1, q_order + 1):
            total = Fraction(0)
            for d in range(1, bign + 1):
                if bign % d == 0:
                    total += Fraction(d) ** (m - k) * Fraction(bign // d) ** m
            ck[bign] = TpiSum.term(2 * total, m + 1)
        correction = QExpansion.from_dict(ck, q_order).scalar_mul(
            TpiSum.term(Fraction(1, factorial(m - k)), m - k))
        e = m - k
        coeffs[e] = coeffs[e] + correction if e in coeffs else correction
    return ZSeries(coeffs)
