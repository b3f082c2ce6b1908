"""Stirling/Eulerian combinatorics behind the correlator recursion.

Exact integer and rational apparatus: Stirling numbers of both kinds,
Eulerian numbers, descent statistics, the unique partition of a tuple into
maximal increasing runs, the run-counting polynomials C_u in the variable
w = q**k/(1-q**k), and the Kronecker-delta collapse identity that reduces
the ordered zero-mode recursion to the commuting one.

Everything here is arbitrary precision; brute-force enumerations live only
in the test suite.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, factorial


@lru_cache(maxsize=None)
def stirling_first(n: int, k: int) -> int:
    """Signed Stirling number of the first kind s(n, k).

    Coefficient of x**k in the falling factorial (x)_n; s(0,0) = 1 and
    s(n,k) = 0 for k < 0 or k > n.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if k < 0 or k > n:
        return 0
    if n == 0:
        return 1
    # (x)_n = (x - (n-1)) (x)_{n-1}
    return stirling_first(n - 1, k - 1) - (n - 1) * stirling_first(n - 1, k)


@lru_cache(maxsize=None)
def stirling_second(n: int, k: int) -> int:
    """Stirling number of the second kind S(n, k), with S(0,0) = 1."""
    if n < 0 or k < 0:
        raise ValueError("n, k must be nonnegative")
    if k > n:
        return 0
    if n == 0:
        return 1
    if k == 0:
        return 0
    return k * stirling_second(n - 1, k) + stirling_second(n - 1, k - 1)


@lru_cache(maxsize=None)
def eulerian(n: int, k: int) -> int:
    """Eulerian number A(n, k): permutations of (1..n) with k descents."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if k < 0 or k > n - 1:
        return 0
    if n == 1:
        return 1 if k == 0 else 0
    return (k + 1) * eulerian(n - 1, k) + (n - k) * eulerian(n - 1, k - 1)


def eulerian_polynomial(n: int) -> list[int]:
    """Coefficient list [A(n,0), ..., A(n,n-1)]; A_0 = [1]."""
    if n == 0:
        return [1]
    return [eulerian(n, k) for k in range(n)]


def _check_distinct(u):
    if len(set(u)) != len(u):
        raise ValueError(f"tuple entries must be distinct: {u}")


def descent_count(u: tuple[int, ...]) -> int:
    """Number of positions j with u[j+1] < u[j]."""
    return sum(1 for a, b in zip(u, u[1:]) if b < a)


def increasing_runs(u: tuple[int, ...]) -> tuple[tuple[int, ...], ...]:
    """The unique maximal partition of u into strictly increasing runs.

    Splits exactly at the descents, so the number of runs is
    descent_count(u) + 1 for nonempty u.
    """
    _check_distinct(u)
    if not u:
        return ()
    runs = []
    start = 0
    for j in range(len(u) - 1):
        if u[j + 1] < u[j]:
            runs.append(tuple(u[start:j + 1]))
            start = j + 1
    runs.append(tuple(u[start:]))
    return tuple(runs)


class WPolynomial:
    """Polynomial in the formal variable w = q**k/(1-q**k), integer coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        if coeffs is None:
            coeffs = {}
        self.coeffs = {e: c for e, c in coeffs.items() if c != 0}

    @classmethod
    def one(cls):
        return cls({0: 1})

    def __eq__(self, other):
        if not isinstance(other, WPolynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __add__(self, other):
        coeffs = dict(self.coeffs)
        for e, c in other.coeffs.items():
            coeffs[e] = coeffs.get(e, 0) + c
        return WPolynomial(coeffs)

    def __mul__(self, other):
        coeffs = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                coeffs[e1 + e2] = coeffs.get(e1 + e2, 0) + c1 * c2
        return WPolynomial(coeffs)

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for e in sorted(self.coeffs, reverse=True):
            c = self.coeffs[e]
            mono = "1" if e == 0 else ("w" if e == 1 else f"w^{e}")
            parts.append(mono if c == 1 and e != 0 else (f"{c}" if e == 0 else f"{c}*{mono}"))
        return " + ".join(parts)


def c_polynomial(u: tuple[int, ...]) -> WPolynomial:
    """C_u as a polynomial in w, via the descent closed form.

    C_u = sum_i binom(u - des - 1, i) w**(i + des + 1) where des is the
    descent count; C_() = 1.
    """
    _check_distinct(u)
    if not u:
        return WPolynomial.one()
    n = len(u)
    des = descent_count(u)
    return WPolynomial({i + des + 1: comb(n - des - 1, i) for i in range(n - des)})


def c_polynomial_by_runs(u: tuple[int, ...]) -> WPolynomial:
    """C_u as the product over maximal increasing runs of the one-run polynomials."""
    result = WPolynomial.one()
    for run in increasing_runs(u):
        r = len(run)
        result = result * WPolynomial({j + 1: comb(r - 1, j) for j in range(r)})
    return result


def recursion_coefficient(u: int, des: int, t: int) -> Fraction:
    """Inner rational coefficient of the ordered recursion.

    The coefficient multiplying (2*pi*i)**(u-t) g^t_{m+1} contributed by one
    permutation block of length u with des descents:

        sum_i binom(u-des-1, i) * s(i+des+1, t) / (i+des+1)!
    """
    if not (0 <= t <= u):
        raise ValueError("need 0 <= t <= u")
    if u >= 1 and des > u - 1:
        raise ValueError("need des <= u - 1")
    total = Fraction(0)
    for i in range(u - des):
        order = i + des + 1
        s = stirling_first(order, t)
        if s:
            total += Fraction(comb(u - des - 1, i) * s, factorial(order))
    return total


def identity_comm_lhs(u: int, t: int) -> Fraction:
    """Eulerian-weighted sum of recursion coefficients; equals delta_{u,t}."""
    if u < 1:
        raise ValueError("u must be >= 1")
    if not (0 <= t <= u):
        raise ValueError("need 0 <= t <= u")
    total = Fraction(0)
    for des in range(u):
        a = eulerian(u, des)
        if a:
            total += a * recursion_coefficient(u, des, t)
    return total
