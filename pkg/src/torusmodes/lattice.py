"""Lattice vertex-algebra backend: vector enumeration, theta moments, the
closed-form zero-mode trace, and a brute-force Fock-basis oracle.

The graded trace of powers of the zero mode of v = h[-1]^2 1 - 1/12 over an
even positive definite lattice of rank l is

    Tr v_0^n q^{L0 - l/24}
      = sum_j C(n,j) [sum_a <h,a>^{2j} q^{<a,a>/2}] eta^{-(l-1)} (2q d/dq)^{n-j} eta^{-1},

with h a unit vector of the ambient space.  Here h is restricted to axes of
the orthonormal frame obtained by exact Gram-Schmidt from the lattice basis,
which keeps every <h,a>^2 rational.  The oracle recomputes the same traces
by direct enumeration of the Fock basis (lattice vectors times colored
oscillator partitions), organized by counting but using no series identity.

Vector enumeration is a Fincke-Pohst box search on the exact LDL^T
decomposition of the Gram matrix; float bounds carry a safety margin and
every candidate is confirmed with exact integer arithmetic, so shells are
complete.
"""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb

from .qseries import QExpansion, eta_power
from .scaled import TWO_PI_I


class LatticeError(ValueError):
    pass


def _ldl(gram):
    """Exact LDL^T of a symmetric positive definite Fraction matrix."""
    n = len(gram)
    L = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    D = []
    for i in range(n):
        d = Fraction(gram[i][i]) - sum(D[k] * L[i][k] ** 2 for k in range(i))
        if d <= 0:
            raise LatticeError("Gram matrix is not positive definite")
        D.append(d)
        for j in range(i + 1, n):
            L[j][i] = (Fraction(gram[j][i])
                       - sum(D[k] * L[i][k] * L[j][k] for k in range(i))) / d
    return L, D


@dataclass(frozen=True)
class EvenLattice:
    gram: tuple

    def __post_init__(self):
        g = self.gram
        n = len(g)
        for row in g:
            if len(row) != n:
                raise LatticeError("Gram matrix must be square")
        for i in range(n):
            if g[i][i] % 2:
                raise LatticeError("even lattice needs even diagonal")
            for j in range(n):
                if g[i][j] != g[j][i]:
                    raise LatticeError("Gram matrix must be symmetric")
                if not isinstance(g[i][j], int):
                    raise LatticeError("Gram entries must be integers")
        _ldl(g)  # positive definiteness

    @property
    def rank(self) -> int:
        return len(self.gram)

    def norm2(self, x) -> int:
        """<x, x> for integer coordinates x."""
        g = self.gram
        return sum(x[i] * g[i][j] * x[j] for i in range(len(g)) for j in range(len(g)))

    def blocks(self):
        """Connected components of the Gram matrix, as sorted index tuples."""
        n = self.rank
        seen = [False] * n
        out = []
        for start in range(n):
            if seen[start]:
                continue
            comp, stack = [], [start]
            seen[start] = True
            while stack:
                i = stack.pop()
                comp.append(i)
                for j in range(n):
                    if not seen[j] and self.gram[i][j] != 0:
                        seen[j] = True
                        stack.append(j)
            out.append(tuple(sorted(comp)))
        return out

    def sublattice(self, idx) -> "EvenLattice":
        return EvenLattice(tuple(tuple(self.gram[i][j] for j in idx) for i in idx))

    def to_json(self) -> dict:
        return {"rank": self.rank, "gram": [list(r) for r in self.gram]}

    @classmethod
    def from_json(cls, data) -> "EvenLattice":
        return cls(tuple(tuple(int(v) for v in row) for row in data["gram"]))

    @classmethod
    def load(cls, path) -> "EvenLattice":
        with open(path) as fh:
            return cls.from_json(json.load(fh))


_E8_EDGES = ((1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (2, 4))


def e8() -> EvenLattice:
    """E8 root lattice Gram matrix (Bourbaki node numbering)."""
    g = [[0] * 8 for _ in range(8)]
    for i in range(8):
        g[i][i] = 2
    for a, b in _E8_EDGES:
        g[a - 1][b - 1] = g[b - 1][a - 1] = -1
    return EvenLattice(tuple(tuple(r) for r in g))


def block_power(lat: EvenLattice, copies: int) -> EvenLattice:
    n = lat.rank
    g = [[0] * (n * copies) for _ in range(n * copies)]
    for c in range(copies):
        for i in range(n):
            for j in range(n):
                g[c * n + i][c * n + j] = lat.gram[i][j]
    return EvenLattice(tuple(tuple(r) for r in g))


def e8_cubed() -> EvenLattice:
    return block_power(e8(), 3)


def a1() -> EvenLattice:
    return EvenLattice(((2,),))


PRESETS = {"e8": e8, "e8x3": e8_cubed, "a1": a1}


@dataclass
class VectorShell:
    norm_half: int
    vectors: list


def enumerate_vectors(lat: EvenLattice, max_norm_half: int):
    """All shells <a,a>/2 = 0..max_norm_half, complete and duplicate-free."""
    if max_norm_half < 0:
        raise LatticeError("max_norm_half must be >= 0")
    n = lat.rank
    L, D = _ldl(lat.gram)
    Lf = [[float(L[i][j]) for j in range(n)] for i in range(n)]
    Df = [float(d) for d in D]
    bound = 2 * max_norm_half
    shells = {m: [] for m in range(max_norm_half + 1)}
    x = [0] * n

    def rec(i, remaining):
        # remaining = bound - sum_{k>i} D_k (x_k + sum_{j>k} L_jk x_j)^2  (float, padded)
        if i < 0:
            norm = lat.norm2(x)
            if 0 <= norm <= bound:
                shells[norm // 2].append(tuple(x))
            return
        c = sum(Lf[j][i] * x[j] for j in range(i + 1, n))
        half_width = math.sqrt(max(remaining, 0.0) / Df[i])
        lo = math.ceil(-c - half_width - 1e-9)
        hi = math.floor(-c + half_width + 1e-9)
        for v in range(lo, hi + 1):
            x[i] = v
            rec(i - 1, remaining - Df[i] * (v + c) ** 2)
        x[i] = 0

    rec(n - 1, bound + 1e-6)
    return [VectorShell(m, sorted(shells[m])) for m in range(max_norm_half + 1)]


@lru_cache(maxsize=None)
def _shell_sizes(gram: tuple, max_norm_half: int) -> tuple:
    lat = EvenLattice(gram)
    return tuple(len(s.vectors) for s in enumerate_vectors(lat, max_norm_half))


def theta_series(lat: EvenLattice, truncation: int) -> QExpansion:
    """Theta series of the lattice, via per-block enumeration and convolution."""
    coeffs = [1] + [0] * truncation
    for idx in lat.blocks():
        sizes = _shell_sizes(lat.sublattice(idx).gram, truncation)
        new = [0] * (truncation + 1)
        for a, ca in enumerate(coeffs):
            if ca:
                for b in range(0, truncation + 1 - a):
                    if sizes[b]:
                        new[a + b] += ca * sizes[b]
        coeffs = new
    return QExpansion.from_dict(dict(enumerate(coeffs)), truncation)


def gram_schmidt_axis(lat: EvenLattice, axis: int):
    """Exact data for the frame axis: (g, <g,g>) with f_axis = g/sqrt(<g,g>).

    g is the Gram-Schmidt vector of basis vector ``axis`` within its block,
    expressed in lattice-basis coordinates as Fractions.
    """
    if not (0 <= axis < lat.rank):
        raise LatticeError(f"axis {axis} out of range for rank {lat.rank}")
    for idx in lat.blocks():
        if axis in idx:
            block = idx
            break
    sub = lat.sublattice(block)
    pos = block.index(axis)
    gb = sub.gram
    k = sub.rank
    basis = [[Fraction(int(i == j)) for j in range(k)] for i in range(k)]

    def inner(u, v):
        return sum(u[i] * gb[i][j] * v[j] for i in range(k) for j in range(k))

    gs = []
    norms = []
    for i in range(pos + 1):
        g = list(basis[i])
        for j in range(i):
            c = inner(basis[i], gs[j]) / norms[j]
            g = [a - c * b for a, b in zip(g, gs[j])]
        gs.append(g)
        norms.append(inner(g, g))
    return block, gs[pos], norms[pos]


def axis_pairing_sq(lat: EvenLattice, axis: int, block, gvec, gnorm, x) -> Fraction:
    """<f_axis, x>^2 for integer block coordinates x, exactly rational."""
    sub_gram = [[lat.gram[i][j] for j in block] for i in block]
    k = len(block)
    ip = sum(gvec[i] * sub_gram[i][j] * x[j] for i in range(k) for j in range(k))
    return ip * ip / gnorm


@lru_cache(maxsize=None)
def _axis_shell_data(lat: EvenLattice, axis: int, max_norm_half: int):
    """[(norm_half, <f,a>^2, count)] over the axis block's shells, grouped."""
    block, gvec, gnorm = gram_schmidt_axis(lat, axis)
    sub = lat.sublattice(block)
    sub_gram = sub.gram
    k = sub.rank
    # inner products <g, x> with denominators cleared for speed
    den = 1
    for c in gvec:
        den = den * c.denominator // math.gcd(den, c.denominator)
    gv = [int(c * den) for c in gvec]
    row = tuple(sum(gv[i] * sub_gram[i][j] for i in range(k)) for j in range(k))
    grouped = {}
    for shell in enumerate_vectors(sub, max_norm_half):
        for x in shell.vectors:
            ip = sum(r * xi for r, xi in zip(row, x))
            key = (shell.norm_half, ip * ip)
            grouped[key] = grouped.get(key, 0) + 1
    return [(nh, Fraction(ip2, den * den) / gnorm, cnt)
            for (nh, ip2), cnt in sorted(grouped.items())], block


def theta_moment(lat: EvenLattice, axis: int, power: int, truncation: int) -> QExpansion:
    """sum_a <f_axis, a>**power q^{<a,a>/2} to the given order (exact).

    Odd powers return the zero series (the a -> -a symmetry kills every shell).
    """
    if power % 2:
        # <f,a>**odd sums to zero shell by shell
        return QExpansion.zero(truncation)
    data, block = _axis_shell_data(lat, axis, truncation)
    moments = {}
    for nh, t2, cnt in data:
        moments[nh] = moments.get(nh, Fraction(0)) + cnt * t2 ** (power // 2)
    series = QExpansion.from_dict(moments, truncation)
    # other blocks contribute their plain theta series
    rest = [idx for idx in lat.blocks() if idx != block]
    for idx in rest:
        sizes = _shell_sizes(lat.sublattice(idx).gram, truncation)
        series = series * QExpansion.from_dict(dict(enumerate(sizes)), truncation)
    return series


def eta_derivative_factor(ell: int, r: int, truncation: int) -> QExpansion:
    """eta**(-(ell-1)) (2 q d/dq)**r eta**(-1), exact, offset -ell/24."""
    d = eta_power(-1, truncation)
    for _ in range(r):
        d = d.q_derivative().scalar_mul(2)
    return eta_power(-(ell - 1), truncation) * d


def quasimod_rhs(lat: EvenLattice, axis: int, n: int, truncation: int) -> QExpansion:
    """Closed-form Tr v_0^n q^{L0 - l/24} for v = h[-1]^2 1 - 1/12."""
    ell = lat.rank
    total = None
    for j in range(n + 1):
        term = theta_moment(lat, axis, 2 * j, truncation) * \
            eta_derivative_factor(ell, n - j, truncation)
        term = term.scalar_mul(comb(n, j))
        total = term if total is None else total + term
    return total


@lru_cache(maxsize=None)
def partition_counts(colors: int, max_n: int) -> tuple:
    """Number of ``colors``-colored partitions of 0..max_n (pure counting DP)."""
    counts = [1] + [0] * max_n
    for _ in range(colors):
        for part in range(1, max_n + 1):
            for total in range(part, max_n + 1):
                counts[total] += counts[total - part]
    return tuple(counts)


@dataclass(frozen=True)
class FockLabel:
    """Basis vector: lattice point plus one oscillator partition per color."""
    alpha: tuple
    partitions: tuple  # one sorted tuple of parts per color

    def level(self, lat: EvenLattice) -> Fraction:
        return Fraction(lat.norm2(self.alpha), 2) + sum(sum(p) for p in self.partitions)


def fock_labels(lat: EvenLattice, max_level: int):
    """Literal Fock-basis enumeration up to L0-level max_level (small ranks only)."""
    from itertools import product

    def partitions_upto(n):
        out = [[] for _ in range(n + 1)]
        out[0].append(())
        for total in range(1, n + 1):
            def gen(rem, mx, cur):
                if rem == 0:
                    out[total].append(tuple(cur))
                    return
                for p in range(min(rem, mx), 0, -1):
                    gen(rem - p, p, cur + [p])
            gen(total, total, [])
        return out

    parts = partitions_upto(max_level)
    ell = lat.rank
    for shell in enumerate_vectors(lat, max_level):
        budget = max_level - shell.norm_half
        level_lists = []
        for split in _compositions(budget, ell):
            level_lists.append(split)
        for alpha in shell.vectors:
            for split in level_lists:
                for combo in product(*(parts[s] for s in split)):
                    yield FockLabel(alpha, combo)


def _compositions(total_max, k):
    """All tuples of k nonnegative ints with sum <= total_max."""
    if k == 0:
        yield ()
        return
    for first in range(total_max + 1):
        for rest in _compositions(total_max - first, k - 1):
            yield (first,) + rest


def fock_trace_literal(lat: EvenLattice, axis: int, n: int, truncation: int) -> QExpansion:
    """Tr v_0^n q^{L0-l/24} by literal Fock-label enumeration (tiny lattices).

    Oscillator color ``axis`` is the frame direction of v; the lattice pairing
    only sees the component of alpha in the axis block.
    """
    block, gvec, gnorm = gram_schmidt_axis(lat, axis)
    coeffs = {}
    for label in fock_labels(lat, truncation):
        lvl = label.level(lat)
        alpha_block = tuple(label.alpha[i] for i in block)
        t2 = axis_pairing_sq(lat, axis, block, gvec, gnorm, alpha_block)
        eig = t2 + 2 * sum(label.partitions[axis]) - Fraction(1, 12)
        m = int(lvl)
        coeffs[m] = coeffs.get(m, Fraction(0)) + eig ** n
    series = QExpansion.from_dict(coeffs, truncation)
    return QExpansion(Fraction(-lat.rank, 24), series.lower, series.coeffs, series.truncation)


def fock_trace_oracle(lat: EvenLattice, axis: int, n: int, truncation: int) -> QExpansion:
    """Brute-force Tr v_0^n q^{L0-l/24} over the Fock basis, organized by counting.

    The v_0 eigenvalue on a basis vector is <h,alpha>^2 + 2|lambda_axis| - 1/12,
    independent of all other oscillator colors and of the other-block lattice
    components; those are enumerated through partition and shell counting.
    """
    ell = lat.rank
    data, block = _axis_shell_data(lat, axis, truncation)
    # rest-norm counts: lattice vectors of the other blocks by total norm/2
    rest = [1] + [0] * truncation
    for idx in lat.blocks():
        if idx == block:
            continue
        sizes = _shell_sizes(lat.sublattice(idx).gram, truncation)
        new = [0] * (truncation + 1)
        for a, ca in enumerate(rest):
            if ca:
                for b in range(0, truncation + 1 - a):
                    new[a + b] += ca * sizes[b]
        rest = new
    # oscillators: axis color counted with its eigenvalue, other ell-1 colors counted
    p_axis = partition_counts(1, truncation)
    p_rest = partition_counts(ell - 1, truncation)
    # convolve the eigenvalue-blind factors once
    blind = [0] * (truncation + 1)
    for w in range(truncation + 1):
        if p_rest[w]:
            for r in range(0, truncation + 1 - w):
                blind[w + r] += p_rest[w] * rest[r]
    coeffs = {}
    for nh, t2, cnt in data:
        for v in range(0, truncation + 1 - nh):
            if not p_axis[v]:
                continue
            eig = (t2 + 2 * v - Fraction(1, 12)) ** n
            weight = cnt * p_axis[v] * eig
            for u in range(0, truncation + 1 - nh - v):
                if blind[u]:
                    m = nh + v + u
                    coeffs[m] = coeffs.get(m, Fraction(0)) + weight * blind[u]
    series = QExpansion.from_dict(coeffs, truncation)
    return QExpansion(Fraction(-ell, 24), series.lower, series.coeffs, series.truncation)


# -- numerics ----------------------------------------------------------------

def eval_trace_numeric(series: QExpansion, tau: complex):
    """Numeric value of a trace series with a geometric tail estimate."""
    q = cmath.exp(TWO_PI_I * tau)
    if abs(q) >= 1:
        raise LatticeError("divergent evaluation: |q| >= 1")
    return series.evaluate(q=q), series.tail_estimate(q=q)


def trace_value(lat: EvenLattice, axis: int, n: int, tau: complex,
                shell_truncation: int, series_order: int | None = None) -> complex:
    """Numeric Tr v_0^n q^{L0-l/24}, factor-wise.

    Theta moments are evaluated at their shell truncation; the eta factors at
    ``series_order`` (default 4x shell order), so the truncation error is
    dominated by the stated shell bound.
    """
    if series_order is None:
        series_order = 4 * shell_truncation + 8
    ell = lat.rank
    q = cmath.exp(TWO_PI_I * tau)
    total = 0j
    for j in range(n + 1):
        tm = theta_moment(lat, axis, 2 * j, shell_truncation).evaluate(q=q)
        eta_fac = eta_derivative_factor(ell, n - j, series_order).evaluate(q=q)
        total += comb(n, j) * tm * eta_fac
    return total


def moment_trace_value(lat: EvenLattice, axis: int, s: int, tau: complex,
                       shell_truncation: int, series_order: int | None = None) -> complex:
    """Numeric Tr (a_0)^s q^{L0-l/24} for the weight-1 field a = h(-1)1."""
    if series_order is None:
        series_order = 4 * shell_truncation + 8
    if s % 2:
        return 0j
    q = cmath.exp(TWO_PI_I * tau)
    tm = theta_moment(lat, axis, s, shell_truncation).evaluate(q=q)
    return tm * eta_power(-lat.rank, series_order).evaluate(q=q)


def chi_weight1(lat: EvenLattice, axis: int, z: complex, tau: complex,
                shell_truncation: int, series_order: int | None = None) -> complex:
    """chi(tau, z) = Tr e^{2 pi i z a_0} q^{L0 - l/24}, numerically.

    Factorizes over blocks: only the axis block carries the charge phase.
    """
    if series_order is None:
        series_order = 4 * shell_truncation + 8
    if tau.imag <= 0:
        raise LatticeError("need Im tau > 0")
    q = cmath.exp(TWO_PI_I * tau)
    block, gvec, gnorm = gram_schmidt_axis(lat, axis)
    sub = lat.sublattice(block)
    k = sub.rank
    rows = [sum(float(gvec[i]) * sub.gram[i][j] for i in range(k)) for j in range(k)]
    scale = 1.0 / math.sqrt(float(gnorm))
    charged = 0j
    for shell in enumerate_vectors(sub, shell_truncation):
        qn = q ** shell.norm_half
        for x in shell.vectors:
            pairing = scale * sum(r * xi for r, xi in zip(rows, x))
            charged += cmath.exp(TWO_PI_I * z * pairing) * qn
    rest = 1.0 + 0j
    for idx in lat.blocks():
        if idx != block:
            sizes = _shell_sizes(lat.sublattice(idx).gram, shell_truncation)
            rest *= sum(c * q ** m for m, c in enumerate(sizes))
    return charged * rest * eta_power(-lat.rank, series_order).evaluate(q=q)


J_CHARACTER = {0: 1, 1: 744, 2: 196884, 3: 21493760, 4: 864299970}
"""Levels 0..4 of q**-1 + 744 + 196884 q + ...: frozen independent reference."""
