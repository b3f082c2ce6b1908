"""Numeric validation of the reduction engine against brute-force Fock traces.

The weight-2 algebra is realized on the rank-1 Heisenberg VOA with explicit
mode matrices; engine identities (full reductions, intermediate peels) are
evaluated at sample points and compared as complex numbers.  This route is
independent of every series identity in the package.
"""

import cmath

import pytest

from torusmodes import hha
from torusmodes.hha import CorrExpression, CorrSymbol

from fock_oracle import TPI, HeisenbergOracle, eval_expression

TAU = 2.2j
Q = cmath.exp(TPI * TAU)
ZMAP = {1: 0.30j, 2: 0.75j, 3: 1.25j}


@pytest.fixture(scope="module")
def oracle():
    # the derivative weight (-2 pi i n)^dpow amplifies the mode tail, so the
    # cutoff must sit a bit above the positions' decay scale
    return HeisenbergOracle(max_level=12, max_mode=11)


@pytest.fixture(scope="module")
def w2():
    return hha.weight2_spec()


def _check_identity(oracle, lhs_sym, rhs_expr, tol=1e-9):
    lhs = oracle.corr_symbol(lhs_sym, ZMAP, Q)
    rhs = eval_expression(oracle, rhs_expr, ZMAP, TAU)
    scale = max(1.0, abs(lhs))
    assert abs(lhs - rhs) / scale < tol, (lhs, rhs, lhs_sym)


def test_two_point_reduction(oracle, w2):
    sym = CorrSymbol((), ((2, 0, "x"), (3, 0, "x")))
    red = hha.reduce_to_zero_modes(w2, CorrExpression.single(sym))
    _check_identity(oracle, sym, red)


def test_mixed_reduction(oracle, w2):
    sym = CorrSymbol(("x",), ((2, 0, "x"), (3, 0, "x")))
    red = hha.reduce_to_zero_modes(w2, CorrExpression.single(sym))
    _check_identity(oracle, sym, red)


def test_three_point_reduction(oracle, w2):
    sym = CorrSymbol((), ((1, 0, "x"), (2, 0, "x"), (3, 0, "x")))
    red = hha.reduce_to_zero_modes(w2, CorrExpression.single(sym))
    _check_identity(oracle, sym, red, tol=1e-8)


def test_descendant_insertion_reduction(oracle, w2):
    # F((L[-1]x, z2), (x, z3)) reduces like the z2-derivative of the 2-point
    sym = CorrSymbol((), ((2, 1, "x"), (3, 0, "x")))
    red = hha.reduce_to_zero_modes(w2, CorrExpression.single(sym))
    _check_identity(oracle, sym, red)


def test_invert_identities_numerically(oracle, w2):
    for s in (1, 2, 3):
        inv = hha.invert_to_full(w2, ("x",) * s)
        lhs = oracle.corr(s, [], Q)
        rhs = eval_expression(oracle, inv, ZMAP, TAU)
        assert abs(lhs - rhs) / max(1.0, abs(lhs)) < 1e-8, s


def test_single_insertion_mixed_collapse(oracle, w2):
    # F(x_0; (x,z)) equals F(x_0^2) independently of z
    v1 = oracle.corr(1, [(0.5j, 0)], Q)
    v2 = oracle.corr(2, [], Q)
    assert abs(v1 - v2) < 1e-10
    # and a lone L[-1]-descendant insertion vanishes
    v3 = oracle.corr(1, [(0.5j, 1)], Q)
    assert abs(v3) < 1e-10
