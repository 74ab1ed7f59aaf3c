#!/usr/bin/env python3
"""
Tests for the Heine operators, the T operator and the polynomials they produce
"""

import random
import sys
from pathlib import Path

import pytest

# Add the project directory to path
sys.path.append(str(Path(__file__).parent))

from src.algebra.pseries import MonomialArg, MultiSeries, VarTable, ms_const, ms_scale, ms_var
from src.algebra.qfield import ONE, Q, RatFunQ, qpow
from src.calculus.qops import (
    INFINITY,
    HeineOrder,
    hahn,
    heine_annihilate,
    heine_apply,
    heine_ledger,
    rogers_szego,
    t_apply,
)
from src.core.errors import SeriesError

V = VarTable.of("bx")
B = MonomialArg.of(V, "b")


def x_power(m: int, order: int) -> MultiSeries:
    return MultiSeries(V, order, {(0, m): ONE})


def random_polynomial(rng: random.Random, order: int = 8) -> MultiSeries:
    terms = {(0, m): RatFunQ.of(rng.randint(-4, 4)) + Q * RatFunQ.of(rng.randint(-1, 1))
             for m in range(rng.randint(0, order) + 1)}
    return MultiSeries(V, order, terms)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
@pytest.mark.parametrize("m", range(11))
def test_heine_on_monomial_is_hahn(n, m):
    """H_n(bD_x) x^m is the Hahn polynomial Phi_m^(q^n)(b, x)"""
    alpha = ms_const(V, m, qpow(n))
    expected = hahn(m, alpha, ms_var(V, m, "b"), ms_var(V, m, "x"))
    assert heine_apply(n, B, "x", x_power(m, m)) == expected


@pytest.mark.parametrize("m", range(11))
def test_t_on_monomial_is_rogers_szego(m):
    """T(bD_x) x^m is the Rogers-Szego polynomial r_m(b, x)"""
    expected = rogers_szego(m, ms_var(V, m, "b"), ms_var(V, m, "x"))
    assert t_apply(B, "x", x_power(m, m)) == expected


@pytest.mark.parametrize("m", range(6))
def test_order_zero_is_identity(m):
    """H_0(bD_x) is the identity operator"""
    f = x_power(m, 6)
    assert heine_apply(0, B, "x", f) == f


def test_hahn_small_cases():
    """Phi_1 = x + (1 - alpha) b and r_2 = x^2 + (1 + q) bx + b^2"""
    b, x = ms_var(V, 2, "b"), ms_var(V, 2, "x")
    alpha = ms_const(V, 2, Q)
    phi1 = hahn(1, alpha, b, x)
    assert phi1.terms[(0, 1)] == ONE
    assert phi1.terms[(1, 0)] == ONE - Q
    r2 = rogers_szego(2, b, x)
    assert r2.terms == {(0, 2): ONE, (1, 1): ONE + Q, (2, 0): ONE}


def test_negative_degree():
    """Polynomials of negative degree do not exist"""
    b, x = ms_var(V, 2, "b"), ms_var(V, 2, "x")
    with pytest.raises(SeriesError):
        hahn(-1, ms_const(V, 2, Q), b, x)
    with pytest.raises(SeriesError):
        rogers_szego(-1, b, x)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
@pytest.mark.parametrize("seed", range(3))
def test_heine_is_linear(n, seed):
    """H_n(bD_x)(c f + d g) = c H_n f + d H_n g for rational-function scalars c, d"""
    rng = random.Random(700 + 10 * n + seed)
    f, g = random_polynomial(rng), random_polynomial(rng)
    c = RatFunQ.of(rng.randint(-3, 3)) + Q
    d = RatFunQ.of(rng.randint(1, 4)) / (ONE - Q)
    combined = ms_scale(f, c) + ms_scale(g, d)
    expected = ms_scale(heine_apply(n, B, "x", f), c) + ms_scale(heine_apply(n, B, "x", g), d)
    assert heine_apply(n, B, "x", combined) == expected
    assert t_apply(B, "x", combined) == ms_scale(t_apply(B, "x", f), c) + ms_scale(t_apply(B, "x", g), d)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
@pytest.mark.parametrize("seed", range(3))
def test_annihilator_inverts_heine(n, seed):
    """prod_{k<n}(1 - q^k bD_q) undoes H_n(bD_x) on polynomials"""
    f = random_polynomial(random.Random(10 * n + seed))
    assert heine_annihilate(n, B, "x", heine_apply(n, B, "x", f)) == f


def test_degree_zero_argument_needs_polynomial_flag():
    """A scalar operator parameter only works on declared polynomials"""
    vx = VarTable.of("x")
    f = MultiSeries(vx, 4, {(3,): ONE})
    two = MonomialArg.scalar(vx, 2)
    with pytest.raises(SeriesError, match="does not truncate"):
        heine_apply(2, two, "x", f)
    image = heine_apply(2, two, "x", f, polynomial=True)
    assert heine_annihilate(2, two, "x", image, polynomial=True) == f


def test_negative_order_rejected():
    """Heine operators have non-negative order"""
    with pytest.raises(SeriesError):
        HeineOrder(-1)


def test_weights():
    """(q^n;q)_k/(q;q)_k, and 1/(q;q)_k in the limit"""
    assert HeineOrder(2).weight(1) == ONE + Q
    assert HeineOrder(1).weight(3) == ONE
    assert HeineOrder(0).weight(1).is_zero
    assert INFINITY.weight(2) == ONE / ((ONE - Q) * (ONE - qpow(2)))


@pytest.mark.parametrize("n", [1, 3, 6])
def test_heine_terms_approach_t_terms(n):
    """Both operators share the terms b^k D^k f; weights differ by (q^n;q)_k, which is 1 + O(q^n)"""
    f = random_polynomial(random.Random(n), 6)
    finite = heine_ledger(n, B, "x", f)
    limit = heine_ledger(INFINITY, B, "x", f)
    assert [entry.term for entry in finite] == [entry.term for entry in limit]
    for a, b in zip(finite, limit):
        gap = (a.weight - b.weight) / b.weight
        if not gap.is_zero:
            # (q^n;q)_k - 1 has no term below q^n
            assert min(i for i, c in enumerate(gap.num.coefficients) if c) >= n
