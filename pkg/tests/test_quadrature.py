"""Quadrature machinery: endpoint substitutions, infinite tails, Jacobi rules."""

import math

import numpy as np
import pytest

from bpl.errors import DomainError, QuadratureError
from bpl.options import EvalOptions
from bpl.quadrature import beta_kernel, halfline_power, integrate, jacobi_rule, power_weighted


def test_plain_polynomial():
    assert integrate(lambda x: 3.0 * x * x, 0.0, 2.0) == pytest.approx(8.0, rel=1e-13)


def test_exponential_tail():
    assert integrate(lambda x: np.exp(-x), 0.0, math.inf) == pytest.approx(1.0, rel=1e-12)


def test_slow_tail_with_map():
    # integral of 1/(1+x)^2 over (0, inf) = 1
    assert integrate(lambda x: (1.0 + x) ** (-2.0), 0.0, math.inf) == pytest.approx(1.0, rel=1e-10)


def test_beta_kernel_matches_beta_function():
    for (p, q) in [(0.5, 0.5), (0.05, 1.7), (2.0, 0.01), (1.0, 1.0)]:
        got = beta_kernel(lambda x: np.ones_like(x), p - 1.0, q - 1.0)
        want = math.exp(math.lgamma(p) + math.lgamma(q) - math.lgamma(p + q))
        assert got == pytest.approx(want, rel=1e-12)


def test_beta_kernel_smooth_payload():
    # integral x^(-1/2) (1-x)^(-1/2) cos(x) dx, reference from a dense Gauss-Jacobi rule
    x, w = jacobi_rule(220, -0.5, -0.5)
    want = float(np.sum(w * np.cos(x)))
    got = beta_kernel(np.cos, -0.5, -0.5)
    assert got == pytest.approx(want, rel=1e-12)


def test_halfline_power_gamma():
    for (k, z) in [(-0.5, 1.0), (0.3, 2.0), (-0.97, 0.7)]:
        got = halfline_power(lambda t: np.exp(-z * t), k)
        want = math.exp(math.lgamma(k + 1.0) - (k + 1.0) * math.log(z))
        assert got == pytest.approx(want, rel=1e-11)


def test_power_weighted():
    # integral_0^(1/2) x^(-0.6) dx = (1/2)^0.4 / 0.4
    got = power_weighted(lambda x: np.ones_like(x), -0.6, 0.5)
    assert got == pytest.approx(0.5 ** 0.4 / 0.4, rel=1e-12)


def test_budget_exhaustion_raises():
    tight = EvalOptions(rel_tol=1e-13, max_quad_refinements=1)
    with pytest.raises(QuadratureError):
        integrate(lambda x: np.abs(np.sin(50.0 * x)), 0.0, 10.0, tight)


def test_nonintegrable_exponent_rejected():
    with pytest.raises(DomainError):
        beta_kernel(lambda x: np.ones_like(x), -1.0, 0.0)


def test_jacobi_rule_moments():
    # exactness on polynomials against closed beta moments
    alpha, beta = -0.3, 0.7
    x, w = jacobi_rule(24, alpha, beta)
    for k in range(8):
        got = float(np.sum(w * x ** k))
        want = math.exp(math.lgamma(beta + 1.0 + k) + math.lgamma(alpha + 1.0)
                        - math.lgamma(alpha + beta + 2.0 + k))
        assert got == pytest.approx(want, rel=1e-12)
