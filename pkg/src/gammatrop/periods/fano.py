"""Exponential periods of projective-space mirrors and their predictions.

The measured side integrates exp(-t W) with W = x1 + ... + xn +
1/(x1...xn) over the positive orthant against the Haar form
dx1...dxn/(x1...xn).  The predicted side is the period polynomial in
L = -log t built from the Gamma class of P^n.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.special import k0 as _bessel_k0

from ..cohomology import ManifoldModel, PeriodPolynomial, gamma_period_polynomial
from ..errors import UnsupportedDimensionError
from ..quadrature import (
    IntegrationResult,
    QuadratureConfig,
    Rectangle,
    integrate_1d,
    integrate_2d,
)
from .types import PeriodSample

__all__ = [
    "exp_period_orthant",
    "fano_prediction_polynomial",
    "fano_gamma_prediction",
]

_SUPPORTED_DIMS = (1, 2, 3)


def _check_t(t: float) -> None:
    if not 0.0 < t < 1.0:
        raise ValueError("t must lie in (0, 1)")


def exp_period_orthant(
    n: int,
    t: float,
    config: QuadratureConfig | None = None,
) -> PeriodSample:
    """Orthant exponential period of the n-dimensional mirror potential.

    Logarithmic coordinates x_i = e^{u_i} turn the orthant integral into
    one over R^n.  n = 1 and n = 2 run direct quadrature on that form.
    For n = 3 the (u1, u2)-plane is contracted first: with a = (u1+u2)/2
    the inner integral over u1 - u2 is exactly 2 K0(2 t e^a), leaving a
    two-dimensional integral.  Non-convergent quadrature is reported on
    the returned sample, not raised.
    """
    if not isinstance(n, int) or n < 1:
        raise ValueError("n must be a positive integer")
    if n not in _SUPPORTED_DIMS:
        raise UnsupportedDimensionError(
            f"exp_period_orthant supports n in {_SUPPORTED_DIMS}, got {n}"
        )
    _check_t(t)
    cfg = config or QuadratureConfig()
    big_l = -math.log(t)

    if n == 1:

        def integrand_1d(u):
            return np.exp(-t * (np.exp(u) + np.exp(-u)))

        res = integrate_1d(integrand_1d, (-math.inf, math.inf), cfg)
        return _sample(t, res, "log_orthant_1d")

    if n == 2:
        hi = big_l + 8.0
        lo = -2.0 * hi

        def integrand_2d(u1, u2):
            # beyond the box every term has t * e^(...) >= e^8
            return np.exp(-t * (np.exp(u1) + np.exp(u2) + np.exp(-u1 - u2)))

        res = integrate_2d(integrand_2d, Rectangle((lo, hi), (lo, hi)), cfg)
        return _sample(t, res, "log_orthant_2d")

    span = big_l + 10.0

    def integrand_bessel(a, u3):
        inner = 2.0 * _bessel_k0(2.0 * t * np.exp(a))
        return 2.0 * inner * np.exp(-t * (np.exp(u3) + np.exp(-2.0 * a - u3)))

    domain = Rectangle((-span, span), (-3.0 * span, span))
    res = integrate_2d(integrand_bessel, domain, cfg)
    return _sample(t, res, "bessel_pair_2d")


def _sample(t: float, res: IntegrationResult, parametrization: str) -> PeriodSample:
    return PeriodSample(
        t=t,
        value=res.value,
        error_estimate=res.error_estimate,
        evaluations=res.evaluations,
        parametrization=parametrization,
        converged=res.converged,
    )


def fano_prediction_polynomial(n: int) -> PeriodPolynomial:
    """Period polynomial in L predicted for the P^n orthant period."""
    if not isinstance(n, int) or n < 1:
        raise ValueError("n must be a positive integer")
    return gamma_period_polynomial(ManifoldModel(n), n + 1)


def fano_gamma_prediction(n: int, t: float) -> float:
    """Predicted orthant-period value at parameter t."""
    _check_t(t)
    value = fano_prediction_polynomial(n).evaluate_at_t(t)
    return float(value.real)
