"""Thermodynamic length of the level-spacing ramp and the bounds built on it.

With ``x = beta*lambda`` the slow-driving metric reduces to the dimensionless
density :func:`length_integrand`; the length up to ``lambda_max`` is
``sqrt(beta**(alpha-1)/gamma0) * f_alpha(epsilon)``.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .core import BathSpectrum, ErasureTask, lambda_max_for_error
from .errors import AsymptoticValidityWarning, DomainError
from .numerics import DEFAULT_QUADRATURE, QuadratureConfig, integrate, integrate_semi_infinite

ASYMPTOTIC_EPSILON_LIMIT = 0.1


@dataclass(frozen=True)
class LengthReport:
    f_eps: float
    f_zero: float
    length: float
    length_zero: float
    precise_bound: float
    asymptotic_bound: float
    mu_alpha: float

    def as_dict(self):
        return dict(self.__dict__)


def length_integrand(x, alpha: float):
    """sqrt[(1 - e^-x) e^-x / (x^alpha (1 + e^-x)^3)] for ``x > 0``.

    Array-aware. Near zero it behaves as ``sqrt(x**(1 - alpha) / 8)``.
    """
    x_arr = np.asarray(x, dtype=float)
    if np.any(~(x_arr > 0)):
        if alpha > 0 or np.any(x_arr < 0) or np.any(np.isnan(x_arr)):
            raise DomainError("length integrand needs x > 0")
    with np.errstate(over="ignore", under="ignore"):
        e = np.exp(-x_arr)
        num = -np.expm1(-x_arr) * e
        den = (1.0 + e) ** 3
        if alpha:
            den = den * x_arr**alpha
        out = np.sqrt(num / den)
    if np.ndim(out) == 0:
        return float(out)
    return out


def length_scale(alpha: float, beta: float, gamma0: float) -> float:
    """sqrt(beta**(alpha-1) / gamma0), the dimensionful prefactor of the length."""
    return math.sqrt(beta ** (alpha - 1.0) / gamma0)


def f_alpha(epsilon: float, alpha: float, cfg: QuadratureConfig = DEFAULT_QUADRATURE) -> float:
    """Dimensionless length from ``x = 0`` to ``x = ln(1/epsilon - 1)``.

    ``epsilon = 0`` gives the perfect-erasure value over ``[0, inf)``.
    """
    if not 0 <= epsilon <= 0.5:
        raise DomainError(f"epsilon must lie in [0, 1/2], got {epsilon}")
    if alpha < 0:
        raise DomainError(f"alpha must be >= 0, got {alpha}")

    def g(x):
        return length_integrand(x, alpha)

    if epsilon == 0:
        # keep the x -> 0 singularity in x-space, compactify only the tail
        return integrate(g, 0.0, 1.0, cfg) + integrate_semi_infinite(g, 1.0, cfg)
    x_max = lambda_max_for_error(epsilon, 1.0)
    return integrate(g, 0.0, x_max, cfg)


def tail_integral(epsilon: float, alpha: float, cfg: QuadratureConfig = DEFAULT_QUADRATURE) -> float:
    """Length beyond ``x = ln(1/epsilon - 1)``, computed directly.

    Evaluated in ``u = exp(-x/2)`` where the integrand becomes
    ``2 (-2 ln u)^(-alpha/2) sqrt((1 - u^2) / (1 + u^2)^3)`` on
    ``(0, sqrt(epsilon / (1 - epsilon))]``. Any part with ``x < 1`` is done
    in ``x`` instead, where the ``alpha > 1`` singularity is a plain power law.
    """
    if not 0 < epsilon <= 0.5:
        raise DomainError(f"epsilon must lie in (0, 1/2], got {epsilon}")
    x_min = lambda_max_for_error(epsilon, 1.0)

    def g(u):
        u = np.asarray(u, dtype=float)
        u2 = u * u
        val = 2.0 * np.sqrt((1.0 - u2) / (1.0 + u2) ** 3)
        if alpha:
            val = val * (-2.0 * np.log(u)) ** (-0.5 * alpha)
        return val

    if x_min >= 1.0:
        return integrate(g, 0.0, math.exp(-0.5 * x_min), cfg)
    head = integrate(lambda x: length_integrand(x, alpha), x_min, 1.0, cfg)
    return head + integrate(g, 0.0, math.exp(-0.5), cfg)


def tail_bound(epsilon: float, alpha: float) -> float:
    """Upper bound 2 sqrt(eps) ln(1/eps)^(-alpha/2) on :func:`tail_integral`."""
    if not 0 < epsilon < 1:
        if not (epsilon == 1 and alpha == 0):
            raise DomainError(f"epsilon must lie in (0, 1), got {epsilon}")
    if alpha == 0:
        return 2.0 * math.sqrt(epsilon)
    return 2.0 * math.sqrt(epsilon) * math.log(1.0 / epsilon) ** (-0.5 * alpha)


def _warn_if_outside(quantity, epsilon):
    if epsilon > ASYMPTOTIC_EPSILON_LIMIT:
        warnings.warn(AsymptoticValidityWarning(quantity, epsilon, ASYMPTOTIC_EPSILON_LIMIT), stacklevel=3)


def asymptotic_length(epsilon: float, alpha: float, beta: float = 1.0, gamma0: float = 1.0,
                      cfg: QuadratureConfig = DEFAULT_QUADRATURE) -> float:
    """L(0) - 2 sqrt(beta^(alpha-1) eps ln(1/eps)^-alpha / gamma0); a lower bound on L(eps)."""
    _warn_if_outside("asymptotic_length", epsilon)
    scale = length_scale(alpha, beta, gamma0)
    return scale * (f_alpha(0.0, alpha, cfg) - tail_bound(epsilon, alpha))


def mu_alpha(alpha: float, cfg: QuadratureConfig = DEFAULT_QUADRATURE) -> float:
    return 4.0 / f_alpha(0.0, alpha, cfg)


def asymptotic_bound(epsilon: float, alpha: float, tau: float, beta: float = 1.0,
                     gamma0: float = 1.0, cfg: QuadratureConfig = DEFAULT_QUADRATURE) -> float:
    """Trade-off lower bound [1 - mu_alpha sqrt(eps ln^-alpha(1/eps))] L(0)^2 / tau."""
    _warn_if_outside("asymptotic_bound", epsilon)
    f0 = f_alpha(0.0, alpha, cfg)
    return _asymptotic_bound(epsilon, alpha, tau, f0, length_scale(alpha, beta, gamma0))


def _asymptotic_bound(epsilon, alpha, tau, f0, scale):
    # mu_alpha * sqrt(eps ln^-alpha(1/eps)) == (4/f0) * tail_bound / 2
    correction = (4.0 / f0) * 0.5 * tail_bound(epsilon, alpha)
    return (1.0 - correction) * (scale * f0) ** 2 / tau


def thermodynamic_length(task: ErasureTask, spectrum: BathSpectrum,
                         cfg: QuadratureConfig = DEFAULT_QUADRATURE) -> LengthReport:
    alpha = spectrum.alpha
    scale = length_scale(alpha, task.beta, spectrum.gamma0)
    f0 = f_alpha(0.0, alpha, cfg)
    fe = f_alpha(task.epsilon, alpha, cfg)
    length = scale * fe
    _warn_if_outside("asymptotic_bound", task.epsilon)
    asym = _asymptotic_bound(task.epsilon, alpha, task.tau, f0, scale)
    return LengthReport(
        f_eps=fe,
        f_zero=f0,
        length=length,
        length_zero=scale * f0,
        precise_bound=length**2 / task.tau,
        asymptotic_bound=asym,
        mu_alpha=4.0 / f0,
    )
