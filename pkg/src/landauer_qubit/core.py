"""Closed-form two-level quantities shared by the rest of the package.

Units: hbar = k_B = 1. Energies are in the same units as ``1/beta``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import expit

from .errors import DomainError

# Below this, x*log(x) is treated as zero.
_ENTROPY_FLOOR = 1e-300


@dataclass(frozen=True)
class BathSpectrum:
    """Dissipation coefficient gamma(lambda) = gamma0 * lambda**alpha."""

    alpha: float = 1.0
    gamma0: float = 1.0

    def __post_init__(self):
        if not self.alpha >= 0:
            raise DomainError(f"alpha must be >= 0, got {self.alpha}")
        if not self.gamma0 > 0:
            raise DomainError(f"gamma0 must be > 0, got {self.gamma0}")


@dataclass(frozen=True)
class ErasureTask:
    """Erasure at inverse temperature ``beta`` to error ``epsilon`` in time ``tau``."""

    beta: float = 1.0
    epsilon: float = 0.01
    tau: float = 1.0

    def __post_init__(self):
        if not self.beta > 0:
            raise DomainError(f"beta must be > 0, got {self.beta}")
        if not self.tau > 0:
            raise DomainError(f"tau must be > 0, got {self.tau}")
        if not 0 < self.epsilon <= 0.5:
            raise DomainError(f"epsilon must lie in (0, 1/2], got {self.epsilon}")

    @property
    def lambda_max(self) -> float:
        return lambda_max_for_error(self.epsilon, self.beta)

    @property
    def free_energy_change(self) -> float:
        return free_energy_change(self)


@dataclass(frozen=True)
class LevelSpacing:
    value: float

    def __post_init__(self):
        if not self.value >= 0:
            raise DomainError(f"level spacing must be >= 0, got {self.value}")


def _check_beta(beta):
    if not beta > 0:
        raise DomainError(f"beta must be > 0, got {beta}")


def equilibrium_population(lam, beta):
    """Excited-state Gibbs population exp(-beta*lam) / (1 + exp(-beta*lam)).

    Accepts scalars or arrays; ``lam`` must be non-negative.
    """
    _check_beta(beta)
    lam_arr = np.asarray(lam, dtype=float)
    if np.any(lam_arr < 0) or np.any(np.isnan(lam_arr)):
        raise DomainError("level spacing must be >= 0")
    out = expit(-beta * lam_arr)
    if np.ndim(out) == 0:
        return float(out)
    return out


def bath_occupation(lam, beta):
    """Bose occupation 1/(exp(beta*lam) - 1); diverges at ``lam = 0``."""
    _check_beta(beta)
    lam_arr = np.asarray(lam, dtype=float)
    if np.any(~(lam_arr > 0)):
        raise DomainError("bath occupation needs lambda > 0")
    with np.errstate(over="ignore"):
        out = 1.0 / np.expm1(beta * lam_arr)
    if np.ndim(out) == 0:
        return float(out)
    return out


def dissipation_coefficient(spectrum: BathSpectrum, lam):
    lam_arr = np.asarray(lam, dtype=float)
    if np.any(lam_arr < 0):
        raise DomainError("level spacing must be >= 0")
    if spectrum.alpha == 0:
        out = np.full_like(lam_arr, spectrum.gamma0)
    else:
        out = spectrum.gamma0 * lam_arr**spectrum.alpha
    if np.ndim(out) == 0:
        return float(out)
    return out


def shannon_entropy(epsilon: float) -> float:
    """Binary entropy in nats, continuously extended to 0 at the endpoints."""
    if not 0 <= epsilon <= 1:
        raise DomainError(f"probability must lie in [0, 1], got {epsilon}")
    s = 0.0
    for p in (epsilon, 1.0 - epsilon):
        if p >= _ENTROPY_FLOOR:
            s -= p * math.log(p)
    return s


def free_energy_change(task: ErasureTask) -> float:
    """Quasi-static erasure work (ln 2 - S(epsilon)) / beta."""
    return (math.log(2.0) - shannon_entropy(task.epsilon)) / task.beta


def landauer_limit(beta: float) -> float:
    """ln 2 / beta, the perfect-erasure limit of :func:`free_energy_change`."""
    _check_beta(beta)
    return math.log(2.0) / beta


def lambda_max_for_error(epsilon: float, beta: float) -> float:
    """Level spacing whose Gibbs excited population equals ``epsilon``."""
    _check_beta(beta)
    if not 0 < epsilon <= 0.5:
        raise DomainError(f"epsilon must lie in (0, 1/2], got {epsilon}")
    # log(1/eps - 1) written to keep precision near eps = 1/2
    return (math.log1p(-epsilon) - math.log(epsilon)) / beta
