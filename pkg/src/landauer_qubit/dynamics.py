"""Finite-time erasure: master-equation populations and the work they cost.

The ramp runs in normalized time t~ = t/tau. The state integrated alongside
the excited population carries the cumulative drive work and irreversible
work, so both inherit the integrator's error control.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .core import BathSpectrum, ErasureTask, dissipation_coefficient, equilibrium_population
from .errors import DomainError
from .numerics import DEFAULT_ODE, OdeConfig, integrate, solve_ivp
from .protocol import T_SEED, Protocol, format_float

TRAJECTORY_CSV_COLUMNS = ("t", "t_tilde", "lambda", "p_e", "p_eq", "w_cum", "wir_cum")

# below this beta*lambda, coth(x/2) is replaced by its Laurent series
_SMALL_X = 1e-6
# cap on tau * relaxation rate (per unit t~) at the start of explicit integration
MAX_SCALED_RATE = 1e6


@dataclass(frozen=True)
class InitialState:
    p_e0: float = 0.5

    def __post_init__(self):
        if not 0 <= self.p_e0 <= 1:
            raise DomainError(f"initial population must lie in [0, 1], got {self.p_e0}")


@dataclass(frozen=True)
class TrajectoryResult:
    times: np.ndarray
    t_tilde: np.ndarray
    lambdas: np.ndarray
    populations: np.ndarray
    p_eq: np.ndarray
    w_cum: np.ndarray
    wir_cum: np.ndarray
    work_drive: float
    work_reset: float
    work_total: float
    irr_work: float
    achieved_error: float
    target_error: float
    params: dict = field(default_factory=dict)

    def summary(self) -> dict:
        out = {k: self.params[k] for k in sorted(self.params)}
        out.update(
            work_drive=self.work_drive,
            work_reset=self.work_reset,
            work_total=self.work_total,
            irr_work=self.irr_work,
            achieved_error=self.achieved_error,
            target_error=self.target_error,
            n_points=int(self.times.size),
        )
        return out

    def to_json(self, path=None) -> str:
        text = json.dumps(self.summary(), indent=2, sort_keys=True) + "\n"
        if path is not None:
            Path(path).write_text(text)
        return text

    def to_csv(self, path=None) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(TRAJECTORY_CSV_COLUMNS)
        cols = (self.times, self.t_tilde, self.lambdas, self.populations, self.p_eq, self.w_cum, self.wir_cum)
        for row in zip(*cols):
            writer.writerow([format_float(v) for v in row])
        text = buf.getvalue()
        if path is not None:
            Path(path).write_text(text)
        return text


def relaxation_rate(lam: float, beta: float, spectrum: BathSpectrum) -> float:
    """gamma(lambda) * (2 n(lambda) + 1) = gamma0 lambda^alpha coth(beta lambda / 2)."""
    x = beta * lam
    if x < _SMALL_X:
        # lambda^alpha * (2/x + x/6), grouped so alpha >= 1 stays finite at 0
        if lam == 0:
            if spectrum.alpha > 1:
                return 0.0
            if spectrum.alpha == 1:
                return 2.0 * spectrum.gamma0 / beta
            raise DomainError("relaxation rate diverges at lambda = 0 for alpha < 1")
        return spectrum.gamma0 * lam ** (spectrum.alpha - 1.0) * (2.0 / beta + beta * lam * lam / 6.0)
    return spectrum.gamma0 * lam**spectrum.alpha / math.tanh(0.5 * x)


def _peq(x):
    if x > 0:
        e = math.exp(-x)
        return e / (1.0 + e)
    return 1.0 / (1.0 + math.exp(x))


def _peq_integral(lam, beta):
    """Integral of the Gibbs population from 0 to lam."""
    return (math.log(2.0) - math.log1p(math.exp(-beta * lam))) / beta


def _lag_power(t, protocol, tau, beta, spectrum):
    """Slow-driving irreversible power per unit t~ at normalized time ``t``."""
    lam, dlam = protocol.value_and_slope(t)
    if lam <= 0:
        return 0.0
    x = beta * lam
    e = math.exp(-x)
    gamma = spectrum.gamma0 * lam**spectrum.alpha
    return beta / gamma * (-math.expm1(-x)) * e / (1.0 + e) ** 3 * dlam * dlam / tau


def _stiff_start(protocol, tau, beta, spectrum, t_floor):
    """First t~ >= t_floor where tau * relaxation_rate drops to MAX_SCALED_RATE.

    Only alpha < 1 baths have a rate that diverges as lambda -> 0.
    """
    if spectrum.alpha >= 1:
        return t_floor

    def scaled(t):
        lam = protocol.value_and_slope(t)[0]
        if lam <= 0:
            return math.inf
        return tau * relaxation_rate(lam, beta, spectrum)

    if scaled(t_floor) <= MAX_SCALED_RATE or scaled(1.0) > MAX_SCALED_RATE:
        return t_floor
    lo, hi = math.log(t_floor), 0.0
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        if scaled(math.exp(mid)) > MAX_SCALED_RATE:
            lo = mid
        else:
            hi = mid
    return math.exp(hi)


def simulate(protocol: Protocol, task: ErasureTask, spectrum: BathSpectrum,
             init: InitialState = InitialState(), cfg: OdeConfig = DEFAULT_ODE) -> TrajectoryResult:
    """Integrate the driven population and the work integrals over ``[0, tau]``.

    Protocols starting at lambda = 0 are held at ``init`` until ``t_seed``
    (the protocol's own, or 1e-6); the work over that sliver is added in
    closed form. For alpha < 1 the relaxation rate diverges as lambda -> 0;
    while ``tau * rate`` exceeds ``MAX_SCALED_RATE`` the population is taken
    to sit on its slow-driving value, and integration starts where the rate
    falls below that cap. ``work_reset`` is the adiabatic return of the
    spacing to zero at fixed population.
    """
    beta, tau = task.beta, task.tau
    lam0 = protocol(0.0)
    if lam0 < 0:
        raise DomainError("protocol lambda must be >= 0")
    if lam0 > 0:
        t_floor = 0.0
    else:
        t_floor = protocol.t_seed if protocol.t_seed > 0 else T_SEED
    t_start = _stiff_start(protocol, tau, beta, spectrum, t_floor) if t_floor > 0 else 0.0
    p0 = init.p_e0

    lam_s, dlam_s = protocol.value_and_slope(t_start)
    if t_start > t_floor:
        # quasi-equilibrated stretch: Gibbs part in closed form plus first-order lag
        wir0 = integrate(lambda t: _lag_power(t, protocol, tau, beta, spectrum), 0.0, t_start)
        w0 = (_peq_integral(lam_s, beta) - _peq_integral(lam0, beta)) - 0.5 * (lam_s - lam0) + wir0
        p_start = float(slow_driving_population(lam_s, dlam_s / tau, task, spectrum))
    else:
        # held stretch: p = p0 while lambda rises to lam_s
        w0 = 0.5 * (lam_s - lam0) * (2.0 * p0 - 1.0)
        wir0 = p0 * (lam_s - lam0) - (_peq_integral(lam_s, beta) - _peq_integral(lam0, beta))
        p_start = p0

    value_and_slope = protocol.value_and_slope
    gamma0, alpha = spectrum.gamma0, spectrum.alpha

    def rhs(t, y):
        lam, dlam = value_and_slope(t)
        if lam < 0:
            raise DomainError(f"protocol produced negative lambda at t~={t}")
        x = beta * lam
        peq = _peq(x)
        if x < _SMALL_X:
            k = relaxation_rate(lam, beta, spectrum)
        else:
            k = gamma0 * lam**alpha / math.tanh(0.5 * x) if alpha else gamma0 / math.tanh(0.5 * x)
        p = y[0]
        return np.array([tau * k * (peq - p), 0.5 * dlam * (2.0 * p - 1.0), dlam * (p - peq)])

    sol = solve_ivp(rhs, t_start, 1.0, [p_start, w0, wir0], cfg)

    t_tilde = sol.t
    lambdas = np.asarray(protocol(t_tilde), dtype=float)
    pops = sol.y[:, 0]
    if t_start > 0:
        t_tilde = np.concatenate([[0.0], t_tilde])
        lambdas = np.concatenate([[lam0], lambdas])
        pops = np.concatenate([[p0], pops])
        w_cum = np.concatenate([[0.0], sol.y[:, 1]])
        wir_cum = np.concatenate([[0.0], sol.y[:, 2]])
    else:
        w_cum, wir_cum = sol.y[:, 1], sol.y[:, 2]

    p_end = float(pops[-1])
    lam_end = float(lambdas[-1])
    work_drive = float(w_cum[-1])
    work_reset = (p_end - 0.5) * (0.0 - lam_end)
    params = {
        "protocol": protocol.kind, "alpha": alpha, "gamma0": gamma0,
        "beta": beta, "epsilon": task.epsilon, "tau": tau, "ode_steps": sol.n_steps,
    }
    return TrajectoryResult(
        times=t_tilde * tau,
        t_tilde=t_tilde,
        lambdas=lambdas,
        populations=pops,
        p_eq=np.asarray(equilibrium_population(lambdas, beta)),
        w_cum=w_cum,
        wir_cum=wir_cum,
        work_drive=work_drive,
        work_reset=work_reset,
        work_total=work_drive + work_reset,
        irr_work=float(wir_cum[-1]),
        achieved_error=p_end,
        target_error=task.epsilon,
        params=params,
    )


def slow_driving_population(lam, lam_dot, task: ErasureTask, spectrum: BathSpectrum):
    """First-order lag of the population behind equilibrium, valid for gamma*tau >> 1.

    ``lam_dot`` is the physical-time rate d(lambda)/dt. Array-aware.
    """
    lam = np.asarray(lam, dtype=float)
    if np.any(~(lam > 0)):
        raise DomainError("slow-driving expansion needs lambda > 0")
    beta = task.beta
    peq = equilibrium_population(lam, beta)
    dpeq = -beta * peq * (1.0 - peq)
    gamma = dissipation_coefficient(spectrum, lam)
    # 1 - 2 p_eq without cancellation at small beta*lambda
    one_minus_2peq = np.tanh(0.5 * beta * lam)
    out = peq - one_minus_2peq / gamma * dpeq * np.asarray(lam_dot, dtype=float)
    if np.ndim(out) == 0:
        return float(out)
    return out


def irreversible_power_slow(lam, lam_dot, task: ErasureTask, spectrum: BathSpectrum):
    """beta/gamma * (1 - e^-x) e^-x / (1 + e^-x)^3 * lam_dot**2 with x = beta*lam."""
    lam = np.asarray(lam, dtype=float)
    if np.any(~(lam > 0)):
        raise DomainError("slow-driving power needs lambda > 0")
    beta = task.beta
    e = np.exp(-beta * lam)
    gamma = dissipation_coefficient(spectrum, lam)
    out = beta / gamma * (-np.expm1(-beta * lam)) * e / (1.0 + e) ** 3 * np.asarray(lam_dot, dtype=float) ** 2
    if np.ndim(out) == 0:
        return float(out)
    return out
