"""Named, configurable experiments that emit plot-ready tables.

Each ``run_*`` function is deterministic: the same arguments give the same
rows in the same order, and :class:`~landauer_qubit.tables.Table` writes them
with a fixed float format. Sweeps over independent simulation points may use
a process pool (``workers > 1``); results are merged back in grid order.
"""

from __future__ import annotations

import math
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, fields
from functools import lru_cache

import numpy as np

from .core import BathSpectrum, ErasureTask
from .dynamics import simulate
from .errors import AsymptoticValidityWarning, DomainError
from .geometry import _asymptotic_bound, f_alpha, length_scale, tail_bound
from .protocol import linear_protocol, optimal_protocol, power_protocol, scaling_exponent_fit
from .tables import Table

EXPERIMENTS = (
    "length-table",
    "headline-bounds",
    "tradeoff-surface",
    "optimal-protocols",
    "wir-vs-tau",
    "wir-vs-epsilon",
    "delta-wir",
    "asymptotic-length-check",
)
PROTOCOL_KINDS = ("optimal", "linear", "quadratic")

DEFAULT_ALPHAS = (0.0, 1.0, 2.0)
# parameters of the reference figures (alpha = 1, eps = 1e-4, gamma0 tau = 200)
FIGURE_ALPHA = 1.0
FIGURE_EPSILON = 1e-4
FIGURE_TAU = 200.0


def epsilon_grid(lo: float = 1e-6, hi: float = 1e-1, n: int = 16) -> tuple:
    return tuple(float(x) for x in np.geomspace(lo, hi, n))


def tau_grid(lo: float = 10.0, hi: float = 1e4, n: int = 12, gamma0: float = 1.0) -> tuple:
    """Log-spaced erasure times with gamma0*tau in [lo, hi]."""
    return tuple(float(x) / gamma0 for x in np.geomspace(lo, hi, n))


DEFAULT_EPSILONS = epsilon_grid()
DEFAULT_TAUS = tau_grid()


@dataclass
class ExperimentConfig:
    """Everything that determines an experiment's output table.

    ``alpha``, ``epsilon`` and ``tau`` hold tuples; ``None`` means "use the
    experiment's default grid".
    """

    experiment: str = "length-table"
    alpha: tuple | None = None
    epsilon: tuple | None = None
    tau: tuple | None = None
    beta: float = 1.0
    gamma0: float = 1.0
    output: str | None = None
    format: str = "csv"
    workers: int = 1

    def __post_init__(self):
        if self.experiment not in EXPERIMENTS:
            raise DomainError(f"unknown experiment {self.experiment!r}; choose from {', '.join(EXPERIMENTS)}")
        if self.format not in ("csv", "json"):
            raise DomainError(f"format must be csv or json, got {self.format!r}")
        for name in ("alpha", "epsilon", "tau"):
            val = getattr(self, name)
            if val is not None:
                setattr(self, name, _as_tuple(val))
        for a in self.alpha or ():
            BathSpectrum(a, self.gamma0)
        for e in self.epsilon or ():
            ErasureTask(self.beta, e, 1.0)
        for t in self.tau or ():
            ErasureTask(self.beta, 0.01, t)
        BathSpectrum(1.0, self.gamma0)
        if self.workers < 1:
            raise DomainError("workers must be >= 1")

    def provenance(self) -> dict:
        """The fields that affect the numbers (not where or how they are written)."""
        skip = {"output", "format", "workers"}
        return {f.name: getattr(self, f.name) for f in fields(self) if f.name not in skip}


def _as_tuple(val):
    if isinstance(val, (int, float)):
        return (float(val),)
    return tuple(float(v) for v in val)


def _first(values, default):
    return float(values[0]) if values else default


# -- cached building blocks --------------------------------------------------


@lru_cache(maxsize=None)
def _f(epsilon: float, alpha: float) -> float:
    return f_alpha(epsilon, alpha)


@lru_cache(maxsize=64)
def _optimal(alpha: float, epsilon: float, beta: float, gamma0: float):
    return optimal_protocol(ErasureTask(beta, epsilon, 1.0), BathSpectrum(alpha, gamma0))


def _protocol(kind, alpha, epsilon, beta, gamma0):
    if kind == "optimal":
        return _optimal(alpha, epsilon, beta, gamma0)
    lam_m = ErasureTask(beta, epsilon, 1.0).lambda_max
    if kind == "linear":
        return linear_protocol(lam_m)
    if kind == "quadratic":
        return power_protocol(lam_m, 2.0)
    raise DomainError(f"unknown protocol kind {kind!r}")


def _bounds(alpha, epsilon, tau, beta, gamma0):
    scale = length_scale(alpha, beta, gamma0)
    f0, fe = _f(0.0, alpha), _f(epsilon, alpha)
    precise = (scale * fe) ** 2 / tau
    asym = _asymptotic_bound(epsilon, alpha, tau, f0, scale)
    return fe, scale * fe, precise, asym


@dataclass(frozen=True)
class SweepRecord:
    """One (alpha, epsilon, tau) point with bounds and simulated irreversible work."""

    alpha: float
    epsilon: float
    tau: float
    f_eps: float
    L: float
    precise_bound: float
    asymptotic_bound: float
    irr_work_optimal: float | None = None
    irr_work_linear: float | None = None
    irr_work_quadratic: float | None = None
    achieved_error: float | None = None

    COLUMNS = ("alpha", "epsilon", "tau", "f_eps", "L", "precise_bound", "asymptotic_bound",
               "irr_work_optimal", "irr_work_linear", "irr_work_quadratic", "achieved_error")

    def row(self):
        return tuple(getattr(self, c) for c in self.COLUMNS)


def sweep_point(alpha: float, epsilon: float, tau: float, beta: float = 1.0, gamma0: float = 1.0,
                protocols=PROTOCOL_KINDS) -> SweepRecord:
    """Bounds plus one simulation per requested protocol kind.

    ``achieved_error`` is the final excited population under the optimal
    protocol (or the first protocol simulated when optimal is not requested).
    """
    fe, length, precise, asym = _bounds(alpha, epsilon, tau, beta, gamma0)
    task = ErasureTask(beta, epsilon, tau)
    spec = BathSpectrum(alpha, gamma0)
    irr, achieved = {}, None
    for kind in protocols:
        res = simulate(_protocol(kind, alpha, epsilon, beta, gamma0), task, spec)
        irr[kind] = res.irr_work
        if achieved is None or kind == "optimal":
            achieved = res.achieved_error
    return SweepRecord(alpha, epsilon, tau, fe, length, precise, asym,
                       irr.get("optimal"), irr.get("linear"), irr.get("quadratic"), achieved)


def _sweep_star(args):
    return sweep_point(*args)


def _map(points, workers):
    if workers > 1 and len(points) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_sweep_star, points))
    return [_sweep_star(p) for p in points]


def run_sweep(alphas, epsilons, taus, beta: float = 1.0, gamma0: float = 1.0,
              protocols=PROTOCOL_KINDS, workers: int = 1) -> Table:
    """Full (alpha, epsilon, tau) grid of :class:`SweepRecord` rows."""
    protocols = tuple(protocols)
    points = [(float(a), float(e), float(t), beta, gamma0, protocols)
              for a in alphas for e in epsilons for t in taus]
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", AsymptoticValidityWarning)
        records = _map(points, workers)
    table = Table("sweep", SweepRecord.COLUMNS,
                  config={"alpha": list(alphas), "epsilon": list(epsilons), "tau": list(taus),
                          "beta": beta, "gamma0": gamma0, "protocols": list(protocols)})
    for rec in records:
        table.add(*rec.row())
    return table


# -- named experiments ---------------------------------------------------------


def run_length_table(alphas=DEFAULT_ALPHAS, epsilons=DEFAULT_EPSILONS) -> Table:
    """Dimensionless length f_alpha at epsilon = 0 followed by the epsilon grid."""
    table = Table("length-table", ("alpha", "epsilon", "f_alpha", "mu_alpha"),
                  config={"alpha": list(alphas), "epsilon": list(epsilons)})
    for a in alphas:
        f0 = _f(0.0, float(a))
        table.add(float(a), 0.0, f0, 4.0 / f0)
        for e in epsilons:
            table.add(float(a), float(e), _f(float(e), float(a)), 4.0 / f0)
    return table


def run_headline_bounds(alpha: float = 0.0, epsilons=(0.01, 0.001, 0.5), beta: float = 1.0,
                        gamma0: float = 1.0) -> Table:
    """Precise bound in units of k_B T / (gamma0 tau): beta * gamma0 * L(eps)^2."""
    table = Table("headline-bounds", ("alpha", "epsilon", "f_eps", "bound_kT_per_gamma0_tau"),
                  config={"alpha": alpha, "epsilon": list(epsilons), "beta": beta, "gamma0": gamma0})
    scale = length_scale(alpha, beta, gamma0)
    for e in epsilons:
        fe = _f(float(e), alpha)
        table.add(float(alpha), float(e), fe, beta * gamma0 * (scale * fe) ** 2)
    return table


def run_wir_vs_tau(alpha: float = FIGURE_ALPHA, epsilon: float = FIGURE_EPSILON, taus=DEFAULT_TAUS,
                   protocols=PROTOCOL_KINDS, beta: float = 1.0, gamma0: float = 1.0,
                   workers: int = 1) -> Table:
    """Irreversible work against erasure time for each protocol, with both bounds."""
    protocols = tuple(protocols)
    cols = ("tau", "gamma0_tau", "precise_bound", "asymptotic_bound",
            *(f"irr_work_{k}" for k in protocols), "achieved_error")
    table = Table("wir-vs-tau", cols,
                  config={"alpha": alpha, "epsilon": epsilon, "tau": list(taus), "beta": beta,
                          "gamma0": gamma0, "protocols": list(protocols)})
    points = [(alpha, epsilon, float(t), beta, gamma0, protocols) for t in taus]
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", AsymptoticValidityWarning)
        records = _map(points, workers)
    for rec in records:
        irr = [getattr(rec, f"irr_work_{k}") for k in protocols]
        table.add(rec.tau, gamma0 * rec.tau, rec.precise_bound, rec.asymptotic_bound, *irr, rec.achieved_error)
    return table


def delta_wir(epsilon: float, alpha: float) -> float | None:
    """[W_min(eps) - W_min(10 eps)] / W_min(0), from the precise bound.

    The ratio is independent of tau, beta and gamma0. ``None`` when
    ``10*eps`` leaves the admissible range (0, 1/2].
    """
    if 10.0 * epsilon > 0.5:
        return None
    f0 = _f(0.0, alpha)
    return (_f(epsilon, alpha) ** 2 - _f(10.0 * epsilon, alpha) ** 2) / f0**2


def run_wir_vs_epsilon(alpha: float = FIGURE_ALPHA, tau: float = FIGURE_TAU, epsilons=DEFAULT_EPSILONS,
                       beta: float = 1.0, gamma0: float = 1.0, workers: int = 1) -> Table:
    """Minimal irreversible work against target error at fixed tau, plus delta_wir."""
    cols = ("epsilon", "irr_work_optimal", "precise_bound", "asymptotic_bound", "delta_wir", "achieved_error")
    table = Table("wir-vs-epsilon", cols,
                  config={"alpha": alpha, "epsilon": list(epsilons), "tau": tau, "beta": beta, "gamma0": gamma0})
    points = [(alpha, float(e), tau, beta, gamma0, ("optimal",)) for e in epsilons]
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", AsymptoticValidityWarning)
        records = _map(points, workers)
    for rec in records:
        table.add(rec.epsilon, rec.irr_work_optimal, rec.precise_bound, rec.asymptotic_bound,
                  delta_wir(rec.epsilon, alpha), rec.achieved_error)
    return table


def run_delta_wir(alphas=(FIGURE_ALPHA,), epsilons=epsilon_grid(1e-8, 1e-2, 13)) -> Table:
    """Extra minimal work (relative to perfect erasure) for a tenfold smaller error."""
    table = Table("delta-wir", ("alpha", "epsilon", "delta_wir"),
                  config={"alpha": list(alphas), "epsilon": list(epsilons)})
    for a in alphas:
        for e in epsilons:
            table.add(float(a), float(e), delta_wir(float(e), float(a)))
    return table


CURVE_GRID = tuple(float(x) for x in np.concatenate([np.geomspace(1e-6, 1e-2, 41)[:-1], np.linspace(0.01, 1.0, 100)]))


def run_optimal_protocols(alphas=(FIGURE_ALPHA,), epsilons=(1e-2, 1e-4, 1e-6), beta: float = 1.0,
                          gamma0: float = 1.0, fit_window=(1e-4, 1e-2)) -> Table:
    """Optimal lambda(t~) curves on a fixed grid, tagged with the fitted initial exponent."""
    cols = ("alpha", "epsilon", "t_tilde", "lambda", "dlambda_dt_tilde", "fitted_exponent", "expected_exponent")
    table = Table("optimal-protocols", cols,
                  config={"alpha": list(alphas), "epsilon": list(epsilons), "beta": beta, "gamma0": gamma0,
                          "fit_window": list(fit_window)})
    grid = np.array((0.0,) + CURVE_GRID)
    for a in alphas:
        for e in epsilons:
            proto = _optimal(float(a), float(e), beta, gamma0)
            slope = scaling_exponent_fit(proto, fit_window)
            lam, dlam = proto._evaluate(grid)
            for t, v, d in zip(grid, lam, dlam):
                table.add(float(a), float(e), float(t), float(v), None if math.isinf(d) else float(d),
                          slope, 2.0 / (3.0 - float(a)))
    return table


def run_tradeoff_surface(alpha: float = FIGURE_ALPHA, epsilons=DEFAULT_EPSILONS, taus=DEFAULT_TAUS,
                         beta: float = 1.0, gamma0: float = 1.0) -> Table:
    """Asymptotic minimal work over an (epsilon, tau) grid, with the precise bound alongside."""
    cols = ("epsilon", "tau", "asymptotic_bound", "precise_bound")
    table = Table("tradeoff-surface", cols,
                  config={"alpha": alpha, "epsilon": list(epsilons), "tau": list(taus), "beta": beta,
                          "gamma0": gamma0})
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", AsymptoticValidityWarning)
        for e in epsilons:
            for t in taus:
                _, _, precise, asym = _bounds(alpha, float(e), float(t), beta, gamma0)
                table.add(float(e), float(t), asym, precise)
    return table


def run_asymptotic_length_check(alphas=DEFAULT_ALPHAS, epsilons=DEFAULT_EPSILONS, beta: float = 1.0,
                                gamma0: float = 1.0) -> Table:
    """Exact L(0) - L(eps) against the closed-form tail 2 sqrt(eps ln^-alpha(1/eps)) (scaled)."""
    cols = ("alpha", "epsilon", "exact_gap", "asymptotic_gap", "relative_error")
    table = Table("asymptotic-length-check", cols,
                  config={"alpha": list(alphas), "epsilon": list(epsilons), "beta": beta, "gamma0": gamma0})
    for a in alphas:
        a = float(a)
        scale = length_scale(a, beta, gamma0)
        for e in epsilons:
            e = float(e)
            exact = scale * (_f(0.0, a) - _f(e, a))
            approx = scale * tail_bound(e, a)
            table.add(a, e, exact, approx, abs(exact - approx) / exact)
    return table


def run_experiment(cfg: ExperimentConfig) -> Table:
    """Dispatch on ``cfg.experiment``; unset grids fall back to each experiment's defaults.

    The table is also written to ``cfg.output`` (in ``cfg.format``) when set.
    """
    name, b, g = cfg.experiment, cfg.beta, cfg.gamma0
    a_list, e_list, t_list = cfg.alpha, cfg.epsilon, cfg.tau
    if name == "length-table":
        table = run_length_table(a_list or DEFAULT_ALPHAS, e_list or DEFAULT_EPSILONS)
    elif name == "headline-bounds":
        table = run_headline_bounds(_first(a_list, 0.0), e_list or (0.01, 0.001, 0.5), b, g)
    elif name == "tradeoff-surface":
        table = run_tradeoff_surface(_first(a_list, FIGURE_ALPHA), e_list or DEFAULT_EPSILONS,
                                     t_list or tau_grid(gamma0=g), b, g)
    elif name == "optimal-protocols":
        table = run_optimal_protocols(a_list or (FIGURE_ALPHA,), e_list or (1e-2, 1e-4, 1e-6), b, g)
    elif name == "wir-vs-tau":
        table = run_wir_vs_tau(_first(a_list, FIGURE_ALPHA), _first(e_list, FIGURE_EPSILON),
                               t_list or tau_grid(gamma0=g), beta=b, gamma0=g, workers=cfg.workers)
    elif name == "wir-vs-epsilon":
        table = run_wir_vs_epsilon(_first(a_list, FIGURE_ALPHA), _first(t_list, FIGURE_TAU / g),
                                   e_list or DEFAULT_EPSILONS, b, g, workers=cfg.workers)
    elif name == "delta-wir":
        table = run_delta_wir(a_list or (FIGURE_ALPHA,), e_list or epsilon_grid(1e-8, 1e-2, 13))
    else:
        table = run_asymptotic_length_check(a_list or DEFAULT_ALPHAS, e_list or DEFAULT_EPSILONS, b, g)
    # provenance records the requested config, not just the resolved grids
    table.config = {"requested": cfg.provenance(), **table.config}
    if cfg.output is not None:
        table.write(cfg.output, cfg.format)
    return table


# figure ids accepted by ``reproduce`` in addition to the experiment names
FIGURES = {
    "fig2a": ExperimentConfig("tradeoff-surface", alpha=(1.0,)),
    "fig2b": ExperimentConfig("optimal-protocols", alpha=(1.0,)),
    "fig3a": ExperimentConfig("wir-vs-tau", alpha=(1.0,), epsilon=(1e-4,)),
    "fig3b": ExperimentConfig("wir-vs-epsilon", alpha=(1.0,), tau=(200.0,)),
    "fig3b-inset": ExperimentConfig("delta-wir", alpha=(1.0,)),
    "sm-table": ExperimentConfig("length-table"),
    "sm-fig1": ExperimentConfig("asymptotic-length-check"),
    "sm-fig2": ExperimentConfig("optimal-protocols", alpha=(0.0, 2.0)),
    "headline": ExperimentConfig("headline-bounds"),
}


def figure_config(figure_id: str) -> ExperimentConfig:
    if figure_id in FIGURES:
        return FIGURES[figure_id]
    if figure_id in EXPERIMENTS:
        return ExperimentConfig(figure_id)
    known = sorted(FIGURES) + list(EXPERIMENTS)
    raise DomainError(f"unknown figure id {figure_id!r}; choose from {', '.join(known)}")
