"""Driving schedules lambda(t~) on the normalized time t~ = t / tau in [0, 1]."""

from __future__ import annotations

import bisect
import csv
import io
import math
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np
from scipy.interpolate import PchipInterpolator

from .core import BathSpectrum, ErasureTask
from .errors import DomainError, EndpointMismatchError
from .geometry import f_alpha, length_integrand, length_scale
from .numerics import DEFAULT_ODE, DEFAULT_QUADRATURE, OdeConfig, QuadratureConfig, solve_ivp

T_SEED = 1e-6
MIN_DENSE_SAMPLES = 512
ENDPOINT_RTOL = 1e-4

PROTOCOL_CSV_COLUMNS = ("t_tilde", "lambda", "dlambda_dt_tilde")


class _Hermite:
    """Piecewise cubic Hermite interpolant with Fritsch-Carlson slope limiting."""

    def __init__(self, t, y, dy):
        t = np.asarray(t, dtype=float)
        y = np.asarray(y, dtype=float)
        dy = np.array(dy, dtype=float)
        h = np.diff(t)
        if np.any(h <= 0):
            raise DomainError("sample times must be strictly increasing")
        delta = np.diff(y) / h
        for i, d in enumerate(delta):
            if d == 0:
                dy[i] = dy[i + 1] = 0.0
                continue
            a, b = dy[i] / d, dy[i + 1] / d
            r = a * a + b * b
            if r > 9.0:
                s = 3.0 / math.sqrt(r)
                dy[i], dy[i + 1] = s * a * d, s * b * d
        self.t, self.y, self.dy = t, y, dy
        self._tl = t.tolist()
        self._yl = y.tolist()
        self._dl = dy.tolist()

    def scalar(self, x):
        tl = self._tl
        i = min(max(bisect.bisect_right(tl, x) - 1, 0), len(tl) - 2)
        h = tl[i + 1] - tl[i]
        s = (x - tl[i]) / h
        y0, y1 = self._yl[i], self._yl[i + 1]
        m0, m1 = self._dl[i] * h, self._dl[i + 1] * h
        s2, s3 = s * s, s * s * s
        val = (2 * s3 - 3 * s2 + 1) * y0 + (s3 - 2 * s2 + s) * m0 + (-2 * s3 + 3 * s2) * y1 + (s3 - s2) * m1
        der = ((6 * s2 - 6 * s) * y0 + (3 * s2 - 4 * s + 1) * m0 + (-6 * s2 + 6 * s) * y1 + (3 * s2 - 2 * s) * m1) / h
        return val, der

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        i = np.clip(np.searchsorted(self.t, x, side="right") - 1, 0, len(self.t) - 2)
        h = self.t[i + 1] - self.t[i]
        s = (x - self.t[i]) / h
        y0, y1 = self.y[i], self.y[i + 1]
        m0, m1 = self.dy[i] * h, self.dy[i + 1] * h
        s2, s3 = s * s, s * s * s
        val = (2 * s3 - 3 * s2 + 1) * y0 + (s3 - 2 * s2 + s) * m0 + (-2 * s3 + 3 * s2) * y1 + (s3 - s2) * m1
        der = ((6 * s2 - 6 * s) * y0 + (3 * s2 - 4 * s + 1) * m0 + (-6 * s2 + 6 * s) * y1 + (3 * s2 - 2 * s) * m1) / h
        return val, der


@dataclass(frozen=True)
class Protocol:
    """A level-spacing schedule over t~ in [0, 1].

    ``kind`` is one of ``linear``, ``power``, ``optimal`` or ``sampled``.
    Sampled and optimal schedules carry ``samples`` (t~, lambda, dlambda/dt~)
    and interpolate them with a monotone cubic. The optimal schedule also
    carries its small-t~ seed ``seed_coef * t~**seed_exponent`` which is used
    below ``t_seed``.
    """

    kind: str
    lambda_max: float
    exponent: float = 1.0
    samples: tuple | None = None
    t_seed: float = 0.0
    seed_coef: float = 0.0
    seed_exponent: float = 1.0
    info: dict = field(default_factory=dict, compare=False)
    _interp: _Hermite | None = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        if self.kind not in ("linear", "power", "optimal", "sampled"):
            raise DomainError(f"unknown protocol kind {self.kind!r}")
        if self.samples is not None and self._interp is None:
            t, lam, dlam = self.samples
            object.__setattr__(self, "_interp", _Hermite(t, lam, dlam))

    # -- evaluation -------------------------------------------------------
    def value_and_slope(self, t_tilde: float):
        """Scalar (lambda, dlambda/dt~) at ``t_tilde``; the hot path of simulations."""
        if self.kind == "linear":
            return self.lambda_max * t_tilde, self.lambda_max
        if self.kind == "power":
            p = self.exponent
            return self.lambda_max * t_tilde**p, p * self.lambda_max * t_tilde ** (p - 1) if t_tilde > 0 or p >= 1 else math.inf
        if self.kind == "optimal" and t_tilde < self.t_seed:
            k = self.seed_exponent
            val = self.seed_coef * t_tilde**k
            der = self.seed_coef * k * t_tilde ** (k - 1) if t_tilde > 0 or k >= 1 else math.inf
            return val, der
        return self._interp.scalar(t_tilde)

    def _check_domain(self, t):
        if np.any(t < 0) or np.any(t > 1) or np.any(np.isnan(t)):
            raise DomainError("protocol time t~ must lie in [0, 1]")

    def _evaluate(self, t_tilde):
        t = np.asarray(t_tilde, dtype=float)
        self._check_domain(t)
        with np.errstate(divide="ignore"):
            if self.kind == "linear":
                val = self.lambda_max * t
                der = np.full_like(t, self.lambda_max)
            elif self.kind == "power":
                p = self.exponent
                val = self.lambda_max * t**p
                der = p * self.lambda_max * t ** (p - 1)
            else:
                val, der = self._interp(t)
                if self.kind == "optimal":
                    early = t < self.t_seed
                    k = self.seed_exponent
                    val = np.where(early, self.seed_coef * t**k, val)
                    der = np.where(early, self.seed_coef * k * t ** (k - 1), der)
        if np.ndim(val) == 0:
            return float(val), float(der)
        return val, der

    def __call__(self, t_tilde):
        return self._evaluate(t_tilde)[0]

    def derivative(self, t_tilde):
        return self._evaluate(t_tilde)[1]

    @property
    def start_value(self):
        return self(0.0)

    # -- serialization ----------------------------------------------------
    def table(self, n: int = 513):
        """(t~, lambda, dlambda/dt~) arrays: the stored samples, or an n-point grid."""
        if self.samples is not None:
            t = np.asarray(self.samples[0])
            if self.kind == "optimal":
                t = np.concatenate([[0.0], t])
        else:
            t = np.linspace(0.0, 1.0, n)
        lam, dlam = self._evaluate(t)
        return t, np.asarray(lam), np.asarray(dlam)

    def to_csv(self, path=None, n: int = 513) -> str:
        t, lam, dlam = self.table(n)
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(PROTOCOL_CSV_COLUMNS)
        for row in zip(t, lam, dlam):
            writer.writerow([format_float(v) for v in row])
        text = buf.getvalue()
        if path is not None:
            Path(path).write_text(text)
        return text


def format_float(x) -> str:
    """12 significant digits; the fixed format used by every table writer."""
    x = float(x)
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    if math.isnan(x):
        return "nan"
    return f"{x:.12g}"


def linear_protocol(lambda_max: float) -> Protocol:
    if lambda_max < 0:
        raise DomainError("lambda_max must be >= 0")
    return Protocol("linear", float(lambda_max))


def power_protocol(lambda_max: float, p: float) -> Protocol:
    if lambda_max < 0:
        raise DomainError("lambda_max must be >= 0")
    if not p > 0:
        raise DomainError(f"power-law exponent must be > 0, got {p}")
    if p == 1:
        return linear_protocol(lambda_max)
    return Protocol("power", float(lambda_max), exponent=float(p))


def sampled_protocol(t_tilde, lam, dlam=None, *, enforce_boundary: bool = True,
                     atol: float = 1e-9) -> Protocol:
    """Build a protocol from samples; slopes default to PCHIP estimates.

    With ``enforce_boundary`` the samples must span [0, 1], start at
    lambda = 0 and be non-decreasing.
    """
    t = np.asarray(t_tilde, dtype=float)
    lam = np.asarray(lam, dtype=float)
    if t.shape != lam.shape or t.size < 2:
        raise DomainError("need at least two (t~, lambda) samples of equal length")
    if dlam is None:
        dlam = PchipInterpolator(t, lam).derivative()(t)
    dlam = np.asarray(dlam, dtype=float)
    if enforce_boundary:
        if abs(t[0]) > atol or abs(t[-1] - 1.0) > atol:
            raise DomainError("samples must span t~ in [0, 1]")
        if abs(lam[0]) > atol:
            raise DomainError("protocol must start at lambda = 0")
        if np.any(np.diff(lam) < -atol):
            raise DomainError("protocol must be non-decreasing")
    return Protocol("sampled", float(lam[-1]), samples=(t, lam, dlam))


def read_protocol_csv(path) -> Protocol:
    with open(path, newline="") as fh:
        rows = [r for r in csv.reader(fh) if r and not r[0].startswith("#")]
    header, body = rows[0], np.array(rows[1:], dtype=float)
    if tuple(header) != PROTOCOL_CSV_COLUMNS:
        raise DomainError(f"unexpected protocol CSV header {header}")
    slopes = body[:, 2]
    if not np.all(np.isfinite(slopes)):
        slopes = None
    return sampled_protocol(body[:, 0], body[:, 1], slopes)


def seed_coefficient(alpha: float, beta: float, gamma0: float, length: float) -> float:
    """Prefactor of lambda ~ c t~^(2/(3-alpha)) solving the small-lambda optimal ODE."""
    return (2.0 * (3.0 - alpha) ** 2 * gamma0 * length**2 / beta**2) ** (1.0 / (3.0 - alpha))


def optimal_slope(lam: float, length: float, alpha: float, beta: float, gamma0: float) -> float:
    """Right-hand side dlambda/dt~ = L / sqrt(metric(lambda)) of the geodesic equation."""
    metric_root = math.sqrt(beta ** (1.0 + alpha) / gamma0) * length_integrand(beta * lam, alpha)
    return length / metric_root


def optimal_protocol(task: ErasureTask, spectrum: BathSpectrum, cfg: OdeConfig = DEFAULT_ODE,
                     quad: QuadratureConfig = DEFAULT_QUADRATURE, t_seed: float = T_SEED,
                     n_uniform: int = MIN_DENSE_SAMPLES) -> Protocol:
    """Constant-dissipation-rate schedule from lambda = 0 to lambda_max.

    Integrated as an initial-value problem from ``t_seed``, seeded by the
    analytic small-t~ power law. Raises :class:`EndpointMismatchError` if the
    solution misses ``lambda_max`` at t~ = 1 by more than
    ``1e-4 * max(lambda_max, 1/beta)``. Independent of ``task.tau``.
    """
    alpha, beta, gamma0 = spectrum.alpha, task.beta, spectrum.gamma0
    if not 0 <= alpha < 3:
        raise DomainError(f"optimal protocol supports 0 <= alpha < 3, got {alpha}")
    lam_m = task.lambda_max
    f_eps = f_alpha(task.epsilon, alpha, quad)
    length = length_scale(alpha, beta, gamma0) * f_eps
    if lam_m == 0:
        return Protocol("optimal", 0.0, samples=(np.array([0.0, 1.0]), np.zeros(2), np.zeros(2)),
                        t_seed=0.0, info={"length": 0.0, "alpha": alpha})
    k = 2.0 / (3.0 - alpha)
    c = seed_coefficient(alpha, beta, gamma0, length)
    lam_seed = c * t_seed**k

    def rhs(t, y):
        return np.array([optimal_slope(y[0], length, alpha, beta, gamma0)])

    # lambda spans many decades from the seed; abs_tol must not swamp it
    ode_cfg = replace(cfg, abs_tol=min(cfg.abs_tol, 1e-6 * lam_seed))
    sol = solve_ivp(rhs, t_seed, 1.0, [lam_seed], ode_cfg)
    lam_end = float(sol.y[-1, 0])
    tol = ENDPOINT_RTOL * max(lam_m, 1.0 / beta)
    if abs(lam_end - lam_m) > tol:
        raise EndpointMismatchError("optimal protocol missed lambda_max at t~ = 1", lam_end, lam_m)

    n_geo = 96
    t_nodes = np.unique(np.concatenate([
        sol.t,
        np.geomspace(t_seed, 0.01, n_geo),
        np.linspace(0.01, 1.0, n_uniform),
    ]))
    t_nodes = t_nodes[(t_nodes >= t_seed) & (t_nodes <= 1.0)]
    lam_nodes = sol(t_nodes)[0]
    lam_nodes[0] = lam_seed
    slopes = np.array([optimal_slope(v, length, alpha, beta, gamma0) for v in lam_nodes])
    info = {
        "alpha": alpha, "beta": beta, "gamma0": gamma0, "epsilon": task.epsilon,
        "length": length, "lambda_end": lam_end, "ode_steps": sol.n_steps,
    }
    return Protocol("optimal", lam_m, samples=(t_nodes, lam_nodes, slopes), t_seed=t_seed,
                    seed_coef=c, seed_exponent=k, info=info)


def scaling_exponent_fit(protocol: Protocol, fit_window=(1e-4, 1e-2), n_points: int = 33) -> float:
    """Least-squares slope of ln(lambda) against ln(t~) over ``fit_window``.

    Uses the protocol's own samples inside the window when it has any,
    otherwise ``n_points`` log-spaced evaluations.
    """
    lo, hi = fit_window
    if not 0 < lo < hi <= 1:
        raise DomainError("fit window must satisfy 0 < lo < hi <= 1")
    if protocol.samples is not None:
        t = np.asarray(protocol.samples[0])
        t = t[(t >= lo) & (t <= hi)]
    else:
        t = np.geomspace(lo, hi, n_points)
    if t.size < 4:
        raise DomainError(f"only {t.size} samples in fit window {fit_window}; need 4")
    lam = protocol(t)
    if np.any(lam <= 0) or np.any(np.diff(lam) <= 0):
        raise DomainError("protocol must be positive and strictly increasing on the fit window")
    slope, _ = np.polyfit(np.log(t), np.log(lam), 1)
    return float(slope)
