"""Dormand-Prince 5(4) integrator with quartic dense output."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import ODEError

_C = np.array([0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0])
_A = [
    np.array([]),
    np.array([1 / 5]),
    np.array([3 / 40, 9 / 40]),
    np.array([44 / 45, -56 / 15, 32 / 9]),
    np.array([19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729]),
    np.array([9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656]),
]
_B = np.array([35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84])
# fifth-order minus embedded fourth-order weights, over all seven stages (FSAL)
_E = np.array([-71 / 57600, 0.0, 71 / 16695, -71 / 1920, 17253 / 339200, -22 / 525, 1 / 40])
# Shampine's continuous extension: y(t + s h) = y + h * K^T P [s, s^2, s^3, s^4]
_P = np.array([
    [1.0, -8048581381 / 2820520608, 8663915743 / 2820520608, -12715105075 / 11282082432],
    [0.0, 0.0, 0.0, 0.0],
    [0.0, 131558114200 / 32700410799, -68118460800 / 10900136933, 87487479700 / 32700410799],
    [0.0, -1754552775 / 470086768, 14199869525 / 1410260304, -10690763975 / 1880347072],
    [0.0, 127303824393 / 49829197408, -318862633887 / 49829197408, 701980252875 / 199316789632],
    [0.0, -282668133 / 205662961, 2019193451 / 616988883, -1453857185 / 822651844],
    [0.0, 40617522 / 29380423, -110615467 / 29380423, 69997945 / 29380423],
])

_SAFETY = 0.9
_MIN_FACTOR = 0.2
_MAX_FACTOR = 10.0


@dataclass(frozen=True)
class OdeConfig:
    """Tolerances and step controls for :func:`solve_ivp`.

    ``initial_step`` and ``max_step`` are fractions of ``|t1 - t0|``.
    """

    rel_tol: float = 1e-9
    abs_tol: float = 1e-12
    initial_step: float = 1e-6
    max_steps: int = 1_000_000
    max_step: float = 0.01

    def __post_init__(self):
        if not (self.rel_tol > 0 and self.abs_tol > 0):
            raise ValueError("ODE tolerances must be positive")
        if not 0 < self.initial_step <= 1 or not 0 < self.max_step <= 1:
            raise ValueError("step fractions must lie in (0, 1]")
        if self.max_steps < 1:
            raise ValueError("max_steps must be >= 1")


DEFAULT_ODE = OdeConfig()


class DenseSolution:
    """Piecewise-quartic interpolant over the accepted steps.

    Immutable after construction. ``sol(t)`` accepts a scalar (returns a 1-D
    state) or an array of times (returns shape ``(n_state, n_times)``).
    """

    def __init__(self, ts, ys, qs, n_rhs=0):
        self.t = np.asarray(ts, dtype=float)
        self.y = np.asarray(ys, dtype=float)
        self._q = np.asarray(qs, dtype=float)
        self.n_rhs = n_rhs
        for arr in (self.t, self.y, self._q):
            arr.setflags(write=False)

    @property
    def t0(self):
        return self.t[0]

    @property
    def t1(self):
        return self.t[-1]

    @property
    def n_steps(self):
        return len(self.t) - 1

    def _eval(self, t):
        if self.n_steps == 0:
            return np.broadcast_to(self.y[0][:, None], (self.y.shape[1], len(t))).copy()
        forward = self.t[-1] >= self.t[0]
        lo, hi = (self.t[0], self.t[-1]) if forward else (self.t[-1], self.t[0])
        span = hi - lo
        if np.any(t < lo - 1e-12 * span) or np.any(t > hi + 1e-12 * span):
            raise ValueError("dense output queried outside the integration interval")
        if forward:
            idx = np.searchsorted(self.t, t, side="right") - 1
        else:
            idx = len(self.t) - np.searchsorted(self.t[::-1], t, side="left") - 1
        idx = np.clip(idx, 0, self.n_steps - 1)
        h = self.t[idx + 1] - self.t[idx]
        s = (t - self.t[idx]) / h
        powers = np.stack([s, s**2, s**3, s**4])  # (4, m)
        # q: (steps, n_state, 4)
        incr = np.einsum("mnk,km->nm", self._q[idx], powers)
        return self.y[idx].T + h * incr

    def __call__(self, t):
        t_arr = np.asarray(t, dtype=float)
        out = self._eval(np.atleast_1d(t_arr))
        if t_arr.ndim == 0:
            return out[:, 0]
        return out


def _rms(x):
    return float(np.sqrt(np.mean(x * x)))


def solve_ivp(rhs, t0: float, t1: float, y0, cfg: OdeConfig = DEFAULT_ODE) -> DenseSolution:
    """Integrate ``y' = rhs(t, y)`` from ``t0`` to ``t1`` with error control.

    Returns a :class:`DenseSolution`. Raises :class:`ODEError` (carrying the
    partial solution) on step-size underflow or when ``cfg.max_steps`` is hit.
    """
    y = np.array(y0, dtype=float, ndmin=1)
    if y.ndim != 1:
        raise ValueError("y0 must be a scalar or 1-D vector")
    t = float(t0)
    t1 = float(t1)
    ts, ys, qs = [t], [y.copy()], []
    if t1 == t:
        return DenseSolution(ts, ys, np.zeros((0, y.size, 4)))

    direction = 1.0 if t1 > t else -1.0
    span = abs(t1 - t)
    h_max = cfg.max_step * span
    h = min(cfg.initial_step * span, h_max)
    n = y.size
    K = np.empty((7, n))
    f = np.asarray(rhs(t, y), dtype=float)
    n_rhs = 1
    steps = 0

    def partial():
        return DenseSolution(ts, ys, qs if qs else np.zeros((0, n, 4)), n_rhs)

    while direction * (t1 - t) > 0:
        if steps >= cfg.max_steps:
            raise ODEError(f"max_steps={cfg.max_steps} exceeded at t={t}", partial())
        h_floor = 10 * np.spacing(abs(t))
        if h < h_floor:
            raise ODEError(f"step size underflow at t={t}", partial())
        rejected = False
        while True:
            h = min(h, abs(t1 - t))
            dt = direction * h
            K[0] = f
            for i in range(1, 6):
                dy = np.dot(_A[i], K[:i]) * dt
                K[i] = rhs(t + _C[i] * dt, y + dy)
            y_new = y + dt * np.dot(_B, K[:6])
            t_new = t + dt if h < abs(t1 - t) else t1
            f_new = np.asarray(rhs(t_new, y_new), dtype=float)
            K[6] = f_new
            n_rhs += 6
            if not np.all(np.isfinite(y_new)) or not np.all(np.isfinite(f_new)):
                err_norm = np.inf
            else:
                scale = cfg.abs_tol + cfg.rel_tol * np.maximum(np.abs(y), np.abs(y_new))
                err_norm = _rms(dt * np.dot(_E, K) / scale)
            if err_norm <= 1.0:
                if err_norm == 0.0:
                    factor = _MAX_FACTOR
                else:
                    factor = min(_MAX_FACTOR, _SAFETY * err_norm ** -0.2)
                if rejected:
                    factor = min(1.0, factor)
                break
            h *= max(_MIN_FACTOR, _SAFETY * err_norm ** -0.2) if np.isfinite(err_norm) else _MIN_FACTOR
            rejected = True
            if h < 10 * np.spacing(abs(t)):
                raise ODEError(f"step size underflow at t={t}", partial())

        qs.append(K.T @ _P)
        t, y, f = t_new, y_new, f_new
        ts.append(t)
        ys.append(y.copy())
        steps += 1
        h = min(h * factor, h_max)

    return DenseSolution(ts, ys, qs, n_rhs)
