"""Command-line front end: ``landauer-qubit <command> [options]``.

Parameters come from an optional flat ``key = value`` config file, then from
flags (flags win). List-valued parameters accept comma lists (``0,1,2``) or a
log grid ``log:LO:HI:N``.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace

import numpy as np

from .core import BathSpectrum, ErasureTask
from .dynamics import InitialState, simulate
from .errors import EndpointMismatchError, ODEError, QuadratureError
from .experiments import (
    EXPERIMENTS,
    figure_config,
    run_experiment,
    run_sweep,
    tau_grid,
)
from .geometry import f_alpha, length_scale, thermodynamic_length
from .protocol import linear_protocol, optimal_protocol, power_protocol, read_protocol_csv
from .tables import Table

LIST_KEYS = ("alpha", "epsilon", "tau")


class UsageError(ValueError):
    pass


def parse_values(text: str) -> tuple:
    """``"0.1"``, ``"0,1,2"`` or ``"log:1e-6:1e-1:16"`` -> tuple of floats."""
    text = str(text).strip()
    if text.startswith("log:"):
        try:
            lo, hi, n = text[4:].split(":")
            return tuple(float(x) for x in np.geomspace(float(lo), float(hi), int(n)))
        except ValueError as exc:
            raise UsageError(f"bad log grid {text!r}; expected log:LO:HI:N") from exc
    try:
        return tuple(float(x) for x in text.split(",") if x.strip())
    except ValueError as exc:
        raise UsageError(f"bad number list {text!r}") from exc


def read_config(path) -> dict:
    """Flat ``key = value`` file; ``#`` starts a comment."""
    out = {}
    with open(path) as fh:
        for n, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{n}: expected key = value")
            key, val = (s.strip() for s in line.split("=", 1))
            out[key.replace("-", "_")] = val
    return out


def _common_parser():
    p = argparse.ArgumentParser(add_help=False)
    s = argparse.SUPPRESS
    p.add_argument("--alpha", default=s, help="bath exponent(s)")
    p.add_argument("--epsilon", default=s, help="target error probability(ies)")
    p.add_argument("--tau", default=s, help="erasure time(s)")
    p.add_argument("--beta", default=s, help="inverse temperature")
    p.add_argument("--gamma0", default=s, help="coupling prefactor")
    p.add_argument("--config", default=s, help="flat key = value parameter file")
    p.add_argument("--out", default=s, help="output file (default: stdout)")
    p.add_argument("--format", default=s, choices=("csv", "json"))
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common_parser()
    parser = argparse.ArgumentParser(prog="landauer-qubit", parents=[common],
                                     description="Finite-time erasure bounds, protocols and simulations.")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("length", parents=[common], help="thermodynamic length and bounds per (alpha, epsilon)")
    sub.add_parser("bound", parents=[common], help="precise and asymptotic bounds per (alpha, epsilon, tau)")

    p = sub.add_parser("protocol", parents=[common], help="tabulate a driving protocol")
    p.add_argument("--kind", default=argparse.SUPPRESS, choices=("optimal", "linear", "quadratic", "power"))
    p.add_argument("--power", default=argparse.SUPPRESS, help="exponent for --kind power")

    p = sub.add_parser("simulate", parents=[common], help="simulate one erasure")
    p.add_argument("--kind", default=argparse.SUPPRESS, choices=("optimal", "linear", "quadratic", "power"))
    p.add_argument("--power", default=argparse.SUPPRESS)
    p.add_argument("--protocol-csv", dest="protocol_csv", default=argparse.SUPPRESS,
                   help="read the protocol from a CSV written by the protocol command")
    p.add_argument("--p0", default=argparse.SUPPRESS, help="initial excited population (default 0.5)")
    p.add_argument("--trajectory", action="store_true", default=argparse.SUPPRESS,
                   help="with csv output, write the full trajectory instead of the summary")

    p = sub.add_parser("sweep", parents=[common], help="bounds and simulations over an (alpha, epsilon, tau) grid")
    p.add_argument("--protocols", default=argparse.SUPPRESS, help="comma list from optimal,linear,quadratic")
    p.add_argument("--workers", default=argparse.SUPPRESS, help="parallel processes")

    p = sub.add_parser("reproduce", parents=[common], help="regenerate a figure or named experiment table")
    p.add_argument("figure_id", help="figure id (fig2a, fig2b, fig3a, fig3b, fig3b-inset, sm-table, sm-fig1, "
                                     "sm-fig2, headline) or experiment name (" + ", ".join(EXPERIMENTS) + ")")
    p.add_argument("--workers", default=argparse.SUPPRESS)
    return parser


def resolve(args: argparse.Namespace) -> dict:
    """Merge config file and flags into typed parameters."""
    params = {}
    if getattr(args, "config", None):
        params.update(read_config(args.config))
    for key, val in vars(args).items():
        if key not in ("config", "command", "figure_id"):
            params[key] = val
    out = {}
    for key, val in params.items():
        if key in LIST_KEYS:
            out[key] = parse_values(val)
        elif key in ("beta", "gamma0", "power", "p0"):
            out[key] = _float(key, val)
        elif key == "workers":
            out[key] = int(val)
        elif key == "trajectory":
            out[key] = val if isinstance(val, bool) else str(val).lower() in ("1", "true", "yes")
        else:
            out[key] = val
    out.setdefault("beta", 1.0)
    out.setdefault("gamma0", 1.0)
    out.setdefault("format", "csv")
    if out["format"] not in ("csv", "json"):
        raise UsageError(f"format must be csv or json, got {out['format']!r}")
    return out


def _float(key, val):
    try:
        return float(val)
    except (TypeError, ValueError) as exc:
        raise UsageError(f"--{key} expects a number, got {val!r}") from exc


def _single(params, key, default=None):
    vals = params.get(key)
    if not vals:
        if default is None:
            raise UsageError(f"--{key} is required")
        return default
    if len(vals) != 1:
        raise UsageError(f"--{key} takes a single value for this command")
    return vals[0]


def _build_protocol(params, task, spec):
    if params.get("protocol_csv"):
        return read_protocol_csv(params["protocol_csv"])
    kind = params.get("kind", "optimal")
    if kind == "optimal":
        return optimal_protocol(task, spec)
    if kind == "linear":
        return linear_protocol(task.lambda_max)
    if kind == "quadratic":
        return power_protocol(task.lambda_max, 2.0)
    if "power" not in params:
        raise UsageError("--kind power needs --power")
    return power_protocol(task.lambda_max, params["power"])


def cmd_length(params) -> Table:
    alphas = params.get("alpha") or (1.0,)
    epsilons = params.get("epsilon") or (0.01,)
    beta, gamma0 = params["beta"], params["gamma0"]
    cols = ("alpha", "epsilon", "f_eps", "f_zero", "length", "length_zero", "mu_alpha")
    table = Table("length", cols, config={"alpha": list(alphas), "epsilon": list(epsilons),
                                          "beta": beta, "gamma0": gamma0})
    for a in alphas:
        scale = length_scale(BathSpectrum(a, gamma0).alpha, beta, gamma0)
        f0 = f_alpha(0.0, a)
        for e in epsilons:
            fe = f_alpha(e, a)
            table.add(a, e, fe, f0, scale * fe, scale * f0, 4.0 / f0)
    return table


def cmd_bound(params) -> Table:
    alphas = params.get("alpha") or (1.0,)
    epsilons = params.get("epsilon") or (0.01,)
    taus = params.get("tau") or (1.0,)
    cols = ("alpha", "epsilon", "tau", "length", "precise_bound", "asymptotic_bound")
    table = Table("bound", cols, config={"alpha": list(alphas), "epsilon": list(epsilons), "tau": list(taus),
                                         "beta": params["beta"], "gamma0": params["gamma0"]})
    for a in alphas:
        for e in epsilons:
            for t in taus:
                r = thermodynamic_length(ErasureTask(params["beta"], e, t), BathSpectrum(a, params["gamma0"]))
                table.add(a, e, t, r.length, r.precise_bound, r.asymptotic_bound)
    return table


def _task_and_spec(params):
    task = ErasureTask(params["beta"], _single(params, "epsilon", 0.01), _single(params, "tau", 1.0))
    return task, BathSpectrum(_single(params, "alpha", 1.0), params["gamma0"])


def cmd_protocol(params) -> str:
    task, spec = _task_and_spec(params)
    proto = _build_protocol(params, task, spec)
    if params["format"] == "csv":
        return proto.to_csv()
    t, lam, dlam = proto.table()
    doc = {"kind": proto.kind, "lambda_max": proto.lambda_max, "info": proto.info,
           "t_tilde": t.tolist(), "lambda": lam.tolist(), "dlambda_dt_tilde": dlam.tolist()}
    return json.dumps(doc, indent=1, sort_keys=True, default=float) + "\n"


def cmd_simulate(params) -> str:
    task, spec = _task_and_spec(params)
    proto = _build_protocol(params, task, spec)
    res = simulate(proto, task, spec, InitialState(params.get("p0", 0.5)))
    if params["format"] == "csv" and params.get("trajectory"):
        return res.to_csv()
    if params["format"] == "csv":
        summary = res.summary()
        table = Table("simulate", tuple(summary), config={})
        table.add(*summary.values())
        return table.to_csv()
    return res.to_json()


def cmd_sweep(params) -> Table:
    protocols = tuple(s.strip() for s in params.get("protocols", "optimal,linear,quadratic").split(",") if s.strip())
    return run_sweep(params.get("alpha") or (1.0,), params.get("epsilon") or (1e-4,),
                     params.get("tau") or tau_grid(gamma0=params["gamma0"]), params["beta"], params["gamma0"],
                     protocols, params.get("workers", 1))


def cmd_reproduce(params, figure_id) -> Table:
    base = figure_config(figure_id)
    overrides = {k: params[k] for k in ("alpha", "epsilon", "tau", "beta", "gamma0") if k in params}
    if "workers" in params:
        overrides["workers"] = params["workers"]
    cfg = replace(base, **overrides, format=params["format"])
    return run_experiment(cfg)


def run(argv=None) -> str:
    """Parse ``argv`` and return the rendered output (also written to ``--out``)."""
    return _run(argv)[0]


def _run(argv):
    args = build_parser().parse_args(argv)
    params = resolve(args)
    cmd = args.command
    if cmd == "length":
        result = cmd_length(params)
    elif cmd == "bound":
        result = cmd_bound(params)
    elif cmd == "protocol":
        result = cmd_protocol(params)
    elif cmd == "simulate":
        result = cmd_simulate(params)
    elif cmd == "sweep":
        result = cmd_sweep(params)
    else:
        result = cmd_reproduce(params, args.figure_id)
    text = result.write(None, params["format"]) if isinstance(result, Table) else result
    if params.get("out"):
        with open(params["out"], "w") as fh:
            fh.write(text)
    return text, bool(params.get("out"))


def _error_payload(exc) -> dict:
    payload = {"error": type(exc).__name__, "message": str(exc)}
    if isinstance(exc, QuadratureError):
        payload.update(estimate=exc.estimate, error_bound=exc.error_bound)
    elif isinstance(exc, EndpointMismatchError):
        payload.update(achieved=exc.achieved, target=exc.target)
    elif isinstance(exc, ODEError) and exc.partial is not None:
        payload.update(reached_t=float(exc.partial.t1))
    return payload


def main(argv=None) -> int:
    try:
        text, to_file = _run(argv)
    except (ValueError, ArithmeticError, OSError, RuntimeError) as exc:
        print(json.dumps(_error_payload(exc), sort_keys=True, default=str), file=sys.stderr)
        return 2
    if not to_file:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
