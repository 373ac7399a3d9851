"""Minimal energy cost of finite-time qubit initialization.

A qubit with level spacing lambda(t), weakly coupled to a bosonic bath with
dissipation coefficient gamma0 * lambda**alpha, is erased by ramping lambda
from 0 to lambda_max in time tau. This package computes the thermodynamic
length of that ramp, the lower bounds on irreversible work it implies, the
schedule that attains them, and the master-equation work of any schedule.
"""

from .core import (
    BathSpectrum,
    ErasureTask,
    LevelSpacing,
    bath_occupation,
    dissipation_coefficient,
    equilibrium_population,
    free_energy_change,
    lambda_max_for_error,
    landauer_limit,
    shannon_entropy,
)
from .dynamics import (
    InitialState,
    TrajectoryResult,
    irreversible_power_slow,
    relaxation_rate,
    simulate,
    slow_driving_population,
)
from .errors import (
    AsymptoticValidityWarning,
    DomainError,
    EndpointMismatchError,
    ODEError,
    QuadratureError,
)
from .geometry import (
    LengthReport,
    asymptotic_bound,
    asymptotic_length,
    f_alpha,
    length_integrand,
    length_scale,
    mu_alpha,
    tail_bound,
    tail_integral,
    thermodynamic_length,
)
from .protocol import (
    Protocol,
    linear_protocol,
    optimal_protocol,
    power_protocol,
    read_protocol_csv,
    sampled_protocol,
    scaling_exponent_fit,
)

__version__ = "0.1.0"

__all__ = [
    "AsymptoticValidityWarning",
    "BathSpectrum",
    "DomainError",
    "EndpointMismatchError",
    "ErasureTask",
    "InitialState",
    "LengthReport",
    "LevelSpacing",
    "ODEError",
    "Protocol",
    "QuadratureError",
    "TrajectoryResult",
    "asymptotic_bound",
    "asymptotic_length",
    "bath_occupation",
    "dissipation_coefficient",
    "equilibrium_population",
    "f_alpha",
    "free_energy_change",
    "irreversible_power_slow",
    "lambda_max_for_error",
    "landauer_limit",
    "length_integrand",
    "length_scale",
    "linear_protocol",
    "mu_alpha",
    "optimal_protocol",
    "power_protocol",
    "read_protocol_csv",
    "relaxation_rate",
    "sampled_protocol",
    "scaling_exponent_fit",
    "shannon_entropy",
    "simulate",
    "slow_driving_population",
    "tail_bound",
    "tail_integral",
    "thermodynamic_length",
]
