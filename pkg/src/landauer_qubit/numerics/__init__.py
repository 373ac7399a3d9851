from .ode import DEFAULT_ODE, DenseSolution, OdeConfig, solve_ivp
from .quadrature import DEFAULT_QUADRATURE, QuadratureConfig, integrate, integrate_semi_infinite

__all__ = [
    "DEFAULT_ODE",
    "DEFAULT_QUADRATURE",
    "DenseSolution",
    "OdeConfig",
    "QuadratureConfig",
    "integrate",
    "integrate_semi_infinite",
    "solve_ivp",
]
