"""Exception and warning types raised across the package."""

from __future__ import annotations


class DomainError(ValueError):
    """An argument lies outside the domain of the requested quantity."""


class QuadratureError(RuntimeError):
    """Adaptive quadrature hit its subdivision limit before converging."""

    def __init__(self, message, estimate, error_bound):
        super().__init__(f"{message} (estimate={estimate!r}, error_bound={error_bound!r})")
        self.estimate = estimate
        self.error_bound = error_bound


class ODEError(RuntimeError):
    """Step-size underflow or step budget exhausted; keeps what was integrated."""

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class EndpointMismatchError(RuntimeError):
    """The optimal-protocol IVP did not arrive at lambda_max."""

    def __init__(self, message, achieved, target):
        super().__init__(f"{message} (achieved={achieved!r}, target={target!r})")
        self.achieved = achieved
        self.target = target


class AsymptoticValidityWarning(UserWarning):
    """An asymptotic (small-epsilon) formula was used outside its regime."""

    def __init__(self, quantity, epsilon, limit=0.1):
        super().__init__(
            f"{quantity} uses an expansion that drops O(epsilon) terms; "
            f"epsilon={epsilon} exceeds {limit}"
        )
        self.quantity = quantity
        self.epsilon = epsilon
        self.limit = limit
