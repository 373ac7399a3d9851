import math
import warnings

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from landauer_qubit import (
    AsymptoticValidityWarning,
    BathSpectrum,
    DomainError,
    ErasureTask,
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

# f_alpha(epsilon) from mpmath.quad at 30 digits, integrating the density directly in x.
F_ORACLE = {
    (0, 0.0): 1.198140234735592,
    (0, 0.01): 0.9984760915308726,
    (0, 0.001): 1.134905230370801,
    (0, 1e-4): 1.178140568093928,
    (0, 0.1): 0.5770983738408066,
    (1, 0.0): 0.9432464095159383,
    (1, 0.01): 0.8634647173026362,
    (1, 0.001): 0.9217371876816478,
    (1, 1e-4): 0.93721425521421,
    (1, 1e-6): 0.9427409116129228,
    (1, 0.3): 0.2882437634123093,
    (2, 0.0): 1.091418048003802,
    (2, 0.01): 1.059067895840113,
    (2, 1e-6): 1.091289893030321,
    (2, 0.1): 0.9215080232837888,
}
TAIL_ORACLE = {
    (0, 0.01): 0.1996641432047197,
    (1, 1e-4): 0.006032154301728303,
    (2, 0.001): 0.007379095675397635,
    (1, 0.3): 0.6550026461036289,
}


@pytest.mark.parametrize("key", sorted(F_ORACLE))
def test_f_alpha_oracle(key):
    alpha, eps = key
    assert f_alpha(eps, alpha) == pytest.approx(F_ORACLE[key], rel=1e-10)


@pytest.mark.parametrize("key", sorted(TAIL_ORACLE))
def test_tail_integral_oracle(key):
    alpha, eps = key
    assert tail_integral(eps, alpha) == pytest.approx(TAIL_ORACLE[key], rel=1e-9)


def test_f_alpha_half_is_zero():
    assert f_alpha(0.5, 1.0) == 0.0


def test_length_integrand_small_x():
    for alpha in (0.0, 1.0, 2.0):
        x = 1e-8
        assert length_integrand(x, alpha) == pytest.approx(math.sqrt(x ** (1 - alpha) / 8), rel=1e-6)
    assert length_integrand(0.0, 0.0) == 0.0
    with pytest.raises(DomainError):
        length_integrand(0.0, 1.0)
    with pytest.raises(DomainError):
        length_integrand(-1.0, 0.0)


def test_length_integrand_array():
    x = np.array([0.5, 1.0, 3.0])
    np.testing.assert_allclose(length_integrand(x, 1.0), [length_integrand(v, 1.0) for v in x])


@settings(max_examples=40, deadline=None)
@given(st.floats(1e-9, 0.49), st.sampled_from([0.0, 0.5, 1.0, 2.0]))
def test_tail_decomposition_and_bound(eps, alpha):
    f0, fe = f_alpha(0.0, alpha), f_alpha(eps, alpha)
    tail = tail_integral(eps, alpha)
    assert abs((f0 - fe) - tail) <= 1e-8
    assert tail <= tail_bound(eps, alpha) * (1 + 1e-12)


@settings(max_examples=30, deadline=None)
@given(st.floats(1e-9, 0.25), st.floats(1.01, 1.9), st.sampled_from([0.0, 1.0, 2.0]))
def test_f_alpha_decreasing_in_epsilon(eps, factor, alpha):
    assert f_alpha(eps * factor, alpha) < f_alpha(eps, alpha)


def test_tail_bound_value():
    assert tail_bound(0.01, 1.0) == pytest.approx(0.09319812035693122, rel=1e-13)
    assert tail_bound(0.04, 0.0) == pytest.approx(0.4)


def test_length_scale_and_dimensions():
    # alpha = 1 makes L independent of beta
    assert length_scale(1.0, 7.0, 1.0) == 1.0
    assert length_scale(0.0, 4.0, 1.0) == 0.5
    rep = thermodynamic_length(ErasureTask(beta=4.0, epsilon=0.01, tau=2.0), BathSpectrum(0.0, 1.0))
    assert rep.length == pytest.approx(0.5 * F_ORACLE[(0, 0.01)], rel=1e-10)
    assert rep.precise_bound == pytest.approx(rep.length**2 / 2.0)


def test_mu_alpha():
    assert mu_alpha(1.0) == pytest.approx(4 / 0.9432464095159383, rel=1e-10)


def test_bounds_ordering_and_tau_scaling():
    task = ErasureTask(epsilon=1e-3, tau=10.0)
    for alpha in (0.0, 1.0, 2.0):
        rep = thermodynamic_length(task, BathSpectrum(alpha))
        assert rep.asymptotic_bound <= rep.precise_bound <= rep.length_zero**2 / task.tau
        assert asymptotic_bound(1e-3, alpha, 20.0) == pytest.approx(rep.asymptotic_bound / 2, rel=1e-14)


def test_asymptotic_length_is_lower_bound():
    for alpha in (0.0, 1.0, 2.0):
        for eps in (1e-2, 1e-4, 1e-6):
            assert asymptotic_length(eps, alpha) <= f_alpha(eps, alpha)


def test_asymptotic_warning_outside_regime():
    with pytest.warns(AsymptoticValidityWarning):
        asymptotic_bound(0.2, 1.0, 1.0)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        asymptotic_bound(0.05, 1.0, 1.0)


@pytest.mark.parametrize("eps", [-0.1, 0.6, float("nan")])
def test_domain_errors(eps):
    with pytest.raises(DomainError):
        f_alpha(eps, 1.0)


def test_negative_alpha_rejected():
    with pytest.raises(DomainError):
        f_alpha(0.01, -1.0)
    with pytest.raises(DomainError):
        tail_integral(0.0, 1.0)
