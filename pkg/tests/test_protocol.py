import math

import numpy as np
import pytest

from landauer_qubit import (
    BathSpectrum,
    DomainError,
    ErasureTask,
    irreversible_power_slow,
    linear_protocol,
    optimal_protocol,
    power_protocol,
    read_protocol_csv,
    sampled_protocol,
    scaling_exponent_fit,
)
from landauer_qubit.protocol import PROTOCOL_CSV_COLUMNS, optimal_slope, seed_coefficient

LN99 = 4.59511985013459


@pytest.fixture(scope="module")
def opt1():
    return optimal_protocol(ErasureTask(epsilon=1e-4), BathSpectrum(1.0))


def test_linear_and_power():
    lin = linear_protocol(LN99)
    assert lin(0.5) == pytest.approx(LN99 / 2)
    assert lin.derivative(0.3) == pytest.approx(LN99)
    quad = power_protocol(LN99, 2.0)
    assert quad(0.5) == pytest.approx(LN99 / 4)
    assert quad.derivative(0.5) == pytest.approx(LN99)
    assert power_protocol(2.0, 1.0).kind == "linear"
    np.testing.assert_allclose(quad(np.array([0.0, 1.0])), [0.0, LN99])


def test_protocol_domain():
    with pytest.raises(DomainError):
        linear_protocol(1.0)(1.5)
    with pytest.raises(DomainError):
        power_protocol(1.0, 0.0)
    with pytest.raises(DomainError):
        linear_protocol(-1.0)


@pytest.mark.parametrize("alpha", [0.0, 1.0, 2.0])
@pytest.mark.parametrize("eps", [1e-2, 1e-6])
def test_optimal_boundaries_and_monotone(alpha, eps):
    task = ErasureTask(epsilon=eps)
    proto = optimal_protocol(task, BathSpectrum(alpha))
    assert proto(0.0) == 0.0
    assert proto(1.0) == pytest.approx(task.lambda_max, rel=1e-4)
    t = np.linspace(0, 1, 2001)
    assert np.all(np.diff(proto(t)) > 0)
    assert np.all(proto.derivative(t[1:]) > 0)


def test_optimal_is_tau_independent():
    spec = BathSpectrum(1.0)
    a = optimal_protocol(ErasureTask(epsilon=0.01, tau=10.0), spec)
    b = optimal_protocol(ErasureTask(epsilon=0.01, tau=1e4), spec)
    t = np.linspace(0, 1, 101)
    np.testing.assert_array_equal(a(t), b(t))


@pytest.mark.parametrize("alpha", [0.0, 0.5, 1.0, 2.0])
@pytest.mark.parametrize("beta,gamma0", [(1.0, 1.0), (2.5, 0.3), (0.4, 7.0)])
def test_seed_matches_geodesic_slope(alpha, beta, gamma0):
    # the seed power law must solve the same ODE in the small-lambda limit
    length = 0.9
    c = seed_coefficient(alpha, beta, gamma0, length)
    k = 2.0 / (3.0 - alpha)
    t = 1e-9
    lam = c * t**k
    assert c * k * t ** (k - 1) == pytest.approx(optimal_slope(lam, length, alpha, beta, gamma0), rel=1e-5)


def test_constant_dissipation_rate(opt1):
    # slow-driving power along the optimal schedule equals L^2/tau^2 everywhere
    tau = 50.0
    task = ErasureTask(epsilon=1e-4, tau=tau)
    length = opt1.info["length"]
    t = np.linspace(0.01, 1.0, 400)
    lam, dlam = opt1._evaluate(t)
    power = irreversible_power_slow(lam, dlam / tau, task, BathSpectrum(1.0))
    np.testing.assert_allclose(power * tau**2 / length**2, 1.0, rtol=1e-3)


@pytest.mark.parametrize("alpha,expected", [(0.0, 2 / 3), (1.0, 1.0), (2.0, 2.0)])
def test_scaling_exponent(alpha, expected):
    proto = optimal_protocol(ErasureTask(epsilon=1e-4), BathSpectrum(alpha))
    assert scaling_exponent_fit(proto) == pytest.approx(expected, abs=0.02)


def test_scaling_exponent_fit_analytic():
    assert scaling_exponent_fit(power_protocol(3.0, 1.7)) == pytest.approx(1.7, abs=1e-12)
    with pytest.raises(DomainError):
        scaling_exponent_fit(linear_protocol(1.0), fit_window=(0.1, 0.01))


def test_csv_round_trip(tmp_path, opt1):
    path = tmp_path / "opt.csv"
    text = opt1.to_csv(path)
    assert text.splitlines()[0] == ",".join(PROTOCOL_CSV_COLUMNS)
    back = read_protocol_csv(path)
    t = np.linspace(0, 1, 777)
    np.testing.assert_allclose(back(t), opt1(t), rtol=1e-9, atol=1e-9)
    # re-serialization is byte-stable
    assert back.to_csv() == text


def test_csv_deterministic(opt1):
    again = optimal_protocol(ErasureTask(epsilon=1e-4), BathSpectrum(1.0))
    assert again.to_csv() == opt1.to_csv()


def test_sampled_protocol_validation():
    t = np.linspace(0, 1, 11)
    p = sampled_protocol(t, 2 * t**2)
    assert p(0.5) == pytest.approx(0.5, abs=1e-2)
    with pytest.raises(DomainError):
        sampled_protocol(t, 1 + t)
    with pytest.raises(DomainError):
        sampled_protocol(t, np.sin(3 * t))
    with pytest.raises(DomainError):
        sampled_protocol(t[:-1], t[:-1])
    # relaxed checks allow arbitrary schedules
    assert sampled_protocol(t, 1 + t, enforce_boundary=False)(0.0) == 1.0


def test_read_rejects_bad_header(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("a,b,c\n0,0,1\n1,1,1\n")
    with pytest.raises(DomainError):
        read_protocol_csv(path)


def test_zero_length_protocol():
    proto = optimal_protocol(ErasureTask(epsilon=0.5), BathSpectrum(1.0))
    assert proto(0.7) == 0.0


def test_unsupported_alpha():
    with pytest.raises(DomainError):
        optimal_protocol(ErasureTask(), BathSpectrum(3.0))


def test_info_records_length(opt1):
    assert opt1.info["length"] == pytest.approx(0.93721425521421, rel=1e-10)
    assert math.isclose(opt1.info["lambda_end"], ErasureTask(epsilon=1e-4).lambda_max, rel_tol=1e-4)
