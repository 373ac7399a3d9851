"""The schedule that dissipates at a constant rate.

The optimal ramp moves fast where the metric is small and slow where it is
large. Near t~ = 0 it follows a power law whose exponent depends only on the
bath: lambda ~ t~^(2/(3 - alpha)).
"""

import numpy as np

from landauer_qubit import BathSpectrum, ErasureTask, irreversible_power_slow, optimal_protocol, scaling_exponent_fit

task = ErasureTask(beta=1.0, epsilon=1e-4, tau=100.0)
for alpha in (0.0, 1.0, 2.0):
    spec = BathSpectrum(alpha)
    proto = optimal_protocol(task, spec)
    k = scaling_exponent_fit(proto)
    print(f"alpha={alpha:g}: lambda(1)={proto(1.0):.6f} (target {task.lambda_max:.6f}), "
          f"initial exponent {k:.4f} (expected {2 / (3 - alpha):.4f})")

    # the slow-driving power is flat: every stretch of time costs the same
    t = np.linspace(0.01, 1.0, 200)
    lam, dlam = proto(t), proto.derivative(t)
    power = irreversible_power_slow(lam, dlam / task.tau, task, spec)
    print(f"           power spread max|P/<P> - 1| = {np.max(np.abs(power / power.mean() - 1)):.1e}")

# Protocols are plain tables; write one for plotting.
print()
print("\n".join(optimal_protocol(task, BathSpectrum(1.0)).to_csv().splitlines()[:5]))
