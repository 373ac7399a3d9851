"""Running the erasure: master-equation populations and the work they cost.

The optimal schedule beats the linear and quadratic ramps, and its
irreversible work approaches L^2/tau from above as tau grows.
"""

from landauer_qubit import (
    BathSpectrum,
    ErasureTask,
    free_energy_change,
    linear_protocol,
    optimal_protocol,
    power_protocol,
    simulate,
    thermodynamic_length,
)

spec = BathSpectrum(alpha=1.0, gamma0=1.0)
base = ErasureTask(beta=1.0, epsilon=1e-4, tau=1.0)
opt = optimal_protocol(base, spec)  # independent of tau
lin = linear_protocol(base.lambda_max)
quad = power_protocol(base.lambda_max, 2.0)

print(f"{'gamma0 tau':>10} {'L^2/tau':>11} {'optimal':>11} {'linear':>11} {'quadratic':>11} {'p_e(tau)':>10}")
for tau in (20.0, 200.0, 2000.0):
    task = ErasureTask(beta=1.0, epsilon=1e-4, tau=tau)
    bound = thermodynamic_length(task, spec).precise_bound
    runs = [simulate(p, task, spec) for p in (opt, lin, quad)]
    print(f"{tau:10g} {bound:11.4e} " + " ".join(f"{r.irr_work:11.4e}" for r in runs)
          + f" {runs[0].achieved_error:10.3e}")

# Slow enough, the total work approaches the free-energy change.
task = ErasureTask(beta=1.0, epsilon=0.01, tau=1e4)
res = simulate(optimal_protocol(task, spec), task, spec)
print(f"\ntau=1e4, eps=0.01: W_total={res.work_total:.6f}  dF={free_energy_change(task):.6f}")
