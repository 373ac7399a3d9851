"""How far is a qubit from being erased? The thermodynamic length.

Erasing to error epsilon means raising the level spacing until the Gibbs
excited population is epsilon. The slow-driving metric turns that path into
a length; its square over tau is the least irreversible work any schedule of
duration tau can achieve.
"""

from landauer_qubit import BathSpectrum, ErasureTask, f_alpha, tail_bound, tail_integral, thermodynamic_length

print("Dimensionless length f_alpha(eps):")
print(f"{'alpha':>6} {'eps=0':>10} {'1e-2':>10} {'1e-4':>10} {'1e-6':>10}")
for alpha in (0.0, 1.0, 2.0):
    vals = [f_alpha(e, alpha) for e in (0.0, 1e-2, 1e-4, 1e-6)]
    print(f"{alpha:6g} " + " ".join(f"{v:10.6f}" for v in vals))

# The constant-coefficient bath (alpha = 0) gives the headline numbers:
# the minimal irreversible work in units of kT / (gamma0 tau).
for eps in (0.01, 0.001):
    rep = thermodynamic_length(ErasureTask(beta=1.0, epsilon=eps, tau=1.0), BathSpectrum(0.0))
    print(f"alpha=0, eps={eps:g}: W_min * gamma0 tau / kT = {rep.precise_bound:.4f}")

# The missing length beyond lambda_max shrinks like sqrt(eps); the closed-form
# bound is tight only for alpha = 0.
print("\nTail of the length beyond lambda_max, and its upper bound:")
for alpha in (0.0, 1.0, 2.0):
    for eps in (1e-3, 1e-6):
        exact, bound = tail_integral(eps, alpha), tail_bound(eps, alpha)
        print(f"alpha={alpha:g} eps={eps:g}: tail={exact:.6g} bound={bound:.6g} ratio={exact / bound:.3f}")
