"""Regenerating figure data as plot-ready tables.

Every named experiment returns a Table that writes deterministic CSV (with a
provenance comment line) or JSON. The same tables are available from the
command line as ``landauer-qubit reproduce <figure-id>``.
"""

from landauer_qubit.experiments import FIGURES, run_delta_wir, run_experiment, run_tradeoff_surface

print("figure ids:", ", ".join(sorted(FIGURES)))

print(run_experiment(FIGURES["headline"]).to_csv())

surface = run_tradeoff_surface(alpha=1.0, epsilons=(1e-6, 1e-4, 1e-2), taus=(10.0, 100.0, 1000.0))
print(surface.to_csv())

# extra minimal work for a tenfold smaller error, relative to perfect erasure
for eps, dw in zip(*[run_delta_wir().column(c) for c in ("epsilon", "delta_wir")]):
    print(f"eps={eps:8.1e}  delta_wir={dw:.4f}")
