"""Lower bounds on the variance product for a spin-1 state family.

Sweeps the pure family cos(theta)|1> - sin(theta)|0> (eigenstates of Lz)
against A = Lx, B = Ly, comparing the Robertson-Schrodinger bound, the
optimization-free fidelity-weighted bound, and the basis-optimized bound
with the exact product Var(Lx) * Var(Ly).  Writes the table to CSV.
"""

import numpy as np

from varbounds import SweepSpec, emit, run_sweep

# the "fig1" preset bundles the family, the observable pair, and the bounds
table = run_sweep(SweepSpec(preset="fig1", theta_count=61))

theta = table.column("theta")
product = table.column("exact_product")
rs = table.column("rs_product")
fidelity = table.column("fidelity_product")
optimized = table.column("optimized_product")

print(f"{'theta':>8} {'product':>10} {'RS':>10} {'fidelity':>10} {'optimized':>10}")
for i in range(0, len(theta), 6):
    print(f"{theta[i]:8.4f} {product[i]:10.6f} {rs[i]:10.6f} "
          f"{fidelity[i]:10.6f} {optimized[i]:10.6f}")

# every lower bound sits below the exact product, and the optimized bound
# saturates it on this family (the recorded gap is at round-off level)
assert np.all(rs <= product + 1e-10)
assert np.all(fidelity <= product + 1e-10)
print("\nmax gap product - optimized:", table.metadata["optimized_product_gap"]["max"])

# the fidelity bound needs no optimization yet beats RS on most of the grid
frac = np.mean(fidelity >= rs - 1e-12)
print(f"fidelity bound >= RS bound on {100 * frac:.0f}% of the grid")

emit(table, "csv", "product_lower_bounds.csv")
print("wrote product_lower_bounds.csv")
