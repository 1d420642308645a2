"""Ladder operators of the deformed oscillator.

a and a+ act on number states with sqrt([n]) amplitudes, so
a a+ - q^(+-1) a+ a = q^(-+N) replaces the canonical commutator and
a+ a has eigenvalues [n] instead of n.
"""

from __future__ import annotations

import numpy as np

from basicq import algebra_residuals, basic_number, build_ladder, fock_state

DIM, Q = 6, 0.9

triple = build_ladder(DIM, Q)
np.set_printoptions(precision=4, suppress=True, linewidth=100)

print(f"annihilation matrix, dim={DIM}, q={Q}")
print(triple.a)

print("\noccupancy spectrum: diag(a+ a) vs the basic numbers [n]")
diag = np.diag(triple.a_dag @ triple.a)
for n in range(DIM):
    print(f"  n={n}  a+a -> {diag[n]:.10f}   [n] = {basic_number(n, Q):.10f}")

print("\nladder action on the n=2 number state")
v = fock_state(2, triple)
down, up = triple.a @ v, triple.a_dag @ v
print("  a  |2> has amplitude sqrt([2]) on |1>:", down[1], "=",
      np.sqrt(basic_number(2, Q)))
print("  a+ |2> has amplitude sqrt([3]) on |3>:", up[3], "=",
      np.sqrt(basic_number(3, Q)))

print("\ninterior-block algebra residuals (scaled, truncation row excluded)")
for key, val in sorted(algebra_residuals(triple).items()):
    print(f"  {key:<28} {val:.3e}")

print("\nthe truncation artifact lives at the dropped corner only:")
big = build_ladder(12, 0.5)
res = algebra_residuals(big)
print(f"  dim=12 q=0.5 interior defining residual {res['defining']:.3e}, "
      f"corner artifact {res['defining_artifact']:.3e} (the cut [dim] amplitude)")
