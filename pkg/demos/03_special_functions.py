"""Deformed exponential and trigonometric functions.

E_q, S_q, C_q are the power series with [n]! in the denominators. They
keep the eigen-relation D E_q(ax) = a E_q(ax) and a Pythagorean-style
identity with a shifted partner, and collapse to exp/sin/cos at q=1.
"""

from __future__ import annotations

import cmath

from basicq import jackson_derivative, q_cos, q_exp, q_sin

Q = 0.9

print("values at x=1 and how many series terms they took")
for name, fn, classical in (("E", q_exp, cmath.exp),
                            ("S", q_sin, cmath.sin),
                            ("C", q_cos, cmath.cos)):
    r = fn(1.0, Q)
    print(f"  {name}_q(1) = {r.value.real:.12f}   terms={r.terms_used}   "
        f"classical {classical(1).real:.12f}")

print("\nEuler identity: E_q(ix) = C_q(x) + i S_q(x)")
x = 0.7
lhs = q_exp(1j * x, Q).value
rhs = q_cos(x, Q).value + 1j * q_sin(x, Q).value
print(f"  E_q(i{x}) = {lhs}")
print(f"  C + iS    = {rhs}")
print(f"  residual  = {abs(lhs - rhs):.2e}")

print("\neigen-relation: D E_q(2x) at x=0.5 vs 2 E_q(2x)")
d = jackson_derivative(lambda t: q_exp(2.0 * t, Q).value, 0.5, Q)
ref = 2.0 * q_exp(1.0, Q).value
print(f"  D side  : {d.real:.12f}")
print(f"  2 E side: {ref.real:.12f}")

print("\ntwo independent series routes agree (physics vs shifted factorial)")
for z in (0.8, 1.7, 0.4 + 1.1j):
    a = q_exp(z, Q).value
    b = q_exp(z, Q, representation="shifted").value
    print(f"  z={z!s:<12} |physics - shifted| = {abs(a - b):.2e}")

print("\nentire functions: large argument still converges")
big = q_exp(25.0, Q)
print(f"  E_q(25) = {big.value.real:.6e}   terms={big.terms_used}")
print("  (the classical exp(25) =", f"{cmath.exp(25).real:.6e})")

print("\nclassical limit at q=1 is exact dispatch")
print("  E_1(1) - e =", q_exp(1.0, 1.0).value.real - cmath.exp(1).real)
