"""Jackson derivative and q-integration.

The derivative quotient samples at qx and x/q instead of an
infinitesimal step, so D x^n = [n] x^(n-1) with the basic number
in place of n. The matching integral is a geometric Riemann sum.
"""

from __future__ import annotations

import math

from basicq import (
    basic_number,
    jackson_derivative,
    q_integral_finite,
    q_integral_fullline,
    q_integral_halfline,
)

Q = 0.9

print("monomial rule: D x^3 at x=2 equals [3] * 2^2")
print("  jackson_derivative :", jackson_derivative(lambda x: x ** 3, 2.0, Q))
print("  [3] * 4            :", basic_number(3, Q) * 4.0)

print("\nclassical limit: D sin at x=1 vs cos(1)")
for q in (0.5, 0.9, 0.99, 1.0):
    d = jackson_derivative(math.sin, 1.0, q)
    print(f"  q={q:<5} D sin = {d:.10f}   (cos(1) = {math.cos(1):.10f})")

print("\npower rule under the integral: int_0^a x^2 = a^3 / [3]")
a = 1.0
got = q_integral_finite(lambda x: x * x, a, Q)
print("  q_integral_finite  :", got)
print("  a^3 / [3]          :", a ** 3 / basic_number(3, Q))

print("\nfundamental theorem round trip on f(x) = x^3")
F = lambda t: q_integral_finite(lambda x: x ** 3, t, Q)
print("  D of the integral at a=1.5 :", jackson_derivative(F, 1.5, Q))
print("  integrand there            :", 1.5 ** 3)

print("\nhalf-line and full-line integrals of a gaussian")
g = lambda x: math.exp(-x * x)
half = q_integral_halfline(g, Q)
full = q_integral_fullline(g, Q)
print("  half line :", half)
print("  full line :", full, " (twice the half line for an even function)")
print("  classical sqrt(pi)/2 =", math.sqrt(math.pi) / 2,
      " (the deformed value differs; the measure is geometric)")
