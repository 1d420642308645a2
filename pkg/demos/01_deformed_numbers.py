"""Symmetric basic numbers and factorials.

[x] = (q^x - q^(-x)) / (q - q^(-1)) deforms plain arithmetic; at q -> 1
it hands back x itself. Run this to see the deformation switch on.
"""

from __future__ import annotations

from basicq import as_qparam, basic_factorial, basic_number

print("basic numbers [n] at three deformations")
print(f"{'n':>4} {'q=0.99':>12} {'q=0.9':>12} {'q=0.5':>12}")
for n in range(1, 9):
    row = [basic_number(n, q) for q in (0.99, 0.9, 0.5)]
    print(f"{n:>4} {row[0]:>12.6f} {row[1]:>12.6f} {row[2]:>12.6f}")

# q and 1/q give the same number; the parameter is canonicalized
print("\n[3] at q=0.8 :", basic_number(3, 0.8))
print("[3] at q=1.25:", basic_number(3, 1.25))
print("canonical q for 1.25:", as_qparam(1.25).canonical)

print("\nnon-integer and negative arguments work too")
for x in (0.5, -2.0, 3.25):
    print(f"  [{x}]_0.9 = {basic_number(x, 0.9):.12f}")

print("\nfactorials outgrow n! once q moves off 1")
print(f"{'n':>4} {'n!':>16} {'[n]!_0.9':>16} {'[n]!_0.5':>16}")
fact = 1
for n in range(1, 11):
    fact *= n
    print(f"{n:>4} {fact:>16} {basic_factorial(n, 0.9):>16.4f} "
          f"{basic_factorial(n, 0.5):>16.4f}")

print("\nclassical limit: [5] as q walks toward 1")
for q in (0.5, 0.9, 0.99, 0.999, 1.0):
    print(f"  q={q:<6} [5] = {basic_number(5, q):.10f}")
