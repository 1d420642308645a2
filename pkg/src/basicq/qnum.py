"""Symmetric basic numbers, basic factorials, and q-shifted factorials.

The deformation is parameterized by a real ``q > 0`` and built on the
symmetric basic number

    [x] = (q^x - q^-x) / (q - q^-1),

which is invariant under ``q -> 1/q`` and reduces to ``x`` as ``q -> 1``.
All quantities in this package evaluate at the canonical representative
``min(q, 1/q)`` in ``(0, 1]``, so callers may pass either member of a
``(q, 1/q)`` pair and get identical values.

The basic factorial ``[n]! = [n][n-1]...[1]`` admits a second computational
route through q-shifted factorials (Pochhammer products),

    1/[n]! = (1 - q^2)^n q^{n(n-1)/2} / (q^2; q^2)_n,

exposed as :func:`basic_factorial_via_shifted` and used as an independent
cross-check of the direct product.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = [
    "CLASSICAL_EPS",
    "QParam",
    "as_qparam",
    "basic_number",
    "basic_factorial",
    "q_shifted_factorial",
    "basic_factorial_via_shifted",
]

# |q - 1| below this means the classical (undeformed) branch.
CLASSICAL_EPS = 1e-12


@dataclass(frozen=True)
class QParam:
    """Validated deformation parameter.

    Parameters
    ----------
    q : float
        Raw deformation parameter; must be finite and positive.

    Attributes
    ----------
    q : float
        The value as given.
    canonical : float
        ``min(q, 1/q)``, the representative in ``(0, 1]`` every computation
        uses; quantities symmetric under ``q -> 1/q`` are therefore equal
        for ``q`` and ``1/q`` up to roundoff.
    classical : bool
        True when ``|q - 1| < 1e-12``; functions then dispatch to their
        undeformed limits.
    """

    q: float

    def __post_init__(self):
        q = float(self.q)
        if not math.isfinite(q) or q <= 0.0:
            raise ValueError(f"deformation parameter must be finite and > 0, got {self.q!r}")
        object.__setattr__(self, "q", q)

    @property
    def canonical(self) -> float:
        return self.q if self.q <= 1.0 else 1.0 / self.q

    @property
    def classical(self) -> bool:
        return abs(self.q - 1.0) < CLASSICAL_EPS


def as_qparam(q) -> QParam:
    """Coerce a float (or QParam) to a QParam."""
    return q if isinstance(q, QParam) else QParam(float(q))


def basic_number(x: float, q) -> float:
    """Symmetric basic number ``[x] = (q^x - q^-x)/(q - q^-1)``.

    Parameters
    ----------
    x : float
        Argument; any finite real (not restricted to integers).
    q : float or QParam
        Deformation parameter.

    Returns
    -------
    float
        ``[x]``; equals ``x`` on the classical branch.  Odd in ``x`` and
        invariant under ``q -> 1/q``.

    Examples
    --------
    >>> basic_number(2, 0.9)        # q + 1/q
    2.01111111111111
    >>> basic_number(3, 1.0)
    3.0
    """
    x = float(x)
    if not math.isfinite(x):
        raise ValueError(f"basic_number requires finite x, got {x!r}")
    qp = as_qparam(q)
    if qp.classical:
        return x
    t = math.log(qp.canonical)
    # (q^x - q^-x)/(q - q^-1) == sinh(x ln q)/sinh(ln q); stable for large |x|.
    return math.sinh(x * t) / math.sinh(t)


def basic_factorial(n: int, q) -> float:
    """Basic factorial ``[n]! = [n][n-1]...[1]`` with ``[0]! = 1``.

    Accumulated left-to-right so that ``[n+1]! == [n+1] * [n]!`` holds
    exactly as computed.  Values past float range overflow to ``inf``.

    Parameters
    ----------
    n : int
        Nonnegative integer.
    q : float or QParam
        Deformation parameter.
    """
    if not isinstance(n, (int,)) or isinstance(n, bool):
        raise ValueError(f"basic_factorial requires an integer n, got {n!r}")
    if n < 0:
        raise ValueError(f"basic_factorial requires n >= 0, got {n}")
    qp = as_qparam(q)
    out = 1.0
    for k in range(1, n + 1):
        out *= basic_number(k, qp)
    return out


def q_shifted_factorial(a: float, q, n, tol: float = 1e-18) -> float:
    """q-shifted factorial ``(a; q)_n = prod_{k=0}^{n-1} (1 - a q^k)``.

    Parameters
    ----------
    a : float
        First argument of the Pochhammer symbol.
    q : float or QParam
        Base; evaluated at the canonical representative in ``(0, 1]``.
    n : int or math.inf
        Number of factors; ``math.inf`` requests the infinite product,
        truncated once ``|a| q^k`` falls below ``tol`` (factor within
        ``tol`` of 1).
    tol : float, optional
        Truncation tolerance for the infinite product.

    Raises
    ------
    ValueError
        If ``n`` is a negative integer, or the infinite product is requested
        on the classical branch (base 1: the product does not converge).
    """
    a = float(a)
    qp = as_qparam(q)
    qc = qp.canonical
    if n is math.inf or (isinstance(n, float) and math.isinf(n) and n > 0):
        if qp.classical:
            raise ValueError("infinite q-shifted factorial requires q != 1 (base in (0,1))")
        out = 1.0
        k = 0
        factor_scale = abs(a)
        while factor_scale * qc**k > tol:
            out *= 1.0 - a * qc**k
            k += 1
            if k > 10_000_000:  # unreachable for qc < 1; guards pathological tol
                raise ValueError("q_shifted_factorial: truncation did not terminate")
        return out
    if not isinstance(n, int) or isinstance(n, bool):
        raise ValueError(f"q_shifted_factorial requires integer or inf n, got {n!r}")
    if n < 0:
        raise ValueError(f"q_shifted_factorial requires n >= 0, got {n}")
    out = 1.0
    for k in range(n):
        out *= 1.0 - a * qc**k
    return out


def basic_factorial_via_shifted(n: int, q) -> float:
    """Basic factorial through the shifted-factorial (Pochhammer) route.

    Computes ``[n]! = (q^2; q^2)_n / ((1 - q^2)^n q^{n(n-1)/2})`` by an
    iterative term-ratio update, an arithmetic path independent of
    :func:`basic_factorial`; the two must agree to relative ``1e-12``
    wherever values are representable.

    Raises
    ------
    ValueError
        On the classical branch (the route needs a base strictly inside
        ``(0, 1)``) or for negative ``n``.
    """
    if not isinstance(n, int) or isinstance(n, bool):
        raise ValueError(f"basic_factorial_via_shifted requires an integer n, got {n!r}")
    if n < 0:
        raise ValueError(f"basic_factorial_via_shifted requires n >= 0, got {n}")
    qp = as_qparam(q)
    if qp.classical:
        raise ValueError("basic_factorial_via_shifted requires q != 1 (canonical base < 1)")
    qc = qp.canonical
    q2 = qc * qc
    # inv = 1/[k]! built via ratio (1 - q^2) q^{k-1} / (1 - q^{2k}); return 1/inv.
    inv = 1.0
    for k in range(1, n + 1):
        inv *= (1.0 - q2) * qc ** (k - 1) / (1.0 - q2**k)
    return 1.0 / inv
