"""Lattice carrier of the basic square-integrable space.

Functions live on the two-sided geometric lattice ``{±a q^m, m_min <= m <=
m_max}`` with ``0 < q < 1``.  The q-inner product

    <phi, psi> = sum over odd-m points of  a (q^-1 - q) q^m  conj(phi) psi

samples only odd exponents (both signs); even-m points carry weight zero but
are stored because the Jackson derivative couples the two parities (one
application maps odd-m samples to even-m ones and back).

Point order is strictly coordinate-ascending: the negative branch from
``-a q^{m_min}`` up toward zero, then the positive branch away from zero up
to ``+a q^{m_min}``; consecutive same-sign points have ratio exactly ``q``
walking toward zero.  This makes second-difference operators on the odd
sublattice tridiagonal.

Boundary policy for difference operators: a neighbor past the outer end
(``m < m_min``) is treated as 0 (decay at infinity); a neighbor past the
inner end (``m > m_max``) is filled by linear continuation toward the
origin, anchored at ``value_at_zero`` when the datum is available (function
application) and at the two innermost same-branch samples otherwise
(matrix application).  The two rules coincide on linear functions.
"""

from __future__ import annotations

import io
import json
import math
from dataclasses import dataclass

import numpy as np

from .qnum import as_qparam

__all__ = [
    "QLattice",
    "LatticeFunction",
    "OperatorMatrix",
    "build_lattice",
    "default_lattice",
    "sample",
    "inner_product",
    "q_norm",
    "basis_function",
    "apply_position",
    "apply_momentum",
    "position_matrix",
    "derivative_matrix",
    "momentum_matrix",
    "restrict_to_odd",
    "decaying_test_function",
    "hermiticity_residual",
    "symmetrize",
    "unsymmetrize",
    "to_csv",
    "from_csv",
    "to_json",
    "from_json",
]

DEFAULT_Q = 0.9
DEFAULT_M_MIN = -15
DEFAULT_M_MAX = 60
CSV_SCHEMA_VERSION = 1
JSON_SCHEMA_VERSION = 1


@dataclass(frozen=True, eq=False)
class QLattice:
    """Two-sided geometric lattice with q-integration weights.

    Attributes
    ----------
    q : float
        Canonical deformation parameter, in (0, 1).
    m_min, m_max : int
        Exponent bounds; points are ``±a q^m`` for every m in range.
    a : float
        Overall scale, > 0.
    sign, m : numpy.ndarray
        Branch sign (+-1) and exponent per point, coordinate-ascending.
    x : numpy.ndarray
        Coordinates, strictly increasing.
    w : numpy.ndarray
        q-integration weight per point: ``a (q^-1 - q) q^m`` at odd m,
        0 at even m.
    """

    q: float
    m_min: int
    m_max: int
    a: float
    sign: np.ndarray
    m: np.ndarray
    x: np.ndarray
    w: np.ndarray

    @property
    def size(self) -> int:
        return len(self.x)

    @property
    def n_branch(self) -> int:
        """Points per branch."""
        return self.m_max - self.m_min + 1

    @property
    def odd_indices(self) -> np.ndarray:
        """Indices of odd-exponent points, in coordinate-ascending order."""
        return np.nonzero(self.m % 2 != 0)[0]

    def index_of(self, s: int, m: int) -> int:
        """Index of the point with branch sign ``s`` and exponent ``m``."""
        if m < self.m_min or m > self.m_max:
            raise ValueError(f"exponent {m} outside [{self.m_min}, {self.m_max}]")
        if s not in (-1, 1):
            raise ValueError(f"sign must be +-1, got {s!r}")
        if s < 0:
            return m - self.m_min
        return self.n_branch + (self.m_max - m)

    def compatible(self, other: "QLattice") -> bool:
        return (self.q == other.q and self.m_min == other.m_min
                and self.m_max == other.m_max and self.a == other.a)


def _freeze(arr):
    arr.setflags(write=False)
    return arr


def build_lattice(q, m_min: int, m_max: int, a: float = 1.0) -> QLattice:
    """Construct the two-sided lattice.

    ``q`` is canonicalized into (0, 1); the classical value is rejected
    because the geometric lattice degenerates at ``q = 1``.

    Examples
    --------
    >>> lat = build_lattice(0.9, -10, 40)
    >>> lat.size
    102
    """
    qp = as_qparam(q)
    if qp.classical:
        raise ValueError("build_lattice requires q != 1 (no geometric lattice classically)")
    for name, val in (("m_min", m_min), ("m_max", m_max)):
        if not isinstance(val, int) or isinstance(val, bool):
            raise ValueError(f"{name} must be an integer, got {val!r}")
    if m_min >= m_max:
        raise ValueError(f"m_min must be < m_max, got {m_min} >= {m_max}")
    if not (a > 0) or not math.isfinite(a):
        raise ValueError(f"scale a must be finite and > 0, got {a!r}")
    qc = qp.canonical
    ms = np.arange(m_min, m_max + 1)
    # Negative branch with m ascending runs from -a q^{m_min} (most negative)
    # toward zero; positive branch with m descending continues away from zero.
    m_all = np.concatenate([ms, ms[::-1]])
    s_all = np.concatenate([-np.ones_like(ms), np.ones_like(ms)])
    mag = a * qc ** m_all.astype(float)
    x = s_all * mag
    w = np.where(m_all % 2 != 0, a * (1.0 / qc - qc) * qc ** m_all.astype(float), 0.0)
    return QLattice(q=qc, m_min=m_min, m_max=m_max, a=float(a),
                    sign=_freeze(s_all), m=_freeze(m_all),
                    x=_freeze(x), w=_freeze(w))


def default_lattice() -> QLattice:
    """The package default: q=0.9, m in [-15, 60], a=1 (152 points, |x| in ~[2e-3, 4.9])."""
    return build_lattice(DEFAULT_Q, DEFAULT_M_MIN, DEFAULT_M_MAX)


@dataclass(frozen=True, eq=False)
class LatticeFunction:
    """Complex samples on a QLattice plus the limit datum at the origin.

    ``value_at_zero`` is the q-regular limit ``f(x q^n) -> f(0)``; it enters
    difference operators at the inner lattice end but carries no integration
    weight.
    """

    lattice: QLattice
    values: np.ndarray
    value_at_zero: complex = 0j

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=complex)
        if vals.shape != (self.lattice.size,):
            raise ValueError(
                f"values shape {vals.shape} does not match lattice size {self.lattice.size}")
        if not np.all(np.isfinite(vals)):
            raise ValueError("non-finite sample rejected")
        object.__setattr__(self, "values", _freeze(vals))
        object.__setattr__(self, "value_at_zero", complex(self.value_at_zero))

    def norm(self) -> float:
        return q_norm(self)

    def __add__(self, other):
        _check_same_lattice(self, other)
        return LatticeFunction(self.lattice, self.values + other.values,
                               self.value_at_zero + other.value_at_zero)

    def __sub__(self, other):
        _check_same_lattice(self, other)
        return LatticeFunction(self.lattice, self.values - other.values,
                               self.value_at_zero - other.value_at_zero)

    def __mul__(self, c):
        return LatticeFunction(self.lattice, self.values * c, self.value_at_zero * c)

    __rmul__ = __mul__


def _check_same_lattice(phi: LatticeFunction, psi: LatticeFunction):
    if phi.lattice is not psi.lattice and not phi.lattice.compatible(psi.lattice):
        raise ValueError("lattice mismatch")


def sample(f, lattice: QLattice) -> LatticeFunction:
    """Evaluate ``f`` at every lattice point and at 0.

    Non-finite samples are rejected (the function must belong to the space).
    """
    vals = np.array([complex(f(xi)) for xi in lattice.x])
    return LatticeFunction(lattice, vals, complex(f(0.0)))


def inner_product(phi: LatticeFunction, psi: LatticeFunction) -> complex:
    """q-inner product, conjugate-linear in the first slot.

    ``sum_m w_m conj(phi_m) psi_m`` over all points; even-m weights are 0,
    so only odd exponents contribute, matching the Jackson-integral sampling.
    """
    _check_same_lattice(phi, psi)
    return complex(np.sum(phi.lattice.w * np.conj(phi.values) * psi.values))


def q_norm(psi: LatticeFunction) -> float:
    n2 = inner_product(psi, psi).real
    return math.sqrt(max(n2, 0.0))


def basis_function(n: int, lattice: QLattice, sign: str = "+") -> LatticeFunction:
    """Point-supported orthonormal basis element at ``x = sign * a q^{2n+1}``.

    Value ``1 / sqrt(|x| (q^-1 - q))`` at that single point and 0 elsewhere;
    this is exactly ``w^{-1/2}`` there, so the family is orthonormal in the
    q-inner product.  ``n`` may be negative (exponent ``2n+1`` just has to
    lie within the lattice range).
    """
    if sign in ("+", 1, +1):
        s = 1
    elif sign in ("-", -1):
        s = -1
    else:
        raise ValueError(f"sign must be '+' or '-', got {sign!r}")
    expo = 2 * n + 1
    if expo < lattice.m_min or expo > lattice.m_max:
        raise ValueError(
            f"basis exponent 2n+1 = {expo} outside [{lattice.m_min}, {lattice.m_max}]")
    idx = lattice.index_of(s, expo)
    vals = np.zeros(lattice.size, dtype=complex)
    vals[idx] = 1.0 / math.sqrt(lattice.w[idx])
    return LatticeFunction(lattice, vals, 0j)


def apply_position(psi: LatticeFunction) -> LatticeFunction:
    """Multiply by the coordinate: ``(x psi)(x_m) = x_m psi_m``."""
    return LatticeFunction(psi.lattice, psi.lattice.x * psi.values, 0j)


def apply_momentum(psi: LatticeFunction, hbar: float = 1.0) -> LatticeFunction:
    """Momentum ``-i hbar D`` with D the two-sided Jackson derivative.

    At each point the stencil needs the same-branch neighbors one exponent
    up and down.  Past the outer end the neighbor is 0; past the inner end
    it is the linear continuation toward the origin anchored at
    ``value_at_zero``:  ``psi(q x) ~ q psi(x) + (1 - q) psi(0)``.
    The output's own origin datum is set to 0 (no derivative datum exists).
    """
    lat = psi.lattice
    qc = lat.q
    vals = psi.values
    out = np.empty(lat.size, dtype=complex)
    denom = (qc - 1.0 / qc) * lat.x
    for i in range(lat.size):
        s, m = int(lat.sign[i]), int(lat.m[i])
        if m + 1 <= lat.m_max:
            up = vals[lat.index_of(s, m + 1)]
        else:
            up = qc * vals[i] + (1.0 - qc) * psi.value_at_zero
        if m - 1 >= lat.m_min:
            down = vals[lat.index_of(s, m - 1)]
        else:
            down = 0j
        out[i] = (up - down) / denom[i]
    return LatticeFunction(lat, -1j * hbar * out, 0j)


@dataclass(frozen=True, eq=False)
class OperatorMatrix:
    """Dense matrix acting on lattice sample vectors.

    ``support`` is ``"all"`` (full lattice) or ``"odd"`` (odd-exponent
    sublattice, the q-inner product's carrier, in coordinate-ascending
    order).  ``symmetrized`` marks matrices already conjugated by the
    square-root weight; those act on weighted coordinates, not raw samples.
    """

    lattice: QLattice
    matrix: np.ndarray
    support: str = "all"
    symmetrized: bool = False

    def __post_init__(self):
        if self.support not in ("all", "odd"):
            raise ValueError(f"support must be 'all' or 'odd', got {self.support!r}")
        n = self.lattice.size if self.support == "all" else len(self.lattice.odd_indices)
        mat = np.asarray(self.matrix, dtype=complex)
        if mat.shape != (n, n):
            raise ValueError(f"matrix shape {mat.shape}, expected ({n}, {n})")
        object.__setattr__(self, "matrix", _freeze(mat))

    def apply(self, psi: LatticeFunction) -> LatticeFunction:
        """Apply to a lattice function; odd-support operators leave even samples 0."""
        if psi.lattice is not self.lattice and not psi.lattice.compatible(self.lattice):
            raise ValueError("lattice mismatch")
        if self.symmetrized:
            raise ValueError(
                "symmetrized operators act on weighted coordinates; "
                "unsymmetrize first to apply to lattice functions")
        if self.support == "all":
            return LatticeFunction(psi.lattice, self.matrix @ psi.values, 0j)
        idx = self.lattice.odd_indices
        out = np.zeros(psi.lattice.size, dtype=complex)
        out[idx] = self.matrix @ psi.values[idx]
        return LatticeFunction(psi.lattice, out, 0j)


def position_matrix(lattice: QLattice) -> OperatorMatrix:
    """Diagonal coordinate-multiplication operator on the full lattice."""
    return OperatorMatrix(lattice, np.diag(lattice.x.astype(complex)), "all")


def derivative_matrix(lattice: QLattice) -> OperatorMatrix:
    """The Jackson derivative as a full-lattice matrix.

    Same stencil and boundary policy as :func:`apply_momentum`, except the
    inner-end fill is the linear continuation through the two innermost
    same-branch samples, ``psi(q x) ~ (1 + q) psi(x) - q psi(x / q)``
    (a matrix has no origin datum to anchor to; the two rules agree on
    linear functions).  This operator is basic-anti-Hermitian; multiply by
    ``-i hbar`` for the momentum.
    """
    qc = lattice.q
    n = lattice.size
    mat = np.zeros((n, n), dtype=complex)
    for i in range(n):
        s, m = int(lattice.sign[i]), int(lattice.m[i])
        c = 1.0 / ((qc - 1.0 / qc) * lattice.x[i])
        if m + 1 <= lattice.m_max:
            mat[i, lattice.index_of(s, m + 1)] += c
        else:
            mat[i, i] += c * (1.0 + qc)
            mat[i, lattice.index_of(s, m - 1)] += -c * qc
        if m - 1 >= lattice.m_min:
            mat[i, lattice.index_of(s, m - 1)] += -c
    return OperatorMatrix(lattice, mat, "all")


def momentum_matrix(lattice: QLattice, hbar: float = 1.0) -> OperatorMatrix:
    """Momentum ``-i hbar D`` as a full-lattice matrix."""
    d = derivative_matrix(lattice)
    return OperatorMatrix(lattice, -1j * hbar * d.matrix, "all")


def restrict_to_odd(A: OperatorMatrix) -> OperatorMatrix:
    """Restrict a full-lattice operator to the odd sublattice by index selection.

    Exact for operators that genuinely map odd samples to odd samples
    (parity-even stencils such as a squared derivative); boundary rows whose
    closure leaks onto even columns lose that leakage.
    """
    if A.support != "all":
        raise ValueError("restrict_to_odd expects a full-lattice operator")
    idx = A.lattice.odd_indices
    return OperatorMatrix(A.lattice, A.matrix[np.ix_(idx, idx)], "odd", A.symmetrized)


def decaying_test_function(lattice: QLattice, rng,
                           parity: str | None = None) -> LatticeFunction:
    """Random member of the Hermiticity test family.

    ``psi(x) = x^2 (c0 + c1 x + c2 x^2 + c3 x^3) exp(-x^2)`` with complex
    standard-normal coefficients: the gaussian kills the outer lattice end,
    the ``x^2`` prefactor kills the inner end, so boundary-policy leftovers
    in difference operators are exponentially suppressed.

    ``parity="even"`` keeps only the even-degree coefficients (c1 = c3 = 0)
    so psi(-x) = psi(x); ``parity="odd"`` keeps only the odd-degree ones so
    psi(-x) = -psi(x).  Default draws all four (mixed parity).
    """
    c = rng.standard_normal(4) + 1j * rng.standard_normal(4)
    if parity == "even":
        c[1] = c[3] = 0.0
    elif parity == "odd":
        c[0] = c[2] = 0.0
    elif parity is not None:
        raise ValueError("parity must be None, 'even' or 'odd'")
    x = lattice.x
    poly = ((c[3] * x + c[2]) * x + c[1]) * x + c[0]
    vals = x * x * poly * np.exp(-(x * x))
    return LatticeFunction(lattice, vals, 0j)


def hermiticity_residual(A: OperatorMatrix, trials: int = 20, seed: int = 0,
                         parity: str | None = None) -> float:
    """Max basic-Hermiticity defect of ``A`` over random decaying pairs.

    For each trial draws a pair (phi, psi) from the decaying family and
    measures ``|<phi, A psi> - <A phi, psi>| / (||phi|| ||psi||)``.  The
    ``parity`` choice is forwarded to :func:`decaying_test_function`.

    For the symmetric-derivative momentum this splits cleanly by parity.
    On pairs of equal parity (both even or both odd) the two branch sums
    cancel term for term and the defect is pure rounding at any q.  Mixed
    pairs pick up an alternating sum over the interleaved half-lattices
    that no lattice enlargement removes; it dies off only as q -> 1
    (roughly 7e-1 at q = 0.5, 9e-2 at q = 0.8, 7e-7 at q = 0.9, below
    rounding for q >= 0.95).  The bare derivative, being anti-Hermitian,
    shows an O(1) defect for every family, which is what the control
    check relies on.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(trials):
        phi = decaying_test_function(A.lattice, rng, parity)
        psi = decaying_test_function(A.lattice, rng, parity)
        lhs = inner_product(phi, A.apply(psi))
        rhs = inner_product(A.apply(phi), psi)
        denom = q_norm(phi) * q_norm(psi)
        if denom == 0.0:
            continue
        worst = max(worst, abs(lhs - rhs) / denom)
    return worst


def symmetrize(A: OperatorMatrix) -> OperatorMatrix:
    """Weight conjugation ``W^{1/2} A W^{-1/2}`` on the odd sublattice.

    Turns basic-Hermiticity into ordinary matrix symmetry, so standard
    symmetric eigensolvers apply.  Requires odd support: even-exponent
    points have weight 0 and cannot be conjugated.
    """
    if A.support != "odd":
        raise ValueError(
            "symmetrize requires odd-sublattice support (even points carry zero weight)")
    if A.symmetrized:
        raise ValueError("operator is already symmetrized")
    w = A.lattice.w[A.lattice.odd_indices]
    root = np.sqrt(w)
    mat = (root[:, None] * A.matrix) / root[None, :]
    return OperatorMatrix(A.lattice, mat, "odd", True)


def unsymmetrize(A: OperatorMatrix) -> OperatorMatrix:
    """Inverse of :func:`symmetrize`."""
    if A.support != "odd" or not A.symmetrized:
        raise ValueError("unsymmetrize expects a symmetrized odd-sublattice operator")
    w = A.lattice.w[A.lattice.odd_indices]
    root = np.sqrt(w)
    mat = (A.matrix / root[:, None]) * root[None, :]
    return OperatorMatrix(A.lattice, mat, "odd", False)


def to_csv(psi: LatticeFunction) -> str:
    """Serialize samples as CSV: schema comment, header, one row per point.

    Floats are written with 17 significant digits.  The origin datum is not
    a lattice point and is carried by the JSON form only.
    """
    buf = io.StringIO()
    buf.write(f"# schema_version={CSV_SCHEMA_VERSION}\n")
    buf.write("sign,m,x,weight,re,im\n")
    lat = psi.lattice
    for i in range(lat.size):
        re, im = psi.values[i].real, psi.values[i].imag
        buf.write("%d,%d,%.17g,%.17g,%.17g,%.17g\n" % (
            lat.sign[i], lat.m[i], lat.x[i], lat.w[i],
            re + 0.0, im + 0.0))
    return buf.getvalue()


def from_csv(text: str, lattice: QLattice, value_at_zero: complex = 0j) -> LatticeFunction:
    """Rebuild a LatticeFunction from :func:`to_csv` output on a known lattice."""
    vals = np.zeros(lattice.size, dtype=complex)
    seen = 0
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#") or line.startswith("sign,"):
            continue
        parts = line.split(",")
        if len(parts) != 6:
            raise ValueError(f"malformed CSV row: {line!r}")
        s, m = int(parts[0]), int(parts[1])
        vals[lattice.index_of(s, m)] = float(parts[4]) + 1j * float(parts[5])
        seen += 1
    if seen != lattice.size:
        raise ValueError(f"CSV holds {seen} points, lattice has {lattice.size}")
    return LatticeFunction(lattice, vals, value_at_zero)


def to_json(psi: LatticeFunction) -> str:
    """Serialize the function, lattice parameters included, as JSON text."""
    lat = psi.lattice
    doc = {
        "schema_version": JSON_SCHEMA_VERSION,
        "q": lat.q,
        "m_min": lat.m_min,
        "m_max": lat.m_max,
        "a": lat.a,
        "value_at_zero": [psi.value_at_zero.real + 0.0, psi.value_at_zero.imag + 0.0],
        "points": [
            {
                "sign": int(lat.sign[i]),
                "m": int(lat.m[i]),
                "x": lat.x[i],
                "weight": lat.w[i],
                "re": psi.values[i].real + 0.0,
                "im": psi.values[i].imag + 0.0,
            }
            for i in range(lat.size)
        ],
    }
    return json.dumps(doc, indent=1)


def from_json(text: str) -> LatticeFunction:
    """Rebuild a LatticeFunction (lattice included) from :func:`to_json` output."""
    doc = json.loads(text)
    if doc.get("schema_version") != JSON_SCHEMA_VERSION:
        raise ValueError(f"unsupported schema_version {doc.get('schema_version')!r}")
    lattice = build_lattice(doc["q"], doc["m_min"], doc["m_max"], doc["a"])
    vals = np.zeros(lattice.size, dtype=complex)
    for p in doc["points"]:
        vals[lattice.index_of(int(p["sign"]), int(p["m"]))] = p["re"] + 1j * p["im"]
    v0 = doc["value_at_zero"]
    return LatticeFunction(lattice, vals, v0[0] + 1j * v0[1])
