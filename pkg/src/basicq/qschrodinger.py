"""Deformed Schrödinger solver on the two-sided q-lattice.

The Hamiltonian  H = -(hbar^2 / 2 mass) D^2 + V(x)  acts on the odd-exponent
sublattice (the carrier of the q-inner product): the two-step Jackson
stencil

    D^2 psi(x) = [psi(q^2 x)/q - (q + 1/q) psi(x) + q psi(x/q^2)] / ((q - 1/q) x)^2

couples a point only to its same-branch neighbors two exponents away, so in
coordinate-ascending odd ordering H is exactly tridiagonal.

Boundary closure.  Past the outer end the missing sample is 0 (decay at
infinity).  Past the inner end, ``psi(q^2 x)`` for the innermost odd point
of each branch is filled by linear interpolation across the origin between
the two innermost odd points ``+-x0``:

    psi(q^2 x0) ~ [(1 + q^2) psi(x0) + (1 - q^2) psi(-x0)] / 2 .

This closure is the one choice that is simultaneously (i) exact for
constant and linear functions, (ii) symmetric under the integration
weights, so the symmetrized matrix stays exactly tridiagonal-symmetric and
the spectrum exactly real, and (iii) coupling the two branches at the
origin, so the classical limit recovers both parity sectors instead of a
doubled even spectrum.

Weight conjugation W^{1/2} H W^{-1/2} turns q-Hermiticity into real
symmetric tridiagonal form; eigenvectors mapped back through W^{-1/2} are
automatically q-orthonormal.  Time evolution is purely spectral, hence
exactly unitary in the q-metric.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .errors import ConvergenceError
from .l2q import (
    LatticeFunction,
    OperatorMatrix,
    QLattice,
    inner_product,
    q_norm,
    sample,
)
from .qfunctions import q_exp

__all__ = [
    "Hamiltonian",
    "SpectrumResult",
    "WaveState",
    "build_hamiltonian",
    "stationary_states",
    "evolve",
    "expectation",
    "fluctuation",
    "expand",
    "synthesize",
    "free_particle_wave",
]

DEGENERACY_GAP = 1e-10


@dataclass(eq=False)
class SpectrumResult:
    """Ascending real eigenvalues and q-orthonormal eigenfunctions."""

    eigenvalues: np.ndarray
    eigenfunctions: list


@dataclass(eq=False)
class WaveState:
    """A lattice wavefunction at a point in time."""

    psi: LatticeFunction
    t: float = 0.0


@dataclass(eq=False)
class Hamiltonian:
    """Tridiagonal realization of -(hbar^2/2m) D^2 + V on the odd sublattice.

    ``lo``/``di``/``up`` are the raw tridiagonal bands in coordinate-
    ascending odd ordering; ``sym_d``/``sym_e`` the weight-conjugated
    symmetric bands fed to the eigensolver.  The dense ``matrix`` view and
    the full spectrum are built on first use (the bands alone serve large
    classical-limit lattices).
    """

    lattice: QLattice
    potential: object
    mass: float
    hbar: float
    q: float
    lo: np.ndarray = field(repr=False)
    di: np.ndarray = field(repr=False)
    up: np.ndarray = field(repr=False)
    sym_d: np.ndarray = field(repr=False)
    sym_e: np.ndarray = field(repr=False)
    potential_text: str | None = None
    _matrix: OperatorMatrix | None = field(default=None, repr=False)
    _spectrum: SpectrumResult | None = field(default=None, repr=False)

    @property
    def n_odd(self) -> int:
        return len(self.di)

    @property
    def matrix(self) -> OperatorMatrix:
        """Dense odd-sublattice OperatorMatrix (materialized lazily)."""
        if self._matrix is None:
            n = self.n_odd
            mat = np.zeros((n, n), dtype=complex)
            mat[np.arange(n), np.arange(n)] = self.di
            mat[np.arange(n - 1), np.arange(1, n)] = self.up
            mat[np.arange(1, n), np.arange(n - 1)] = self.lo
            self._matrix = OperatorMatrix(self.lattice, mat, "odd")
        return self._matrix

    def apply(self, psi: LatticeFunction) -> LatticeFunction:
        """Apply H through the bands; even-exponent output samples are 0."""
        if psi.lattice is not self.lattice and not psi.lattice.compatible(self.lattice):
            raise ValueError("lattice mismatch")
        idx = self.lattice.odd_indices
        v = psi.values[idx]
        out_odd = self.di * v
        out_odd[:-1] += self.up * v[1:]
        out_odd[1:] += self.lo * v[:-1]
        out = np.zeros(psi.lattice.size, dtype=complex)
        out[idx] = out_odd
        return LatticeFunction(psi.lattice, out, 0j)

    def full_spectrum(self) -> SpectrumResult:
        """All eigenpairs, computed once and cached."""
        if self._spectrum is None:
            self._spectrum = stationary_states(self, self.n_odd)
        return self._spectrum


def build_hamiltonian(V, mass: float, hbar: float, lattice: QLattice,
                      potential_text: str | None = None) -> Hamiltonian:
    """Assemble the Hamiltonian for potential ``V`` (a callable of x).

    ``V`` must be real on the lattice (a complex value breaks Hermiticity
    and is rejected), ``mass`` and ``hbar`` positive.

    Examples
    --------
    >>> from .l2q import default_lattice
    >>> H = build_hamiltonian(lambda x: x * x, 1.0, 1.0, default_lattice())
    >>> H.n_odd
    76
    """
    if not (mass > 0):
        raise ValueError(f"mass must be > 0, got {mass!r}")
    if not (hbar > 0):
        raise ValueError(f"hbar must be > 0, got {hbar!r}")
    qc = lattice.q
    idx = lattice.odd_indices
    n = len(idx)
    x = lattice.x[idx]
    w = lattice.w[idx]
    sgn = lattice.sign[idx]
    ms = lattice.m[idx]

    v = np.empty(n)
    for j, xi in enumerate(x):
        val = complex(V(xi))
        if val.imag != 0.0:
            raise ValueError(f"complex potential rejected: V({xi!r}) = {val!r}")
        if not math.isfinite(val.real):
            raise ValueError(f"non-finite potential value at x = {xi!r}")
        v[j] = val.real

    kin = -hbar * hbar / (2.0 * mass)
    lo = np.zeros(n - 1)
    up = np.zeros(n - 1)
    di = np.zeros(n)
    # Walking j in odd ordering: same-branch neighbor two exponents outward
    # is j-1 on the negative branch/j+1 mirrored, handled uniformly below.
    for j in range(n):
        s, m = int(sgn[j]), int(ms[j])
        K = 1.0 / ((qc - 1.0 / qc) ** 2 * x[j] * x[j])
        di[j] += kin * (-(qc + 1.0 / qc)) * K + v[j]
        # Neighbor toward zero (m + 2), or the inner closure.
        if m + 2 <= lattice.m_max:
            jn = j + 1 if s < 0 else j - 1
            _add_band(lo, up, j, jn, kin * K / qc)
        else:
            di[j] += kin * K / qc * (1.0 + qc * qc) / 2.0
            jm = j + 1 if s < 0 else j - 1  # mirror point across the origin
            _add_band(lo, up, j, jm, kin * K / qc * (1.0 - qc * qc) / 2.0)
        # Neighbor away from zero (m - 2), or outer zero-fill.
        if m - 2 >= lattice.m_min:
            jn = j - 1 if s < 0 else j + 1
            _add_band(lo, up, j, jn, kin * K * qc)

    root = np.sqrt(w)
    sym_d = di.copy()
    sym_e = 0.5 * (up * root[:-1] / root[1:] + lo * root[1:] / root[:-1])
    return Hamiltonian(lattice=lattice, potential=V, mass=mass, hbar=hbar,
                       q=qc, lo=lo, di=di, up=up, sym_d=sym_d, sym_e=sym_e,
                       potential_text=potential_text)


def _add_band(lo, up, j, jn, coeff):
    if jn == j + 1:
        up[j] += coeff
    elif jn == j - 1:
        lo[j - 1] += coeff
    else:
        raise AssertionError("stencil neighbor not adjacent in odd ordering")


def _first_significant_positive(vec: np.ndarray) -> np.ndarray:
    thresh = 1e-8 * np.max(np.abs(vec))
    for comp in vec:
        if abs(comp) > thresh:
            return vec if comp.real > 0 else -vec
    return vec


def stationary_states(H: Hamiltonian, k: int) -> SpectrumResult:
    """Lowest ``k`` eigenpairs of the symmetrized tridiagonal problem.

    Eigenvalues come out exactly real (real symmetric solver); eigenvectors
    are mapped back through the inverse weight conjugation, which makes
    them q-orthonormal with no extra normalization.  Within near-degenerate
    clusters (gap below 1e-10) the block is re-orthogonalized explicitly.
    Each eigenfunction's first significant component is normalized positive.
    """
    n = H.n_odd
    if not isinstance(k, int) or isinstance(k, bool) or k < 0:
        raise ValueError(f"k must be a non-negative integer, got {k!r}")
    if k > n:
        raise ValueError(f"k={k} exceeds odd-sublattice size {n}")
    if k == 0:
        return SpectrumResult(np.empty(0), [])
    try:
        if k == n:
            evals, evecs = eigh_tridiagonal(H.sym_d, H.sym_e)
        else:
            evals, evecs = eigh_tridiagonal(
                H.sym_d, H.sym_e, select="i", select_range=(0, k - 1))
    except Exception as exc:
        raise ConvergenceError(
            "tridiagonal eigensolver failed: %s (n=%d, diag in [%.3e, %.3e], "
            "max |offdiag| = %.3e)" % (
                exc, n, float(np.min(H.sym_d)), float(np.max(H.sym_d)),
                float(np.max(np.abs(H.sym_e))))) from exc

    # Safety net for clustered eigenvalues: re-orthogonalize inside blocks.
    start = 0
    for i in range(1, len(evals) + 1):
        if i == len(evals) or evals[i] - evals[i - 1] >= DEGENERACY_GAP:
            if i - start > 1:
                block, _ = np.linalg.qr(evecs[:, start:i])
                evecs[:, start:i] = block
            start = i

    idx = H.lattice.odd_indices
    root = np.sqrt(H.lattice.w[idx])
    funcs = []
    for j in range(len(evals)):
        vec = _first_significant_positive(evecs[:, j] / root)
        vals = np.zeros(H.lattice.size, dtype=complex)
        vals[idx] = vec
        funcs.append(LatticeFunction(H.lattice, vals, 0j))
    return SpectrumResult(np.asarray(evals, dtype=float), funcs)


def expand(psi: LatticeFunction, spectrum: SpectrumResult) -> np.ndarray:
    """Coefficients ``c_n = <psi_n, psi>`` in the computed eigenbasis."""
    return np.array([inner_product(f, psi) for f in spectrum.eigenfunctions])


def synthesize(coeffs, spectrum: SpectrumResult, lattice: QLattice) -> LatticeFunction:
    """Resum ``sum_n c_n psi_n`` as a lattice function."""
    vals = np.zeros(lattice.size, dtype=complex)
    for c, f in zip(coeffs, spectrum.eigenfunctions):
        vals += c * f.values
    return LatticeFunction(lattice, vals, 0j)


def evolve(state: WaveState, H: Hamiltonian, dt: float, steps: int) -> WaveState:
    """Propagate by ``steps`` steps of size ``dt`` through the full spectrum.

    Each eigencoefficient picks up ``exp(-i E_n dt steps / hbar)``; the
    coefficient magnitudes are untouched, so the q-norm and every spectral
    observable are conserved to rounding.  The state's physical content is
    its odd-sublattice part (the inner product sees nothing else); output
    even-exponent samples are 0.
    """
    if not isinstance(steps, int) or isinstance(steps, bool) or steps < 0:
        raise ValueError(f"steps must be a non-negative integer, got {steps!r}")
    if state.psi.lattice is not H.lattice and not state.psi.lattice.compatible(H.lattice):
        raise ValueError("lattice mismatch")
    if steps == 0:
        return WaveState(state.psi, state.t)
    spec = H.full_spectrum()
    c = expand(state.psi, spec)
    phases = np.exp(-1j * spec.eigenvalues * (dt * steps) / H.hbar)
    psi_t = synthesize(c * phases, spec, H.lattice)
    return WaveState(psi_t, state.t + dt * steps)


def _require_normalized(psi: LatticeFunction):
    nrm = q_norm(psi)
    if abs(nrm - 1.0) > 1e-10:
        raise ValueError(f"state not q-normalized: ||psi||_q = {nrm!r}")


def expectation(A, psi: LatticeFunction) -> complex:
    """Mean value ``<psi, A psi>_q`` for a q-normalized state.

    ``A`` may be an OperatorMatrix or a Hamiltonian; the result is real to
    1e-9 whenever ``A`` meets the Hermiticity contract.
    """
    _require_normalized(psi)
    return inner_product(psi, A.apply(psi))


def fluctuation(A, psi: LatticeFunction) -> float:
    """Variance ``<psi, (A - <A>)^2 psi>_q``; vanishes on eigenstates of A."""
    mean = expectation(A, psi)
    dev = A.apply(psi) - mean * psi
    out = inner_product(psi, A.apply(dev) - mean * dev)
    return out.real


def free_particle_wave(kwav: float, lattice: QLattice,
                       normalization: complex = 1.0) -> LatticeFunction:
    """Plane wave ``N E_q(i k x)`` sampled on the lattice.

    Not q-normalizable (plane waves never are); ``normalization`` is the
    caller's overall factor, default 1.
    """
    qp = lattice.q
    return sample(lambda x: normalization * q_exp(1j * kwav * x, qp).value, lattice)
