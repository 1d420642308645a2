"""Numerical toolkit for the symmetric q-deformed calculus.

Covers basic numbers and factorials, the Jackson derivative and its
integrals, deformed exponential/trigonometric functions in two series
representations, the deformed oscillator ladder algebra, square-summable
functions on the geometric lattice with the q-inner product, and a
Schrödinger solver (stationary states, spectral time evolution) on that
lattice, plus a small expression language and a CLI.
"""

from __future__ import annotations

from .errors import (
    BasicQError,
    ConvergenceError,
    EvaluationError,
    ExpressionError,
    ParseError,
)
from .qnum import (
    CLASSICAL_EPS,
    QParam,
    as_qparam,
    basic_factorial,
    basic_factorial_via_shifted,
    basic_number,
    q_shifted_factorial,
)
from .qcalculus import (
    DEFAULT_TOL,
    jackson_derivative,
    q_integral_finite,
    q_integral_fullline,
    q_integral_halfline,
)
from .qfunctions import QSpecialValue, q_cos, q_exp, q_sin
from .qfock import LadderTriple, algebra_residuals, build_ladder, fock_state
from .l2q import (
    LatticeFunction,
    OperatorMatrix,
    QLattice,
    build_lattice,
    default_lattice,
    derivative_matrix,
    hermiticity_residual,
    inner_product,
    momentum_matrix,
    position_matrix,
    q_norm,
    sample,
)
from .qschrodinger import (
    Hamiltonian,
    SpectrumResult,
    WaveState,
    build_hamiltonian,
    evolve,
    expand,
    expectation,
    free_particle_wave,
    stationary_states,
    synthesize,
)
from .exprparse import evaluate, parse, pretty
from .verify import run_verify

__version__ = "0.1.0"

__all__ = [
    "BasicQError",
    "ConvergenceError",
    "EvaluationError",
    "ExpressionError",
    "ParseError",
    "CLASSICAL_EPS",
    "QParam",
    "as_qparam",
    "basic_factorial",
    "basic_factorial_via_shifted",
    "basic_number",
    "q_shifted_factorial",
    "DEFAULT_TOL",
    "jackson_derivative",
    "q_integral_finite",
    "q_integral_fullline",
    "q_integral_halfline",
    "QSpecialValue",
    "q_cos",
    "q_exp",
    "q_sin",
    "LadderTriple",
    "algebra_residuals",
    "build_ladder",
    "fock_state",
    "LatticeFunction",
    "OperatorMatrix",
    "QLattice",
    "build_lattice",
    "default_lattice",
    "derivative_matrix",
    "hermiticity_residual",
    "inner_product",
    "momentum_matrix",
    "position_matrix",
    "q_norm",
    "sample",
    "Hamiltonian",
    "SpectrumResult",
    "WaveState",
    "build_hamiltonian",
    "evolve",
    "expand",
    "expectation",
    "free_particle_wave",
    "stationary_states",
    "synthesize",
    "evaluate",
    "parse",
    "pretty",
    "run_verify",
    "__version__",
]
