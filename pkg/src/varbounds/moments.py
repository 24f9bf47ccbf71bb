"""Expectation values, variances, covariance, and deviation vectors.

All operations accept pure states (vector) and mixed states (density
matrix); the deviation vector is the one pure-only construction.  Results
are plain floats/complex so callers can feed them straight into bound
formulas.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import MixedStateUnsupported, NumericalConsistencyError
from .linalg import Observable, QuantumState, check_dims

__all__ = [
    "MomentSet",
    "anticommutator_expectation",
    "commutator_expectation",
    "covariance",
    "deviation_vector",
    "expectation",
    "moments",
    "variance",
]

IMAG_RESIDUE_TOL = 1e-10
NEGATIVE_VARIANCE_TOL = 1e-12


@dataclass(frozen=True)
class MomentSet:
    """First and second moments of a pair of observables in one state."""

    mean_a: float
    mean_b: float
    var_a: float
    var_b: float
    cov: float
    comm_expect: complex
    anticomm_expect: float

    @property
    def std_a(self) -> float:
        return float(np.sqrt(self.var_a))

    @property
    def std_b(self) -> float:
        return float(np.sqrt(self.var_b))


def _expect_matrix(state: QuantumState, m: np.ndarray) -> complex:
    """<M> for an arbitrary (not necessarily Hermitian) matrix."""
    if state.is_pure:
        return complex(np.vdot(state.vector, m @ state.vector))
    return complex(np.einsum("ij,ji->", state.rho, m))


def _real_expect(state: QuantumState, m: np.ndarray) -> float:
    z = _expect_matrix(state, m)
    if abs(z.imag) > IMAG_RESIDUE_TOL:
        raise NumericalConsistencyError(f"expectation has imaginary residue {z.imag:.3e}")
    return z.real


def clamp_variance(v: float) -> float:
    """Clamp round-off negatives to zero; larger negatives are a bug."""
    if v < -NEGATIVE_VARIANCE_TOL:
        raise NumericalConsistencyError(f"variance {v!r} below -{NEGATIVE_VARIANCE_TOL}")
    return max(v, 0.0)


def expectation(state: QuantumState, a: Observable) -> float:
    """<A> in the given state."""
    check_dims(state, a)
    return _real_expect(state, a.matrix)


def variance(state: QuantumState, a: Observable) -> float:
    """<A^2> - <A>^2, clamped to [0, inf)."""
    check_dims(state, a)
    if state.is_pure:
        av = a.matrix @ state.vector
        second = float(np.real(np.vdot(av, av)))
    else:
        second = _real_expect(state, a.matrix @ a.matrix)
    return clamp_variance(second - expectation(state, a) ** 2)


def covariance(state: QuantumState, a: Observable, b: Observable) -> float:
    """Quantum covariance <{A,B}>/2 - <A><B>."""
    check_dims(state, a, b)
    z = _expect_matrix(state, a.matrix @ b.matrix)
    return z.real - expectation(state, a) * expectation(state, b)


def commutator_expectation(state: QuantumState, a: Observable, b: Observable) -> complex:
    """<[A, B]>; purely imaginary for Hermitian A, B."""
    check_dims(state, a, b)
    z = _expect_matrix(state, a.matrix @ b.matrix)
    # <AB> = z and <BA> = conj(z), so <[A,B]> = 2i Im(z)
    out = 2j * z.imag
    return out


def anticommutator_expectation(state: QuantumState, a: Observable, b: Observable) -> float:
    """<{A, B}>, a real number."""
    check_dims(state, a, b)
    z = _expect_matrix(state, a.matrix @ b.matrix)
    return 2.0 * z.real


def deviation_vector(state: QuantumState, a: Observable) -> np.ndarray:
    """(A - <A>) applied to a pure state; its squared norm is the variance."""
    check_dims(state, a)
    if not state.is_pure:
        raise MixedStateUnsupported("deviation vectors are defined for pure states only")
    psi = state.vector
    return a.matrix @ psi - expectation(state, a) * psi


def moments(state: QuantumState, a: Observable, b: Observable) -> MomentSet:
    """All moments the bound formulas need, computed in one pass."""
    check_dims(state, a, b)
    mean_a = expectation(state, a)
    mean_b = expectation(state, b)
    z = _expect_matrix(state, a.matrix @ b.matrix)
    return MomentSet(
        mean_a=mean_a,
        mean_b=mean_b,
        var_a=variance(state, a),
        var_b=variance(state, b),
        cov=z.real - mean_a * mean_b,
        comm_expect=2j * z.imag,
        anticomm_expect=2.0 * z.real,
    )
