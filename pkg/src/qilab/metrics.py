"""Distance and fidelity functionals on density matrices.

Fidelity follows the squared-overlap convention F = || sqrt(r1) sqrt(r2) ||_t^2,
so F(r, r) = 1 and for a pure r1 = |p><p| it equals <p| r2 |p>.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .errors import SizeError
from .linalg import DEFAULT_TOL, dagger
from .states import BipartitePureState, DensityMatrix


@dataclass(frozen=True)
class TwoOutcomeMeasurement:
    """Pair of complementary orthogonal projectors."""

    projector_pos: np.ndarray
    projector_neg: np.ndarray

    def validate(self, tol: float = 1e-8) -> None:
        for p in (self.projector_pos, self.projector_neg):
            if linalg.frobenius(p - dagger(p)) > tol:
                raise ValueError("projector is not Hermitian")
            if linalg.frobenius(p @ p - p) > tol:
                raise ValueError("projector is not idempotent")
        dim = self.projector_pos.shape[0]
        if linalg.frobenius(self.projector_pos + self.projector_neg - np.eye(dim)) > tol:
            raise ValueError("projectors do not sum to the identity")
        if linalg.frobenius(self.projector_pos @ self.projector_neg) > tol:
            raise ValueError("projectors are not mutually orthogonal")


def trace_norm(a) -> float:
    """Sum of singular values."""
    return float(np.sum(linalg.singular_values(a)))


def _check_dims(r1: DensityMatrix, r2: DensityMatrix) -> None:
    if r1.dim != r2.dim:
        raise SizeError(f"dimension mismatch: {r1.dim} vs {r2.dim}")


def trace_distance(r1: DensityMatrix, r2: DensityMatrix) -> float:
    """|| r1 - r2 ||_t, in [0, 2]."""
    _check_dims(r1, r2)
    return trace_norm(r1.mat - r2.mat)


def _as_vector(phi) -> np.ndarray:
    if isinstance(phi, BipartitePureState):
        return phi.vec
    return np.asarray(phi, dtype=np.complex128).reshape(-1)


def pure_trace_distance(phi1, phi2) -> float:
    """Trace distance between two pure states: 2 sqrt(1 - |<p1|p2>|^2)."""
    v1 = _as_vector(phi1)
    v2 = _as_vector(phi2)
    if v1.shape != v2.shape:
        raise SizeError("pure states must have equal dimension")
    overlap_sq = abs(np.vdot(v1, v2)) ** 2
    return 2.0 * float(np.sqrt(max(1.0 - overlap_sq, 0.0)))


def _sqrt_factor(rho: DensityMatrix, tol: float) -> np.ndarray:
    # Columns V_i sqrt(l_i) with noise-level eigenvalues dropped: keeping
    # them would inject sqrt(eps)-sized spurious directions into the
    # product below.
    vals, vecs = linalg.hermitian_eig(rho.mat, tol)
    keep = vals > 1e-14
    return vecs[:, keep] * np.sqrt(vals[keep])


def fidelity(r1: DensityMatrix, r2: DensityMatrix, tol: float = DEFAULT_TOL) -> float:
    """Squared-overlap fidelity, clamped to [0, 1].

    Equals || sqrt(r1) sqrt(r2) ||_t^2; evaluated on the spectral factors
    A_i = V_i sqrt(L_i), whose cross matrix A_1^dag A_2 has exactly the
    singular values of sqrt(r1) sqrt(r2).
    """
    _check_dims(r1, r2)
    a1 = _sqrt_factor(r1, tol)
    a2 = _sqrt_factor(r2, tol)
    f = trace_norm(dagger(a1) @ a2) ** 2
    return float(min(max(f, 0.0), 1.0))


def optimal_measurement(
    r1: DensityMatrix, r2: DensityMatrix, tol: float = DEFAULT_TOL
) -> tuple[TwoOutcomeMeasurement, float]:
    """Projective measurement onto the eigenspaces of r1 - r2.

    The achieved l1 distance |Tr P+ (r1-r2)| + |Tr P- (r1-r2)| equals the
    trace distance, which is the best any measurement can do. Eigenvalues
    in [-tol, tol] go to the positive projector; the achieved value does
    not depend on that choice.
    """
    _check_dims(r1, r2)
    diff = r1.mat - r2.mat
    vals, vecs = linalg.hermitian_eig(diff, tol=1e-8)
    pos_cols = vecs[:, vals >= -tol]
    p_pos = pos_cols @ dagger(pos_cols)
    p_neg = np.eye(r1.dim) - p_pos
    meas = TwoOutcomeMeasurement(p_pos, p_neg)
    achieved = abs(np.trace(p_pos @ diff).real) + abs(np.trace(p_neg @ diff).real)
    return meas, float(achieved)


def bayes_success(r1: DensityMatrix, r2: DensityMatrix) -> float:
    """Success probability 1/2 + ||r1 - r2||_t / 4 of the Bayes strategy.

    This is the best chance of guessing which of two equiprobable states
    was handed over, using the optimal measurement plus the majority rule.
    """
    return 0.5 + trace_distance(r1, r2) / 4.0


def fidelity_distance_bounds(
    r1: DensityMatrix, r2: DensityMatrix
) -> tuple[float, float]:
    """Slack of the two-sided bound 1 - sqrt(F) <= t/2 <= sqrt(1 - F).

    Returns (lower_slack, upper_slack) where t is the trace distance;
    both are non-negative up to numerics for valid density matrices.
    """
    _check_dims(r1, r2)
    f = fidelity(r1, r2)
    half_dist = trace_distance(r1, r2) / 2.0
    lower_slack = half_dist - (1.0 - np.sqrt(f))
    upper_slack = np.sqrt(max(1.0 - f, 0.0)) - half_dist
    return float(lower_slack), float(upper_slack)
