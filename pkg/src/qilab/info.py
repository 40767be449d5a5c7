"""Entropy and mutual-information calculators.

All logarithms are base 2, so entropies are in bits and qubit registers
of m qubits carry at most m bits. Eigenvalues below 1e-12 are treated as
exact zeros inside entropy sums to keep -x log x noise out.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .errors import NormalizationError, SizeError
from .states import DensityMatrix, make_density, mixture

_ZERO_CUT = 1e-12


def shannon_entropy(p) -> float:
    """Shannon entropy of a probability vector, in bits."""
    arr = np.asarray(p, dtype=np.float64).reshape(-1)
    if np.any(arr < -1e-9):
        raise NormalizationError("probabilities must be non-negative")
    total = float(np.sum(arr))
    if abs(total - 1.0) > 1e-9:
        raise NormalizationError(f"probabilities sum to {total}, expected 1")
    arr = np.clip(arr, 0.0, None)
    mask = arr > _ZERO_CUT
    return float(-np.sum(arr[mask] * np.log2(arr[mask])))


def binary_entropy(p: float) -> float:
    if not -1e-12 <= p <= 1.0 + 1e-12:
        raise ValueError(f"p must lie in [0, 1], got {p}")
    p = min(max(p, 0.0), 1.0)
    return shannon_entropy([p, 1.0 - p])


def binary_entropy_gap(delta: float) -> float:
    """1 - H(1/2 + delta); at least delta^2 on [-1/2, 1/2]."""
    if not -0.5 - 1e-12 <= delta <= 0.5 + 1e-12:
        raise ValueError(f"delta must lie in [-1/2, 1/2], got {delta}")
    delta = min(max(delta, -0.5), 0.5)
    return 1.0 - binary_entropy(0.5 + delta)


def fano_bound(delta: float) -> float:
    """Lower bound 1 - H(1/2 + delta) on I(X:Y) for a binary predictor.

    Applies when X is a uniform bit and Y predicts it with success
    probability at least 1/2 + delta.
    """
    if not 0.0 <= delta <= 0.5 + 1e-12:
        raise ValueError(f"delta must lie in [0, 1/2], got {delta}")
    return binary_entropy_gap(min(delta, 0.5))


def von_neumann_entropy(rho: DensityMatrix) -> float:
    """Shannon entropy of the eigenvalue spectrum, in bits."""
    vals = np.clip(rho.eigenvalues(), 0.0, 1.0)
    mask = vals > _ZERO_CUT
    return float(-np.sum(vals[mask] * np.log2(vals[mask])))


@dataclass(frozen=True)
class CQEnsemble:
    """Classical-to-quantum encoding: a prior over labels, one state each."""

    labels: tuple[str, ...]
    priors: np.ndarray
    states: tuple[DensityMatrix, ...]

    @property
    def dim(self) -> int:
        return self.states[0].dim

    def average_state(self) -> DensityMatrix:
        return mixture(self.priors, self.states)


def make_ensemble(labels, priors, states) -> CQEnsemble:
    labels = tuple(str(x) for x in labels)
    priors = np.asarray(priors, dtype=np.float64)
    states = tuple(states)
    if not (len(labels) == len(priors) == len(states)):
        raise SizeError("labels, priors and states must have equal length")
    if len(set(labels)) != len(labels):
        raise ValueError("labels must be distinct")
    if np.any(priors < -1e-12):
        raise NormalizationError("priors must be non-negative")
    if abs(float(np.sum(priors)) - 1.0) > 1e-9:
        raise NormalizationError("priors must sum to 1")
    dims = {s.dim for s in states}
    if len(dims) != 1:
        raise SizeError("all encoded states must share one dimension")
    frozen = np.array(priors, copy=True)
    frozen.setflags(write=False)
    return CQEnsemble(labels, frozen, states)


def uniform_cube_ensemble(states) -> CQEnsemble:
    """Uniform ensemble labeled by all bit strings of length m."""
    n = len(states)
    m = n.bit_length() - 1
    if 2**m != n:
        raise SizeError(f"need a power-of-two state count, got {n}")
    labels = [format(x, f"0{m}b") if m > 0 else "" for x in range(n)]
    return make_ensemble(labels, np.full(n, 1.0 / n), states)


def conditional_entropy(e: CQEnsemble) -> float:
    """Average encoded-state entropy sum_x p_x S(sigma_x)."""
    return float(
        sum(p * von_neumann_entropy(s) for p, s in zip(e.priors, e.states))
    )


def holevo_information(e: CQEnsemble) -> float:
    """S(mean state) - sum_x p_x S(sigma_x); bounds extractable bits."""
    chi = von_neumann_entropy(e.average_state()) - conditional_entropy(e)
    return float(max(chi, 0.0))


def validate_projective(projectors, dim: int, tol: float = 1e-8) -> None:
    """Check a list of orthogonal projectors that sums to the identity."""
    acc = np.zeros((dim, dim), dtype=np.complex128)
    for p in projectors:
        p = linalg.as_matrix(p)
        if p.shape != (dim, dim):
            raise SizeError(f"projector shape {p.shape} does not match dim {dim}")
        if linalg.frobenius(p - linalg.dagger(p)) > tol:
            raise ValueError("projector is not Hermitian")
        if linalg.frobenius(p @ p - p) > tol:
            raise ValueError("projector is not idempotent")
        acc += p
    if linalg.frobenius(acc - np.eye(dim)) > tol:
        raise ValueError("projectors do not sum to the identity")


def classical_mutual_information(joint: np.ndarray) -> float:
    """I(X:Y) of a 2-d joint probability table."""
    joint = np.asarray(joint, dtype=np.float64)
    px = joint.sum(axis=1)
    py = joint.sum(axis=0)
    return (
        shannon_entropy(px)
        + shannon_entropy(py)
        - shannon_entropy(joint.reshape(-1))
    )


def measured_mutual_info(e: CQEnsemble, measurement) -> float:
    """Classical I(X:Y) between labels and measurement outcomes.

    ``measurement`` is either a TwoOutcomeMeasurement or a list of
    orthogonal projectors summing to the identity. Never exceeds the
    Holevo information of the ensemble.
    """
    if hasattr(measurement, "projector_pos"):
        projectors = [measurement.projector_pos, measurement.projector_neg]
    else:
        projectors = list(measurement)
    validate_projective(projectors, e.dim)
    joint = np.zeros((len(e.labels), len(projectors)))
    for i, (p, s) in enumerate(zip(e.priors, e.states)):
        for k, proj in enumerate(projectors):
            joint[i, k] = p * max(np.trace(proj @ s.mat).real, 0.0)
    joint = joint / joint.sum()
    return classical_mutual_information(joint)


def bipartite_mutual_info(rho_ab: DensityMatrix, dim_a: int, dim_b: int) -> float:
    """S(A) + S(B) - S(AB) from the reduced states."""
    if dim_a * dim_b != rho_ab.dim:
        raise SizeError(
            f"dims ({dim_a}, {dim_b}) do not multiply to {rho_ab.dim}"
        )
    rho_a = make_density_loose(linalg.partial_trace(rho_ab.mat, dim_a, dim_b, "H"))
    rho_b = make_density_loose(linalg.partial_trace(rho_ab.mat, dim_a, dim_b, "K"))
    return (
        von_neumann_entropy(rho_a)
        + von_neumann_entropy(rho_b)
        - von_neumann_entropy(rho_ab)
    )


def make_density_loose(mat) -> DensityMatrix:
    """Wrap a matrix that is PSD up to partial-trace rounding noise."""
    return make_density(mat, tol=1e-8)
