"""Average-encoding distances and information decompositions.

For a uniform encoding of m-bit strings into mixed states, the pairwise
average distance Delta and the distance-to-mean Delta' obey

    Delta' <= Delta <= 2 sqrt(I(X:Q)),
    I(X:Q) >= 1 - H(1/2 + Delta/4),

where I(X:Q) is the Holevo information of the ensemble. The information
floor comes from pairing the labels: each pair is a one-bit sub-ensemble
whose two states are Delta_i apart in trace norm, so the optimal
distinguishing measurement plus the binary-predictor bound give it at
least 1 - H(1/2 + Delta_i/4) bits, and convexity plus a pairing whose
average distance reaches Delta finish the argument. Note the quarter in
the entropy argument: the single-bit case (m = 1) also satisfies the
stronger floor 1 - H(1/2 + Delta/2), but for m >= 2 that stronger form
is false (random ensembles violate it), so only the m = 1 instance of
it is certified here. The 2 sqrt(I) bound follows from the same pairing
plus the quadratic entropy-gap estimate, so it is unaffected.

The module also provides the pairing search itself and the prefix-wise
decomposition of the ensemble information.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import PairingSearchError, SizeError
from .info import (
    CQEnsemble,
    binary_entropy,
    holevo_information,
    make_ensemble,
)
from .metrics import trace_distance
from .rng import Stream
from .states import DensityMatrix, mixture


@dataclass(frozen=True)
class EncodingStats:
    """Distances and information of a uniform cube ensemble."""

    delta_pairwise: float
    delta_to_mean: float
    info: float
    pairing: tuple[tuple[int, int], ...]


def _cube_m(e: CQEnsemble) -> int:
    n = len(e.labels)
    m = n.bit_length() - 1
    if 2**m != n:
        raise SizeError("ensemble must be labeled by all m-bit strings")
    expected = [format(x, f"0{m}b") if m > 0 else "" for x in range(n)]
    if list(e.labels) != expected:
        raise ValueError("labels must be the m-bit strings in binary order")
    if np.max(np.abs(e.priors - 1.0 / n)) > 1e-9:
        raise ValueError("prior must be uniform over the cube")
    return m


def pairwise_distance_matrix(e: CQEnsemble) -> np.ndarray:
    n = len(e.states)
    d = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1, n):
            d[i, j] = d[j, i] = trace_distance(e.states[i], e.states[j])
    return d


def pairing_average(d: np.ndarray, pairing) -> float:
    """(2 / 2^m) * sum of paired distances."""
    n = d.shape[0]
    return 2.0 / n * float(sum(d[i, j] for i, j in pairing))


def find_pairing(
    e: CQEnsemble, seed: int, max_tries: int = 200, tol: float = 1e-10
) -> tuple[tuple[int, int], ...]:
    """Random perfect pairing whose average distance reaches Delta.

    The expected average over a uniformly random pairing exceeds Delta by
    a factor 2^m / (2^m - 1), so a short keep-best search succeeds; if
    ``max_tries`` runs out the best pairing found is reported in the
    raised error.
    """
    m = _cube_m(e)
    n = 2**m
    d = pairwise_distance_matrix(e)
    delta = float(np.sum(d)) / n**2
    stream = Stream(seed)
    best: tuple[tuple[int, int], ...] = ()
    best_avg = -np.inf
    for _ in range(max_tries):
        order = stream.shuffled(list(range(n)))
        pairing = tuple(
            (min(order[2 * i], order[2 * i + 1]), max(order[2 * i], order[2 * i + 1]))
            for i in range(n // 2)
        )
        avg = pairing_average(d, pairing)
        if avg > best_avg:
            best_avg = avg
            best = pairing
        if best_avg >= delta - tol:
            return best
    raise PairingSearchError(
        f"no pairing reached Delta={delta} in {max_tries} tries "
        f"(best {best_avg})",
        best,
        best_avg,
    )


def enumerate_pairings(n: int):
    """All perfect pairings of range(n); (n-1)!! of them, use n <= 8."""
    yield from _pairings_of(list(range(n)))


def _pairings_of(items):
    if not items:
        yield ()
        return
    first = items[0]
    for k in range(1, len(items)):
        partner = items[k]
        rest = items[1:k] + items[k + 1 :]
        for sub in _pairings_of(rest):
            yield ((first, partner),) + sub


def information_floor(delta: float, m: int = 2) -> float:
    """Provable lower bound on I(X:Q) given the average distance Delta.

    The pairing argument yields 1 - H(1/2 + Delta/4) for every m; a
    single-bit ensemble additionally satisfies the stronger
    1 - H(1/2 + Delta/2).
    """
    if m == 1:
        return 1.0 - binary_entropy(0.5 + min(delta, 1.0) / 2.0)
    return 1.0 - binary_entropy(0.5 + min(delta, 2.0) / 4.0)


def encoding_stats(e: CQEnsemble, seed: int = 7, tol: float = 1e-8) -> EncodingStats:
    """Delta, Delta', Holevo information and a witnessing pairing.

    Internally asserts the chain Delta' <= Delta <= 2 sqrt(info) and
    info >= information_floor(Delta, m); failures raise, as they would
    indicate a numerical defect rather than a property of the input.
    """
    m = _cube_m(e)
    n = 2**m
    d = pairwise_distance_matrix(e)
    delta = float(np.sum(d)) / n**2
    mean = e.average_state()
    delta_mean = float(
        np.mean([trace_distance(mean, s) for s in e.states])
    )
    info = holevo_information(e)
    pairing = find_pairing(e, seed)
    if delta_mean > delta + tol:
        raise _bound_error("delta_to_mean exceeds delta", delta_mean, delta)
    if delta > 2.0 * np.sqrt(info) + tol:
        raise _bound_error("delta exceeds 2 sqrt(info)", delta, 2 * np.sqrt(info))
    floor = information_floor(delta, m)
    if info < floor - tol:
        raise _bound_error("info below entropy-gap floor", info, floor)
    return EncodingStats(delta, delta_mean, info, pairing)


def _bound_error(message, lhs, rhs):
    from .errors import BoundViolationError

    return BoundViolationError(f"{message}: {lhs} vs {rhs}")


def prefix_ensemble(e: CQEnsemble, prefix: str) -> DensityMatrix:
    """Uniform mixture of the states whose label extends ``prefix``."""
    m = _cube_m(e)
    if len(prefix) > m or any(c not in "01" for c in prefix):
        raise ValueError(f"bad prefix {prefix!r} for m={m}")
    members = [s for lab, s in zip(e.labels, e.states) if lab.startswith(prefix)]
    weights = np.full(len(members), 1.0 / len(members))
    return mixture(weights, members)


def _bit_ensemble(e: CQEnsemble, prefix: str) -> CQEnsemble:
    """Two-label ensemble for the bit following ``prefix``."""
    return make_ensemble(
        ["0", "1"],
        [0.5, 0.5],
        [prefix_ensemble(e, prefix + "0"), prefix_ensemble(e, prefix + "1")],
    )


def info_decomposition_check(e: CQEnsemble) -> tuple[float, float]:
    """Prefix-wise information sum versus the full ensemble information.

    Returns (lhs, rhs) with lhs = sum over bit positions of the average
    conditional bit information, and rhs the Holevo information of the
    whole ensemble; lhs <= rhs up to numerics.
    """
    m = _cube_m(e)
    lhs = 0.0
    for i in range(m):
        prefixes = [format(y, f"0{i}b") if i > 0 else "" for y in range(2**i)]
        lhs += float(
            np.mean([holevo_information(_bit_ensemble(e, y)) for y in prefixes])
        )
    rhs = holevo_information(e)
    return lhs, rhs
