"""Index-function protocols and random access codes.

The index function: Alice holds an n-bit string x, Bob holds an index i,
and the answer is the bit x_i. A random access code is a one-message
protocol for it: Alice encodes x into m qubits, Bob measures in a basis
chosen by i. The one-message cost with Alice starting is at least
(1 - H(eps)) * n qubits at average error eps, and this module measures
every link of that chain on concrete protocols.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import protocol as proto
from .encoding import _bit_ensemble, info_decomposition_check
from .errors import ProtocolError
from .info import (
    binary_entropy,
    holevo_information,
    uniform_cube_ensemble,
)
from .metrics import optimal_measurement
from .protocol import (
    InputEnsemble,
    InputInstance,
    Measurement,
    Move,
    ProtocolSpec,
    block_diagonal,
    make_layout,
    run_protocol,
    state_prep_unitary,
)
from .rng import Stream
from .states import DensityMatrix, make_density

OPTIMAL_TWO_BIT_SUCCESS = (2.0 + np.sqrt(2.0)) / 4.0  # cos^2(pi/8)


def bit_of(value: int, i: int, n: int) -> int:
    """Bit i of an n-bit value, most significant first."""
    return (value >> (n - 1 - i)) & 1


# ---------------------------------------------------------------------------
# Optimization oracle over Bloch-vector encodings.
# ---------------------------------------------------------------------------


def bloch_success(bloch: np.ndarray, n: int) -> float:
    """Average success of the best per-index measurement for an encoding.

    ``bloch`` holds one unit Bloch vector per x. For each index the two
    candidate mixtures differ by a Bloch vector d_i, the optimal
    measurement succeeds with 1/2 + |d_i| / 4, and indices are uniform.
    """
    total = 0.0
    for i in range(n):
        mask = np.array([bit_of(x, i, n) for x in range(2**n)])
        d = bloch[mask == 0].mean(axis=0) - bloch[mask == 1].mean(axis=0)
        total += float(np.linalg.norm(d))
    return 0.5 + total / (4.0 * n)


def _angles_to_bloch(angles: np.ndarray) -> np.ndarray:
    theta = angles[:, 0]
    phi = angles[:, 1]
    return np.column_stack(
        [np.sin(theta) * np.cos(phi), np.sin(theta) * np.sin(phi), np.cos(theta)]
    )


def _coordinate_refine(angles: np.ndarray, n: int, rounds: int = 60) -> np.ndarray:
    angles = angles.copy()
    step = 0.6
    for _ in range(rounds):
        for idx in range(angles.shape[0]):
            for col in range(2):
                base = angles[idx, col]
                candidates = base + np.linspace(-step, step, 13)
                best_val = -1.0
                best = base
                for cand in candidates:
                    angles[idx, col] = cand
                    val = bloch_success(_angles_to_bloch(angles), n)
                    if val > best_val:
                        best_val = val
                        best = cand
                angles[idx, col] = best
        step *= 0.8
    return angles


def optimize_rac(n: int, seed: int = 5, starts: int = 6) -> tuple[float, np.ndarray]:
    """Search for the best one-qubit encoding of n bits.

    Dense grid over polar angles (n = 2 admits a planar optimum) plus
    multi-start coordinate refinement over the full sphere. Returns the
    achieved average success and the Bloch vectors found.
    """
    stream = Stream(seed)
    best_angles = None
    best_val = -1.0
    if n == 2:
        grid = np.linspace(0.0, 2.0 * np.pi, 17, endpoint=False)
        t0, t1, t2, t3 = np.meshgrid(grid, grid, grid, grid, indexing="ij")
        bx = np.stack([np.sin(t) for t in (t0, t1, t2, t3)])
        bz = np.stack([np.cos(t) for t in (t0, t1, t2, t3)])
        d1x, d1z = bx[0] + bx[1] - bx[2] - bx[3], bz[0] + bz[1] - bz[2] - bz[3]
        d2x, d2z = bx[0] - bx[1] + bx[2] - bx[3], bz[0] - bz[1] + bz[2] - bz[3]
        score = np.hypot(d1x, d1z) + np.hypot(d2x, d2z)
        flat = int(np.argmax(score))
        picks = np.unravel_index(flat, score.shape)
        best_angles = np.array([[grid[p], 0.0] for p in picks])
        best_val = bloch_success(_angles_to_bloch(best_angles), n)
    for _ in range(starts):
        angles = np.array(
            [
                [stream.uniform() * np.pi, stream.uniform() * 2.0 * np.pi]
                for _ in range(2**n)
            ]
        )
        refined = _coordinate_refine(angles, n)
        val = bloch_success(_angles_to_bloch(refined), n)
        if val > best_val:
            best_val = val
            best_angles = refined
    if best_angles is not None:
        best_angles = _coordinate_refine(best_angles, n, rounds=40)
        best_val = bloch_success(_angles_to_bloch(best_angles), n)
    return best_val, _angles_to_bloch(best_angles)


def bloch_to_ket(b: np.ndarray) -> np.ndarray:
    b = np.asarray(b, dtype=np.float64)
    b = b / np.linalg.norm(b)
    theta = np.arccos(np.clip(b[2], -1.0, 1.0))
    phi = np.arctan2(b[1], b[0])
    return np.array(
        [np.cos(theta / 2.0), np.exp(1j * phi) * np.sin(theta / 2.0)],
        dtype=np.complex128,
    )


# ---------------------------------------------------------------------------
# Concrete one-message protocols.
# ---------------------------------------------------------------------------


def _index_register_bits(n: int) -> int:
    return max(1, int(np.ceil(np.log2(n))))


def _mixture_pair(kets, n: int, i: int) -> tuple[DensityMatrix, DensityMatrix]:
    groups: dict[int, list[np.ndarray]] = {0: [], 1: []}
    for x, ket in enumerate(kets):
        groups[bit_of(x, i, n)].append(np.outer(ket, np.conj(ket)))
    halves = []
    for b in (0, 1):
        acc = sum(groups[b]) / len(groups[b])
        halves.append(make_density(acc, tol=1e-8))
    return halves[0], halves[1]


def rac_protocol(n: int, kets) -> ProtocolSpec:
    """One-qubit random access code with per-index optimal decoding.

    Alice prepares the ket chosen by her string on the message qubit and
    sends it; Bob measures it in the basis that best distinguishes the
    two index-conditional mixtures.
    """
    kets = [np.asarray(k, dtype=np.complex128) for k in kets]
    if len(kets) != 2**n:
        raise ProtocolError(f"need {2**n} encoding states, got {len(kets)}")
    ib = _index_register_bits(n)
    layout = make_layout(
        [
            ("x", n, "input", "alice"),
            ("i", ib, "input", "bob"),
            ("m", 1, "message", "alice"),
        ]
    )
    encode = block_diagonal(
        {x: state_prep_unitary(kets[x]) for x in range(2**n)}, n
    )
    x_wires = layout.register("x").qubits
    m_wire = layout.register("m").qubits
    move = Move("alice", encode, (*x_wires, *m_wire), send=m_wire)
    zero2 = np.zeros((2, 2), dtype=np.complex128)
    blocks0: dict[int, np.ndarray] = {}
    blocks1: dict[int, np.ndarray] = {}
    for i in range(2**ib):
        if i < n:
            rho0, rho1 = _mixture_pair(kets, n, i)
            meas, _ = optimal_measurement(rho0, rho1)
            blocks0[i] = meas.projector_pos
            blocks1[i] = meas.projector_neg
        else:
            blocks0[i] = np.eye(2, dtype=np.complex128)
            blocks1[i] = zero2
    i_wires = layout.register("i").qubits
    measurement = Measurement(
        "bob",
        (*i_wires, *m_wire),
        (block_diagonal(blocks0, ib), block_diagonal(blocks1, ib)),
    )
    return ProtocolSpec(layout, (move,), measurement)


def classical_copy_protocol(n: int) -> ProtocolSpec:
    """Alice copies all n bits into the message; zero error at m = n."""
    ib = _index_register_bits(n)
    layout = make_layout(
        [
            ("x", n, "input", "alice"),
            ("i", ib, "input", "bob"),
            ("m", n, "message", "alice"),
        ]
    )
    copy_blocks = {}
    for x in range(2**n):
        mat = np.eye(1, dtype=np.complex128)
        for i in range(n):
            mat = np.kron(mat, proto.X if bit_of(x, i, n) else proto.I2)
        copy_blocks[x] = mat
    x_wires = layout.register("x").qubits
    m_wires = layout.register("m").qubits
    move = Move("alice", block_diagonal(copy_blocks, n), (*x_wires, *m_wires), send=m_wires)
    blocks0: dict[int, np.ndarray] = {}
    blocks1: dict[int, np.ndarray] = {}
    dm = 2**n
    for i in range(2**ib):
        if i < n:
            diag = np.array([1.0 - bit_of(v, i, n) for v in range(dm)])
            blocks0[i] = np.diag(diag).astype(np.complex128)
            blocks1[i] = np.diag(1.0 - diag).astype(np.complex128)
        else:
            blocks0[i] = np.eye(dm, dtype=np.complex128)
            blocks1[i] = np.zeros((dm, dm), dtype=np.complex128)
    i_wires = layout.register("i").qubits
    measurement = Measurement(
        "bob",
        (*i_wires, *m_wires),
        (block_diagonal(blocks0, ib), block_diagonal(blocks1, ib)),
    )
    return ProtocolSpec(layout, (move,), measurement)


def trivial_index_protocol(n: int) -> ProtocolSpec:
    """Two messages, zero error: Bob sends his index, Alice answers x_i.

    Bob copies the index register into log-n message qubits; Alice flips
    an answer qubit conditioned on (x, received index) and sends it back
    for Bob to measure. Total cost is ceil(log2 n) + 1 qubits.
    """
    ib = _index_register_bits(n)
    layout = make_layout(
        [
            ("x", n, "input", "alice"),
            ("i", ib, "input", "bob"),
            ("mi", ib, "message", "bob"),
            ("ans", 1, "work", "alice"),
        ]
    )
    x_wires = layout.register("x").qubits
    i_wires = layout.register("i").qubits
    mi_wires = layout.register("mi").qubits
    ans_wire = layout.register("ans").qubits
    copy_blocks = {}
    for i in range(2**ib):
        mat = np.eye(1, dtype=np.complex128)
        for b in range(ib):
            mat = np.kron(mat, proto.X if (i >> (ib - 1 - b)) & 1 else proto.I2)
        copy_blocks[i] = mat
    send_index = Move(
        "bob", block_diagonal(copy_blocks, ib), (*i_wires, *mi_wires), send=mi_wires
    )
    answer_blocks = {}
    for x in range(2**n):
        for i in range(2**ib):
            ctrl = (x << ib) | i
            hit = bit_of(x, i, n) if i < n else 0
            answer_blocks[ctrl] = proto.X if hit else proto.I2
    answer = Move(
        "alice",
        block_diagonal(answer_blocks, n + ib),
        (*x_wires, *mi_wires, *ans_wire),
        send=ans_wire,
    )
    p0 = np.diag([1.0, 0.0]).astype(np.complex128)
    p1 = np.diag([0.0, 1.0]).astype(np.complex128)
    measurement = Measurement("bob", ans_wire, (p0, p1))
    return ProtocolSpec(layout, (send_index, answer), measurement)


def index_ensemble(n: int) -> InputEnsemble:
    """Uniform inputs (x, i) with target bit x_i."""
    instances = []
    w = 1.0 / (2**n * n)
    for x in range(2**n):
        for i in range(n):
            instances.append(
                InputInstance(w, {"x": x, "i": i}, bit_of(x, i, n))
            )
    return InputEnsemble(tuple(instances))


def message_encoding(spec: ProtocolSpec, n: int):
    """The ensemble x -> sigma_x carried by the one message."""
    layout = spec.layout
    m_wires = layout.register("m").qubits
    states = []
    for x in range(2**n):
        state = proto.initial_state(layout, {"x": x, "i": 0})
        state = proto.evolve(spec, state, upto=1)
        rho = proto.reduced_density(state, layout.n_qubits, m_wires)
        states.append(make_density(rho, tol=1e-8))
    return uniform_cube_ensemble(states)


@dataclass(frozen=True)
class RacBoundReport:
    """All links of the one-message lower-bound chain, measured.

    The chain is (1 - H(eps)) * n <= per-prefix entropy-gap sum <=
    prefix information sum <= I(Q:X) <= m.
    """

    n: int
    m: int
    eps: float
    cost_floor: float
    fano_sum: float
    decomposition_lhs: float
    info: float
    min_prefix_fano_slack: float
    slack: float

    def chain_slacks(self) -> tuple[float, float, float, float]:
        return (
            self.fano_sum - self.cost_floor,
            self.decomposition_lhs - self.fano_sum,
            self.info - self.decomposition_lhs,
            float(self.m) - self.info,
        )


def rac_lower_bound_check(spec: ProtocolSpec, n: int) -> RacBoundReport:
    """Measure eps and certify (1 - H(eps)) * n <= m link by link.

    Requires a one-message protocol: a single Alice move sending the
    whole message, then Bob's measurement.
    """
    sends = [i for i, mv in enumerate(spec.moves) if mv.send]
    if len(sends) != 1 or spec.moves[sends[0]].player != "alice":
        raise ProtocolError("expected exactly one message, sent by alice")
    m = spec.first_message_qubits
    report = run_protocol(spec, index_ensemble(n))
    eps = report.error_avg
    cost_floor = (1.0 - binary_entropy(eps)) * n

    err = {}
    for idx, inst in enumerate(index_ensemble(n).instances):
        err[(inst.register_states["x"], inst.register_states["i"])] = (
            report.instance_errors[idx]
        )
    ensemble = message_encoding(spec, n)
    info = holevo_information(ensemble)
    decomposition_lhs, decomposition_rhs = info_decomposition_check(ensemble)

    fano_sum = 0.0
    min_fano_slack = np.inf
    for j in range(n):
        gaps = []
        for y in range(2**j):
            suffix_count = 2 ** (n - j)
            errs = [
                err[((y << (n - j)) | suffix, j)] for suffix in range(suffix_count)
            ]
            eps_y = float(np.mean(errs))
            gap = 1.0 - binary_entropy(eps_y)
            gaps.append(gap)
            prefix = format(y, f"0{j}b") if j > 0 else ""
            sub_info = holevo_information(_bit_ensemble(ensemble, prefix))
            min_fano_slack = min(min_fano_slack, sub_info - gap)
        fano_sum += float(np.mean(gaps))
    return RacBoundReport(
        n=n,
        m=m,
        eps=eps,
        cost_floor=cost_floor,
        fano_sum=fano_sum,
        decomposition_lhs=decomposition_lhs,
        info=min(info, decomposition_rhs + 1e-12),
        min_prefix_fano_slack=float(min_fano_slack),
        slack=float(m) - cost_floor,
    )
