import numpy as np
import pytest

from qilab import linalg
from qilab import protocol as proto
from qilab.errors import ModelViolationError, ProtocolError, SizeError
from qilab.rng import Stream
from qilab.states import random_unitary

P0 = np.diag([1.0, 0.0]).astype(complex)
P1 = np.diag([0.0, 1.0]).astype(complex)


def copy_protocol():
    layout = proto.make_layout(
        [("x", 1, "input", "alice"), ("m", 1, "message", "alice")]
    )
    cnot = proto.block_diagonal({0: proto.I2, 1: proto.X}, 1)
    moves = (proto.Move("alice", cnot, (0, 1), send=(1,)),)
    meas = proto.Measurement("bob", (1,), (P0, P1))
    return proto.ProtocolSpec(layout, moves, meas)


def uniform_bit_ensemble():
    return proto.InputEnsemble(
        tuple(proto.InputInstance(0.5, {"x": b}, b) for b in (0, 1))
    )


def test_empty_protocol_fixed_work_qubit():
    layout = proto.make_layout([("w", 1, "work", "alice")])
    spec = proto.ProtocolSpec(
        layout, (), proto.Measurement("alice", (0,), (P0, P1))
    )
    report = proto.run_protocol(
        spec, proto.InputEnsemble((proto.InputInstance(1.0, {}, 0),))
    )
    assert report.outcome_distributions[0] == (1.0, 0.0)
    assert report.error_avg == 0.0
    assert report.message_qubits == 0 and report.rounds == 0


def test_copy_protocol_counts_and_error():
    report = proto.run_protocol(copy_protocol(), uniform_bit_ensemble())
    assert report.error_avg == pytest.approx(0.0, abs=1e-12)
    assert report.message_qubits == 1
    assert report.first_message_qubits == 1
    assert report.rounds == 1


def test_apply_unitary_matches_dense_kron():
    # oracle: dense matrix built with explicit kron factors
    state = Stream(120).complex_gauss_matrix(8, 1).reshape(-1)
    state /= np.linalg.norm(state)
    u = random_unitary(2, 121)
    got = proto.apply_unitary(state, 3, u, (1,))
    dense = np.kron(np.kron(np.eye(2), u), np.eye(2))
    assert np.allclose(got, dense @ state, atol=1e-12)

    v = random_unitary(4, 122)
    got2 = proto.apply_unitary(state, 3, v, (2, 0))
    # permute axes to (q2, q0, q1), apply v (x) I, permute back
    swap = np.zeros((8, 8))
    for b in range(8):
        bits = [(b >> 2) & 1, (b >> 1) & 1, b & 1]
        target = (bits[2] << 2) | (bits[0] << 1) | bits[1]
        swap[target, b] = 1.0
    dense2 = swap.T @ np.kron(v, np.eye(2)) @ swap
    assert np.allclose(got2, dense2 @ state, atol=1e-12)


def test_reduced_density_matches_partial_trace():
    state = Stream(123).complex_gauss_matrix(8, 1).reshape(-1)
    state /= np.linalg.norm(state)
    rho = np.outer(state, state.conj())
    got = proto.reduced_density(state, 3, [0])
    expected = linalg.partial_trace(rho, 2, 4, "H")
    assert np.allclose(got, expected, atol=1e-12)


def test_ownership_violation_rejected():
    layout = proto.make_layout(
        [("x", 1, "input", "alice"), ("y", 1, "input", "bob")]
    )
    spec = proto.ProtocolSpec(
        layout,
        (proto.Move("alice", proto.block_diagonal({0: proto.I2, 1: proto.X}, 1), (0, 1)),),
        proto.Measurement("bob", (1,), (P0, P1)),
    )
    with pytest.raises(ProtocolError):
        spec.validate()


def test_sending_unowned_qubit_rejected():
    layout = proto.make_layout(
        [("x", 1, "input", "alice"), ("y", 1, "input", "bob")]
    )
    spec = proto.ProtocolSpec(
        layout,
        (proto.Move("alice", proto.I2, (0,), send=(1,)),),
        proto.Measurement("bob", (1,), (P0, P1)),
    )
    with pytest.raises(ProtocolError):
        spec.validate()


def test_input_register_write_rejected():
    layout = proto.make_layout(
        [("x", 1, "input", "alice"), ("m", 1, "message", "alice")]
    )
    spec = proto.ProtocolSpec(
        layout,
        (proto.Move("alice", proto.X, (0,)),),
        proto.Measurement("alice", (1,), (P0, P1)),
    )
    with pytest.raises(ModelViolationError):
        spec.validate()
    # Hadamard on an input register also rewrites it
    spec2 = proto.ProtocolSpec(
        layout,
        (proto.Move("alice", proto.H, (0,)),),
        proto.Measurement("alice", (1,), (P0, P1)),
    )
    with pytest.raises(ModelViolationError):
        spec2.validate()


def test_controlled_read_of_input_is_allowed():
    copy_protocol().validate()


def test_non_unitary_move_rejected():
    layout = proto.make_layout([("w", 1, "work", "alice")])
    spec = proto.ProtocolSpec(
        layout,
        (proto.Move("alice", np.array([[1.0, 0.0], [0.0, 0.5]]), (0,)),),
        proto.Measurement("alice", (0,), (P0, P1)),
    )
    with pytest.raises(ProtocolError):
        spec.validate()


def test_measurement_ownership_enforced():
    layout = proto.make_layout(
        [("x", 1, "input", "alice"), ("m", 1, "message", "alice")]
    )
    spec = proto.ProtocolSpec(
        layout,
        (proto.Move("alice", proto.I2, (1,)),),  # never sent
        proto.Measurement("bob", (1,), (P0, P1)),
    )
    with pytest.raises(ProtocolError):
        spec.validate()


def test_exact_mode_is_deterministic():
    a = proto.run_protocol(copy_protocol(), uniform_bit_ensemble())
    b = proto.run_protocol(copy_protocol(), uniform_bit_ensemble())
    assert a == b
    assert a.to_json() == b.to_json()


def test_superposed_input_distribution():
    plus = np.array([1.0, 1.0]) / np.sqrt(2)
    ens = proto.InputEnsemble((proto.InputInstance(1.0, {"x": plus}, 0),))
    report = proto.run_protocol(copy_protocol(), ens)
    assert report.outcome_distributions[0] == pytest.approx((0.5, 0.5))


def test_sampled_mode():
    report = proto.run_protocol(
        copy_protocol(), uniform_bit_ensemble(), mode="sampled", shots=500, seed=3
    )
    assert report.mode == "sampled"
    assert report.error_avg == pytest.approx(0.0, abs=1e-12)
    with pytest.raises(ValueError):
        proto.run_protocol(copy_protocol(), uniform_bit_ensemble(), mode="sampled")


def test_extract_pure_factor_detects_entanglement():
    bell = np.array([1, 0, 0, 1], dtype=complex) / np.sqrt(2)
    with pytest.raises(ProtocolError):
        proto.extract_pure_factor(bell, 2, {0: 0}, [1], [])
    product = np.kron(np.array([1, 0]), np.array([1, 1]) / np.sqrt(2))
    vec = proto.extract_pure_factor(product, 2, {0: 0}, [1], [])
    assert np.allclose(vec, np.array([1, 1]) / np.sqrt(2))


def test_state_prep_unitary():
    vec = Stream(124).complex_gauss_matrix(8, 1).reshape(-1)
    vec /= np.linalg.norm(vec)
    u = proto.state_prep_unitary(vec)
    assert np.allclose(u @ np.eye(8)[:, 0], vec, atol=1e-10)
    assert np.linalg.norm(u.conj().T @ u - np.eye(8)) <= 1e-10


def test_block_diagonal_shapes():
    out = proto.block_diagonal({0: proto.I2, 3: proto.X}, 2)
    assert out.shape == (8, 8)
    assert np.allclose(out[6:8, 6:8], proto.X)
    assert np.allclose(out[2:4, 2:4], proto.I2)  # missing blocks default to I
    with pytest.raises(SizeError):
        proto.block_diagonal({0: proto.I2, 1: np.eye(4)}, 1)


def test_layout_validation():
    with pytest.raises(ProtocolError):
        proto.RegisterLayout(
            (proto.Register("a", (0, 2), "input", "alice"),)
        )
    with pytest.raises(SizeError):
        proto.make_layout([("big", 9, "work", "alice")])


def test_spec_json_roundtrip_runs_identically():
    spec = copy_protocol()
    again = proto.spec_from_json(proto.spec_to_json(spec))
    r1 = proto.run_protocol(spec, uniform_bit_ensemble())
    r2 = proto.run_protocol(again, uniform_bit_ensemble())
    assert r1 == r2


def test_total_variation():
    assert proto.total_variation([1, 0], [0, 1]) == pytest.approx(1.0)
    assert proto.total_variation([0.5, 0.5], [0.5, 0.5]) == 0.0
