import numpy as np
import pytest

from qilab import protocol as proto
from qilab import reduction as red
from qilab.errors import ReductionError


def test_nested_index_value():
    inst = red.NestedIndexInstance(
        n=2, inner_bits=2, x=(0b10, 0b01), a=0, y=(1, 0)
    )
    assert inst.value() == 0  # x_0 = 10, bit 1
    inst2 = red.NestedIndexInstance(
        n=2, inner_bits=2, x=(0b10, 0b01), a=1, y=(1, 1)
    )
    assert inst2.value() == 1  # x_1 = 01, bit 1


def test_families_validate():
    for style in ("copy_first", "constant", "parity", "rotation"):
        fam = red.two_round_family(style)
        assert fam.spec.rounds == 2
        assert fam.spec.message_qubits == 2
        assert fam.spec.first_message_qubits == 1


def test_slice_distribution_weights_and_targets():
    fam = red.two_round_family("copy_first")
    ens = red.slice_distribution(fam, 0)
    assert len(ens.instances) == 32
    assert sum(i.weight for i in ens.instances) == pytest.approx(1.0)
    for inst in ens.instances:
        v0 = inst.register_states["x0"]
        z = inst.register_states["y0"]
        assert inst.target == red.bit_value(v0, z, 2)


def test_unfixed_slot_acts_like_uniform_mixture():
    # slice inputs: the fixed slot averages to I/2 over the ensemble, and
    # once the protocol reads the superposed slot it decoheres to I/2 too
    fam = red.two_round_family("copy_first")
    layout = fam.spec.layout
    n_q = layout.n_qubits
    ens = red.slice_distribution(fam, 0)
    y0 = layout.register("y0").qubits
    avg = np.zeros((2, 2), dtype=complex)
    for inst in ens.instances:
        state = proto.initial_state(layout, inst.register_states)
        avg += inst.weight * proto.reduced_density(state, n_q, y0)
    assert np.allclose(avg, np.eye(2) / 2, atol=1e-12)

    ens1 = red.slice_distribution(fam, 1)
    inst = ens1.instances[0]
    state = proto.initial_state(layout, inst.register_states)
    state = proto.evolve(fam.spec, state, upto=1)
    read_slot = proto.reduced_density(state, n_q, layout.register("y0").qubits)
    assert np.allclose(read_slot, np.eye(2) / 2, atol=1e-12)


def test_superposed_equals_classical_average():
    for style in ("copy_first", "rotation"):
        fam = red.two_round_family(style)
        for j in (0, 1):
            sup = proto.run_protocol(fam.spec, red.slice_distribution(fam, j, True))
            cla = proto.run_protocol(fam.spec, red.slice_distribution(fam, j, False))
            assert sup.error_avg == pytest.approx(cla.error_avg, abs=1e-12)


def test_message_densities_copy_first():
    fam = red.two_round_family("copy_first")
    rho = red.message_density_by_value(fam.spec, fam, 0)
    assert np.allclose(rho[0], np.diag([1.0, 0.0]), atol=1e-12)
    assert np.allclose(rho[1], np.diag([0.0, 1.0]), atol=1e-12)
    rho1 = red.message_density_by_value(fam.spec, fam, 1)
    assert np.allclose(rho1[0], np.eye(2) / 2, atol=1e-12)
    assert np.allclose(rho1[1], np.eye(2) / 2, atol=1e-12)
    assert red.slice_information(fam.spec, fam, 0) == pytest.approx(1.0, abs=1e-10)
    assert red.slice_information(fam.spec, fam, 1) == pytest.approx(0.0, abs=1e-10)


def test_modify_first_message_zeroes_information():
    for style in ("copy_first", "parity", "rotation"):
        fam = red.two_round_family(style)
        for j in (0, 1):
            spec_prime, rep = red.modify_first_message(fam, j)
            assert rep.mu_j_prime <= 1e-9
            assert spec_prime.rounds == 2
            assert spec_prime.message_qubits == fam.spec.message_qubits
            assert rep.delta_j <= rep.eps_j + 2.0 * rep.mean_sqrt_t + 1e-8
            assert rep.delta_j <= rep.eps_j + 4.0 * rep.mu_j**0.25 + 1e-8
            for t_z, dist in zip(rep.t_values, rep.align_distances):
                assert dist <= 2.0 * np.sqrt(t_z) + 1e-8


def test_independent_first_message_needs_no_correction():
    fam = red.two_round_family("constant")
    spec_prime, rep = red.modify_first_message(fam, 0)
    assert rep.mu_j == pytest.approx(0.0, abs=1e-10)
    assert max(rep.t_values) <= 1e-9
    assert max(rep.align_distances) <= 1e-6
    assert rep.delta_j == pytest.approx(rep.eps_j, abs=1e-9)


def test_copy_first_slice_zero_numbers():
    fam = red.two_round_family("copy_first")
    _, rep = red.modify_first_message(fam, 0)
    assert rep.eps_j == pytest.approx(0.25, abs=1e-12)
    assert rep.mu_j == pytest.approx(1.0, abs=1e-10)
    assert rep.t_values == pytest.approx((1.0, 1.0), abs=1e-10)
    # message replaced by half of a maximally entangled pair: fidelity 1/2
    assert rep.align_distances == pytest.approx((np.sqrt(2.0),) * 2, abs=1e-9)


def test_drop_first_message_matches_and_saves_a_round():
    for style in ("copy_first", "constant", "parity", "rotation"):
        fam = red.two_round_family(style)
        for j in (0, 1):
            spec_prime, _ = red.modify_first_message(fam, j)
            spec_double, rep = red.drop_first_message(fam, j, spec_prime)
            assert rep.rounds_after == rep.rounds_before - 1
            assert rep.message_qubits_after <= rep.budget
            assert rep.max_outcome_tv <= 1e-8
            assert rep.max_transition_residual <= 1e-8
            assert spec_double.rounds == 1


def test_message_info_budget():
    fam = red.two_round_family("copy_first")
    mus, joint, ell1 = red.message_info_budget(fam.spec, fam)
    assert mus[0] == pytest.approx(1.0, abs=1e-10)
    assert mus[1] == pytest.approx(0.0, abs=1e-10)
    assert ell1 == 1
    assert sum(mus) <= joint + 1e-9
    assert joint <= ell1 + 1e-9

    fam2 = red.two_round_family("parity")
    mus2, joint2, _ = red.message_info_budget(fam2.spec, fam2)
    # parity of two uniform bits tells nothing about either alone
    assert max(mus2) <= 1e-10
    assert joint2 == pytest.approx(1.0, abs=1e-9)


def test_random_first_messages_respect_budget():
    # randomized sweep over block-diagonal first moves on (y0, y1, m)
    from qilab.protocol import Move, ProtocolSpec, block_diagonal
    from qilab.states import random_unitary
    from qilab.rng import derive_seed

    base = red.two_round_family("copy_first")
    layout = base.spec.layout
    y0 = layout.register("y0").qubits
    y1 = layout.register("y1").qubits
    m = layout.register("m").qubits
    for trial in range(12):
        blocks = {
            b: random_unitary(2, derive_seed(130, trial, b)) for b in range(4)
        }
        first = Move("bob", block_diagonal(blocks, 2), (*y0, *y1, *m), send=m)
        spec = ProtocolSpec(
            layout, (first, base.spec.moves[1]), base.spec.final_measurement
        )
        fam = red.TwoRoundFamily(spec, f"random{trial}")
        mus, joint, ell1 = red.message_info_budget(spec, fam)
        assert sum(mus) <= joint + 1e-9
        assert joint <= ell1 + 1e-9


def test_modify_requires_bob_start():
    fam = red.two_round_family("copy_first")
    flipped = red.TwoRoundFamily(
        proto.ProtocolSpec(
            fam.spec.layout,
            (fam.spec.moves[1], fam.spec.moves[0]),
            fam.spec.final_measurement,
        ),
        "broken",
    )
    with pytest.raises((ReductionError, proto.ProtocolError, KeyError)):
        red.modify_first_message(flipped, 0)


def test_family_report_slices():
    fam = red.two_round_family("copy_first")
    rep = red.family_report(fam)
    assert rep.slice_errors == pytest.approx((0.25, 0.5), abs=1e-12)
    assert rep.slice_info == pytest.approx((1.0, 0.0), abs=1e-10)
    assert rep.error_avg == pytest.approx(np.mean(rep.slice_errors), abs=1e-12)
    assert rep.rounds == 2 and rep.first_message_qubits == 1
    json_form = rep.to_json()
    assert json_form["slice_errors"] == [0.25, 0.5]


def test_pipeline_report_fields():
    rep = red.run_pipeline("rotation", 0)
    assert rep.style == "rotation"
    assert 0.0 < rep.first.mu_j < 1.0
    assert rep.first.alignment_bound_slack >= -1e-8
    assert rep.first.info_bound_slack >= -1e-8
    assert rep.superposed_error == pytest.approx(rep.classical_error, abs=1e-12)
