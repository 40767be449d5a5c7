"""Named verification suites behind the command-line driver.

A check runs a seeded sweep and reports the worst slack seen together
with the number of violations of its tolerance. Slack conventions:
inequality checks report rhs - lhs (so negative means violated);
agreement checks report tol - |difference|.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import encoding as enc
from . import info, linalg, metrics, rac, reduction, transition
from .info import (
    binary_entropy,
    binary_entropy_gap,
    classical_mutual_information,
    holevo_information,
    make_ensemble,
    measured_mutual_info,
    shannon_entropy,
    uniform_cube_ensemble,
    von_neumann_entropy,
)
from .rng import Stream, derive_seed
from .states import (
    canonical_purification,
    distance_up_to_phase,
    make_density,
    mixture,
    pure_density,
    random_density,
    random_pure,
    random_unitary,
)


@dataclass(frozen=True)
class SuiteConfig:
    seed: int = 1
    trials: int | None = None
    dims: tuple[int, int] = (2, 8)
    m: int = 5
    n: int = 2
    tol: float | None = None


@dataclass
class CheckResult:
    name: str
    trials: int
    min_slack: float
    violations: int
    details: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "trials": self.trials,
            "min_slack": float(self.min_slack),
            "violations": self.violations,
            "details": self.details,
        }


class _Tally:
    """Accumulates per-trial slacks against a tolerance."""

    def __init__(self, name: str, tol: float):
        self.name = name
        self.tol = tol
        self.min_slack = np.inf
        self.violations = 0
        self.trials = 0
        self.details: dict = {}

    def add(self, slack: float) -> None:
        self.trials += 1
        self.min_slack = min(self.min_slack, float(slack))
        if slack < -self.tol:
            self.violations += 1

    def result(self) -> CheckResult:
        out = CheckResult(
            self.name, self.trials, float(self.min_slack), self.violations
        )
        out.details = dict(self.details)
        out.details["tolerance"] = self.tol
        return out


def _tol(cfg: SuiteConfig, default: float) -> float:
    return cfg.tol if cfg.tol is not None else default


def _dim_cycle(cfg: SuiteConfig, t: int) -> int:
    lo, hi = cfg.dims
    return lo + t % (hi - lo + 1)


# ---------------------------------------------------------------------------


def metrics_suite(cfg: SuiteConfig) -> list[CheckResult]:
    trials = cfg.trials or 1000
    fvg_lower = _Tally("fvg_lower", _tol(cfg, 1e-9))
    fvg_upper = _Tally("fvg_upper", _tol(cfg, 1e-9))
    tight = _Tally("measurement_tightness", _tol(cfg, 1e-9))
    pure_agree = _Tally("pure_state_distance_agreement", _tol(cfg, 1e-9))
    tensor_mult = _Tally("trace_norm_multiplicative", _tol(cfg, 1e-10))
    for t in range(trials):
        dim = _dim_cycle(cfg, t)
        s1 = derive_seed(cfg.seed, 10, t, 0)
        s2 = derive_seed(cfg.seed, 10, t, 1)
        r1 = random_density(dim, 1 + Stream(s1).integer(dim), s1)
        r2 = random_density(dim, 1 + Stream(s2).integer(dim), s2)
        lo, up = metrics.fidelity_distance_bounds(r1, r2)
        fvg_lower.add(lo)
        fvg_upper.add(up)
        _, achieved = metrics.optimal_measurement(r1, r2)
        tight.add(tight.tol - abs(achieved - metrics.trace_distance(r1, r2)))

        v1 = random_pure(dim, 1, derive_seed(cfg.seed, 11, t, 0)).vec
        v2 = random_pure(dim, 1, derive_seed(cfg.seed, 11, t, 1)).vec
        dens_dist = metrics.trace_distance(pure_density(v1), pure_density(v2))
        pure_agree.add(
            pure_agree.tol - abs(metrics.pure_trace_distance(v1, v2) - dens_dist)
        )

        a = Stream(derive_seed(cfg.seed, 12, t, 0)).complex_gauss_matrix(2, 2)
        b = Stream(derive_seed(cfg.seed, 12, t, 1)).complex_gauss_matrix(3, 3)
        lhs = metrics.trace_norm(np.kron(a, b))
        rhs = metrics.trace_norm(a) * metrics.trace_norm(b)
        tensor_mult.add(tensor_mult.tol - abs(lhs - rhs) / max(rhs, 1.0))
    return [
        t.result() for t in (fvg_lower, fvg_upper, tight, pure_agree, tensor_mult)
    ]


# ---------------------------------------------------------------------------


def _random_ensemble(seed: int, n_states: int, dim: int):
    stream = Stream(seed)
    states = [
        random_density(dim, 1 + stream.integer(dim), derive_seed(seed, i))
        for i in range(n_states)
    ]
    raw = np.array([stream.uniform() + 0.05 for _ in range(n_states)])
    priors = raw / raw.sum()
    return make_ensemble([str(i) for i in range(n_states)], priors, states)


def _random_projective(seed: int, dim: int):
    u = random_unitary(dim, seed)
    return [np.outer(u[:, k], np.conj(u[:, k])) for k in range(dim)]


def info_suite(cfg: SuiteConfig) -> list[CheckResult]:
    trials = cfg.trials or 500
    holevo = _Tally("holevo_dominance", _tol(cfg, 1e-9))
    block = _Tally("block_entropy_identity", _tol(cfg, 1e-9))
    chain = _Tally("chain_identity", _tol(cfg, 1e-10))
    mono = _Tally("mi_monotonicity", _tol(cfg, 1e-10))
    concave = _Tally("entropy_concavity", _tol(cfg, 1e-9))
    subadd = _Tally("entropy_subadditivity", _tol(cfg, 1e-9))
    for t in range(trials):
        dim = 2 + t % 3
        seed = derive_seed(cfg.seed, 20, t)
        e = _random_ensemble(seed, 2 + t % 3, dim)
        meas = _random_projective(derive_seed(seed, 1), dim)
        holevo.add(holevo_information(e) - measured_mutual_info(e, meas))

        stream = Stream(derive_seed(cfg.seed, 21, t))
        k, d = 2 + t % 2, 2 + t % 2
        raw = np.array([stream.uniform() + 0.05 for _ in range(k)])
        p = raw / raw.sum()
        sigmas = [
            random_density(d, 1 + stream.integer(d), derive_seed(seed, 30 + i))
            for i in range(k)
        ]
        blockmat = np.zeros((k * d, k * d), dtype=np.complex128)
        for i, s in enumerate(sigmas):
            blockmat[i * d : (i + 1) * d, i * d : (i + 1) * d] = p[i] * s.mat
        lhs = von_neumann_entropy(make_density(blockmat, tol=1e-8))
        rhs = shannon_entropy(p) + sum(
            pi * von_neumann_entropy(si) for pi, si in zip(p, sigmas)
        )
        block.add(block.tol - abs(lhs - rhs))

        joint = np.array(
            [stream.uniform() + 1e-3 for _ in range(8)]
        ).reshape(2, 2, 2)
        joint /= joint.sum()
        i_x_yz = classical_mutual_information(joint.reshape(2, 4))
        i_x_y = classical_mutual_information(joint.sum(axis=2))
        i_xy_z = classical_mutual_information(joint.reshape(4, 2))
        i_y_z = classical_mutual_information(joint.sum(axis=0))
        chain.add(chain.tol - abs(i_x_yz - (i_x_y + i_xy_z - i_y_z)))

        labels = [format(v, "02b") for v in range(4)]
        yz = [
            random_density(4, 1 + stream.integer(4), derive_seed(seed, 40 + i))
            for i in range(4)
        ]
        full = make_ensemble(labels, np.full(4, 0.25), yz)
        red = make_ensemble(
            labels,
            np.full(4, 0.25),
            [
                make_density(
                    np.asarray(linalg.partial_trace(s.mat, 2, 2, "H")), tol=1e-8
                )
                for s in yz
            ],
        )
        mono.add(holevo_information(full) - holevo_information(red))

        ws = np.array([stream.uniform() + 0.05 for _ in range(3)])
        ws /= ws.sum()
        parts = [
            random_density(3, 1 + stream.integer(3), derive_seed(seed, 50 + i))
            for i in range(3)
        ]
        mixed = mixture(ws, parts)
        concave.add(
            von_neumann_entropy(mixed)
            - sum(w * von_neumann_entropy(s) for w, s in zip(ws, parts))
        )

        rho_ab = random_density(4, 1 + stream.integer(4), derive_seed(seed, 60))
        s_a = von_neumann_entropy(
            make_density(linalg.partial_trace(rho_ab.mat, 2, 2, "H"), tol=1e-8)
        )
        s_b = von_neumann_entropy(
            make_density(linalg.partial_trace(rho_ab.mat, 2, 2, "K"), tol=1e-8)
        )
        subadd.add(s_a + s_b - von_neumann_entropy(rho_ab))

    gap = _Tally("binary_entropy_gap", _tol(cfg, 1e-12))
    for k in range(501):
        delta = k / 1000.0
        gap.add(binary_entropy_gap(delta) - delta**2)

    fano = _Tally("fano_channel", _tol(cfg, 1e-9))
    grid = np.linspace(0.0, 1.0, 41)
    for pa in grid:
        for pb in grid:
            agreement = (pa + pb) / 2.0
            if agreement < 0.5:
                continue
            delta = agreement - 0.5
            joint = 0.5 * np.array([[pa, 1.0 - pa], [1.0 - pb, pb]])
            fano.add(
                classical_mutual_information(joint) - info.fano_bound(delta)
            )
    return [
        t.result()
        for t in (holevo, block, chain, mono, concave, subadd, gap, fano)
    ]


# ---------------------------------------------------------------------------


def _random_cube_ensemble(seed: int, m: int, dim: int):
    states = [
        random_density(dim, 1 + Stream(derive_seed(seed, x)).integer(dim),
                       derive_seed(seed, x))
        for x in range(2**m)
    ]
    return uniform_cube_ensemble(states)


def encoding_suite(cfg: SuiteConfig) -> list[CheckResult]:
    trials = cfg.trials or 200
    m_cap = min(cfg.m, 5)
    prime_le = _Tally("delta_prime_le_delta", _tol(cfg, 1e-8))
    two_sqrt = _Tally("delta_le_two_sqrt_info", _tol(cfg, 1e-8))
    floor_quarter = _Tally("info_floor_quarter", _tol(cfg, 1e-8))
    floor_half = _Tally("info_floor_half", _tol(cfg, 1e-8))
    quarter = _Tally("entropy_gap_quarter", _tol(cfg, 1e-10))
    pair_bound = _Tally("pairing_bound", _tol(cfg, 1e-10))
    decomp = _Tally("info_decomposition", _tol(cfg, 1e-9))
    skipped_half = 0
    half_violations_m1 = 0
    for t in range(trials):
        m = 1 + t % m_cap
        dim = _dim_cycle(cfg, t)
        seed = derive_seed(cfg.seed, 30, t)
        e = _random_cube_ensemble(seed, m, dim)
        stats = enc.encoding_stats(e, seed=derive_seed(seed, 99))
        prime_le.add(stats.delta_pairwise - stats.delta_to_mean)
        two_sqrt.add(2.0 * np.sqrt(stats.info) - stats.delta_pairwise)
        floor_quarter.add(
            stats.info - enc.information_floor(stats.delta_pairwise, m=2)
        )
        if stats.delta_pairwise <= 1.0:
            # The half-argument floor 1 - H((1 + Delta)/2) is provable only
            # for single-bit ensembles; multi-bit ensembles violate it and
            # the violations below are expected, not numerical defects.
            before = floor_half.violations
            floor_half.add(
                stats.info
                - (1.0 - binary_entropy((1.0 + stats.delta_pairwise) / 2.0))
            )
            if m == 1 and floor_half.violations > before:
                half_violations_m1 += 1
            quarter.add(
                (1.0 - binary_entropy((1.0 + stats.delta_pairwise) / 2.0))
                - stats.delta_pairwise**2 / 4.0
            )
        else:
            skipped_half += 1
        d = enc.pairwise_distance_matrix(e)
        pair_bound.add(
            enc.pairing_average(d, stats.pairing) - stats.delta_pairwise
        )
        if m <= 4:
            lhs, rhs = enc.info_decomposition_check(e)
            decomp.add(rhs - lhs)
    floor_half.details["not_applicable"] = skipped_half
    floor_half.details["violations_at_m1"] = half_violations_m1
    floor_half.details["note"] = (
        "holds for single-bit ensembles only; the provable general floor "
        "is info_floor_quarter"
    )

    exhaustive = _Tally("pairing_vs_exhaustive", _tol(cfg, 1e-10))
    for t in range(10):
        seed = derive_seed(cfg.seed, 31, t)
        e = _random_cube_ensemble(seed, 3, 2 + t % 3)
        d = enc.pairwise_distance_matrix(e)
        found = enc.pairing_average(
            d, enc.find_pairing(e, derive_seed(seed, 98))
        )
        best = max(enc.pairing_average(d, p) for p in enc.enumerate_pairings(8))
        exhaustive.add(best - found)
        delta = float(np.sum(d)) / 64.0
        exhaustive.add(found - delta)
    return [
        t.result()
        for t in (
            prime_le,
            two_sqrt,
            floor_quarter,
            floor_half,
            quarter,
            pair_bound,
            decomp,
            exhaustive,
        )
    ]


# ---------------------------------------------------------------------------


def transition_suite(cfg: SuiteConfig) -> list[CheckResult]:
    trials = cfg.trials or 1000
    agree = _Tally("overlap_matches_fidelity", _tol(cfg, 1e-8))
    bound = _Tally("transition_bound", _tol(cfg, 1e-8))
    chain = _Tally("fidelity_trace_chain", _tol(cfg, 1e-9))
    for t in range(trials):
        dim_h = 2 + t % 3
        dim_k = dim_h + t % (7 - dim_h)
        s1 = derive_seed(cfg.seed, 40, t, 0)
        s2 = derive_seed(cfg.seed, 40, t, 1)
        r1 = random_density(dim_h, 1 + Stream(s1).integer(dim_h), s1)
        r2 = random_density(dim_h, 1 + Stream(s2).integer(dim_h), s2)
        phi1 = canonical_purification(r1, dim_k)
        phi2 = canonical_purification(r2, dim_k)
        res = transition.uhlmann_align(phi1, phi2)
        f = metrics.fidelity(r1, r2)
        agree.add(agree.tol - abs(res.achieved_overlap_sq - f))
        bound.add(res.bound - res.pure_distance)
        chain.add(metrics.trace_distance(r1, r2) - (1.0 - f))

    exact = _Tally("exact_transition", _tol(cfg, 1e-8))
    for t in range(max(trials // 5, 50)):
        dim_h = 2 + t % 3
        dim_k = dim_h + t % 3
        seed = derive_seed(cfg.seed, 41, t)
        rho = random_density(dim_h, 1 + Stream(seed).integer(dim_h), seed)
        phi1 = canonical_purification(rho, dim_k)
        v = random_unitary(dim_k, derive_seed(seed, 1))
        phi2 = transition.apply_k_unitary(phi1, v)
        u = transition.exact_local_transition(phi1, phi2)
        aligned = transition.apply_k_unitary(phi2, u)
        exact.add(exact.tol - distance_up_to_phase(aligned.vec, phi1.vec))
    sweep = transition.verify_transition_bound(
        max(trials // 5, 50), (3, 4), derive_seed(cfg.seed, 42)
    )
    sweep_check = CheckResult(
        "transition_bound_sweep",
        sweep["trials"],
        sweep["min_slack"],
        sweep["violations"],
        {
            "min_chain_slack": sweep["min_chain_slack"],
            "worst_instance_seed": sweep["worst_instance_seed"],
        },
    )
    return [agree.result(), bound.result(), chain.result(), exact.result(), sweep_check]


# ---------------------------------------------------------------------------


def rac_suite(cfg: SuiteConfig) -> list[CheckResult]:
    out = []
    success_target = rac.OPTIMAL_TWO_BIT_SUCCESS
    oracle_success, bloch = rac.optimize_rac(2, seed=derive_seed(cfg.seed, 50), starts=2)
    spec2 = rac.rac_protocol(2, [rac.bloch_to_ket(b) for b in bloch])
    report2 = rac.rac_lower_bound_check(spec2, 2)
    protocol_success = 1.0 - report2.eps
    found = _Tally("rac_n2_success", _tol(cfg, 1e-3))
    found.add(found.tol - abs(protocol_success - success_target))
    found.add(found.tol - abs(oracle_success - success_target))
    found.details = {
        "oracle_success": float(oracle_success),
        "protocol_success": float(protocol_success),
        "eps": float(report2.eps),
        "target": float(success_target),
    }
    out.append(found.result())

    oracle3, bloch3 = rac.optimize_rac(3, seed=derive_seed(cfg.seed, 51), starts=3)
    spec3 = rac.rac_protocol(3, [rac.bloch_to_ket(b) for b in bloch3])
    report3 = rac.rac_lower_bound_check(spec3, 3)
    oracle_values = {"rac_bound_n2": oracle_success, "rac_bound_n3": oracle3}
    for label, rep in (("rac_bound_n2", report2), ("rac_bound_n3", report3)):
        tally = _Tally(label, 0.0)
        tally.add(rep.slack)
        tally.details = {
            "eps": float(rep.eps),
            "cost_floor": float(rep.cost_floor),
            "m": rep.m,
            "info": float(rep.info),
            "oracle_success": float(oracle_values[label]),
        }
        out.append(tally.result())
        chain = _Tally(label.replace("bound", "chain"), _tol(cfg, 1e-9))
        for slack in rep.chain_slacks():
            chain.add(slack)
        chain.add(rep.min_prefix_fano_slack)
        out.append(chain.result())

    copy_spec = rac.classical_copy_protocol(cfg.n)
    copy_rep = rac.rac_lower_bound_check(copy_spec, cfg.n)
    equality = _Tally("classical_copy_equality", _tol(cfg, 1e-9))
    equality.add(equality.tol - abs(copy_rep.slack))
    equality.add(equality.tol - copy_rep.eps)
    equality.details = {"eps": float(copy_rep.eps), "m": copy_rep.m, "n": cfg.n}
    out.append(equality.result())
    return out


# ---------------------------------------------------------------------------

_PIPELINE_STYLES = ("copy_first", "constant", "parity", "rotation")


def reduction_suite(cfg: SuiteConfig) -> list[CheckResult]:
    independence = _Tally("first_message_independence", _tol(cfg, 1e-9))
    align_bound = _Tally("alignment_error_bound", _tol(cfg, 1e-8))
    info_bound = _Tally("info_error_bound", _tol(cfg, 1e-8))
    sim_equiv = _Tally("simulation_equivalence", _tol(cfg, 1e-8))
    rounds = _Tally("round_reduction", 0.0)
    budget = _Tally("message_budget", 0.0)
    info_budget = _Tally("message_info_budget", _tol(cfg, 1e-9))
    sup_cls = _Tally("superposed_vs_classical", _tol(cfg, 1e-12))
    residual = _Tally("transition_residual", _tol(cfg, 1e-8))
    for style in _PIPELINE_STYLES:
        for j in (0, 1):
            rep = reduction.run_pipeline(style, j)
            independence.add(independence.tol - rep.first.mu_j_prime)
            align_bound.add(rep.first.alignment_bound_slack)
            info_bound.add(rep.first.info_bound_slack)
            sim_equiv.add(sim_equiv.tol - rep.drop.max_outcome_tv)
            rounds.add(
                0.0
                if rep.drop.rounds_after == rep.drop.rounds_before - 1
                else -1.0
            )
            budget.add(rep.drop.budget - rep.drop.message_qubits_after)
            info_budget.add(rep.ell1 - sum(rep.mus))
            info_budget.add(rep.joint_info - sum(rep.mus))
            info_budget.add(rep.ell1 - rep.joint_info)
            sup_cls.add(
                sup_cls.tol - abs(rep.superposed_error - rep.classical_error)
            )
            residual.add(residual.tol - rep.drop.max_transition_residual)
    return [
        t.result()
        for t in (
            independence,
            align_bound,
            info_bound,
            sim_equiv,
            rounds,
            budget,
            info_budget,
            sup_cls,
            residual,
        )
    ]


SUITES = {
    "metrics": metrics_suite,
    "info": info_suite,
    "encoding": encoding_suite,
    "transition": transition_suite,
    "rac": rac_suite,
    "reduction": reduction_suite,
}


def run_suite(name: str, cfg: SuiteConfig) -> list[CheckResult]:
    if name == "all":
        out = []
        for key in SUITES:
            out.extend(SUITES[key](cfg))
        return out
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}")
    return SUITES[name](cfg)
