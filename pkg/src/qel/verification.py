"""Named verification suites comparing every closed form against the oracle.

Each check records its tolerance and the measured delta; a delta may be a
signed margin (negative when passing) for threshold-style checks.  The
report serializes to the qel/1 JSON schema emitted by the command line.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import attacks, channel, oracle
from .infotheory import TwoStateEnsemble, levitin_information
from .linalg import Operator

DEFAULT_SEED = 20240901
DEFAULT_PULSES = 10**6


@dataclass(frozen=True)
class CheckResult:
    name: str
    tolerance: float
    delta: float

    def __post_init__(self):
        object.__setattr__(self, "tolerance", float(self.tolerance))
        object.__setattr__(self, "delta", float(self.delta))

    @property
    def passed(self) -> bool:
        return math.isfinite(self.delta) and self.delta <= self.tolerance


@dataclass(frozen=True)
class SuiteResult:
    name: str
    checks: tuple

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


@dataclass(frozen=True)
class VerificationReport:
    seed: int
    n_pulses: int
    suites: tuple

    @property
    def passed(self) -> bool:
        return all(s.passed for s in self.suites)

    def failing_checks(self) -> list[str]:
        return [f"{s.name}/{c.name}" for s in self.suites for c in s.checks if not c.passed]

    def to_dict(self) -> dict:
        return {
            "schema": "qel/1",
            "kind": "verification_report",
            "seed": self.seed,
            "n_pulses": self.n_pulses,
            "passed": self.passed,
            "suites": [
                {
                    "name": s.name,
                    "passed": s.passed,
                    "checks": [
                        {
                            "name": c.name,
                            "tolerance": c.tolerance,
                            "delta": c.delta,
                            "passed": c.passed,
                        }
                        for c in s.checks
                    ],
                }
                for s in self.suites
            ],
        }


_BETA_GRID = np.linspace(0.02, 0.35, 12)
_GAMMA_GRID_COEFF = np.linspace(0.0, math.pi, 50)
_GAMMA_GRID_FAST = np.linspace(0.0, math.pi, 13)


def _suite_isometry(seed: int) -> SuiteResult:
    defect_a = 0.0
    singlet_a = 0.0
    for i, beta in enumerate(_BETA_GRID):
        rep = oracle.simulate_strategy_a(float(beta), eta_det=0.5, rng_seed=seed + i)
        defect_a = max(defect_a, rep.deltas["isometry_defect"])
        singlet_a = max(singlet_a, rep.deltas["bob_singlet_weight"])
    defect_b = 0.0
    singlet_b = 0.0
    for i, gamma in enumerate(_GAMMA_GRID_FAST):
        rep = oracle.simulate_strategy_b(float(gamma), eta_det=0.5, rng_seed=seed + i)
        defect_b = max(defect_b, rep.deltas["isometry_defect"])
        singlet_b = max(singlet_b, rep.deltas["bob_singlet_weight"])
    return SuiteResult("isometry", (
        CheckResult("universal_cloner_norm_preservation", 1e-12, defect_a),
        CheckResult("universal_cloner_symmetric_output", 1e-12, singlet_a),
        CheckResult("phase_covariant_norm_preservation", 1e-12, defect_b),
        CheckResult("phase_covariant_symmetric_output", 1e-12, singlet_b),
    ))


def _suite_probe_a(seed: int) -> SuiteResult:
    probe = overlap = weight = info = spread = 0.0
    for i, beta in enumerate(_BETA_GRID):
        rep = oracle.simulate_strategy_a(float(beta), eta_det=0.3, rng_seed=seed + i)
        probe = max(probe, rep.deltas["probe_vs_closed_form"])
        overlap = max(overlap, rep.deltas["overlap_vs_closed_form"])
        weight = max(weight, rep.deltas["product_block_weight_vs_2d"])
        info = max(info, rep.deltas["information_vs_measurement_search"])
        spread = max(spread, rep.deltas["error_rate_spread"])
    return SuiteResult("probe_a", (
        CheckResult("probe_states_vs_closed_form", 1e-9, probe),
        CheckResult("probe_overlap_vs_closed_form", 1e-9, overlap),
        CheckResult("product_block_weight_vs_2d", 1e-9, weight),
        CheckResult("information_vs_measurement_search", 1e-6, info),
        CheckResult("signal_independence_of_error_rate", 1e-10, spread),
    ))


def _suite_probe_b_coefficients(seed: int) -> SuiteResult:
    coeff = swap = trace_dev = 0.0
    for i, gamma in enumerate(_GAMMA_GRID_COEFF):
        rep = oracle.simulate_strategy_b(float(gamma), eta_det=0.4, rng_seed=seed + i)
        coeff = max(coeff, rep.deltas["coefficients_vs_closed_form"])
        swap = max(swap, rep.deltas["probe_exchange_symmetry"])
        a, _, c, d, _, f = attacks.strategy_b_coefficients(float(gamma))
        trace_dev = max(trace_dev, abs(a + c + d + f - 16.0))
    return SuiteResult("probe_b_coefficients", (
        CheckResult("probe_entries_vs_coefficients", 1e-9, coeff),
        CheckResult("plus_minus_exchange_symmetry", 1e-12, swap),
        CheckResult("coefficient_trace_identity", 1e-9, trace_dev),
    ))


def _suite_disturbance_maps(seed: int) -> SuiteResult:
    d_b = 0.0
    for i, gamma in enumerate(_GAMMA_GRID_FAST):
        rep = oracle.simulate_strategy_b(float(gamma), eta_det=0.6, rng_seed=seed + i)
        d_b = max(d_b, rep.deltas["disturbance_vs_closed_form"])
    # strategy A calibration roundtrip: requested disturbance -> beta -> measured
    d_a = 0.0
    for d_target in np.linspace(0.01, 0.24, 9):
        params = attacks.clone_a_params_for_disturbance(float(d_target))
        d_a = max(d_a, abs(attacks.clone_a_disturbance(params) - d_target))
    # strategy B curve inversion roundtrip
    d_inv = 0.0
    for d_target in np.linspace(0.0, attacks.STRATEGY_B_MAX_DISTURBANCE, 21):
        gamma = attacks.gamma_for_disturbance(float(d_target))
        d_inv = max(d_inv, abs(attacks.strategy_b_disturbance(gamma) - d_target))
    # observed error roundtrip on a mid-window scenario
    rng = np.random.default_rng(seed)
    d_chan = 0.0
    for _ in range(50):
        mu = rng.uniform(0.05, 0.5)
        eta = rng.uniform(0.1, 0.9)
        window = channel.eta_t_bounds(mu, eta)
        if window.empty:
            continue
        lo, hi = window.loss_db_lower, window.loss_db_upper
        scen = channel.ChannelScenario.from_loss_db(mu, eta, rng.uniform(lo + 0.05, hi - 0.05))
        d0 = rng.uniform(0.0, 0.5)
        e = channel.observed_error_from_disturbance(scen, d0)
        d_chan = max(d_chan, abs(channel.disturbance_for_error(scen, e) - d0))
    return SuiteResult("disturbance_maps", (
        CheckResult("strategy_b_disturbance_vs_simulation", 1e-9, d_b),
        CheckResult("strategy_a_calibration_roundtrip", 1e-9, d_a),
        CheckResult("strategy_b_inversion_roundtrip", 1e-10, d_inv),
        CheckResult("observed_error_roundtrip", 1e-12, d_chan),
    ))


def random_equal_determinant_ensemble(rng: np.random.Generator) -> TwoStateEnsemble:
    """Random pair of qubit states with equal spectra, hence equal determinants."""
    lam = rng.uniform(0.5, 1.0)
    diag = np.diag([lam, 1.0 - lam]).astype(complex)

    def haar_unitary() -> np.ndarray:
        z = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        q, r = np.linalg.qr(z)
        return q @ np.diag(np.diag(r) / np.abs(np.diag(r)))

    u0, u1 = haar_unitary(), haar_unitary()
    return TwoStateEnsemble(Operator(u0 @ diag @ u0.conj().T),
                            Operator(u1 @ diag @ u1.conj().T))


def _suite_levitin(seed: int, n_ensembles: int = 200) -> SuiteResult:
    rng = np.random.default_rng(seed)
    worst = 0.0
    invariance = 0.0
    for i in range(n_ensembles):
        ens = random_equal_determinant_ensemble(rng)
        closed = levitin_information(ens)
        numeric = oracle.numeric_two_state_info(ens.rho0, ens.rho1)
        worst = max(worst, abs(closed - numeric))
        if i % 20 == 0:
            z = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
            q, r = np.linalg.qr(z)
            u = q @ np.diag(np.diag(r) / np.abs(np.diag(r)))
            rotated = TwoStateEnsemble(Operator(u @ ens.rho0.entries @ u.conj().T),
                                       Operator(u @ ens.rho1.entries @ u.conj().T))
            invariance = max(invariance, abs(levitin_information(rotated) - closed))
    return SuiteResult("levitin", (
        CheckResult("closed_form_vs_measurement_search", 1e-6, worst),
        CheckResult("unitary_invariance", 1e-12, invariance),
    ))


def _suite_double_click(seed: int, n_pulses: int) -> SuiteResult:
    scen = channel.ChannelScenario.from_loss_db(0.1, 0.2, 5.0)
    d = 0.1
    checks = []
    stats_pns = oracle.monte_carlo_protocol(scen, "PNS", d, n_pulses=n_pulses, seed=seed)
    checks.append(CheckResult("pns_matched_basis_double_clicks", 0.0,
                              float(stats_pns.double_clicks_matched)))
    checks.append(CheckResult("pns_any_double_clicks", 0.0,
                              float(stats_pns.double_clicks_matched
                                    + stats_pns.double_clicks_mismatched)))
    for attack in ("CloneA", "CloneB"):
        stats = oracle.monte_carlo_protocol(scen, attack, d, n_pulses=n_pulses, seed=seed + 1)
        # signed margins: pass when the rate clears five standard errors
        margin_m = 5.0 * stats.double_matched_rate_se - stats.double_matched_rate
        margin_x = 5.0 * stats.double_mismatched_rate_se - stats.double_mismatched_rate
        checks.append(CheckResult(f"{attack.lower()}_matched_double_rate_above_5_sigma", 0.0, margin_m))
        checks.append(CheckResult(f"{attack.lower()}_mismatched_double_rate_above_5_sigma", 0.0, margin_x))
    for attack, stats in (("pns", stats_pns),):
        dev = abs(stats.raw_click_rate - stats.expected_raw_click_rate)
        checks.append(CheckResult(f"{attack}_raw_click_rate_within_3_sigma", 0.0,
                                  dev - 3.0 * stats.raw_click_rate_se))
    return SuiteResult("double_click", tuple(checks))


def _suite_error_map_identity(seed: int, n_scenarios: int = 1000) -> SuiteResult:
    rng = np.random.default_rng(seed)
    worst_rel = 0.0
    count = 0
    while count < n_scenarios:
        mu = rng.uniform(0.02, 0.8)
        eta = rng.uniform(0.05, 0.95)
        window = channel.eta_t_bounds(mu, eta)
        if window.empty:
            continue
        lo, hi = window.loss_db_lower, window.loss_db_upper
        margin = 0.01 * (hi - lo)
        scen = channel.ChannelScenario.from_loss_db(mu, eta, rng.uniform(lo + margin, hi - margin))
        d = rng.uniform(0.001, 0.5)
        composed = channel.observed_error_from_disturbance(scen, d)
        closed = channel.observed_error_closed_form(scen, d)
        worst_rel = max(worst_rel, abs(closed - composed) / composed)
        count += 1
    return SuiteResult("error_map_identity", (
        CheckResult("closed_form_vs_composition_relative", 1e-12, worst_rel),
    ))


def run_verification(seed: int = DEFAULT_SEED, n_pulses: int = DEFAULT_PULSES) -> VerificationReport:
    """Run every verification suite and collect the deltas."""
    suites = (
        _suite_isometry(seed),
        _suite_probe_a(seed),
        _suite_probe_b_coefficients(seed),
        _suite_disturbance_maps(seed),
        _suite_levitin(seed),
        _suite_double_click(seed, n_pulses),
        _suite_error_map_identity(seed),
    )
    return VerificationReport(seed=seed, n_pulses=n_pulses, suites=suites)
