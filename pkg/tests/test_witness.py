import math

import numpy as np
import pytest

from entwit.bell.operators import klyshko_operator, random_party_settings, reference_settings
from entwit.exceptions import ArgumentError, DimensionMismatchError, ValidationError
from entwit.hilbert.operators import expectation
from entwit.hilbert.states import (
    basis_state,
    bipartitions,
    eq5_state,
    ghz,
    psi_b,
    random_biseparable_mixture,
    random_biseparable_pure,
    random_product_state,
)
from entwit.models.config import OptimizerConfig
from entwit.models.enums import Plane, ThresholdStatus, Verdict
from entwit.models.measurement import MeasuredValue, klyshko_thresholds, threshold_status
from entwit.witness.conditions import (
    classify,
    condition_a,
    condition_a_from_data,
    condition_b,
    fidelity,
    fidelity_components,
    fidelity_from_components,
    ghz_class_pair,
    ghz_class_targets,
    resolve_target,
)
from entwit.witness.optimizer import SettingsOptimizer, golden_section_max, optimize_settings


def test_thresholds_for_three_parties():
    local, partite, top = klyshko_thresholds(3)
    assert local == 2.0
    assert partite == pytest.approx(2 ** 1.5)
    assert top == pytest.approx(4.0)


def test_threshold_status():
    assert threshold_status(MeasuredValue(3.0, 0.1), 2.0) is ThresholdStatus.ABOVE
    assert threshold_status(MeasuredValue(1.0, 0.1), 2.0) is ThresholdStatus.BELOW
    assert threshold_status(MeasuredValue(2.05, 0.1), 2.0) is ThresholdStatus.STRADDLES
    # Совпадение с порогом не превышает его
    assert threshold_status(MeasuredValue.exact(2.0), 2.0) is ThresholdStatus.BELOW


@pytest.mark.parametrize("value, sigma, expected", [
    (3.5, 0.1, Verdict.N_PARTITE_WITNESSED),
    (2.83, 0.09, Verdict.LOCAL_REALISM_VIOLATED),
    (2.0, 0.1, Verdict.INCONCLUSIVE),
    (1.5, 0.1, Verdict.NO_VIOLATION),
])
def test_classify(value, sigma, expected):
    assert classify(MeasuredValue(value, sigma), 3).classification is expected


def test_measured_mermin_value():
    verdict = condition_a_from_data(MeasuredValue(2.83, 0.09), 3)
    assert verdict.local_realism_status is ThresholdStatus.ABOVE
    assert verdict.n_partite_status is ThresholdStatus.STRADDLES
    assert verdict.summary() == "local realism violated; 3-particle witness: inconclusive"
    assert verdict.violation_factor == pytest.approx(1.415)
    assert verdict.witness_factor == pytest.approx(math.sqrt(2))


def test_condition_a_from_data_uses_modulus():
    verdict = condition_a_from_data(MeasuredValue(-3.9, 0.01), 3)
    assert verdict.classification is Verdict.N_PARTITE_WITNESSED
    with pytest.raises(ArgumentError):
        condition_a_from_data(MeasuredValue(3.0, 0.1), 1)


def test_condition_a_on_states():
    assert condition_a(ghz(3), reference_settings("ghz")).classification is Verdict.N_PARTITE_WITNESSED
    verdict = condition_a(eq5_state(), reference_settings("eq5"))
    assert verdict.tested_value.value == pytest.approx(2 * math.sqrt(2), abs=1e-9)
    assert verdict.classification is Verdict.LOCAL_REALISM_VIOLATED
    assert not verdict.n_partite_witnessed


def test_condition_a_dimension_mismatch(rng):
    with pytest.raises(DimensionMismatchError):
        condition_a(ghz(3), random_party_settings(2, rng))


def test_fidelity_and_condition_b():
    assert fidelity(ghz(3), ghz(3)) == pytest.approx(1.0)
    assert condition_b(ghz(3), ghz(3))
    assert fidelity(basis_state("↑↑↑"), ghz(3)) == pytest.approx(0.5)
    assert not condition_b(basis_state("↑↑↑"), ghz(3))


def test_fidelity_rejects_mixed_or_mismatched_target():
    with pytest.raises(ArgumentError):
        fidelity(ghz(3), eq5_state())
    with pytest.raises(DimensionMismatchError):
        fidelity(ghz(3), ghz(2))


def test_fidelity_from_components():
    report = fidelity_from_components(MeasuredValue(0.4, 0.01), MeasuredValue(0.4, 0.01), MeasuredValue(0.35, 0.01))
    assert report.fidelity.value == pytest.approx(0.75)
    assert report.fidelity.sigma == pytest.approx(math.sqrt(0.5 * 0.01 ** 2 + 0.01 ** 2))
    assert report.condition_b_met


def test_fidelity_components_reject_excess_population():
    with pytest.raises(ValidationError):
        fidelity_from_components(MeasuredValue(0.7), MeasuredValue(0.6), MeasuredValue(0.1))


def test_fidelity_components_from_state():
    up, down = ghz_class_pair("uud")
    assert (up.label, down.label) == (2, 7)
    report = fidelity_components(psi_b(), up, down)
    assert report.fidelity.value == pytest.approx(1.0)


def test_ghz_class_targets():
    targets = ghz_class_targets(3)
    assert len(targets) == 8
    assert fidelity(psi_b(), targets["uud+"]) == pytest.approx(1.0)
    assert fidelity(psi_b(), targets["uud-"]) == pytest.approx(0.0, abs=1e-12)
    assert fidelity(resolve_target("psi-b"), resolve_target("uud+")) == pytest.approx(1.0)
    with pytest.raises(ArgumentError):
        resolve_target("w")


def test_biseparable_states_never_exceed_half(rng):
    targets = list(ghz_class_targets(3).values())
    blocks = [block for block, _ in bipartitions(3)]
    for k in range(200):
        state = random_biseparable_pure(3, blocks[k % 3], rng)
        assert max(fidelity(state, t) for t in targets) <= 0.5 + 1e-9
    for _ in range(50):
        state = random_biseparable_mixture(3, rng, pure=True)
        assert max(fidelity(state, t) for t in targets) <= 0.5 + 1e-9


def test_klyshko_bounds(rng):
    for _ in range(100):
        settings = random_party_settings(3, rng)
        operator = klyshko_operator(settings).matrix
        assert abs(expectation(random_product_state(3, rng), operator)) <= 2 + 1e-9
        assert abs(expectation(random_biseparable_mixture(3, rng), operator)) <= 2 ** 1.5 + 1e-9


def test_golden_section_finds_maximum():
    x, value = golden_section_max(lambda t: -(t - 1.3) ** 2, 0.0, 3.0, 1e-10)
    assert x == pytest.approx(1.3, abs=1e-6)
    assert value == pytest.approx(0.0, abs=1e-10)


@pytest.mark.parametrize("state_factory", [lambda: ghz(3), psi_b])
def test_optimizer_reaches_maximal_violation(state_factory):
    settings, value = optimize_settings(state_factory(), 3, Plane.XY)
    assert value >= 4 - 1e-6
    recomputed = abs(expectation(state_factory(), klyshko_operator(settings).matrix))
    assert recomputed == pytest.approx(value, abs=1e-9)


def test_optimizer_xz_plane_stays_classical():
    # В плоскости xz средние ψ_B факторизуются, нарушение невозможно
    _, value = optimize_settings(psi_b(), 3, Plane.XZ)
    assert value <= 2 + 1e-9
    assert value >= 2 - 1e-6


def test_optimizer_unrestricted_directions():
    _, value = optimize_settings(ghz(3), plane=None, config=OptimizerConfig(restarts=4))
    assert value >= 4 - 1e-4


def test_optimizer_is_deterministic():
    first_settings, first = SettingsOptimizer().optimize(psi_b(), Plane.XY)
    second_settings, second = SettingsOptimizer().optimize(psi_b(), Plane.XY)
    assert first == second
    assert np.array_equal(first_settings.as_array(), second_settings.as_array())


def test_optimizer_dimension_mismatch():
    with pytest.raises(DimensionMismatchError):
        optimize_settings(ghz(3), n=4)
