import json
import math

import numpy as np
import pytest

from entwit.bell.operators import mermin_operator
from entwit.config.published_values import RAUSCHENBEUTEL_POPULATIONS
from entwit.exceptions import ArgumentError, ValidationError
from entwit.experiments import (
    Reproducer,
    analyze_pan,
    analyze_rauschenbeutel,
    build_w_state,
    demonstrate_rho_mix,
    fit_w_state,
    load_bundled_record,
    load_record,
    load_record_file,
    worst_case_amplitude,
    worst_case_state,
)
from entwit.experiments.bouwmeester import (
    conditional_interference_operator,
    interference_operator,
    targets_from_record,
)
from entwit.experiments.rauschenbeutel import contamination_amplitude, difference_signal_amplitude
from entwit.hilbert.operators import expectation, matrix_element, population
from entwit.hilbert.states import ghz, ghz_class_state, random_density_state
from entwit.models.config import AnalysisConfig, ScanConfig
from entwit.models.enums import Sign, ThresholdStatus, Verdict
from entwit.models.measurement import MeasuredValue
from entwit.models.records import ExperimentRecord, PopulationTable
from entwit.utils.validation import validate_density
from entwit.witness.conditions import fidelity


def test_pan_analysis():
    report = analyze_pan(load_bundled_record("pan"))
    assert report.verdict.classification is Verdict.LOCAL_REALISM_VIOLATED
    assert report.verdict.n_partite_status is ThresholdStatus.STRADDLES
    assert report.re_offdiag.value == pytest.approx(-0.35375)
    assert report.abs_re_offdiag.value == pytest.approx(0.35375)
    assert report.abs_re_offdiag.sigma == pytest.approx(0.01125)
    assert report.hypothetical.fidelity.value == pytest.approx(0.75375)
    assert report.hypothetical.condition_b_met


def test_pan_inference_recovers_state_fidelity(rng):
    mermin = mermin_operator().matrix
    targets = (ghz(3), ghz_class_state("uuu", Sign.MINUS))
    for _ in range(50):
        state = random_density_state(3, rng)
        record = ExperimentRecord("synthetic", mermin_value=MeasuredValue(expectation(state, mermin)))
        report = analyze_pan(record, population(state, 1), population(state, 8))
        assert report.re_offdiag.value == pytest.approx(matrix_element(state, 1, 8).real, abs=1e-12)
        best = max(fidelity(state, target) for target in targets)
        assert report.hypothetical.fidelity.value == pytest.approx(best, abs=1e-12)


def test_pan_requires_mermin_value():
    with pytest.raises(ArgumentError):
        analyze_pan(load_bundled_record("rauschenbeutel"))


def test_worst_case_amplitude():
    populations = PopulationTable.from_values(RAUSCHENBEUTEL_POPULATIONS, sigma=0.01)
    report = worst_case_amplitude(populations, MeasuredValue(0.28, 0.04))
    assert (report.alpha / 2).value == pytest.approx(0.03)
    assert (report.beta / 2).value == pytest.approx(0.04)
    assert (report.gamma / 2).value == pytest.approx(0.06)
    assert report.selected_labels == {"alpha": 8, "beta": 4, "gamma": 3}
    assert report.w.value == pytest.approx(0.26)
    assert report.w.sigma == pytest.approx(0.02 * math.sqrt(3))
    assert report.corrected_offdiag.value == pytest.approx(0.02)
    assert report.corrected_offdiag.sigma == pytest.approx(math.hypot(0.04, 0.02 * math.sqrt(3)))
    assert report.corrected_fidelity.value == pytest.approx(0.30)
    assert report.corrected_fidelity.sigma == pytest.approx(0.0274, abs=1e-4)


def test_worst_case_rejects_bad_table():
    populations = PopulationTable.from_values([0.5] * 8)
    with pytest.raises(ValidationError, match="sum"):
        worst_case_amplitude(populations, MeasuredValue(0.28, 0.04))


def test_rauschenbeutel_analysis():
    report = analyze_rauschenbeutel(load_bundled_record("rauschenbeutel"))
    assert report.naive.fidelity.value == pytest.approx(0.43)
    assert report.condition_b_unmet
    # Пересчёт не воспроизводит заявленную точность, это попадает в заметки
    assert any("quoted" in note for note in report.notes)


def test_worst_case_state_is_valid_and_additive():
    state = worst_case_state(RAUSCHENBEUTEL_POPULATIONS)
    assert validate_density(state).accepted
    assert population(state, 7) == pytest.approx(0.36)
    assert matrix_element(state, 1, 8).real == pytest.approx(0.03)
    assert matrix_element(state, 2, 7) == pytest.approx(0.0)

    coherent = worst_case_state(RAUSCHENBEUTEL_POPULATIONS, coherence=0.005)
    assert difference_signal_amplitude(coherent) == pytest.approx(contamination_amplitude(coherent), abs=1e-9)
    assert contamination_amplitude(coherent) == pytest.approx(0.27)


def test_worst_case_state_arguments():
    with pytest.raises(ArgumentError):
        worst_case_state([0.1] * 7)
    with pytest.raises(ArgumentError):
        worst_case_state([-0.1] + [0.1] * 7)


def test_rho_mix_mimics_coherent_signal():
    report = demonstrate_rho_mix()
    assert report.populations == pytest.approx((0.25, 0.25))
    assert report.amplitude == pytest.approx(1.0, abs=1e-9)
    assert report.procedure_fidelity == pytest.approx(0.75, abs=1e-9)
    assert report.abs_element_27 == pytest.approx(0.25)
    assert report.phase_matched_fidelity == pytest.approx(0.5)


def test_w_state():
    state = build_w_state(3 / 8)
    assert validate_density(state).accepted
    assert population(state, 2) == pytest.approx(13 / 32)
    assert population(state, 7) == pytest.approx(13 / 32)
    assert population(state, 4) == pytest.approx(3 / 32)
    assert population(state, 1) == pytest.approx(0.0)
    with pytest.raises(ArgumentError):
        build_w_state(1.5)


def test_w_state_identities_over_alpha_grid():
    for alpha in np.linspace(0.0, 1.0, 101):
        state = build_w_state(alpha)
        assert expectation(state, interference_operator()) == pytest.approx(-alpha / 2, abs=1e-12)
        assert expectation(state, conditional_interference_operator()) == pytest.approx(0.0, abs=1e-12)


def test_w_state_fit():
    report = fit_w_state()
    assert report.alpha == pytest.approx(3 / 8, abs=1e-4)
    assert report.predicted["a3"] == pytest.approx(-3 / 16, abs=1e-4)
    assert report.predicted["a4"] == pytest.approx(0.0, abs=1e-9)
    assert report.max_fitted_residual < 1e-3
    assert "a1_p2" not in report.unmet_constraints
    assert "a2_p4" in report.unmet_constraints


def test_w_fit_from_bundled_record():
    targets = targets_from_record(load_bundled_record("bouwmeester"))
    assert targets["a3"].value == pytest.approx(-3 / 16)
    assert fit_w_state(targets).alpha == pytest.approx(3 / 8, abs=1e-4)
    with pytest.raises(ArgumentError):
        fit_w_state({"a1": MeasuredValue(0.4)})


@pytest.mark.parametrize("document, fragment", [
    ({"name": "x", "populations": [{"value": 0.125}] * 7}, "populations"),
    ({"name": "x", "mermin_value": {"value": 2.8, "sigma": -1}}, "mermin_value.sigma"),
    ({"name": "x", "unknown": 1, "mermin_value": {"value": 2.8}}, "unknown"),
    ({"name": "x"}, "at least one measurement"),
])
def test_record_schema_errors(document, fragment):
    with pytest.raises(ValidationError, match=fragment):
        load_record(document)


def test_record_file_errors(tmp_path):
    broken = tmp_path / "broken.json"
    broken.write_text("{not json", encoding="utf-8")
    with pytest.raises(ValidationError, match="invalid JSON"):
        load_record_file(broken)
    with pytest.raises(ValidationError, match="not found"):
        load_record_file(tmp_path / "missing.json")
    with pytest.raises(ArgumentError):
        load_bundled_record("aspect")


def test_data_dir_override(tmp_path, monkeypatch):
    record = {"name": "pan", "mermin_value": {"value": 3.5, "sigma": 0.1}}
    (tmp_path / "pan.json").write_text(json.dumps(record), encoding="utf-8")
    monkeypatch.setenv("ENTWIT_DATA_DIR", str(tmp_path))
    report = analyze_pan(load_bundled_record("pan"))
    assert report.verdict.classification is Verdict.N_PARTITE_WITNESSED


def test_reproducer_selected_groups(tmp_path):
    reproducer = Reproducer()
    report = reproducer.run(["appendix-a", "rho-mix"])
    assert report.groups == ("appendix-a", "rho-mix")
    assert {check.group for check in report.checks} == {"appendix-a", "rho-mix"}
    assert report.passed, [check.name for check in report.failed]

    path = reproducer.write(report, tmp_path)
    document = json.loads(path.read_text(encoding="utf-8"))
    assert document["passed"]
    assert "rho_mix_p2" in document["checks"]
    assert (tmp_path / "reproduction.csv").exists()


def test_reproducer_unknown_group():
    with pytest.raises(ArgumentError):
        Reproducer().run(["appendix-c"])


def test_reproducer_uses_configured_scan_grid():
    assert Reproducer(AnalysisConfig(scan=ScanConfig(grid_points=9))).run(["harmonics", "rho-mix"]).passed
    with pytest.raises(ArgumentError, match="undersampled"):
        Reproducer(AnalysisConfig(scan=ScanConfig(grid_points=5))).run(["harmonics"])


def test_population_slack_is_configurable(tmp_path):
    document = {"name": "loose", "populations": [{"value": 0.13125}] * 8}
    with pytest.raises(ValidationError, match="sum"):
        load_record(document)
    path = tmp_path / "loose.json"
    path.write_text(json.dumps(document), encoding="utf-8")
    assert load_record_file(path, sum_slack=0.1).populations.values[0] == pytest.approx(0.13125)
