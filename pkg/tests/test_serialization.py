import math

import numpy as np
import pandas as pd
import pytest

from entwit.bell.operators import klyshko_operator, reference_settings
from entwit.exceptions import ValidationError
from entwit.hilbert.operators import expectation
from entwit.hilbert.states import eq5_state, ghz, psi_b
from entwit.models.enums import Plane, ScanObservable, StateKind
from entwit.models.measurement import MeasuredValue
from entwit.models.settings import PlanarSettings
from entwit.utils.export import export_table_to_csv, read_scan_csv, write_scan_csv
from entwit.utils.formatting import fmt, fmt_quantity, render_report
from entwit.utils.serialization import (
    load_settings,
    load_state,
    save_settings,
    save_state,
    settings_from_document,
    state_from_document,
    state_to_document,
)
from entwit.witness.harmonics import scan_observable


def test_state_files_keep_states(tmp_path):
    for state in (ghz(3), psi_b(), eq5_state()):
        loaded = load_state(save_state(state, tmp_path / "state.json"))
        assert loaded.kind is state.kind
        assert np.allclose(loaded.rho, state.rho, atol=1e-15)


def test_pure_document_layout():
    document = state_to_document(ghz(2))
    assert document["kind"] == "pure"
    assert document["ket"][0] == pytest.approx([1 / math.sqrt(2), 0.0])
    assert len(document["rho"]) == 4


@pytest.mark.parametrize("document, fragment", [
    ({"n_parties": 1, "kind": "pure", "ket": [[1, 0]]}, "ket length"),
    ({"n_parties": 1, "kind": "density"}, "requires 'rho'"),
    ({"n_parties": 1, "kind": "mixed", "ket": [[1, 0], [0, 0]]}, "kind"),
    ({"n_parties": 0, "kind": "pure", "ket": [[1, 0]]}, "n_parties"),
    ({"n_parties": 1, "kind": "pure", "ket": [[1, 0], [1, 0]]}, "unit-norm"),
    ({"n_parties": 1, "kind": "density", "rho": [[[1, 0], [0, 0]], [[0, 0], [1, 0]]]}, "trace"),
])
def test_state_document_errors(document, fragment):
    with pytest.raises(ValidationError, match=fragment):
        state_from_document(document)


def test_pure_document_with_inconsistent_rho():
    document = state_to_document(ghz(2))
    document["rho"] = [[[0.25, 0.0]] * 4 for _ in range(4)]
    with pytest.raises(ValidationError, match="pure-state invariant"):
        state_from_document(document)


def test_density_document_kind():
    state = state_from_document({"n_parties": 1, "kind": "density", "rho": [[[0.5, 0], [0, 0]], [[0, 0], [0.5, 0]]]})
    assert state.kind is StateKind.DENSITY


def test_settings_files(tmp_path):
    settings = reference_settings("ghz")
    loaded = load_settings(save_settings(settings, tmp_path / "settings.json"))
    assert np.allclose(loaded.as_array(), settings.as_array())

    planar = PlanarSettings(Plane.XY, ((-math.pi / 6, math.pi / 3),) * 3)
    loaded = load_settings(save_settings(planar, tmp_path / "planar.json"))
    value = expectation(ghz(3), klyshko_operator(loaded).matrix)
    assert abs(value) == pytest.approx(4.0)


def test_settings_document_errors():
    with pytest.raises(ValidationError, match="angles are allowed only"):
        settings_from_document({"parties": [{"a": 0.0, "a_prime": 1.0}]})
    with pytest.raises(ValidationError, match="unit-norm"):
        settings_from_document({"parties": [{"a": [1, 1, 0], "a_prime": [0, 0, 1]}]})
    with pytest.raises(ValidationError, match="parties"):
        settings_from_document({"plane": "xy", "parties": []})


def test_scan_csv(tmp_path):
    scan = scan_observable(ghz(3), ScanObservable.SACKETT_MINUS)
    path = write_scan_csv(scan, tmp_path / "scans" / "sackett.csv")
    assert path.read_text(encoding="utf-8").splitlines()[0] == "phi,value"
    loaded = read_scan_csv(path)
    assert np.allclose(loaded["value"], scan["value"], atol=1e-15)


def test_scan_csv_errors(tmp_path):
    with pytest.raises(ValidationError):
        write_scan_csv(pd.DataFrame({"angle": [0.0], "value": [1.0]}), tmp_path / "bad.csv")

    header = tmp_path / "header.csv"
    header.write_text("angle,value\n0,1\n", encoding="utf-8")
    with pytest.raises(ValidationError, match="expected header"):
        read_scan_csv(header)

    text = tmp_path / "text.csv"
    text.write_text("phi,value\n0,one\n", encoding="utf-8")
    with pytest.raises(ValidationError, match="non-numeric"):
        read_scan_csv(text)


def test_export_table(tmp_path):
    assert export_table_to_csv([], "empty", tmp_path) is None
    path = export_table_to_csv([{"name": "w", "value": 0.26}], "table", tmp_path)
    assert path.read_text(encoding="utf-8").splitlines() == ["name,value", "w,0.26"]


def test_formatting():
    assert fmt(math.sqrt(2)) == "1.41421356237"
    assert fmt_quantity(MeasuredValue(0.26, 0.0346)) == "0.26 ± 0.0346"
    assert fmt_quantity(True) == "True"
    report = render_report("Pan", [("mermin", MeasuredValue(2.83, 0.09), 2.83)])
    assert "Pan" in report
    assert "mermin" in report
