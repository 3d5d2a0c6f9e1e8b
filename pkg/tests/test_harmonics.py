import math

import numpy as np
import pandas as pd
import pytest

from entwit.exceptions import ArgumentError
from entwit.hilbert.states import basis_state, ghz, psi_b, rho_mix
from entwit.models.enums import ScanObservable
from entwit.witness.harmonics import (
    check_grid,
    harmonic_extract,
    harmonics,
    phi_grid,
    scan_observable,
    synthesize,
)


def test_phi_grid():
    grid = phi_grid(4)
    assert np.allclose(grid, [0, math.pi / 2, math.pi, 3 * math.pi / 2])
    with pytest.raises(ArgumentError):
        phi_grid(0)


def test_check_grid_rejects_undersampled_and_uneven_grids():
    with pytest.raises(ArgumentError, match="undersampled"):
        check_grid(phi_grid(6), max_frequency=3)
    uneven = phi_grid(16)
    uneven[5] += 0.01
    with pytest.raises(ArgumentError, match="non-uniform"):
        check_grid(uneven)
    check_grid(phi_grid(7), max_frequency=3)


def test_recovers_synthetic_components(rng):
    phis = phi_grid(16)
    for _ in range(20):
        components = {f: (rng.uniform(0.1, 1.0), rng.uniform(-math.pi, math.pi)) for f in (1, 2, 3)}
        values = synthesize(phis, components)
        for f, (amplitude, phase) in components.items():
            got_amplitude, got_phase = harmonic_extract(list(zip(phis, values)), f)
            assert got_amplitude == pytest.approx(amplitude, abs=1e-9)
            assert math.cos(got_phase - phase) == pytest.approx(1.0, abs=1e-9)


def test_zero_frequency_is_the_mean():
    phis = phi_grid(8)
    values = 0.3 + np.cos(phis)
    amplitude, phase = harmonic_extract(pd.DataFrame({"phi": phis, "value": values}), 0)
    assert amplitude == pytest.approx(0.3)
    assert phase == pytest.approx(0.0, abs=1e-12)


def test_frequency_out_of_range():
    samples = list(zip(phi_grid(16), np.zeros(16)))
    with pytest.raises(ArgumentError):
        harmonic_extract(samples, 4)
    with pytest.raises(ArgumentError):
        harmonic_extract(samples, -1)


def test_sackett_scan_of_ghz():
    scan = scan_observable(ghz(3), ScanObservable.SACKETT_PLUS)
    assert list(scan.columns) == ["phi", "value"]
    assert len(scan) == 16
    components = harmonics(scan)
    assert components[3][0] == pytest.approx(1.0, abs=1e-9)
    assert components[1][0] == pytest.approx(0.0, abs=1e-9)


def test_difference_signal_distinguishes_coherence():
    amplitude, _ = harmonic_extract(scan_observable(psi_b(), ScanObservable.BELL_DIFF), 1, max_frequency=1)
    assert amplitude == pytest.approx(1.0, abs=1e-9)

    amplitude, phase = harmonic_extract(scan_observable(rho_mix(), ScanObservable.BELL_DIFF), 1, max_frequency=1)
    assert amplitude == pytest.approx(1.0, abs=1e-9)
    assert abs(phase) == pytest.approx(math.pi, abs=1e-9)

    amplitude, _ = harmonic_extract(scan_observable(basis_state("↑↑↑"), ScanObservable.BELL_DIFF), 1, max_frequency=1)
    assert amplitude == pytest.approx(0.0, abs=1e-12)


def test_undersampled_scan():
    with pytest.raises(ArgumentError, match="undersampled"):
        scan_observable(ghz(3), ScanObservable.SACKETT_PLUS, points=6)
    assert len(scan_observable(ghz(3), ScanObservable.BELL_DIFF, points=3)) == 3
