"""
φ-сканы наблюдаемых и выделение гармоник c_f = (2/M)·Σ v_k·exp(−i·f·φ_k).
"""

import logging
import math
from typing import Dict, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd

from entwit.bell.observables import bell_signal_difference_observable, sackett_observable
from entwit.config.analysis_config import DEFAULT_SCAN_POINTS, MAX_SCAN_FREQUENCY, PHYSICAL_TOL
from entwit.exceptions import ArgumentError
from entwit.hilbert.operators import expectation
from entwit.models.enums import ScanObservable, Sign
from entwit.models.state import QuantumState

logger = logging.getLogger(__name__)

Samples = Union[pd.DataFrame, Sequence[Tuple[float, float]]]

# Наибольшая частота, присутствующая в сигнале каждой наблюдаемой
OBSERVABLE_MAX_FREQUENCY = {
    ScanObservable.SACKETT_PLUS: 3,
    ScanObservable.SACKETT_MINUS: 3,
    ScanObservable.BELL_DIFF: 1,
}


def phi_grid(points: int = DEFAULT_SCAN_POINTS) -> np.ndarray:
    """Равномерная сетка φ_k = 2πk/M, k = 0..M−1."""
    if points < 1:
        raise ArgumentError(f"phi_grid: number of points must be positive, got {points}")
    return 2 * math.pi * np.arange(points) / points


def _as_arrays(samples: Samples) -> Tuple[np.ndarray, np.ndarray]:
    if isinstance(samples, pd.DataFrame):
        return samples["phi"].to_numpy(dtype=float), samples["value"].to_numpy(dtype=float)
    pairs = np.asarray(samples, dtype=float)
    if pairs.ndim != 2 or pairs.shape[1] != 2:
        raise ArgumentError(f"samples must be (phi, value) pairs, got shape {pairs.shape}")
    return pairs[:, 0], pairs[:, 1]


def check_grid(phis: np.ndarray, max_frequency: int = MAX_SCAN_FREQUENCY) -> None:
    """
    Проверяет, что M ≥ 2·f_max + 1 и сетка равномерна на [0, 2π).

    Raises:
        ArgumentError: Мало точек или неравномерная сетка
    """
    m = len(phis)
    if m < 2 * max_frequency + 1:
        raise ArgumentError(
            f"undersampled scan: {m} points, at least {2 * max_frequency + 1} required for frequencies up to {max_frequency}"
        )
    step = 2 * math.pi / m
    if not 0.0 <= phis[0] < step + PHYSICAL_TOL:
        raise ArgumentError(f"non-uniform grid: first point {phis[0]} outside [0, 2π/M)")
    deviation = np.max(np.abs(phis - (phis[0] + step * np.arange(m))))
    if deviation > PHYSICAL_TOL:
        raise ArgumentError(f"non-uniform grid: deviation {deviation:.3e} from spacing 2π/{m}")


def harmonic_extract(
    samples: Samples,
    frequency: int,
    max_frequency: int = MAX_SCAN_FREQUENCY,
) -> Tuple[float, float]:
    """
    Амплитуда и фаза гармоники f скана.

    Для сигнала Σ A_f cos(fφ + φ_f) с f ≤ max_frequency возвращает (A_f, φ_f).
    Нулевая гармоника нормируется на 1/M, так что для постоянного сигнала c
    возвращается (|c|, arg c).

    Args:
        samples: Пары (φ, значение) или DataFrame с колонками phi, value
        frequency: Неотрицательная частота f ≤ max_frequency
        max_frequency: Наибольшая частота, присутствующая в сигнале

    Returns:
        Tuple[float, float]: (|c_f|, arg c_f)

    Raises:
        ArgumentError: Мало точек, неравномерная сетка или f вне [0, max_frequency]
    """
    if not 0 <= frequency <= max_frequency:
        raise ArgumentError(f"frequency {frequency} outside [0, {max_frequency}]")
    phis, values = _as_arrays(samples)
    check_grid(phis, max_frequency)

    m = len(phis)
    weight = 1.0 / m if frequency == 0 else 2.0 / m
    coefficient = weight * np.sum(values * np.exp(-1j * frequency * phis))
    return float(abs(coefficient)), float(np.angle(coefficient))


def harmonics(samples: Samples, max_frequency: int = MAX_SCAN_FREQUENCY) -> Dict[int, Tuple[float, float]]:
    """Все гармоники 0..max_frequency."""
    return {f: harmonic_extract(samples, f, max_frequency) for f in range(max_frequency + 1)}


def synthesize(phis: Sequence[float], components: Dict[int, Tuple[float, float]]) -> np.ndarray:
    """
    Σ A_f cos(fφ + φ_f) на заданных углах.

    Args:
        phis: Углы
        components: Частота → (амплитуда, фаза)
    """
    phis = np.asarray(phis, dtype=float)
    values = np.zeros_like(phis)
    for frequency, (amplitude, phase) in components.items():
        values += amplitude * np.cos(frequency * phis + phase)
    return values


def observable_at(observable: ScanObservable, phi: float) -> np.ndarray:
    observable = ScanObservable(observable)
    if observable is ScanObservable.SACKETT_PLUS:
        return sackett_observable(Sign.PLUS, phi)
    if observable is ScanObservable.SACKETT_MINUS:
        return sackett_observable(Sign.MINUS, phi)
    return bell_signal_difference_observable(phi)


def scan_observable(
    state: QuantumState,
    observable: ScanObservable,
    points: int = DEFAULT_SCAN_POINTS,
    max_frequency: Optional[int] = None,
) -> pd.DataFrame:
    """
    ⟨O(φ)⟩ на равномерной сетке.

    Returns:
        pd.DataFrame: Колонки phi, value

    Raises:
        ArgumentError: Сетка слишком мала для частот наблюдаемой
    """
    observable = ScanObservable(observable)
    if max_frequency is None:
        max_frequency = OBSERVABLE_MAX_FREQUENCY[observable]
    if points < 2 * max_frequency + 1:
        raise ArgumentError(
            f"undersampled scan: {points} points, at least {2 * max_frequency + 1} required for {observable.value}"
        )
    phis = phi_grid(points)
    values = [expectation(state, observable_at(observable, phi)) for phi in phis]
    logger.debug(f"Scanned {observable.value} on {points} points")
    return pd.DataFrame({"phi": phis, "value": values})
