"""
Анализ эксперимента с атомами в резонаторе: наивная точность по сигналам
Белла, оценка наихудшего вклада посторонних внедиагональных элементов и
пример некогерентной смеси ρ_mix.
"""

import logging
from typing import Dict, Optional, Sequence, Tuple

import numpy as np

from entwit.config.analysis_config import PHYSICAL_TOL
from entwit.config.published_values import (
    RAUSCHENBEUTEL_QUOTED_FIDELITY,
    WORST_CASE_W,
    WORST_CASE_W_SIGMA_ALT,
)
from entwit.exceptions import ArgumentError
from entwit.hilbert.operators import matrix_element, population
from entwit.hilbert.states import ghz_class_state, psi_b, rho_mix
from entwit.models.enums import ScanObservable, Sign
from entwit.models.measurement import MeasuredValue
from entwit.models.records import (
    ExperimentRecord,
    PopulationTable,
    RauschenbeutelReport,
    RhoMixReport,
    WorstCaseReport,
)
from entwit.models.state import BasisIndex, QuantumState
from entwit.utils.validation import ensure_valid, validate_population_table
from entwit.witness.conditions import FIDELITY_THRESHOLD, fidelity, fidelity_from_components
from entwit.witness.harmonics import OBSERVABLE_MAX_FREQUENCY, harmonic_extract, scan_observable

logger = logging.getLogger(__name__)

# Пары индексов (|x⟩, |x̄⟩) загрязняющих компонент и целевая пара ψ_B
CONTAMINATION_PAIRS = {
    "alpha": (1, 8),
    "beta": (4, 5),
    "gamma": (3, 6),
}
TARGET_PAIR = (2, 7)


def _select_minimum(populations: PopulationTable, pair: Tuple[int, int]) -> Tuple[MeasuredValue, int]:
    # При равенстве выбирается первый индекс; sigma берётся у выбранной населённости
    first, second = pair
    if populations[second].value < populations[first].value:
        return populations[second], second
    return populations[first], first


def worst_case_amplitude(populations: PopulationTable, amplitude: MeasuredValue) -> WorstCaseReport:
    """
    Наихудшее разложение ρ = ασ + βτ + γυ + δω с нулевыми фазами.

    α/2 = min(P_1, P_8), β/2 = min(P_4, P_5), γ/2 = min(P_3, P_6);
    w = α + β + γ, 2·Re ρ_72 ≥ A − w.

    Args:
        populations: Таблица населённостей
        amplitude: Амплитуда A сигнала Белла

    Returns:
        WorstCaseReport: Доли, w, исправленный элемент и точность

    Raises:
        ValidationError: Таблица населённостей некорректна
    """
    ensure_valid(validate_population_table(populations), "worst_case_amplitude")
    amplitude = MeasuredValue.coerce(amplitude)

    fractions: Dict[str, MeasuredValue] = {}
    selected: Dict[str, int] = {}
    for name, pair in CONTAMINATION_PAIRS.items():
        half, label = _select_minimum(populations, pair)
        fractions[name] = 2 * half
        selected[name] = label

    w = fractions["alpha"] + fractions["beta"] + fractions["gamma"]
    corrected = amplitude - w
    p2, p7 = populations[TARGET_PAIR[0]], populations[TARGET_PAIR[1]]
    corrected_fidelity = 0.5 * (p2 + p7) + corrected / 2

    logger.debug(f"Worst case: w = {w}, A − w = {corrected}, corrected F = {corrected_fidelity}")
    return WorstCaseReport(
        alpha=fractions["alpha"],
        beta=fractions["beta"],
        gamma=fractions["gamma"],
        w=w,
        amplitude=amplitude,
        corrected_offdiag=corrected,
        corrected_re_offdiag=corrected / 2,
        target_populations=(p2, p7),
        corrected_fidelity=corrected_fidelity,
        selected_labels=selected,
    )


def worst_case_state(populations: Sequence[float], coherence: float = 0.0) -> QuantumState:
    """
    Состояние ασ + βτ + γυ + δω с максимальными α, β, γ и диагональным ω.

    σ, τ, υ - состояния (|x⟩ + |x̄⟩)/√2 пар (1,8), (4,5), (3,6); ω -
    диагональный остаток, воспроизводящий населённости. coherence добавляется
    к ⟨↑↑↓|ρ|↓↓↑⟩ (действительная часть, нулевая фаза).

    Args:
        populations: Восемь населённостей (нормируются на сумму)
        coherence: Дополнительный элемент ρ_27

    Raises:
        ArgumentError: Не восемь населённостей или отрицательные значения
        ValidationError: Итоговая матрица не является состоянием
    """
    values = np.asarray(populations, dtype=float)
    if values.shape != (8,) or np.any(values < 0):
        raise ArgumentError("worst_case_state: eight non-negative populations required")
    values = values / values.sum()

    rho = np.zeros((8, 8), dtype=np.complex128)
    remainder = values.copy()
    for first, second in CONTAMINATION_PAIRS.values():
        half = min(values[first - 1], values[second - 1])
        if half <= 0.0:
            continue
        rho += 2 * half * ghz_class_state(BasisIndex(first).spins, Sign.PLUS).rho
        remainder[first - 1] -= half
        remainder[second - 1] -= half

    rho += np.diag(np.clip(remainder, 0.0, None))
    i, j = TARGET_PAIR[0] - 1, TARGET_PAIR[1] - 1
    rho[i, j] += coherence
    rho[j, i] += coherence
    return QuantumState.from_density(rho)


def contamination_amplitude(state: QuantumState) -> float:
    """2(|ρ_72| + |ρ_54| + |ρ_36| + |ρ_18|)."""
    pairs = [TARGET_PAIR] + list(CONTAMINATION_PAIRS.values())
    return 2 * sum(abs(matrix_element(state, i, j)) for i, j in pairs)


def difference_signal_amplitude(state: QuantumState, points: int = 16) -> float:
    """Амплитуда первой гармоники σ_x⊗σ_x⊗n_φ·σ по φ-скану."""
    observable = ScanObservable.BELL_DIFF
    scan = scan_observable(state, observable, points)
    amplitude, _ = harmonic_extract(scan, 1, OBSERVABLE_MAX_FREQUENCY[observable])
    return amplitude


def demonstrate_rho_mix(points: int = 16) -> RhoMixReport:
    """
    Некогерентная смесь с той же амплитудой сигнала, что у ψ_B, без трёхчастичной когерентности.
    """
    state = rho_mix()
    p2, p7 = population(state, TARGET_PAIR[0]), population(state, TARGET_PAIR[1])
    amplitude = difference_signal_amplitude(state, points)
    element = matrix_element(state, *TARGET_PAIR)

    sign = Sign.MINUS if element.real < 0 else Sign.PLUS
    matched = ghz_class_state("uud", sign)

    report = RhoMixReport(
        populations=(p2, p7),
        amplitude=amplitude,
        procedure_fidelity=0.5 * (p2 + p7 + amplitude),
        element_27=element,
        phase_matched_fidelity=fidelity(state, matched),
        psi_b_fidelity=fidelity(state, psi_b()),
    )
    logger.info(
        f"rho_mix: A = {amplitude:.12g}, procedure F = {report.procedure_fidelity:.12g}, "
        f"true F = {report.phase_matched_fidelity:.12g}"
    )
    return report


def analyze_rauschenbeutel(record: ExperimentRecord, quoted: Optional[MeasuredValue] = None) -> RauschenbeutelReport:
    """
    Наивная точность ½(P_2 + P_7 + A) и оценка наихудшего случая.

    Raises:
        ArgumentError: В записи нет населённостей или амплитуды сигнала
    """
    if record.populations is None or record.signal_amplitude is None:
        raise ArgumentError(f"record '{record.name}' needs populations and signal_amplitude")
    quoted = MeasuredValue(*RAUSCHENBEUTEL_QUOTED_FIDELITY) if quoted is None else quoted

    populations = record.populations
    amplitude = record.signal_amplitude
    naive = fidelity_from_components(populations[TARGET_PAIR[0]], populations[TARGET_PAIR[1]], amplitude / 2)
    worst = worst_case_amplitude(populations, amplitude)
    unmet = worst.corrected_fidelity.upper < FIDELITY_THRESHOLD

    notes = []
    if abs(naive.fidelity.value - quoted.value) > naive.fidelity.sigma + quoted.sigma + PHYSICAL_TOL:
        notes.append(
            f"recomputed fidelity {naive.fidelity.value:.2f} does not reproduce the quoted {quoted.value:.2f}"
        )
    _, w_sigma_quoted = WORST_CASE_W
    if round(worst.w.sigma, 2) != w_sigma_quoted:
        notes.append(
            f"w sigma by quadrature is {worst.w.sigma:.4f}; quoted as ±{w_sigma_quoted} and ±{WORST_CASE_W_SIGMA_ALT}"
        )
    for note in notes:
        logger.warning(note)

    return RauschenbeutelReport(
        naive=naive,
        quoted_fidelity=quoted,
        worst_case=worst,
        condition_b_unmet=unmet,
        notes=tuple(notes),
    )
