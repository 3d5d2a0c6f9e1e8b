"""
Двухчастичная подделка W = α P₋⁽²⁾⊗P_S⁽¹³⁾ + (1−α)/2 (P_{↑↑↓} + P_{↓↓↑})
и её подгонка к ограничениям (a1)–(a4) эксперимента с тремя фотонами.
"""

import logging
from typing import Dict, Optional

import numpy as np

from entwit.config.analysis_config import W_ALPHA_GRID_STEP, W_FIT_TOLERANCE
from entwit.config.published_values import W_A1_POPULATION, W_A2_POPULATION, W_INTERFERENCE_FRACTION
from entwit.exceptions import ArgumentError
from entwit.experiments.records import correlation_map
from entwit.hilbert.operators import (
    basis_projector,
    expectation,
    pauli,
    population,
    tensor,
    x_projector,
    z_projector,
)
from entwit.hilbert.states import embed, psi_b, singlet_projector
from entwit.models.enums import Sign
from entwit.models.measurement import MeasuredValue
from entwit.models.records import ExperimentRecord, WFitReport
from entwit.models.state import BasisIndex, ComplexMatrix, QuantumState

logger = logging.getLogger(__name__)

# Метки ψ_B-компоненты и остальных векторов базиса
TARGET_LABELS = (2, 7)
SIDE_LABELS = (1, 3, 4, 5, 6, 8)
FITTED_CONSTRAINTS = ("a3", "a4")


def interference_operator() -> ComplexMatrix:
    """(a3): P₊⁽¹⁾⊗P₋⁽²⁾⊗σ_x⁽³⁾."""
    return tensor([x_projector(Sign.PLUS), x_projector(Sign.MINUS), pauli("x")])


def conditional_interference_operator() -> ComplexMatrix:
    """(a4): P_↑⁽¹⁾⊗P₋⁽²⁾⊗σ_x⁽³⁾."""
    return tensor([z_projector(Sign.PLUS), x_projector(Sign.MINUS), pauli("x")])


def build_w_state(alpha: float) -> QuantumState:
    """
    Смесь синглета частиц 1, 3 (при P₋ частицы 2) и классической смеси ψ_B-компонент.

    Raises:
        ArgumentError: alpha вне [0, 1]
    """
    if not 0.0 <= alpha <= 1.0:
        raise ArgumentError(f"build_w_state: alpha must lie in [0, 1], got {alpha}")
    entangled = embed(np.kron(x_projector(Sign.MINUS), singlet_projector()), [2, 1, 3], 3)
    classical = basis_projector(BasisIndex(2)) + basis_projector(BasisIndex(7))
    return QuantumState.from_density(alpha * entangled + (1 - alpha) / 2 * classical)


def _predictions(state: QuantumState) -> Dict[str, float]:
    predicted = {f"p{label}": population(state, label) for label in range(1, 9)}
    predicted["a3"] = expectation(state, interference_operator())
    predicted["a4"] = expectation(state, conditional_interference_operator())
    return predicted


def _expand_targets(targets: Dict[str, MeasuredValue]) -> Dict[str, MeasuredValue]:
    expanded = {}
    for key in ("a1", "a2", "a3", "a4"):
        if key not in targets:
            raise ArgumentError(f"fit_w_state: missing constraint {key}")
    for label in TARGET_LABELS:
        expanded[f"a1_p{label}"] = targets["a1"]
    for label in SIDE_LABELS:
        expanded[f"a2_p{label}"] = targets["a2"]
    expanded["a3"] = targets["a3"]
    expanded["a4"] = targets["a4"]
    return expanded


def _predicted_key(constraint: str) -> str:
    return constraint.split("_", 1)[1] if constraint.startswith(("a1_", "a2_")) else constraint


def derived_interference_target(fraction: float = W_INTERFERENCE_FRACTION) -> float:
    """Цель (a3): доля от ⟨ψ_B|P₊⊗P₋⊗σ_x|ψ_B⟩ = −¼."""
    return fraction * expectation(psi_b(), interference_operator())


def targets_from_record(record: ExperimentRecord) -> Dict[str, MeasuredValue]:
    """
    Ограничения из записи: a1, a2, a4 напрямую, a3 из доли a3_fraction.

    Raises:
        ArgumentError: В записи нет нужных меток
    """
    correlations = correlation_map(record)
    missing = [key for key in ("a1", "a2", "a3_fraction", "a4") if key not in correlations]
    if missing:
        raise ArgumentError(f"record '{record.name}' lacks constraints {missing}")
    fraction = correlations["a3_fraction"]
    ideal = expectation(psi_b(), interference_operator())
    return {
        "a1": correlations["a1"],
        "a2": correlations["a2"],
        "a3": fraction * ideal,
        "a4": correlations["a4"],
    }


def published_targets() -> Dict[str, MeasuredValue]:
    return {
        "a1": MeasuredValue.exact(W_A1_POPULATION),
        "a2": MeasuredValue.exact(W_A2_POPULATION),
        "a3": MeasuredValue.exact(derived_interference_target()),
        "a4": MeasuredValue.exact(0.0),
    }


def fit_w_state(
    targets: Optional[Dict[str, MeasuredValue]] = None,
    step: float = W_ALPHA_GRID_STEP,
    tolerance: float = W_FIT_TOLERANCE,
) -> WFitReport:
    """
    Подбирает α минимаксом по интерференционным ограничениям (a3), (a4).

    Ограничения на населённости (a1), (a2) не участвуют в выборе α и
    возвращаются как невязки; невязки больше tolerance попадают в
    unmet_constraints. При равных невязках выбирается наименьшее α.

    Args:
        targets: Цели 'a1'..'a4' (по умолчанию - из опубликованных значений)
        step: Шаг сетки по α на [0, 1]
        tolerance: Порог для списка невыполнимых ограничений

    Returns:
        WFitReport: α, предсказания, цели и невязки
    """
    targets = _expand_targets(published_targets() if targets is None else targets)

    # Tr(W·O) аффинна по α: предсказания на сетке из двух явных матриц
    at_zero = _predictions(build_w_state(0.0))
    at_one = _predictions(build_w_state(1.0))
    alphas = np.linspace(0.0, 1.0, int(round(1.0 / step)) + 1)

    worst = np.zeros_like(alphas)
    for constraint in FITTED_CONSTRAINTS:
        key = _predicted_key(constraint)
        predicted = (1 - alphas) * at_zero[key] + alphas * at_one[key]
        worst = np.maximum(worst, np.abs(predicted - targets[constraint].value))
    alpha = float(alphas[int(np.argmin(worst))])

    predicted = _predictions(build_w_state(alpha))
    residuals = {c: predicted[_predicted_key(c)] - t.value for c, t in targets.items()}
    unmet = tuple(c for c, r in residuals.items() if c not in FITTED_CONSTRAINTS and abs(r) > tolerance)

    logger.info(f"W-state fit: alpha = {alpha:.6g}, unmet constraints: {', '.join(unmet) or 'none'}")
    return WFitReport(
        alpha=alpha,
        predicted=predicted,
        targets=targets,
        residuals=residuals,
        fitted_constraints=FITTED_CONSTRAINTS,
        unmet_constraints=unmet,
    )
