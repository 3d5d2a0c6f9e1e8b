"""
Утилиты для валидации состояний, таблиц населённостей и записей экспериментов.
"""

import logging
import math
from typing import List

import numpy as np

from entwit.config.analysis_config import PHYSICAL_TOL, POPULATION_SUM_SLACK
from entwit.exceptions import ValidationError
from entwit.models.measurement import MeasuredValue, total
from entwit.models.records import ExperimentRecord, PopulationTable
from entwit.models.state import ComplexMatrix, QuantumState, ValidationReport

logger = logging.getLogger(__name__)


def validate_density_matrix(rho: ComplexMatrix, tol: float = PHYSICAL_TOL) -> ValidationReport:
    """
    Проверяет эрмитовость, след и положительность матрицы плотности.

    Args:
        rho: Квадратная комплексная матрица
        tol: Допуск для всех трёх проверок

    Returns:
        ValidationReport: Дефекты и список нарушенных инвариантов
    """
    rho = np.asarray(rho, dtype=np.complex128)
    if not np.all(np.isfinite(rho)):
        return ValidationReport(math.inf, math.inf, -math.inf, tol, ["rho contains non-finite entries"])

    errors = []
    hermiticity_defect = float(np.max(np.abs(rho - rho.conj().T)))
    trace_defect = float(abs(np.trace(rho) - 1.0))
    # Собственные значения эрмитовой части; при заметной неэрмитовости отчёт уже содержит ошибку
    hermitian_part = (rho + rho.conj().T) / 2
    min_eigenvalue = float(np.linalg.eigvalsh(hermitian_part)[0])

    if hermiticity_defect > tol:
        errors.append(f"hermiticity invariant violated (max |ρ − ρ†| = {hermiticity_defect:.3e})")
    if trace_defect > tol:
        errors.append(f"trace invariant violated (|Tr ρ − 1| = {trace_defect:.3e})")
    if min_eigenvalue < -tol:
        errors.append(f"positivity invariant violated (min eigenvalue = {min_eigenvalue:.3e})")

    return ValidationReport(hermiticity_defect, trace_defect, min_eigenvalue, tol, errors)


def validate_density(state: QuantumState, tol: float = PHYSICAL_TOL) -> ValidationReport:
    """Проверка матрицы плотности состояния (для чистых состояний - проектора)."""
    return validate_density_matrix(state.rho, tol)


def validate_population_table(table: PopulationTable, sum_slack: float = POPULATION_SUM_SLACK) -> List[str]:
    """
    Проверяет таблицу населённостей.

    Каждая населённость должна лежать в [0, 1] с учётом sigma, а сумма
    отличаться от 1 не более чем на квадратурную sigma плюс sum_slack.

    Returns:
        List[str]: Список ошибок или пустой список, если ошибок нет
    """
    errors = []

    if len(table) != 8:
        errors.append(f"population table must have 8 entries, got {len(table)}")
        return errors

    for label, entry in enumerate(table.entries, start=1):
        if entry.value < -entry.sigma or entry.value > 1.0 + entry.sigma:
            errors.append(f"population P_{label} = {entry.value} outside [0, 1] beyond its sigma {entry.sigma}")

    summed = total(table.entries)
    if abs(summed.value - 1.0) > summed.sigma + sum_slack:
        errors.append(
            f"populations sum to {summed.value:.6g}, outside 1 ± ({summed.sigma:.3g} + {sum_slack})"
        )

    return errors


def validate_fidelity_components(p_up: MeasuredValue, p_down: MeasuredValue) -> List[str]:
    """Населённости двух ветвей GHZ должны быть в [0, 1] и в сумме не превышать 1."""
    errors = []
    for name, p in (("p_up", p_up), ("p_down", p_down)):
        if p.value < -p.sigma or p.value > 1.0 + p.sigma:
            errors.append(f"{name} = {p.value} outside [0, 1] beyond its sigma {p.sigma}")
    combined = p_up + p_down
    if combined.value > 1.0 + combined.sigma:
        errors.append(
            f"p_up + p_down = {combined.value:.6g} exceeds 1 beyond sigma {combined.sigma:.3g} "
            "(populations of two distinct basis states)"
        )
    return errors


def validate_record(record: ExperimentRecord, sum_slack: float = POPULATION_SUM_SLACK) -> List[str]:
    """
    Проверяет запись эксперимента.

    Returns:
        List[str]: Список ошибок или пустой список, если ошибок нет
    """
    errors = []

    if not record.name:
        errors.append("record name must not be empty")

    present = [
        record.populations is not None,
        record.correlations is not None,
        record.signal_amplitude is not None,
        record.mermin_value is not None,
    ]
    if not any(present):
        errors.append("record must carry at least one measurement field")

    if record.populations is not None:
        errors.extend(f"populations: {e}" for e in validate_population_table(record.populations, sum_slack))

    if record.signal_amplitude is not None and record.signal_amplitude.value < -record.signal_amplitude.sigma:
        errors.append(f"signal_amplitude must be non-negative, got {record.signal_amplitude.value}")

    return errors


def ensure_valid(errors: List[str], context: str) -> None:
    """
    Поднимает ValidationError, если список ошибок не пуст.

    Args:
        errors: Результат одной из функций validate_*
        context: Что проверялось
    """
    if errors:
        for error in errors:
            logger.error(f"{context}: {error}")
        raise ValidationError.from_errors(errors, context)
