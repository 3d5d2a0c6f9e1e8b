"""
Анализ трёхфотонного эксперимента: условие A по значению комбинации Мермина
и вывод дальнего внедиагонального элемента из тождества
E(mermin) = −8·Re ρ_18.
"""

import logging
from typing import Optional

from entwit.config.published_values import PAN_HYPOTHETICAL_POPULATION
from entwit.exceptions import ArgumentError
from entwit.models.measurement import MeasuredValue
from entwit.models.records import ExperimentRecord, PanReport
from entwit.witness.conditions import condition_a_from_data, fidelity_from_components

logger = logging.getLogger(__name__)

MERMIN_TO_OFFDIAG = -1 / 8


def analyze_pan(
    record: ExperimentRecord,
    p_up: Optional[MeasuredValue] = None,
    p_down: Optional[MeasuredValue] = None,
) -> PanReport:
    """
    Условие A и гипотетическая точность приготовления по значению Мермина.

    Args:
        record: Запись с mermin_value
        p_up: Населённость |↑↑↑⟩ (по умолчанию 0.40 ± 0.01)
        p_down: Населённость |↓↓↓⟩ (по умолчанию 0.40 ± 0.01)

    Returns:
        PanReport: Вердикт, Re ρ_18 = −E/8, |Re ρ_18| и точность

    Raises:
        ArgumentError: В записи нет mermin_value
    """
    if record.mermin_value is None:
        raise ArgumentError(f"record '{record.name}' has no mermin_value")

    default = MeasuredValue(*PAN_HYPOTHETICAL_POPULATION)
    p_up = default if p_up is None else MeasuredValue.coerce(p_up)
    p_down = default if p_down is None else MeasuredValue.coerce(p_down)

    mermin = record.mermin_value
    verdict = condition_a_from_data(mermin, 3)
    re_offdiag = mermin * MERMIN_TO_OFFDIAG
    abs_re_offdiag = abs(re_offdiag)
    # Знак Re ρ_18 зависит от соглашения для σ_y, в точность входит модуль
    hypothetical = fidelity_from_components(p_up, p_down, abs_re_offdiag)

    logger.info(
        f"Mermin {mermin} -> |Re rho_18| = {abs_re_offdiag}, hypothetical F = {hypothetical.fidelity}"
    )
    return PanReport(
        mermin_value=mermin,
        verdict=verdict,
        re_offdiag=re_offdiag,
        abs_re_offdiag=abs_re_offdiag,
        hypothetical=hypothetical,
    )
