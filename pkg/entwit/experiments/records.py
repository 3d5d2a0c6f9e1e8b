"""
Загрузка записей экспериментов.
"""

import logging
from pathlib import Path
from typing import Any, Dict, Union

from entwit.config.analysis_config import POPULATION_SUM_SLACK, data_dir
from entwit.exceptions import ArgumentError, ValidationError
from entwit.models.measurement import MeasuredValue
from entwit.models.records import Correlation, ExperimentRecord, PopulationTable
from entwit.models.schemas import MeasuredValueModel, RecordDocument
from entwit.utils.serialization import parse_document, read_json
from entwit.utils.validation import ensure_valid, validate_record

logger = logging.getLogger(__name__)

BUNDLED_RECORDS = ("pan", "rauschenbeutel", "bouwmeester")


def _measured(model: MeasuredValueModel) -> MeasuredValue:
    return MeasuredValue(model.value, model.sigma)


def load_record(document: Any, sum_slack: float = POPULATION_SUM_SLACK) -> ExperimentRecord:
    """
    Создает запись эксперимента из JSON-документа.

    Args:
        document: Разобранный JSON
        sum_slack: Допуск на сумму населённостей сверх квадратурной sigma

    Returns:
        ExperimentRecord: Проверенная запись

    Raises:
        ValidationError: Нарушение схемы (с путём к полю) или инварианта записи
    """
    parsed = parse_document(RecordDocument, document, "record")

    record = ExperimentRecord(
        name=parsed.name,
        populations=(
            PopulationTable(tuple(_measured(p) for p in parsed.populations))
            if parsed.populations is not None else None
        ),
        correlations=(
            tuple(Correlation(c.setting, MeasuredValue(c.value, c.sigma)) for c in parsed.correlations)
            if parsed.correlations is not None else None
        ),
        signal_amplitude=_measured(parsed.signal_amplitude) if parsed.signal_amplitude else None,
        mermin_value=_measured(parsed.mermin_value) if parsed.mermin_value else None,
    )
    ensure_valid(validate_record(record, sum_slack), f"record '{record.name}'")
    return record


def load_record_file(path: Union[str, Path], sum_slack: float = POPULATION_SUM_SLACK) -> ExperimentRecord:
    logger.debug(f"Loading record {path}")
    try:
        return load_record(read_json(path), sum_slack)
    except ValidationError as e:
        raise ValidationError.from_errors(e.errors, str(path)) from e


def load_bundled_record(name: str, sum_slack: float = POPULATION_SUM_SLACK) -> ExperimentRecord:
    """
    Встроенная запись по имени; директорию можно переопределить через ENTWIT_DATA_DIR.

    Raises:
        ArgumentError: Неизвестное имя записи
    """
    if name not in BUNDLED_RECORDS:
        raise ArgumentError(f"unknown record {name!r}; expected one of {', '.join(BUNDLED_RECORDS)}")
    return load_record_file(data_dir() / f"{name}.json", sum_slack)


def correlation_map(record: ExperimentRecord) -> Dict[str, MeasuredValue]:
    """Корреляции записи по метке настройки."""
    if record.correlations is None:
        return {}
    return {c.setting: c.measured for c in record.correlations}
