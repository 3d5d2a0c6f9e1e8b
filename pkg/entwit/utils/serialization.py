"""
Чтение и запись JSON-документов: состояния, настройки, отчёты.

Комплексные числа хранятся парами [re, im].
"""

import json
import logging
from pathlib import Path
from typing import Any, Dict, Type, TypeVar, Union

import numpy as np
import pydantic

from entwit.config.analysis_config import PHYSICAL_TOL
from entwit.exceptions import ValidationError
from entwit.models.enums import Plane, StateKind
from entwit.models.schemas import SettingsDocument, StateDocument
from entwit.models.settings import PartySettings, PlanarSettings
from entwit.models.state import QuantumState, SpinDirection

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]
Model = TypeVar("Model", bound=pydantic.BaseModel)


def format_schema_errors(exc: pydantic.ValidationError) -> list:
    """Сообщения pydantic с путём к полю: 'populations.3.value: ...'."""
    messages = []
    for error in exc.errors():
        location = ".".join(str(part) for part in error["loc"]) or "<document>"
        messages.append(f"{location}: {error['msg']}")
    return messages


def parse_document(model: Type[Model], document: Any, context: str) -> Model:
    """
    Проверяет документ по схеме.

    Raises:
        ValidationError: Документ не соответствует схеме (с путями к полям)
    """
    try:
        return model.model_validate(document)
    except pydantic.ValidationError as e:
        raise ValidationError.from_errors(format_schema_errors(e), context) from e


def read_json(path: PathLike) -> Any:
    path = Path(path)
    try:
        with open(path, encoding="utf-8") as f:
            return json.load(f)
    except FileNotFoundError as e:
        raise ValidationError(f"{path}: file not found") from e
    except json.JSONDecodeError as e:
        raise ValidationError(f"{path}: invalid JSON ({e})") from e


def dumps(payload: Any) -> str:
    return json.dumps(payload, ensure_ascii=False, indent=2)


def write_json(payload: Any, path: PathLike) -> Path:
    path = Path(path)
    if str(path.parent) not in ("", "."):
        path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        f.write(dumps(payload))
        f.write("\n")
    logger.info(f"Written {path}")
    return path


def _pairs(values: np.ndarray) -> list:
    return [[float(v.real), float(v.imag)] for v in values]


def _complex(pairs) -> np.ndarray:
    return np.array([complex(re, im) for re, im in pairs], dtype=np.complex128)


def state_to_document(state: QuantumState) -> Dict:
    return {
        "n_parties": state.n_parties,
        "kind": state.kind.value,
        "ket": _pairs(state.ket) if state.is_pure else None,
        "rho": [_pairs(row) for row in state.rho],
    }


def state_from_document(document: Any) -> QuantumState:
    """
    Создает состояние из документа с проверкой всех инвариантов.

    Raises:
        ValidationError: Нарушена схема или инвариант состояния
    """
    parsed = parse_document(StateDocument, document, "state file")
    if parsed.kind == StateKind.PURE.value:
        state = QuantumState.from_ket(_complex(parsed.ket))
        if parsed.rho is not None:
            rho = np.array([_complex(row) for row in parsed.rho])
            # Глобальная фаза ket фиксируется при чтении, ρ от неё не зависит
            defect = float(np.max(np.abs(rho - state.rho)))
            if defect > PHYSICAL_TOL:
                raise ValidationError(
                    f"state file: pure-state invariant violated (rho differs from |ket⟩⟨ket| by {defect:.3e})"
                )
        return state
    return QuantumState.from_density(np.array([_complex(row) for row in parsed.rho]))


def save_state(state: QuantumState, path: PathLike) -> Path:
    return write_json(state_to_document(state), path)


def load_state(path: PathLike) -> QuantumState:
    return state_from_document(read_json(path))


def settings_to_document(settings: Union[PartySettings, PlanarSettings]) -> Dict:
    return settings.to_dict()


def settings_from_document(document: Any) -> PartySettings:
    """
    Настройки из документа; углы (в радианах) допустимы только при заданной плоскости.

    Raises:
        ValidationError: Нарушена схема или направление не единичное
    """
    parsed = parse_document(SettingsDocument, document, "settings file")
    plane = Plane(parsed.plane) if parsed.plane is not None else None

    def direction(entry) -> SpinDirection:
        if isinstance(entry, float):
            return SpinDirection.from_angle(plane, entry)
        return SpinDirection.from_vector(entry)

    return PartySettings.from_pairs([(direction(p.a), direction(p.a_prime)) for p in parsed.parties])


def save_settings(settings: Union[PartySettings, PlanarSettings], path: PathLike) -> Path:
    return write_json(settings_to_document(settings), path)


def load_settings(path: PathLike) -> PartySettings:
    return settings_from_document(read_json(path))
