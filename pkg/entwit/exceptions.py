"""
Иерархия исключений entwit.
"""

from typing import Iterable, List, Optional


class EntwitError(Exception):
    """Базовое исключение библиотеки."""


class ValidationError(EntwitError, ValueError):
    """
    Входные данные нарушают документированный инвариант.

    Attributes:
        errors: Список сообщений об ошибках (пустой список не допускается)
    """

    def __init__(self, message: str, errors: Optional[Iterable[str]] = None):
        self.errors: List[str] = list(errors) if errors else [message]
        super().__init__(message)

    @classmethod
    def from_errors(cls, errors: List[str], context: str = "") -> "ValidationError":
        prefix = f"{context}: " if context else ""
        return cls(prefix + "; ".join(errors), errors)


class ArgumentError(ValidationError):
    """Некорректные аргументы вызова."""


class DimensionMismatchError(ValidationError):
    """Размерности операндов не совпадают."""


class UndefinedConditionalError(ValidationError):
    """Вероятность условия практически равна нулю."""


class ConsistencyError(EntwitError, RuntimeError):
    """Нарушена внутренняя численная согласованность."""
