"""
Текстовое представление чисел и отчётов.
"""

from typing import Iterable, Optional, Tuple, Union

from entwit.config.analysis_config import SIGNIFICANT_DIGITS
from entwit.models.measurement import MeasuredValue

Quantity = Union[float, str, MeasuredValue, None]


def fmt(value: float, digits: int = SIGNIFICANT_DIGITS) -> str:
    return f"{value:.{digits}g}"


def fmt_quantity(quantity: Quantity) -> str:
    if quantity is None:
        return "-"
    if isinstance(quantity, MeasuredValue):
        return f"{fmt(quantity.value)} ± {fmt(quantity.sigma)}"
    if isinstance(quantity, (bool, str)):
        return str(quantity)
    return fmt(quantity)


def render_report(title: str, rows: Iterable[Tuple[str, Quantity, Optional[Quantity]]]) -> str:
    """
    Таблица 'величина: вычислено (опубликовано: ...)'.

    Args:
        title: Заголовок отчёта
        rows: Тройки (имя, вычисленное значение, опубликованное значение или None)
    """
    lines = [title, "-" * len(title)]
    for name, computed, quoted in rows:
        line = f"{name}: {fmt_quantity(computed)}"
        if quoted is not None:
            line += f"  (quoted: {fmt_quantity(quoted)})"
        lines.append(line)
    return "\n".join(lines)
