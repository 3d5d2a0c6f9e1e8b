"""
Функции для экспорта таблиц и φ-сканов в CSV формат.
"""

import logging
from datetime import datetime
from pathlib import Path
from typing import Dict, List, Optional, Union

import pandas as pd

from entwit.config.analysis_config import DEFAULT_OUTPUT_DIR
from entwit.exceptions import ValidationError

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]

SCAN_COLUMNS = ["phi", "value"]


def ensure_output_dir(directory: PathLike = DEFAULT_OUTPUT_DIR) -> Path:
    """
    Проверяет существование директории для экспорта и создает ее, если необходимо.

    Args:
        directory: Путь к директории (относительный путь - от текущей директории)

    Returns:
        Path: Абсолютный путь к директории
    """
    full_path = Path(directory).expanduser().resolve()
    if not full_path.exists():
        try:
            full_path.mkdir(parents=True)
            logger.info(f"Created output directory: {full_path}")
        except OSError as e:
            logger.error(f"Failed to create directory {full_path}: {e}")
            raise
    return full_path


def export_table_to_csv(
    data: List[Dict],
    filename: str,
    directory: PathLike = DEFAULT_OUTPUT_DIR,
    include_timestamp: bool = False,
) -> Optional[Path]:
    """
    Экспортирует таблицу в CSV файл.

    Args:
        data: Список словарей с данными
        filename: Имя файла (без расширения)
        directory: Директория для сохранения
        include_timestamp: Добавлять временную метку к имени файла

    Returns:
        Optional[Path]: Путь к созданному файлу или None для пустой таблицы
    """
    if not data:
        logger.warning(f"Export of empty table '{filename}' skipped")
        return None

    full_directory = ensure_output_dir(directory)
    df = pd.DataFrame(data)

    if include_timestamp:
        timestamp = datetime.now().strftime("%Y%m%d_%H%M%S")
        full_filename = f"{filename}_{timestamp}.csv"
    else:
        full_filename = f"{filename}.csv"

    filepath = full_directory / full_filename
    df.to_csv(filepath, index=False)
    logger.info(f"Table '{filename}' saved to '{filepath}' ({len(data)} rows)")
    return filepath


def write_scan_csv(scan: pd.DataFrame, path: PathLike) -> Path:
    """
    Сохраняет φ-скан с заголовком 'phi,value'.

    Args:
        scan: DataFrame с колонками phi и value
        path: Путь к CSV файлу
    """
    path = Path(path)
    if list(scan.columns) != SCAN_COLUMNS:
        raise ValidationError(f"scan must have columns {SCAN_COLUMNS}, got {list(scan.columns)}")
    if path.parent != Path(""):
        ensure_output_dir(path.parent)
    scan.to_csv(path, index=False, float_format="%.17g")
    logger.info(f"Scan saved to '{path}' ({len(scan)} points)")
    return path


def read_scan_csv(path: PathLike) -> pd.DataFrame:
    """
    Читает φ-скан.

    Raises:
        ValidationError: Заголовок не 'phi,value' или есть нечисловые значения
    """
    scan = pd.read_csv(path)
    if list(scan.columns) != SCAN_COLUMNS:
        raise ValidationError(f"{path}: expected header 'phi,value', got {','.join(map(str, scan.columns))}")
    scan = scan.apply(pd.to_numeric, errors="coerce")
    if scan.isna().any().any():
        raise ValidationError(f"{path}: scan contains non-numeric entries")
    return scan
