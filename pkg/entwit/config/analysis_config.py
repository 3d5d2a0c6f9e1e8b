"""
Конфигурационный файл численных параметров анализа.
"""

import os
from pathlib import Path

from entwit.models.config import AnalysisConfig, OptimizerConfig, PopulationConfig, ScanConfig

# Допуски
PHYSICAL_TOL = 1e-9
ALGEBRAIC_TOL = 1e-12
UNIT_TOL = 1e-12
WEIGHT_SUM_TOL = 1e-12

# Оптимизатор углов
OPTIMIZER_GRID_POINTS = 24
OPTIMIZER_POLAR_GRID_POINTS = 12
OPTIMIZER_GOLDEN_TOL = 1e-10
OPTIMIZER_IMPROVEMENT_TOL = 1e-10
OPTIMIZER_MAX_SWEEPS = 200
OPTIMIZER_RESTARTS = 8
OPTIMIZER_SEED = 20011

# Сканы по φ
DEFAULT_SCAN_POINTS = 16
MIN_SCAN_POINTS = 8
MAX_SCAN_FREQUENCY = 3

# Таблицы населённостей
POPULATION_SUM_SLACK = 0.02

# Подгонка состояния W
W_ALPHA_GRID_STEP = 1e-4
W_FIT_TOLERANCE = 0.01

# Данные экспериментов
DATA_DIR_ENV = "ENTWIT_DATA_DIR"
BUNDLED_DATA_DIR = Path(__file__).resolve().parent.parent / "experiments" / "data"

# Вывод
SIGNIFICANT_DIGITS = 12
DEFAULT_OUTPUT_DIR = "output"


def data_dir() -> Path:
    """
    Возвращает директорию с записями экспериментов.

    Returns:
        Path: ENTWIT_DATA_DIR, если переменная задана, иначе встроенная директория
    """
    override = os.environ.get(DATA_DIR_ENV)
    return Path(override) if override else BUNDLED_DATA_DIR


def create_default_config() -> AnalysisConfig:
    """
    Создает конфигурацию анализа со значениями по умолчанию.

    Returns:
        AnalysisConfig: Конфигурация анализа
    """
    return AnalysisConfig(
        optimizer=OptimizerConfig(
            grid_points=OPTIMIZER_GRID_POINTS,
            polar_grid_points=OPTIMIZER_POLAR_GRID_POINTS,
            golden_tolerance=OPTIMIZER_GOLDEN_TOL,
            improvement_tolerance=OPTIMIZER_IMPROVEMENT_TOL,
            max_sweeps=OPTIMIZER_MAX_SWEEPS,
            restarts=OPTIMIZER_RESTARTS,
            seed=OPTIMIZER_SEED,
        ),
        scan=ScanConfig(grid_points=DEFAULT_SCAN_POINTS, min_grid_points=MIN_SCAN_POINTS),
        populations=PopulationConfig(sum_slack=POPULATION_SUM_SLACK),
    )
