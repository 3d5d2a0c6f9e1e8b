from dataclasses import dataclass, field


@dataclass
class OptimizerConfig:
    """Параметры поиска углов максимального нарушения."""
    grid_points: int = 24  # Точек сетки на угол на [0, 2π)
    polar_grid_points: int = 12  # Точек сетки для полярного угла на [0, π]
    golden_tolerance: float = 1e-10  # Ширина интервала золотого сечения
    improvement_tolerance: float = 1e-10  # Остановка по приросту за цикл
    max_sweeps: int = 200
    restarts: int = 8  # Дополнительные случайные старты
    seed: int = 20011


@dataclass
class ScanConfig:
    """Параметры φ-сканов."""
    grid_points: int = 16
    min_grid_points: int = 8  # Нижняя граница для --grid


@dataclass
class PopulationConfig:
    """Допуски для таблиц населённостей."""
    sum_slack: float = 0.02


@dataclass
class AnalysisConfig:
    optimizer: OptimizerConfig = field(default_factory=OptimizerConfig)
    scan: ScanConfig = field(default_factory=ScanConfig)
    populations: PopulationConfig = field(default_factory=PopulationConfig)
