"""
Поиск настроек, максимизирующих |E(F_N)|.

Покоординатный подъём: для каждого угла сетка значений, затем уточнение
золотым сечением внутри ячейки лучшей точки; циклы повторяются, пока
прирост за цикл не станет меньше допуска. Несколько стартов с
фиксированным seed обходят седло при нулевых углах.
"""

import logging
import math
from typing import List, Optional, Tuple

import numpy as np

from entwit.bell.operators import correlation_tensor, klyshko_coefficients, klyshko_value
from entwit.config.analysis_config import create_default_config
from entwit.exceptions import ArgumentError, DimensionMismatchError
from entwit.models.config import OptimizerConfig
from entwit.models.enums import Plane
from entwit.models.settings import PartySettings
from entwit.models.state import QuantumState, SpinDirection

GOLDEN_RATIO = (math.sqrt(5) - 1) / 2
TWO_PI = 2 * math.pi
TIE_TOL = 1e-12


def _directions(params: np.ndarray, plane: Optional[Plane]) -> np.ndarray:
    """params (..., 1) для плоскости или (..., 2) = (θ, φ) → векторы (..., 3)."""
    if plane is None:
        theta, phi = params[..., 0], params[..., 1]
        return np.stack([np.sin(theta) * np.cos(phi), np.sin(theta) * np.sin(phi), np.cos(theta)], axis=-1)
    angle = params[..., 0]
    zeros = np.zeros_like(angle)
    if plane is Plane.XY:
        return np.stack([np.cos(angle), np.sin(angle), zeros], axis=-1)
    return np.stack([np.cos(angle), zeros, np.sin(angle)], axis=-1)


def golden_section_max(function, lower: float, upper: float, tolerance: float) -> Tuple[float, float]:
    """
    Максимум унимодальной функции на [lower, upper].

    Returns:
        Tuple[float, float]: (аргумент, значение)
    """
    a, b = lower, upper
    right = a + GOLDEN_RATIO * (b - a)
    left = a + (1 - GOLDEN_RATIO) * (b - a)
    f_right, f_left = function(right), function(left)
    while b - a > tolerance:
        if f_right > f_left:
            a, left, f_left = left, right, f_right
            right = a + GOLDEN_RATIO * (b - a)
            f_right = function(right)
        else:
            b, right, f_right = right, left, f_left
            left = a + (1 - GOLDEN_RATIO) * (b - a)
            f_left = function(left)
    return (right, f_right) if f_right > f_left else (left, f_left)


class SettingsOptimizer:
    """
    Покоординатный поиск углов максимального нарушения неравенства Белла-Клышко.
    """

    def __init__(self, config: Optional[OptimizerConfig] = None):
        self.config = config or create_default_config().optimizer
        self.logger = logging.getLogger("SettingsOptimizer")

    def optimize(self, state: QuantumState, plane: Optional[Plane] = None) -> Tuple[PartySettings, float]:
        """
        Ищет настройки с наибольшим |E(F_N)|.

        Args:
            state: Состояние N ≥ 2 частиц
            plane: Плоскость xy/xz или None для произвольных направлений

        Returns:
            Tuple[PartySettings, float]: Лучшие найденные настройки и |E(F_N)|
        """
        n = state.n_parties
        if n < 2:
            raise ArgumentError(f"optimize_settings: at least two parties required, got {n}")
        plane = Plane(plane) if plane is not None else None

        correlations = correlation_tensor(state)
        coefficients = klyshko_coefficients(n)
        width = 2 if plane is None else 1

        rng = np.random.default_rng(self.config.seed)
        starts = [np.zeros((n, 2, width))]
        for _ in range(self.config.restarts):
            start = rng.uniform(0.0, TWO_PI, size=(n, 2, width))
            if plane is None:
                start[..., 0] = rng.uniform(0.0, math.pi, size=(n, 2))
            starts.append(start)

        best_params, best_value = None, -math.inf
        for number, start in enumerate(starts):
            params, value = self._ascend(start, correlations, coefficients, plane)
            self.logger.debug(f"Start {number}: |E| = {value:.12g}")
            if value > best_value + TIE_TOL:
                best_params, best_value = params, value
            elif abs(value - best_value) <= TIE_TOL and self._key(params) < self._key(best_params):
                best_params = params

        settings = self._to_settings(best_params, plane)
        self.logger.info(f"Optimizer converged: |E(F_{n})| = {best_value:.12g}")
        return settings, best_value

    def _ascend(self, params: np.ndarray, correlations: np.ndarray, coefficients: np.ndarray,
                plane: Optional[Plane]) -> Tuple[np.ndarray, float]:
        params = params.copy()
        directions = _directions(params, plane)
        value = abs(klyshko_value(correlations, coefficients, directions))
        n, _, width = params.shape

        for sweep in range(self.config.max_sweeps):
            previous = value
            for party in range(n):
                for primed in range(2):
                    for slot in range(width):
                        value = self._update_coordinate(
                            params, directions, correlations, coefficients, plane, (party, primed, slot)
                        )
            self.logger.debug(f"Sweep {sweep}: |E| = {value:.12g}")
            if value - previous < self.config.improvement_tolerance:
                break
        return params, value

    def _update_coordinate(self, params, directions, correlations, coefficients, plane, coordinate) -> float:
        party, primed, slot = coordinate
        # E линейна по направлению (party, primed): E(d) = u·d + c
        trial = directions.copy()
        trial[party, primed] = 0.0
        offset = klyshko_value(correlations, coefficients, trial)
        linear = np.empty(3)
        for axis in range(3):
            trial[party, primed] = np.eye(3)[axis]
            linear[axis] = klyshko_value(correlations, coefficients, trial) - offset

        base = params[party, primed].copy()

        def objective(angles):
            trial = np.broadcast_to(base, np.shape(angles) + base.shape).copy()
            trial[..., slot] = angles
            return np.abs(_directions(trial, plane) @ linear + offset)

        if plane is None and slot == 0:
            grid = np.linspace(0.0, math.pi, self.config.polar_grid_points)
        else:
            grid = np.linspace(0.0, TWO_PI, self.config.grid_points, endpoint=False)
        step = grid[1] - grid[0]

        grid_values = objective(grid)
        # argmax берёт первый максимум: наименьший угол при равных значениях
        best = int(np.argmax(grid_values))
        angle, value = golden_section_max(
            lambda x: float(objective(np.asarray(x))),
            grid[best] - step,
            grid[best] + step,
            self.config.golden_tolerance,
        )
        current = float(objective(np.asarray(base[slot])))
        if grid_values[best] > value:
            angle, value = grid[best], float(grid_values[best])
        if value <= current:
            return current

        params[party, primed, slot] = angle
        directions[party, primed] = _directions(params[party, primed], plane)
        return value

    @staticmethod
    def _key(params: np.ndarray) -> List[float]:
        return list(np.mod(params, TWO_PI).ravel())

    @staticmethod
    def _to_settings(params: np.ndarray, plane: Optional[Plane]) -> PartySettings:
        vectors = _directions(params, plane)
        pairs = []
        for party_vectors in vectors:
            unit = [v / np.linalg.norm(v) for v in party_vectors]
            pairs.append((SpinDirection.from_vector(unit[0]), SpinDirection.from_vector(unit[1])))
        return PartySettings.from_pairs(pairs)


def optimize_settings(
    state: QuantumState,
    n: Optional[int] = None,
    plane: Optional[Plane] = None,
    config: Optional[OptimizerConfig] = None,
) -> Tuple[PartySettings, float]:
    """
    Настройки максимального |E(F_N)|; детерминирован при фиксированной конфигурации.

    Raises:
        DimensionMismatchError: n не совпадает с числом частиц состояния
    """
    if n is not None and n != state.n_parties:
        raise DimensionMismatchError(f"optimize_settings: n = {n} but the state has {state.n_parties} parties")
    return SettingsOptimizer(config).optimize(state, plane)
