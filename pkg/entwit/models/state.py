"""
Структуры данных гильбертова пространства N кубитов.

Базис: частица 1 старший бит, ↑ = 0. Метки BasisIndex идут с 1
(|↑↑↑⟩ = 1, |↑↑↓⟩ = 2, ..., |↓↓↓⟩ = 8 для трёх частиц).
"""

import math
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np

from entwit.config.analysis_config import PHYSICAL_TOL, UNIT_TOL
from entwit.exceptions import ArgumentError, ValidationError
from entwit.models.enums import Plane, StateKind

# Плотная комплексная квадратная матрица (complex128)
ComplexMatrix = np.ndarray
ComplexScalar = complex


def _frozen(array: np.ndarray) -> np.ndarray:
    array = np.array(array, dtype=np.complex128)
    array.setflags(write=False)
    return array


@dataclass(frozen=True)
class SpinDirection:
    """Единичный вектор направления измерения спина."""
    x: float
    y: float
    z: float

    def __post_init__(self):
        values = (self.x, self.y, self.z)
        if not all(math.isfinite(v) for v in values):
            raise ValidationError(f"SpinDirection: non-finite component in {values}")
        norm_defect = abs(self.x ** 2 + self.y ** 2 + self.z ** 2 - 1.0)
        if norm_defect > UNIT_TOL:
            raise ValidationError(
                f"SpinDirection: unit-norm invariant violated (|n|² − 1 = {norm_defect:.3e})"
            )

    @classmethod
    def from_vector(cls, vector: Sequence[float]) -> "SpinDirection":
        if len(vector) != 3:
            raise ValidationError(f"SpinDirection: expected 3 components, got {len(vector)}")
        return cls(float(vector[0]), float(vector[1]), float(vector[2]))

    @classmethod
    def from_angle(cls, plane: Plane, angle: float) -> "SpinDirection":
        """
        Направление в плоскости xy или xz по углу от оси x.

        Args:
            plane: Плоскость
            angle: Угол в радианах

        Returns:
            SpinDirection: (cos φ, sin φ, 0) или (cos φ, 0, sin φ)
        """
        c, s = math.cos(angle), math.sin(angle)
        if plane is Plane.XY:
            return cls(c, s, 0.0)
        return cls(c, 0.0, s)

    @property
    def vector(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z], dtype=float)

    def as_list(self) -> List[float]:
        return [self.x, self.y, self.z]


X_DIRECTION = SpinDirection(1.0, 0.0, 0.0)
Z_DIRECTION = SpinDirection(0.0, 0.0, 1.0)


@dataclass(frozen=True)
class BasisIndex:
    """Метка вектора z-базиса."""
    label: int
    n_parties: int = 3

    def __post_init__(self):
        if self.n_parties < 1:
            raise ArgumentError(f"BasisIndex: n_parties must be positive, got {self.n_parties}")
        if not 1 <= self.label <= 2 ** self.n_parties:
            raise ArgumentError(
                f"BasisIndex: label {self.label} out of range [1, {2 ** self.n_parties}]"
            )

    @classmethod
    def from_bits(cls, bits: Sequence[int]) -> "BasisIndex":
        """bits: 0 = ↑, 1 = ↓, частица 1 первой."""
        value = 0
        for bit in bits:
            if bit not in (0, 1):
                raise ArgumentError(f"BasisIndex: bit {bit} is not 0/1")
            value = (value << 1) | bit
        return cls(value + 1, len(bits))

    @classmethod
    def from_spins(cls, spins: str) -> "BasisIndex":
        """spins: строка из '↑'/'↓' или 'u'/'d'."""
        mapping = {"↑": 0, "u": 0, "0": 0, "↓": 1, "d": 1, "1": 1}
        try:
            return cls.from_bits([mapping[s] for s in spins])
        except KeyError as e:
            raise ArgumentError(f"BasisIndex: unknown spin symbol {e.args[0]!r}") from e

    @property
    def index(self) -> int:
        return self.label - 1

    @property
    def bits(self) -> Tuple[int, ...]:
        value = self.index
        return tuple((value >> (self.n_parties - 1 - k)) & 1 for k in range(self.n_parties))

    @property
    def spins(self) -> str:
        return "".join("↑" if b == 0 else "↓" for b in self.bits)


@dataclass(frozen=True)
class ValidationReport:
    """Результат проверки матрицы плотности."""
    hermiticity_defect: float
    trace_defect: float
    min_eigenvalue: float
    tolerance: float = PHYSICAL_TOL
    errors: List[str] = field(default_factory=list)

    @property
    def accepted(self) -> bool:
        return not self.errors

    def to_dict(self) -> dict:
        return {
            "accepted": self.accepted,
            "hermiticity_defect": self.hermiticity_defect,
            "trace_defect": self.trace_defect,
            "min_eigenvalue": self.min_eigenvalue,
            "tolerance": self.tolerance,
            "errors": list(self.errors),
        }


def _fix_global_phase(ket: np.ndarray) -> np.ndarray:
    nonzero = np.flatnonzero(np.abs(ket) > PHYSICAL_TOL)
    if nonzero.size == 0:
        return ket
    first = ket[nonzero[0]]
    return ket * (abs(first) / first)


@dataclass(frozen=True, eq=False)
class QuantumState:
    """
    Чистое или смешанное состояние N кубитов.

    Создается через from_ket / from_density, которые проверяют инварианты.
    Массивы ket и rho доступны только для чтения.
    """
    n_parties: int
    kind: StateKind
    rho: ComplexMatrix
    ket: Optional[np.ndarray] = None

    @property
    def dim(self) -> int:
        return 2 ** self.n_parties

    @property
    def is_pure(self) -> bool:
        return self.kind is StateKind.PURE

    @classmethod
    def from_ket(cls, amplitudes: Sequence[complex], tol: float = PHYSICAL_TOL) -> "QuantumState":
        """
        Создает чистое состояние из вектора амплитуд.

        Args:
            amplitudes: Вектор длины 2^n
            tol: Допуск на нормировку

        Returns:
            QuantumState: Чистое состояние с фиксированной глобальной фазой
        """
        ket = np.asarray(amplitudes, dtype=np.complex128).reshape(-1)
        n_parties = _parties_for_dim(ket.shape[0])
        if not np.all(np.isfinite(ket)):
            raise ValidationError("QuantumState: ket contains non-finite amplitudes")
        norm = np.linalg.norm(ket)
        if abs(norm - 1.0) > tol:
            raise ValidationError(f"QuantumState: unit-norm invariant violated (‖ψ‖ = {norm:.12g})")
        ket = _fix_global_phase(ket)
        return cls(n_parties, StateKind.PURE, _frozen(np.outer(ket, ket.conj())), _frozen(ket))

    @classmethod
    def from_density(cls, rho: ComplexMatrix, tol: float = PHYSICAL_TOL) -> "QuantumState":
        """
        Создает смешанное состояние из матрицы плотности.

        Raises:
            ValidationError: Если матрица не эрмитова, след не равен 1
                или есть отрицательные собственные значения
        """
        from entwit.utils.validation import validate_density_matrix

        rho = np.asarray(rho, dtype=np.complex128)
        if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
            raise ValidationError(f"QuantumState: rho must be square, got shape {rho.shape}")
        n_parties = _parties_for_dim(rho.shape[0])
        report = validate_density_matrix(rho, tol)
        if not report.accepted:
            raise ValidationError.from_errors(report.errors, "QuantumState")
        return cls(n_parties, StateKind.DENSITY, _frozen(rho))


def _parties_for_dim(dim: int) -> int:
    if dim < 2 or dim & (dim - 1):
        raise ValidationError(f"QuantumState: dimension {dim} is not a power of two ≥ 2")
    return dim.bit_length() - 1
