"""
Операторы на пространстве N кубитов: матрицы Паули, спиновые проекции,
тензорные произведения, средние значения и матричные элементы.
"""

from functools import lru_cache, reduce
from typing import Sequence, Union

import numpy as np

from entwit.config.analysis_config import PHYSICAL_TOL
from entwit.exceptions import ArgumentError, ConsistencyError, DimensionMismatchError, ValidationError
from entwit.models.enums import Axis, Sign
from entwit.models.state import BasisIndex, ComplexMatrix, ComplexScalar, QuantumState, SpinDirection

_PAULI = {
    Axis.X: ((0, 1), (1, 0)),
    Axis.Y: ((0, -1j), (1j, 0)),
    Axis.Z: ((1, 0), (0, -1)),
}

UP = np.array([1, 0], dtype=np.complex128)
DOWN = np.array([0, 1], dtype=np.complex128)


@lru_cache(maxsize=8)
def _pauli_cached(axis: Axis) -> ComplexMatrix:
    matrix = np.array(_PAULI[axis], dtype=np.complex128)
    matrix.setflags(write=False)
    return matrix


def pauli(axis: Union[Axis, str]) -> ComplexMatrix:
    """
    Матрица Паули; |↑⟩, |↓⟩ - собственные векторы σ_z с ±1.

    Args:
        axis: Ось x, y или z

    Returns:
        ComplexMatrix: Матрица 2×2 (копия)
    """
    return _pauli_cached(Axis(axis)).copy()


def identity(n_parties: int = 1) -> ComplexMatrix:
    return np.eye(2 ** n_parties, dtype=np.complex128)


def spin_op(n: SpinDirection) -> ComplexMatrix:
    """n·σ = n_x σ_x + n_y σ_y + n_z σ_z (эрмитов, след 0, собственные значения ±1)."""
    if not isinstance(n, SpinDirection):
        n = SpinDirection.from_vector(n)
    return n.x * _pauli_cached(Axis.X) + n.y * _pauli_cached(Axis.Y) + n.z * _pauli_cached(Axis.Z)


def planar_spin_op(phi: float) -> ComplexMatrix:
    """n_φ·σ с n_φ = (cos φ, sin φ, 0)."""
    return np.cos(phi) * _pauli_cached(Axis.X) + np.sin(phi) * _pauli_cached(Axis.Y)


def tensor(ops: Sequence[ComplexMatrix]) -> ComplexMatrix:
    """
    Произведение Кронекера; частица 1 слева (старший бит).

    Raises:
        ArgumentError: Если список пуст
    """
    if len(ops) == 0:
        raise ArgumentError("tensor: empty operator list")
    return reduce(np.kron, [np.asarray(op, dtype=np.complex128) for op in ops])


def pauli_string(label: str) -> ComplexMatrix:
    """Оператор по строке вида 'xyy' или 'IzZ' (I - единичный оператор)."""
    if not label:
        raise ArgumentError("pauli_string: empty label")
    factors = []
    for symbol in label.lower():
        if symbol == "i":
            factors.append(identity(1))
        elif symbol in "xyz":
            factors.append(pauli(symbol))
        else:
            raise ArgumentError(f"pauli_string: unknown symbol {symbol!r} in {label!r}")
    return tensor(factors)


def projector(vector: Sequence[complex]) -> ComplexMatrix:
    vector = np.asarray(vector, dtype=np.complex128)
    return np.outer(vector, vector.conj())


def z_projector(sign: Sign) -> ComplexMatrix:
    """P_↑ для PLUS, P_↓ для MINUS."""
    return projector(UP if sign is Sign.PLUS else DOWN)


def x_projector(sign: Sign) -> ComplexMatrix:
    """P_± = (I ± σ_x)/2 - собственные проекторы σ_x."""
    return (identity(1) + sign.factor * _pauli_cached(Axis.X)) / 2


def basis_vector(index: BasisIndex) -> np.ndarray:
    vector = np.zeros(2 ** index.n_parties, dtype=np.complex128)
    vector[index.index] = 1.0
    return vector


def basis_projector(index: BasisIndex) -> ComplexMatrix:
    return projector(basis_vector(index))


def is_hermitian(matrix: ComplexMatrix, tol: float = PHYSICAL_TOL) -> bool:
    matrix = np.asarray(matrix)
    return bool(np.max(np.abs(matrix - matrix.conj().T)) <= tol)


def expectation(state: QuantumState, obs: ComplexMatrix, tol: float = PHYSICAL_TOL) -> float:
    """
    Среднее Tr(ρ·obs).

    Args:
        state: Состояние
        obs: Эрмитова наблюдаемая той же размерности
        tol: Допуск на эрмитовость и мнимую часть

    Returns:
        float: Действительная часть следа

    Raises:
        DimensionMismatchError: Размерности не совпадают
        ValidationError: Наблюдаемая не эрмитова
        ConsistencyError: Мнимая часть превышает tol
    """
    obs = np.asarray(obs, dtype=np.complex128)
    if obs.shape != state.rho.shape:
        raise DimensionMismatchError(
            f"expectation: observable shape {obs.shape} does not match state dimension {state.dim}"
        )
    if not is_hermitian(obs, tol):
        raise ValidationError("expectation: observable is not Hermitian")
    # Tr(ρ·O) = Σ_ij ρ_ij O_ji
    value = complex(np.sum(state.rho * obs.T))
    if abs(value.imag) > tol:
        raise ConsistencyError(f"expectation: imaginary part {value.imag:.3e} exceeds {tol}")
    return value.real


def matrix_element(state: QuantumState, i: Union[BasisIndex, int], j: Union[BasisIndex, int]) -> ComplexScalar:
    """
    ⟨i|ρ|j⟩ в z-базисе; целые метки считаются BasisIndex той же размерности.

    Raises:
        ArgumentError: Метка вне диапазона
    """
    i = i if isinstance(i, BasisIndex) else BasisIndex(int(i), state.n_parties)
    j = j if isinstance(j, BasisIndex) else BasisIndex(int(j), state.n_parties)
    if i.n_parties != state.n_parties or j.n_parties != state.n_parties:
        raise ArgumentError("matrix_element: basis index dimension differs from the state")
    return complex(state.rho[i.index, j.index])


def population(state: QuantumState, index: Union[BasisIndex, int]) -> float:
    return matrix_element(state, index, index).real

