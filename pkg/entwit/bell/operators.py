"""
Операторы Белла-CHSH и Белла-Клышко, комбинация Мермина и тождество,
связывающее её с дальним внедиагональным элементом.
"""

import logging
import math
from functools import lru_cache
from typing import List, Tuple

import numpy as np

from entwit.config.analysis_config import ALGEBRAIC_TOL
from entwit.exceptions import ArgumentError, ConsistencyError, DimensionMismatchError
from entwit.hilbert.operators import pauli, pauli_string, spin_op
from entwit.hilbert.states import permute_operator
from entwit.models.enums import BellKind, Plane
from entwit.models.settings import BellOperator, PartySettings, PlanarSettings
from entwit.models.state import Z_DIRECTION, ComplexMatrix, QuantumState, SpinDirection

logger = logging.getLogger(__name__)


def _checked(n_parties: int, matrix: ComplexMatrix, kind: BellKind) -> BellOperator:
    defect = float(np.max(np.abs(matrix - matrix.conj().T)))
    if defect > ALGEBRAIC_TOL:
        raise ConsistencyError(f"{kind.value} operator is not Hermitian (defect {defect:.3e})")
    matrix = np.array(matrix, dtype=np.complex128)
    matrix.setflags(write=False)
    return BellOperator(n_parties, matrix, kind)


def _party_ops(settings: PartySettings) -> List[Tuple[ComplexMatrix, ComplexMatrix]]:
    return [(spin_op(a), spin_op(a_prime)) for a, a_prime in zip(settings.unprimed, settings.primed)]


def chsh_operator(settings: PartySettings) -> BellOperator:
    """
    F_2 = A⊗B + A'⊗B + A⊗B' − A'⊗B'.

    Raises:
        ArgumentError: Число частиц не равно 2
    """
    if settings.n_parties != 2:
        raise ArgumentError(f"chsh_operator: two parties required, got {settings.n_parties}")
    (a, a_prime), (b, b_prime) = _party_ops(settings)
    matrix = np.kron(a, b) + np.kron(a_prime, b) + np.kron(a, b_prime) - np.kron(a_prime, b_prime)
    return _checked(2, matrix, BellKind.CHSH)


def _klyshko_pair(ops: List[Tuple[ComplexMatrix, ComplexMatrix]]) -> Tuple[ComplexMatrix, ComplexMatrix]:
    # (F_k, F'_k); F'_k - то же выражение с переставленными A_j и A'_j
    (a, a_prime), (b, b_prime) = ops[0], ops[1]
    f = np.kron(a, b) + np.kron(a_prime, b) + np.kron(a, b_prime) - np.kron(a_prime, b_prime)
    f_prime = np.kron(a_prime, b_prime) + np.kron(a, b_prime) + np.kron(a_prime, b) - np.kron(a, b)
    for c, c_prime in ops[2:]:
        f, f_prime = (
            0.5 * np.kron(f, c + c_prime) + 0.5 * np.kron(f_prime, c - c_prime),
            0.5 * np.kron(f_prime, c_prime + c) + 0.5 * np.kron(f, c_prime - c),
        )
    return f, f_prime


def klyshko_operator(
    settings: PartySettings,
    primed: bool = False,
    last_party_first: bool = False,
) -> BellOperator:
    """
    Оператор Белла-Клышко по рекурсии
    F_N = ½(A_N + A'_N)F_{N−1} + ½(A_N − A'_N)F'_{N−1}.

    A_N действует на частицу с наибольшим номером; last_party_first=True
    строит альтернативное назначение, в котором рекурсия идёт от частицы N
    к частице 1.

    Args:
        settings: Направления для N ≥ 2 частиц
        primed: Построить F'_N (все A_j ↔ A'_j)
        last_party_first: Альтернативный порядок частиц в рекурсии

    Raises:
        ArgumentError: N < 2
    """
    n = settings.n_parties
    if n < 2:
        raise ArgumentError(f"klyshko_operator: at least two parties required, got {n}")
    if primed:
        settings = settings.swapped()
    kind = BellKind.KLYSHKO_PRIMED if primed else BellKind.KLYSHKO

    if last_party_first:
        reversed_order = list(range(n, 0, -1))
        f, _ = _klyshko_pair(_party_ops(settings.permuted(reversed_order)))
        return _checked(n, permute_operator(f, reversed_order), kind)

    f, _ = _klyshko_pair(_party_ops(settings))
    return _checked(n, f, kind)


def klyshko_expansion_n3(settings: PartySettings) -> ComplexMatrix:
    """A'⊗B⊗C + A⊗B'⊗C + A⊗B⊗C' − A'⊗B'⊗C' - развёрнутая форма для N = 3."""
    if settings.n_parties != 3:
        raise ArgumentError("klyshko_expansion_n3: three parties required")
    (a, a_p), (b, b_p), (c, c_p) = _party_ops(settings)

    def kron3(x, y, z):
        return np.kron(np.kron(x, y), z)

    return kron3(a_p, b, c) + kron3(a, b_p, c) + kron3(a, b, c_p) - kron3(a_p, b_p, c_p)


@lru_cache(maxsize=16)
def _klyshko_coefficients_cached(n: int) -> np.ndarray:
    coeffs = np.array([[1.0, 1.0], [1.0, -1.0]])  # [s_1, s_2]: AB, AB', A'B, −A'B'
    for _ in range(n - 2):
        swapped = np.flip(coeffs)
        coeffs = np.stack([(coeffs + swapped) / 2, (coeffs - swapped) / 2], axis=-1)
    coeffs.setflags(write=False)
    return coeffs


def klyshko_coefficients(n: int, primed: bool = False) -> np.ndarray:
    """
    Коэффициенты F_N при произведениях ⊗_j A_j^{(s_j)}, s_j = 0 для A_j и 1 для A'_j.

    Returns:
        np.ndarray: Массив формы (2,)*N со значениями из {−1, 0, 1}
    """
    if n < 2:
        raise ArgumentError(f"klyshko_coefficients: n must be at least 2, got {n}")
    coeffs = _klyshko_coefficients_cached(n)
    return np.flip(coeffs).copy() if primed else coeffs.copy()


def correlation_tensor(state: QuantumState) -> np.ndarray:
    """
    T_{i_1…i_N} = Tr ρ σ_{i_1}⊗…⊗σ_{i_N}, i ∈ {x, y, z}.

    Returns:
        np.ndarray: Действительный массив формы (3,)*N
    """
    n = state.n_parties
    paulis = np.stack([pauli(axis) for axis in "xyz"])
    # Свёртка ρ в тензорной форме с σ на каждой частице
    rho = np.asarray(state.rho).reshape((2,) * (2 * n))
    operands = [rho, list(range(2 * n))]
    for k in range(n):
        # σ_i[col, row]: Tr ρσ = Σ ρ_{rc} σ_{cr}
        operands += [paulis, [2 * n + k, n + k, k]]
    tensor = np.einsum(*operands, [2 * n + k for k in range(n)], optimize=True)
    return tensor.real


def klyshko_value(correlations: np.ndarray, coefficients: np.ndarray, directions: np.ndarray) -> float:
    """
    E(F_N) по тензору корреляций.

    Args:
        correlations: Тензор формы (3,)*N
        coefficients: Коэффициенты формы (2,)*N
        directions: Направления формы (N, 2, 3)
    """
    n = correlations.ndim
    if coefficients.ndim != n or directions.shape != (n, 2, 3):
        raise DimensionMismatchError("klyshko_value: inconsistent operand shapes")
    operands = [coefficients, list(range(n)), correlations, list(range(n, 2 * n))]
    for k in range(n):
        operands += [directions[k], [k, n + k]]
    return float(np.einsum(*operands, [], optimize=False))


def mermin_operator() -> BellOperator:
    """σ_x⊗σ_y⊗σ_y + σ_y⊗σ_x⊗σ_y + σ_y⊗σ_y⊗σ_x − σ_x⊗σ_x⊗σ_x."""
    matrix = pauli_string("xyy") + pauli_string("yxy") + pauli_string("yyx") - pauli_string("xxx")
    return _checked(3, matrix, BellKind.MERMIN)


def mermin_corner_form() -> ComplexMatrix:
    """−4(|↓↓↓⟩⟨↑↑↑| + |↑↑↑⟩⟨↓↓↓|)."""
    up, down = np.zeros(8, dtype=np.complex128), np.zeros(8, dtype=np.complex128)
    up[0], down[7] = 1.0, 1.0
    return -4 * (np.outer(down, up.conj()) + np.outer(up, down.conj()))


def verify_identity_eq31() -> Tuple[bool, float]:
    """
    Сравнивает комбинацию Мермина с −4(|↓↓↓⟩⟨↑↑↑| + h.c.) поэлементно.

    Returns:
        Tuple[bool, float]: (тождество выполнено, максимальный дефект)
    """
    defect = float(np.max(np.abs(mermin_operator().matrix - mermin_corner_form())))
    holds = defect < ALGEBRAIC_TOL
    logger.debug(f"Operator identity defect: {defect:.3e}")
    return holds, defect


def reference_settings(name: str) -> PartySettings:
    """
    Наборы углов, при которых известны значения E(F_3).

    Args:
        name: 'ghz' (|E| = 4), 'psi-b' (|E| = 4) или 'eq5' (|E| = 2√2)

    Raises:
        ArgumentError: Неизвестное имя набора
    """
    quarter = math.pi / 4
    if name == "ghz":
        return PlanarSettings(Plane.XY, ((math.pi / 2, 0.0),) * 3).to_party_settings()
    if name in ("psi-b", "psi_b"):
        return PlanarSettings(
            Plane.XY, ((math.pi / 2, 0.0), (quarter, -quarter), (quarter, 3 * quarter))
        ).to_party_settings()
    if name == "eq5":
        tail = PlanarSettings(Plane.XY, ((0.0, math.pi / 2), (quarter, -quarter))).to_party_settings()
        return PartySettings(
            (Z_DIRECTION,) + tail.unprimed,
            (Z_DIRECTION,) + tail.primed,
        )
    raise ArgumentError(f"reference_settings: unknown settings set {name!r} (ghz, psi-b, eq5)")


def random_direction(rng: np.random.Generator) -> SpinDirection:
    vector = rng.normal(size=3)
    return SpinDirection.from_vector(vector / np.linalg.norm(vector))


def random_party_settings(n: int, rng: np.random.Generator) -> PartySettings:
    """Случайные направления, равномерные на сфере."""
    return PartySettings.from_pairs([(random_direction(rng), random_direction(rng)) for _ in range(n)])
