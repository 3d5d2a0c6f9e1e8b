"""
Конструкторы состояний: GHZ, ψ_B, смеси, перестановки частиц и состояния
из анализа экспериментов (смесь уравнения 5, ρ_mix).
"""

import itertools
import math
from typing import List, Optional, Sequence, Tuple

import numpy as np

from entwit.config.analysis_config import WEIGHT_SUM_TOL
from entwit.exceptions import ArgumentError, DimensionMismatchError
from entwit.hilbert.operators import identity, projector, tensor, x_projector, z_projector
from entwit.models.enums import Sign
from entwit.models.state import BasisIndex, ComplexMatrix, QuantumState

SQRT_HALF = 1 / math.sqrt(2)

# Двухчастичные векторы: синглет (|↑↓⟩ − |↓↑⟩)/√2 и триплет (|↑↓⟩ + |↓↑⟩)/√2
SINGLET = np.array([0, 1, -1, 0], dtype=np.complex128) * SQRT_HALF
TRIPLET = np.array([0, 1, 1, 0], dtype=np.complex128) * SQRT_HALF


def ghz(n: int) -> QuantumState:
    """
    (|↑…↑⟩ + |↓…↓⟩)/√2.

    Raises:
        ArgumentError: n < 2
    """
    if n < 2:
        raise ArgumentError(f"ghz: n must be at least 2, got {n}")
    ket = np.zeros(2 ** n, dtype=np.complex128)
    ket[0] = ket[-1] = SQRT_HALF
    return QuantumState.from_ket(ket)


def ghz_class_state(spins: str, sign: Sign = Sign.PLUS) -> QuantumState:
    """
    (|x⟩ ± |x̄⟩)/√2 для базисного вектора x и его побитового дополнения.

    Args:
        spins: Базисный вектор x, например '↑↑↓' или 'uud'
        sign: Относительная фаза

    Returns:
        QuantumState: Чистое состояние
    """
    index = BasisIndex.from_spins(spins)
    if index.n_parties < 2:
        raise ArgumentError("ghz_class_state: at least two parties required")
    partner = BasisIndex.from_bits([1 - b for b in index.bits])
    ket = np.zeros(2 ** index.n_parties, dtype=np.complex128)
    ket[index.index] = SQRT_HALF
    ket[partner.index] = sign.factor * SQRT_HALF
    return QuantumState.from_ket(ket)


def psi_b() -> QuantumState:
    """(|↑↑↓⟩ + |↓↓↑⟩)/√2 - индексы 2 и 7."""
    return ghz_class_state("↑↑↓", Sign.PLUS)


def basis_state(spins: str) -> QuantumState:
    index = BasisIndex.from_spins(spins)
    ket = np.zeros(2 ** index.n_parties, dtype=np.complex128)
    ket[index.index] = 1.0
    return QuantumState.from_ket(ket)


def product_state(kets: Sequence[Sequence[complex]]) -> QuantumState:
    """Произведение однокубитных векторов (нормируются)."""
    if not kets:
        raise ArgumentError("product_state: empty factor list")
    factors = []
    for ket in kets:
        ket = np.asarray(ket, dtype=np.complex128)
        if ket.shape != (2,):
            raise ArgumentError(f"product_state: factor must have 2 amplitudes, got {ket.shape}")
        factors.append(ket / np.linalg.norm(ket))
    return QuantumState.from_ket(tensor([f.reshape(2, 1) for f in factors]).reshape(-1))


def mix(weights: Sequence[float], states: Sequence[QuantumState]) -> QuantumState:
    """
    Выпуклая комбинация Σ p_i ρ_i.

    Raises:
        ArgumentError: Разная длина списков, отрицательный вес, сумма весов ≠ 1
        DimensionMismatchError: Состояния разной размерности
    """
    if len(weights) != len(states) or not states:
        raise ArgumentError(f"mix: {len(weights)} weights for {len(states)} states")
    if any(w < 0 for w in weights):
        raise ArgumentError(f"mix: negative weight in {list(weights)}")
    weight_sum = math.fsum(weights)
    if abs(weight_sum - 1.0) > WEIGHT_SUM_TOL:
        raise ArgumentError(f"mix: weights sum to {weight_sum!r}, not 1")
    n_parties = states[0].n_parties
    if any(s.n_parties != n_parties for s in states):
        raise DimensionMismatchError("mix: states have different numbers of parties")
    rho = sum(w * s.rho for w, s in zip(weights, states))
    return QuantumState.from_density(rho)


def _check_permutation(perm: Sequence[int], n: int) -> List[int]:
    perm = [int(p) for p in perm]
    if sorted(perm) != list(range(1, n + 1)):
        raise ArgumentError(f"invalid permutation {perm} of parties 1..{n}")
    return perm


def permute_operator(matrix: ComplexMatrix, perm: Sequence[int]) -> ComplexMatrix:
    """
    Переупорядочивает тензорные множители: новая частица k - старая perm[k−1].

    Args:
        matrix: Оператор на N кубитах
        perm: Перестановка чисел 1..N
    """
    matrix = np.asarray(matrix, dtype=np.complex128)
    n = matrix.shape[0].bit_length() - 1
    perm = _check_permutation(perm, n)
    axes = [p - 1 for p in perm]
    tensor_form = matrix.reshape((2,) * (2 * n))
    permuted = np.transpose(tensor_form, axes + [n + a for a in axes])
    return permuted.reshape(2 ** n, 2 ** n)


def permute_parties(state: QuantumState, perm: Sequence[int]) -> QuantumState:
    """
    Переименование частиц: новая частица k - старая perm[k−1].

    Пример: swap(2,3) = [1, 3, 2] переводит ψ_B в (|↑↓↑⟩ + |↓↑↓⟩)/√2.
    """
    n = state.n_parties
    perm = _check_permutation(perm, n)
    if state.is_pure:
        axes = [p - 1 for p in perm]
        ket = np.transpose(np.asarray(state.ket).reshape((2,) * n), axes).reshape(-1)
        return QuantumState.from_ket(ket)
    return QuantumState.from_density(permute_operator(state.rho, perm))


def embed(op: ComplexMatrix, parties: Sequence[int], n: int) -> ComplexMatrix:
    """
    Вкладывает оператор на подмножестве частиц в пространство N частиц.

    Args:
        op: Оператор на len(parties) кубитах, множители в порядке parties
        parties: Номера частиц (с 1)
        n: Общее число частиц
    """
    parties = [int(p) for p in parties]
    if len(set(parties)) != len(parties) or not all(1 <= p <= n for p in parties):
        raise ArgumentError(f"embed: invalid parties {parties} for n = {n}")
    op = np.asarray(op, dtype=np.complex128)
    if op.shape != (2 ** len(parties),) * 2:
        raise DimensionMismatchError(f"embed: operator shape {op.shape} does not fit {len(parties)} parties")
    rest = [p for p in range(1, n + 1) if p not in parties]
    full = np.kron(op, identity(len(rest))) if rest else op
    order = parties + rest
    perm = [order.index(k) + 1 for k in range(1, n + 1)]
    return permute_operator(full, perm)


def singlet_projector() -> ComplexMatrix:
    return projector(SINGLET)


def triplet_projector() -> ComplexMatrix:
    return projector(TRIPLET)


def eq5_state() -> QuantumState:
    """
    ½(P_↑⁽¹⁾⊗P_S⁽²³⁾ + P_↓⁽¹⁾⊗P_T⁽²³⁾) - только двухчастичная запутанность.
    """
    rho = 0.5 * (
        np.kron(z_projector(Sign.PLUS), singlet_projector())
        + np.kron(z_projector(Sign.MINUS), triplet_projector())
    )
    return QuantumState.from_density(rho)


def rho_mix() -> QuantumState:
    """
    ½(P₊⁽²⁾⊗P_S⁽¹³⁾ + P₋⁽²⁾⊗P_T⁽¹³⁾), P± - собственные проекторы σ_x частицы 2.
    """
    rho = 0.5 * (
        embed(np.kron(x_projector(Sign.PLUS), singlet_projector()), [2, 1, 3], 3)
        + embed(np.kron(x_projector(Sign.MINUS), triplet_projector()), [2, 1, 3], 3)
    )
    return QuantumState.from_density(rho)


def bipartitions(n: int) -> List[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
    """Все разбиения {1..n} на два непустых блока (K содержит частицу 1)."""
    parties = list(range(1, n + 1))
    result = []
    for size in range(1, n):
        for block in itertools.combinations(parties, size):
            if 1 not in block:
                continue
            rest = tuple(p for p in parties if p not in block)
            result.append((block, rest))
    return result


# Случайные состояния для проверки свойств


def random_ket(n: int, rng: np.random.Generator) -> np.ndarray:
    ket = rng.normal(size=2 ** n) + 1j * rng.normal(size=2 ** n)
    return ket / np.linalg.norm(ket)


def random_density_matrix(n: int, rng: np.random.Generator, rank: Optional[int] = None) -> ComplexMatrix:
    """Матрица Гинибра G·G†/Tr заданного ранга."""
    dim = 2 ** n
    rank = dim if rank is None else rank
    g = rng.normal(size=(dim, rank)) + 1j * rng.normal(size=(dim, rank))
    rho = g @ g.conj().T
    rho = (rho + rho.conj().T) / 2
    return rho / np.trace(rho).real


def random_density_state(n: int, rng: np.random.Generator, rank: Optional[int] = None) -> QuantumState:
    return QuantumState.from_density(random_density_matrix(n, rng, rank))


def random_product_state(n: int, rng: np.random.Generator) -> QuantumState:
    return product_state([random_ket(1, rng) for _ in range(n)])


def random_biseparable_pure(
    n: int,
    block: Sequence[int],
    rng: np.random.Generator,
) -> QuantumState:
    """|φ_K⟩⊗|φ_K'⟩ со случайными чистыми множителями на блоке K и его дополнении."""
    rest = [p for p in range(1, n + 1) if p not in block]
    if not block or not rest:
        raise ArgumentError(f"random_biseparable_pure: {list(block)} is not a proper block of 1..{n}")
    ket = np.kron(random_ket(len(block), rng), random_ket(len(rest), rng))
    order = list(block) + rest
    axes = [order.index(k) for k in range(1, n + 1)]
    return QuantumState.from_ket(np.transpose(ket.reshape((2,) * n), axes).reshape(-1))


def random_biseparable_density(
    n: int,
    block: Sequence[int],
    rng: np.random.Generator,
) -> QuantumState:
    """ρ_K ⊗ ρ_K' со случайными смешанными множителями."""
    rest = [p for p in range(1, n + 1) if p not in block]
    rho = np.kron(random_density_matrix(len(block), rng), random_density_matrix(len(rest), rng))
    return QuantumState.from_density(embed(rho, list(block) + rest, n))


def random_biseparable_mixture(n: int, rng: np.random.Generator, terms: int = 4, pure: bool = False) -> QuantumState:
    """Случайная смесь бисепарабельных состояний по случайным разбиениям."""
    partitions = bipartitions(n)
    factory = random_biseparable_pure if pure else random_biseparable_density
    states = [factory(n, partitions[rng.integers(len(partitions))][0], rng) for _ in range(terms)]
    weights = rng.dirichlet(np.ones(terms))
    weights = list(weights / math.fsum(weights))
    weights[-1] = 1.0 - math.fsum(weights[:-1])
    return mix(weights, states)
