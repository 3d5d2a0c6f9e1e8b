"""
Наблюдаемые экспериментов: S±(φ) и сигналы Белла B±(φ).
"""

from entwit.config.analysis_config import ALGEBRAIC_TOL
from entwit.exceptions import UndefinedConditionalError
from entwit.hilbert.operators import expectation, identity, pauli, planar_spin_op, tensor, x_projector
from entwit.models.enums import Sign
from entwit.models.state import ComplexMatrix, QuantumState


def sackett_observable(sign: Sign, phi: float) -> ComplexMatrix:
    """
    S±(φ) = n_φ·σ ⊗ n_φ·σ ⊗ n_{±φ}·σ, n_φ = (cos φ, sin φ, 0).

    Args:
        sign: Знак угла третьей частицы
        phi: Угол в радианах
    """
    sign = Sign(sign)
    n_phi = planar_spin_op(phi)
    return tensor([n_phi, n_phi, planar_spin_op(sign.factor * phi)])


def bell_signal_difference_observable(phi: float) -> ComplexMatrix:
    """⟨B₊(φ)⟩ − ⟨B₋(φ)⟩ в безусловной форме: σ_x ⊗ σ_x ⊗ n_φ·σ."""
    return tensor([pauli("x"), pauli("x"), planar_spin_op(phi)])


def conditional_bell_signal(state: QuantumState, sign: Sign, phi: float) -> float:
    """
    Корреляция частиц 1 и 3 при исходе ± измерения σ_x частицы 2.

    B±(φ) = Tr(ρ σ_x⊗P±⊗n_φ·σ) / Tr(ρ I⊗P±⊗I)

    Raises:
        UndefinedConditionalError: Вероятность исхода частицы 2 не больше 1e-12
    """
    sign = Sign(sign)
    p_sign = x_projector(sign)
    probability = expectation(state, tensor([identity(1), p_sign, identity(1)]))
    if probability <= ALGEBRAIC_TOL:
        raise UndefinedConditionalError(
            f"conditional_bell_signal: P({sign.value}) of particle 2 is {probability:.3e}"
        )
    correlation = expectation(state, tensor([pauli("x"), p_sign, planar_spin_op(phi)]))
    return correlation / probability
