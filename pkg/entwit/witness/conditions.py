"""
Достаточные условия истинной N-частичной запутанности.

Условие A: |E(F_N)| > 2^{N/2}. Условие B: F(ρ) > ½.
"""

import logging
from typing import Dict, Optional, Tuple

import numpy as np

from entwit.config.analysis_config import ALGEBRAIC_TOL, PHYSICAL_TOL
from entwit.exceptions import ArgumentError, ConsistencyError, DimensionMismatchError
from entwit.bell.operators import klyshko_operator
from entwit.hilbert.operators import expectation, matrix_element, population
from entwit.hilbert.states import ghz, ghz_class_state, psi_b
from entwit.models.enums import Sign, ThresholdStatus, Verdict
from entwit.models.measurement import (
    FidelityReport,
    MeasuredValue,
    WitnessVerdict,
    klyshko_thresholds,
    threshold_status,
)
from entwit.models.settings import PartySettings
from entwit.models.state import BasisIndex, QuantumState
from entwit.utils.validation import ensure_valid, validate_fidelity_components

logger = logging.getLogger(__name__)

FIDELITY_THRESHOLD = 0.5


def classify(measured: MeasuredValue, n_parties: int, tol: float = 0.0) -> WitnessVerdict:
    """
    Вердикт по 1σ-интервалу относительно порогов 2 и 2^{N/2}.

    Args:
        measured: |E(F_N)| с погрешностью
        n_parties: Число частиц N
        tol: Значения в пределах tol от порога считаются не превышающими его
    """
    thresholds = klyshko_thresholds(n_parties)
    lr_status = threshold_status(measured, thresholds[0], tol)
    np_status = threshold_status(measured, thresholds[1], tol)

    if np_status is ThresholdStatus.ABOVE:
        classification = Verdict.N_PARTITE_WITNESSED
    elif lr_status is ThresholdStatus.ABOVE:
        classification = Verdict.LOCAL_REALISM_VIOLATED
    elif lr_status is ThresholdStatus.STRADDLES:
        classification = Verdict.INCONCLUSIVE
    else:
        classification = Verdict.NO_VIOLATION

    return WitnessVerdict(
        classification=classification,
        tested_value=measured,
        thresholds=thresholds,
        n_parties=n_parties,
        local_realism_status=lr_status,
        n_partite_status=np_status,
    )


def klyshko_expectation(state: QuantumState, settings: PartySettings) -> float:
    """E(F_N) в состоянии для заданных настроек."""
    if settings.n_parties != state.n_parties:
        raise DimensionMismatchError(
            f"settings describe {settings.n_parties} parties, state has {state.n_parties}"
        )
    return expectation(state, klyshko_operator(settings).matrix)


def condition_a(state: QuantumState, settings: PartySettings, tol: float = PHYSICAL_TOL) -> WitnessVerdict:
    """
    Условие A для состояния: tested_value = |E(F_N)| с нулевой sigma.

    Raises:
        DimensionMismatchError: Число частиц в настройках и состоянии различается
    """
    value = abs(klyshko_expectation(state, settings))
    verdict = classify(MeasuredValue.exact(value), state.n_parties, tol)
    logger.debug(f"Condition A: |E(F_{state.n_parties})| = {value:.12g} -> {verdict.classification.value}")
    return verdict


def condition_a_from_data(measured: MeasuredValue, n: int) -> WitnessVerdict:
    """
    Условие A для измеренного значения; пересечение интервала с порогом даёт inconclusive.

    Raises:
        ArgumentError: n < 2
    """
    if n < 2:
        raise ArgumentError(f"condition_a_from_data: n must be at least 2, got {n}")
    return classify(abs(MeasuredValue.coerce(measured)), n)


def fidelity(state: QuantumState, target: QuantumState) -> float:
    """
    ⟨target|ρ|target⟩.

    Raises:
        ArgumentError: Цель не является чистым состоянием
        DimensionMismatchError: Размерности различаются
    """
    if not target.is_pure:
        raise ArgumentError("fidelity: target must be a pure state")
    if target.n_parties != state.n_parties:
        raise DimensionMismatchError(
            f"fidelity: target has {target.n_parties} parties, state has {state.n_parties}"
        )
    ket = np.asarray(target.ket)
    value = complex(ket.conj() @ state.rho @ ket)
    if abs(value.imag) > PHYSICAL_TOL:
        raise ConsistencyError(f"fidelity: imaginary part {value.imag:.3e} exceeds {PHYSICAL_TOL}")
    return value.real


def fidelity_from_components(
    p_up: MeasuredValue,
    p_down: MeasuredValue,
    re_offdiag: MeasuredValue,
) -> FidelityReport:
    """
    F = ½(P_↑ + P_↓) + Re ρ_{↑↓} с квадратурной погрешностью.

    Raises:
        ValidationError: Населённости вне [0, 1] или P_↑ + P_↓ > 1 с учётом sigma
    """
    p_up, p_down, re_offdiag = (MeasuredValue.coerce(v) for v in (p_up, p_down, re_offdiag))
    ensure_valid(validate_fidelity_components(p_up, p_down), "fidelity_from_components")

    value = 0.5 * (p_up + p_down) + re_offdiag
    return FidelityReport(
        p_up=p_up,
        p_down=p_down,
        re_offdiag=re_offdiag,
        fidelity=value,
        condition_b_met=value.lower > FIDELITY_THRESHOLD,
    )


def fidelity_components(state: QuantumState, up: BasisIndex, down: BasisIndex) -> FidelityReport:
    """Компоненты P_↑, P_↓, Re ρ_{↑↓}, прочитанные из матрицы состояния."""
    return fidelity_from_components(
        MeasuredValue.exact(population(state, up)),
        MeasuredValue.exact(population(state, down)),
        MeasuredValue.exact(matrix_element(state, up, down).real),
    )


def condition_b(state: QuantumState, target: QuantumState) -> bool:
    """F(ρ) > ½ (с допуском 1e-12)."""
    return fidelity(state, target) > FIDELITY_THRESHOLD + ALGEBRAIC_TOL


def ghz_class_targets(n: int = 3) -> Dict[str, QuantumState]:
    """
    Все максимально запутанные состояния вида (|x⟩ ± |x̄⟩)/√2, x начинается с ↑.

    Ключи: 'uuu+', 'uuu-', 'uud+', ... ; для n = 3 пары индексов (1,8), (2,7), (3,6), (4,5).
    """
    if n < 2:
        raise ArgumentError(f"ghz_class_targets: n must be at least 2, got {n}")
    targets = {}
    for label in range(1, 2 ** (n - 1) + 1):
        index = BasisIndex(label, n)
        spins = "".join("u" if b == 0 else "d" for b in index.bits)
        for sign in (Sign.PLUS, Sign.MINUS):
            targets[spins + sign.value] = ghz_class_state(spins, sign)
    return targets


def ghz_class_pair(spins: str) -> Tuple[BasisIndex, BasisIndex]:
    """Метки |x⟩ и |x̄⟩, например 'uud' → (2, 7)."""
    index = BasisIndex.from_spins(spins)
    return index, BasisIndex.from_bits([1 - b for b in index.bits])


def resolve_target(name: str, n: Optional[int] = None) -> QuantumState:
    """
    Цель по имени: 'ghz', 'psi-b' или ключ ghz_class_targets ('uud+', ...).

    Raises:
        ArgumentError: Неизвестное имя
    """
    n = 3 if n is None else n
    if name == "ghz":
        return ghz(n)
    if name in ("psi-b", "psi_b"):
        if n != 3:
            raise ArgumentError("psi-b target is defined for three parties only")
        return psi_b()
    targets = ghz_class_targets(n)
    if name not in targets:
        raise ArgumentError(f"unknown fidelity target {name!r}; expected ghz, psi-b or one of {sorted(targets)}")
    return targets[name]
