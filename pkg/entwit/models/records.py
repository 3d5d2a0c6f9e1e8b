"""
Записи экспериментов и отчёты анализов.
"""

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from entwit.models.measurement import FidelityReport, MeasuredValue, WitnessVerdict


@dataclass(frozen=True)
class PopulationTable:
    """Населённости z-базиса, индексы BasisIndex 1..8."""
    entries: Tuple[MeasuredValue, ...]

    @classmethod
    def from_values(cls, values: Sequence[float], sigma: float = 0.0) -> "PopulationTable":
        return cls(tuple(MeasuredValue(float(v), sigma) for v in values))

    def __getitem__(self, label: int) -> MeasuredValue:
        if not 1 <= label <= len(self.entries):
            raise IndexError(f"population label {label} out of range [1, {len(self.entries)}]")
        return self.entries[label - 1]

    def __len__(self) -> int:
        return len(self.entries)

    @property
    def values(self) -> List[float]:
        return [e.value for e in self.entries]

    def to_list(self) -> List[Dict[str, float]]:
        return [e.to_dict() for e in self.entries]


@dataclass(frozen=True)
class Correlation:
    setting: str
    measured: MeasuredValue


@dataclass(frozen=True)
class ExperimentRecord:
    name: str
    populations: Optional[PopulationTable] = None
    correlations: Optional[Tuple[Correlation, ...]] = None
    signal_amplitude: Optional[MeasuredValue] = None
    mermin_value: Optional[MeasuredValue] = None

    def to_dict(self) -> Dict:
        return {
            "name": self.name,
            "populations": self.populations.to_list() if self.populations else None,
            "signal_amplitude": self.signal_amplitude.to_dict() if self.signal_amplitude else None,
            "mermin_value": self.mermin_value.to_dict() if self.mermin_value else None,
            "correlations": (
                [{"setting": c.setting, **c.measured.to_dict()} for c in self.correlations]
                if self.correlations is not None else None
            ),
        }


@dataclass(frozen=True)
class WorstCaseReport:
    """
    Наихудшее разложение ρ = ασ + βτ + γυ + δω.

    alpha, beta, gamma - доли смеси (не половины), w = α + β + γ.
    """
    alpha: MeasuredValue
    beta: MeasuredValue
    gamma: MeasuredValue
    w: MeasuredValue
    amplitude: MeasuredValue
    corrected_offdiag: MeasuredValue  # 2·Re ρ_72 = A − w
    corrected_re_offdiag: MeasuredValue  # Re ρ_72
    target_populations: Tuple[MeasuredValue, MeasuredValue]  # P_2, P_7
    corrected_fidelity: MeasuredValue
    selected_labels: Dict[str, int] = field(default_factory=dict)

    @property
    def delta(self) -> float:
        return 1.0 - self.w.value

    def to_dict(self) -> Dict:
        return {
            "alpha": self.alpha.to_dict(),
            "beta": self.beta.to_dict(),
            "gamma": self.gamma.to_dict(),
            "alpha_half": (self.alpha / 2).to_dict(),
            "beta_half": (self.beta / 2).to_dict(),
            "gamma_half": (self.gamma / 2).to_dict(),
            "delta": self.delta,
            "w": self.w.to_dict(),
            "amplitude": self.amplitude.to_dict(),
            "corrected_two_re_rho72": self.corrected_offdiag.to_dict(),
            "corrected_re_rho72": self.corrected_re_offdiag.to_dict(),
            "p2": self.target_populations[0].to_dict(),
            "p7": self.target_populations[1].to_dict(),
            "corrected_fidelity": self.corrected_fidelity.to_dict(),
            "selected_labels": dict(self.selected_labels),
        }


@dataclass(frozen=True)
class WFitReport:
    alpha: float
    predicted: Dict[str, float]
    targets: Dict[str, MeasuredValue]
    residuals: Dict[str, float]
    fitted_constraints: Tuple[str, ...]
    unmet_constraints: Tuple[str, ...]

    @property
    def max_fitted_residual(self) -> float:
        return max(abs(self.residuals[c]) for c in self.fitted_constraints)

    def to_dict(self) -> Dict:
        return {
            "alpha": self.alpha,
            "predicted": dict(self.predicted),
            "targets": {k: v.to_dict() for k, v in self.targets.items()},
            "residuals": dict(self.residuals),
            "fitted_constraints": list(self.fitted_constraints),
            "unmet_constraints": list(self.unmet_constraints),
        }


@dataclass(frozen=True)
class PanReport:
    """Вывод из значения комбинации Мермина."""
    mermin_value: MeasuredValue
    verdict: WitnessVerdict
    re_offdiag: MeasuredValue  # −E/8 со знаком
    abs_re_offdiag: MeasuredValue
    hypothetical: FidelityReport

    def to_dict(self) -> Dict:
        return {
            "mermin_value": self.mermin_value.to_dict(),
            "condition_a": self.verdict.to_dict(),
            "re_rho18": self.re_offdiag.to_dict(),
            "abs_re_rho18": self.abs_re_offdiag.to_dict(),
            "hypothetical_fidelity": self.hypothetical.to_dict(),
        }


@dataclass(frozen=True)
class RauschenbeutelReport:
    naive: FidelityReport  # ½(P_2 + P_7 + A)
    quoted_fidelity: MeasuredValue
    worst_case: WorstCaseReport
    condition_b_unmet: bool
    notes: Tuple[str, ...] = ()

    def to_dict(self) -> Dict:
        return {
            "naive_fidelity": self.naive.to_dict(),
            "quoted_fidelity": self.quoted_fidelity.to_dict(),
            "worst_case": self.worst_case.to_dict(),
            "condition_b_unmet": self.condition_b_unmet,
            "notes": list(self.notes),
        }


@dataclass(frozen=True)
class RhoMixReport:
    populations: Tuple[float, float]  # P_2, P_7
    amplitude: float
    procedure_fidelity: float
    element_27: complex
    phase_matched_fidelity: float
    psi_b_fidelity: float

    @property
    def abs_element_27(self) -> float:
        return abs(self.element_27)

    def to_dict(self) -> Dict:
        return {
            "p2": self.populations[0],
            "p7": self.populations[1],
            "amplitude": self.amplitude,
            "procedure_fidelity": self.procedure_fidelity,
            "rho27": [self.element_27.real, self.element_27.imag],
            "abs_rho27": self.abs_element_27,
            "true_fidelity": self.phase_matched_fidelity,
            "psi_b_fidelity": self.psi_b_fidelity,
        }


@dataclass(frozen=True)
class ReproductionCheck:
    """
    Сравнение вычисленного значения с опубликованным.

    comparison: 'abs' - |computed − expected| ≤ tolerance, 'le' - computed ≤ expected + tolerance,
    'equal' - точное совпадение (для категорий).
    """
    name: str
    group: str
    paper_value: object
    computed_value: object
    tolerance: float = 0.0
    comparison: str = "abs"
    note: str = ""

    @property
    def passed(self) -> bool:
        if self.comparison == "equal":
            return self.computed_value == self.paper_value
        if self.comparison == "le":
            return self.computed_value <= self.paper_value + self.tolerance
        return abs(self.computed_value - self.paper_value) <= self.tolerance

    def to_dict(self) -> Dict:
        return {
            "group": self.group,
            "paper_value": self.paper_value,
            "computed_value": self.computed_value,
            "tolerance": self.tolerance,
            "comparison": self.comparison,
            "pass": self.passed,
            "note": self.note,
        }


@dataclass(frozen=True)
class ReproductionReport:
    checks: Tuple[ReproductionCheck, ...]
    groups: Tuple[str, ...]

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    @property
    def failed(self) -> List[ReproductionCheck]:
        return [check for check in self.checks if not check.passed]

    def to_dict(self) -> Dict:
        return {
            "passed": self.passed,
            "groups": list(self.groups),
            "checks": {check.name: check.to_dict() for check in self.checks},
        }

    def to_rows(self) -> List[Dict]:
        return [{"name": check.name, **check.to_dict()} for check in self.checks]
