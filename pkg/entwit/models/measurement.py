"""
Измеренные величины с погрешностью и отчёты по условиям A и B.
"""

import math
from dataclasses import dataclass
from typing import Dict, Tuple, Union

from entwit.exceptions import ValidationError
from entwit.models.enums import ThresholdStatus, Verdict

Number = Union[int, float]


@dataclass(frozen=True)
class MeasuredValue:
    """
    Значение с погрешностью 1σ.

    Суммы и разности складывают sigma в квадратуре, умножение на
    константу c масштабирует sigma на |c|.
    """
    value: float
    sigma: float = 0.0

    def __post_init__(self):
        if not math.isfinite(self.value) or not math.isfinite(self.sigma):
            raise ValidationError(f"MeasuredValue: non-finite entry ({self.value}, {self.sigma})")
        if self.sigma < 0:
            raise ValidationError(f"MeasuredValue: sigma must be non-negative, got {self.sigma}")

    @classmethod
    def exact(cls, value: Number) -> "MeasuredValue":
        return cls(float(value), 0.0)

    @classmethod
    def coerce(cls, other: Union["MeasuredValue", Number]) -> "MeasuredValue":
        return other if isinstance(other, MeasuredValue) else cls.exact(other)

    def __add__(self, other):
        other = MeasuredValue.coerce(other)
        return MeasuredValue(self.value + other.value, math.hypot(self.sigma, other.sigma))

    __radd__ = __add__

    def __sub__(self, other):
        other = MeasuredValue.coerce(other)
        return MeasuredValue(self.value - other.value, math.hypot(self.sigma, other.sigma))

    def __rsub__(self, other):
        return MeasuredValue.coerce(other) - self

    def __neg__(self):
        return MeasuredValue(-self.value, self.sigma)

    def __abs__(self):
        return MeasuredValue(abs(self.value), self.sigma)

    def __mul__(self, factor: Number):
        if isinstance(factor, MeasuredValue):
            return NotImplemented
        return MeasuredValue(self.value * factor, abs(factor) * self.sigma)

    __rmul__ = __mul__

    def __truediv__(self, divisor: Number):
        if isinstance(divisor, MeasuredValue):
            return NotImplemented
        return self * (1.0 / divisor)

    @property
    def lower(self) -> float:
        return self.value - self.sigma

    @property
    def upper(self) -> float:
        return self.value + self.sigma

    def to_dict(self) -> Dict[str, float]:
        return {"value": self.value, "sigma": self.sigma}

    def __str__(self) -> str:
        return f"{self.value:.12g} ± {self.sigma:.12g}"


def total(values) -> MeasuredValue:
    """Сумма измеренных величин с квадратурной погрешностью."""
    result = MeasuredValue.exact(0.0)
    for value in values:
        result = result + value
    return result


def threshold_status(measured: MeasuredValue, threshold: float, tol: float = 0.0) -> ThresholdStatus:
    """
    Положение интервала [value − σ, value + σ] относительно порога.

    Значение, совпадающее с порогом в пределах tol, порог не превышает.
    """
    if measured.lower > threshold + tol:
        return ThresholdStatus.ABOVE
    if measured.upper <= threshold + tol:
        return ThresholdStatus.BELOW
    return ThresholdStatus.STRADDLES


def klyshko_thresholds(n_parties: int) -> Tuple[float, float, float]:
    """(локальный реализм, (N−1)-частичная запутанность, квантовый максимум)."""
    return 2.0, 2.0 ** (n_parties / 2), 2.0 ** ((n_parties + 1) / 2)


@dataclass(frozen=True)
class WitnessVerdict:
    classification: Verdict
    tested_value: MeasuredValue
    thresholds: Tuple[float, float, float]
    n_parties: int
    local_realism_status: ThresholdStatus
    n_partite_status: ThresholdStatus

    @property
    def violation_factor(self) -> float:
        return self.tested_value.value / self.thresholds[0]

    @property
    def witness_factor(self) -> float:
        """Множитель 2^{N/2 − 1}, который нужно превысить."""
        return self.thresholds[1] / self.thresholds[0]

    @property
    def local_realism_violated(self) -> bool:
        return self.local_realism_status is ThresholdStatus.ABOVE

    @property
    def n_partite_witnessed(self) -> bool:
        return self.n_partite_status is ThresholdStatus.ABOVE

    def summary(self) -> str:
        if self.local_realism_status is ThresholdStatus.ABOVE:
            lr = "local realism violated"
        elif self.local_realism_status is ThresholdStatus.STRADDLES:
            lr = "local realism: inconclusive"
        else:
            lr = "no local-realism violation"
        witness = {
            ThresholdStatus.ABOVE: "witnessed",
            ThresholdStatus.BELOW: "not witnessed",
            ThresholdStatus.STRADDLES: "inconclusive",
        }[self.n_partite_status]
        return f"{lr}; {self.n_parties}-particle witness: {witness}"

    def to_dict(self) -> Dict:
        local_bound, partite_bound, quantum_bound = self.thresholds
        return {
            "classification": self.classification.value,
            "n_parties": self.n_parties,
            "tested_value": self.tested_value.to_dict(),
            "threshold_local_realism": local_bound,
            "threshold_n_partite": partite_bound,
            "threshold_quantum_max": quantum_bound,
            "local_realism_status": self.local_realism_status.value,
            "n_partite_status": self.n_partite_status.value,
            "violation_factor": self.violation_factor,
            "witness_factor": self.witness_factor,
            "summary": self.summary(),
        }


@dataclass(frozen=True)
class FidelityReport:
    p_up: MeasuredValue
    p_down: MeasuredValue
    re_offdiag: MeasuredValue
    fidelity: MeasuredValue
    condition_b_met: bool

    def to_dict(self) -> Dict:
        return {
            "p_up": self.p_up.to_dict(),
            "p_down": self.p_down.to_dict(),
            "re_offdiag": self.re_offdiag.to_dict(),
            "fidelity": self.fidelity.to_dict(),
            "threshold": 0.5,
            "condition_b_met": self.condition_b_met,
        }
