from dataclasses import dataclass
from typing import Dict, Sequence, Tuple

import numpy as np

from entwit.exceptions import ArgumentError, ValidationError
from entwit.models.enums import BellKind, Plane
from entwit.models.state import ComplexMatrix, SpinDirection


@dataclass(frozen=True)
class PartySettings:
    """Пары направлений (A_j, A'_j) для каждой частицы j = 1..N."""
    unprimed: Tuple[SpinDirection, ...]
    primed: Tuple[SpinDirection, ...]

    def __post_init__(self):
        if len(self.unprimed) != len(self.primed):
            raise ValidationError(
                f"PartySettings: {len(self.unprimed)} unprimed vs {len(self.primed)} primed directions"
            )
        if not self.unprimed:
            raise ValidationError("PartySettings: at least one party required")

    @classmethod
    def from_pairs(cls, pairs: Sequence[Tuple[SpinDirection, SpinDirection]]) -> "PartySettings":
        return cls(tuple(p[0] for p in pairs), tuple(p[1] for p in pairs))

    @property
    def n_parties(self) -> int:
        return len(self.unprimed)

    def pair(self, party: int) -> Tuple[SpinDirection, SpinDirection]:
        """party: номер частицы, начиная с 1."""
        return self.unprimed[party - 1], self.primed[party - 1]

    def swapped(self) -> "PartySettings":
        """Все A_j и A'_j переставлены."""
        return PartySettings(self.primed, self.unprimed)

    def permuted(self, perm: Sequence[int]) -> "PartySettings":
        """Настройки частицы perm[k] переходят на место k+1 (перестановка 1-based)."""
        return PartySettings(
            tuple(self.unprimed[p - 1] for p in perm),
            tuple(self.primed[p - 1] for p in perm),
        )

    def as_array(self) -> np.ndarray:
        """Массив формы (N, 2, 3): [частица, штрих, компонента]."""
        return np.array(
            [[a.vector, b.vector] for a, b in zip(self.unprimed, self.primed)], dtype=float
        )

    def to_dict(self) -> Dict:
        return {
            "plane": None,
            "parties": [
                {"a": a.as_list(), "a_prime": b.as_list()}
                for a, b in zip(self.unprimed, self.primed)
            ],
        }


@dataclass(frozen=True)
class PlanarSettings:
    """Углы настроек от оси x в одной плоскости: [(α, α'), (β, β'), (γ, γ'), ...]."""
    plane: Plane
    angles: Tuple[Tuple[float, float], ...]

    def __post_init__(self):
        if not self.angles:
            raise ArgumentError("PlanarSettings: at least one party required")

    @property
    def n_parties(self) -> int:
        return len(self.angles)

    def to_party_settings(self) -> PartySettings:
        return PartySettings.from_pairs([
            (SpinDirection.from_angle(self.plane, a), SpinDirection.from_angle(self.plane, a_prime))
            for a, a_prime in self.angles
        ])

    def to_dict(self) -> Dict:
        return {
            "plane": self.plane.value,
            "parties": [{"a": a, "a_prime": b} for a, b in self.angles],
        }


@dataclass(frozen=True, eq=False)
class BellOperator:
    n_parties: int
    matrix: ComplexMatrix
    kind: BellKind

    @property
    def dim(self) -> int:
        return 2 ** self.n_parties
