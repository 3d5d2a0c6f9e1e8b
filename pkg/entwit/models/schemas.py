"""
Схемы JSON-документов: состояние, настройки, запись эксперимента.
"""

from typing import List, Literal, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, model_validator

ComplexPair = Tuple[float, float]
Vector3 = Tuple[float, float, float]


class StateDocument(BaseModel):
    model_config = ConfigDict(extra="forbid")

    n_parties: int = Field(..., ge=1, description="Число кубитов")
    kind: Literal["pure", "density"]
    ket: Optional[List[ComplexPair]] = Field(None, description="Амплитуды [re, im]")
    rho: Optional[List[List[ComplexPair]]] = Field(None, description="Матрица плотности по строкам")

    @model_validator(mode="after")
    def check_shapes(self) -> "StateDocument":
        dim = 2 ** self.n_parties
        if self.kind == "pure":
            if self.ket is None:
                raise ValueError("pure state requires 'ket'")
            if len(self.ket) != dim:
                raise ValueError(f"ket length {len(self.ket)} does not match 2^n_parties = {dim}")
        elif self.rho is None:
            raise ValueError("density state requires 'rho'")
        if self.rho is not None and (len(self.rho) != dim or any(len(row) != dim for row in self.rho)):
            raise ValueError(f"rho must be {dim}×{dim}")
        return self


class PartyEntry(BaseModel):
    model_config = ConfigDict(extra="forbid")

    a: Union[Vector3, float]
    a_prime: Union[Vector3, float]


class SettingsDocument(BaseModel):
    model_config = ConfigDict(extra="forbid")

    plane: Optional[Literal["xy", "xz"]] = None
    parties: List[PartyEntry] = Field(..., min_length=1)

    @model_validator(mode="after")
    def check_angles(self) -> "SettingsDocument":
        if self.plane is None:
            for number, party in enumerate(self.parties, start=1):
                if isinstance(party.a, float) or isinstance(party.a_prime, float):
                    raise ValueError(f"party {number}: angles are allowed only when 'plane' is set")
        return self


class MeasuredValueModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    value: float
    sigma: float = Field(0.0, ge=0.0)


class CorrelationModel(MeasuredValueModel):
    setting: str = Field(..., min_length=1)


class RecordDocument(BaseModel):
    model_config = ConfigDict(extra="forbid")

    name: str = Field(..., min_length=1)
    populations: Optional[List[MeasuredValueModel]] = Field(None, min_length=8, max_length=8)
    correlations: Optional[List[CorrelationModel]] = None
    signal_amplitude: Optional[MeasuredValueModel] = None
    mermin_value: Optional[MeasuredValueModel] = None
