from enum import Enum


class Axis(Enum):
    X = "x"
    Y = "y"
    Z = "z"


class StateKind(Enum):
    PURE = "pure"
    DENSITY = "density"


class Plane(Enum):
    XY = "xy"
    XZ = "xz"


class Sign(Enum):
    PLUS = "+"
    MINUS = "-"

    @property
    def factor(self) -> int:
        return 1 if self is Sign.PLUS else -1


class BellKind(Enum):
    CHSH = "chsh"
    KLYSHKO = "klyshko"
    KLYSHKO_PRIMED = "klyshko_primed"
    MERMIN = "mermin"


class Verdict(Enum):
    """Классификация по условию A."""
    NO_VIOLATION = "no_violation"
    LOCAL_REALISM_VIOLATED = "local_realism_violated"
    N_PARTITE_WITNESSED = "n_partite_witnessed"
    INCONCLUSIVE = "inconclusive"


class ThresholdStatus(Enum):
    """Положение 1σ-интервала относительно одного порога."""
    ABOVE = "above"
    BELOW = "below"
    STRADDLES = "straddles"


class ScanObservable(Enum):
    SACKETT_PLUS = "sackett-plus"
    SACKETT_MINUS = "sackett-minus"
    BELL_DIFF = "bell-diff"


class StatePreset(Enum):
    GHZ = "ghz"
    PSI_B = "psi-b"
    EQ5 = "eq5"
    RHO_MIX = "rho-mix"
    W_STATE = "w-state"
