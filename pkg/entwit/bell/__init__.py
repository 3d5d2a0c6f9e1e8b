"""
Операторы Белла и наблюдаемые экспериментов.
"""

from entwit.bell.observables import (
    bell_signal_difference_observable,
    conditional_bell_signal,
    sackett_observable,
)
from entwit.bell.operators import (
    chsh_operator,
    correlation_tensor,
    klyshko_coefficients,
    klyshko_operator,
    mermin_operator,
    reference_settings,
    verify_identity_eq31,
)
