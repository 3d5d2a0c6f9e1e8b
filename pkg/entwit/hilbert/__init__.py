"""
Плотная линейная алгебра на пространствах N кубитов.
"""

from entwit.hilbert.operators import (
    expectation,
    matrix_element,
    pauli,
    pauli_string,
    spin_op,
    tensor,
)
from entwit.hilbert.states import ghz, mix, permute_parties, psi_b
from entwit.utils.validation import validate_density
