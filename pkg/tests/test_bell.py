import math

import numpy as np
import pytest

from entwit.bell.observables import (
    bell_signal_difference_observable,
    conditional_bell_signal,
    sackett_observable,
)
from entwit.bell.operators import (
    chsh_operator,
    correlation_tensor,
    klyshko_coefficients,
    klyshko_expansion_n3,
    klyshko_operator,
    klyshko_value,
    mermin_operator,
    random_party_settings,
    reference_settings,
    verify_identity_eq31,
)
from entwit.exceptions import ArgumentError, UndefinedConditionalError
from entwit.hilbert.operators import expectation, matrix_element, planar_spin_op, tensor
from entwit.hilbert.states import (
    SINGLET,
    eq5_state,
    ghz,
    permute_parties,
    product_state,
    psi_b,
    random_density_state,
    rho_mix,
)
from entwit.models.enums import BellKind, Plane, Sign
from entwit.models.settings import PartySettings
from entwit.models.state import X_DIRECTION, Z_DIRECTION, QuantumState, SpinDirection


def test_chsh_singlet_reaches_tsirelson_bound():
    settings = PartySettings(
        (Z_DIRECTION, SpinDirection.from_angle(Plane.XZ, math.pi / 4)),
        (X_DIRECTION, SpinDirection.from_angle(Plane.XZ, 3 * math.pi / 4)),
    )
    operator = chsh_operator(settings)
    assert operator.kind is BellKind.CHSH
    assert abs(expectation(QuantumState.from_ket(SINGLET), operator.matrix)) == pytest.approx(2 * math.sqrt(2))


def test_chsh_requires_two_parties(rng):
    with pytest.raises(ArgumentError):
        chsh_operator(random_party_settings(3, rng))


def test_klyshko_requires_two_parties(rng):
    with pytest.raises(ArgumentError):
        klyshko_operator(random_party_settings(1, rng))


def test_klyshko_n2_is_chsh(rng):
    settings = random_party_settings(2, rng)
    assert np.allclose(klyshko_operator(settings).matrix, chsh_operator(settings).matrix)


def test_klyshko_n3_expansion(rng):
    for _ in range(10):
        settings = random_party_settings(3, rng)
        assert np.allclose(klyshko_operator(settings).matrix, klyshko_expansion_n3(settings), atol=1e-12)


def test_primed_operator_swaps_settings(rng):
    settings = random_party_settings(3, rng)
    primed = klyshko_operator(settings, primed=True)
    assert primed.kind is BellKind.KLYSHKO_PRIMED
    assert np.allclose(primed.matrix, klyshko_operator(settings.swapped()).matrix)


def test_alternative_party_order_agrees_for_three_parties(rng):
    for _ in range(10):
        settings = random_party_settings(3, rng)
        direct = klyshko_operator(settings).matrix
        reversed_order = klyshko_operator(settings, last_party_first=True).matrix
        assert np.allclose(direct, reversed_order, atol=1e-12)


@pytest.mark.parametrize("perm", [[2, 1, 3], [1, 3, 2], [3, 1, 2], [3, 2, 1]])
def test_klyshko_symmetric_under_party_relabeling(rng, perm):
    for _ in range(20):
        state = random_density_state(3, rng)
        settings = random_party_settings(3, rng)
        direct = expectation(state, klyshko_operator(settings).matrix)
        relabeled = expectation(permute_parties(state, perm), klyshko_operator(settings.permuted(perm)).matrix)
        assert relabeled == pytest.approx(direct, abs=1e-12)


@pytest.mark.parametrize("n, samples", [(2, 500), (3, 500), (4, 200)])
def test_klyshko_quantum_cap(rng, n, samples):
    cap = 2 ** ((n + 1) / 2)
    for _ in range(samples):
        operator = klyshko_operator(random_party_settings(n, rng)).matrix
        assert abs(expectation(random_density_state(n, rng), operator)) <= cap + 1e-9


def test_operator_is_read_only(rng):
    operator = klyshko_operator(random_party_settings(3, rng))
    with pytest.raises(ValueError):
        operator.matrix[0, 0] = 1.0


def test_klyshko_coefficients():
    assert np.array_equal(klyshko_coefficients(2), [[1, 1], [1, -1]])
    c3 = klyshko_coefficients(3)
    assert c3.shape == (2, 2, 2)
    # A'BC + AB'C + ABC' − A'B'C'
    assert c3[1, 0, 0] == 1 and c3[0, 1, 0] == 1 and c3[0, 0, 1] == 1 and c3[1, 1, 1] == -1
    assert c3[0, 0, 0] == 0
    assert set(np.unique(klyshko_coefficients(5))) <= {-1.0, 0.0, 1.0}
    with pytest.raises(ArgumentError):
        klyshko_coefficients(1)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_correlation_contraction_matches_matrix(rng, n):
    for _ in range(5):
        state = random_density_state(n, rng)
        settings = random_party_settings(n, rng)
        contracted = klyshko_value(correlation_tensor(state), klyshko_coefficients(n), settings.as_array())
        assert contracted == pytest.approx(expectation(state, klyshko_operator(settings).matrix), abs=1e-10)


def test_correlation_tensor_of_ghz():
    t = correlation_tensor(ghz(3))
    assert t[0, 0, 0] == pytest.approx(1.0)  # xxx
    assert t[0, 1, 1] == pytest.approx(-1.0)  # xyy
    assert t[2, 2, 2] == pytest.approx(0.0)


@pytest.mark.parametrize("name, state_factory, expected", [
    ("ghz", lambda: ghz(3), 4.0),
    ("psi-b", psi_b, 4.0),
    ("eq5", eq5_state, 2 * math.sqrt(2)),
])
def test_reference_settings_values(name, state_factory, expected):
    operator = klyshko_operator(reference_settings(name))
    assert abs(expectation(state_factory(), operator.matrix)) == pytest.approx(expected, abs=1e-9)


def test_reference_settings_unknown_name():
    with pytest.raises(ArgumentError):
        reference_settings("bell")


def test_xy_plane_cosines(rng):
    for _ in range(20):
        angles = rng.uniform(0, 2 * math.pi, size=3)
        a, b, c = angles
        op = tensor([planar_spin_op(x) for x in angles])
        assert expectation(psi_b(), op) == pytest.approx(math.cos(a + b - c), abs=1e-9)
        assert expectation(ghz(3), op) == pytest.approx(math.cos(a + b + c), abs=1e-9)


def test_mermin_identity():
    holds, defect = verify_identity_eq31()
    assert holds
    assert defect < 1e-12


def test_mermin_measures_corner_element(rng):
    mermin = mermin_operator().matrix
    for _ in range(50):
        state = random_density_state(3, rng)
        assert expectation(state, mermin) == pytest.approx(-8 * matrix_element(state, 1, 8).real, abs=1e-9)


def test_sackett_on_ghz():
    for phi in np.linspace(0, 2 * math.pi, 7):
        assert expectation(ghz(3), sackett_observable(Sign.PLUS, phi)) == pytest.approx(math.cos(3 * phi), abs=1e-12)
        assert expectation(ghz(3), sackett_observable(Sign.MINUS, phi)) == pytest.approx(math.cos(phi), abs=1e-12)


def test_difference_signal():
    for phi in np.linspace(0, 2 * math.pi, 9):
        observable = bell_signal_difference_observable(phi)
        assert expectation(psi_b(), observable) == pytest.approx(math.cos(phi), abs=1e-12)
        assert expectation(rho_mix(), observable) == pytest.approx(-math.cos(phi), abs=1e-12)


def test_conditional_bell_signals():
    phi = 0.7
    assert conditional_bell_signal(psi_b(), Sign.PLUS, phi) == pytest.approx(math.cos(phi))
    assert conditional_bell_signal(psi_b(), Sign.MINUS, phi) == pytest.approx(-math.cos(phi))
    assert conditional_bell_signal(rho_mix(), Sign.PLUS, phi) == pytest.approx(-math.cos(phi))


def test_conditional_signal_undefined():
    # Частица 2 в собственном состоянии σ_x с −1
    state = product_state([[1, 0], [1, -1], [1, 0]])
    with pytest.raises(UndefinedConditionalError):
        conditional_bell_signal(state, Sign.PLUS, 0.0)
