import math

import numpy as np
import pytest

from entwit.bell.operators import random_direction
from entwit.exceptions import ArgumentError, DimensionMismatchError, ValidationError
from entwit.hilbert.operators import (
    expectation,
    matrix_element,
    pauli,
    pauli_string,
    population,
    spin_op,
    tensor,
)
from entwit.hilbert.states import (
    basis_state,
    bipartitions,
    embed,
    ghz,
    ghz_class_state,
    mix,
    permute_operator,
    permute_parties,
    product_state,
    psi_b,
    random_density_state,
    random_ket,
    singlet_projector,
)
from entwit.models.enums import Plane, Sign, StateKind
from entwit.models.state import BasisIndex, QuantumState, SpinDirection
from entwit.utils.validation import validate_density, validate_density_matrix


def test_pauli_algebra():
    x, y, z = pauli("x"), pauli("y"), pauli("z")
    assert np.allclose(x @ y, 1j * z)
    assert np.allclose(x @ x, np.eye(2))
    # Возвращается копия, кэш не портится
    x[0, 0] = 5
    assert pauli("x")[0, 0] == 0


def test_spin_op_has_unit_eigenvalues(rng):
    for _ in range(20):
        op = spin_op(random_direction(rng))
        assert np.allclose(op, op.conj().T)
        assert abs(np.trace(op)) < 1e-12
        assert np.allclose(np.linalg.eigvalsh(op), [-1.0, 1.0])


def test_spin_direction_rejects_non_unit_vector():
    with pytest.raises(ValidationError, match="unit-norm"):
        SpinDirection(1.0, 1.0, 0.0)


def test_tensor_and_pauli_string():
    assert np.allclose(pauli_string("xIz"), tensor([pauli("x"), np.eye(2), pauli("z")]))
    with pytest.raises(ArgumentError):
        tensor([])
    with pytest.raises(ArgumentError):
        pauli_string("xq")


def test_basis_index_ordering():
    assert BasisIndex(1).spins == "↑↑↑"
    assert BasisIndex(2).spins == "↑↑↓"
    assert BasisIndex(8).spins == "↓↓↓"
    assert BasisIndex.from_spins("uud").label == 2
    with pytest.raises(ArgumentError):
        BasisIndex(9)


def test_ghz_and_psi_b_elements():
    state = ghz(3)
    assert population(state, 1) == pytest.approx(0.5)
    assert matrix_element(state, 1, 8) == pytest.approx(0.5)

    b = psi_b()
    assert population(b, 2) == pytest.approx(0.5)
    assert population(b, 7) == pytest.approx(0.5)
    assert matrix_element(b, 7, 2) == pytest.approx(0.5)


def test_ghz_requires_two_parties():
    with pytest.raises(ArgumentError):
        ghz(1)


def test_from_ket_checks_norm():
    with pytest.raises(ValidationError, match="unit-norm"):
        QuantumState.from_ket([1.0, 1.0])
    with pytest.raises(ValidationError):
        QuantumState.from_ket([1.0, 0.0, 0.0])


def test_from_density_reports_violated_invariant():
    with pytest.raises(ValidationError, match="trace"):
        QuantumState.from_density(np.eye(2))
    with pytest.raises(ValidationError, match="positivity"):
        QuantumState.from_density(np.diag([1.5, -0.5]))
    with pytest.raises(ValidationError, match="hermiticity"):
        QuantumState.from_density(np.array([[0.5, 0.5], [0.0, 0.5]]))


def test_validate_density_report():
    report = validate_density(ghz(3))
    assert report.accepted
    assert report.min_eigenvalue > -1e-9

    bad = validate_density_matrix(np.diag([1.5, -0.5]))
    assert not bad.accepted
    assert bad.min_eigenvalue == pytest.approx(-0.5)


def test_expectation_dimension_mismatch():
    with pytest.raises(DimensionMismatchError):
        expectation(ghz(3), pauli_string("xx"))


def test_expectation_rejects_non_hermitian():
    with pytest.raises(ValidationError):
        expectation(ghz(2), np.array([[0, 1, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]]))


def test_mix_validates_weights():
    up, down = basis_state("↑↑↑"), basis_state("↓↓↓")
    mixed = mix([0.5, 0.5], [up, down])
    assert mixed.kind is StateKind.DENSITY
    assert population(mixed, 8) == pytest.approx(0.5)
    with pytest.raises(ArgumentError):
        mix([0.6, 0.6], [up, down])
    with pytest.raises(ArgumentError):
        mix([-0.5, 1.5], [up, down])
    with pytest.raises(DimensionMismatchError):
        mix([0.5, 0.5], [up, ghz(2)])


def test_permute_parties_swaps_psi_b_components():
    swapped = permute_parties(psi_b(), [1, 3, 2])
    assert population(swapped, 3) == pytest.approx(0.5)  # ↑↓↑
    assert population(swapped, 6) == pytest.approx(0.5)  # ↓↑↓
    with pytest.raises(ArgumentError):
        permute_parties(psi_b(), [1, 1, 2])


def test_permute_parties_preserves_spectrum(rng):
    state = random_density_state(3, rng)
    permuted = permute_parties(state, [3, 1, 2])
    assert np.allclose(np.linalg.eigvalsh(state.rho), np.linalg.eigvalsh(permuted.rho))


def test_embed_places_singlet_on_outer_parties():
    op = embed(singlet_projector(), [1, 3], 3)
    singlet_13 = (basis_state("↑↑↓").ket - basis_state("↓↑↑").ket) / math.sqrt(2)
    assert np.vdot(singlet_13, op @ singlet_13).real == pytest.approx(1.0)
    assert np.trace(op).real == pytest.approx(2.0)


def test_ghz_class_state_sign():
    minus = ghz_class_state("uud", Sign.MINUS)
    assert matrix_element(minus, 2, 7) == pytest.approx(-0.5)


def test_bipartitions_of_three():
    blocks = [block for block, _ in bipartitions(3)]
    assert sorted(blocks) == [(1,), (1, 2), (1, 3)]


def test_product_states_factorize(rng):
    for _ in range(500):
        kets = [random_ket(1, rng) for _ in range(3)]
        ops = [spin_op(random_direction(rng)) for _ in range(3)]
        state = product_state(kets)
        single = [np.vdot(k, op @ k).real for k, op in zip(kets, ops)]
        assert abs(expectation(state, tensor(ops)) - np.prod(single)) < 1e-9


def test_xz_factorization_for_psi_b(rng):
    state = psi_b()
    for _ in range(50):
        angles = rng.uniform(0, 2 * math.pi, size=3)
        op = tensor([spin_op(SpinDirection.from_angle(Plane.XZ, a)) for a in angles])
        assert expectation(state, op) == pytest.approx(np.prod(np.cos(angles)), abs=1e-9)


@pytest.mark.parametrize("dims", [(2, 2, 2), (2, 4, 2), (4, 2, 8)])
def test_tensor_is_associative(rng, dims):
    a, b, c = (rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d)) for d in dims)
    left = tensor([a, tensor([b, c])])
    right = tensor([tensor([a, b]), c])
    assert np.allclose(left, right, rtol=0, atol=1e-12)


@pytest.mark.parametrize("perm", [[1, 2, 3], [2, 1, 3], [1, 3, 2], [3, 1, 2], [2, 3, 1], [3, 2, 1]])
def test_expectation_invariant_under_relabeling(rng, perm):
    observable = tensor([spin_op(random_direction(rng)) for _ in range(3)]) + pauli_string("xzI")
    for state in (random_density_state(3, rng), QuantumState.from_ket(random_ket(3, rng))):
        relabeled = expectation(permute_parties(state, perm), permute_operator(observable, perm))
        assert relabeled == pytest.approx(expectation(state, observable), abs=1e-12)


@pytest.mark.parametrize("perm", [[2, 1, 3], [3, 1, 2]])
def test_permute_operator_matches_state_relabeling(rng, perm):
    state = QuantumState.from_ket(random_ket(3, rng))
    assert np.allclose(permute_parties(state, perm).rho, permute_operator(state.rho, perm), atol=1e-12)
    with pytest.raises(ArgumentError):
        permute_operator(state.rho, [1, 2])


def test_validate_density_accepts_mixtures(rng):
    for k in range(100):
        count = 1 + k % 4
        weights = rng.dirichlet(np.ones(count))
        states = [
            random_density_state(3, rng) if j % 2 else QuantumState.from_ket(random_ket(3, rng))
            for j in range(count)
        ]
        assert validate_density(mix(weights, states)).accepted


@pytest.mark.parametrize("label", ["xxx", "xyz", "yyI", "zIz", "IIy"])
def test_pauli_products_are_bounded(rng, label):
    observable = pauli_string(label)
    for _ in range(100):
        assert abs(expectation(random_density_state(3, rng), observable)) <= 1 + 1e-9
