"""
Общие фикстуры тестов.
"""

import numpy as np
import pytest

from entwit.hilbert.states import eq5_state, ghz, psi_b, rho_mix
from entwit.utils.serialization import save_state


@pytest.fixture
def rng():
    """Генератор с фиксированным seed; каждый тест получает свой экземпляр."""
    return np.random.default_rng(12345)


@pytest.fixture
def ghz3():
    return ghz(3)


@pytest.fixture
def psi_b_state():
    return psi_b()


@pytest.fixture
def state_files(tmp_path):
    """Файлы состояний-заготовок для тестов командной строки."""
    paths = {}
    for name, state in (("ghz3", ghz(3)), ("psi_b", psi_b()), ("eq5", eq5_state()), ("rho_mix", rho_mix())):
        paths[name] = save_state(state, tmp_path / f"{name}.json")
    return paths
