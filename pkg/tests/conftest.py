import os

import pytest
import pyselfdual
import numpy as np

from pyselfdual.gf2core import BitMatrix
from pyselfdual.codemodel import LinearCode, from_standard_form


def pytest_addoption(parser):
    parser.addoption(
        "--runslow", action="store_true", default=False, help="run the long completeness searches"
    )


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: long completeness search, needs --runslow")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


def examples_path(*parts):
    return os.path.join(os.path.dirname(pyselfdual.__file__), "Examples", *parts)


@pytest.fixture(scope="module")
def hamming8():
    # extended Hamming code, the doubly-even (8,4,4) code
    return LinearCode.from_strings(["10000111", "01001011", "00101101", "00011110"])


@pytest.fixture(scope="module")
def d12():
    # (I | J - I), the self-dual (12,6,4) type I code
    A = [((1 << 6) - 1) ^ (1 << (5 - i)) for i in range(6)]
    return from_standard_form(A, 12)


@pytest.fixture(scope="module")
def i2_power():
    # direct sum of n/2 copies of {00, 11}
    def build(n):
        return LinearCode([0b11 << (n - 2 - 2 * i) for i in range(n // 2)], n)

    return build


@pytest.fixture(scope="module")
def gamma_example():
    # the 6 x 6 matrix whose columns 2 and 3 coincide
    return BitMatrix.from_strings(
        ["111110", "111001", "100101", "100010", "000110", "000101"]
    )


@pytest.fixture(scope="module")
def random_sorted_matrices():
    rng = np.random.default_rng(42)
    matrices = []
    for _ in range(1000):
        k = int(rng.integers(1, 7))
        width = int(rng.integers(1, 9))
        array = rng.integers(0, 2, size=(k, width))
        order = np.argsort(-array.sum(axis=1), kind="stable")
        matrices.append(BitMatrix.from_array(array[order]))
    return matrices


@pytest.fixture(scope="session")
def corpus8():
    from pyselfdual.oracle import enumerate_all_self_dual

    return enumerate_all_self_dual(8)


@pytest.fixture(scope="session")
def corpus12():
    from pyselfdual.oracle import enumerate_all_self_dual

    return enumerate_all_self_dual(12)
