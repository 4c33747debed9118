"""
Pytest configuration and fixtures
"""
import pytest
import sys
import os
from pathlib import Path

import numpy as np

# Get project root
project_root = Path(__file__).parent.parent
os.chdir(project_root)

# Add to Python path
sys.path.insert(0, str(project_root))

from src.algebra.lie import builtin_spec  # noqa: E402
from src.config import load_config  # noqa: E402
from src.forms.generators import FormGenerator  # noqa: E402
from src.valuations.primitive import find_primitive  # noqa: E402


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: acceptance-size runs (deselect with -m 'not slow')")


@pytest.fixture(scope="session")
def project_root_dir():
    """Return project root directory"""
    return project_root


@pytest.fixture(scope="session")
def config():
    return load_config()


@pytest.fixture
def rng():
    """Fresh seeded generator per test"""
    return np.random.default_rng(7)


@pytest.fixture(scope="session")
def so3():
    return builtin_spec("so3")


@pytest.fixture(scope="session")
def h3():
    return builtin_spec("h3")


@pytest.fixture(scope="session")
def aff1():
    return builtin_spec("aff1")


@pytest.fixture(scope="session")
def abelian2():
    return builtin_spec("abelian2")


@pytest.fixture(scope="session")
def abelian3():
    return builtin_spec("abelian3")


@pytest.fixture(scope="session")
def distinct_gauge_inputs():
    """Closed forms whose forward and reversed primitives differ, as (tau, omega, omega')"""
    def collect(spec, seeds):
        found = []
        for seed in seeds:
            tau = FormGenerator(np.random.default_rng(seed)).closed_form(spec)
            first, second = find_primitive(tau), find_primitive(tau, reverse=True)
            if first.omega != second.omega:
                found.append((tau, first.omega, second.omega))
        return found

    return collect
