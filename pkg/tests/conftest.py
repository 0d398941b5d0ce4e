from importlib.resources import files

import pytest
from hypothesis import HealthCheck, settings

from sparsefri import read_fis, read_obs

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

DATA = files("sparsefri") / "data"


@pytest.fixture
def data_dir():
    return DATA


@pytest.fixture
def fis1():
    return read_fis(DATA / "fis1.fis")


@pytest.fixture
def obs1():
    return read_obs(DATA / "obs1.obs")


@pytest.fixture
def fis2():
    return read_fis(DATA / "fis2.fis")


@pytest.fixture
def obs2():
    return read_obs(DATA / "obs2.obs")


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
