import itertools

import pytest

from kmcrystals import rootdata as rd


def box(n, top):
    """All weights with coordinates in ``0..top``."""
    return list(itertools.product(range(top + 1), repeat=n))


@pytest.fixture(scope="session")
def A2():
    return rd.cartan_matrix("A2")


@pytest.fixture(scope="session")
def A3():
    return rd.cartan_matrix("A3")


@pytest.fixture(scope="session")
def D4():
    return rd.cartan_matrix("D4")


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(RESULTS):
        title, ok, detail = RESULTS[k]
        terminalreporter.write_line(f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  {title}  [{detail}]")
