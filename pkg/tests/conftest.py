from pathlib import Path

import pytest

from floersplice.cfk import parse_complex

DATA = Path(__file__).parent / "data"


def load(name):
    return parse_complex((DATA / f"{name}.cfk").read_text(), name=name)


@pytest.fixture(scope="session")
def trefoil():
    return load("trefoil")


@pytest.fixture(scope="session")
def mirror_trefoil():
    return load("mirror_trefoil")


@pytest.fixture(scope="session")
def t25():
    return load("t25")


@pytest.fixture(scope="session")
def figure_eight():
    return load("figure_eight")


@pytest.fixture(scope="session")
def unknot_complex():
    return load("unknot")
