import pathlib

import pytest

from arquiver.algebra import build_basis, parse_presentation
from arquiver.knitting import knit

FIXTURES = pathlib.Path(__file__).resolve().parent.parent / "fixtures"


def load_algebra(name):
    return build_basis(parse_presentation((FIXTURES / name).read_text()))


@pytest.fixture(scope="session")
def alg_cycle4():
    return load_algebra("cycle4_rad2.alg")


@pytest.fixture(scope="session")
def arq_cycle4(alg_cycle4):
    return knit(alg_cycle4)


@pytest.fixture(scope="session")
def alg_cycle3():
    return load_algebra("cycle3_rad2.alg")


@pytest.fixture(scope="session")
def arq_cycle3(alg_cycle3):
    return knit(alg_cycle3)


@pytest.fixture(scope="session")
def alg_b():
    return load_algebra("b_a3.alg")


@pytest.fixture(scope="session")
def arq_b(alg_b):
    return knit(alg_b)


@pytest.fixture(scope="session")
def alg_a2():
    return load_algebra("a2.alg")


@pytest.fixture(scope="session")
def arq_a2(alg_a2):
    return knit(alg_a2)


@pytest.fixture(scope="session")
def alg_a3line():
    return load_algebra("a3_line.alg")


@pytest.fixture(scope="session")
def arq_a3line(alg_a3line):
    return knit(alg_a3line)


@pytest.fixture(scope="session")
def tube_text():
    return (FIXTURES / "tube_rank3.tq").read_text()
