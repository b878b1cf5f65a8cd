import pytest

from toricmirror import toric

P1 = [[1], [1]]
P2 = [[1], [1], [1]]
BL = [[1, 1], [0, 1], [1, 0], [0, 1]]
BL_BETA = [[1, 0, -1, -1], [0, 1, 0, -1]]
BL_DUAL = [[1, 0], [0, 1], [-1, 0], [-1, -1]]
BL_DUAL_BETA = [[1, 0, 1, 0], [1, 1, 0, 1]]


def corpus():
    """The four test data with the orders used throughout."""
    return [
        ("P1", toric.validate(P1, name="P1"), (4, 4)),
        ("P2", toric.validate(P2, name="P2"), (3, 3)),
        ("Bl", toric.validate(BL, BL_BETA, name="Bl(P2)"), (3, 3)),
        ("BlDual", toric.validate(BL_DUAL, BL_DUAL_BETA, name="Bl(P2)^!"), (3, 3)),
    ]


@pytest.fixture(scope="session")
def p1():
    return toric.validate(P1)


@pytest.fixture(scope="session")
def p2():
    return toric.validate(P2)


@pytest.fixture(scope="session")
def bl():
    return toric.validate(BL, BL_BETA)


@pytest.fixture(scope="session")
def bl_dual():
    return toric.validate(BL_DUAL, BL_DUAL_BETA)
