import pytest

from frankl.enumeration import enumerate_lattices
from frankl.lattice import build_from_covers, chain

N5_COVERS = [(0, 1), (0, 2), (1, 3), (2, 4), (3, 4)]
M3_COVERS = [(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)]
B2_COVERS = [(0, 1), (0, 2), (1, 3), (2, 3)]


@pytest.fixture
def n5():
    return build_from_covers(5, N5_COVERS)


@pytest.fixture
def m3():
    return build_from_covers(5, M3_COVERS)


@pytest.fixture
def b2():
    return build_from_covers(4, B2_COVERS)


@pytest.fixture
def two_chain():
    return chain(2)


@pytest.fixture(scope="session")
def small_lattices():
    """Every unlabeled lattice on at most 8 elements."""
    return [L for n in range(1, 9) for L in enumerate_lattices(n)]


@pytest.fixture(scope="session")
def lattices_upto6():
    return [L for n in range(1, 7) for L in enumerate_lattices(n)]
