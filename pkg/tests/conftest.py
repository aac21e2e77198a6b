import numpy as np
import pytest

from godement import (
    GroupTable,
    MatFun,
    build_cyclic,
    build_dihedral,
    build_quaternion,
    build_symmetric,
    make_pd,
    random_matfun,
)


@pytest.fixture(scope="session")
def z2() -> GroupTable:
    return build_cyclic(2)


@pytest.fixture(scope="session")
def z6() -> GroupTable:
    return build_cyclic(6)


@pytest.fixture(scope="session")
def d3() -> GroupTable:
    return build_dihedral(3)


@pytest.fixture(scope="session")
def d4() -> GroupTable:
    return build_dihedral(4)


@pytest.fixture(scope="session")
def s3() -> GroupTable:
    return build_symmetric(3)


@pytest.fixture(scope="session")
def q8() -> GroupTable:
    return build_quaternion()


@pytest.fixture(scope="session")
def sample_groups(z6, d3, d4, q8, s3) -> list[GroupTable]:
    return [z6, d3, d4, q8, s3]


def phi_21(z2: GroupTable) -> MatFun:
    """The scalar function (2, 1) on the two-element group."""
    return MatFun(z2, 1, np.array([[[2.0]], [[1.0]]], dtype=complex))


def random_pd(group: GroupTable, n: int, seed: int) -> MatFun:
    return make_pd(random_matfun(group, n, seed))
