import pytest

from bbf.lattice import BBFLattice, direct_sum, hyperbolic_plane, k3_matrix


@pytest.fixture(scope="session")
def lat_u():
    return BBFLattice(hyperbolic_plane())


@pytest.fixture(scope="session")
def lat_u3():
    return BBFLattice(direct_sum(hyperbolic_plane(), hyperbolic_plane(), hyperbolic_plane()))


@pytest.fixture(scope="session")
def lat_hyp():
    """U + <-2>: the standard rank-3 hyperbolic wall-and-chamber testbed."""
    return BBFLattice(direct_sum(hyperbolic_plane(), [[-2]]))


@pytest.fixture(scope="session")
def lat_k3():
    return BBFLattice(k3_matrix())
