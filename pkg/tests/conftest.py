import pytest

from ktres.algebra.polyring import make_ring, parse_poly
from ktres.load import load_psi_table, load_resolution
from ktres.services.delta import KTComplex
from ktres.services.psi import construct_psi, psi_from_dga
from ktres.services.resolution import build_koszul, build_taylor


def polys(ring, *texts):
    return [parse_poly(ring, t) for t in texts]


@pytest.fixture(scope="session")
def ring_xy():
    return make_ring(("x", "y"))


@pytest.fixture(scope="session")
def square_res():
    """Resolution of <x^2, xy, y^2>: ranks 3, 2."""
    return load_resolution("fixture:x2_xy_y2")


@pytest.fixture(scope="session")
def square_table(square_res):
    return construct_psi(square_res, 6)


@pytest.fixture(scope="session")
def square_kt(square_table):
    return KTComplex(square_table)


@pytest.fixture(scope="session")
def square_fixture_table(square_res):
    return load_psi_table("fixture:x2_xy_y2", square_res)


@pytest.fixture(scope="session")
def square_xz_res():
    """Resolution of <x^2, xy, xz, y^2>: ranks 4, 4, 1."""
    return load_resolution("fixture:x2_xy_y2_xz")


@pytest.fixture(scope="session")
def square_xz_table(square_xz_res):
    return construct_psi(square_xz_res, 7)


@pytest.fixture(scope="session")
def nonassoc_res():
    """Resolution of <x^2, xy, y^2z^2, zw, w^2>: ranks 5, 8, 5, 1."""
    return load_resolution("fixture:x2_xy_y2z2_zw_w2")


@pytest.fixture(scope="session")
def nonassoc_fixture_table(nonassoc_res):
    return load_psi_table("fixture:x2_xy_y2z2_zw_w2", nonassoc_res)


@pytest.fixture(scope="session")
def taylor_res(ring_xy):
    return build_taylor(ring_xy, polys(ring_xy, "x^2", "x*y", "y^2"))


@pytest.fixture(scope="session")
def taylor_table(taylor_res):
    return psi_from_dga(taylor_res, 7)


@pytest.fixture(scope="session")
def taylor_kt(taylor_table):
    return KTComplex(taylor_table)


@pytest.fixture(scope="session")
def koszul_res(ring_xy):
    """Koszul complex of the regular sequence x^2, y^3."""
    return build_koszul(ring_xy, polys(ring_xy, "x^2", "y^3"))
