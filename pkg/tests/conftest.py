import pytest

from gfcperiods import QuadConfig, validate_spec

# (k, n) -> lambda tuple; the desk-scale curve set exercised throughout.
DESK_SPECS = {
    (3, 2): (),
    (4, 2): (),
    (2, 3): (2.0,),
    (2, 4): (2.0, 2.0 + 1.0j),
    (3, 3): (-1.5,),
}


@pytest.fixture(scope="session")
def quad_cfg():
    return QuadConfig()


@pytest.fixture(scope="session")
def desk_specs():
    return {kn: validate_spec(kn[0], kn[1], lams) for kn, lams in DESK_SPECS.items()}
