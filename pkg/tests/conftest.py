import pytest

import relmass


@pytest.fixture(scope="session", autouse=True)
def warm_eigensolver():
    """Trigger the JIT compile of the eigensolver outside any timed test."""
    relmass.spectral_decompose(relmass.build_cycle(4))


@pytest.fixture(scope="session")
def q3_dec():
    return relmass.spectral_decompose(relmass.build_hypercube(3))


@pytest.fixture(scope="session")
def cycle6_dec():
    return relmass.spectral_decompose(relmass.build_cycle(6))


@pytest.fixture(scope="session")
def pyramid_dec():
    return relmass.spectral_decompose(relmass.build_pyramid_cube())


@pytest.fixture(scope="session")
def lamp2_dec():
    params = relmass.LamplighterParams(d=2, eps=1e-3)
    return relmass.spectral_decompose(relmass.build_lamplighter(params))
