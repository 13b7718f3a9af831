"""Shared fixtures.  Heavy structures are session scoped so that assembled
operator matrices and kernels are reused across test modules."""

import pytest

from almostcomplex.models import (
    abelian,
    example27_torus,
    flat_kahler_torus,
    iwasawa,
    kodaira_thurston,
    t4_nonstandard,
)


@pytest.fixture(scope="session")
def ex27():
    return example27_torus()


@pytest.fixture(scope="session")
def ex27_const():
    from almostcomplex.coeffring import rat

    return example27_torus(p=rat(1, 2))


@pytest.fixture(scope="session")
def t4():
    return t4_nonstandard()


@pytest.fixture(scope="session")
def t4_const():
    from almostcomplex.coeffring import rat

    return t4_nonstandard(f=rat(1, 2), g=rat(-2, 3))


@pytest.fixture(scope="session")
def flat4():
    return flat_kahler_torus(4)


@pytest.fixture(scope="session")
def iw():
    return iwasawa()


@pytest.fixture(scope="session")
def kt():
    return kodaira_thurston()


@pytest.fixture(scope="session")
def ab():
    return abelian(4)


@pytest.fixture(scope="session")
def catalog_structs(ex27, t4, flat4, iw, kt, ab):
    return [ex27, t4, flat4, iw, kt, ab]
