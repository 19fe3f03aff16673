import pytest

from latticeforge.fields import build_field_context
from latticeforge.hurwitz import present_gamma_hurwitz
from latticeforge.quatff import present_gamma_ff
from latticeforge.quotient import build_cayley, split_ff, split_hurwitz


@pytest.fixture(scope="session")
def ctx3():
    return build_field_context(3, 1)


@pytest.fixture(scope="session")
def ctx4():
    return build_field_context(2, 2)


@pytest.fixture(scope="session")
def ctx5():
    return build_field_context(5, 1)


@pytest.fixture(scope="session")
def pres_q3(ctx3):
    return present_gamma_ff(ctx3, [1, 2])


@pytest.fixture(scope="session")
def pres_q4(ctx4):
    return present_gamma_ff(ctx4, [1, 2, 3])


@pytest.fixture(scope="session")
def pres_q5(ctx5):
    return present_gamma_ff(ctx5, [2, 3, 4])


@pytest.fixture(scope="session")
def pres_h357():
    return present_gamma_hurwitz([3, 5, 7])


@pytest.fixture(scope="session")
def pres_h5():
    return present_gamma_hurwitz([5])


@pytest.fixture(scope="session")
def cayley_h5_mod11(pres_h5):
    return build_cayley(pres_h5, split_hurwitz(11, [5]))


@pytest.fixture(scope="session")
def cayley_h5_mod13(pres_h5):
    return build_cayley(pres_h5, split_hurwitz(13, [5]))


@pytest.fixture(scope="session")
def cayley_ff_q3(ctx3, pres_q3):
    return build_cayley(pres_q3, split_ff(ctx3, [1, 0, 1], places=[1, 2]))
