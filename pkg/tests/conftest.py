import numpy as np
import pytest

from gshlab import NormalizedFunction, SchwarzSample, member_from_witness


def coeffs_close(a, b, tol):
    """Max coefficientwise difference of two series up to the shared order."""
    n = min(a.order, b.order)
    return float(np.max(np.abs(a.coeffs[: n + 1] - b.coeffs[: n + 1]))) <= tol


@pytest.fixture(scope="session")
def f0():
    """The extremal member, witness w = z, at order 32."""
    return member_from_witness(SchwarzSample.monomial(1), 32)


@pytest.fixture(scope="session")
def koebe():
    return NormalizedFunction.koebe(32)


@pytest.fixture(scope="session")
def identity_fn():
    return NormalizedFunction.identity(32)
