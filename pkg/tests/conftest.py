import numpy as np
import pytest

from lhbif import SystemParams, UnfoldingSpec


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(1234)


@pytest.fixture(scope="session")
def params_example():
    return SystemParams(a=2.0, b=1.0, c=1.0, d=1.0, e=3.0)


@pytest.fixture(scope="session")
def spec_i():
    return UnfoldingSpec(case="i", c=1.0, omega=1.0, a1=1.0, b1=1.0, d1=0.0, e1=1.0)


@pytest.fixture(scope="session")
def spec_ii():
    return UnfoldingSpec(case="ii", c=1.0, d=2.0, e=6.0, a1=1.0, b1=1.0)


@pytest.fixture(scope="session")
def spec_ii_five():
    # every radicand positive: all five nontrivial zeros of the axis-point
    # averaged map are real
    return UnfoldingSpec(case="ii", c=1.0, d=0.7, e=1.0, a1=1.0, b1=1.0)


@pytest.fixture(scope="session")
def spec_iii():
    return UnfoldingSpec(case="iii", c=1.0, omega=1.0, e=3.0, a1=1.0, b1=1.0)
