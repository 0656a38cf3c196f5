from fractions import Fraction

import pytest

from lauricella.config import QuadConfig, SeriesConfig
from lauricella.core import FDParams


@pytest.fixture
def series_cfg():
    return SeriesConfig()


@pytest.fixture
def quad_cfg():
    return QuadConfig()


@pytest.fixture
def gauss_params():
    return FDParams(a=0.9, c=2.1, b=(0.7,), x=(0.4,))


@pytest.fixture
def rational_params():
    return FDParams(a=Fraction(7, 5), c=Fraction(3), b=(Fraction(4, 5), Fraction(-1, 2)),
                    x=(Fraction(1, 3), Fraction(-2, 5)))
