import math
from fractions import Fraction

import numpy as np
from hypothesis import strategies as st

from lauricella.core import FDParams


def rationals(low, high, max_denominator=60):
    return st.fractions(min_value=Fraction(low), max_value=Fraction(high), max_denominator=max_denominator)


def nonzero_rationals(low, high, max_denominator=60):
    return rationals(low, high, max_denominator).filter(lambda q: q != 0)


def rational_vectors(N, low, high, nonzero=False):
    element = nonzero_rationals(low, high) if nonzero else rationals(low, high)
    return st.lists(element, min_size=N, max_size=N)


def rel_close(value, expected, tol):
    return abs(value - expected) <= tol * max(abs(expected), 1e-300)


def poly_value(coefficients, point):
    return sum(coefficient * point ** k for k, coefficient in enumerate(coefficients))


def random_point(rng, N, a_range=(0.3, 3.0), gap=0.3, x_range=(-0.8, 0.8), b_range=(-1.5, 2.5), grid=1000):
    """Rational point with c > a + gap and nonzero x, drawn from a seeded numpy generator"""
    def q(low, high):
        return Fraction(int(round(rng.uniform(low, high) * grid)), grid)

    a = q(*a_range)
    c = a + Fraction(gap).limit_denominator(grid) + q(0.0, 2.0)
    x = []
    while len(x) < N:
        value = q(*x_range)
        if abs(value) >= Fraction(1, 20):
            x.append(value)
    b = [q(*b_range) for _ in range(N)]
    return FDParams(a=a, c=c, b=tuple(b), x=tuple(x))


def seeded(seed):
    return np.random.default_rng(seed)


def log1p_over(x):
    """-log(1 - x) / x, the value of 2F1(1, 1; 2; x)"""
    return -math.log1p(-x) / x


def random_rational(rng, low, high, max_denominator=50, nonzero=False):
    while True:
        den = int(rng.integers(1, max_denominator + 1))
        num = int(rng.integers(math.ceil(low * den), math.floor(high * den) + 1))
        if num or not nonzero:
            return Fraction(num, den)


def random_block(rng, N, nonzero_x=True):
    """Exact (x, a, c, b) with x_i, a, c, b_i in [-3, 3]"""
    x = [random_rational(rng, -3, 3, nonzero=nonzero_x) for _ in range(N)]
    a = random_rational(rng, -3, 3)
    c = random_rational(rng, -3, 3)
    b = [random_rational(rng, -3, 3) for _ in range(N)]
    return x, a, c, b
