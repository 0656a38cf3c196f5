"""Coefficients of the polynomials behind the linear relations.

With K(t) = t^(a-1) (1-t)^(c-a-1) prod (1 - x_j t)^(-b_j) and

    P(t) = t (1 - t) prod_j (1 - x_j t)
    W(t) = a (1 - t) prod_j (1 - x_j t) - (c - a) t prod_j (1 - x_j t)
           - sum_l (1 - b_l) x_l t (1 - t) prod_{j != l} (1 - x_j t)

one has d/dt [P K] = W K. The closed forms below express the coefficients of P and W in powers of t (d_k, e_k)
and in powers of u = 1 - p t (d_k(p), e_k(p)) through elementary symmetric polynomials. The ``expand_oracle_*``
functions build the same polynomials by explicit multiplication and are the reference the closed forms are
checked against.

All functions accept exact rationals (results are exact) or floats.
"""
import enum
import functools
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List

import numpy as np
from numpy.polynomial import polynomial as poly

from lauricella.core import as_scalar
from lauricella.exceptions import DomainError, ParameterError
from lauricella.symmpoly import elem_sym_all

logger = logging.getLogger(__name__)


class SpecialCase(enum.Enum):
    """Values of p for which the u = 1 - pt expansion shares a root with P(t)"""
    ONE = 'one'
    X_I = 'x_i'


@dataclass(frozen=True)
class CoeffVectorT:
    """d_0..d_(N+2) and e_0..e_(N+1) of P(t) and W(t) in powers of t"""
    d: List
    e: List

    def __post_init__(self):
        if self.d[0] != 0:
            raise ParameterError('P(t) has no constant term, got d_0 = {0}'.format(self.d[0]))


@dataclass(frozen=True)
class CoeffVectorU:
    """d_0(p)..d_(N+2)(p) and e_0(p)..e_(N+1)(p) of P(t) and W(t) in powers of u = 1 - pt"""
    d_p: List
    e_p: List
    p: object


@dataclass(frozen=True)
class CoeffDeviation:
    """A closed-form coefficient that differs from the expansion oracle"""
    name: str
    k: int
    closed_form: object
    oracle: object


class _Sigma:
    """sigma_l of a fixed argument list with the zero convention outside 0..len"""

    def __init__(self, ys):
        self.values = elem_sym_all(list(ys))

    def __call__(self, l):
        if l < 0 or l >= len(self.values):
            return 0
        return self.values[l]


def _scalars(values):
    return [as_scalar(v) for v in values]


def _zero(values):
    return Fraction(0) if all(isinstance(v, Fraction) for v in values) else 0.0


def _sign(k):
    return -1 if k % 2 else 1


def _without(values, *skip):
    return [v for j, v in enumerate(values) if j not in skip]


def _prod(values):
    return functools.reduce(lambda left, right: left * right, values, Fraction(1))


def coeff_d(x):
    """d_k = (-1)^(k-1) [sigma_(k-1)(x) + sigma_(k-2)(x)] for k = 1..N+2, and d_0 = 0

    Args:
        x (Sequence): Arguments x_1..x_N
    Returns:
        list: d_0..d_(N+2)
    """
    x = _scalars(x)
    sigma = _Sigma(x)
    d = [_zero(x)]
    for k in range(1, len(x) + 3):
        d.append(_sign(k - 1) * (sigma(k - 1) + sigma(k - 2)))
    return d


def coeff_e(x, a, c, b):
    """e_k = a v_k + (c - a) w_k + sum_l (1 - b_l) x_l z_(k,l) for k = 0..N+1 with

        v_k = (-1)^k [sigma_k(x) + sigma_(k-1)(x)]
        w_k = (-1)^k sigma_(k-1)(x)
        z_(k,l) = (-1)^k [sigma_(k-1)(x without x_l) + sigma_(k-2)(x without x_l)]
    """
    x = _scalars(x)
    b = _scalars(b)
    a, c = as_scalar(a), as_scalar(c)
    _check_lengths(x, b)

    sigma = _Sigma(x)
    reduced = [_Sigma(_without(x, l)) for l in range(len(x))]
    e = []
    for k in range(len(x) + 2):
        v = _sign(k) * (sigma(k) + sigma(k - 1))
        w = _sign(k) * sigma(k - 1)
        value = a * v + (c - a) * w
        for l, s in enumerate(reduced):
            value += (1 - b[l]) * x[l] * _sign(k) * (s(k - 1) + s(k - 2))
        e.append(value)
    return e


def _check_lengths(x, b):
    if len(x) != len(b):
        raise ParameterError('b has {0} entries but x has {1}'.format(len(b), len(x)))


def _check_nonzero(p, x):
    if p == 0:
        raise DomainError('The u = 1 - pt expansion requires p != 0')
    for j, value in enumerate(x):
        if value == 0:
            raise DomainError('The u = 1 - pt closed forms divide by x_j; x_{0} = 0 (drop zero coordinates first)'
                              .format(j + 1))


def _shifted_roots(p, x):
    """(p - x_j) / x_j, the roots of prod (u + r_j) up to sign"""
    return [(p - value) / value for value in x]


def coeff_d_p(p, x):
    """d_k(p) = (x_1..x_N / p^(N+2)) [sigma_(N+1-k)(p - 1; r) - sigma_(N+2-k)(p - 1; r)], k = 0..N+2,
    with r_j = (p - x_j) / x_j

    Raises:
        DomainError: If p = 0 or some x_j = 0
    """
    p = as_scalar(p)
    x = _scalars(x)
    _check_nonzero(p, x)

    N = len(x)
    prefactor = _prod(x) / p ** (N + 2)
    sigma = _Sigma([p - 1] + _shifted_roots(p, x))
    return [prefactor * (sigma(N + 1 - k) - sigma(N + 2 - k)) for k in range(N + 3)]


def coeff_e_p(p, x, a, c, b, alternative=False, weight_z_by_x=False):
    """e_k(p) = (x_1..x_N / p^(N+1)) [a v_k(p) + (c - a) w_k(p) + sum_l (1 - b_l) z_(k,l)(p)], k = 0..N+1, with

        v_k(p) = sigma_(N+1-k)(p - 1, r)
        w_k(p) = sigma_(N+1-k)(-1, r)
        z_(k,l)(p) = sigma_(N+1-k)(-1, p - 1, r without r_l)

    Args:
        alternative (bool): Use w_k(p) = sigma_(N+1-k)(r) - sigma_(N-k)(r) and the matching form of z_(k,l)(p)
        weight_z_by_x (bool): Multiply each z-term by an extra x_l. This variant does not match the
            expansion of W; oracle_deviations reports it against the oracle.
    Raises:
        DomainError: If p = 0 or some x_j = 0
    """
    p = as_scalar(p)
    x = _scalars(x)
    b = _scalars(b)
    a, c = as_scalar(a), as_scalar(c)
    _check_lengths(x, b)
    _check_nonzero(p, x)

    N = len(x)
    prefactor = _prod(x) / p ** (N + 1)
    r = _shifted_roots(p, x)
    if alternative:
        w_sigma = _Sigma(r)
        z_sigmas = [_Sigma([p - 1] + _without(r, l)) for l in range(N)]

        def w(k):
            return w_sigma(N + 1 - k) - w_sigma(N - k)

        def z(k, l):
            return z_sigmas[l](N + 1 - k) - z_sigmas[l](N - k)
    else:
        w_sigma = _Sigma([-1] + r)
        z_sigmas = [_Sigma([-1, p - 1] + _without(r, l)) for l in range(N)]

        def w(k):
            return w_sigma(N + 1 - k)

        def z(k, l):
            return z_sigmas[l](N + 1 - k)

    v_sigma = _Sigma([p - 1] + r)
    e = []
    for k in range(N + 2):
        value = a * v_sigma(N + 1 - k) + (c - a) * w(k)
        for l in range(N):
            weight = x[l] if weight_z_by_x else 1
            value += (1 - b[l]) * weight * z(k, l)
        e.append(prefactor * value)
    return e


def coeff_p_special(case, x, a, c, b, i=None):
    """Coefficients of the u = 1 - pt expansion at p = 1 or p = x_i, where d_0(p) = 0.

    Args:
        case (SpecialCase): ONE or X_I
        x, a, c, b: Parameter block
        i (int): 1-based index for X_I
    Returns:
        CoeffVectorU: d_p and e_p
    Raises:
        DomainError: If some x_j = 0
    """
    x = _scalars(x)
    b = _scalars(b)
    a, c = as_scalar(a), as_scalar(c)
    _check_lengths(x, b)
    N = len(x)

    if case == SpecialCase.ONE:
        p = Fraction(1) if all(isinstance(v, Fraction) for v in x) else 1.0
        _check_nonzero(p, x)
        r = [(1 - value) / value for value in x]
        d_sigma = _Sigma(r)
        v_sigma = d_sigma
        w_sigma = d_sigma
        z_sigmas = [_Sigma(_without(r, l)) for l in range(N)]
        prefactor_d = _prod(x)
        prefactor_e = _prod(x)
    elif case == SpecialCase.X_I:
        if i is None or not 1 <= i <= N:
            raise ParameterError('p = x_i needs an index 1 <= i <= {0}, got {1}'.format(N, i))
        p = x[i - 1]
        _check_nonzero(p, x)
        r = _shifted_roots(p, x)
        others = _without(r, i - 1)
        d_sigma = _Sigma([p - 1] + others)
        v_sigma = d_sigma
        w_sigma = _Sigma(others)
        z_sigmas = [_Sigma([p - 1] + _without(r, i - 1, l)) for l in range(N)]
        prefactor_d = _prod(x) / p ** (N + 2)
        prefactor_e = _prod(x) / p ** (N + 1)
    else:
        raise ParameterError('Unknown special case {0}'.format(case))

    d_p = [prefactor_d * (d_sigma(N + 1 - k) - d_sigma(N + 2 - k)) for k in range(N + 3)]
    e_p = []
    for k in range(N + 2):
        value = a * v_sigma(N + 1 - k) + (c - a) * (w_sigma(N + 1 - k) - w_sigma(N - k))
        for l in range(N):
            value += (1 - b[l]) * (z_sigmas[l](N + 1 - k) - z_sigmas[l](N - k))
        e_p.append(prefactor_e * value)
    return CoeffVectorU(d_p=d_p, e_p=e_p, p=p)


def _series(values):
    return np.array(values, dtype=object)


def _product(factors):
    return functools.reduce(poly.polymul, factors, _series([Fraction(1)]))


def _padded(coefficients, length, zero):
    values = [as_scalar(v) for v in coefficients][:length]
    return values + [zero] * (length - len(values))


def _expand(t, one_minus_t, linear, a, c, b, x, zero):
    """P and W from the linear factors t, 1 - t and 1 - x_j t given as polynomials in some variable"""
    N = len(x)
    prod_all = _product(linear)
    p_poly = _product([t, one_minus_t, prod_all])
    w_poly = poly.polysub(poly.polymul(one_minus_t, prod_all) * a, poly.polymul(t, prod_all) * (c - a))
    for l in range(N):
        rest = _product([t, one_minus_t] + _without(linear, l))
        w_poly = poly.polysub(w_poly, rest * ((1 - b[l]) * x[l]))
    return _padded(p_poly, N + 3, zero), _padded(w_poly, N + 2, zero)


def expand_oracle_t(x, a, c, b):
    """Coefficients of P(t) and W(t) in t by explicit polynomial multiplication

    Returns:
        CoeffVectorT: d and e
    """
    x = _scalars(x)
    b = _scalars(b)
    a, c = as_scalar(a), as_scalar(c)
    _check_lengths(x, b)
    zero = _zero(x + b + [a, c])

    one = 1 + zero
    t = _series([zero, one])
    one_minus_t = _series([one, -one])
    linear = [_series([one, -value]) for value in x]
    d, e = _expand(t, one_minus_t, linear, a, c, b, x, zero)
    return CoeffVectorT(d=d, e=e)


def expand_oracle_u(p, x, a, c, b):
    """Coefficients of P(t) and W(t) in u = 1 - pt, by substituting t = (1 - u) / p and multiplying out

    Only p != 0 is required; the substitution does not divide by the x_j.

    Returns:
        CoeffVectorU: d_p and e_p
    """
    p = as_scalar(p)
    x = _scalars(x)
    b = _scalars(b)
    a, c = as_scalar(a), as_scalar(c)
    _check_lengths(x, b)
    if p == 0:
        raise DomainError('The u = 1 - pt expansion requires p != 0')
    zero = _zero(x + b + [a, c, p])

    one = 1 + zero
    t = _series([one / p, -one / p])
    one_minus_t = _series([one - one / p, one / p])
    linear = [_series([one - value / p, value / p]) for value in x]
    d_p, e_p = _expand(t, one_minus_t, linear, a, c, b, x, zero)
    return CoeffVectorU(d_p=d_p, e_p=e_p, p=p)


def evaluate_polynomial(coefficients, point):
    """sum_k coefficients[k] * point^k"""
    return poly.polyval(as_scalar(point), _series(coefficients))


def binomial_shift(coefficients):
    """Re-express sum_k c_k t^k in powers of u = 1 + t, i.e. substitute t = u - 1"""
    n = len(coefficients)
    return [sum(coefficients[k] * math.comb(k, j) * _sign(k - j) for k in range(j, n)) for j in range(n)]


def oracle_deviations(p, x, a, c, b, alternative=False, weight_z_by_x=False):
    """Compare the u-expansion closed forms with the expansion oracle.

    Every mismatching coefficient is logged with both values and returned.

    Returns:
        list[CoeffDeviation]: Empty when the closed forms agree with the oracle
    """
    oracle = expand_oracle_u(p, x, a, c, b)
    closed = (coeff_d_p(p, x), coeff_e_p(p, x, a, c, b, alternative=alternative, weight_z_by_x=weight_z_by_x))
    deviations = []
    for name, values, reference in (('d_p', closed[0], oracle.d_p), ('e_p', closed[1], oracle.e_p)):
        for k, (value, expected) in enumerate(zip(values, reference)):
            if value != expected:
                deviations.append(CoeffDeviation(name=name, k=k, closed_form=value, oracle=expected))

    for deviation in deviations:
        logger.warning('Closed form %s[%s] differs from the expansion oracle', deviation.name, deviation.k,
                       extra={'extra': {'closed_form': str(deviation.closed_form), 'oracle': str(deviation.oracle)}})
    return deviations
