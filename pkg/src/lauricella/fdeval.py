"""Numerical evaluation of the Lauricella F_D function.

Two independent methods are provided and serve as mutual oracles:

* ``fd_series`` sums the defining multivariate power series layer by layer in the total degree
  d = i_1 + ... + i_N. Since (a)_d / (c)_d only depends on d, a layer equals that ratio times the degree d
  coefficient of prod_i (1 - x_i s)^(-b_i), which is obtained by convolving the one-variable series whose
  coefficients follow from the ratio (b_i + m - 1) x_i / m.
* ``fd_integral`` evaluates the Euler integral with tanh-sinh quadrature.

The raw integrals J, I_n = int t^n K(t) dt and I_{n,p} = int (1 - pt)^n K(t) dt with
K(t) = t^(a-1) (1-t)^(c-a-1) prod (1 - x_i t)^(-b_i) are exposed for identity checks that bypass F_D.
"""
import itertools
import logging
import math

import numpy as np

from lauricella import quadrature
from lauricella.config import QuadConfig, SeriesConfig
from lauricella.core import EvalResult, Evaluator, FDParams, is_nonpositive_integer
from lauricella.exceptions import DomainError, ParameterError
from lauricella.special import log_beta

logger = logging.getLogger(__name__)

# Consecutive negligible layers required before the series is declared converged
QUIET_LAYERS = 3


def pochhammer(s, i):
    """Rising factorial (s)_i = s (s + 1) ... (s + i - 1), (s)_0 = 1, over any scalar type"""
    result = 1
    for j in range(i):
        result *= s + j
    return result


def series_terms(params, max_degree):
    """Individual terms of the defining series up to a total degree.

    Each term is derived from a neighbour by multiplying with the Pochhammer ratio of the index that was
    incremented, so exact rational parameters give exact terms.

    Args:
        params (FDParams): Parameter block
        max_degree (int): Largest total degree to produce
    Yields:
        (tuple[int], scalar): Multi-index and the corresponding series term
    """
    N = params.N
    for degree in range(max_degree + 1):
        for index in _compositions(degree, N):
            yield index, _term_by_ratios(params, index)


def _compositions(degree, parts):
    if parts == 0:
        if degree == 0:
            yield ()
        return
    for cut in itertools.combinations(range(degree + parts - 1), parts - 1):
        bounds = (-1,) + cut + (degree + parts - 1,)
        yield tuple(bounds[j + 1] - bounds[j] - 1 for j in range(parts))


def _term_by_ratios(params, index):
    term = 1
    total = 0
    for j, count in enumerate(index):
        for m in range(count):
            # (a)_{d+1} / (c)_{d+1} over (a)_d / (c)_d, and (b_j)_{m+1} x_j / (m + 1) over (b_j)_m
            term = term * (params.a + total) / (params.c + total) * (params.b[j] + m) * params.x[j] / (m + 1)
            total += 1
    return term


def _check_c(c):
    if is_nonpositive_integer(c):
        raise DomainError('c must not be a non-positive integer, got {0}'.format(c))


def fd_series(params, cfg=None):
    """F_D by its power series.

    Args:
        params (FDParams): Parameter block with |x_i| < 1
        cfg (SeriesConfig): Truncation control
    Returns:
        EvalResult: Partial sum, tail estimate and the number of degree layers summed. ``converged`` is False
            when max_total_degree was reached first.
    Raises:
        DomainError: If some |x_i| >= 1 or c is a non-positive integer
    """
    if cfg is None:
        cfg = SeriesConfig()

    _check_c(params.c)
    for j, x in enumerate(params.x):
        if not abs(x) < 1:
            raise DomainError('Series requires |x_i| < 1, got x_{0} = {1}'.format(j + 1, x))

    p = params.as_float()
    N = p.N
    b = np.array(p.b, dtype=float)
    x = np.array(p.x, dtype=float)
    size = cfg.max_total_degree + 1

    # factors[j, m] = (b_j)_m x_j^m / m!, products[j, d] = degree d coefficient of the first j factors
    factors = np.zeros((N, size))
    factors[:, 0] = 1.0
    products = np.zeros((N + 1, size))
    products[0, 0] = 1.0
    if N:
        products[1:, 0] = 1.0

    total = 1.0
    ratio = 1.0
    quiet = 0
    last = 1.0
    radius = float(np.max(np.abs(x))) if N else 0.0
    degree = 0
    converged = False

    for degree in range(1, size):
        ratio *= (p.a + degree - 1) / (p.c + degree - 1)
        if N:
            factors[:, degree] = factors[:, degree - 1] * (b + degree - 1) * x / degree
            for j in range(N):
                products[j + 1, degree] = np.dot(products[j, degree::-1], factors[j, :degree + 1])
        layer = ratio * products[N, degree]
        total += layer
        last = abs(layer)

        if last < cfg.tol:
            quiet += 1
            if quiet >= QUIET_LAYERS:
                converged = True
                break
        else:
            quiet = 0

    tail = last / (1.0 - radius) if radius < 1 else float('inf')
    if not math.isfinite(total):
        raise DomainError('Series overflowed for {0}'.format(params))
    if converged:
        logger.debug('Series converged after %s layers', degree, extra={'extra': {'value': total, 'tail': tail}})
    else:
        logger.warning('Series truncated at total degree %s without converging', degree,
                       extra={'extra': {'value': total, 'last_layer': last}})
    return EvalResult(value=float(total), abs_error_estimate=float(tail), method=Evaluator.SERIES.value,
                      effort=degree, converged=converged)


def _log_one_minus(q, nodes):
    """log|1 - q t| and its sign, accurate near t = 1 for q close to 1"""
    if q <= 0:
        return np.log1p(-q * nodes.t), 1.0
    if q == 1:
        return nodes.log_1mt, 1.0
    if q < 1:
        return np.logaddexp(nodes.log_1mt, math.log1p(-q) + nodes.log_t), 1.0
    value = np.exp(nodes.log_1mt) - (q - 1.0) * nodes.t
    return np.log(np.abs(value)), np.sign(value)


def _euler_integral(beta1, beta2, alpha, x, cfg, t_power=0, u_power=0, p=None):
    """int_0^1 t^(beta1 + t_power) (1 - t)^beta2 prod (1 - x_i t)^alpha_i (1 - p t)^u_power dt"""
    for j, value in enumerate(x):
        if not value < 1:
            raise DomainError('Euler integral requires x_i < 1, got x_{0} = {1}'.format(j + 1, value))
    if len(alpha) != len(x):
        raise ParameterError('alpha has {0} entries but x has {1}'.format(len(alpha), len(x)))

    order0 = beta1 + t_power + 1
    order1 = beta2 + 1
    if p is not None and u_power != 0:
        if p == 1:
            order1 += u_power
        elif p > 1 and u_power < 0:
            raise DomainError('(1 - p t)^n with n < 0 vanishes inside (0, 1] for p = {0}'.format(p))
    if not order0 > 0:
        raise DomainError('Integrand is not integrable at t = 0 (exponent {0})'.format(order0 - 1))
    if not order1 > 0:
        raise DomainError('Integrand is not integrable at t = 1 (exponent {0})'.format(order1 - 1))

    def log_integrand(nodes):
        log_f = (beta1 + t_power) * nodes.log_t + beta2 * nodes.log_1mt
        sign = np.ones_like(nodes.t)
        for a_j, x_j in zip(alpha, x):
            if a_j != 0 and x_j != 0:
                log_f = log_f + a_j * _log_one_minus(x_j, nodes)[0]
        if p is not None and u_power != 0:
            log_u, sign_u = _log_one_minus(p, nodes)
            log_f = log_f + u_power * log_u
            sign = sign * np.power(sign_u, u_power % 2)
        return log_f, sign

    return quadrature.integrate(log_integrand, cfg)


def fd_integral(params, cfg=None):
    """F_D by its Euler integral representation L * int_0^1 K(t) dt with L = 1 / B(a, c - a).

    Valid for real x_i < 1, which extends beyond the unit polydisc of the series.

    Args:
        params (FDParams): Parameter block with c > a > 0 and x_i < 1
        cfg (QuadConfig): Refinement control
    Returns:
        EvalResult: Value, error estimate and number of quadrature nodes
    Raises:
        DomainError: If c <= a, a <= 0 or some x_i >= 1
    """
    if cfg is None:
        cfg = QuadConfig()
    if not params.a > 0:
        raise DomainError('Euler integral requires a > 0, got {0}'.format(params.a))
    if not params.c > params.a:
        raise DomainError('Euler integral requires c > a, got a = {0}, c = {1}'.format(params.a, params.c))

    p = params.as_float()
    result = _euler_integral(p.beta1, p.beta2, p.alpha, p.x, cfg)
    log_norm = result.log_scale - log_beta(p.a, p.c - p.a)
    value = math.exp(log_norm) * result.total
    error = math.exp(log_norm) * result.error
    return EvalResult(value=value, abs_error_estimate=error, method=Evaluator.INTEGRAL.value, effort=result.nodes,
                      converged=result.converged, details={'levels': result.levels, 'dropped': result.dropped})


def evaluate(params, evaluator=Evaluator.SERIES, series_cfg=None, quad_cfg=None):
    """Evaluate F_D with the chosen method"""
    if evaluator == Evaluator.SERIES:
        return fd_series(params, series_cfg)
    if evaluator == Evaluator.INTEGRAL:
        return fd_integral(params, quad_cfg)
    raise ParameterError('Unknown evaluator {0}'.format(evaluator))


def integral_J(beta1, beta2, alpha, x, cfg=None):
    """J(beta1, beta2, alpha_1..alpha_N) = int_0^1 t^beta1 (1 - t)^beta2 prod (1 - x_i t)^alpha_i dt

    Raises:
        DomainError: If beta1 <= -1, beta2 <= -1 or some x_i >= 1
    """
    result = _euler_integral(float(beta1), float(beta2), [float(v) for v in alpha], [float(v) for v in x], cfg)
    return result.value


def integral_In(n, params, cfg=None):
    """I_n = int_0^1 t^n K(t) dt for integer n >= 0"""
    if n < 0:
        raise DomainError('I_n is defined for n >= 0, got {0}'.format(n))
    p = params.as_float()
    return _euler_integral(p.beta1, p.beta2, p.alpha, p.x, cfg, t_power=int(n)).value


def integral_Inp(n, p, params, cfg=None):
    """I_{n,p} = int_0^1 (1 - p t)^n K(t) dt for integer n.

    For n < 0 the factor (1 - p t) must not vanish on [0, 1], which requires p < 1, or p = 1 with
    c - a + n > 0 so that (1 - t)^(c - a - 1 + n) stays integrable.
    """
    if n != int(n):
        raise ParameterError('I_(n,p) is implemented for integer n only, got {0}'.format(n))
    f = params.as_float()
    return _euler_integral(f.beta1, f.beta2, f.alpha, f.x, cfg, u_power=int(n), p=float(p)).value
