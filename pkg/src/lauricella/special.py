"""Gamma-family functions for positive real arguments."""
import logging
import math

from scipy import special as sc

from lauricella.exceptions import DomainError

logger = logging.getLogger(__name__)


def _positive(value, name):
    value = float(value)
    if not value > 0 or not math.isfinite(value):
        raise DomainError('{0} requires a positive finite argument, got {1}'.format(name, value))
    return value


def log_gamma(x):
    """Natural log of Gamma(x) for x > 0

    Raises:
        DomainError: If x <= 0
    """
    return float(sc.gammaln(_positive(x, 'log_gamma')))


def log_beta(u, v):
    """log B(u, v) = log Gamma(u) + log Gamma(v) - log Gamma(u + v)"""
    u = _positive(u, 'beta')
    v = _positive(v, 'beta')
    return float(sc.gammaln(u) + sc.gammaln(v) - sc.gammaln(u + v))


def beta(u, v):
    """Euler beta function, computed in log space so large shifted arguments do not overflow.

    Raises:
        DomainError: If u <= 0 or v <= 0
    """
    return math.exp(log_beta(u, v))
