"""Tanh-sinh (double exponential) quadrature on (0, 1).

The substitution t = (1 + tanh(pi/2 * sinh(s))) / 2 turns algebraic endpoint singularities t^(e0 - 1) and
(1 - t)^(e1 - 1) into double exponentially decaying tails, so a plain trapezoidal rule in s converges
exponentially. log t and log(1 - t) are computed from s directly, never by subtracting from one, so the
integrand can be evaluated accurately arbitrarily close to either endpoint.

The s interval is located by scanning the integrand: it is the part of [-MAX_HALF_WIDTH, MAX_HALF_WIDTH]
where the mapped integrand is within exp(-TAIL_DECAY) of its largest scanned value. Large exponents
concentrate the integrand around an interior peak and the interval shrinks around that peak, so the
trapezoidal step scales with the peak width.
"""
import logging
import math
from dataclasses import dataclass

import numpy as np

from lauricella.config import QuadConfig

logger = logging.getLogger(__name__)

# The mapped integrand is cut where it has decayed by about exp(-TAIL_DECAY) from its peak
TAIL_DECAY = 80.0
MAX_HALF_WIDTH = 12.0
SCAN_POINTS = 4097
INITIAL_INTERVALS = 16
MIN_LEVELS = 2


@dataclass(frozen=True)
class Nodes:
    """Quadrature nodes in t together with log t, log(1 - t) and the log of the Jacobian dt/ds"""
    t: np.ndarray
    log_t: np.ndarray
    log_1mt: np.ndarray
    log_jacobian: np.ndarray


@dataclass(frozen=True)
class Window:
    """Interval [s_lo, s_hi] holding the non-negligible part of the mapped integrand"""
    s_lo: float
    s_hi: float
    log_scale: float

    @property
    def width(self):
        return self.s_hi - self.s_lo


@dataclass(frozen=True)
class QuadratureResult:
    """Integral value ``exp(log_scale) * total`` with absolute error ``exp(log_scale) * error``"""
    log_scale: float
    total: float
    error: float
    nodes: int
    levels: int
    converged: bool
    dropped: int = 0

    @property
    def value(self):
        return math.exp(self.log_scale) * self.total

    @property
    def abs_error(self):
        return math.exp(self.log_scale) * self.error


def make_nodes(s):
    """Map abscissae s on the real line to (0, 1)"""
    v = 0.5 * math.pi * np.sinh(s)
    log_t = -np.logaddexp(0.0, -2.0 * v)
    log_1mt = -np.logaddexp(0.0, 2.0 * v)
    log_cosh = np.logaddexp(s, -s) - math.log(2.0)
    log_jacobian = math.log(math.pi) + log_cosh + log_t + log_1mt
    return Nodes(t=np.exp(log_t), log_t=log_t, log_1mt=log_1mt, log_jacobian=log_jacobian)


def _mapped(log_integrand, s):
    """log|f(t(s)) dt/ds| and sign at the abscissae s"""
    points = make_nodes(s)
    log_f, sign = log_integrand(points)
    return log_f + points.log_jacobian, np.broadcast_to(sign, np.shape(s))


def find_window(log_integrand):
    """Scan the mapped integrand and return the interval where it is within exp(-TAIL_DECAY) of its peak"""
    s = np.linspace(-MAX_HALF_WIDTH, MAX_HALF_WIDTH, SCAN_POINTS)
    with np.errstate(divide='ignore', invalid='ignore', over='ignore', under='ignore'):
        log_g, _ = _mapped(log_integrand, s)

    finite = np.isfinite(log_g)
    if not finite.any():
        return Window(-MAX_HALF_WIDTH, MAX_HALF_WIDTH, 0.0)

    log_scale = float(log_g[finite].max())
    inside = np.flatnonzero(finite & (log_g >= log_scale - TAIL_DECAY))
    lo = max(int(inside[0]) - 1, 0)
    hi = min(int(inside[-1]) + 1, SCAN_POINTS - 1)
    return Window(float(s[lo]), float(s[hi]), log_scale)


def _level_abscissae(level, window):
    step = window.width / (INITIAL_INTERVALS * 2 ** level)
    if level == 0:
        return window.s_lo + step * np.arange(INITIAL_INTERVALS + 1, dtype=float), step
    # Only the odd multiples of the new step are new
    odd = np.arange(1, INITIAL_INTERVALS * 2 ** level, 2, dtype=float)
    return window.s_lo + step * odd, step


def integrate(log_integrand, cfg=None):
    """Integrate over (0, 1) a function given by its log magnitude and sign.

    Args:
        log_integrand (callable): Maps a Nodes instance to (log|f|, sign) arrays
        cfg (QuadConfig): Refinement control
    Returns:
        QuadratureResult: Value, error estimate and effort. The error is the difference of the last two levels
            plus the size of the integrand at the window ends. Non-finite samples are dropped, counted in
            ``dropped`` and make the result non-converged.
    """
    if cfg is None:
        cfg = QuadConfig()

    window = find_window(log_integrand)
    log_scale = window.log_scale
    nodes = SCAN_POINTS
    dropped = 0
    raw_sum = 0.0
    previous = None
    estimate = 0.0
    error = float('inf')
    truncation = 0.0
    level = 0

    with np.errstate(divide='ignore', invalid='ignore', over='ignore', under='ignore'):
        for level in range(0, cfg.max_levels + 1):
            s, step = _level_abscissae(level, window)
            log_g, sign = _mapped(log_integrand, s)
            terms = sign * np.exp(log_g - log_scale)

            if level == 0:
                # Trapezoidal end weights
                terms[0] *= 0.5
                terms[-1] *= 0.5
                truncation = 2.0 * step * (abs(terms[0]) + abs(terms[-1]))

            finite = np.isfinite(terms)
            dropped += int(terms.size - np.count_nonzero(finite))
            raw_sum += float(np.sum(terms[finite]))
            nodes += s.size

            estimate = raw_sum * step
            if previous is not None:
                error = abs(estimate - previous) + truncation
                logger.debug('tanh-sinh level %s: estimate %s, error %s', level, estimate, error)
                if level >= MIN_LEVELS and not dropped and error <= cfg.target_rel_error * abs(estimate):
                    return QuadratureResult(log_scale, estimate, error, nodes, level, True)
            previous = estimate

    if dropped:
        logger.warning('tanh-sinh quadrature dropped %s non-finite samples', dropped,
                       extra={'extra': {'estimate': estimate, 'error': error}})
    else:
        logger.warning('tanh-sinh quadrature did not reach relative error %s after %s levels',
                       cfg.target_rel_error, cfg.max_levels, extra={'extra': {'estimate': estimate, 'error': error}})
    return QuadratureResult(log_scale, estimate, error, nodes, level, False, dropped)
