import logging
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

import numpy as np

from lauricella.exceptions import SweepConfigError

logger = logging.getLogger(__name__)

MAX_DRAWS = 1000


def trial_rng(seed, stream, trial):
    """Counter-based generator for one trial.

    Philox keyed by the sweep seed with the counter set to (0, 0, stream, trial), so each trial's draws depend
    only on (seed, stream, trial) and not on scheduling or platform.
    """
    return np.random.Generator(np.random.Philox(key=seed, counter=[0, 0, stream, trial]))


def on_grid(value, grid):
    """Nearest rational with denominator ``grid``"""
    return Fraction(int(round(value * grid)), grid)


def draw_rational(rng, low, high, grid):
    """Uniform draw from (low, high) rounded onto the 1/grid lattice, kept strictly inside the interval"""
    value = on_grid(rng.uniform(low, high), grid)
    step = Fraction(1, grid)
    low_q, high_q = Fraction(low).limit_denominator(grid), Fraction(high).limit_denominator(grid)
    if value <= low_q:
        value = low_q + step
    if value >= high_q:
        value = high_q - step
    return value


def separated(value, others, distance):
    return all(abs(value - other) >= distance for other in others)


def draw_until(draw, accept, what='value'):
    """Redraw until accepted, at most MAX_DRAWS times"""
    for _ in range(MAX_DRAWS):
        value = draw()
        if accept(value):
            return value

    raise SweepConfigError('No admissible {0} after {1} draws'.format(what, MAX_DRAWS))


def ordered_map(func, items, workers=1):
    """Map func over items, results in input order regardless of completion order"""
    items = list(items)
    if workers <= 1:
        return [func(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(func, items))
