import json
import logging
import os
from dataclasses import asdict, dataclass, field
from typing import List, Tuple

import jsonschema

from lauricella.exceptions import ParameterError, SweepConfigError
from lauricella.log_formatter import JSONFormatter, ExtraTextFormatter

logger = logging.getLogger(__name__)

LOG_LEVEL_ENV = 'LAURICELLA_LOG'
WORKERS_ENV = 'LAURICELLA_WORKERS'

FAMILIES = ('A', 'B', 'C', 'D')
EVALUATORS = ('series', 'integral', 'both')


def init_logging(loggers, log_format, loglevel=logging.WARNING):
    """
    Logic to support JSON logging.
    """
    logger_config = LoggerConfig(loggers, log_format, loglevel)
    logger_config.configure()


class LoggerConfig:
    LEVELS = [logging.DEBUG, logging.INFO, logging.WARNING, logging.ERROR, logging.CRITICAL]

    def __init__(self, loggers, log_format, log_level=logging.WARNING):
        self.loggers = loggers
        self.log_format = log_format
        self.log_level = log_level

    def configure(self):
        for name in self.loggers:
            logger = logging.getLogger(name)
            # Repeated configuration (one per CLI invocation in tests) replaces our own handler
            for handler in [h for h in logger.handlers if getattr(h, 'lauricella_handler', False)]:
                logger.removeHandler(handler)

            log_handler = logging.StreamHandler()
            log_handler.lauricella_handler = True
            if self.log_format and self.log_format in ['json', 'datadog']:
                log_handler.setFormatter(JSONFormatter('%(level)s %(name)s %(timestamp)s %(message)s'))
                logger.addHandler(log_handler)
                logger.setLevel(self.log_level)
                logger.info('Logging in JSON format.')
            else:
                log_handler.setFormatter(ExtraTextFormatter(fmt='%(levelname)s:%(name)s:%(asctime)s %(message)s'))
                logger.addHandler(log_handler)
                logger.setLevel(self.log_level)
                logger.info('Logging in text format.')

    def set_level(self, new_level):
        self.log_level = new_level
        for name in self.loggers:
            logger = logging.getLogger(name)
            logger.setLevel(self.log_level)


def parse_log_level(name):
    """Resolve a log level name such as ``info`` to its logging constant, or None if unknown"""
    level = getattr(logging, str(name).upper(), None)
    return level if isinstance(level, int) else None


@dataclass(frozen=True)
class SeriesConfig:
    """Truncation control for the multivariate series.

    Args:
        tol (float): Absolute size below which a degree layer counts as negligible
        max_total_degree (int): Cap on the total degree i_1 + ... + i_N
    """
    tol: float = 1e-16
    max_total_degree: int = 4000

    def __post_init__(self):
        if not self.tol > 0:
            raise ParameterError('SeriesConfig.tol must be positive, got {0}'.format(self.tol))
        if self.max_total_degree < 1:
            raise ParameterError('SeriesConfig.max_total_degree must be >= 1, got {0}'.format(self.max_total_degree))


@dataclass(frozen=True)
class QuadConfig:
    """Refinement control for tanh-sinh quadrature.

    Args:
        target_rel_error (float): Relative difference between the last two levels that counts as converged
        max_levels (int): Number of step halvings allowed
    """
    target_rel_error: float = 1e-12
    max_levels: int = 10

    def __post_init__(self):
        if not self.target_rel_error > 0:
            raise ParameterError('QuadConfig.target_rel_error must be positive, got {0}'.format(self.target_rel_error))
        if self.max_levels < 1:
            raise ParameterError('QuadConfig.max_levels must be >= 1, got {0}'.format(self.max_levels))


def _range_schema():
    return {'type': 'array', 'items': {'type': 'number'}, 'minItems': 2, 'maxItems': 2}


SWEEP_CONFIG_SCHEMA = {
    'type': 'object',
    'properties': {
        'families': {'type': 'array', 'items': {'enum': list(FAMILIES)}, 'minItems': 1},
        'n_min': {'type': 'integer', 'minimum': 1},
        'n_max': {'type': 'integer', 'minimum': 1},
        'trials': {'type': 'integer', 'minimum': 1},
        'seed': {'type': 'integer', 'minimum': 0, 'maximum': 2 ** 64 - 1},
        'tol': {'type': 'number', 'exclusiveMinimum': 0},
        'evaluator': {'enum': list(EVALUATORS)},
        'workers': {'type': 'integer', 'minimum': 1},
        'a_range': _range_schema(),
        'c_range': _range_schema(),
        'b_range': _range_schema(),
        'x_range': _range_schema(),
        'p_range': _range_schema(),
        'min_separation': {'type': 'number', 'exclusiveMinimum': 0},
        'grid': {'type': 'integer', 'minimum': 1},
    },
    'additionalProperties': False,
}


def _default_workers():
    try:
        return max(1, int(os.getenv(WORKERS_ENV, '1')))
    except ValueError:
        return 1


@dataclass
class SweepConfig:
    """Configuration of a randomized verification sweep over relation families.

    Parameter points are drawn on a rational grid of spacing 1/grid so that coefficients stay small exact
    rationals. Values closer than min_separation to zero, to each other (p against x) or across c - a are
    rejected and redrawn.
    """
    families: List[str] = field(default_factory=lambda: list(FAMILIES))
    n_min: int = 1
    n_max: int = 3
    trials: int = 50
    seed: int = 42
    tol: float = 1e-7
    evaluator: str = 'series'
    workers: int = field(default_factory=_default_workers)
    a_range: Tuple[float, float] = (0.3, 4.0)
    c_range: Tuple[float, float] = (0.3, 4.0)
    b_range: Tuple[float, float] = (-2.0, 3.0)
    x_range: Tuple[float, float] = (-0.8, 0.8)
    p_range: Tuple[float, float] = (-0.8, 0.8)
    min_separation: float = 0.05
    grid: int = 1000

    def __post_init__(self):
        self.validate()

    def validate(self):
        try:
            jsonschema.validate(self.to_dict(), SWEEP_CONFIG_SCHEMA)
        except jsonschema.ValidationError as e:
            raise SweepConfigError('Invalid sweep configuration: {0}'.format(e.message))

        if self.n_min > self.n_max:
            raise SweepConfigError('n_min ({0}) exceeds n_max ({1})'.format(self.n_min, self.n_max))
        for name in ('a_range', 'c_range', 'b_range', 'x_range', 'p_range'):
            low, high = getattr(self, name)
            if low >= high:
                raise SweepConfigError('{0} must be an increasing pair, got {1}'.format(name, (low, high)))
        if self.a_range[0] <= 0:
            raise SweepConfigError('a_range must be positive for c > a > 0')
        if self.x_range[0] <= -1 or self.x_range[1] >= 1 or self.p_range[0] <= -1 or self.p_range[1] >= 1:
            raise SweepConfigError('x_range and p_range must lie inside (-1, 1) for the series evaluator')

    def to_dict(self):
        result = asdict(self)
        for name in ('a_range', 'c_range', 'b_range', 'x_range', 'p_range'):
            result[name] = list(result[name])
        return result

    @classmethod
    def from_dict(cls, data):
        try:
            jsonschema.validate(data, SWEEP_CONFIG_SCHEMA)
        except jsonschema.ValidationError as e:
            raise SweepConfigError('Invalid sweep configuration: {0}'.format(e.message))

        data = dict(data)
        for name in ('a_range', 'c_range', 'b_range', 'x_range', 'p_range'):
            if name in data:
                data[name] = tuple(data[name])
        return cls(**data)

    @classmethod
    def from_file(cls, path):
        """Load a sweep configuration from a JSON file

        Args:
            path (str): Path of the JSON config
        Returns:
            SweepConfig: Validated configuration
        Raises:
            SweepConfigError: If the file is not valid JSON or does not match the schema
        """
        try:
            with open(path, 'r') as f:
                data = json.load(f)
        except ValueError as e:
            raise SweepConfigError('Sweep config {0} is not valid JSON: {1}'.format(path, e))

        logger.debug('Loaded sweep config from %s', path, extra={'extra': data})
        return cls.from_dict(data)
