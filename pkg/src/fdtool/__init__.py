import datetime
import logging

from lauricella.config import FAMILIES, SweepConfig
from lauricella.core import Evaluator, FDParams, Family
from lauricella.exceptions import LauricellaException
from lauricella.relations import build_relation, residual
from lauricella.serialization import encode_params, encode_scalar
from lauricella.utils import draw_rational, draw_until, ordered_map, separated, trial_rng

logger = logging.getLogger(__name__)

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_ERROR = 2


class PointSampler(object):
    """
    Draws admissible parameter points for each relation family on the rational grid of the sweep config.
    """

    def __init__(self, config):
        self.config = config
        self.separation = config.min_separation

    def scalar(self, rng, bounds):
        return draw_rational(rng, bounds[0], bounds[1], self.config.grid)

    def nonzero(self, rng, bounds, avoid=()):
        return draw_until(lambda: self.scalar(rng, bounds),
                          lambda v: abs(v) >= self.separation and separated(v, avoid, self.separation),
                          what='nonzero value in {0}'.format(bounds))

    def base_point(self, rng, N, c_offset=0):
        """a, c with c + c_offset - a at least twice the minimum separation, then b and nonzero x"""
        gap = 2 * self.separation
        a, c = draw_until(lambda: (self.scalar(rng, self.config.a_range), self.scalar(rng, self.config.c_range)),
                          lambda ac: ac[1] + c_offset - ac[0] >= gap, what='(a, c) pair')
        b = tuple(self.scalar(rng, self.config.b_range) for _ in range(N))
        x = tuple(self.nonzero(rng, self.config.x_range) for _ in range(N))
        return FDParams(a=a, c=c, b=b, x=x)

    def draw(self, family, rng, N):
        """
        Returns:
            (int, FDParams, Fraction|None, int|None): n, point, p and i for one trial
        """
        p = None
        i = None
        if family == Family.A:
            n = int(rng.integers(0, 4))
            params = self.base_point(rng, N)
        elif family == Family.B:
            n = -int(rng.integers(1, 4))
            params = self.base_point(rng, N)
            p = self.nonzero(rng, self.config.p_range, avoid=params.x)
        elif family == Family.C:
            n = int(rng.integers(-1, 3))
            params = self.base_point(rng, N, c_offset=n)
        elif family == Family.D:
            n = int(rng.integers(-1, 3))
            params = self.base_point(rng, N)
            i = int(rng.integers(1, N + 1))
        else:
            raise LauricellaException('Family {0} is not sampled by sweeps'.format(family.value))
        return n, params, p, i


class Sweep(object):
    """
    Randomized verification of the relation families.

    Trial t of family f draws its point from a Philox stream keyed by the seed with counter (0, 0, f, t), and
    uses N = n_min + t mod (n_max - n_min + 1). Reports list trials in index order.
    """

    def __init__(self, config=None):
        self.config = config if config is not None else SweepConfig()
        self.sampler = PointSampler(self.config)
        self.report = None
        self.exit_code = EXIT_PASS

    @property
    def evaluators(self):
        if self.config.evaluator == 'both':
            return [Evaluator.SERIES, Evaluator.INTEGRAL]
        return [Evaluator.from_string(self.config.evaluator)]

    def run_trial(self, family, stream, trial):
        cfg = self.config
        rng = trial_rng(cfg.seed, stream, trial)
        N = cfg.n_min + trial % (cfg.n_max - cfg.n_min + 1)
        n, params, p, i = self.sampler.draw(family, rng, N)
        result = {
            'trial': trial,
            'N': N,
            'n': n,
            'p': encode_scalar(p),
            'i': i,
            'params': encode_params(params),
        }

        try:
            rel = build_relation(family, n, params, p=p, i=i)
            reports = {evaluator.value: residual(rel, evaluator=evaluator, tol=cfg.tol)
                       for evaluator in self.evaluators}
        except LauricellaException as e:
            logger.info('Trial %s of family %s raised', trial, family.value, extra={'extra': {'error': str(e)}})
            result.update({'passed': False, 'relative_residual': None, 'error': str(e)})
            return result

        relatives = [report.relative_residual for report in reports.values()]
        result['passed'] = all(report.passed for report in reports.values())
        result['relative_residual'] = None if None in relatives else max(relatives)
        result['evaluators'] = {name: report.relative_residual for name, report in reports.items()}
        return result

    def run_family(self, family, stream):
        logger.info('Sweeping family %s', family.value, extra={'extra': {'trials': self.config.trials}})
        results = ordered_map(lambda trial: self.run_trial(family, stream, trial), range(self.config.trials),
                              workers=self.config.workers)
        residuals = [r['relative_residual'] for r in results if r['relative_residual'] is not None]
        summary = {
            'family': family.value,
            'trials': len(results),
            'passes': sum(1 for r in results if r['passed']),
            'worst_rel_residual': max(residuals) if residuals else None,
            'failures': [r for r in results if not r['passed']],
        }
        logger.info('Family %s: %s of %s passed', family.value, summary['passes'], summary['trials'])
        return summary

    def run(self):
        """
        Run every configured family

        Returns:
            dict: Report with config, per_family summaries and generated_at
        """
        per_family = []
        for name in self.config.families:
            per_family.append(self.run_family(Family.from_string(name), FAMILIES.index(name)))

        passed = all(entry['passes'] == entry['trials'] for entry in per_family)
        self.exit_code = EXIT_PASS if passed else EXIT_FAIL
        self.report = {
            'generated_at': datetime.datetime.now(datetime.timezone.utc).isoformat(),
            'config': self.config.to_dict(),
            'passed': passed,
            'per_family': per_family,
        }
        return self.report
