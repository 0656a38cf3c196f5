import click
import functools
import json
import logging
import sys

from fdtool import EXIT_ERROR, EXIT_FAIL, EXIT_PASS, Sweep
from lauricella.config import FAMILIES, LOG_LEVEL_ENV, QuadConfig, SeriesConfig, SweepConfig, init_logging, \
    parse_log_level
from lauricella.core import Evaluator, FDParams, Family, parse_scalar, parse_vector
from lauricella.exceptions import LauricellaException, TermEvaluationError
from lauricella.fdeval import evaluate
from lauricella.relations import ContiguousKind, IntegralIdentity, build_relation, contiguous, diff_relation, \
    pfaff_first, pfaff_second, residual, residual_of_terms, verify_integral_identity
from lauricella.serialization import dumps, load_relation_file, relation_to_document

logger = logging.getLogger(__name__)

IDENTITIES = ('pfaff1', 'pfaff2', 'contig1', 'contig2', 'contig3', 'diff', 'calbp', 'calpol', 'calpol0')


def fail(error, code=EXIT_ERROR):
    """Print a machine-readable error to standard error and exit"""
    document = {'error': type(error).__name__, 'message': str(error)}
    if isinstance(error, TermEvaluationError):
        document['failures'] = [{'term': index, 'reason': reason} for index, reason in error.failures]
    click.echo(json.dumps(document), err=True)
    sys.exit(code)


def validate_scalar(ctx, param, value):
    if value is None:
        return value
    try:
        return parse_scalar(value)
    except LauricellaException as e:
        raise click.BadParameter(str(e))


def validate_vector(ctx, param, value):
    try:
        return parse_vector(value)
    except LauricellaException as e:
        raise click.BadParameter(str(e))


def parameter_point(func):
    @click.option('--a', 'a', callback=validate_scalar, required=True, help='Parameter a (decimal or p/q)')
    @click.option('--c', 'c', callback=validate_scalar, required=True, help='Parameter c (decimal or p/q)')
    @click.option('--b', 'b', callback=validate_vector, default='',
                  help='Comma separated b_1..b_N, zeros when omitted')
    @click.option('--x', 'x', callback=validate_vector, default='', help='Comma separated x_1..x_N')
    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        return func(*args, **kwargs)

    return wrapper


def make_params(a, c, b, x):
    if not b and x:
        logger.warning('No b given, using b = 0 for all %s variables', len(x))
        b = (0,) * len(x)
    try:
        return FDParams(a=a, c=c, b=b, x=x)
    except LauricellaException as e:
        fail(e)


def relation_options(func):
    @click.option('--family', type=click.Choice(FAMILIES, case_sensitive=False), default=None,
                  help='Relation family')
    @click.option('--n', 'n', type=int, default=0, help='Shift parameter n')
    @click.option('--p', 'p', callback=validate_scalar, default=None, help='Extra argument p (family B)')
    @click.option('--i', 'i', type=int, default=None, help='1-based index i (family D)')
    @click.option('--allow-nonnegative-n', is_flag=True,
                  help='Accept n >= 0 for family B; residuals are reported but not asserted')
    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        return func(*args, **kwargs)

    return wrapper


def assemble(family, n, p, i, allow_nonnegative_n, params):
    family = Family.from_string(family)
    if family == Family.B and p is None:
        raise click.UsageError('Family B requires --p')
    if family == Family.D and i is None:
        raise click.UsageError('Family D requires --i')
    try:
        return build_relation(family, n, params, p=p, i=i, allow_nonnegative=allow_nonnegative_n)
    except LauricellaException as e:
        fail(e)


@click.group()
@click.option('--log', envvar=LOG_LEVEL_ENV, default='WARNING',
              help='Logging level')
@click.option('--lib-log', default='WARNING',
              help='lauricella library log level')
@click.option('--log-format', default='text',
              help='Log format. Can be `json` or `text` (default)')
def cli(log, lib_log, log_format):
    """
    Lauricella F_D evaluation and relation verification
    """
    loglevel = parse_log_level(log)
    liblevel = parse_log_level(lib_log)
    if loglevel is None or liblevel is None:
        click.echo('invalid log level', err=True)
        sys.exit(EXIT_ERROR)

    init_logging(['fdtool'], log_format, loglevel)
    init_logging(['lauricella'], log_format, liblevel)


@cli.command('eval')
@parameter_point
@click.option('--method', type=click.Choice(['series', 'integral']), default='series')
@click.option('--tol', type=float, default=None,
              help='Series layer tolerance or quadrature relative error target')
def eval_(a, c, b, x, method, tol):
    """
    Evaluate F_D(a; b; c | x)
    """
    params = make_params(a, c, b, x)
    try:
        series_cfg = SeriesConfig(tol=tol) if tol is not None else None
        quad_cfg = QuadConfig(target_rel_error=tol) if tol is not None else None
        result = evaluate(params, Evaluator.from_string(method), series_cfg, quad_cfg)
    except LauricellaException as e:
        fail(e)

    click.echo(json.dumps(result.to_dict()))


@cli.command()
@parameter_point
@relation_options
@click.option('--exact', is_flag=True, help='Write coefficients as exact rationals')
def relation(a, c, b, x, family, n, p, i, allow_nonnegative_n, exact):
    """
    Emit a relation instance as JSON
    """
    if family is None:
        raise click.UsageError('--family is required')
    params = make_params(a, c, b, x)
    rel = assemble(family, n, p, i, allow_nonnegative_n, params)
    click.echo(dumps(relation_to_document(rel, exact=exact)))


def check_identity(identity, params, n, p, i, evaluator, tol):
    if identity == 'pfaff1':
        return pfaff_first(params, evaluator=evaluator, tol=tol)
    if identity == 'pfaff2':
        return pfaff_second(params, i if i is not None else 1, evaluator=evaluator, tol=tol)
    if identity == 'contig1':
        return contiguous(ContiguousKind.FIRST, params, evaluator=evaluator, tol=tol)
    if identity == 'contig2':
        return contiguous(ContiguousKind.SECOND, params, i=i if i is not None else 1, evaluator=evaluator, tol=tol)
    if identity == 'contig3':
        if p is None:
            raise click.UsageError('contig3 requires --p')
        return contiguous(ContiguousKind.THIRD, params, p=p, evaluator=evaluator, tol=tol)
    if identity == 'diff':
        return diff_relation(params, evaluator=evaluator, tol=tol)
    return verify_integral_identity(IntegralIdentity.from_string(identity), n, params, p=p, tol=tol)


@cli.command()
@click.option('--a', 'a', callback=validate_scalar, default=None, help='Parameter a (decimal or p/q)')
@click.option('--c', 'c', callback=validate_scalar, default=None, help='Parameter c (decimal or p/q)')
@click.option('--b', 'b', callback=validate_vector, default='', help='Comma separated b_1..b_N')
@click.option('--x', 'x', callback=validate_vector, default='', help='Comma separated x_1..x_N')
@relation_options
@click.option('--relation-file', type=click.Path(exists=True, dir_okay=False), default=None,
              help='Relation document written by `relation`')
@click.option('--identity', type=click.Choice(IDENTITIES, case_sensitive=False), default=None,
              help='Check an elementary or integral-level identity instead of a relation family')
@click.option('--evaluator', type=click.Choice(['series', 'integral']), default='series')
@click.option('--tol', type=float, default=1e-7, help='Relative tolerance')
@click.option('--perturb', type=int, default=None, help='Scale the coefficient of this term index (negative control)')
@click.option('--perturb-rel', type=float, default=1e-3, help='Relative size of the --perturb change')
def verify(a, c, b, x, family, n, p, i, allow_nonnegative_n, relation_file, identity, evaluator, tol, perturb,
           perturb_rel):
    """
    Check that a relation or identity sums to zero; exit 0 on pass, 1 on failure
    """
    evaluator = Evaluator.from_string(evaluator)
    sources = [source for source in (family, relation_file, identity) if source is not None]
    if len(sources) != 1:
        raise click.UsageError('Give exactly one of --family, --relation-file or --identity')

    try:
        if relation_file is not None:
            document = load_relation_file(relation_file)
            report = residual_of_terms(document.terms, evaluator=evaluator, tol=tol, asserted=document.asserted,
                                       label='Family {0}'.format(document.family.value))
        else:
            if a is None or c is None:
                raise click.UsageError('--a and --c are required')
            params = make_params(a, c, b, x)
            if identity is not None:
                report = check_identity(identity.lower(), params, n, p, i, evaluator, tol)
            else:
                rel = assemble(family, n, p, i, allow_nonnegative_n, params)
                if perturb is not None:
                    if not 0 <= perturb < len(rel):
                        raise click.BadParameter('term index out of range', param_hint='--perturb')
                    rel = rel.perturbed(perturb, perturb_rel)
                report = residual(rel, evaluator=evaluator, tol=tol)
    except LauricellaException as e:
        fail(e)

    verdict = 'PASS' if report.passed else 'FAIL'
    if not report.asserted:
        verdict += ' (not asserted)'
    click.echo('{0} {1}: residual={2:.3e} scale={3:.3e} relative={4} tol={5:.1e}'.format(
        verdict, report.label, report.residual, report.scale,
        'degenerate' if report.degenerate else '{0:.3e}'.format(report.relative_residual), report.tol), err=True)
    click.echo(json.dumps(report.to_dict()))
    sys.exit(EXIT_PASS if report.passed or not report.asserted else EXIT_FAIL)


@cli.command()
@click.option('--config', 'config_file', type=click.Path(exists=True, dir_okay=False), default=None,
              help='JSON sweep configuration; flags below are ignored when given')
@click.option('--families', default=','.join(FAMILIES), help='Comma separated families')
@click.option('--n-min', type=int, default=1, help='Smallest number of variables')
@click.option('--n-max', type=int, default=3, help='Largest number of variables')
@click.option('--trials', type=int, default=50, help='Trials per family')
@click.option('--seed', type=int, default=42, help='64-bit sweep seed')
@click.option('--tol', type=float, default=1e-7, help='Relative tolerance')
@click.option('--evaluator', type=click.Choice(['series', 'integral', 'both']), default='series')
@click.option('--workers', type=int, default=None, help='Worker threads, LAURICELLA_WORKERS by default')
@click.option('--report', 'report_path', type=click.Path(dir_okay=False, writable=True), default='sweep_report.json',
              help='Where to write the JSON report')
def sweep(config_file, families, n_min, n_max, trials, seed, tol, evaluator, workers, report_path):
    """
    Randomized verification sweep over relation families
    """
    try:
        if config_file is not None:
            config = SweepConfig.from_file(config_file)
        else:
            options = {
                'families': [name.strip().upper() for name in families.split(',') if name.strip()],
                'n_min': n_min,
                'n_max': n_max,
                'trials': trials,
                'seed': seed,
                'tol': tol,
                'evaluator': evaluator,
            }
            if workers is not None:
                options['workers'] = workers
            config = SweepConfig(**options)
        s = Sweep(config)
        report = s.run()
    except LauricellaException as e:
        fail(e)

    with open(report_path, 'w') as f:
        f.write(json.dumps(report, indent=2))

    for entry in report['per_family']:
        click.echo('family {0}: {1}/{2} passed, worst relative residual {3}'.format(
            entry['family'], entry['passes'], entry['trials'], entry['worst_rel_residual']))
    sys.exit(s.exit_code)


if __name__ == '__main__':
    cli()
