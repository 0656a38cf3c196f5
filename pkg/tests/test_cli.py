import json
import logging
import math
from fractions import Fraction

import pytest
from click.testing import CliRunner

from fdtool import EXIT_ERROR, EXIT_FAIL, EXIT_PASS
from fdtool.__main__ import cli

POINT = ['--a', '0.9', '--c', '2.1', '--b', '0.7', '--x', '0.4']


@pytest.fixture(autouse=True)
def drop_cli_handlers():
    yield
    for name in ('fdtool', 'lauricella'):
        logger = logging.getLogger(name)
        for handler in [h for h in logger.handlers if getattr(h, 'lauricella_handler', False)]:
            logger.removeHandler(handler)


def invoke(*args, **kwargs):
    return CliRunner().invoke(cli, list(args), **kwargs)


def last_json(result):
    lines = [line for line in result.output.splitlines() if line.strip()]
    return json.loads(lines[-1])


def block_json(result):
    lines = result.output.splitlines()
    start = lines.index('{')
    return json.loads('\n'.join(lines[start:]))


def test_eval_series():
    result = invoke('eval', '--a', '1', '--c', '2', '--b', '1', '--x', '0.5')
    assert result.exit_code == EXIT_PASS
    document = last_json(result)
    assert document['value'] == pytest.approx(2 * math.log(2), abs=1e-7)
    assert document['method'] == 'series'
    assert document['converged']


def test_eval_integral():
    result = invoke('eval', '--a', '1', '--c', '2', '--b', '1', '--x', '1/2', '--method', 'integral')
    assert result.exit_code == EXIT_PASS
    assert last_json(result)['value'] == pytest.approx(1.3862944, abs=1e-7)


def test_eval_zero_arguments():
    result = invoke('eval', '--a', '0.3', '--c', '1.7', '--b', '1,2', '--x', '0,0')
    assert result.exit_code == EXIT_PASS
    assert last_json(result)['value'] == 1.0


def test_eval_domain_errors():
    result = invoke('eval', '--a', '2', '--c', '1', '--b', '1', '--x', '0.5', '--method', 'integral')
    assert result.exit_code == EXIT_ERROR
    assert last_json(result)['error'] == 'DomainError'

    result = invoke('eval', '--a', '1', '--c', '2', '--b', '1', '--x', '1.5')
    assert result.exit_code == EXIT_ERROR


def test_eval_usage_errors():
    assert invoke('eval', '--a', 'abc', '--c', '2').exit_code == EXIT_ERROR
    assert invoke('eval', '--c', '2').exit_code == EXIT_ERROR
    assert invoke('eval', '--a', '1', '--c', '2', '--b', '1,2', '--x', '0.5').exit_code == EXIT_ERROR


def test_invalid_log_level():
    assert invoke('--log', 'loud', 'eval', '--a', '1', '--c', '2').exit_code == EXIT_ERROR
    result = invoke('eval', '--a', '1', '--c', '2', env={'LAURICELLA_LOG': 'loud'})
    assert result.exit_code == EXIT_ERROR


def test_relation_family_A():
    result = invoke('relation', '--family', 'A', '--n', '0', '--a', '3/4', '--c', '5/2', '--exact')
    assert result.exit_code == EXIT_PASS
    document = block_json(result)
    assert document['family'] == 'A'
    assert [term['coeff'] for term in document['terms']] == [{'num': '3', 'den': '4'}, {'num': '-5', 'den': '2'}]


def test_relation_float_coefficients():
    result = invoke('relation', '--family', 'c', '--n', '1', *POINT)
    assert result.exit_code == EXIT_PASS
    assert all(isinstance(term['coeff'], float) for term in block_json(result)['terms'])


def test_relation_usage_errors():
    assert invoke('relation', *POINT).exit_code == EXIT_ERROR
    assert invoke('relation', '--family', 'D', *POINT).exit_code == EXIT_ERROR
    assert invoke('relation', '--family', 'B', '--n', '-1', *POINT).exit_code == EXIT_ERROR

    result = invoke('relation', '--family', 'B', '--n', '-1', '--p', '0.4', *POINT)
    assert result.exit_code == EXIT_ERROR
    assert 'family D' in last_json(result)['message']


@pytest.mark.parametrize('family_args', [
    ['--family', 'A', '--n', '1'],
    ['--family', 'B', '--n', '-1', '--p', '-0.3'],
    ['--family', 'C', '--n', '0'],
    ['--family', 'D', '--n', '2', '--i', '1'],
])
def test_verify_families(family_args):
    result = invoke('verify', *family_args, *POINT)
    assert result.exit_code == EXIT_PASS
    document = last_json(result)
    assert document['passed']
    assert document['relative_residual'] <= 1e-9


def test_verify_integral_evaluator():
    result = invoke('verify', '--family', 'D', '--n', '1', '--i', '1', '--evaluator', 'integral', *POINT)
    assert result.exit_code == EXIT_PASS


def test_verify_perturbed():
    result = invoke('verify', '--family', 'A', '--n', '0', '--perturb', '0', *POINT)
    assert result.exit_code == EXIT_FAIL
    assert not last_json(result)['passed']
    assert invoke('verify', '--family', 'A', '--perturb', '7', *POINT).exit_code == EXIT_ERROR


def test_verify_not_asserted():
    result = invoke('verify', '--family', 'B', '--n', '1', '--p', '-0.3', '--allow-nonnegative-n', *POINT)
    assert result.exit_code == EXIT_PASS
    assert last_json(result)['asserted'] is False


def test_verify_relation_file(tmp_path):
    path = tmp_path / 'relation.json'
    result = invoke('relation', '--family', 'D', '--n', '1', '--i', '2', '--exact', '--a', '7/5', '--c', '3',
                    '--b', '4/5,-1/2', '--x', '1/3,-2/5')
    assert result.exit_code == EXIT_PASS
    document = block_json(result)
    path.write_text(json.dumps(document))
    assert invoke('verify', '--relation-file', str(path)).exit_code == EXIT_PASS

    coeffs = [term['coeff'] for term in document['terms']]
    largest = max(coeffs, key=lambda q: abs(Fraction(int(q['num']), int(q['den']))))
    largest['num'] = str(2 * int(largest['num']))
    path.write_text(json.dumps(document))
    assert invoke('verify', '--relation-file', str(path)).exit_code == EXIT_FAIL

    path.write_text('{}')
    result = invoke('verify', '--relation-file', str(path))
    assert result.exit_code == EXIT_ERROR
    assert last_json(result)['error'] == 'RelationDocumentError'


def test_verify_sources():
    assert invoke('verify', *POINT).exit_code == EXIT_ERROR
    assert invoke('verify', '--family', 'A', '--identity', 'diff', *POINT).exit_code == EXIT_ERROR
    assert invoke('verify', '--family', 'A').exit_code == EXIT_ERROR


@pytest.mark.parametrize('args', [
    ['--identity', 'pfaff1', '--a', '1', '--c', '2', '--b', '1', '--x', '0.5', '--evaluator', 'integral'],
    ['--identity', 'pfaff2', '--i', '2', '--a', '0.4', '--c', '2.2', '--b', '0.5,1.5', '--x', '0.2,-0.1'],
    ['--identity', 'contig1', *POINT],
    ['--identity', 'contig2', '--i', '1', *POINT],
    ['--identity', 'contig3', '--p', '-0.5', *POINT],
    ['--identity', 'diff', '--a', '1.5', '--c', '3.2', '--b', '0.9', '--x', '0.4'],
    ['--identity', 'calbp', '--n', '1', *POINT],
    ['--identity', 'calpol', '--n', '-1', '--p', '0.6', *POINT],
    ['--identity', 'calpol0', '--n', '1', '--p', '1', *POINT],
])
def test_verify_identities(args):
    result = invoke('verify', *args)
    assert result.exit_code == EXIT_PASS
    assert last_json(result)['passed']


def test_verify_identity_errors():
    assert invoke('verify', '--identity', 'contig3', *POINT).exit_code == EXIT_ERROR
    result = invoke('verify', '--identity', 'diff', *POINT)
    assert result.exit_code == EXIT_ERROR
    assert last_json(result)['error'] == 'DomainError'


def test_sweep(tmp_path):
    first, second = tmp_path / 'first.json', tmp_path / 'second.json'
    args = ['sweep', '--families', 'A,D', '--trials', '4', '--n-max', '2', '--seed', '9', '--workers', '1']
    result = invoke(*args, '--report', str(first))
    assert result.exit_code == EXIT_PASS
    assert 'family A: 4/4 passed' in result.output
    assert invoke(*args, '--report', str(second)).exit_code == EXIT_PASS

    reports = [json.loads(path.read_text()) for path in (first, second)]
    for report in reports:
        report.pop('generated_at')
    assert reports[0] == reports[1]
    assert reports[0]['passed']
    assert [entry['family'] for entry in reports[0]['per_family']] == ['A', 'D']


def test_sweep_failure(tmp_path):
    report = tmp_path / 'report.json'
    result = invoke('sweep', '--families', 'A', '--trials', '3', '--n-max', '1', '--tol', '1e-30', '--workers', '1',
                    '--report', str(report))
    assert result.exit_code == EXIT_FAIL
    assert not json.loads(report.read_text())['passed']


def test_sweep_config_file(tmp_path):
    config = tmp_path / 'sweep.json'
    config.write_text(json.dumps({'families': ['C'], 'trials': 2, 'n_max': 1, 'workers': 1}))
    report = tmp_path / 'report.json'
    result = invoke('sweep', '--config', str(config), '--report', str(report))
    assert result.exit_code == EXIT_PASS
    assert json.loads(report.read_text())['config']['families'] == ['C']

    config.write_text(json.dumps({'families': ['E']}))
    result = invoke('sweep', '--config', str(config), '--report', str(report))
    assert result.exit_code == EXIT_ERROR
    assert last_json(result)['error'] == 'SweepConfigError'
