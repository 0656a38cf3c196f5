from fractions import Fraction

import pytest

from lauricella.config import QuadConfig
from lauricella.core import Evaluator, FDParams, FDTerm, Family, Relation
from lauricella.exceptions import DomainError, ParameterError, TermEvaluationError
from lauricella.relations import IntegralIdentity, build_relation, drop_zero_coordinates, relation_A, relation_B, \
    relation_C, relation_D, residual, verify_integral_identity
from lauricella.special import beta
from . import random_point, seeded

F = Fraction


def dominant_index(report):
    return max(range(len(report.contributions)), key=lambda k: abs(report.contributions[k]))


def test_drop_zero_coordinates():
    params = FDParams(a=1, c=2, b=(1, 5, 2), x=(F(3, 10), 0, F(1, 2)))
    reduced = drop_zero_coordinates(params)
    assert reduced.x == (F(3, 10), F(1, 2))
    assert reduced.b == (1, 2)
    assert drop_zero_coordinates(FDParams(a=1, c=2, b=(1, 2), x=(0, 0))).N == 0
    assert drop_zero_coordinates(reduced) is reduced


def test_family_A_without_arguments():
    a, c = F(3, 4), F(5, 2)
    rel = relation_A(0, FDParams(a=a, c=c))
    assert rel.coefficients == [a, -c]
    report = residual(rel, tol=1e-12)
    assert report.passed
    assert report.contributions[0] == pytest.approx(float(a) * beta(a, c - a), rel=1e-14)


def test_family_A_gauss(gauss_params):
    rel = relation_A(0, gauss_params)
    assert len(rel) == 3
    report = residual(rel)
    assert report.passed
    assert report.relative_residual <= 1e-9


def test_family_A_rational(rational_params):
    rel = relation_A(2, rational_params)
    assert len(rel) == rational_params.N + 2
    assert all(isinstance(coeff, Fraction) for coeff in rel.coefficients)
    assert residual(rel).relative_residual <= 1e-9


def test_family_A_allows_zero_arguments():
    params = FDParams(a=F(1, 2), c=F(9, 4), b=(F(3, 2), F(2)), x=(F(2, 5), 0))
    assert residual(relation_A(1, params)).relative_residual <= 1e-9


def test_family_A_preconditions():
    with pytest.raises(DomainError):
        relation_A(-1, FDParams(a=1, c=2))
    with pytest.raises(DomainError):
        relation_A(0, FDParams(a=2, c=1))
    with pytest.raises(DomainError):
        relation_A(0, FDParams(a=1, c=2, b=(1,), x=(1,)))


def test_family_B_examples():
    params = FDParams(a=F(7, 5), c=F(3), b=(F(4, 5),), x=(F(1, 3),))
    rel = relation_B(-1, F(1, 2), params)
    assert len(rel) == params.N + 3
    assert residual(rel).relative_residual <= 1e-9

    params = FDParams(a=F(1, 2), c=F(11, 4), b=(F(3, 2), F(-1, 3)), x=(F(1, 4), F(-3, 5)))
    assert residual(relation_B(-2, F(-7, 10), params)).relative_residual <= 1e-9


def test_family_B_guards():
    params = FDParams(a=F(7, 5), c=F(3), b=(F(4, 5),), x=(F(1, 3),))
    with pytest.raises(DomainError, match='family D'):
        relation_B(-1, F(1, 3), params)
    with pytest.raises(DomainError, match='family C'):
        relation_B(-1, 1, params)
    with pytest.raises(DomainError):
        relation_B(-1, 0, params)
    with pytest.raises(DomainError):
        relation_B(-1, F(3, 2), params)
    with pytest.raises(DomainError):
        relation_B(1, F(1, 2), params)


def test_family_B_drops_zero_arguments():
    params = FDParams(a=F(7, 5), c=F(3), b=(F(4, 5), F(9)), x=(F(1, 3), 0))
    rel = relation_B(-1, F(1, 2), params)
    assert rel.params.N == 1
    assert len(rel) == 4
    assert residual(rel).relative_residual <= 1e-9


def test_family_B_nonnegative_is_not_asserted():
    params = FDParams(a=F(7, 5), c=F(3), b=(F(4, 5),), x=(F(1, 3),))
    rel = relation_B(1, F(1, 2), params, allow_nonnegative=True)
    assert not rel.asserted
    report = residual(rel)
    assert not report.asserted


def test_family_C_without_arguments():
    a, c, n = F(3, 4), F(5, 2), 1
    rel = relation_C(n, FDParams(a=a, c=c))
    assert rel.coefficients == [-(n + c - a), n + c]
    assert residual(rel, tol=1e-12).passed


def test_family_C_examples(gauss_params):
    assert residual(relation_C(0, gauss_params)).relative_residual <= 1e-9
    params = FDParams(a=F(1, 2), c=F(8, 3), b=(F(2, 3), F(-1, 2)), x=(F(1, 5), F(-1, 2)))
    assert residual(relation_C(-1, params)).relative_residual <= 1e-9


def test_family_C_preconditions():
    with pytest.raises(DomainError):
        relation_C(-1, FDParams(a=1, c=F(3, 2)))
    with pytest.raises(DomainError):
        relation_C(0, FDParams(a=0, c=2))


def test_family_D_examples(gauss_params):
    rel = relation_D(0, 1, gauss_params)
    assert rel.i == 1
    assert residual(rel).relative_residual <= 1e-9

    params = FDParams(a=F(1, 2), c=F(8, 3), b=(F(2, 3), F(-1, 2)), x=(F(1, 5), F(-1, 2)))
    assert residual(relation_D(1, 2, params)).relative_residual <= 1e-9

    ones = FDParams(a=F(1, 2), c=F(8, 3), b=(1, 1), x=(F(1, 5), F(-1, 2)))
    assert residual(relation_D(2, 1, ones)).relative_residual <= 1e-9


def test_family_D_repeated_argument():
    params = FDParams(a=F(1, 2), c=F(8, 3), b=(F(2, 3), F(-1, 2)), x=(F(2, 5), F(2, 5)))
    assert residual(relation_D(1, 1, params)).relative_residual <= 1e-9


def test_family_D_index_remapped_after_dropping_zeros():
    params = FDParams(a=F(1, 2), c=F(8, 3), b=(F(5), F(2, 3), F(-1, 2)), x=(0, F(1, 5), F(-1, 2)))
    rel = relation_D(1, 3, params)
    assert rel.i == 2
    assert rel.p == F(-1, 2)
    assert residual(rel).relative_residual <= 1e-9


def test_family_D_preconditions():
    params = FDParams(a=F(1, 2), c=F(8, 3), b=(F(2, 3), F(-1, 2)), x=(0, F(-1, 2)))
    with pytest.raises(ParameterError):
        relation_D(0, 3, params)
    with pytest.raises(DomainError):
        relation_D(0, 1, params)


@pytest.mark.parametrize('family', [Family.A, Family.B, Family.C, Family.D])
def test_random_points(family):
    rng = seeded(42 + ord(family.value))
    for trial in range(50):
        N = 1 + trial % 3
        params = random_point(rng, N, gap=1.2)
        if family == Family.A:
            rel = build_relation(family, trial % 4, params)
        elif family == Family.B:
            rel = build_relation(family, -(1 + trial % 3), params, p=F(-7001, 10000) if trial % 2 else F(4501, 10000))
        elif family == Family.C:
            rel = build_relation(family, trial % 3 - 1, params)
        else:
            rel = build_relation(family, trial % 3 - 1, params, i=1 + trial % N)
        report = residual(rel)
        assert report.passed, (params, report.relative_residual)
        assert report.relative_residual <= 1e-9


def test_evaluators_agree():
    rng = seeded(11)
    for trial in range(10):
        params = random_point(rng, 1 + trial % 2, gap=1.2)
        rel = relation_D(trial % 2, 1, params)
        series = residual(rel, evaluator=Evaluator.SERIES)
        integral = residual(rel, evaluator=Evaluator.INTEGRAL)
        assert series.passed and integral.passed
        assert abs(series.relative_residual - integral.relative_residual) < 1e-6


def test_negative_control():
    rng = seeded(5)
    failures = 0
    for trial in range(100):
        params = random_point(rng, 1 + trial % 3)
        rel = relation_A(trial % 3, params) if trial % 2 else relation_D(trial % 3, 1, params)
        index = dominant_index(residual(rel))
        if not residual(rel.perturbed(index, 1e-3)).passed:
            failures += 1
    assert failures >= 95


def test_degenerate_relation():
    rel = Relation(family=Family.A, n=0, terms=((0, FDTerm()), (0, FDTerm(a_shift=1, c_shift=1))),
                   params=FDParams(a=1, c=2))
    report = residual(rel)
    assert report.degenerate
    assert not report.passed
    assert report.relative_residual is None
    assert report.term_values == [None, None]


def test_term_failures_are_aggregated():
    rel = Relation(family=Family.A, n=0, terms=((1, FDTerm()), (1, FDTerm(c_shift=-3)), (1, FDTerm(c_shift=-4))),
                   params=FDParams(a=1, c=2, b=(1,), x=(F(1, 2),)))
    with pytest.raises(TermEvaluationError) as e:
        residual(rel, evaluator=Evaluator.INTEGRAL)
    assert [index for index, _ in e.value.failures] == [1, 2]


def test_relation_needs_a_point():
    rel = Relation(family=Family.A, n=0, terms=((1, FDTerm()),))
    with pytest.raises(ParameterError):
        residual(rel)


@pytest.mark.parametrize('n', [0, 1, 2])
def test_integral_identity_polynomial_weights(n):
    rng = seeded(600 + n)
    for trial in range(20):
        params = random_point(rng, 1 + trial % 2)
        report = verify_integral_identity(IntegralIdentity.CALBP, n, params)
        assert report.passed, params


@pytest.mark.parametrize('n', [-1, -2])
@pytest.mark.parametrize('p', [F(2, 5), F(-7, 10)])
def test_integral_identity_u_weights(n, p):
    rng = seeded(700 - n)
    for trial in range(20):
        params = random_point(rng, 1 + trial % 2)
        report = verify_integral_identity(IntegralIdentity.CALPOL, n, params, p=p)
        assert report.passed, params


@pytest.mark.parametrize('n', [1, 2])
@pytest.mark.parametrize('at_one', [True, False])
def test_integral_identity_special_points(n, at_one):
    rng = seeded(800 + n)
    for trial in range(20):
        params = random_point(rng, 1 + trial % 2)
        p = 1 if at_one else params.x[0]
        report = verify_integral_identity(IntegralIdentity.CALPOL0, n, params, p=p)
        assert report.passed, params


def test_integral_identity_examples():
    params = FDParams(a=F(9, 10), c=F(21, 10), b=(F(7, 10),), x=(F(2, 5),))
    assert verify_integral_identity(IntegralIdentity.CALBP, 0, params).relative_residual <= 1e-8
    assert verify_integral_identity(IntegralIdentity.CALPOL, -1, params, p=F(2, 5)).relative_residual <= 1e-8
    params = FDParams(a=F(9, 10), c=F(21, 10), b=(F(7, 10), F(-1, 2)), x=(F(2, 5), F(-1, 3)))
    assert verify_integral_identity(IntegralIdentity.CALPOL0, 1, params, p=F(2, 5)).relative_residual <= 1e-8


def test_integral_identity_guards():
    params = FDParams(a=F(9, 10), c=F(21, 10), b=(F(7, 10),), x=(F(2, 5),))
    with pytest.raises(DomainError):
        verify_integral_identity(IntegralIdentity.CALPOL0, 1, params, p=F(1, 2))
    with pytest.raises(ParameterError):
        verify_integral_identity(IntegralIdentity.CALPOL, 1, params)
    with pytest.raises(DomainError):
        verify_integral_identity(IntegralIdentity.CALBP, -1, params)


def test_integral_identity_accepts_config():
    params = FDParams(a=F(9, 10), c=F(21, 10), b=(F(7, 10),), x=(F(2, 5),))
    report = verify_integral_identity(IntegralIdentity.CALBP, 1, params, cfg=QuadConfig(target_rel_error=1e-10))
    assert report.passed
