"""Linear relations among shifted F_D instances and their numerical verification.

Families A to D integrate the exact derivative of u^n P K (with u = t or u = 1 - pt) over [0, 1] and rewrite
each resulting integral of t^m K or (1 - pt)^m K as a beta value times an F_D instance. Their coefficients are
exact whenever the parameter point is rational.

The elementary identities (Pfaff transformations, contiguous relations and the differential relation) and the
integral-level sums are checked here as well. Every check returns a ResidualReport.
"""
import enum
import logging
import math
from dataclasses import dataclass, field, replace
from typing import List, Optional, Tuple

from lauricella import coeffs
from lauricella.config import QuadConfig
from lauricella.core import BetaPrefactor, Evaluator, FDParams, FDTerm, Family, Relation, Scalar, as_scalar
from lauricella.exceptions import DomainError, LauricellaException, ParameterError, TermEvaluationError
from lauricella.fdeval import evaluate, integral_In, integral_Inp
from lauricella.special import beta

logger = logging.getLogger(__name__)

DEFAULT_TOL = 1e-7


class IntegralIdentity(enum.Enum):
    """Integral-level sums that vanish before the F_D rewriting"""
    CALBP = 'CALBP'
    CALPOL = 'CALPOL'
    CALPOL0 = 'CALPOL0'

    @staticmethod
    def from_string(value):
        for name, member in IntegralIdentity.__members__.items():
            if member.value == str(value).upper():
                return IntegralIdentity[name]

        return None


class ContiguousKind(enum.Enum):
    FIRST = 'first'
    SECOND = 'second'
    THIRD = 'third'


@dataclass(frozen=True)
class ResolvedTerm:
    """A relation term with its shifts applied: coefficient * B(beta) * F_D(params)"""
    coefficient: Scalar
    params: FDParams
    beta: Optional[Tuple[Scalar, Scalar]] = None

    def weight(self):
        weight = float(self.coefficient)
        if self.beta is not None:
            weight *= beta(*self.beta)
        return weight


@dataclass
class ResidualReport:
    """Outcome of summing the terms of a relation.

    Args:
        residual (float): Sum of the contributions
        scale (float): Sum of the absolute contributions
        relative_residual (float|None): |residual| / scale, None when the scale is zero
        term_values (list): Evaluated value of every term, None for skipped zero-coefficient terms
        contributions (list): Signed summands, the term weight times its value
        passed (bool): |residual| <= tol * scale on a non-degenerate scale
        degenerate (bool): True when the scale is zero
        tol (float): Relative tolerance used
        asserted (bool): False for relations outside their established range
        error_estimate (float): Propagated evaluator error bound
        converged (bool): False when some term evaluation hit its effort cap
    """
    residual: float
    scale: float
    relative_residual: Optional[float]
    term_values: List[Optional[float]]
    contributions: List[float]
    passed: bool
    degenerate: bool
    tol: float
    asserted: bool = True
    error_estimate: float = 0.0
    converged: bool = True
    label: str = ''
    details: dict = field(default_factory=dict)

    def to_dict(self):
        return {
            'label': self.label,
            'residual': self.residual,
            'scale': self.scale,
            'relative_residual': self.relative_residual,
            'passed': self.passed,
            'degenerate': self.degenerate,
            'tol': self.tol,
            'asserted': self.asserted,
            'error_estimate': self.error_estimate,
            'converged': self.converged,
            'term_values': self.term_values,
        }


def build_report(contributions, term_values, tol, asserted=True, error_estimate=0.0, converged=True, label=''):
    """Turn evaluated summands into a ResidualReport"""
    residual = math.fsum(contributions)
    scale = math.fsum(abs(value) for value in contributions)
    degenerate = scale == 0
    relative = None if degenerate else abs(residual) / scale
    passed = not degenerate and abs(residual) <= tol * scale
    report = ResidualReport(residual=residual, scale=scale, relative_residual=relative, term_values=term_values,
                            contributions=contributions, passed=passed, degenerate=degenerate, tol=tol,
                            asserted=asserted, error_estimate=error_estimate, converged=converged, label=label)
    if not passed:
        logger.info('%s did not pass', label or 'Relation', extra={'extra': report.to_dict()})
    return report


def drop_zero_coordinates(params):
    """Remove the variables with x_i = 0, which leave the F_D value unchanged"""
    keep = [j for j, value in enumerate(params.x) if value != 0]
    if len(keep) == params.N:
        return params
    return replace(params, b=tuple(params.b[j] for j in keep), x=tuple(params.x[j] for j in keep))


def _require(condition, message, *args):
    if not condition:
        raise DomainError(message.format(*args))


def _check_euler(params):
    _require(params.a > 0, 'Relation requires a > 0, got a = {0}', params.a)
    _require(params.c > params.a, 'Relation requires c > a, got a = {0}, c = {1}', params.a, params.c)
    for j, value in enumerate(params.x):
        _require(value < 1, 'Relation requires x_i < 1, got x_{0} = {1}', j + 1, value)


def _check_n(n):
    if n != int(n):
        raise ParameterError('n must be an integer, got {0}'.format(n))
    return int(n)


def relation_A(n, params):
    """Relation among F_D(a + m; b; c + m | x), m = n..n+N+1.

        sum_{k=0}^{N+1} (n d_(k+1) + e_k) B(a + k + n, c - a) F_D(a + k + n; b; c + k + n | x) = 0

    Args:
        n (int): Shift, n >= 0
        params (FDParams): Base point with c > a > 0, x_i < 1
    Returns:
        Relation: N + 2 terms
    """
    n = _check_n(n)
    _require(n >= 0, 'Family A requires n >= 0, got {0}', n)
    _check_euler(params)

    d = coeffs.coeff_d(params.x)
    e = coeffs.coeff_e(params.x, params.a, params.c, params.b)
    terms = []
    for k in range(params.N + 2):
        term = FDTerm(a_shift=k + n, c_shift=k + n, beta_prefactor=BetaPrefactor(u_shift=k + n))
        terms.append((n * d[k + 1] + e[k], term))

    logger.debug('Assembled family A relation', extra={'extra': {'n': n, 'params': repr(params)}})
    return Relation(family=Family.A, n=n, terms=tuple(terms), params=params)


def relation_B(n, p, params, allow_nonnegative=False):
    """Relation among (N + 1)-variable F_D instances with extra argument p.

        sum_{k=0}^{N+2} (-n p d_k(p) + e_(k-1)(p)) F_D(a; b, 1 - k - n; c | x, p) = 0, e_(-1) = 0

    The common factor B(a, c - a) is divided out. Zero coordinates of x are dropped first.

    Args:
        n (int): Shift, n < 0
        p (Scalar): Extra argument, p < 1 and p not in {0, x_1..x_N}
        params (FDParams): Base point with c > a > 0, x_i < 1
        allow_nonnegative (bool): Also accept n >= 0; the relation is then marked as not asserted
    Raises:
        DomainError: For p = 1 (use family C), p = x_i (use family D), p = 0 or p > 1
    """
    n = _check_n(n)
    p = as_scalar(p)
    asserted = True
    if n >= 0:
        _require(allow_nonnegative, 'Family B requires n < 0, got {0}', n)
        asserted = False
    _check_euler(params)
    _require(p != 1, 'Family B is undefined at p = 1; use family C')
    _require(p < 1, 'Family B requires p < 1, got {0}', p)
    _require(p != 0, 'Family B requires p != 0')

    reduced = drop_zero_coordinates(params)
    for j, value in enumerate(reduced.x):
        _require(value != p, 'Family B is undefined at p = x_i (x_{0} = {1}); use family D', j + 1, p)

    d_p = coeffs.coeff_d_p(p, reduced.x)
    e_p = coeffs.coeff_e_p(p, reduced.x, reduced.a, reduced.c, reduced.b)
    terms = []
    for k in range(reduced.N + 3):
        previous = e_p[k - 1] if k > 0 else 0
        terms.append((-n * p * d_p[k] + previous, FDTerm(extra_arg=(p, 1 - k - n))))

    logger.debug('Assembled family B relation', extra={'extra': {'n': n, 'p': str(p), 'params': repr(reduced)}})
    return Relation(family=Family.B, n=n, terms=tuple(terms), p=p, params=reduced, asserted=asserted)


def relation_C(n, params):
    """Relation among F_D(a; b; c + m | x), m = n..n+N+1, from p = 1.

        sum_{k=0}^{N+1} (-n d_(k+1)(1) + e_k(1)) B(a, c + k + n - a) F_D(a; b; c + k + n | x) = 0

    Args:
        n (int): Shift with c + n > a > 0
        params (FDParams): Base point; zero coordinates of x are dropped first
    """
    n = _check_n(n)
    _require(params.a > 0, 'Family C requires a > 0, got a = {0}', params.a)
    _require(params.c + n > params.a, 'Family C requires c + n > a, got a = {0}, c = {1}, n = {2}',
             params.a, params.c, n)
    for j, value in enumerate(params.x):
        _require(value < 1, 'Family C requires x_i < 1, got x_{0} = {1}', j + 1, value)

    reduced = drop_zero_coordinates(params)
    special = coeffs.coeff_p_special(coeffs.SpecialCase.ONE, reduced.x, reduced.a, reduced.c, reduced.b)
    terms = []
    for k in range(reduced.N + 2):
        term = FDTerm(c_shift=n + k, beta_prefactor=BetaPrefactor(v_shift=n + k))
        terms.append((-n * special.d_p[k + 1] + special.e_p[k], term))

    logger.debug('Assembled family C relation', extra={'extra': {'n': n, 'params': repr(reduced)}})
    return Relation(family=Family.C, n=n, terms=tuple(terms), p=special.p, params=reduced)


def relation_D(n, i, params):
    """Relation among F_D instances with b_i shifted, from p = x_i.

        sum_{k=0}^{N+1} (-n x_i d_(k+1)(x_i) + e_k(x_i)) F_D(a; .., b_i - n - k, ..; c | x) = 0

    Args:
        n (int): Shift
        i (int): 1-based index with x_i != 0
        params (FDParams): Base point with c > a > 0, x_i < 1; other zero coordinates are dropped first
    """
    n = _check_n(n)
    if i is None or not 1 <= i <= params.N:
        raise ParameterError('Family D needs an index 1 <= i <= {0}, got {1}'.format(params.N, i))
    _check_euler(params)
    _require(params.x[i - 1] != 0, 'Family D requires x_i != 0, got x_{0} = 0', i)

    reduced = drop_zero_coordinates(params)
    index = sum(1 for value in params.x[:i - 1] if value != 0) + 1
    special = coeffs.coeff_p_special(coeffs.SpecialCase.X_I, reduced.x, reduced.a, reduced.c, reduced.b, i=index)
    x_i = reduced.x[index - 1]
    terms = []
    for k in range(reduced.N + 2):
        shifts = tuple(-(n + k) if j == index - 1 else 0 for j in range(reduced.N))
        terms.append((-n * x_i * special.d_p[k + 1] + special.e_p[k], FDTerm(b_shifts=shifts)))

    logger.debug('Assembled family D relation', extra={'extra': {'n': n, 'i': index, 'params': repr(reduced)}})
    return Relation(family=Family.D, n=n, terms=tuple(terms), p=x_i, i=index, params=reduced)


def resolve_terms(rel, params=None):
    """Apply every term's shifts to the base point

    Args:
        rel (Relation): Relation to resolve
        params (FDParams): Base point, defaults to the point the relation was assembled at
    Returns:
        list[ResolvedTerm]: One entry per term
    """
    params = params if params is not None else rel.params
    if params is None:
        raise ParameterError('Relation carries no parameter point and none was given')
    resolved = []
    for coefficient, term in rel.terms:
        shifted, beta_args = term.resolve(params)
        resolved.append(ResolvedTerm(coefficient=coefficient, params=shifted, beta=beta_args))
    return resolved


def residual_of_terms(terms, evaluator=Evaluator.SERIES, tol=DEFAULT_TOL, asserted=True, series_cfg=None,
                      quad_cfg=None, label=''):
    """Evaluate and sum resolved terms.

    Zero-coefficient terms are skipped and reported with value None.

    Raises:
        TermEvaluationError: Naming every term that could not be evaluated
    """
    contributions = []
    values = []
    failures = []
    error_estimate = 0.0
    converged = True
    for index, term in enumerate(terms):
        if term.coefficient == 0:
            contributions.append(0.0)
            values.append(None)
            continue
        try:
            weight = term.weight()
            result = evaluate(term.params, evaluator, series_cfg, quad_cfg)
        except LauricellaException as e:
            failures.append((index, '{0} at {1!r}'.format(e, term.params)))
            continue
        values.append(result.value)
        contributions.append(weight * result.value)
        error_estimate += abs(weight) * result.abs_error_estimate
        converged = converged and result.converged

    if failures:
        raise TermEvaluationError(failures)
    return build_report(contributions, values, tol, asserted=asserted, error_estimate=error_estimate,
                        converged=converged, label=label)


def residual(rel, params=None, evaluator=Evaluator.SERIES, tol=DEFAULT_TOL, series_cfg=None, quad_cfg=None):
    """Numerical residual of a relation.

    Args:
        rel (Relation): Relation to check
        params (FDParams): Base point, defaults to rel.params
        evaluator (Evaluator): SERIES or INTEGRAL
        tol (float): Relative tolerance
    Returns:
        ResidualReport: pass iff |residual| <= tol * scale with scale > 0
    """
    return residual_of_terms(resolve_terms(rel, params), evaluator=evaluator, tol=tol, asserted=rel.asserted,
                             series_cfg=series_cfg, quad_cfg=quad_cfg, label='Family {0}'.format(rel.family.value))


def _p_case(p, params):
    if p == 1:
        return coeffs.SpecialCase.ONE, None
    for j, value in enumerate(params.x):
        if value == p:
            return coeffs.SpecialCase.X_I, j + 1
    return None, None


def verify_integral_identity(family, n, params, p=None, tol=DEFAULT_TOL, cfg=None):
    """Check an integral-level sum by direct quadrature of every integral, bypassing F_D.

        CALBP:   sum_{k=0}^{N+1} (n d_(k+1) + e_k) I_(k+n) = 0
        CALPOL:  sum_{k=0}^{N+2} (-n p d_k(p) + e_(k-1)(p)) I_(k+n-1,p) = 0
        CALPOL0: sum_{k=0}^{N+1} (-n p d_(k+1)(p) + e_k(p)) I_(k+n,p) = 0, for p in {1, x_1..x_N}

    Args:
        family (IntegralIdentity): Which sum
        n (int): Shift
        params (FDParams): Point with c > a > 0, x_i < 1
        p (Scalar): Extra argument for CALPOL and CALPOL0
        cfg (QuadConfig): Quadrature control
    """
    if cfg is None:
        cfg = QuadConfig()
    n = _check_n(n)
    _check_euler(params)
    label = 'Integral identity {0}'.format(family.value)

    if family == IntegralIdentity.CALBP:
        _require(n >= 0, 'CALBP requires n >= 0, got {0}', n)
        d = coeffs.coeff_d(params.x)
        e = coeffs.coeff_e(params.x, params.a, params.c, params.b)
        pairs = [(n * d[k + 1] + e[k], lambda k=k: integral_In(k + n, params, cfg)) for k in range(params.N + 2)]
    else:
        if p is None:
            raise ParameterError('{0} needs p'.format(family.value))
        p = as_scalar(p)
        reduced = drop_zero_coordinates(params)
        if family == IntegralIdentity.CALPOL:
            d_p = coeffs.coeff_d_p(p, reduced.x)
            e_p = coeffs.coeff_e_p(p, reduced.x, reduced.a, reduced.c, reduced.b)
            pairs = [(-n * p * d_p[k] + (e_p[k - 1] if k > 0 else 0),
                      lambda k=k: integral_Inp(k + n - 1, p, reduced, cfg)) for k in range(reduced.N + 3)]
        elif family == IntegralIdentity.CALPOL0:
            case, i = _p_case(p, reduced)
            _require(case is not None, 'CALPOL0 requires p = 1 or p = x_i, got p = {0}', p)
            special = coeffs.coeff_p_special(case, reduced.x, reduced.a, reduced.c, reduced.b, i=i)
            pairs = [(-n * p * special.d_p[k + 1] + special.e_p[k],
                      lambda k=k: integral_Inp(k + n, p, reduced, cfg)) for k in range(reduced.N + 2)]
        else:
            raise ParameterError('Unknown integral identity {0}'.format(family))

    contributions = []
    values = []
    failures = []
    for index, (coefficient, integral) in enumerate(pairs):
        if coefficient == 0:
            contributions.append(0.0)
            values.append(None)
            continue
        try:
            value = integral()
        except LauricellaException as e:
            failures.append((index, str(e)))
            continue
        values.append(value)
        contributions.append(float(coefficient) * value)

    if failures:
        raise TermEvaluationError(failures)
    return build_report(contributions, values, tol, label=label)


def pfaff_first_params(params):
    """F_D(a; b; c | x) = prod (1 - x_i)^(-b_i) F_D(c - a; b; c | y), y_i = -x_i / (1 - x_i)

    Returns:
        (FDParams, float): Transformed parameter block and the prefactor
    Raises:
        DomainError: If some x_i >= 1
    """
    for j, value in enumerate(params.x):
        _require(value < 1, 'Pfaff transformation requires x_i < 1, got x_{0} = {1}', j + 1, value)

    y = tuple(-value / (1 - value) for value in params.x)
    log_prefactor = math.fsum(-float(b) * math.log1p(-float(x)) for b, x in zip(params.b, params.x))
    return replace(params, a=params.c - params.a, x=y), math.exp(log_prefactor)


def pfaff_second_params(params, i):
    """F_D(a; b; c | x) = (1 - x_i)^(-a) F_D(a; c - sum b, b without b_i; c | y_i, z_(i,j)) with
    y_i = -x_i / (1 - x_i) and z_(i,j) = (x_j - x_i) / (1 - x_i) for j != i

    Args:
        i (int): 1-based index
    Returns:
        (FDParams, float): Transformed parameter block and the prefactor
    """
    if not 1 <= i <= params.N:
        raise ParameterError('Pfaff transformation needs an index 1 <= i <= {0}, got {1}'.format(params.N, i))
    x_i = params.x[i - 1]
    _require(x_i < 1, 'Pfaff transformation requires x_i < 1, got x_{0} = {1}', i, x_i)

    others = [j for j in range(params.N) if j != i - 1]
    x = (-x_i / (1 - x_i),) + tuple((params.x[j] - x_i) / (1 - x_i) for j in others)
    b = (params.c - sum(params.b),) + tuple(params.b[j] for j in others)
    prefactor = math.exp(-float(params.a) * math.log1p(-float(x_i)))
    return replace(params, b=b, x=x), prefactor


def pfaff_first(params, evaluator=Evaluator.SERIES, tol=DEFAULT_TOL, series_cfg=None, quad_cfg=None):
    """Residual of F_D(a; b; c | x) - prod (1 - x_i)^(-b_i) F_D(c - a; b; c | y)"""
    transformed, prefactor = pfaff_first_params(params)
    terms = [ResolvedTerm(1, params), ResolvedTerm(-prefactor, transformed)]
    return residual_of_terms(terms, evaluator, tol, series_cfg=series_cfg, quad_cfg=quad_cfg, label='Pfaff first')


def pfaff_second(params, i, evaluator=Evaluator.SERIES, tol=DEFAULT_TOL, series_cfg=None, quad_cfg=None):
    """Residual of F_D(a; b; c | x) - (1 - x_i)^(-a) F_D(a; c - sum b, b without b_i; c | y_i, z_(i,j))"""
    transformed, prefactor = pfaff_second_params(params, i)
    terms = [ResolvedTerm(1, params), ResolvedTerm(-prefactor, transformed)]
    return residual_of_terms(terms, evaluator, tol, series_cfg=series_cfg, quad_cfg=quad_cfg, label='Pfaff second')


def contiguous_relation(kind, params, i=None, p=None):
    """Three-term contiguous relation as a Relation.

        FIRST:     a F(a+1; c+1) + (c - a) F(a; c+1) - c F = 0
        SECOND(i): a x_i F(a+1; c+1) + c F(b_i - 1) - c F = 0
        THIRD(p):  a p F(a+1; c+1) + c F(b, -1; c | x, p) - c F = 0

    Args:
        kind (ContiguousKind): Which relation
        params (FDParams): Point with c > a > 0
        i (int): 1-based index for SECOND
        p (Scalar): Extra argument for THIRD, not in {1, x_1..x_N}
    """
    _check_euler(params)
    a, c = params.a, params.c
    raised = FDTerm(a_shift=1, c_shift=1)
    if kind == ContiguousKind.FIRST:
        terms = [(a, raised), (c - a, FDTerm(c_shift=1)), (-c, FDTerm())]
        family = Family.CONTIG1
    elif kind == ContiguousKind.SECOND:
        if i is None or not 1 <= i <= params.N:
            raise ParameterError('Second contiguous relation needs an index 1 <= i <= {0}, got {1}'.format(
                params.N, i))
        shifts = tuple(-1 if j == i - 1 else 0 for j in range(params.N))
        terms = [(a * params.x[i - 1], raised), (c, FDTerm(b_shifts=shifts)), (-c, FDTerm())]
        family = Family.CONTIG2
    elif kind == ContiguousKind.THIRD:
        if p is None:
            raise ParameterError('Third contiguous relation needs p')
        p = as_scalar(p)
        _require(p != 1 and p not in params.x, 'Third contiguous relation requires p not in {{1, x_1..x_N}}, got {0}',
                 p)
        terms = [(a * p, raised), (c, FDTerm(extra_arg=(p, -1))), (-c, FDTerm())]
        family = Family.CONTIG3
    else:
        raise ParameterError('Unknown contiguous relation {0}'.format(kind))

    return Relation(family=family, n=0, terms=tuple(terms), p=p, i=i, params=params)


def contiguous(kind, params, i=None, p=None, evaluator=Evaluator.SERIES, tol=DEFAULT_TOL, series_cfg=None,
               quad_cfg=None):
    """Residual of a contiguous relation, see contiguous_relation"""
    rel = contiguous_relation(kind, params, i=i, p=p)
    return residual(rel, evaluator=evaluator, tol=tol, series_cfg=series_cfg, quad_cfg=quad_cfg)


def diff_relation_terms(params):
    """(c-1) F(a-1; c-1) - (c-1) F(a; c-1) + sum_j b_j x_j F(b_j + 1) = 0 as a Relation

    Raises:
        DomainError: Unless c > a > 1
    """
    _require(params.a > 1, 'Differential relation requires a > 1, got {0}', params.a)
    _require(params.c > params.a, 'Differential relation requires c > a, got a = {0}, c = {1}', params.a, params.c)
    c = params.c
    terms = [(c - 1, FDTerm(a_shift=-1, c_shift=-1)), (-(c - 1), FDTerm(c_shift=-1))]
    for j in range(params.N):
        shifts = tuple(1 if m == j else 0 for m in range(params.N))
        terms.append((params.b[j] * params.x[j], FDTerm(b_shifts=shifts)))
    return Relation(family=Family.DIFF, n=0, terms=tuple(terms), params=params)


def diff_relation(params, evaluator=Evaluator.SERIES, tol=DEFAULT_TOL, series_cfg=None, quad_cfg=None):
    """Residual of the differential relation, see diff_relation_terms"""
    return residual(diff_relation_terms(params), evaluator=evaluator, tol=tol, series_cfg=series_cfg,
                    quad_cfg=quad_cfg)


def build_relation(family, n, params, p=None, i=None, allow_nonnegative=False):
    """Dispatch to relation_A .. relation_D

    Raises:
        ParameterError: If a required p or i is missing
    """
    if family == Family.A:
        return relation_A(n, params)
    if family == Family.B:
        if p is None:
            raise ParameterError('Family B needs p')
        return relation_B(n, p, params, allow_nonnegative=allow_nonnegative)
    if family == Family.C:
        return relation_C(n, params)
    if family == Family.D:
        if i is None:
            raise ParameterError('Family D needs an index i')
        return relation_D(n, i, params)
    raise ParameterError('No relation generator for family {0}'.format(family))
