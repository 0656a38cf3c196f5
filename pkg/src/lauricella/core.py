import enum
import logging
import math
import numbers
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Optional, Tuple, Union

from lauricella.exceptions import ParameterError, RationalDivisionError

logger = logging.getLogger(__name__)

ExactRational = Fraction
Scalar = Union[Fraction, float]


def as_scalar(value):
    """Coerce a number into the scalar types used throughout the package.

    Integers (and bools) become exact rationals so that arithmetic on them stays exact, Fractions are kept,
    and everything else must be a finite real that is converted to float.

    Args:
        value (int|float|Fraction|numbers.Real): Value to coerce
    Returns:
        Fraction|float: Coerced scalar
    Raises:
        ParameterError: If the value is not a finite real number
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, numbers.Integral):
        return Fraction(int(value))
    if isinstance(value, numbers.Rational):
        return Fraction(value.numerator, value.denominator)
    if isinstance(value, numbers.Real):
        value = float(value)
        if not math.isfinite(value):
            raise ParameterError('Expected a finite real number, got {0}'.format(value))
        return value
    raise ParameterError('Expected a real number, got {0!r}'.format(value))


def to_exact(value):
    """Exact rational value of a number or of a decimal / ``p/q`` string.

    Floats are converted without rounding (a float is a dyadic rational).

    Raises:
        ParameterError: If the value cannot be read as a finite rational
    """
    if isinstance(value, str):
        return parse_scalar(value)
    value = as_scalar(value)
    return value if isinstance(value, Fraction) else Fraction(value)


def parse_scalar(text):
    """Parse ``0.25``, ``-3``, ``1e-3`` or ``2/7`` into an exact rational"""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError, AttributeError):
        raise ParameterError('Cannot read {0!r} as a rational number'.format(text))


def parse_vector(text):
    """Parse a comma separated list of scalars; the empty string is the empty vector"""
    if text is None or not text.strip():
        return ()
    return tuple(parse_scalar(item) for item in text.split(','))


def is_exact(value):
    return isinstance(value, (Fraction, numbers.Integral))


def is_nonpositive_integer(value):
    return value <= 0 and value == math.floor(value)


def rational_add(a, b):
    return to_exact(a) + to_exact(b)


def rational_sub(a, b):
    return to_exact(a) - to_exact(b)


def rational_mul(a, b):
    return to_exact(a) * to_exact(b)


def rational_neg(a):
    return -to_exact(a)


def rational_div(a, b):
    """Exact quotient a / b

    Raises:
        RationalDivisionError: If b is zero
    """
    b = to_exact(b)
    if b == 0:
        raise RationalDivisionError('Division of {0} by zero'.format(a))
    return to_exact(a) / b


def rational_compare(a, b):
    """Three-way comparison: -1, 0 or 1"""
    difference = to_exact(a) - to_exact(b)
    return (difference > 0) - (difference < 0)


def normalize(q):
    """Lowest terms with a positive denominator"""
    q = to_exact(q)
    return Fraction(q.numerator, q.denominator)


class Family(enum.Enum):
    """Relation and identity families"""
    A = 'A'
    B = 'B'
    C = 'C'
    D = 'D'
    PFAFF1 = 'PFAFF1'
    PFAFF2 = 'PFAFF2'
    CONTIG1 = 'CONTIG1'
    CONTIG2 = 'CONTIG2'
    CONTIG3 = 'CONTIG3'
    DIFF = 'DIFF'

    def __repr__(self):
        return '<Family name={0}>'.format(self.name)

    @staticmethod
    def from_string(value):
        for name, member in Family.__members__.items():
            if member.value == str(value).upper():
                return Family[name]

        return None


class Evaluator(enum.Enum):
    """Numerical method used to evaluate F_D"""
    SERIES = 'series'
    INTEGRAL = 'integral'

    @staticmethod
    def from_string(value):
        for name, member in Evaluator.__members__.items():
            if member.value == str(value).lower():
                return Evaluator[name]

        return None


@dataclass(frozen=True)
class FDParams:
    """Parameter block (a, b_1..b_N; c | x_1..x_N) of one F_D instance.

    Values are stored as exact rationals when given as integers or Fractions, otherwise as floats.
    The Euler integrand exponents beta1 = a - 1, beta2 = c - a - 1 and alpha_i = -b_i are derived views.
    """
    a: Scalar
    c: Scalar
    b: Tuple[Scalar, ...] = ()
    x: Tuple[Scalar, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, 'a', as_scalar(self.a))
        object.__setattr__(self, 'c', as_scalar(self.c))
        object.__setattr__(self, 'b', tuple(as_scalar(v) for v in self.b))
        object.__setattr__(self, 'x', tuple(as_scalar(v) for v in self.x))
        if len(self.b) != len(self.x):
            raise ParameterError('b has {0} entries but x has {1}'.format(len(self.b), len(self.x)))

    @property
    def N(self):
        return len(self.x)

    @property
    def beta1(self):
        return self.a - 1

    @property
    def beta2(self):
        return self.c - self.a - 1

    @property
    def alpha(self):
        return tuple(-v for v in self.b)

    @property
    def exact(self):
        return all(isinstance(v, Fraction) for v in (self.a, self.c) + self.b + self.x)

    def shifted(self, a_shift=0, c_shift=0, b_shifts=None):
        """Copy with integer shifts applied to a, c and (per index) to b"""
        b = self.b
        if b_shifts:
            if len(b_shifts) != self.N:
                raise ParameterError('Expected {0} b shifts, got {1}'.format(self.N, len(b_shifts)))
            b = tuple(v + s for v, s in zip(self.b, b_shifts))
        return replace(self, a=self.a + a_shift, c=self.c + c_shift, b=b)

    def with_extra(self, x_extra, b_extra):
        """Copy with one more variable appended"""
        return replace(self, b=self.b + (b_extra,), x=self.x + (x_extra,))

    def as_float(self):
        return replace(self, a=float(self.a), c=float(self.c), b=tuple(float(v) for v in self.b),
                       x=tuple(float(v) for v in self.x))

    def __repr__(self):
        return '<FDParams a={0} c={1} b={2} x={3}>'.format(self.a, self.c, list(self.b), list(self.x))


@dataclass(frozen=True)
class BetaPrefactor:
    """B(u, v) with u = a + u_shift and v = c - a + v_shift"""
    u_shift: int = 0
    v_shift: int = 0

    def arguments(self, params):
        return params.a + self.u_shift, params.c - params.a + self.v_shift


@dataclass(frozen=True)
class FDTerm:
    """One summand of a relation: a shifted F_D instance and its beta prefactor.

    Args:
        a_shift (int): Shift of a
        c_shift (int): Shift of c
        b_shifts (tuple[int]): Per-index shift of b, empty for no shift
        extra_arg (tuple|None): (p, b_extra) appending an (N+1)-th variable
        beta_prefactor (BetaPrefactor|None): None stands for the constant 1
    """
    a_shift: int = 0
    c_shift: int = 0
    b_shifts: Tuple[int, ...] = ()
    extra_arg: Optional[Tuple[Scalar, Scalar]] = None
    beta_prefactor: Optional[BetaPrefactor] = None

    def resolve(self, params):
        """Apply this term's shifts to a base point

        Returns:
            (FDParams, tuple|None): Parameters of the shifted F_D and the beta arguments (u, v), if any
        """
        shifted = params.shifted(self.a_shift, self.c_shift, self.b_shifts or None)
        if self.extra_arg is not None:
            shifted = shifted.with_extra(*self.extra_arg)
        beta = self.beta_prefactor.arguments(params) if self.beta_prefactor is not None else None
        return shifted, beta


@dataclass(frozen=True)
class Relation:
    """Linear relation sum_k coefficient_k * value(term_k) = 0.

    Args:
        family (Family): Identity family
        n (int): Shift parameter
        terms (tuple): (coefficient, FDTerm) pairs in order
        p (Scalar|None): Extra argument, for the u = 1 - pt families
        i (int|None): 1-based index for family D
        params (FDParams|None): Point the coefficients were computed at
        asserted (bool): False for relations exposed outside their established range; their residuals are
            reported but not asserted
    """
    family: Family
    n: int
    terms: Tuple[Tuple[Scalar, FDTerm], ...]
    p: Optional[Scalar] = None
    i: Optional[int] = None
    params: Optional[FDParams] = None
    asserted: bool = True

    def __post_init__(self):
        object.__setattr__(self, 'terms', tuple((as_scalar(coeff), term) for coeff, term in self.terms))

    @property
    def coefficients(self):
        return [coeff for coeff, _ in self.terms]

    def pruned(self):
        """Copy without zero-coefficient terms"""
        return replace(self, terms=tuple((coeff, term) for coeff, term in self.terms if coeff != 0))

    def perturbed(self, index, rel):
        """Copy with coefficient ``index`` scaled by (1 + rel)"""
        terms = list(self.terms)
        coeff, term = terms[index]
        terms[index] = (coeff * (1 + as_scalar(rel)), term)
        return replace(self, terms=tuple(terms))

    def __len__(self):
        return len(self.terms)


@dataclass(frozen=True)
class EvalResult:
    """A computed value with its error estimate.

    Args:
        value (float): Computed value
        abs_error_estimate (float): Estimated absolute error, >= 0
        method (str): 'series' or 'integral'
        effort (int): Series terms summed (degree layers) or quadrature nodes used
        converged (bool): False when the effort cap was hit before the tolerance
    """
    value: float
    abs_error_estimate: float
    method: str
    effort: int = 0
    converged: bool = True
    details: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if not self.abs_error_estimate >= 0:
            raise ParameterError('abs_error_estimate must be >= 0, got {0}'.format(self.abs_error_estimate))

    def to_dict(self):
        return {
            'value': self.value,
            'abs_error_estimate': self.abs_error_estimate,
            'method': self.method,
            'effort': self.effort,
            'converged': self.converged,
        }
