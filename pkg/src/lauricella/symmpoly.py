"""Elementary symmetric polynomials with the boundary conventions

    sigma_0(y_1..y_k) = 1 for every k >= 0 (including the empty argument list),
    sigma_l(y_1..y_k) = 0 for l < 0 or l > k.

Works over any scalar type closed under + and * (exact rationals or floats).
"""
import itertools
import logging
import math

logger = logging.getLogger(__name__)


def elem_sym_all(ys):
    """All elementary symmetric polynomials sigma_0 .. sigma_k of ys.

    Built one variable at a time with sigma_l(y, Y) = y * sigma_(l-1)(Y) + sigma_l(Y), O(k^2).

    Args:
        ys (Sequence): Arguments y_1..y_k, possibly empty
    Returns:
        list: [sigma_0, ..., sigma_k]
    """
    sigmas = [1]
    for y in ys:
        sigmas = [sigmas[0]] + [sigmas[l] + y * sigmas[l - 1] for l in range(1, len(sigmas))] + [y * sigmas[-1]]
    return sigmas


def elem_sym(l, ys):
    """sigma_l(ys), zero outside 0 <= l <= len(ys)"""
    ys = list(ys)
    if l < 0 or l > len(ys):
        return 0
    return elem_sym_all(ys)[l]


def elem_sym_enumerated(l, ys):
    """sigma_l(ys) by summing over all l-subsets. Exponential; kept as an independent check of elem_sym."""
    ys = list(ys)
    if l < 0 or l > len(ys):
        return 0
    if l == 0:
        return 1
    return sum(math.prod(subset) for subset in itertools.combinations(ys, l))
