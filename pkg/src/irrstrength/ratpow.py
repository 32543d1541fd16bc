"""Exact integer ceilings/floors of expressions a + b * d**(p/r).

The construction's parameters and condition intervals are defined through
real powers of the degree (d**0.6, d**0.54, ...).  Evaluating those in
floating point and then taking a ceiling is exactly the kind of thing that
flips a threshold by one on an unlucky input, so whenever the exponent is a
ratio of small integers we decide every comparison in exact integer
arithmetic instead: K <= a + b*d**(p/r) is equivalent, for b > 0, to
((K-a)/b)**r <= d**p, which is a comparison between integers.

Exponents reach us as floats like 0.1 or 0.04; Fraction(str(x)) recovers the
decimal the caller wrote.  If an exponent's reduced denominator is larger
than EXACT_DENOMINATOR_LIMIT the integer powers would be astronomically
wide, so we fall back to floating evaluation with a snap-to-integer guard.
"""

from __future__ import annotations

import math
from fractions import Fraction

EXACT_DENOMINATOR_LIMIT = 64

_NEAR_INT = 1e-9


def as_fraction(x) -> Fraction:
    """Normalize int/str/Fraction/float to an exact Fraction.

    Floats go through str() so that 0.1 means one tenth, not the nearest
    binary double.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        if not math.isfinite(x):
            raise ValueError(f"non-finite parameter: {x!r}")
        return Fraction(str(x))
    return Fraction(x)


def cmp_frac_pow(q: Fraction, d: int, e: Fraction) -> int:
    """Sign of q - d**e for rational q, integer d >= 1, rational e.

    Exact whenever e.denominator <= EXACT_DENOMINATOR_LIMIT.
    """
    if d < 1:
        raise ValueError("base must be a positive integer")
    if q <= 0:
        return -1
    p, r = e.numerator, e.denominator
    if r > EXACT_DENOMINATOR_LIMIT:
        v = float(q) - float(d) ** float(e)
        return (v > 0) - (v < 0)
    lhs = q.numerator**r
    rhs = q.denominator**r
    if p >= 0:
        rhs *= d**p
    else:
        lhs *= d ** (-p)
    return (lhs > rhs) - (lhs < rhs)


def _float_seed(a: Fraction, b: Fraction, d: int, e: Fraction) -> float:
    return float(a) + float(b) * float(d) ** float(e)


def floor_offset_pow(a: Fraction, b: Fraction, d: int, e: Fraction) -> int:
    """Largest integer K with K <= a + b*d**e, for b > 0."""
    a, b, e = as_fraction(a), as_fraction(b), as_fraction(e)
    if b <= 0:
        raise ValueError("coefficient must be positive")
    if e.denominator > EXACT_DENOMINATOR_LIMIT:
        v = _float_seed(a, b, d, e)
        k = round(v)
        return k if abs(v - k) < _NEAR_INT else math.floor(v)
    k = math.floor(_float_seed(a, b, d, e))
    # exact fix-up around the float estimate
    while cmp_frac_pow((Fraction(k + 1) - a) / b, d, e) <= 0:
        k += 1
    while cmp_frac_pow((Fraction(k) - a) / b, d, e) > 0:
        k -= 1
    return k


def ceil_offset_pow(a: Fraction, b: Fraction, d: int, e: Fraction) -> int:
    """Smallest integer K with K >= a + b*d**e, for b > 0."""
    a, b, e = as_fraction(a), as_fraction(b), as_fraction(e)
    k = floor_offset_pow(a, b, d, e)
    if e.denominator > EXACT_DENOMINATOR_LIMIT:
        v = _float_seed(a, b, d, e)
        kr = round(v)
        return kr if abs(v - kr) < _NEAR_INT else math.ceil(v)
    if cmp_frac_pow((Fraction(k) - a) / b, d, e) == 0:
        return k
    return k + 1


def ceil_mul_pow(b, d: int, e) -> int:
    """ceil(b * d**e) for b > 0; exponent may be negative."""
    return ceil_offset_pow(Fraction(0), b, d, e)


def floor_mul_pow(b, d: int, e) -> int:
    """floor(b * d**e) for b > 0; exponent may be negative."""
    return floor_offset_pow(Fraction(0), b, d, e)


def pow_at_least(d: int, e, bound) -> bool:
    """Exact test d**e >= bound for rational e and bound."""
    bound = as_fraction(bound)
    e = as_fraction(e)
    # d**e >= bound  <=>  not (bound > d**e)
    return cmp_frac_pow(bound, d, e) <= 0
