"""Explicit constructions and numeric lower bounds for r_k(Z_m^n)."""

import logging
from fractions import Fraction
from math import factorial

from ..exceptions import InvalidDigitSetError, PreconditionError
from ..models.digits import DigitSet
from ..models.reports import BoundReport, TheoremBound
from .zmod import is_prime, least_prime_factor

logger = logging.getLogger(__name__)


def _size_of(digit_set: DigitSet | int) -> int:
    return digit_set if isinstance(digit_set, int) else digit_set.size


def exact_size(digit_set: DigitSet | int, n: int) -> int:
    """|S(D, n)|, the multinomial coefficient n! / ((n/|D|)!)^|D|.

    Args:
        digit_set: Digit set D or its size
        n: Dimension, divisible by |D|
    """
    size = _size_of(digit_set)
    if size < 1 or n < 0 or n % size:
        raise InvalidDigitSetError(f"|D| = {size} does not divide n = {n}")
    return factorial(n) // factorial(n // size) ** size


def construct_kodd(m: int, k: int) -> DigitSet:
    """{0, 1, ..., floor((k-1)m/(k+1))} for odd k >= 5 and P^-(m) >= (k+2)/2."""
    if k < 5 or k % 2 == 0:
        raise PreconditionError("k >= 5 odd", f"k = {k} is not an odd integer >= 5")
    if 2 * least_prime_factor(m) < k + 2:
        raise PreconditionError(
            "P^-(m) >= (k+2)/2",
            f"least prime factor {least_prime_factor(m)} of {m} is below {(k + 2) / 2}",
        )
    return DigitSet.from_interval(m, 0, (k - 1) * m // (k + 1))


def construct_keven(m: int, k: int) -> DigitSet:
    """{0, ..., floor((k-2)m/k)} plus ((k-1)m-1)/k, for even k >= 4 with m = -1 mod k."""
    if k < 4 or k % 2:
        raise PreconditionError("k >= 4 even", f"k = {k} is not an even integer >= 4")
    if m % k != k - 1:
        raise PreconditionError("m = -1 mod k", f"{m} is not -1 modulo {k}")
    if least_prime_factor(m) < k:
        raise PreconditionError(
            "P^-(m) >= k", f"least prime factor {least_prime_factor(m)} of {m} is below {k}"
        )
    top = (k - 2) * m // k
    extra = ((k - 1) * m - 1) // k
    return DigitSet.of(m, [*range(top + 1), extra])


def construct_conjecture(p: int) -> DigitSet:
    """{0, ..., (p-1)/2, (p+3)/2}, the candidate 4-progression-free set.

    Nothing here asserts admissibility; callers must run the checker.
    """
    if not is_prime(p) or p < 13 or p % 4 != 1:
        raise PreconditionError(
            "p prime, p >= 13, p = 1 mod 4", f"{p} does not satisfy the hypotheses"
        )
    return DigitSet.of(p, [*range((p - 1) // 2 + 1), (p + 3) // 2])


def construct_half_interval(m: int) -> DigitSet:
    """{0, ..., (m-1)/2} for odd m; the classical 3-progression construction."""
    if m % 2 == 0:
        raise PreconditionError("m odd", f"{m} is even")
    return DigitSet.from_interval(m, 0, (m - 1) // 2)


def _integer_root_floor(value: int, root: int) -> int:
    """floor(value ** (1/root)) by integer bisection."""
    if value < 2 or root == 1:
        return value
    lo, hi = 1, 1 << -(-value.bit_length() // root)
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if mid**root <= value:
            lo = mid
        else:
            hi = mid - 1
    return lo


def lin_wolf_bound(p: int, k: int, n: int) -> tuple[int, bool]:
    """floor((p^(2(k-1)) + p^(k-1) - 1)^(n/2k)).

    Returns:
        (value, exact) where exact is False when 2k does not divide n and the
        floor of the real power was taken
    """
    base = p ** (2 * (k - 1)) + p ** (k - 1) - 1
    if n % (2 * k) == 0:
        return base ** (n // (2 * k)), True
    # floor(base^(n/2k)) = floor((base^n)^(1/2k))
    return _integer_root_floor(base**n, 2 * k), False


def ep_r3_base(m: int) -> Fraction:
    """(m+1)/2 for odd m and (m+2)/2 for even m."""
    if m < 2:
        raise InvalidDigitSetError(f"Modulus must be at least 2, got {m}")
    return Fraction(m + 1, 2) if m % 2 else Fraction(m + 2, 2)


def theorem_bound(m: int, k: int) -> TheoremBound:
    """(base, polynomial-denominator exponent) of the exponential lower bound."""
    if k % 2:
        construct_kodd(m, k)
        top = (k - 1) * m // (k + 1)
        return TheoremBound(base=top + 1, denominator_exponent=Fraction(top, 2))
    construct_keven(m, k)
    top = (k - 2) * m // k
    return TheoremBound(base=top + 2, denominator_exponent=Fraction(top + 1, 2))


def min_dist_identity(m: int, k: int) -> bool:
    """For the extra digit h: |m - h| = |h - floor((k-2)m/k)| = (m+1)/k."""
    h = ((k - 1) * m - 1) // k
    top = (k - 2) * m // k
    return abs(m - h) == abs(h - top) == (m + 1) // k and (m + 1) % k == 0


def construction_for(m: int, k: int) -> tuple[DigitSet, str]:
    """The construction whose hypotheses hold at (m, k)."""
    if k == 3:
        return construct_half_interval(m), "half interval {0..(m-1)/2} (k = 3)"
    if k % 2:
        return construct_kodd(m, k), "odd-k interval construction"
    return construct_keven(m, k), "even-k interval plus extra digit"


def stirling_ratio(size: int, n: int) -> Fraction:
    """|S(D, n)| / (|D|^n / n^((|D|-1)/2)), squared to stay rational."""
    return Fraction(exact_size(size, n) ** 2 * n ** (size - 1), size ** (2 * n))


def bound_report(m: int, k: int, n: int) -> BoundReport:
    """Construction, exact |S(D, n)| and comparison bounds at (m, k, n).

    When |D| does not divide n the set S(D, n - r) is embedded with r zero
    coordinates, so the size is taken at the largest multiple of |D| <= n.
    """
    construction, label = construction_for(m, k)
    notes = [label]
    size = construction.size
    effective = n - n % size
    if effective != n:
        notes.append(f"|D| = {size} does not divide n; embedded S(D, {effective})")

    lin_wolf: int | None = None
    if is_prime(m) and k <= m:
        lin_wolf, exact = lin_wolf_bound(m, k, n)
        if not exact:
            notes.append("2k does not divide n; Lin-Wolf value is the floor of a real power")
    else:
        notes.append("Lin-Wolf bound needs p prime and k <= p")

    theorem = None
    if k > 3:
        theorem = theorem_bound(m, k)

    report = BoundReport(
        m=m,
        k=k,
        n=n,
        construction=construction,
        exact_size=exact_size(size, effective),
        lin_wolf=lin_wolf,
        ep_r3=ep_r3_base(m) if k == 3 else None,
        theorem=theorem,
        notes=notes,
    )
    logger.debug(f"[Bounds] m={m}, k={k}, n={n}: |S| = {report.exact_size}")
    return report
