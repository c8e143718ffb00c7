"""Modular arithmetic, digit sets and progressions inside them."""

import logging
from functools import lru_cache
from math import gcd

from ..exceptions import InvalidDigitSetError
from ..models.digits import DigitSet, Progression

logger = logging.getLogger(__name__)


@lru_cache(maxsize=1024)
def least_prime_factor(m: int) -> int:
    """Smallest prime dividing m (P^-(m)).

    Args:
        m: Modulus, at least 2

    Returns:
        The least prime factor of m
    """
    if m < 2:
        raise InvalidDigitSetError(f"Modulus must be at least 2, got {m}")
    if m % 2 == 0:
        return 2
    f = 3
    while f * f <= m:
        if m % f == 0:
            return f
        f += 2
    return m


def is_prime(m: int) -> bool:
    return m >= 2 and least_prime_factor(m) == m


def units(m: int) -> list[int]:
    """Residues a with gcd(a, m) = 1."""
    return [a for a in range(1, m) if gcd(a, m) == 1]


def enumerate_progressions(digit_set: DigitSet, k: int) -> list[Progression]:
    """All non-trivial k-term progressions with every term in the digit set.

    Ordered lexicographically by (start, diff); this is the canonical column
    order of the constraint matrix. For k > m no vector progression in Z_m^n
    has k distinct terms (every difference has order dividing m), so the list
    is empty and every digit set is admissible.

    Args:
        digit_set: Digit set D modulo m
        k: Progression length, at least 3

    Returns:
        Possibly empty list of progressions
    """
    if k < 3:
        raise InvalidDigitSetError(f"Progression length must be at least 3, got {k}")

    m = digit_set.m
    if k > m:
        return []
    members = digit_set.members
    progressions: list[Progression] = []
    for start in digit_set.digits:
        for diff in range(1, m):
            terms = tuple((start + i * diff) % m for i in range(k))
            if all(t in members for t in terms):
                progressions.append(
                    Progression.model_construct(
                        m=m, k=k, start=start, diff=diff, terms=terms
                    )
                )
    return progressions


def affine_image(digit_set: DigitSet, a: int, b: int) -> DigitSet:
    """The set a·D + b; a must be a unit modulo m."""
    m = digit_set.m
    if gcd(a, m) != 1:
        raise InvalidDigitSetError(f"{a} is not invertible modulo {m}")
    return DigitSet.of(m, ((a * d + b) % m for d in digit_set.digits))


def is_affine_image(first: DigitSet, second: DigitSet) -> tuple[int, int] | None:
    """Find (a, b) with gcd(a, m) = 1 and second = a·first + b.

    Returns:
        The smallest such pair in (a, b) order, or None
    """
    if first.m != second.m or first.size != second.size:
        return None
    m = first.m
    target = second.members
    anchor = first.digits[0]
    for a in units(m):
        # b is pinned once the image of the first digit is chosen
        for image in second.digits:
            b = (image - a * anchor) % m
            if all((a * d + b) % m in target for d in first.digits):
                return a, b
    return None


def canonical_affine_form(digit_set: DigitSet) -> DigitSet:
    """Lexicographically smallest digit tuple in the affine orbit of D."""
    m = digit_set.m
    best: tuple[int, ...] | None = None
    for a in units(m):
        scaled = [(a * d) % m for d in digit_set.digits]
        for anchor in scaled:
            # translate so that some element lands on 0; the minimum always contains 0
            image = tuple(sorted((x - anchor) % m for x in scaled))
            if best is None or image < best:
                best = image
    assert best is not None
    return DigitSet(m=m, digits=best)


def affine_orbit(digit_set: DigitSet) -> set[tuple[int, ...]]:
    """All distinct digit tuples a·D + b."""
    m = digit_set.m
    orbit: set[tuple[int, ...]] = set()
    for a in units(m):
        for b in range(m):
            orbit.add(tuple(sorted((a * d + b) % m for d in digit_set.digits)))
    return orbit
