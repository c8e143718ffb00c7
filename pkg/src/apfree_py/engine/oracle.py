"""Brute-force referees for tiny instances."""

import logging
from collections.abc import Iterator

from ..exceptions import InvalidDigitSetError, OracleCapExceededError, PreconditionError
from ..models.digits import DigitSet
from .bounds import exact_size
from .constraints import ConstraintSystem

logger = logging.getLogger(__name__)

DEFAULT_CAP = 10_000_000


def _check_cap(digit_set: DigitSet, n: int, cap: int) -> int:
    if n % digit_set.size:
        raise InvalidDigitSetError(
            f"|D| = {digit_set.size} does not divide n = {n}", digit_set.digits
        )
    count = exact_size(digit_set, n)
    if count > cap:
        raise OracleCapExceededError(count, cap)
    return count


def materialize_s(
    digit_set: DigitSet, n: int, cap: int = DEFAULT_CAP
) -> Iterator[tuple[int, ...]]:
    """Stream S(D, n) in lexicographic order.

    Raises:
        OracleCapExceededError: If |S(D, n)| exceeds the cap
    """
    _check_cap(digit_set, n, cap)
    share = n // digit_set.size
    remaining = dict.fromkeys(digit_set.digits, share)
    prefix: list[int] = []

    def walk() -> Iterator[tuple[int, ...]]:
        if len(prefix) == n:
            yield tuple(prefix)
            return
        for d in digit_set.digits:
            if remaining[d]:
                remaining[d] -= 1
                prefix.append(d)
                yield from walk()
                prefix.pop()
                remaining[d] += 1

    return walk()


def find_ap_direct(
    digit_set: DigitSet, k: int, n: int, cap: int = DEFAULT_CAP
) -> list[tuple[int, ...]] | None:
    """First k-term progression with non-zero difference wholly inside S(D, n).

    Differences are scanned only up to negation, since every progression
    reversed is a progression with the negated difference. No progression
    exists when k exceeds m, matching the empty constraint system.
    """
    m = digit_set.m
    if k > m:
        return None
    points = list(materialize_s(digit_set, n, cap))
    members = set(points)
    for first in points:
        for second in points:
            if second == first:
                continue
            diff = tuple((b - a) % m for a, b in zip(first, second, strict=True))
            if diff > tuple((-c) % m for c in diff):
                continue
            terms = [first, second]
            for _ in range(k - 2):
                nxt = tuple((x + c) % m for x, c in zip(terms[-1], diff, strict=True))
                if nxt not in members:
                    break
                terms.append(nxt)
            else:
                logger.debug(f"[Oracle] AP in S({digit_set}, {n}) from {first}")
                return terms
    return None


def project_ap(system: ConstraintSystem, vectors: list[tuple[int, ...]]) -> list[int]:
    """Count the progressions read down the coordinates of a vector AP.

    Constant coordinates are dropped; the result is a kernel-cone vector.
    """
    m = system.digit_set.m
    index = {(p.start, p.diff): i for i, p in enumerate(system.progressions)}
    counts = [0] * system.num_columns
    for coordinate in range(len(vectors[0])):
        column = [vector[coordinate] for vector in vectors]
        diff = (column[1] - column[0]) % m
        column_index = index.get((column[0], diff))
        if diff == 0 or column_index is None:
            continue
        counts[column_index] += 1
    return counts


def bounded_integer_kernel(
    system: ConstraintSystem, weight_cap: int
) -> tuple[int, ...] | None:
    """Minimum-weight nonzero x >= 0 with Ax = 0 and sum(x) <= weight_cap.

    Layered search over residuals A·x: layer w holds the residuals first
    reached with w columns. A column moves each pair block by at most 2 in
    L1 norm, which bounds the residuals that can still return to zero.
    """
    if weight_cap < 1:
        raise PreconditionError("weight_cap >= 1", f"weight cap {weight_cap} is below 1")
    cols = system.num_columns
    if cols == 0:
        return None

    block = system.digit_set.size
    blocks = len(system.pair_scheme)
    columns = [tuple(int(x) for x in system.matrix.column(j)) for j in range(cols)]
    zero = (0,) * system.matrix.rows

    def reachable(residual: tuple[int, ...], left: int) -> bool:
        return all(
            sum(abs(x) for x in residual[b * block : (b + 1) * block]) <= 2 * left
            for b in range(blocks)
        )

    layers: list[dict[tuple[int, ...], tuple[tuple[int, ...], int]]] = [{zero: (zero, -1)}]
    seen = {zero}
    for weight in range(1, weight_cap + 1):
        layer: dict[tuple[int, ...], tuple[tuple[int, ...], int]] = {}
        for residual in layers[-1]:
            for j, column in enumerate(columns):
                nxt = tuple(a + b for a, b in zip(residual, column, strict=True))
                if nxt == zero:
                    counts = [0] * cols
                    counts[j] += 1
                    state = residual
                    for depth in range(weight - 1, 0, -1):
                        state, used = layers[depth][state]
                        counts[used] += 1
                    return tuple(counts)
                if nxt in seen or not reachable(nxt, weight_cap - weight):
                    continue
                seen.add(nxt)
                layer[nxt] = (residual, j)
        if not layer:
            return None
        layers.append(layer)
    return None
