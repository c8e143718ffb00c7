from collections.abc import Iterable, Sequence

from ..exceptions import InvalidDigitSetError


def parse_digit_spec(text: str) -> list[int]:
    """
    Разбирает запись набора цифр вида `0:5,8,10:12`.

    Элементы разделяются запятыми, `a:b` означает отрезок [a, b] включительно.

    Args:
        text: Строка с записью набора

    Returns:
        Список цифр в порядке появления (возможны повторы)
    """
    digits: list[int] = []
    for raw in text.replace(" ", "").split(","):
        if not raw:
            continue
        try:
            if ":" in raw:
                a_text, b_text = raw.split(":", 1)
                a, b = int(a_text), int(b_text)
                if a > b:
                    raise InvalidDigitSetError(f"Empty interval '{raw}'", text)
                digits.extend(range(a, b + 1))
            else:
                digits.append(int(raw))
        except ValueError as e:
            raise InvalidDigitSetError(f"Malformed digit list '{text}'", text) from e
    if not digits:
        raise InvalidDigitSetError("Digit list is empty", text)
    return digits


def _runs(digits: Sequence[int]) -> list[tuple[int, int]]:
    runs: list[tuple[int, int]] = []
    for d in digits:
        if runs and runs[-1][1] == d - 1:
            runs[-1] = (runs[-1][0], d)
        else:
            runs.append((d, d))
    return runs


def format_digits(digits: Iterable[int]) -> str:
    """
    Форматирует набор в запись интервалов, как в таблицах: `[0,6] ∪ {8}`.

    Отрезки длины не меньше трёх пишутся как [a,b], остальные цифры
    собираются в фигурные скобки.
    """
    parts: list[str] = []
    singles: list[int] = []
    for a, b in _runs(sorted(digits)):
        if b - a >= 2:
            if singles:
                parts.append("{" + ",".join(map(str, singles)) + "}")
                singles = []
            parts.append(f"[{a},{b}]")
        else:
            singles.extend(range(a, b + 1))
    if singles:
        parts.append("{" + ",".join(map(str, singles)) + "}")
    return " ∪ ".join(parts)


def format_spec(digits: Iterable[int]) -> str:
    """Обратная к parse_digit_spec запись: `0:6,8`."""
    items = []
    for a, b in _runs(sorted(digits)):
        items.append(str(a) if a == b else f"{a}:{b}")
    return ",".join(items)
