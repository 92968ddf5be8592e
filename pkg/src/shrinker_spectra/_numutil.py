"""Small numeric helpers."""

from decimal import ROUND_HALF_UP, Decimal
from typing import Iterable


def kahan_sum(values: Iterable[float]) -> float:
    """Compensated summation.

    Long eigenvalue sums (k up to 1e4) lose a few digits under naive
    accumulation; Kahan's correction keeps the error at one rounding.
    """
    total = 0.0
    c = 0.0
    for v in values:
        y = v - c
        t = total + y
        c = (t - total) - y
        total = t
    return total


def round_half_up(x: float, ndigits: int = 2) -> float:
    """Round to `ndigits` decimals with ties going away from zero.

    Matches the convention of printed numeric tables; Python's built-in
    round() uses banker's rounding, which differs on ties.
    """
    q = Decimal(1).scaleb(-ndigits)
    return float(Decimal(x).quantize(q, rounding=ROUND_HALF_UP))
