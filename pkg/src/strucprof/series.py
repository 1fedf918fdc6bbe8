"""Exact integer sequences and rational generating series.

Covers the generalised Fibonacci sequences ``w_h`` (``w_h(n) = w_h(n-1) +
w_h(n-h)``, all ones below ``h``), their generating function
``1/(1 - X - X^h)`` and growth constant, the published generating series of
the ten-graph profiles, and Higman's subword ordering.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Hashable, Iterable, Sequence

from .errors import NonUnitConstantTerm, RangeError, UnknownLetter


def polymul(*polys: Sequence[int]) -> tuple[int, ...]:
    out = [1]
    for p in polys:
        res = [0] * (len(out) + len(p) - 1)
        for i, a in enumerate(out):
            if a:
                for j, b in enumerate(p):
                    res[i + j] += a * b
        out = res
    return tuple(out)


def _trim(p: Sequence[int]) -> tuple[int, ...]:
    p = list(p)
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return tuple(p)


@dataclass(frozen=True)
class RationalSeries:
    numerator: tuple[int, ...]
    denominator: tuple[int, ...]

    def __post_init__(self):
        num = _trim(self.numerator) or (0,)
        den = _trim(self.denominator)
        if not den or den[0] not in (1, -1):
            raise NonUnitConstantTerm(f"denominator constant term must be +-1, got {den[:1]}")
        if den[0] == -1:
            num = tuple(-a for a in num)
            den = tuple(-a for a in den)
        object.__setattr__(self, "numerator", num)
        object.__setattr__(self, "denominator", den)

    def coefficients(self, n_max: int) -> list[int]:
        return series_expand(self, n_max)


def series_expand(S: RationalSeries, n_max: int) -> list[int]:
    """Power-series coefficients of ``S`` for degrees ``0..n_max`` in exact integers."""
    if n_max < 0:
        raise RangeError("n_max must be non-negative")
    num, den = S.numerator, S.denominator
    c: list[int] = []
    for n in range(n_max + 1):
        acc = num[n] if n < len(num) else 0
        for i in range(1, min(n, len(den) - 1) + 1):
            acc -= den[i] * c[n - i]
        c.append(acc)  # den[0] == 1 after normalisation
    return c


def w_sequence(h: int, n_max: int) -> list[int]:
    """``w_h(0..n_max)``."""
    if h < 1:
        raise RangeError("h must be at least 1")
    if n_max < 0:
        raise RangeError("n_max must be non-negative")
    w: list[int] = []
    for n in range(n_max + 1):
        w.append(1 if n < h else w[n - 1] + w[n - h])
    return w


def w_series(h: int) -> RationalSeries:
    den = [0] * (h + 1)
    den[0] = 1
    den[1] -= 1
    den[h] -= 1
    return RationalSeries((1,), tuple(den))


def growth_root(h: int, tol: float = 1e-12) -> float:
    """Largest positive root of ``X^h - X^(h-1) - 1``, bracketed in (1, 2] by bisection."""
    if h < 2:
        raise RangeError("h must be at least 2")
    if tol <= 0:
        raise RangeError("tol must be positive")

    def p(x: float) -> float:
        return x ** h - x ** (h - 1) - 1

    lo, hi = 1.0, 2.0
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if p(mid) > 0:
            hi = mid
        else:
            lo = mid
    return (lo + hi) / 2


# Generating series of the ten-graph profiles as printed.  G5 is printed under
# the label F_{G_3}; the printed fraction reduces to 1 + x.
TEN_GRAPH_SERIES: dict[int, RationalSeries] = {
    1: RationalSeries((1,), polymul((1, -1), (1, 0, -1))),
    2: RationalSeries((1, -1, -2, 1), polymul((1, -2), (1, 0, -2))),
    3: RationalSeries((1, 0, -1, 1, 2, -2, -1, 1), polymul((1, -1), (1, 0, -1), (1, 0, -1))),
    4: RationalSeries((1, -1, 0, 2, 0, -1), polymul((1, -1), (1, -1), (1, -1), (1, 1))),
    5: RationalSeries((1, -1, -2), (1, -2)),
}

# 1 + sum_{n>=1} 2^(n-1) x^n
G5_SERIES_CORRECTED = RationalSeries((1, -1), (1, -2))


def higman_leq(
    v: Sequence[Hashable],
    w: Sequence[Hashable],
    leq: Callable[[Hashable, Hashable], bool] | None = None,
    alphabet: Iterable[Hashable] | None = None,
) -> bool:
    """Higman ordering: an increasing injection ``h`` with ``v[i] <= w[h(i)]`` exists.

    ``leq`` defaults to equality.  Greedy leftmost matching is exact for any
    quasi-order on letters.
    """
    if alphabet is not None:
        letters = set(alphabet)
        for a in list(v) + list(w):
            if a not in letters:
                raise UnknownLetter(f"letter {a!r} not in alphabet")
    if leq is None:
        leq = lambda a, b: a == b  # noqa: E731
    j = 0
    for a in v:
        while j < len(w) and not leq(a, w[j]):
            j += 1
        if j == len(w):
            return False
        j += 1
    return True
