"""Admissible digit strings and the LS radical inverse.

Digit strings are little-endian tuples: ``digits[k]`` is the coefficient of
``base**k``.  A string is admissible when no digit ``a_k >= L`` is followed
(in position ``k + 1``) by a nonzero digit.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Literal, Sequence

import mpmath

from .qgamma import LSParams, QGammaElement

__all__ = [
    "DomainError",
    "ForbiddenSet",
    "CountVector",
    "AdmissibleCounter",
    "to_digits",
    "from_digits",
    "is_admissible",
    "next_admissible",
    "admissible_integers",
    "counts",
    "counts_closed_form",
    "psi",
    "compose_psi",
    "radical_inverse",
    "radical_inverse_float",
    "generate_points",
    "iter_points",
    "digit_string",
]


class DomainError(ValueError):
    """A psi branch was applied outside its domain (forbidden composition)."""


class ForbiddenSet:
    """The digit pairs ``{L..L+S-1} x {1..L+S-1}``; membership is computed."""

    def __init__(self, params: LSParams) -> None:
        self.params = params

    def __contains__(self, pair: tuple[int, int]) -> bool:
        i, j = pair
        L, b = self.params.L, self.params.base
        return L <= i <= b - 1 and 1 <= j <= b - 1

    def __iter__(self) -> Iterator[tuple[int, int]]:
        L, b = self.params.L, self.params.base
        for i in range(L, b):
            for j in range(1, b):
                yield (i, j)

    def __len__(self) -> int:
        return self.params.S * (self.params.base - 1)


def to_digits(n: int, base: int) -> tuple[int, ...]:
    """Little-endian base-``base`` digits of ``n``; ``0 -> (0,)``."""
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    if base < 2:
        raise ValueError(f"base must be >= 2, got {base}")
    if n == 0:
        return (0,)
    out = []
    while n:
        n, r = divmod(n, base)
        out.append(r)
    return tuple(out)


def from_digits(digits: Sequence[int], base: int) -> int:
    n = 0
    for d in reversed(digits):
        n = n * base + d
    return n


def is_admissible(digits: Sequence[int], params: LSParams) -> bool:
    L, b = params.L, params.base
    for k, d in enumerate(digits):
        if not 0 <= d < b:
            raise ValueError(f"digit {d} out of range for base {b}")
        if d >= L and k + 1 < len(digits) and digits[k + 1] != 0:
            return False
    return True


class AdmissibleCounter:
    """Walks ``{0} U N_{L,S}`` in increasing order by digit succession.

    Each step adds one at the lowest digit, then, if the carry left a short
    digit below a nonzero one, rounds up to the next multiple of the power of
    the base just above the offending pair.  Only the pair at the carry's stop
    position can become forbidden, so the work per step is amortized O(1).
    """

    def __init__(self, params: LSParams) -> None:
        self.params = params
        self.digits: list[int] = [0]
        self.value = 0
        self.top_changed = 0
        self._started = False
        self._pow = [1]

    def _power(self, k: int) -> int:
        while len(self._pow) <= k:
            self._pow.append(self._pow[-1] * self.params.base)
        return self._pow[k]

    def _increment_at(self, pos: int) -> int:
        """Zero digits below ``pos`` and add one at ``pos``; returns stop index."""
        b = self.params.base
        d = self.digits
        for k in range(pos):
            d[k] = 0
        k = pos
        while True:
            if k == len(d):
                d.append(1)
                break
            if d[k] + 1 < b:
                d[k] += 1
                break
            d[k] = 0
            k += 1
        step = self._power(pos)
        self.value = (self.value // step + 1) * step
        return k

    def __iter__(self) -> AdmissibleCounter:
        return self

    def __next__(self) -> int:
        if not self._started:
            self._started = True
            return self.value
        L = self.params.L
        d = self.digits
        k = self._increment_at(0)
        while k + 1 < len(d) and d[k] >= L and d[k + 1] != 0:
            k = self._increment_at(k + 1)
        # digits above k are untouched by this step
        self.top_changed = k
        return self.value


def next_admissible(counter: AdmissibleCounter) -> int:
    return next(counter)


def admissible_integers(count: int, params: LSParams) -> list[int]:
    counter = AdmissibleCounter(params)
    return [next(counter) for _ in range(count)]


@dataclass(frozen=True)
class CountVector:
    n: int
    t: int
    l: int  # noqa: E741
    s: int
    d: int


def counts(n: int, params: LSParams) -> CountVector:
    """Interval counts of the depth-n partition; ``d`` counts forbidden strings."""
    if n < 0:
        raise ValueError(f"depth must be >= 0, got {n}")
    L, S = params.L, params.S
    l, s = 1, 0  # noqa: E741
    for _ in range(n):
        l, s = L * l + s, S * l  # noqa: E741
    t = l + s
    return CountVector(n=n, t=t, l=l, s=s, d=params.base**n - t)


def counts_closed_form(n: int, params: LSParams) -> float:
    """t_n from the explicit solution of t_n = L t_{n-1} + S t_{n-2}.

    Evaluated at 50 significant digits and rounded to a double; only meant as
    a cross-check of :func:`counts`.  With S = 0 it reduces to L**n.
    """
    if n < 0:
        raise ValueError(f"depth must be >= 0, got {n}")
    L, S = params.L, params.S
    with mpmath.workdps(50):
        g = 2 / (L + mpmath.sqrt(L * L + 4 * S))
        den = 1 + S * g * g
        t = (1 + S * g) / den * (1 / g) ** n - (S * g - S * g * g) / den * (-S * g) ** n
        return float(t)


def _digit_weight(a: int, params: LSParams) -> QGammaElement:
    """The adjusted digit: ``a`` for long digits, ``L + (a - L)*gamma`` for short."""
    if a < params.L:
        return params.element(a)
    return params.element(params.L) + (a - params.L) * params.gamma


def psi(i: int, x: QGammaElement, params: LSParams) -> QGammaElement:
    """The contraction branch ``psi_i``.

    Long branches (i < L) send [0, 1) onto [i*gamma, (i+1)*gamma); short
    branches send [0, gamma) onto [L*gamma + (i-L)*gamma**2, ...).
    """
    L, b = params.L, params.base
    if not 0 <= i < b:
        raise ValueError(f"branch index {i} out of range for base {b}")
    upper = params.one if i < L else params.gamma
    if x < 0 or x >= upper:
        raise DomainError(f"psi_{i} is not defined at {x}")
    return params.gamma * (x + _digit_weight(i, params))


def compose_psi(indices: Sequence[int], params: LSParams) -> QGammaElement:
    """``psi_{i_1} o ... o psi_{i_n}(0)``, evaluated twice and cross-checked.

    The iterated evaluation applies the branches innermost first; the closed
    form sums ``b_k * gamma**k`` with ``b_k`` the adjusted digit of ``i_k``.
    """
    forbidden = ForbiddenSet(params)
    for h in range(len(indices) - 1):
        if (indices[h], indices[h + 1]) in forbidden:
            raise DomainError(
                f"forbidden composition at position {h}: "
                f"({indices[h]}, {indices[h + 1]})"
            )
    x = params.zero
    for i in reversed(indices):
        x = psi(i, x, params)

    closed = params.zero
    g_k = params.one
    for i in indices:
        g_k = g_k * params.gamma
        if i:
            closed = closed + _digit_weight(i, params) * g_k
    if closed != x:
        raise ArithmeticError(f"closed form {closed} != iterated value {x}")
    return x


def radical_inverse(n: int, params: LSParams) -> QGammaElement:
    """The LS radical inverse ``sum_k adj(a_k) * gamma**(k+1)`` of ``n``."""
    digits = to_digits(n, params.base)
    if not is_admissible(digits, params):
        raise ValueError(f"{n} is not admissible for {params}")
    x = params.zero
    # Horner: gamma*(adj(a_0) + gamma*(adj(a_1) + ...))
    for a in reversed(digits):
        x = (x + _digit_weight(a, params)) * params.gamma
    return x


def radical_inverse_float(digits: Sequence[int], params: LSParams) -> float:
    """Float version; sums the terms from the most significant digit down."""
    table = _FloatTable.get(params)
    total = 0.0
    for k in range(len(digits) - 1, -1, -1):
        a = digits[k]
        if a:
            total += table.term(k, a)
    return total


class _ExactTable:
    """Lazily grown table of ``adj(a) * gamma**(k+1)`` as exact elements."""

    def __init__(self, params: LSParams) -> None:
        self.params = params
        self.weights = [_digit_weight(a, params) for a in range(params.base)]
        self.powers = [params.gamma]
        self.rows: list[list[QGammaElement]] = []

    def term(self, k: int, a: int) -> QGammaElement:
        while len(self.rows) <= k:
            j = len(self.rows)
            while len(self.powers) <= j:
                self.powers.append(self.powers[-1] * self.params.gamma)
            g = self.powers[j]
            self.rows.append([w * g for w in self.weights])
        return self.rows[k][a]


class _FloatTable:
    _cache: dict[LSParams, "_FloatTable"] = {}

    def __init__(self, params: LSParams) -> None:
        self.exact = _ExactTable(params)
        self.rows: list[list[float]] = []

    @classmethod
    def get(cls, params: LSParams) -> "_FloatTable":
        table = cls._cache.get(params)
        if table is None:
            table = cls._cache[params] = cls(params)
        return table

    def term(self, k: int, a: int) -> float:
        while len(self.rows) <= k:
            j = len(self.rows)
            b = self.exact.params.base
            self.rows.append([float(self.exact.term(j, x)) for x in range(b)])
        return self.rows[k][a]


Mode = Literal["exact", "float"]


def iter_points(
    params: LSParams, mode: Mode = "exact"
) -> Iterator[tuple[int, tuple[int, ...], QGammaElement | float]]:
    """Yield ``(n, digits, point)`` for n running over ``{0} U N_{L,S}``.

    In exact mode the point is updated in place from the digits that changed
    since the previous integer, which keeps the work per point amortized O(1).
    Float mode re-sums every point from scratch so rounding does not drift.
    """
    if mode not in ("exact", "float"):
        raise ValueError(f"unknown mode {mode!r}")
    counter = AdmissibleCounter(params)
    if mode == "float":
        for n in counter:
            digits = tuple(counter.digits)
            yield n, digits, radical_inverse_float(digits, params)
        return

    table = _ExactTable(params)
    prev: list[int] = []
    x = params.zero
    for n in counter:
        cur = counter.digits
        for j in range(counter.top_changed + 1):
            old = prev[j] if j < len(prev) else 0
            new = cur[j]
            if old != new:
                if old:
                    x = x - table.term(j, old)
                if new:
                    x = x + table.term(j, new)
            if j < len(prev):
                prev[j] = new
            else:
                prev.append(new)
        yield n, tuple(cur), x


def generate_points(
    count: int, params: LSParams, mode: Mode = "exact"
) -> list[QGammaElement] | list[float]:
    """First ``count`` points of the LS-sequence."""
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    out = []
    for _, _, x in iter_points(params, mode):
        out.append(x)
        if len(out) == count:
            break
    return out


def digit_string(digits: Sequence[int]) -> str:
    """Big-endian rendering, e.g. (0, 1, 0, 1) -> '1010'; dots separate digits >= 10."""
    if all(d < 10 for d in digits):
        return "".join(str(d) for d in reversed(digits))
    return ".".join(str(d) for d in reversed(digits))
