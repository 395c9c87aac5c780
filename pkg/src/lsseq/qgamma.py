"""Exact arithmetic in Q(gamma), gamma the positive root of L*x + S*x**2 = 1.

Every point of an LS-sequence is a finite polynomial in gamma, so it can be
stored as ``p + q*gamma`` with rational ``p`` and ``q`` after reducing with
``gamma**2 = (1 - L*gamma) / S``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Union

__all__ = [
    "ParameterError",
    "LSParams",
    "QGammaElement",
    "solve_gamma",
    "qg_add",
    "qg_mul_gamma",
    "qg_power_gamma",
    "qg_to_float",
    "qg_compare",
    "parse_element",
]

Number = Union[int, Fraction]

# bits of gamma kept for float conversion; plenty for the coefficient sizes seen here
_HP_BITS = 192


class ParameterError(ValueError):
    """Raised for (L, S) outside L >= 1, S >= 0, L + S >= 2."""


@dataclass(frozen=True)
class LSParams:
    """The pair (L, S) and the derived constant gamma."""

    L: int
    S: int

    def __post_init__(self) -> None:
        for name in ("L", "S"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, int):
                raise ParameterError(f"{name} must be an integer, got {value!r}")
        if self.L < 1:
            raise ParameterError(f"L must be >= 1, got {self.L}")
        if self.S < 0:
            raise ParameterError(f"S must be >= 0, got {self.S}")
        if self.L + self.S < 2:
            raise ParameterError(f"L + S must be >= 2, got {self.L + self.S}")

    @property
    def base(self) -> int:
        return self.L + self.S

    @cached_property
    def discriminant(self) -> int:
        return self.L * self.L + 4 * self.S

    @cached_property
    def gamma_rational(self) -> Fraction | None:
        """gamma as a Fraction when it is rational, else None.

        gamma is rational for S = 0 and also whenever L**2 + 4*S is a perfect
        square, e.g. (1, 2) -> 1/2 or (2, 3) -> 1/3.
        """
        if self.S == 0:
            return Fraction(1, self.L)
        root = math.isqrt(self.discriminant)
        if root * root == self.discriminant:
            return Fraction(root - self.L, 2 * self.S)
        return None

    @property
    def is_irrational(self) -> bool:
        return self.gamma_rational is None

    @cached_property
    def gamma_float(self) -> float:
        if self.S == 0:
            return 1.0 / self.L
        # 2 / (L + sqrt(D)) avoids cancellation in (-L + sqrt(D)) / (2S)
        return 2.0 / (self.L + math.sqrt(self.discriminant))

    @cached_property
    def gamma_hp(self) -> Fraction:
        """gamma to about ``_HP_BITS`` bits (exact when rational)."""
        if self.gamma_rational is not None:
            return self.gamma_rational
        scale = 1 << _HP_BITS
        root = math.isqrt(self.discriminant * scale * scale)
        return Fraction(2 * scale, self.L * scale + root)

    @cached_property
    def gamma(self) -> "QGammaElement":
        return solve_gamma(self)[0]

    def element(self, p: Number = 0, q: Number = 0) -> "QGammaElement":
        return QGammaElement(Fraction(p), Fraction(q), self)

    @property
    def zero(self) -> "QGammaElement":
        return self.element(0, 0)

    @property
    def one(self) -> "QGammaElement":
        return self.element(1, 0)


def _coerce(value: object) -> Fraction | None:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int) and not isinstance(value, bool):
        return Fraction(value)
    return None


@dataclass(frozen=True, eq=False)
class QGammaElement:
    """The exact real number ``p + q*gamma``.

    When gamma is rational the ``q`` part is folded into ``p``, so two elements
    over the same parameters are equal exactly when their ``(p, q)`` agree.
    """

    p: Fraction
    q: Fraction
    params: LSParams = field(repr=False)

    def __post_init__(self) -> None:
        g = self.params.gamma_rational
        if g is not None and self.q:
            object.__setattr__(self, "p", self.p + self.q * g)
            object.__setattr__(self, "q", Fraction(0))

    # -- arithmetic ---------------------------------------------------------

    def _other(self, other: object) -> QGammaElement | None:
        if isinstance(other, QGammaElement):
            if other.params != self.params:
                raise ValueError(
                    f"mismatched parameters: {self.params} vs {other.params}"
                )
            return other
        r = _coerce(other)
        if r is None:
            return None
        return QGammaElement(r, Fraction(0), self.params)

    def __add__(self, other: object) -> QGammaElement:
        o = self._other(other)
        if o is None:
            return NotImplemented
        return QGammaElement(self.p + o.p, self.q + o.q, self.params)

    __radd__ = __add__

    def __neg__(self) -> QGammaElement:
        return QGammaElement(-self.p, -self.q, self.params)

    def __sub__(self, other: object) -> QGammaElement:
        o = self._other(other)
        if o is None:
            return NotImplemented
        return QGammaElement(self.p - o.p, self.q - o.q, self.params)

    def __rsub__(self, other: object) -> QGammaElement:
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other: object) -> QGammaElement:
        o = self._other(other)
        if o is None:
            return NotImplemented
        if not self.q or not o.q:
            return QGammaElement(
                self.p * o.p, self.p * o.q + self.q * o.p, self.params
            )
        # q1*q2*gamma**2 = q1*q2*(1 - L*gamma)/S
        L, S = self.params.L, self.params.S
        qq = self.q * o.q / S
        return QGammaElement(
            self.p * o.p + qq,
            self.p * o.q + self.q * o.p - L * qq,
            self.params,
        )

    __rmul__ = __mul__

    def mul_gamma(self) -> QGammaElement:
        return qg_mul_gamma(self)

    # -- comparison ---------------------------------------------------------

    def sign(self) -> int:
        """Exact sign of ``p + q*gamma``."""
        p, q = self.p, self.q
        if not q:
            return (p > 0) - (p < 0)
        # gamma is irrational here; compare it with r = -p/q through the
        # minimal polynomial f(x) = S x^2 + L x - 1, increasing on x > 0.
        r = -p / q
        L, S = self.params.L, self.params.S
        gamma_above_r = r < 0 or S * r * r + L * r - 1 < 0
        s = 1 if gamma_above_r else -1
        return s if q > 0 else -s

    def __eq__(self, other: object) -> bool:
        if isinstance(other, QGammaElement):
            return (
                self.params == other.params
                and self.p == other.p
                and self.q == other.q
            )
        r = _coerce(other)
        if r is None:
            return NotImplemented
        return not self.q and self.p == r

    def __hash__(self) -> int:
        return hash((self.p, self.q, self.params))

    def _cmp(self, other: object) -> int | None:
        o = self._other(other)
        if o is None:
            return None
        return (self - o).sign()

    def __lt__(self, other: object) -> bool:
        c = self._cmp(other)
        return NotImplemented if c is None else c < 0

    def __le__(self, other: object) -> bool:
        c = self._cmp(other)
        return NotImplemented if c is None else c <= 0

    def __gt__(self, other: object) -> bool:
        c = self._cmp(other)
        return NotImplemented if c is None else c > 0

    def __ge__(self, other: object) -> bool:
        c = self._cmp(other)
        return NotImplemented if c is None else c >= 0

    # -- conversion ---------------------------------------------------------

    def __float__(self) -> float:
        return qg_to_float(self)

    def __str__(self) -> str:
        return (
            f"{self.p.numerator}/{self.p.denominator} + "
            f"{self.q.numerator}/{self.q.denominator}*g"
        )

    def compact(self) -> str:
        return str(self).replace(" ", "")


def solve_gamma(params: LSParams) -> tuple[QGammaElement, float]:
    """Return gamma both exactly and as a double."""
    g = params.gamma_rational
    if g is not None:
        exact = QGammaElement(g, Fraction(0), params)
    else:
        exact = QGammaElement(Fraction(0), Fraction(1), params)
    return exact, params.gamma_float


def qg_add(a: QGammaElement, b: QGammaElement) -> QGammaElement:
    return a + b


def qg_mul_gamma(a: QGammaElement) -> QGammaElement:
    """Multiply by gamma using gamma**2 = (1 - L*gamma)/S."""
    params = a.params
    if params.gamma_rational is not None:
        return QGammaElement(a.p * params.gamma_rational, Fraction(0), params)
    L, S = params.L, params.S
    return QGammaElement(a.q / S, a.p - a.q * L / S, params)


def qg_power_gamma(k: int, params: LSParams) -> QGammaElement:
    if k < 0:
        raise ValueError(f"exponent must be >= 0, got {k}")
    x = params.one
    for _ in range(k):
        x = qg_mul_gamma(x)
    return x


def qg_to_float(a: QGammaElement) -> float:
    """Nearest double to ``p + q*gamma``.

    The gamma part is evaluated against a 192-bit approximation of gamma, so
    large cancelling coefficients (e.g. gamma**40 = F*gamma - F') still round
    correctly instead of losing digits to the double gamma.
    """
    if not a.q:
        return float(a.p)
    return float(a.p + a.q * a.params.gamma_hp)


def qg_compare(a: QGammaElement, b: QGammaElement) -> int:
    """-1, 0 or 1 as a <, ==, > b."""
    return (a - b).sign()


_ELEMENT_RE = re.compile(
    r"^\s*([+-]?\d+)\s*/\s*(\d+)\s*\+\s*([+-]?\d+)\s*/\s*(\d+)\s*\*\s*g\s*$"
)


def parse_element(text: str, params: LSParams) -> QGammaElement:
    """Inverse of ``str(element)``; spaces are optional ("-3/1+5/1*g")."""
    m = _ELEMENT_RE.match(text)
    if not m:
        raise ValueError(f"cannot parse Q(gamma) element: {text!r}")
    pn, pd, qn, qd = (int(x) for x in m.groups())
    if pd == 0 or qd == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return QGammaElement(Fraction(pn, pd), Fraction(qn, qd), params)
