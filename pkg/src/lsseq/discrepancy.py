"""One-dimensional discrepancy of finite point sets and growth-regime fits.

``extreme_discrepancy`` is the sup over half-open ``[a, b)`` in [0, 1] of
``|#{x in [a, b)}/N - (b - a)|``.  With sorted points ``x_1 <= ... <= x_N``
the sup is approached at point locations:

* overfill ``[x_i, x_j + eps)``: ``(j - i + 1)/N - (x_j - x_i)``, i <= j;
* underfill ``[x_i + eps, x_j)`` with sentinels ``x_0 = 0``, ``x_{N+1} = 1``:
  ``(x_j - x_i) - (j - i - 1)/N``, i < j.

The quadratic reference enumerates those pairs; the default path gets the same
maxima from running extrema of ``x_k - k/N``.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .core import counts
from .partition import ls_partition_float
from .qgamma import LSParams

__all__ = [
    "DiscrepancyReport",
    "RegimeRow",
    "RegimeReport",
    "as_point_array",
    "extreme_discrepancy",
    "extreme_discrepancy_reference",
    "star_discrepancy",
    "brute_force_discrepancy",
    "discrepancy_report",
    "prefix_discrepancies",
    "predicted_exponent",
    "expected_regime",
    "max_depth_for",
    "regime_analysis",
]


def as_point_array(points: Iterable[float]) -> np.ndarray:
    """Sorted float64 copy of ``points``; validates the [0, 1) range."""
    x = np.sort(np.asarray([float(p) for p in points], dtype=np.float64))
    if x.size == 0:
        raise ValueError("discrepancy of an empty point set is undefined")
    if x[0] < 0.0 or x[-1] >= 1.0:
        raise ValueError("points must lie in [0, 1)")
    return x


def extreme_discrepancy(points: Iterable[float]) -> float:
    x = as_point_array(points)
    return _extreme_sorted(x)


def _extreme_sorted(x: np.ndarray) -> float:
    n = x.size
    y = x - np.arange(1, n + 1) / n
    # overfill: max over i <= j of y_i - y_j
    over = float(np.max(np.maximum.accumulate(y) - y)) + 1.0 / n
    # underfill: max over i < j of y_j - y_i, sentinels y_0 = 0, y_{N+1} = -1/N
    ys = np.concatenate(([0.0], y, [-1.0 / n]))
    prefix_min = np.minimum.accumulate(ys)[:-1]
    under = float(np.max(ys[1:] - prefix_min)) + 1.0 / n
    return max(over, under)


def extreme_discrepancy_reference(points: Iterable[float]) -> float:
    """O(N^2) enumeration of the candidate pairs; the normative definition."""
    x = as_point_array(points)
    n = x.size
    best = 0.0
    idx = np.arange(n)
    for i in range(n):
        # overfill with x_i as the left end, every j >= i
        j = idx[i:]
        best = max(best, float(np.max((j - i + 1) / n - (x[i:] - x[i]))))
    xs = np.concatenate(([0.0], x, [1.0]))
    idx = np.arange(n + 2)
    for i in range(n + 1):
        j = idx[i + 1 :]
        best = max(best, float(np.max((xs[i + 1 :] - xs[i]) - (j - i - 1) / n)))
    return best


def star_discrepancy(points: Iterable[float]) -> float:
    """Sup over anchored intervals ``[0, a)``."""
    x = as_point_array(points)
    n = x.size
    i = np.arange(1, n + 1)
    return float(max(np.max(x - (i - 1) / n), np.max(i / n - x)))


def brute_force_discrepancy(points: Iterable[float], grid: int = 10_000) -> float:
    """Lower bound for the extreme discrepancy from a finite candidate set.

    Endpoints range over the points, 0, 1 and ``k/grid``.  Counts are taken
    directly with ``searchsorted`` for the four open/closed conventions, each
    of which is a limit of half-open intervals.  Every pair ``a <= b`` of
    candidates is covered: for a fixed convention the best ``a`` for each ``b``
    is a running extremum over the sorted candidates.
    """
    if grid < 1000:
        raise ValueError(f"grid resolution must be >= 1000, got {grid}")
    x = as_point_array(points)
    n = x.size
    cand = np.unique(np.concatenate((x, np.linspace(0.0, 1.0, grid + 1))))
    below = np.searchsorted(x, cand, side="left")  # #{x < c}
    upto = np.searchsorted(x, cand, side="right")  # #{x <= c}
    best = 0.0
    # count in [a, b) = below(b) - below(a); [a, b] = upto(b) - below(a);
    # (a, b) = below(b) - upto(a); (a, b] = upto(b) - upto(a)
    for right in (below, upto):
        gb = right / n - cand
        for left in (below, upto):
            ga = left / n - cand
            lo = np.minimum.accumulate(ga)
            hi = np.maximum.accumulate(ga)
            if left is upto:
                # open left end: a < b strictly, else (b, b) would count -#{x = b}
                lo = np.concatenate(([np.inf], lo[:-1]))
                hi = np.concatenate(([-np.inf], hi[:-1]))
            best = max(best, float(np.max(gb - lo)), float(np.max(hi - gb)))
    return best


@dataclass(frozen=True)
class DiscrepancyReport:
    N: int
    D_extreme: float
    D_star: float
    scaled: float
    scaled_log: float | None
    scaled_power: float | None = None


def discrepancy_report(points: Iterable[float], exponent: float | None = None) -> DiscrepancyReport:
    """Both discrepancies with N*D, N*D/log N and, if given, N*D/N**exponent."""
    x = as_point_array(points)
    n = x.size
    d = _extreme_sorted(x)
    ds = star_discrepancy(x)
    return DiscrepancyReport(
        N=n,
        D_extreme=d,
        D_star=ds,
        scaled=n * d,
        scaled_log=n * d / math.log(n) if n > 1 else None,
        scaled_power=n * d / n**exponent if exponent is not None else None,
    )


def prefix_discrepancies(points: Sequence[float], Ns: Iterable[int] | None = None) -> list[tuple[int, float, float]]:
    """``(N, D, D*)`` for prefixes of an ordered point sequence."""
    arr = np.asarray([float(p) for p in points], dtype=np.float64)
    if Ns is None:
        Ns = range(1, arr.size + 1)
    out = []
    for N in Ns:
        if not 1 <= N <= arr.size:
            raise ValueError(f"prefix length {N} outside 1..{arr.size}")
        x = as_point_array(arr[:N])
        out.append((N, _extreme_sorted(x), star_discrepancy(x)))
    return out


# -- growth regimes of t_n * D(rho^n) ------------------------------------------

BOUNDED = "bounded"
LOGARITHMIC = "logarithmic"
POWER = "power"


def predicted_exponent(params: LSParams) -> float | None:
    """``-log(S*gamma)/log(gamma)``, defined when S >= L + 2."""
    if params.S < params.L + 2:
        return None
    g = params.gamma_float
    return -math.log(params.S * g) / math.log(g)


def expected_regime(params: LSParams) -> str:
    if params.S <= params.L:
        return BOUNDED
    if params.S == params.L + 1:
        return LOGARITHMIC
    return POWER


def max_depth_for(params: LSParams, max_points: int) -> int:
    """Largest depth n with t_n <= max_points."""
    n = 0
    while counts(n + 1, params).t <= max_points:
        n += 1
    return n


@dataclass(frozen=True)
class RegimeRow:
    n: int
    t_n: int
    D: float

    @property
    def scaled(self) -> float:
        return self.t_n * self.D


@dataclass
class RegimeReport:
    params: LSParams
    rows: list[RegimeRow]
    slope: float
    predicted_exponent: float | None
    max_scaled: float
    log_ratio_range: tuple[float, float]
    classification: str
    expected: str
    fit_from: int = 3
    notes: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "L": self.params.L,
            "S": self.params.S,
            "gamma": self.params.gamma_float,
            "rows": [asdict(r) for r in self.rows],
            "slope": self.slope,
            "predicted_exponent": self.predicted_exponent,
            "classification": self.classification,
            "expected": self.expected,
            "max_scaled": self.max_scaled,
            "log_ratio_range": list(self.log_ratio_range),
            "fit_from": self.fit_from,
        }


def _ols_slope(xs: Sequence[float], ys: Sequence[float]) -> float:
    slope, _ = np.polyfit(np.asarray(xs), np.asarray(ys), 1)
    return float(slope)


# slope above which growth is read as a power law
POWER_SLOPE = 0.2
# relative growth of t_n*D_n across the fitted range read as unbounded
LOG_GROWTH = 0.5


def classify(rows: Sequence[RegimeRow], fit_from: int = 3) -> tuple[str, float]:
    """Read the regime off the data alone; returns (classification, slope).

    ``power`` if log(t_n D_n) grows with slope >= 0.2 in log t_n; otherwise
    ``logarithmic`` when t_n D_n still rises by more than half across the
    fitted range and tracks log t_n (a positive least-squares slope against
    log t_n), else ``bounded``.
    """
    fit = [r for r in rows if r.n >= fit_from]
    if len(fit) < 3:
        raise ValueError("need at least three depths in the fitted range")
    lt = [math.log(r.t_n) for r in fit]
    slope = _ols_slope(lt, [math.log(r.scaled) for r in fit])
    if slope >= POWER_SLOPE:
        return POWER, slope
    scaled = [r.scaled for r in fit]
    head = np.mean(scaled[: max(1, len(scaled) // 3)])
    tail = np.mean(scaled[-max(1, len(scaled) // 3):])
    vs_log = _ols_slope(lt, scaled)
    if tail > (1 + LOG_GROWTH) * head and vs_log > 0:
        return LOGARITHMIC, slope
    return BOUNDED, slope


def regime_analysis(params: LSParams, max_depth: int, fit_from: int = 3) -> RegimeReport:
    """t_n * D(rho^n) for n = 1..max_depth and the regime it exhibits."""
    if max_depth < 5:
        raise ValueError(f"max_depth must be >= 5 for a meaningful fit, got {max_depth}")
    if counts(max_depth, params).t > 10**6:
        raise ValueError(f"t_{max_depth} exceeds 10**6 points")
    rows = []
    for n in range(1, max_depth + 1):
        lefts, _ = ls_partition_float(n, params)
        rows.append(RegimeRow(n=n, t_n=len(lefts), D=extreme_discrepancy(lefts)))
    classification, slope = classify(rows, fit_from)
    ratios = [r.scaled / math.log(r.t_n) for r in rows if r.n >= fit_from]
    return RegimeReport(
        params=params,
        rows=rows,
        slope=slope,
        predicted_exponent=predicted_exponent(params),
        max_scaled=max(r.scaled for r in rows),
        log_ratio_range=(min(ratios), max(ratios)),
        classification=classification,
        expected=expected_regime(params),
        fit_from=fit_from,
    )
