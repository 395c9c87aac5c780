"""Quasi-Monte Carlo integration experiments with LS-sequences and baselines."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

import numpy as np

from .core import counts, generate_points
from .discrepancy import extreme_discrepancy
from .partition import lambda_increments
from .qgamma import LSParams

__all__ = [
    "Integrand",
    "IntegrationRow",
    "IntegrationReport",
    "GENERATORS",
    "standard_integrands",
    "knapowski_points",
    "van_der_corput_points",
    "random_sequential_reordering",
    "uniform_random_points",
    "generator_points",
    "integrate",
    "reports_to_csv",
]


@dataclass(frozen=True)
class Integrand:
    """A test function on [0, 1) with its exact integral.

    ``variation`` is the total variation on [0, 1], or None if not supplied;
    the Koksma ratio is only reported when it is known.
    """

    name: str
    func: Callable[[np.ndarray], np.ndarray]
    exact: float
    variation: float | None = None

    def __call__(self, x: np.ndarray) -> np.ndarray:
        return self.func(x)


def indicator(a: float, b: float, name: str | None = None) -> Integrand:
    """chi_[a, b); variation counts one jump per end strictly inside (0, 1)."""
    jumps = (0.0 < a < 1.0) + (0.0 < b < 1.0)
    return Integrand(
        name or f"chi[{a:.6g},{b:.6g})",
        lambda x: ((x >= a) & (x < b)).astype(np.float64),
        b - a,
        float(jumps),
    )


def standard_integrands(params: LSParams | None = None) -> list[Integrand]:
    suite = [
        Integrand("one", lambda x: np.ones_like(x), 1.0, 0.0),
        Integrand("x", lambda x: x, 0.5, 1.0),
        Integrand("x2", lambda x: x * x, 1.0 / 3.0, 1.0),
        Integrand("sin2pi", lambda x: np.sin(2 * np.pi * x), 0.0, 4.0),
        indicator(0.25, 0.75, "chi[1/4,3/4)"),
    ]
    if params is not None:
        g = params.gamma_float
        suite.append(indicator(0.0, g, "chi[0,gamma)"))
        suite.append(indicator(g * g, g, "chi[gamma2,gamma)"))
    return suite


def knapowski_points(count: int, blocks: Callable[[int], int] | None = None) -> np.ndarray:
    """Concatenated equipartition blocks 1/a_m, ..., (a_m - 1)/a_m.

    ``blocks(m)`` gives a_m for m = 1, 2, ...; the default a_m = m + 1 walks
    through the n-equipartitions 2, 3, 4, ...
    """
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    blocks = blocks or (lambda m: m + 1)
    out: list[float] = []
    m = 1
    while len(out) < count:
        a = blocks(m)
        if a < 2:
            raise ValueError(f"block size must be >= 2, got a_{m} = {a}")
        out.extend(k / a for k in range(1, a))
        m += 1
    return np.asarray(out[:count])


def van_der_corput_points(count: int, base: int = 2) -> np.ndarray:
    """Classical radical inverse by digit reversal, n = 0, 1, ..."""
    out = np.empty(count)
    for n in range(count):
        x = Fraction(0)
        scale = Fraction(1, base)
        m = n
        while m:
            m, r = divmod(m, base)
            x += r * scale
            scale /= base
        out[n] = float(x)
    return out


def random_sequential_reordering(n: int, params: LSParams, seed: int) -> np.ndarray:
    """Points of the depth-n partition, each depth's new points in random order.

    Depth 0 contributes the point 0; depth k contributes the points of the
    depth-k partition that are not points of depth k - 1, shuffled with a
    seeded PCG64 generator.
    """
    if n < 1:
        raise ValueError(f"depth must be >= 1, got {n}")
    rng = np.random.default_rng(seed)
    current = [0.0]
    out = [0.0]
    for depth in range(n):
        l_n = counts(depth, params).l
        head = current[:l_n]
        new = []
        for inc in lambda_increments(depth, params):
            d = float(inc)
            new.extend(x + d for x in head)
        current.extend(new)
        perm = rng.permutation(len(new))
        out.extend(new[i] for i in perm)
    return np.asarray(out)


def uniform_random_points(count: int, seed: int) -> np.ndarray:
    return np.random.default_rng(seed).random(count)


GENERATORS = ("ls", "vdc", "knapowski", "random_reorder", "random")


def generator_points(
    gen: str, count: int, params: LSParams | None = None, seed: int = 0
) -> np.ndarray:
    """First ``count`` points of a named generator.

    ``vdc`` uses base L + S; ``ls`` and ``random_reorder`` need ``params``.
    """
    if gen not in GENERATORS:
        raise ValueError(f"unknown generator {gen!r}; choose from {', '.join(GENERATORS)}")
    if gen == "knapowski":
        return knapowski_points(count)
    if gen == "random":
        return uniform_random_points(count, seed)
    if params is None:
        raise ValueError(f"generator {gen!r} needs (L, S)")
    if gen == "vdc":
        return van_der_corput_points(count, params.base)
    if gen == "ls":
        return np.asarray(generate_points(count, params, "float"))
    depth = 1
    while counts(depth, params).t < count:
        depth += 1
    return random_sequential_reordering(depth, params, seed)[:count]


@dataclass(frozen=True)
class IntegrationRow:
    N: int
    mean: float
    error: float
    D_N: float
    koksma_ratio: float | None

    @property
    def koksma_violated(self) -> bool:
        return self.koksma_ratio is not None and self.koksma_ratio > 1.0


@dataclass
class IntegrationReport:
    generator: str
    integrand: str
    params: LSParams | None
    seed: int
    rows: list[IntegrationRow] = field(default_factory=list)

    def errors(self) -> list[float]:
        return [r.error for r in self.rows]


def integrate(
    gen: str,
    f: Integrand,
    Ns: Sequence[int],
    params: LSParams | None = None,
    seed: int = 0,
    points: np.ndarray | None = None,
) -> IntegrationReport:
    """Equal-weight averages of ``f`` over prefixes of a generator's points."""
    if not Ns:
        raise ValueError("no sample sizes given")
    if points is None:
        points = generator_points(gen, max(Ns), params, seed)
    if len(points) < max(Ns):
        raise ValueError(f"generator produced {len(points)} < {max(Ns)} points")
    values = f(points)
    report = IntegrationReport(gen, f.name, params, seed)
    for N in Ns:
        mean = float(math.fsum(values[:N]) / N)
        error = abs(mean - f.exact)
        d = extreme_discrepancy(points[:N])
        ratio = None
        if f.variation is not None:
            ratio = 0.0 if f.variation == 0 else error / (f.variation * d)
        report.rows.append(IntegrationRow(N, mean, error, d, ratio))
    return report


CSV_HEADER = ["generator", "L", "S", "integrand", "N", "mean", "error", "D_N", "koksma_ratio", "seed"]


def reports_to_csv(reports: Iterable[IntegrationReport]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for rep in reports:
        L = rep.params.L if rep.params else ""
        S = rep.params.S if rep.params else ""
        for r in rep.rows:
            w.writerow([
                rep.generator, L, S, rep.integrand, r.N, repr(r.mean), repr(r.error),
                repr(r.D_N), "" if r.koksma_ratio is None else repr(r.koksma_ratio), rep.seed,
            ])
    return buf.getvalue()
