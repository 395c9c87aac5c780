"""Sequences of partitions by successive rho-refinement, and the point order.

Two engines live here.  :func:`rho_refine` is the generic one: it splits every
interval of maximal length homothetically to a template partition, comparing
lengths exactly whenever they are exact numbers.  :func:`ls_partition` builds
the LS case from long/short labels alone and is checked against the generic
engine.  :func:`lambda_tuple` orders the partition points by the
"extend the first l_n points" rule and is the independent oracle for
:func:`lsseq.core.generate_points`.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Literal, Sequence

from .core import counts, generate_points
from .qgamma import LSParams, QGammaElement

__all__ = [
    "Interval",
    "Partition",
    "EquivalenceReport",
    "FLOAT_TIE_TOL",
    "trivial_partition",
    "template_partition",
    "rho_refine",
    "alpha_refine",
    "ls_partition",
    "ls_partition_float",
    "lambda_tuple",
    "lambda_increments",
    "verify_equivalence",
    "compare_sequences",
    "partition_to_csv",
]

Label = Literal["L", "S"]

# Tie tolerance for float lengths only; exact lengths are compared exactly.
FLOAT_TIE_TOL = 1e-12


@dataclass(frozen=True)
class Interval:
    """``[left, left + length)``; ``label``/``depth`` are set in the LS case.

    For an LS interval at partition depth n, a long one has length gamma**n and
    a short one gamma**(n+1); ``depth`` stores that exponent.
    """

    left: Any
    length: Any
    label: Label | None = None
    depth: int | None = None

    @property
    def right(self) -> Any:
        return self.left + self.length


@dataclass
class Partition:
    intervals: list[Interval]
    depth: int = 0
    params: LSParams | None = field(default=None, repr=False)

    def __len__(self) -> int:
        return len(self.intervals)

    def __iter__(self):
        return iter(self.intervals)

    @property
    def lefts(self) -> list[Any]:
        return [iv.left for iv in self.intervals]

    def lengths(self) -> list[Any]:
        return [iv.length for iv in self.intervals]

    def long_lefts(self) -> list[Any]:
        return [iv.left for iv in self.intervals if iv.label == "L"]


def trivial_partition(one: Any = Fraction(1)) -> Partition:
    """The partition {[0, 1)}; ``one`` fixes the number type."""
    return Partition([Interval(one - one, one)])


def template_partition(params: LSParams) -> Partition:
    """L intervals of length gamma followed by S of length gamma**2."""
    g = params.gamma
    g2 = g * g
    intervals = []
    x = params.zero
    for _ in range(params.L):
        intervals.append(Interval(x, g, "L", 1))
        x = x + g
    for _ in range(params.S):
        intervals.append(Interval(x, g2, "S", 1))
        x = x + g2
    return Partition(intervals, depth=1, params=params)


def _is_float(x: Any) -> bool:
    return isinstance(x, float)


def _max_length(lengths: Sequence[Any]) -> Any:
    return max(lengths)


def _same(a: Any, b: Any) -> bool:
    if _is_float(a) or _is_float(b):
        return abs(float(a) - float(b)) <= FLOAT_TIE_TOL
    return a == b


def rho_refine(pi: Partition, rho: Partition) -> Partition:
    """Split every maximal-length interval of ``pi`` homothetically to ``rho``."""
    if len(rho) < 2:
        raise ValueError("rho must be a nontrivial partition of [0, 1)")
    lengths = pi.lengths()
    if not lengths:
        raise ValueError("cannot refine an empty partition")
    top = _max_length(lengths)
    out: list[Interval] = []
    for iv in pi.intervals:
        if not _same(iv.length, top):
            out.append(iv)
            continue
        for piece in rho.intervals:
            out.append(Interval(iv.left + iv.length * piece.left, iv.length * piece.length))
    return Partition(out, depth=pi.depth + 1, params=pi.params)


def alpha_refine(pi: Partition, alpha: Any) -> Partition:
    """Kakutani's alpha-refinement: rho = {[0, alpha), [alpha, 1)}."""
    one = alpha - alpha + 1
    zero = alpha - alpha
    rho = Partition([Interval(zero, alpha), Interval(alpha, one - alpha)])
    return rho_refine(pi, rho)


def ls_partition(n: int, params: LSParams) -> Partition:
    """Depth-n LS partition built from labels only (no length comparisons).

    A long interval of depth n becomes L longs then S shorts of depth n+1; a
    short one is already of the new maximal length and is relabelled long.
    """
    if n < 0:
        raise ValueError(f"depth must be >= 0, got {n}")
    L, S = params.L, params.S
    g = params.gamma
    intervals = [Interval(params.zero, params.one, "L", 0)]
    g_pow = params.one  # gamma**depth
    for depth in range(n):
        g_next = g_pow * g
        g_next2 = g_next * g
        nxt: list[Interval] = []
        for iv in intervals:
            if iv.label == "S":
                nxt.append(Interval(iv.left, iv.length, "L", depth + 1))
                continue
            x = iv.left
            for _ in range(L):
                nxt.append(Interval(x, g_next, "L", depth + 1))
                x = x + g_next
            for _ in range(S):
                nxt.append(Interval(x, g_next2, "S", depth + 1))
                x = x + g_next2
        intervals = nxt
        g_pow = g_next
    return Partition(intervals, depth=n, params=params)


def ls_partition_float(n: int, params: LSParams) -> tuple[list[float], list[str]]:
    """Left endpoints (as doubles) and labels of the depth-n LS partition.

    Same bookkeeping as :func:`ls_partition` on plain lists, for depths where
    building exact elements for every interval would be wasteful.
    """
    if n < 0:
        raise ValueError(f"depth must be >= 0, got {n}")
    L, S = params.L, params.S
    g = params.gamma_float
    lefts = [0.0]
    labels = ["L"]
    g_pow = 1.0
    for _ in range(n):
        g1 = g_pow * g
        g2 = g1 * g
        long_offsets = [i * g1 for i in range(L)]
        short_offsets = [L * g1 + j * g2 for j in range(S)]
        new_lefts: list[float] = []
        new_labels: list[str] = []
        for x, lab in zip(lefts, labels):
            if lab == "S":
                new_lefts.append(x)
                new_labels.append("L")
                continue
            new_lefts.extend(x + o for o in long_offsets)
            new_labels.extend("L" * L)
            new_lefts.extend(x + o for o in short_offsets)
            new_labels.extend("S" * S)
        lefts, labels = new_lefts, new_labels
        g_pow = g1
    return lefts, labels


def lambda_increments(n: int, params: LSParams) -> list[QGammaElement]:
    """Offsets that take the first l_n points to the new points of depth n+1.

    ``i*gamma**(n+1)`` for the long branches, then
    ``L*gamma**(n+1) + j*gamma**(n+2)`` for j = 1..S-1.  With S = 0 the base-L
    grid only needs i = 1..L-1 (i = L would land on the next coarser point).
    """
    g1 = params.gamma
    for _ in range(n):
        g1 = g1 * params.gamma
    g2 = g1 * params.gamma
    L, S = params.L, params.S
    top = L if S >= 1 else L - 1
    incs = [i * g1 for i in range(1, top + 1)]
    incs.extend(L * g1 + j * g2 for j in range(1, S))
    return incs


def lambda_tuple(n: int, params: LSParams) -> list[QGammaElement]:
    """The ordered tuple of the t_n points defining the depth-n partition.

    Depth 0 is ``(0,)``; each further depth appends, increment by increment,
    the images of the first l_n points of the previous tuple.
    """
    if n < 0:
        raise ValueError(f"depth must be >= 0, got {n}")
    points = [params.zero]
    for depth in range(n):
        l_n = counts(depth, params).l
        head = points[:l_n]
        new: list[QGammaElement] = []
        for inc in lambda_increments(depth, params):
            new.extend(x + inc for x in head)
        points.extend(new)
    return points


@dataclass(frozen=True)
class EquivalenceReport:
    params: LSParams
    depth: int
    count: int
    equal: bool
    first_mismatch: int | None = None
    expected: str | None = None
    actual: str | None = None

    def summary(self) -> str:
        if self.equal:
            return f"t_{self.depth}={self.count} points equal"
        return (
            f"t_{self.depth}={self.count} points differ at index "
            f"{self.first_mismatch}: partition order gives {self.expected}, "
            f"radical inverse gives {self.actual}"
        )


def verify_equivalence(n: int, params: LSParams) -> EquivalenceReport:
    """Compare the reordered partition points with the radical-inverse stream.

    ``first_mismatch`` is a 1-based point index, or None when all agree.
    """
    if n < 1:
        raise ValueError(f"depth must be >= 1, got {n}")
    lam = lambda_tuple(n, params)
    stream = generate_points(len(lam), params, "exact")
    return compare_sequences(n, params, lam, stream)


def compare_sequences(
    n: int,
    params: LSParams,
    expected: Sequence[QGammaElement],
    actual: Sequence[QGammaElement],
) -> EquivalenceReport:
    count = len(expected)
    for k, (a, b) in enumerate(zip(expected, actual), start=1):
        if a != b:
            return EquivalenceReport(params, n, count, False, k, str(a), str(b))
    if len(actual) != count:
        k = min(len(actual), count) + 1
        return EquivalenceReport(params, n, count, False, k, None, None)
    return EquivalenceReport(params, n, count, True)


def partition_to_csv(partition: Partition) -> str:
    """Rows ``index,left_exact,left_float,label,depth`` with a header."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["index", "left_exact", "left_float", "label", "depth"])
    for k, iv in enumerate(partition.intervals, start=1):
        left = iv.left
        exact = left.compact() if isinstance(left, QGammaElement) else str(left)
        writer.writerow([k, exact, repr(float(left)), iv.label or "", iv.depth if iv.depth is not None else ""])
    return buf.getvalue()

