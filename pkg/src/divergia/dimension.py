"""Dimension computations: the similarity-dimension equation for lists of
contraction ratios, and box-counting estimates for interval unions."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Tuple

from .errors import ParameterError
from .intervals import IntervalUnion
from .scalars import format_scalar


def moran_dimension(ratios, tol: float = 1e-12, max_iter: int = 200) -> float:
    """Unique s >= 0 with sum(c_i ** s) == 1, by bisection.

    The sum is strictly decreasing in s, equals len(ratios) >= 1 at s = 0,
    and drops below 1 once s is large enough; the upper bracket is
    expanded until it does.
    """
    ratios = [float(c) for c in ratios]
    if not ratios:
        raise ParameterError("need at least one contraction ratio")
    for c in ratios:
        if not 0 < c < 1:
            raise ParameterError(f"ratio {c} outside (0, 1)")

    def total(s):
        return math.fsum(c ** s for c in ratios)

    lo, hi = 0.0, 1.0
    while total(hi) > 1 and hi < 1e6:
        hi *= 2
    for _ in range(max_iter):
        mid = (lo + hi) / 2
        if abs(total(mid) - 1) <= tol:
            return mid
        if total(mid) > 1:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2


def box_count(A: IntervalUnion, delta) -> int:
    """Number of half-open grid boxes [k*delta, (k+1)*delta) anchored at
    the domain's left endpoint that intersect A.

    A closed endpoint lying exactly on a box boundary belongs to the box
    on its right, which is the deterministic tie-break that makes counts
    portable; the grid never extends past the domain.
    """
    if not delta > 0:
        raise ParameterError(f"delta must be positive, got {delta}")
    lo, hi = A.domain
    n_boxes = -((hi - lo) // -delta)  # ceil division
    last = int(n_boxes) - 1
    covered: List[Tuple[int, int]] = []
    for a, b in A.components:
        k_min = min(int((a - lo) // delta), last)
        k_max = min(int((b - lo) // delta), last)
        if covered and k_min <= covered[-1][1] + 1:
            covered[-1] = (covered[-1][0], max(covered[-1][1], k_max))
        else:
            covered.append((k_min, k_max))
    return sum(k2 - k1 + 1 for k1, k2 in covered)


@dataclass(frozen=True)
class DimensionEstimate:
    """Box-counting regression result with its per-scale counts."""

    estimate: float
    counts: tuple  # ((delta, N(delta)), ...) with delta decreasing
    slope: float
    intercept: float
    residual: float
    low_confidence: bool = False

    def to_json(self) -> dict:
        return {
            "estimate": self.estimate,
            "slope": self.slope,
            "intercept": self.intercept,
            "residual": self.residual,
            "low_confidence": self.low_confidence,
            "counts": [[format_scalar(d), n] for d, n in self.counts],
        }


def box_dimension(A: IntervalUnion, scales) -> DimensionEstimate:
    """Least-squares slope of log N(delta) against log(1/delta), clamped
    to [0, 1]; flagged low-confidence when the counts never change."""
    scales = sorted(scales, reverse=True)
    if len(scales) < 4:
        raise ParameterError("need at least four scales")
    counts = [(d, box_count(A, d)) for d in scales]
    if any(n == 0 for _, n in counts):
        raise ParameterError("empty set has no box dimension")
    xs = [math.log(1 / float(d)) for d, _ in counts]
    ys = [math.log(n) for _, n in counts]
    n = len(xs)
    mean_x, mean_y = math.fsum(xs) / n, math.fsum(ys) / n
    sxx = math.fsum((x - mean_x) ** 2 for x in xs)
    sxy = math.fsum((x - mean_x) * (y - mean_y) for x, y in zip(xs, ys))
    slope = sxy / sxx
    intercept = mean_y - slope * mean_x
    residual = math.fsum(
        (y - (slope * x + intercept)) ** 2 for x, y in zip(xs, ys))
    low_confidence = len({c for _, c in counts}) == 1
    estimate = min(1.0, max(0.0, slope))
    return DimensionEstimate(estimate=estimate, counts=tuple(counts),
                             slope=slope, intercept=intercept,
                             residual=residual,
                             low_confidence=low_confidence)
