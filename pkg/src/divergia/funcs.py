"""Continuous piecewise-linear functions with exact integration, lazily
indexed monotone function families, and the bump construction that turns a
nested sequence of closed sets into such a family.

Canonical ramp rule for bumps (deterministic choice of the continuous
[0,1]-valued function that is 0 off the outer set and 1 on the inner set):
inside each outer component [A, B],

* value 1 on every inner sub-component;
* between two consecutive inner sub-components the value dips linearly to
  1/2 at the gap midpoint (a shallow tent);
* from an outer edge that is not a domain endpoint the value ramps
  linearly from 0 at the edge to 1 at the nearest inner endpoint;
* from an outer edge that coincides with a domain endpoint the value is 1
  at the endpoint and dips to 1/2 at the midpoint of the edge segment;
* outer components containing no inner component get value 0 throughout.

The mid-segment dip keeps partial sums of bumps strictly below N off the
N-th set of the nest (at any point interior to a complement segment),
which the plain "hold 1 across gaps" rule would violate.
"""

from __future__ import annotations

import bisect
import threading
from dataclasses import dataclass
from typing import Callable, Optional

from .errors import ConstructionError, DomainMismatchError, ParameterError
from .intervals import IntervalUnion
from .scalars import TOL, format_scalar, is_exact, parse_scalar


@dataclass(frozen=True)
class PiecewiseLinear:
    """Continuous piecewise-linear function given by strictly increasing
    knots covering a compact domain."""

    xs: tuple
    ys: tuple

    def __init__(self, xs, ys):
        xs, ys = tuple(xs), tuple(ys)
        if len(xs) != len(ys) or len(xs) < 2:
            raise ParameterError("need at least two knots")
        for i in range(1, len(xs)):
            if not xs[i - 1] < xs[i]:
                raise ParameterError(
                    f"knot abscissae must strictly increase at index {i}")
        object.__setattr__(self, "xs", xs)
        object.__setattr__(self, "ys", ys)

    @classmethod
    def from_knots(cls, knots) -> "PiecewiseLinear":
        xs, ys = zip(*knots)
        return cls(xs, ys)

    @classmethod
    def constant(cls, domain, c) -> "PiecewiseLinear":
        lo, hi = domain
        return cls((lo, hi), (c, c))

    @property
    def domain(self):
        return (self.xs[0], self.xs[-1])

    @property
    def exact(self) -> bool:
        return all(is_exact(v) for v in self.xs) and \
            all(is_exact(v) for v in self.ys)

    def knots(self):
        return list(zip(self.xs, self.ys))

    # -- evaluation -----------------------------------------------------

    def __call__(self, x):
        return self.eval(x)

    def eval(self, x):
        if not self.xs[0] <= x <= self.xs[-1]:
            raise ParameterError(f"{x} outside domain {self.domain}")
        i = bisect.bisect_right(self.xs, x)
        if i == len(self.xs):
            return self.ys[-1]
        if x == self.xs[i - 1]:
            return self.ys[i - 1]
        x0, x1 = self.xs[i - 1], self.xs[i]
        y0, y1 = self.ys[i - 1], self.ys[i]
        return y0 + (y1 - y0) * (x - x0) / (x1 - x0)

    def min_value(self):
        return min(self.ys)

    def max_value(self):
        return max(self.ys)

    # -- arithmetic -----------------------------------------------------

    def _require_same_domain(self, other: "PiecewiseLinear"):
        if self.domain != other.domain:
            raise DomainMismatchError(
                f"domains differ: {self.domain} vs {other.domain}")

    def add(self, other: "PiecewiseLinear") -> "PiecewiseLinear":
        self._require_same_domain(other)
        xs = sorted(set(self.xs) | set(other.xs))
        ys = [self.eval(x) + other.eval(x) for x in xs]
        return PiecewiseLinear(xs, ys)

    def scale(self, c) -> "PiecewiseLinear":
        return PiecewiseLinear(self.xs, tuple(c * y for y in self.ys))

    def sub(self, other: "PiecewiseLinear") -> "PiecewiseLinear":
        return self.add(other.scale(-1))

    def integral(self, x, y):
        """Exact trapezoid integral over [x, y] (subset of the domain)."""
        if x >= y:
            raise ParameterError(f"need x < y, got [{x}, {y}]")
        if x < self.xs[0] or y > self.xs[-1]:
            raise ParameterError(f"[{x}, {y}] outside domain {self.domain}")
        total = 0
        i = bisect.bisect_right(self.xs, x)
        prev_x, prev_y = x, self.eval(x)
        while i < len(self.xs) and self.xs[i] < y:
            total += (self.ys[i] + prev_y) * (self.xs[i] - prev_x) / 2
            prev_x, prev_y = self.xs[i], self.ys[i]
            i += 1
        total += (self.eval(y) + prev_y) * (y - prev_x) / 2
        return total

    # -- serialization --------------------------------------------------

    def to_json(self) -> dict:
        return {"knots": [[format_scalar(x), format_scalar(y)]
                          for x, y in zip(self.xs, self.ys)]}

    @classmethod
    def from_json(cls, doc: dict) -> "PiecewiseLinear":
        return cls.from_knots(
            [(parse_scalar(x), parse_scalar(y)) for x, y in doc["knots"]])


# ----------------------------------------------------------------------
# bump construction
# ----------------------------------------------------------------------

def _half(a, b):
    return a + (b - a) / 2


def bump_value_in_component(A, B, inners, domain, x):
    """Value of the canonical bump at x, for one outer component [A, B]
    with the given inner sub-components.  Assumes A <= x <= B."""
    lo, hi = domain
    if not inners:
        return 0
    starts = [p for p, _ in inners]
    i = bisect.bisect_right(starts, x)
    if i > 0 and inners[i - 1][0] <= x <= inners[i - 1][1]:
        return 1
    if i == 0:
        # left edge segment [A, p1]
        p1 = inners[0][0]
        if A <= lo:
            mid = _half(A, p1)
            if x <= mid:
                return 1 - (x - A) / (mid - A) / 2
            return 1 - (p1 - x) / (p1 - mid) / 2
        return (x - A) / (p1 - A)
    if i == len(inners):
        # right edge segment [q_k, B]
        qk = inners[-1][1]
        if B >= hi:
            mid = _half(qk, B)
            if x <= mid:
                return 1 - (x - qk) / (mid - qk) / 2
            return 1 - (B - x) / (B - mid) / 2
        return (B - x) / (B - qk)
    # gap between inners i-1 and i: shallow tent dipping to 1/2
    q, p = inners[i - 1][1], inners[i][0]
    mid = _half(q, p)
    if x <= mid:
        return 1 - (x - q) / (mid - q) / 2
    return 1 - (p - x) / (p - mid) / 2


def bump_from_sets(outer: IntervalUnion, inner: IntervalUnion) -> PiecewiseLinear:
    """Canonical continuous [0,1]-valued function equal to 1 on ``inner``
    and 0 off ``outer``; requires inner inside the relative interior of
    outer."""
    if not inner.subset_of_relative_interior(outer):
        raise ConstructionError(
            "inner set is not inside the relative interior of the outer set")
    lo, hi = outer.domain
    inner_by_outer = {}
    starts = [a for a, _ in outer.components]
    for comp in inner.components:
        i = bisect.bisect_right(starts, comp[0]) - 1
        inner_by_outer.setdefault(i, []).append(comp)

    pts = []

    def put(x, y):
        if pts and pts[-1][0] == x:
            if pts[-1][1] != y:
                raise ConstructionError(f"conflicting knot values at x={x}")
            return
        pts.append((x, y))

    first = outer.components[0] if outer.components else None
    v_lo = 1 if (first is not None and first[0] <= lo
                 and inner_by_outer.get(0)) else 0
    put(lo, v_lo)

    for idx, (A, B) in enumerate(outer.components):
        inners = inner_by_outer.get(idx)
        if not inners:
            continue
        p1, qk = inners[0][0], inners[-1][1]
        # left edge
        if A <= lo:
            if p1 > A:
                put(_half(A, p1), _half_value(p1))
        else:
            put(A, 0)
        put(p1, 1)
        # inner plateaus and gap tents
        for (a1, b1), (a2, b2) in zip(inners, inners[1:]):
            put(b1, 1)
            put(_half(b1, a2), _half_value(b1))
            put(a2, 1)
        put(qk, 1)
        # right edge
        if B >= hi:
            if B > qk:
                put(_half(qk, B), _half_value(qk))
                put(hi, 1)
        else:
            if B > qk:
                put(B, 0)

    if pts[-1][0] < hi:
        put(hi, 0)
    return PiecewiseLinear.from_knots(pts)


def _exact_half():
    from fractions import Fraction
    return Fraction(1, 2)


def _half_value(ref):
    """1/2 in the backend suggested by the reference scalar."""
    return _exact_half() if is_exact(ref) else 0.5


# ----------------------------------------------------------------------
# function families
# ----------------------------------------------------------------------

class FunctionFamily:
    """Lazily indexed nondecreasing sequence of piecewise-linear functions.

    ``rule(n)`` materializes the n-th function (memoized).  Optional hooks
    keep deep indices tractable:

    * ``increment(n)`` gives rule(n) - rule(n-1) without materializing
      either side;
    * ``value(n, x)`` evaluates pointwise without materializing rule(n);
    * ``step_bound(n)`` bounds the integral of increment(n) over any
      subinterval of the domain, enabling certified "never reaches the
      threshold" verdicts.
    """

    def __init__(self, domain, rule, tag="", min_index=1,
                 increment: Optional[Callable] = None,
                 value: Optional[Callable] = None,
                 step_bound: Optional[Callable] = None,
                 info: Optional[dict] = None):
        self.domain = tuple(domain)
        self.tag = tag
        self.min_index = min_index
        self._rule = rule
        self._increment = increment
        self._value = value
        self.step_bound = step_bound
        self.info = info if info is not None else {}
        self._memo = {}
        self._lock = threading.Lock()

    def rule(self, n: int) -> PiecewiseLinear:
        if n < self.min_index:
            raise ParameterError(
                f"index {n} below first index {self.min_index}")
        with self._lock:
            if n not in self._memo:
                self._memo[n] = self._rule(n)
            return self._memo[n]

    def value(self, n: int, x):
        if self._value is not None:
            if n < self.min_index:
                raise ParameterError(
                    f"index {n} below first index {self.min_index}")
            return self._value(n, x)
        return self.rule(n).eval(x)

    @property
    def has_increment(self) -> bool:
        return self._increment is not None

    def increment(self, n: int) -> PiecewiseLinear:
        """rule(n) - rule(n-1), for n > min_index."""
        if n <= self.min_index:
            raise ParameterError(f"no increment at the first index {n}")
        if self._increment is not None:
            return self._increment(n)
        return self.rule(n).sub(self.rule(n - 1))


@dataclass(frozen=True)
class MonotoneReport:
    ok: bool
    n_checked: int
    first_violation: Optional[tuple] = None  # (n, x, negative gap)

    def __bool__(self):
        return self.ok


def monotone_check(fam: FunctionFamily, n_max: int, grid=None,
                   tol: float = TOL) -> MonotoneReport:
    """Verify rule(n+1) >= rule(n) - tol for all n up to n_max.

    Piecewise-linear functions are compared exactly at merged knot sets
    (plus any extra grid points), never by sampling alone.
    """
    if n_max < fam.min_index + 1:
        raise ParameterError("n_max must allow at least one comparison")
    extra = list(grid) if grid is not None else []
    for n in range(fam.min_index, n_max):
        f, g = fam.rule(n), fam.rule(n + 1)
        xs = sorted(set(f.xs) | set(g.xs) | set(extra))
        for x in xs:
            d = g.eval(x) - f.eval(x)
            if d < -tol:
                return MonotoneReport(False, n_checked=n,
                                      first_violation=(n, x, d))
    return MonotoneReport(True, n_checked=n_max)


def tietze_family(nested, tag="nest-partial-sums") -> FunctionFamily:
    """Partial sums of canonical bumps over a nested sequence of closed
    sets D_0 = domain, D_{n+1} inside the relative interior of D_n.

    rule(n) = sum_{i=0}^{n} bump(D_i, D_{i+1}); on the infinite
    intersection the n-th partial sum equals n + 1, and off D_N every
    partial sum stays strictly below N at interior points.
    """
    get_level = nested.level if hasattr(nested, "level") else nested
    memo_level, memo_delta = {}, {}
    lock = threading.Lock()

    def level(n):
        if n not in memo_level:
            memo_level[n] = get_level(n)
        return memo_level[n]

    d0 = level(0)
    domain = d0.domain
    if d0.components != (tuple(domain),):
        raise ConstructionError("level 0 of the nest must be the full domain")

    def delta(i):
        with lock:
            if i not in memo_delta:
                outer, inner = level(i), level(i + 1)
                if not inner.subset_of_relative_interior(outer):
                    raise ConstructionError(
                        f"nesting violated at level {i}: level {i + 1} is "
                        f"not inside the relative interior of level {i}")
                memo_delta[i] = bump_from_sets(outer, inner)
            return memo_delta[i]

    rule_memo = {}

    def rule(n):
        if n not in rule_memo:
            acc = delta(0) if n == 0 else rule(n - 1).add(delta(n))
            rule_memo[n] = acc
        return rule_memo[n]

    value = None
    if hasattr(nested, "component_and_children"):
        lo, hi = domain

        def value(n, x):  # noqa: F811
            total = 0
            for i in range(n + 1):
                found = nested.component_and_children(i, x)
                if found is None:
                    break
                (A, B), children = found
                v = bump_value_in_component(A, B, children, (lo, hi), x)
                total += v
                if v < 1:
                    # x is off level i+1, so all deeper bumps vanish
                    break
            return total

    step_bound = None
    if hasattr(nested, "measure_level"):
        def step_bound(n):  # noqa: F811
            # bump n is <= 1 and supported on level n
            return float(nested.measure_level(n))

    return FunctionFamily(domain, rule, tag=tag, min_index=0,
                          increment=delta, value=value,
                          step_bound=step_bound)


def constant_family(domain, values: Callable[[int], object],
                    tag="constant") -> FunctionFamily:
    """Family of constant functions n -> values(n)."""
    return FunctionFamily(
        domain,
        lambda n: PiecewiseLinear.constant(domain, values(n)),
        tag=tag,
        value=lambda n, x: values(n),
    )
