"""Family combinators and finite-scale verification of the defining
max-family conditions: pointwise divergence thresholding, per-subinterval
integral growth, and superlevel-set structure.

Divergence and integral divergence are not decidable from finite data, so
every verdict here is a surrogate at explicit thresholds (defaults M = 10,
N = 30, ten equal subintervals) that are echoed into each report.  A
"not reached" row is *certified* when the family supplies per-step
integral bounds whose tail provably cannot close the remaining gap.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Optional

from .errors import DomainMismatchError, ParameterError
from .funcs import (FunctionFamily, MonotoneReport, PiecewiseLinear,
                    constant_family, monotone_check, tietze_family)
from .ifs import CantorParams, cantor_nest
from .intervals import IntervalUnion
from .jarnik import LiouvilleParams, liouville_family
from .scalars import TOL, format_scalar, is_exact


# ----------------------------------------------------------------------
# combinators
# ----------------------------------------------------------------------

def _require_same_domain(f: FunctionFamily, g: FunctionFamily):
    if not (f.domain[0] == g.domain[0] and f.domain[1] == g.domain[1]):
        raise DomainMismatchError(
            f"family domains differ: {f.domain} vs {g.domain}")


def sum_family(f: FunctionFamily, g: FunctionFamily) -> FunctionFamily:
    """Indexwise sum; its divergence set is the union of the inputs'."""
    _require_same_domain(f, g)
    min_index = max(f.min_index, g.min_index)

    increment = None
    if f.has_increment and g.has_increment:
        def increment(n):  # noqa: F811
            return f.increment(n).add(g.increment(n))

    step_bound = None
    if f.step_bound is not None and g.step_bound is not None:
        def step_bound(n):  # noqa: F811
            return f.step_bound(n) + g.step_bound(n)

    return FunctionFamily(
        f.domain,
        lambda n: f.rule(n).add(g.rule(n)),
        tag=f"sum({f.tag}, {g.tag})",
        min_index=min_index,
        increment=increment,
        value=lambda n, x: f.value(n, x) + g.value(n, x),
        step_bound=step_bound,
    )


def product_family(f: FunctionFamily, g: FunctionFamily,
                   proviso: Optional[dict] = None) -> FunctionFamily:
    """Indexwise product, interpolated on a midpoint-refined knot grid.

    The divergence set of the product equals the union of the inputs'
    only under a side condition (at each divergence point of one family
    the other must tend to a positive, possibly infinite, limit).  Passing
    ``proviso`` = {"M":…, "N":…, "grid":…, "floor":…} runs a finite
    surrogate of that condition; a failure attaches a warning to
    ``family.info`` instead of raising, since the caller asserts it.
    """
    _require_same_domain(f, g)
    min_index = max(f.min_index, g.min_index)
    info = {}

    def rule(n):
        pf, pg = f.rule(n), g.rule(n)
        base = sorted(set(pf.xs) | set(pg.xs))
        xs = []
        for a, b in zip(base, base[1:]):
            xs.append(a)
            xs.append(a + (b - a) / 2)
        xs.append(base[-1])
        ys = [pf.eval(x) * pg.eval(x) for x in xs]
        err = max((abs(pf.eval(b) - pf.eval(a)) * abs(pg.eval(b) - pg.eval(a))
                   / 4 for a, b in zip(base, base[1:])), default=0)
        info[("interp_error", n)] = err
        return PiecewiseLinear(xs, ys)

    fam = FunctionFamily(
        f.domain, rule,
        tag=f"product({f.tag}, {g.tag})",
        min_index=min_index,
        value=lambda n, x: f.value(n, x) * g.value(n, x),
        info=info,
    )

    if proviso is not None:
        M = proviso.get("M", 10)
        N = proviso.get("N", 30)
        floor = proviso.get("floor", 1e-6)
        grid = proviso.get("grid") or default_grid(f.domain)
        bad = []
        for a, b in ((f, g), (g, f)):
            for x in grid:
                if a.value(N, x) > M:
                    lowest = min(b.value(n, x)
                                 for n in range(max(N // 2, b.min_index),
                                                N + 1))
                    if not lowest > floor:
                        bad.append((x, lowest))
                        break
        if bad:
            info["proviso_warning"] = (
                f"companion family dips to {bad[0][1]} near x = {bad[0][0]} "
                f"where the other diverges; the union identity for the "
                f"divergence sets is not guaranteed")
    return fam


# ----------------------------------------------------------------------
# superlevel sets
# ----------------------------------------------------------------------

def superlevel_set(f: PiecewiseLinear, M) -> IntervalUnion:
    """Closure of {x : f(x) > M} as an interval union (openness is not
    tracked; isolated touch points where f merely reaches M vanish)."""
    comps = []
    for i in range(len(f.xs) - 1):
        x0, x1 = f.xs[i], f.xs[i + 1]
        y0, y1 = f.ys[i], f.ys[i + 1]
        if y0 <= M and y1 <= M:
            continue
        if y0 > M and y1 > M:
            comps.append((x0, x1))
            continue
        xc = x0 + (M - y0) * (x1 - x0) / (y1 - y0)
        comps.append((x0, xc) if y0 > M else (xc, x1))
    exact = f.exact and is_exact(M)
    return IntervalUnion(f.domain, comps, exact=exact)


# ----------------------------------------------------------------------
# divergence-set estimation
# ----------------------------------------------------------------------

def default_grid(domain, points: int = 1000, q_max: int = 20):
    """Equispaced points plus all reduced rationals p/q with q <= q_max,
    mapped affinely onto the domain."""
    lo, hi = domain
    fractions = {Fraction(k, points) for k in range(points + 1)}
    for q in range(1, q_max + 1):
        for p in range(q + 1):
            if gcd(p, q) == 1:
                fractions.add(Fraction(p, q))
    exact = is_exact(lo) and is_exact(hi)
    out = []
    for t in sorted(fractions):
        x = lo + (hi - lo) * t
        out.append(x if exact else float(x))
    return out


@dataclass(frozen=True)
class DivergenceEstimate:
    """Thresholded snapshot of a family: which grid points exceed M at
    index N.  This is a superset-converging approximation of the true
    divergence set, not the set itself."""

    points: tuple
    values: tuple
    flags: tuple
    M: object
    N: int
    tag: str = ""
    note: str = ("flagged set approximates the divergence set from above; "
                 "membership at finite (M, N) is not exact")

    def flagged_points(self):
        return [x for x, f in zip(self.points, self.flags) if f]

    def to_json(self) -> dict:
        return {
            "M": float(self.M), "N": self.N, "family": self.tag,
            "note": self.note,
            "points": [[format_scalar(x), float(v), bool(f)]
                       for x, v, f in
                       zip(self.points, self.values, self.flags)],
        }


def divergence_estimate(fam: FunctionFamily, M=10, N=30,
                        grid=None) -> DivergenceEstimate:
    if not M > 0:
        raise ParameterError("M must be positive")
    if N < fam.min_index:
        raise ParameterError(f"N must be >= {fam.min_index}")
    lo, hi = fam.domain
    if grid is None:
        grid = default_grid(fam.domain)
    for x in grid:
        if not lo <= x <= hi:
            raise ParameterError(f"grid point {x} outside domain")
    values = tuple(fam.value(N, x) for x in grid)
    flags = tuple(v > M for v in values)
    return DivergenceEstimate(points=tuple(grid), values=values, flags=flags,
                              M=M, N=N, tag=fam.tag)


# ----------------------------------------------------------------------
# max-family surrogate check
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class SubintervalRow:
    x: object
    y: object
    reached_at: Optional[int]          # smallest n with integral > M
    certified_not_reached: bool        # tail bound proves M is unreachable
    integrals: tuple                   # (n, integral) pairs, ascending in n

    @property
    def reached(self) -> bool:
        return self.reached_at is not None


@dataclass(frozen=True)
class MaxFamilyReport:
    monotone: MonotoneReport
    rows: tuple
    M: object
    n_max: int
    tag: str = ""
    grid_note: str = "ten equal subintervals of the domain"

    @property
    def all_reached(self) -> bool:
        return all(r.reached for r in self.rows)

    def to_json(self) -> dict:
        return {
            "family": self.tag, "M": float(self.M), "N_max": self.n_max,
            "grid": self.grid_note,
            "monotone": self.monotone.ok,
            "rows": [{
                "x": format_scalar(r.x), "y": format_scalar(r.y),
                "reached_at": r.reached_at,
                "certified_not_reached": r.certified_not_reached,
                "integrals": [[n, float(v)] for n, v in r.integrals],
            } for r in self.rows],
        }


def _default_subintervals(domain):
    lo, hi = domain
    exact = is_exact(lo) and is_exact(hi)
    cuts = [lo + (hi - lo) * Fraction(k, 10) for k in range(11)]
    if not exact:
        cuts = [float(c) for c in cuts]
    return list(zip(cuts, cuts[1:]))


def max_family_check(fam: FunctionFamily, M=10, n_max=30,
                     subintervals=None) -> MaxFamilyReport:
    """Per-subinterval search for the smallest n whose integral exceeds M,
    scanning incrementally so that deep indices are touched only when a
    subinterval actually needs them."""
    if n_max < fam.min_index:
        raise ParameterError(f"n_max must be >= {fam.min_index}")
    if subintervals is None:
        subintervals = _default_subintervals(fam.domain)
        grid_note = "ten equal subintervals of the domain"
    else:
        subintervals = [tuple(s) for s in subintervals]
        grid_note = f"{len(subintervals)} caller-supplied subintervals"
    if not subintervals:
        raise ParameterError("need at least one subinterval")

    inc_cache = {}

    def increment(n):
        if n not in inc_cache:
            inc_cache[n] = (fam.rule(n) if n == fam.min_index
                            else fam.increment(n))
        return inc_cache[n]

    tail_cache = {}

    def tail(n):
        # upper bound on everything levels n+1..n_max can still add
        if fam.step_bound is None:
            return None
        if n not in tail_cache:
            tail_cache[n] = sum(fam.step_bound(k)
                                for k in range(n + 1, n_max + 1))
        return tail_cache[n]

    rows = []
    deepest = fam.min_index
    for x, y in subintervals:
        running = 0
        column = []
        reached_at = None
        certified = False
        for n in range(fam.min_index, n_max + 1):
            running = running + increment(n).integral(x, y)
            column.append((n, running))
            deepest = max(deepest, n)
            if running > M:
                reached_at = n
                break
            t = tail(n)
            if t is not None and float(running) + t <= float(M):
                certified = True
                break
        rows.append(SubintervalRow(x=x, y=y, reached_at=reached_at,
                                   certified_not_reached=certified,
                                   integrals=tuple(column)))

    if fam.has_increment:
        ok, violation = True, None
        for n in sorted(inc_cache):
            if n == fam.min_index:
                continue
            inc = inc_cache[n]
            low = inc.min_value()
            if low < -TOL:
                x_bad = inc.xs[inc.ys.index(low)]
                ok, violation = False, (n - 1, x_bad, low)
                break
        monotone = MonotoneReport(ok, n_checked=deepest,
                                  first_violation=violation)
    else:
        monotone = monotone_check(fam, max(deepest, fam.min_index + 1))

    return MaxFamilyReport(monotone=monotone, rows=tuple(rows), M=M,
                           n_max=n_max, tag=fam.tag, grid_note=grid_note)


# ----------------------------------------------------------------------
# assembled families with prescribed divergence-set dimension
# ----------------------------------------------------------------------

def anydh_family(theta, eps=None,
                 liouville_params: Optional[LiouvilleParams] = None,
                 ) -> FunctionFamily:
    """Max-family whose divergence set has Hausdorff dimension theta and
    splits into a nowhere dense part (Cantor-type nest) and a dense part
    of dimension zero (super-polynomial rational bumps).

    theta = 0 degenerates to the zero-dimension family alone; theta = 1
    uses the constant family n in place of the nest part.
    """
    if not 0 <= theta <= 1:
        raise ParameterError(f"theta must lie in [0, 1], got {theta}")
    z = liouville_family(liouville_params)
    if theta == 0:
        return FunctionFamily(z.domain, z.rule, tag="anydh(theta=0)",
                              min_index=z.min_index, increment=z.increment,
                              value=z.value)
    if theta == 1:
        d = constant_family(z.domain, lambda n: n, tag="linear-constants")
    else:
        d = tietze_family(cantor_nest(CantorParams(theta, eps)),
                          tag=f"cantor-tietze(theta={theta})")
    fam = sum_family(d, z)
    fam.tag = f"anydh(theta={theta})"
    return fam
