"""Quasiarithmetic means over a small closed generator DSL.

A generator F is continuous and strictly monotone; the mean of a tuple is
F^{-1} of the arithmetic mean of the F-values.  The DSL is closed under
four constructors (power, logarithm, scaled exponential, affine image) so
that the curvature ratio F''/F' stays exactly symbolic: it is always of
the form k/x + c, which is what comparability and maximality criteria
consume.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Callable, Sequence

from .errors import ConstructionError, ParameterError
from .funcs import FunctionFamily, PiecewiseLinear
from .scalars import TOL


# ----------------------------------------------------------------------
# generator DSL
# ----------------------------------------------------------------------

class Generator:
    """Base class; subclasses implement evaluation and domain membership."""

    def __call__(self, x) -> float:
        raise NotImplementedError

    def in_domain(self, x) -> bool:
        raise NotImplementedError

    def arrow(self) -> "ArrowExpr":
        """The curvature ratio F''/F' as a symbolic k/x + c expression."""
        raise NotImplementedError


@dataclass(frozen=True)
class Power(Generator):
    """x -> x^p on the positive half-line, p != 0."""

    p: float

    def __post_init__(self):
        if self.p == 0:
            raise ParameterError("power exponent must be nonzero; "
                                 "use Log for the limiting case")

    def __call__(self, x):
        return float(x) ** self.p

    def in_domain(self, x):
        return x > 0

    def arrow(self):
        return ArrowExpr(over_x=self.p - 1, const=0.0)


@dataclass(frozen=True)
class Log(Generator):
    """x -> ln x on the positive half-line."""

    def __call__(self, x):
        return math.log(x)

    def in_domain(self, x):
        return x > 0

    def arrow(self):
        return ArrowExpr(over_x=-1.0, const=0.0)


@dataclass(frozen=True)
class Exp(Generator):
    """x -> e^(c x) with c != 0."""

    c: float

    def __post_init__(self):
        if self.c == 0:
            raise ParameterError("exponential rate must be nonzero")

    def __call__(self, x):
        return math.exp(self.c * float(x))

    def in_domain(self, x):
        return True

    def arrow(self):
        return ArrowExpr(over_x=0.0, const=float(self.c))


@dataclass(frozen=True)
class AffineOf(Generator):
    """a * F + b with a != 0; generates the same mean as F."""

    inner: Generator
    a: float
    b: float = 0.0

    def __post_init__(self):
        if self.a == 0:
            raise ParameterError("affine scale must be nonzero")

    def __call__(self, x):
        return self.a * self.inner(x) + self.b

    def in_domain(self, x):
        return self.inner.in_domain(x)

    def arrow(self):
        return self.inner.arrow()


@dataclass(frozen=True)
class ArrowExpr:
    """Symbolic curvature ratio k/x + c."""

    over_x: float
    const: float

    def __call__(self, x):
        if self.over_x == 0:
            return self.const
        return self.over_x / float(x) + self.const


@dataclass(frozen=True)
class GeneratorFamily:
    """Indexed sequence of generators sharing a compact domain."""

    rule: Callable[[int], Generator]
    domain: tuple

    def __post_init__(self):
        lo, hi = self.domain
        if not lo < hi:
            raise ParameterError("generator family needs lo < hi")


def exp_rate_family(domain=(0.0, 1.0)) -> GeneratorFamily:
    """F_n = Exp(n); the canonical family whose means tend to max."""
    return GeneratorFamily(rule=lambda n: Exp(n), domain=domain)


def power_rate_family(domain=(1.0, 2.0)) -> GeneratorFamily:
    """F_n = Power(n) on a positive domain."""
    return GeneratorFamily(rule=lambda n: Power(n), domain=domain)


def constant_generator_family(gen: Generator, domain) -> GeneratorFamily:
    return GeneratorFamily(rule=lambda n: gen, domain=domain)


# ----------------------------------------------------------------------
# means
# ----------------------------------------------------------------------

def _check_tuple(F: Generator, a: Sequence):
    if not a:
        raise ParameterError("mean of an empty tuple is undefined")
    for v in a:
        if not F.in_domain(v):
            raise ParameterError(f"value {v} outside generator domain")


def qa_mean(F: Generator, a: Sequence, tol: float = 1e-12) -> float:
    """F^{-1} of the arithmetic mean of F-values, by bisection on
    [min(a), max(a)] (strict monotonicity guarantees the bracket).

    For steep exponential generators the common factor e^(c * max(a)) is
    pulled out of both sides before comparing, so the computation stays
    finite for rates far beyond overflow.
    """
    _check_tuple(F, a)
    lo, hi = min(a), max(a)
    if lo == hi:
        return float(lo)

    base = F
    while isinstance(base, AffineOf):
        base = base.inner
    shift = float(hi) if isinstance(base, Exp) else 0.0

    def feval(x):
        if shift:
            return math.exp(base.c * (float(x) - shift))
        return F(x)

    target = math.fsum(feval(v) for v in a) / len(a)
    increasing = feval(hi) > feval(lo)

    lo_f, hi_f = float(lo), float(hi)
    for _ in range(200):
        mid = (lo_f + hi_f) / 2
        val = feval(mid)
        if val == target:
            return mid
        go_right = (val < target) if increasing else (val > target)
        if go_right:
            lo_f = mid
        else:
            hi_f = mid
        if hi_f - lo_f <= tol:
            break
    if not (hi_f - lo_f <= max(tol, TOL * max(abs(lo_f), abs(hi_f), 1.0))):
        raise ConstructionError(
            "bisection bracket failed to close; the generator violates "
            "strict monotonicity on the tuple range")
    return (lo_f + hi_f) / 2


def power_mean(p, a: Sequence) -> float:
    """Closed-form p-th power mean (geometric mean at p = 0)."""
    if not a:
        raise ParameterError("mean of an empty tuple is undefined")
    for v in a:
        if not v > 0:
            raise ParameterError(f"power mean needs positive entries, got {v}")
    vals = [float(v) for v in a]
    if p == 0:
        return math.exp(math.fsum(math.log(v) for v in vals) / len(vals))
    p = float(p)
    return (math.fsum(v ** p for v in vals) / len(vals)) ** (1 / p)


# ----------------------------------------------------------------------
# maximality criteria
# ----------------------------------------------------------------------

def ratio_condition(F: GeneratorFamily, x, y, z, n: int) -> float:
    """The quotient (F_n(x) - F_n(y)) / (F_n(z) - F_n(y)); it tends to 0
    for all x < y < z exactly when the means tend to max."""
    if not x < y < z:
        raise ParameterError("need x < y < z")
    gen = F.rule(n)
    base = gen
    while isinstance(base, AffineOf):
        base = base.inner
    if isinstance(base, Exp):
        # factor out e^(c z): same quotient, overflow-free
        c = base.c
        ex = math.exp(c * (float(x) - float(z)))
        ey = math.exp(c * (float(y) - float(z)))
        num, den = ex - ey, 1.0 - ey
    else:
        num = gen(x) - gen(y)
        den = gen(z) - gen(y)
    if den == 0:
        raise ConstructionError(
            "zero denominator: generator is not strictly monotone")
    return num / den


@dataclass(frozen=True)
class RatioReport:
    quotients: tuple          # (n, value)
    tol: float
    qa_maximal_indicator: bool

    def __bool__(self):
        return self.qa_maximal_indicator


def ratio_report(F: GeneratorFamily, x, y, z, n_max: int,
                 tol: float = 1e-4) -> RatioReport:
    """Convergence report of the quotient over n <= n_max; the family is
    tagged as a max-mean indicator when |quotient| falls below tol."""
    qs = tuple((n, ratio_condition(F, x, y, z, n))
               for n in range(1, n_max + 1))
    ok = abs(qs[-1][1]) < tol
    return RatioReport(quotients=qs, tol=tol, qa_maximal_indicator=ok)


def arrow_family(F: GeneratorFamily, knot_budget: int = 129) -> FunctionFamily:
    """Piecewise-linear interpolations of the curvature ratios F_n''/F_n'
    on a uniform knot grid, ready for integral-growth checks.

    Requires the ratios to be pointwise nondecreasing in n on the grid
    (equivalent to the means being nondecreasing); the second-difference
    interpolation error bound is recorded per index in ``family.info``.
    """
    if knot_budget < 3:
        raise ParameterError("knot budget must be at least 3")
    lo, hi = F.domain
    xs = [lo + (hi - lo) * k / (knot_budget - 1)
          for k in range(knot_budget)]
    info = {}
    memo = {}

    def interpolant(n):
        if n not in memo:
            arrow = F.rule(n).arrow()
            ys = [arrow(x) for x in xs]
            second = max((abs(ys[i - 1] - 2 * ys[i] + ys[i + 1])
                          for i in range(1, len(ys) - 1)), default=0.0)
            info[("interp_error", n)] = second / 2
            memo[n] = PiecewiseLinear(xs, ys)
        return memo[n]

    def rule(n):
        cur = interpolant(n)
        if n > 1:
            prev = interpolant(n - 1)
            for x, a, b in zip(cur.xs, prev.ys, cur.ys):
                if b < a - TOL:
                    raise ConstructionError(
                        f"curvature ratios decrease from index {n - 1} to "
                        f"{n} at x = {x}")
        return cur

    # uniform lower bound hypothesis is observable, never assumed
    info["lower_bound_note"] = (
        "integral criterion additionally needs the curvature ratios to be "
        "uniformly bounded below; check min values over the indices you use")
    return FunctionFamily((lo, hi), rule, tag="curvature-ratio", min_index=1,
                          value=lambda n, x: F.rule(n).arrow()(x), info=info)


@dataclass(frozen=True)
class ComparabilityVerdict:
    relation: str             # "<=", ">=", "==", or "incomparable"
    arrow_le: bool
    arrow_ge: bool
    mean_checks_agree: bool

    def __str__(self):
        if self.relation == "incomparable":
            return "means are not comparable on this domain"
        return f"QA_F {self.relation} QA_G"


def comparability(F: Generator, G: Generator, grid,
                  tuples: int = 100, seed: int = 0) -> ComparabilityVerdict:
    """Order the two means by comparing curvature ratios on the grid, and
    cross-validate on random tuples (the checkable face of the Jensen
    comparison)."""
    grid = list(grid)
    if not grid:
        raise ParameterError("need a nonempty grid")
    af, ag = F.arrow(), G.arrow()
    le = all(af(x) <= ag(x) + TOL for x in grid)
    ge = all(ag(x) <= af(x) + TOL for x in grid)
    relation = {(True, True): "==", (True, False): "<=",
                (False, True): ">="}.get((le, ge), "incomparable")

    rng = random.Random(seed)
    lo, hi = min(grid), max(grid)
    agree = True
    if relation != "incomparable":
        for _ in range(tuples):
            k = rng.randint(2, 5)
            a = [lo + (hi - lo) * rng.random() for _ in range(k)]
            mf, mg = qa_mean(F, a), qa_mean(G, a)
            if relation in ("<=", "==") and mf > mg + 1e-8:
                agree = False
                break
            if relation in (">=", "==") and mg > mf + 1e-8:
                agree = False
                break
    return ComparabilityVerdict(relation=relation, arrow_le=le, arrow_ge=ge,
                                mean_checks_agree=agree)
