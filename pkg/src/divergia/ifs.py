"""Contracting similarities on [0, 1] and the two-map Cantor-type nest.

The nest is driven by the pair L(x) = m*(x + eps), R(x) = 1 - L(x) with
m = (1/2)^(1/theta); their images of [0, 1] are disjoint exactly when
2m(1+eps) < 1, and the invariant set has Hausdorff dimension theta.

When theta = 1/k for an integer k >= 2 the ratio m = 2^(-k) is rational
and the whole construction runs on the exact rational backend.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction

from .errors import ConstructionError, ParameterError
from .intervals import IntervalUnion
from .scalars import is_exact


@dataclass(frozen=True)
class Similarity:
    """Affine map x -> ratio * x + offset with |ratio| < 1."""

    ratio: object
    offset: object

    def __post_init__(self):
        if not 0 < abs(self.ratio) < 1:
            raise ParameterError(
                f"similarity ratio must satisfy 0 < |c| < 1, got {self.ratio}")

    def __call__(self, x):
        return self.ratio * x + self.offset

    def image(self, interval):
        a, b = (self(interval[0]), self(interval[1]))
        return (a, b) if a <= b else (b, a)


def _ratio_for(theta):
    """Contraction ratio (1/2)^(1/theta); exact when 1/theta is integral."""
    if not 0 < theta < 1:
        raise ParameterError(f"theta must lie in (0, 1), got {theta}")
    inv = 1 / Fraction(theta) if is_exact(theta) else 1 / theta
    if is_exact(inv) and Fraction(inv).denominator == 1:
        return Fraction(1, 2 ** int(inv))
    if isinstance(inv, float) and inv.is_integer():
        return Fraction(1, 2 ** int(inv))
    return 0.5 ** (1 / theta)


@dataclass(frozen=True)
class CantorParams:
    """Parameters of the two-map construction; eps defaults to the midpoint
    of its admissible interval (0, 1/(2m) - 1)."""

    theta: object
    eps: object = None

    def __post_init__(self):
        m = _ratio_for(self.theta)
        eps = self.eps
        if eps is None:
            eps = (1 / (2 * m) - 1) / 2
        elif is_exact(m):
            eps = Fraction(eps)
        else:
            eps = float(eps)
        if not 0 < eps < 1 / (2 * m) - 1:
            raise ParameterError(
                f"eps must lie in (0, 1/(2m)-1) = (0, {1 / (2 * m) - 1}), "
                f"got {eps}")
        object.__setattr__(self, "eps", eps)

    @property
    def m(self):
        return _ratio_for(self.theta)

    @property
    def exact(self) -> bool:
        return is_exact(self.m)

    @property
    def domain(self):
        one = 1 if self.exact else 1.0
        return (0 * one, one)


def cantor_maps(p: CantorParams):
    """The pair (left, right) of similarities; their images of [0, 1] are
    [m*eps, m*(1+eps)] and its reflection, which are disjoint."""
    m, eps = p.m, p.eps
    left = Similarity(m, m * eps)
    right = Similarity(-m, 1 - m * eps)
    return left, right


def apply_ifs(maps, A: IntervalUnion) -> IntervalUnion:
    """Union of the images of A under all maps (one construction step)."""
    lo, hi = A.domain
    comps = []
    for f in maps:
        for comp in A.components:
            a, b = f.image(comp)
            if a < lo or b > hi:
                raise ConstructionError(
                    f"image [{a}, {b}] escapes domain [{lo}, {hi}]")
            comps.append((a, b))
    return IntervalUnion(A.domain, comps, exact=A.exact)


class CantorNest:
    """Nested closed sets: level 0 is [0, 1], each next level is the image
    of the previous one under both maps.

    Besides materializing whole levels, the nest supports logarithmic-time
    local queries (component of a level containing a point, with its two
    children) by descending the binary address of the point; level n is
    never built for that, which keeps deep evaluations cheap.
    """

    def __init__(self, params: CantorParams):
        self.params = params
        self.left, self.right = cantor_maps(params)
        self._levels = {0: IntervalUnion.full(params.domain,
                                              exact=params.exact)}
        self._lock = threading.Lock()

    def __call__(self, n: int) -> IntervalUnion:
        return self.level(n)

    def level(self, n: int) -> IntervalUnion:
        if n < 0:
            raise ParameterError("level index must be >= 0")
        with self._lock:
            top = max(self._levels)
            while top < n:
                self._levels[top + 1] = apply_ifs(
                    (self.left, self.right), self._levels[top])
                top += 1
            return self._levels[n]

    def measure_level(self, n: int):
        """Exact level measure: (2m)^n."""
        return (2 * self.params.m) ** n

    def fixed_point_left(self):
        """Fixed point of the left map, m*eps/(1-m); lies in every level."""
        m = self.params.m
        return m * self.params.eps / (1 - m)

    def _children(self, ratio, offset):
        """Child intervals of the component that is the image of [0, 1]
        under x -> ratio*x + offset."""
        out = []
        for f in (self.left, self.right):
            c, t = ratio * f.ratio, ratio * f.offset + offset
            a, b = (t, c + t) if c >= 0 else (c + t, t)
            out.append(((c, t), (a, b)))
        out.sort(key=lambda item: item[1][0])
        return out

    def component_and_children(self, n: int, x):
        """Component of level n containing x together with its two child
        components at level n + 1, or None when x is off level n."""
        lo, hi = self.params.domain
        if not lo <= x <= hi:
            raise ParameterError(f"{x} outside domain")
        ratio, offset = (1, 0) if self.params.exact else (1.0, 0.0)
        interval = (lo, hi)
        for _ in range(n):
            for (c, t), (a, b) in self._children(ratio, offset):
                if a <= x <= b:
                    ratio, offset, interval = c, t, (a, b)
                    break
            else:
                return None
        children = [iv for _, iv in self._children(ratio, offset)]
        return interval, children

    def contains(self, n: int, x) -> bool:
        return self.component_and_children(n, x) is not None


def cantor_nest(p: CantorParams) -> CantorNest:
    """Indexed rule n -> level-n set of the construction."""
    return CantorNest(p)


def uniform_cantor(p: CantorParams, n: int) -> IntervalUnion:
    """Level n of the equivalent middle-removal construction.

    Starts from [m*eps/(1-m), 1 - m*eps/(1-m)] and applies both maps; the
    first removed middle has length (1-2m)(1-m-2m*eps)/(1-m), and every
    level is contained in the corresponding level of the plain nest.
    """
    if n < 0:
        raise ParameterError("level index must be >= 0")
    m, eps = p.m, p.eps
    a = m * eps / (1 - m)
    current = IntervalUnion(p.domain, [(a, 1 - a)], exact=p.exact)
    maps = cantor_maps(p)
    for _ in range(n):
        current = apply_ifs(maps, current)
    return current
