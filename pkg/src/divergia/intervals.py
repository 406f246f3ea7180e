"""Exact set algebra over finite unions of closed subintervals of [lo, hi].

An IntervalUnion is kept in canonical form: components sorted, pairwise
disjoint and strictly separated (touching or overlapping components are
merged).  Degenerate components [a, a] are allowed; they contribute zero
measure.  On the float backend, components whose gap is below TOL are
merged to avoid spurious slivers.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass, field

from .errors import DomainMismatchError, ParameterError
from .scalars import TOL, format_scalar, is_exact, parse_scalar


def _canonicalize(components, lo, hi, exact):
    comps = []
    gap = 0 if exact else TOL
    for a, b in sorted(components):
        if b < a:
            raise ParameterError(f"interval [{a}, {b}] has negative length")
        if a < lo or b > hi:
            if exact or a < lo - TOL or b > hi + TOL:
                raise ParameterError(
                    f"component [{a}, {b}] escapes domain [{lo}, {hi}]")
            a, b = max(a, lo), min(b, hi)
        if comps and a <= comps[-1][1] + gap:
            comps[-1] = (comps[-1][0], max(comps[-1][1], b))
        else:
            comps.append((a, b))
    return tuple(comps)


@dataclass(frozen=True)
class IntervalUnion:
    """Finite disjoint union of closed intervals inside a fixed domain."""

    domain: tuple
    components: tuple = field(default=())
    exact: bool = field(default=True)

    def __init__(self, domain, components=(), exact=None):
        lo, hi = domain
        if not lo < hi:
            raise ParameterError(f"domain [{lo}, {hi}] must have lo < hi")
        components = [tuple(c) for c in components]
        if exact is None:
            exact = is_exact(lo) and is_exact(hi) and all(
                is_exact(a) and is_exact(b) for a, b in components)
        object.__setattr__(self, "domain", (lo, hi))
        object.__setattr__(self, "exact", exact)
        object.__setattr__(
            self, "components", _canonicalize(components, lo, hi, exact))

    # -- constructors ---------------------------------------------------

    @classmethod
    def empty(cls, domain, exact=None):
        return cls(domain, (), exact=exact)

    @classmethod
    def full(cls, domain, exact=None):
        return cls(domain, (tuple(domain),), exact=exact)

    # -- basic queries --------------------------------------------------

    @property
    def lo(self):
        return self.domain[0]

    @property
    def hi(self):
        return self.domain[1]

    def is_empty(self) -> bool:
        return not self.components

    def measure(self):
        """Total length of all components (0 for the empty set)."""
        return sum((b - a for a, b in self.components), 0)

    def contains_point(self, x) -> bool:
        i = bisect.bisect_right([a for a, _ in self.components], x)
        if i == 0:
            return False
        a, b = self.components[i - 1]
        return a <= x <= b

    def distance_to_point(self, x):
        """Distance from x to the nearest point of the set (inf if empty)."""
        if not self.components:
            return float("inf")
        best = None
        i = bisect.bisect_right([a for a, _ in self.components], x)
        for j in (i - 1, i):
            if 0 <= j < len(self.components):
                a, b = self.components[j]
                d = max(a - x, x - b, 0)
                best = d if best is None else min(best, d)
        return best

    def _require_same_domain(self, other: "IntervalUnion"):
        if self.domain != other.domain:
            raise DomainMismatchError(
                f"domains differ: {self.domain} vs {other.domain}")

    # -- set algebra ----------------------------------------------------

    def union(self, other: "IntervalUnion") -> "IntervalUnion":
        self._require_same_domain(other)
        return IntervalUnion(self.domain,
                             self.components + other.components,
                             exact=self.exact and other.exact)

    def intersect(self, other: "IntervalUnion") -> "IntervalUnion":
        self._require_same_domain(other)
        out = []
        i = j = 0
        a_comps, b_comps = self.components, other.components
        while i < len(a_comps) and j < len(b_comps):
            a1, b1 = a_comps[i]
            a2, b2 = b_comps[j]
            left, right = max(a1, a2), min(b1, b2)
            if left <= right:
                out.append((left, right))
            if b1 < b2:
                i += 1
            else:
                j += 1
        return IntervalUnion(self.domain, out,
                             exact=self.exact and other.exact)

    def complement(self) -> "IntervalUnion":
        """Closure of the set complement within the domain."""
        lo, hi = self.domain
        out = []
        cursor = lo
        for a, b in self.components:
            if a > cursor:
                out.append((cursor, a))
            cursor = max(cursor, b)
        if cursor < hi:
            out.append((cursor, hi))
        return IntervalUnion(self.domain, out, exact=self.exact)

    def subset_of(self, other: "IntervalUnion") -> bool:
        self._require_same_domain(other)
        starts = [a for a, _ in other.components]
        for a, b in self.components:
            i = bisect.bisect_right(starts, a)
            if i == 0:
                return False
            c, d = other.components[i - 1]
            tol = 0 if (self.exact and other.exact) else TOL
            if a < c - tol or b > d + tol:
                return False
        return True

    def subset_of_relative_interior(self, other: "IntervalUnion") -> bool:
        """True iff every component of self sits strictly inside a component
        of other, except at sides where other reaches a domain endpoint
        (interior is taken relative to the domain)."""
        self._require_same_domain(other)
        lo, hi = self.domain
        tol = 0 if (self.exact and other.exact) else TOL
        starts = [a for a, _ in other.components]
        for a, b in self.components:
            i = bisect.bisect_right(starts, a)
            if i == 0:
                return False
            c, d = other.components[i - 1]
            if b > d + tol:
                return False
            left_ok = (c < a - tol) or (c <= lo + tol)
            right_ok = (b < d - tol) or (d >= hi - tol)
            if not (left_ok and right_ok):
                return False
        return True

    # -- serialization --------------------------------------------------

    def to_json(self) -> dict:
        return {
            "domain": [format_scalar(self.lo), format_scalar(self.hi)],
            "components": [[format_scalar(a), format_scalar(b)]
                           for a, b in self.components],
        }

    @classmethod
    def from_json(cls, doc: dict) -> "IntervalUnion":
        lo, hi = (parse_scalar(v) for v in doc["domain"])
        comps = [(parse_scalar(a), parse_scalar(b))
                 for a, b in doc["components"]]
        return cls((lo, hi), comps)


def hausdorff_distance(A: IntervalUnion, B: IntervalUnion):
    """Hausdorff distance between two nonempty closed interval unions.

    The directed distance sup_{x in A} d(x, B) is attained either at a
    component endpoint of A or at a gap midpoint of B lying inside A.
    """
    A._require_same_domain(B)
    if A.is_empty() and B.is_empty():
        return 0
    if A.is_empty() or B.is_empty():
        raise ParameterError("Hausdorff distance needs both sets nonempty")

    def directed(src, dst):
        candidates = [p for comp in src.components for p in comp]
        for i in range(len(dst.components) - 1):
            gap_mid = (dst.components[i][1] + dst.components[i + 1][0]) / 2
            if src.contains_point(gap_mid):
                candidates.append(gap_mid)
        return max(dst.distance_to_point(x) for x in candidates)

    return max(directed(A, B), directed(B, A))
