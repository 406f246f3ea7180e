"""Scalar backend helpers.

Values are either exact rationals (int / fractions.Fraction, closed under
+, * and comparison) or binary floats compared with absolute tolerance TOL.
Containers are homogeneous in one backend; mixing an exact value with a
float silently demotes the computation to the float backend, which matches
Python's own numeric promotion rules.
"""

from __future__ import annotations

from fractions import Fraction

#: absolute tolerance for float-backend comparisons
TOL = 1e-12

Scalar = object  # int | Fraction | float; kept loose on purpose


def is_exact(x) -> bool:
    return isinstance(x, (int, Fraction)) and not isinstance(x, bool)


def all_exact(values) -> bool:
    return all(is_exact(v) for v in values)


def eq(a, b, exact: bool) -> bool:
    if exact:
        return a == b
    return abs(a - b) <= TOL


def leq(a, b, exact: bool) -> bool:
    if exact:
        return a <= b
    return a <= b + TOL


def lt(a, b, exact: bool) -> bool:
    """Strictly less, beyond tolerance on the float backend."""
    if exact:
        return a < b
    return a < b - TOL


def format_scalar(x) -> object:
    """JSON representation: exact values as "p/q" strings, floats as numbers."""
    if is_exact(x):
        f = Fraction(x)
        return f"{f.numerator}/{f.denominator}"
    return float(x)


def parse_scalar(v) -> object:
    """Inverse of format_scalar; also accepts plain ints and decimal strings."""
    if isinstance(v, str):
        if "/" in v:
            num, den = v.split("/")
            return Fraction(int(num), int(den))
        return Fraction(v)
    if isinstance(v, int):
        return v
    return float(v)
