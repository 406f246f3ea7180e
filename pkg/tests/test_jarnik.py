import math
import random
from fractions import Fraction

import pytest

from divergia import (JarnikParams, LiouvilleParams, ParameterError,
                      jarnik_family, liouville_family, y_set, z_set)

GOLDEN = (math.sqrt(5) - 1) / 2


# ----------------------------------------------------------------------
# neighborhood sets
# ----------------------------------------------------------------------

def test_y_set_structure_small_q():
    Y = y_set(2, 4)
    # centers 0, 1/2, 1 with radius 2^-4
    assert Y.components == ((0, Fraction(1, 16)),
                            (Fraction(7, 16), Fraction(9, 16)),
                            (Fraction(15, 16), 1))


def test_z_radius_over_y_radius():
    # fattening factor is (q+1)/q: 3/2 at q = 2
    y = y_set(2, 4).components[1]
    z = z_set(2, 4).components[1]
    ry = (y[1] - y[0]) / 2
    rz = (z[1] - z[0]) / 2
    assert rz / ry == Fraction(3, 2)


def test_y_inside_relative_interior_of_z():
    for q in range(1, 51):
        assert y_set(q, 4).subset_of_relative_interior(z_set(q, 4))


def test_sandwich_inclusion():
    # (q+1)/q * q^-3 <= q^-2 needs q >= 2; at q = 1 both sets are full
    for q in range(1, 51):
        assert z_set(q, 4).subset_of(y_set(q, 3))
    assert z_set(1, 4).measure() == 1 and y_set(1, 3).measure() == 1


def test_alpha_must_exceed_two():
    with pytest.raises(ParameterError):
        y_set(3, 2)
    with pytest.raises(ParameterError):
        z_set(3, Fraction(3, 2))


def test_q_must_be_positive():
    with pytest.raises(ParameterError):
        y_set(0, 4)


def test_exact_backend_for_integral_alpha():
    assert y_set(3, 4).exact
    assert not y_set(3, 4.5).exact


# ----------------------------------------------------------------------
# well-approximable family
# ----------------------------------------------------------------------

@pytest.fixture(scope="module")
def jfam():
    return jarnik_family(JarnikParams(Fraction(1, 2), q_max=100))


def test_params_alpha0():
    assert JarnikParams(Fraction(1, 2)).alpha0 == 4
    assert JarnikParams(Fraction(1, 4)).alpha0 == 8
    with pytest.raises(ParameterError):
        JarnikParams(Fraction(3, 2))


def test_rule_is_sum_of_increments(jfam):
    r3 = jfam.rule(3)
    s = jfam.increment(2).add(jfam.increment(3)).add(jfam.rule(1))
    for x in sorted(set(r3.xs) | set(s.xs)):
        assert r3.eval(x) == s.eval(x)


def test_fast_value_matches_materialized(jfam):
    rng = random.Random(47)
    r5 = jfam.rule(5)
    pts = [Fraction(rng.randint(0, 2000), 2000) for _ in range(80)]
    for x in pts:
        assert jfam.value(5, x) == r5.eval(x)


def test_value_at_one_half_counts_even_denominators(jfam):
    # every even q <= n contributes a full bump at 1/2, plus the merged
    # q = 1 level
    for n in (2, 10, 30):
        assert jfam.value(n, Fraction(1, 2)) == n // 2 + 1


def test_golden_ratio_grows_slowly(jfam):
    # bounded partial quotients keep the golden ratio out of every thin
    # neighborhood beyond q = 1, so r_n sticks at 1
    for n in range(3, 101):
        assert jfam.value(n, GOLDEN) < n / 2
    assert jfam.value(100, GOLDEN) == 1


def test_q_max_enforced(jfam):
    with pytest.raises(ParameterError):
        jfam.rule(101)
    with pytest.raises(ParameterError):
        jfam.value(101, Fraction(1, 2))


def test_step_bound_dominates_level_integral(jfam):
    for q in range(2, 20):
        inc = jfam.increment(q)
        assert float(inc.integral(0, 1)) <= jfam.step_bound(q) + 1e-12


# ----------------------------------------------------------------------
# zero-dimension family
# ----------------------------------------------------------------------

@pytest.fixture(scope="module")
def lfam():
    return liouville_family(LiouvilleParams())


def test_liouville_width_decays_superpolynomially():
    p = LiouvilleParams()
    for alpha in (3, 4, 6):
        q0 = math.ceil(math.exp(alpha))
        for q in range(q0, q0 + 20):
            assert p.width(q) <= q ** (-alpha)


def test_liouville_height_times_width_is_one():
    p = LiouvilleParams()
    for q in (2, 3, 10, 50):
        assert p.width(q) * p.height(q) == pytest.approx(1.0)


def test_liouville_level_integrals(lfam):
    # interior bumps integrate to 1.5, the two boundary bumps to 0.75,
    # so level q adds 1.5(q+1) - 1.5 = 1.5q for q >= 2
    for q in (2, 3, 5, 10):
        assert lfam.increment(q).integral(0, 1) == pytest.approx(1.5 * q)
    for n in (1, 2, 3, 5, 10):
        total = lfam.rule(n).integral(0, 1)
        assert total >= sum(range(1, n + 1))


def test_liouville_fast_value_matches_materialized(lfam):
    rng = random.Random(53)
    r6 = lfam.rule(6)
    for _ in range(60):
        x = rng.random()
        assert lfam.value(6, x) == pytest.approx(r6.eval(x), abs=1e-9)


def test_liouville_value_at_rationals_blows_up(lfam):
    # at 1/2 the level q = 2 bump contributes its full height 8
    assert lfam.value(2, 0.5) == pytest.approx(1 + 8)
    assert lfam.value(4, 0.5) == pytest.approx(1 + 8 + 64)


def test_golden_ratio_stays_small(lfam):
    # badly approximable: only the q = 1 and q = 2 levels ever touch the
    # golden ratio, capping the values below 2 for all n <= 50
    vals = [lfam.value(n, GOLDEN) for n in range(1, 51)]
    assert max(vals) < 2
    assert vals[0] == pytest.approx(1.0)


def test_liouville_q_max_cap():
    with pytest.raises(ParameterError):
        LiouvilleParams(q_max=501)
    with pytest.raises(ParameterError):
        liouville_family(LiouvilleParams(q_max=5)).rule(6)
