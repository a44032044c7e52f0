from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from cantor_ergodic.core import PeriodicPoint, cyclic_shifts
from cantor_ergodic.ergodic import ergodic_average, ergodic_limit, first_n_below, l1_error, limit_function
from cantor_ergodic.machines import Catalog, Clock, Loop
from cantor_ergodic.measures import exact_mixture, support_mu_e


def brute_average(p, n):
    return F(sum(p.bit(i) for i in range(n)), n)


def brute_l1(m, n):
    return sum(mass * abs(brute_average(p, n) - ergodic_limit(p)) for p, mass in m.atoms.items())


def test_ergodic_average_examples():
    p = PeriodicPoint("1" * 5 + "0" * 15, 0)
    assert ergodic_average(p, 5) == 1
    assert ergodic_average(p, 20) == F(1, 4)
    assert all(ergodic_average(PeriodicPoint("0"), n) == 0 for n in (1, 7, 100))
    with pytest.raises(ValueError):
        ergodic_average(p, 0)


def test_ergodic_limit_examples():
    for p in cyclic_shifts("1" * 15 + "0" * 5):
        assert ergodic_limit(p) == F(3, 4)
    assert ergodic_limit(PeriodicPoint("1")) == 1
    assert ergodic_limit(PeriodicPoint("10")) == F(1, 2)


@given(st.text("01", min_size=1, max_size=12), st.integers(0, 20), st.integers(1, 200))
def test_average_matches_bit_count(period, rot, n):
    p = PeriodicPoint(period, rot)
    assert ergodic_average(p, n) == brute_average(p, n)
    assert abs(ergodic_average(p, n) - ergodic_limit(p)) <= F(len(p), n)


@given(st.text("01", min_size=1, max_size=12), st.integers(0, 20), st.integers(1, 10))
def test_average_over_whole_periods_is_the_limit(period, rot, j):
    p = PeriodicPoint(period, rot)
    assert ergodic_average(p, j * len(p)) == ergodic_limit(p)


def test_limit_function_examples():
    assert limit_function(support_mu_e(None)) == {PeriodicPoint("0"): 0, PeriodicPoint("1"): 1}
    vals = list(limit_function(support_mu_e(2)).values())
    assert vals.count(F(1, 4)) == 8 and vals.count(F(3, 4)) == 8
    f = limit_function(exact_mixture(Catalog.of(Loop(), Clock(3))))
    assert f[PeriodicPoint("0")] == 0 and f[PeriodicPoint("1")] == 1
    assert set(f.values()) == {0, 1, F(1, 4), F(3, 4)}


def test_l1_error_examples():
    assert all(l1_error(support_mu_e(None), n) == 0 for n in (1, 5, 50))
    assert l1_error(support_mu_e(5), 20) == 0
    # at n = 1 every atom sits at distance 3/4 or 1/4; a quarter of the mass at 3/4
    assert l1_error(support_mu_e(5), 1) == brute_l1(support_mu_e(5), 1) == F(3, 8)


@pytest.mark.parametrize("s", [1, 3, 6])
def test_l1_error_matches_brute(s):
    m = support_mu_e(s)
    for n in range(1, 3 * 4 * s):
        assert l1_error(m, n) == brute_l1(m, n)


def test_l1_error_eventually_small():
    # l1_error <= max_period / n, so 100 periods always suffice; in practice about 10 do
    for m in (support_mu_e(3), support_mu_e(9), exact_mixture(Catalog.of(Clock(2), Loop(), Clock(5)))):
        p = m.max_period
        assert all(l1_error(m, n) <= F(p, n) for n in range(1, 12 * p))
        last_bad = max(n for n in range(1, 12 * p) if l1_error(m, n) >= F(1, 100))
        assert last_bad < 10 * p
        assert all(l1_error(m, n) < F(1, 100) for n in range(10 * p, 12 * p))


def test_slow_convergence_grows_with_s():
    prev = 0
    for s in range(4, 16):
        n = first_n_below(support_mu_e(s), F(1, 8))
        assert n >= s / 2 and n >= prev
        prev = n
