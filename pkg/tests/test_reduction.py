import random
from fractions import Fraction as F

import pytest

from cantor_ergodic.approx import l1_distance, median_approximation
from cantor_ergodic.machines import Catalog, CatalogEntry, Clock, Loop
from cantor_ergodic.reduction import CheatingBoundOracle, PaddedOracle, decide_halting, epsilon_for
from cantor_ergodic.selfcheck import random_catalog


def test_epsilon_for():
    assert epsilon_for(0) == F(1, 128)
    assert epsilon_for(3) == F(1, 1024)
    assert all(epsilon_for(e + 1) / epsilon_for(e) == F(1, 2) for e in range(10))


def test_single_clock():
    cat = Catalog.of(Clock(5))
    v = decide_halting(CheatingBoundOracle(cat), cat, 0)
    assert v.halts and v.halted_at == 5 and v.k >= 9 and v.budget == v.k
    assert v.match


def test_single_loop():
    cat = Catalog.of(Loop())
    oracle = CheatingBoundOracle(cat)
    assert oracle.bound(F(1, 4)) <= 1
    v = decide_halting(oracle, cat, 0)
    assert not v.halts and v.match


def test_clock5_needs_high_complexity():
    oracle = CheatingBoundOracle(Catalog.of(Clock(5)))
    assert oracle.bound(F(1, 128)) >= 11


def test_mixed_catalog():
    cat = Catalog.of(Loop(), Clock(3), Clock(12), Loop())
    oracle = CheatingBoundOracle(cat)
    verdicts = [decide_halting(oracle, cat, e) for e in range(4)]
    assert [v.halts for v in verdicts] == [False, True, True, False]
    assert all(v.match for v in verdicts)


def test_bound_is_least_and_valid():
    cat = Catalog.of(Clock(2), Loop(), Clock(4))
    oracle = CheatingBoundOracle(cat)
    for eps in (F(1, 4), F(1, 16), F(1, 128), F(1, 1024)):
        k = oracle.bound(eps)
        m, f = oracle.measure, oracle.f
        assert l1_distance(m, f, median_approximation(m, f, k)) < eps
        if k > 0:
            assert l1_distance(m, f, median_approximation(m, f, k - 1)) >= eps


def test_bound_monotone_in_eps():
    oracle = CheatingBoundOracle(Catalog.of(Clock(7), Loop(), Clock(3)))
    ks = [oracle.bound(F(1, 2**j)) for j in range(1, 12)]
    assert ks == sorted(ks)


def test_soundness_and_margin_on_random_catalogs():
    rng = random.Random(11)
    for _ in range(8):
        cat = random_catalog(rng, max_len=6, max_s=20)
        oracle = CheatingBoundOracle(cat)
        for orc in (oracle, PaddedOracle(oracle, 7)):
            for e in range(len(cat)):
                v = decide_halting(orc, cat, e)
                assert v.match
                if cat[e].halts_at is not None:
                    assert 3 * cat[e].halts_at <= 2 * v.k - 2


def test_errors():
    cat = Catalog.of(Clock(2))
    with pytest.raises(IndexError):
        decide_halting(CheatingBoundOracle(cat), cat, 1)
    with pytest.raises(ValueError):
        CheatingBoundOracle(Catalog((CatalogEntry(Clock(2)),)))
    with pytest.raises(ValueError):
        epsilon_for(-1)
