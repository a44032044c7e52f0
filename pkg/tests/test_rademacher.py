import random
from fractions import Fraction as F

import pytest

from cantor_ergodic.core import PeriodicPoint, words
from cantor_ergodic.rademacher import (
    PhiMap,
    PremiseViolation,
    coinflip_cylinder,
    f_n,
    min_deviation_coinflip,
    range_decode,
    tail_bound,
)
from cantor_ergodic.selfcheck import brute_min_deviation
from cantor_ergodic.simplefn import SimpleFunction


def series_at(phi, n, bits):
    """Σ_{i<=n} 4^-φ(i) (-1)^{bit i-1}, evaluated directly from a bit string."""
    return sum(F(1, 4 ** phi[i - 1]) * (1 if bits[i - 1] == "0" else -1) for i in range(1, n + 1))


def test_phi_map():
    phi = PhiMap([3, 0, 5])
    assert phi(1) == 3 and phi(3) == 5 and phi.N == 3
    with pytest.raises(ValueError):
        PhiMap([1, 1])
    with pytest.raises(IndexError):
        phi(0)


def test_coinflip():
    assert coinflip_cylinder("") == 1
    assert coinflip_cylinder("0110") == F(1, 16)
    for k in range(8):
        for w in words(k):
            assert coinflip_cylinder(w) == coinflip_cylinder(w + "0") + coinflip_cylinder(w + "1")


def test_f_n_examples():
    phi = PhiMap([2, 0, 3])
    assert f_n(phi, 3)(PeriodicPoint("0")) == F(69, 64)
    assert f_n(phi, 0) == SimpleFunction.constant(0)
    assert f_n(phi, 2)(PeriodicPoint("01")) == F(-15, 16)
    with pytest.raises(ValueError):
        f_n(phi, 4)


def test_f_n_matches_direct_sum():
    rng = random.Random(3)
    for _ in range(30):
        phi = PhiMap(rng.sample(range(9), rng.randint(1, 6)))
        for n in range(len(phi) + 1):
            g = f_n(phi, n)
            assert g.k == n
            for w in words(n):
                assert g.value(w) == series_at(phi, n, w)
        full = f_n(phi, len(phi))
        assert max(abs(v) for v in full.values()) == sum(F(1, 4**v) for v in phi)


def test_tail_bound_examples():
    t = tail_bound(PhiMap([0, 5, 7]), 1, 4)
    assert t == F(1, 4**5) + F(1, 4**7) == F(17, 16384)
    assert t < F(1, 3 * 4**4)
    assert tail_bound(PhiMap([0, 5, 7]), 3, 0) == 0
    with pytest.raises(PremiseViolation) as exc:
        tail_bound(PhiMap([0, 3]), 1, 4)
    assert exc.value.offending == [2]


def test_tail_bound_is_sup_norm():
    rng = random.Random(4)
    for _ in range(30):
        phi = PhiMap(rng.sample(range(9), rng.randint(1, 6)))
        N = len(phi)
        for n in range(N + 1):
            m = min((phi(j) for j in range(n + 1, N + 1)), default=99) - 1
            if m < 0:
                continue
            sup = max(abs(series_at(phi, N, w) - series_at(phi, n, w)) for w in words(N))
            t = tail_bound(phi, n, m)
            assert t == sup
            assert t < F(1, 3 * 4**m) < F(4, 3) / 4**m


def test_min_deviation_coinflip_examples():
    phi = PhiMap([1])
    assert min_deviation_coinflip(phi, 0, F(1, 8))[0] == F(1, 2)
    assert min_deviation_coinflip(phi, 0, F(1, 4))[0] == 0
    phi = PhiMap([3, 0, 5])
    assert min_deviation_coinflip(phi, 3, F(1, 1000))[0] == 0
    assert min_deviation_coinflip(phi, 5, F(1, 1000))[0] == 0


def test_min_deviation_coinflip_against_brute_force():
    rng = random.Random(5)
    for _ in range(20):
        phi = PhiMap(rng.sample(range(7), rng.randint(1, 5)))
        N = len(phi)
        for k in range(N + 1):
            delta = F(1, 4 ** rng.randint(1, 5))
            d, g = min_deviation_coinflip(phi, k, delta)
            w = F(1, 2**N)
            brute = sum(
                brute_min_deviation([(series_at(phi, N, s + t), w) for t in words(N - k)], delta) for s in words(k)
            )
            achieved = sum(w for x in words(N) if abs(g.value(x[:k]) - series_at(phi, N, x)) > delta)
            assert d == brute == achieved
        ds = [min_deviation_coinflip(phi, k, F(1, 64))[0] for k in range(N + 1)]
        assert ds == sorted(ds, reverse=True) and ds[-1] == 0


def test_range_decode_examples():
    phi = PhiMap([3, 0, 5])
    r = range_decode(phi, 3, 5)
    assert r.certified and r.in_range is True
    r = range_decode(phi, 2, 5)
    assert not r.certified and r.in_range is None and r.deviation >= F(1, 2)
    r = range_decode(PhiMap([3]), 1, 7)
    assert r.certified and r.deviation == 0 and r.in_range is False


def test_certification_characterized_by_later_terms():
    rng = random.Random(8)
    for _ in range(25):
        phi = PhiMap(rng.sample(range(11), rng.randint(1, 6)))
        for n in range(len(phi) + 1):
            for m in range(11):
                r = range_decode(phi, n, m)
                later_small = any(phi(j) <= m for j in range(n + 1, len(phi) + 1))
                assert r.certified == (not later_small)
                if r.certified:
                    assert r.in_range == (m in phi)
