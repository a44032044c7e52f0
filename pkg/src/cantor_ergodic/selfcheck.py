"""Invariant suites run by ``cantor-ergodic selfcheck`` and the acceptance tests.

Each suite compares a fast path against an independent brute-force route
with exact rationals, and returns a :class:`CheckResult`. Random instances
come from fixed seeds, so results are reproducible.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .approx import deviation_closed_form, min_deviation
from .core import words
from .ergodic import first_n_below, l1_error, limit_function
from .machines import Catalog, CatalogEntry, Clock, Loop
from .measures import (
    FiniteSupportMeasure,
    check_shift_invariance,
    exact_mixture,
    mu_e_closed_form,
    mu_e_eval,
    mu_e_eval_with_run,
    support_mu_e,
)
from .rademacher import PhiMap, f_n, min_deviation_coinflip, range_decode, tail_bound
from .reduction import CheatingBoundOracle, PaddedOracle, decide_halting

__all__ = ["CheckResult", "SUITES", "run_all", "random_catalog", "brute_min_deviation"]


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.name}: {self.detail}"


def random_catalog(rng: random.Random, max_len: int = 8, max_s: int = 30) -> Catalog:
    entries = []
    for _ in range(rng.randint(1, max_len)):
        if rng.random() < 0.35:
            entries.append(CatalogEntry(Loop(), True, None))
        else:
            s = rng.randint(1, max_s)
            entries.append(CatalogEntry(Clock(s), True, s))
    return Catalog(tuple(entries))


def brute_min_deviation(pairs, delta) -> Fraction:
    """Minimum uncovered mass over the candidate centres ``v + delta``.

    An optimal window can slide right until its left end meets an atom
    value, so its centre is among these candidates.
    """
    agg: dict = {}
    for v, w in pairs:
        agg[v] = agg.get(v, 0) + w
    if not agg:
        return Fraction(0)
    return min(sum((w for v, w in agg.items() if abs(v - c) > delta), Fraction(0)) for c in {v + delta for v in agg})


def closed_form_vs_enumeration() -> CheckResult:
    rng = random.Random(1)
    checked = 0
    for s in range(2, 41):
        m = support_mu_e(s)
        for k in range(1, s):
            if k <= 8:
                sample = list(words(k))
            else:
                sample = ["".join(rng.choice("01") for _ in range(k)) for _ in range(200)]
                # make sure the positive-mass shapes are represented
                sample += ["0" * k, "1" * k, "1" * (k // 2) + "0" * (k - k // 2), "0" * (k - 1) + "1"]
            for sigma in sample:
                checked += 1
                if mu_e_closed_form(s, sigma) != m.cylinder(sigma):
                    return CheckResult("1 closed form = enumeration", False, f"s={s} sigma={sigma}")
    return CheckResult("1 closed form = enumeration", True, f"{checked} (s, sigma) pairs, exact")


def _axiom_measures() -> list[tuple[str, FiniteSupportMeasure]]:
    rng = random.Random(2)
    out = [("never", support_mu_e(None))]
    out += [(f"halted_at({s})", support_mu_e(s)) for s in range(1, 21)]
    for i in range(5):
        out.append((f"mixture#{i}", exact_mixture(random_catalog(rng, max_len=5, max_s=20))))
    return out


def measure_axioms() -> CheckResult:
    measures = _axiom_measures()
    for name, m in measures:
        if m.cylinder("") != 1:
            return CheckResult("2 measure axioms", False, f"{name}: total mass {m.cylinder('')}")
        for k in range(8):
            for sigma in words(k):
                if m.cylinder(sigma) != m.cylinder(sigma + "0") + m.cylinder(sigma + "1"):
                    return CheckResult("2 measure axioms", False, f"{name}: additivity at {sigma!r}")
        if not check_shift_invariance(m, 8):
            return CheckResult("2 measure axioms", False, f"{name}: not shift invariant")
    return CheckResult("2 measure axioms", True, f"{len(measures)} measures: mass 1, additive, shift invariant to k=8")


def oracle_soundness() -> CheckResult:
    machines = [(Clock(s), s) for s in range(1, 41)] + [(Loop(), None)]
    sigmas = [w for k in range(9) for w in words(k)]
    checked = 0
    for machine, s in machines:
        truth_m = support_mu_e(s)
        for eps in (Fraction(1, 4), Fraction(1, 16), Fraction(1, 256)):
            for sigma in sigmas:
                iv = mu_e_eval(machine, sigma, eps)
                checked += 1
                if not iv.contains(truth_m.cylinder(sigma)) or iv.width > eps:
                    return CheckResult("3 oracle soundness", False, f"{machine} sigma={sigma!r} eps={eps}: {iv}")
    iv, res = mu_e_eval_with_run(Clock(1000), "1", Fraction(1, 2))
    truth = support_mu_e(1000).cylinder("1")
    if res.halted or res.steps >= 1000 or not iv.contains(truth) or iv.width > Fraction(1, 2):
        return CheckResult("3 oracle soundness", False, f"clock(1000) shortcut failed: {iv} {res}")
    return CheckResult(
        "3 oracle soundness", True, f"{checked} enclosures sound; clock(1000) settled after {res.steps} steps"
    )


def ergodic_limits() -> CheckResult:
    name = "4 ergodic limits"
    for s in range(1, 21):
        m = support_mu_e(s)
        f = limit_function(m)
        low = {p for p in m.atoms if p.period.count("1") == s}
        if len(low) != 4 * s or len(m.atoms) != 8 * s:
            return CheckResult(name, False, f"s={s}: unexpected support size")
        for p, v in f.items():
            if v != (Fraction(1, 4) if p in low else Fraction(3, 4)):
                return CheckResult(name, False, f"s={s}: f({p}) = {v}")
        for n in range(1, 501):
            if l1_error(m, n) > Fraction(4 * s, n):
                return CheckResult(name, False, f"s={s} n={n}: l1 error above 4s/n")
    prev = 0
    firsts = {}
    for s in range(4, 41):
        n = first_n_below(support_mu_e(s), Fraction(1, 8))
        firsts[s] = n
        if n < Fraction(s, 2) or n < prev:
            return CheckResult(name, False, f"s={s}: first n with error < 1/8 is {n} (previous {prev})")
        prev = n
    return CheckResult(
        name, True, f"f in {{1/4, 3/4}} for s<=20; first n with error<1/8: s=4 -> {firsts[4]}, s=40 -> {firsts[40]}"
    )


def deviation_profile() -> CheckResult:
    name = "5 deviation profile"
    delta = Fraction(1, 8)
    for s in range(3, 13):
        m = support_mu_e(s)
        f = limit_function(m)
        for k in range(1, 2 * s + 3):
            d, witness = min_deviation(m, f, k, delta)
            expected = deviation_closed_form(s, k)
            brute = sum(
                (brute_min_deviation([(f[p], w) for p, w in atoms], delta) for atoms in m.groups(k).values()),
                Fraction(0),
            )
            achieved = sum((w for p, w in m.atoms.items() if abs(f[p] - witness(p)) > delta), Fraction(0))
            if not d == expected == brute == achieved:
                return CheckResult(name, False, f"s={s} k={k}: {d} / {expected} / {brute} / {achieved}")
            if k <= s + 1 and d != Fraction(1, 4):
                return CheckResult(name, False, f"s={s} k={k}: deviation {d} != 1/4")
    return CheckResult(name, True, "exact match for s in 3..12, k in 1..2s+2; D(k) = 1/4 exactly for k <= s+1")


def halting_reduction() -> CheckResult:
    name = "6 halting reduction"
    rng = random.Random(6)
    verdicts = 0
    for _ in range(20):
        catalog = random_catalog(rng)
        oracle = CheatingBoundOracle(catalog)
        for orc in (oracle, PaddedOracle(oracle, 7)):
            for e in range(len(catalog)):
                v = decide_halting(orc, catalog, e)
                verdicts += 1
                if not v.match:
                    return CheckResult(name, False, f"wrong verdict {v}")
                s = catalog[e].halts_at
                if s is not None and not 3 * s <= 2 * v.k - 2:
                    return CheckResult(name, False, f"s={s} exceeds (2k-2)/3 with k={v.k}")
    return CheckResult(name, True, f"20 catalogs, {verdicts} verdicts correct (exact and +7 padded oracles)")


def _brute_coinflip(phi: PhiMap, k: int, delta: Fraction) -> Fraction:
    N = len(phi)
    f = f_n(phi, N)
    if k >= N:
        return Fraction(0)
    w = Fraction(1, 2 ** N)
    return sum(
        (brute_min_deviation([(f.value(sigma + t), w) for t in words(N - k)], delta) for sigma in words(k)),
        Fraction(0),
    )


def rademacher_decoding() -> CheckResult:
    name = "7 rademacher decoding"
    rng = random.Random(7)
    premise_pairs = other_pairs = 0
    for _ in range(50):
        N = rng.randint(1, 6)
        phi = PhiMap(rng.sample(range(11), N))
        f_full = f_n(phi, N)
        for n in range(N + 1):
            fn = f_n(phi, n).refine(N)
            sup = max(abs(a - b) for a, b in zip(f_full.values(), fn.values()))
            for m in range(11):
                delta = Fraction(1, 4 ** (m + 1))
                res = range_decode(phi, n, m)
                brute = _brute_coinflip(phi, n, delta)
                if res.deviation != brute:
                    return CheckResult(name, False, f"phi={phi} n={n} m={m}: deviation {res.deviation} != {brute}")
                premise = all(phi(j) > m for j in range(n + 1, N + 1))
                if res.certified != premise:
                    return CheckResult(name, False, f"phi={phi} n={n} m={m}: certified={res.certified}")
                if res.certified and res.in_range != (m in phi):
                    return CheckResult(name, False, f"phi={phi} n={n} m={m}: decoded {res.in_range}")
                if not premise:
                    other_pairs += 1
                    continue
                premise_pairs += 1
                if res.in_range != (m in phi.image(n)):
                    return CheckResult(name, False, f"phi={phi} n={n} m={m}: decoded {res.in_range}")
                tail = tail_bound(phi, n, m)
                exact = sum((Fraction(1, 4 ** phi(j)) for j in range(n + 1, N + 1)), Fraction(0))
                if not (tail == exact == sup and tail < Fraction(4, 3) / 4**m and tail < Fraction(1, 3 * 4**m)):
                    return CheckResult(name, False, f"phi={phi} n={n} m={m}: tail {tail}")
    return CheckResult(
        name,
        True,
        f"{premise_pairs} premise pairs decoded correctly; {other_pairs} pairs outside the premise uncertified",
    )


SUITES: list[Callable[[], CheckResult]] = [
    closed_form_vs_enumeration,
    measure_axioms,
    oracle_soundness,
    ergodic_limits,
    deviation_profile,
    halting_reduction,
    rademacher_decoding,
]


def run_all() -> list[CheckResult]:
    return [suite() for suite in SUITES]
