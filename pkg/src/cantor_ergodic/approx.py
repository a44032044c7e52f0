"""Best approximation of a limit function by simple functions of bounded complexity."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable

from .measures import FiniteSupportMeasure
from .simplefn import SimpleFunction

__all__ = [
    "best_window",
    "complexity_bound",
    "conditional_expectation",
    "deviation_closed_form",
    "deviation_profile",
    "l1_distance",
    "median_approximation",
    "min_deviation",
]


def best_window(pairs: Iterable[tuple[Fraction, Fraction]], delta: Fraction) -> tuple[Fraction, Fraction]:
    """Place one value ``c`` to maximize the mass of values ``v`` with ``|v - c| <= delta``.

    ``pairs`` are ``(value, mass)``. Returns ``(covered_mass, c)``; among
    optimal windows the leftmost wins and ``c`` is its midpoint.
    """
    agg: dict[Fraction, Fraction] = {}
    for v, mass in pairs:
        agg[v] = agg.get(v, Fraction(0)) + mass
    vals = sorted(agg)
    if not vals:
        return Fraction(0), Fraction(0)
    best, best_lo, best_hi = Fraction(-1), 0, 0
    covered, j = Fraction(0), 0
    for i, lo in enumerate(vals):
        while j < len(vals) and vals[j] - lo <= 2 * delta:
            covered += agg[vals[j]]
            j += 1
        if covered > best:
            best, best_lo, best_hi = covered, i, j - 1
        covered -= agg[lo]
    return best, (vals[best_lo] + vals[best_hi]) / 2


def min_deviation(m: FiniteSupportMeasure, f: dict, k: int, delta) -> tuple[Fraction, SimpleFunction]:
    """Minimum of ``m({|f - g| > delta})`` over ``g`` of complexity ``k``, with a witness.

    The problem splits over length-``k`` cylinders; on each, the best
    constant covers a heaviest set of f-values fitting in a closed window of
    width ``2*delta``. Cylinders without mass get the value 0.
    """
    delta = Fraction(delta)
    if delta <= 0:
        raise ValueError("delta must be > 0")
    total = Fraction(0)
    table = {}
    for sigma, atoms in m.groups(k).items():
        covered, c = best_window(((f[p], mass) for p, mass in atoms), delta)
        total += sum(mass for _, mass in atoms) - covered
        table[sigma] = min(max(c, Fraction(0)), Fraction(1))
    return total, SimpleFunction(k, table)


def deviation_profile(m: FiniteSupportMeasure, f: dict, ks: Iterable[int], delta) -> dict[int, tuple[Fraction, SimpleFunction]]:
    return {k: min_deviation(m, f, k, delta) for k in ks}


def deviation_closed_form(s: int, k: int) -> Fraction:
    """Exact minimal deviation at threshold 1/8 for the measure of a machine halting at ``s``."""
    if s < 1 or k < 1:
        raise ValueError("need s >= 1 and k >= 1")
    if k <= s + 1:
        return Fraction(1, 4)
    if k <= 2 * s + 1:
        return Fraction(2 * s - k + 1, 4 * s)
    return Fraction(0)


def conditional_expectation(m: FiniteSupportMeasure, f: dict, k: int) -> SimpleFunction:
    """``E[f | B_k]``; zero on cylinders without mass."""
    table = {}
    for sigma, atoms in m.groups(k).items():
        mass = sum(w for _, w in atoms)
        table[sigma] = sum(w * f[p] for p, w in atoms) / mass
    return SimpleFunction(k, table)


def l1_distance(m: FiniteSupportMeasure, f: dict, g: SimpleFunction) -> Fraction:
    return sum((mass * abs(f[p] - g(p)) for p, mass in m.atoms.items()), Fraction(0))


def _weighted_median(pairs: list[tuple[Fraction, Fraction]]) -> Fraction:
    pairs = sorted(pairs)
    half = sum(w for _, w in pairs) / 2
    acc = Fraction(0)
    for v, w in pairs:
        acc += w
        if acc >= half:
            return v
    return pairs[-1][0]


def median_approximation(m: FiniteSupportMeasure, f: dict, k: int) -> SimpleFunction:
    """An ``L1(m)``-optimal simple function of complexity ``k`` (cylinder-wise weighted median)."""
    table = {sigma: _weighted_median([(f[p], w) for p, w in atoms]) for sigma, atoms in m.groups(k).items()}
    return SimpleFunction(k, table)


def complexity_bound(m: FiniteSupportMeasure, f: dict, eps) -> tuple[int, SimpleFunction]:
    """Least ``k`` such that some ``g`` of complexity ``k`` has ``‖f - g‖_1 < eps``.

    The best ``L1`` error over complexity ``k`` is nonincreasing in ``k``,
    so the least ``k`` is found by bisection. Distinct periodic points with
    periods at most ``P`` already differ within their first ``2P`` bits,
    which makes ``f`` exactly representable at ``k = 2P``.
    """
    eps = Fraction(eps)
    if eps <= 0:
        raise ValueError("eps must be > 0")

    def attempt(k):
        g = median_approximation(m, f, k)
        return l1_distance(m, f, g) < eps, g

    hi = 2 * m.max_period
    ok, best = attempt(hi)
    if not ok:
        raise AssertionError("limit function not captured at twice the largest period")
    lo = -1  # attempt(lo) known to fail (or lo below range)
    while hi - lo > 1:
        mid = (lo + hi) // 2
        ok, g = attempt(mid)
        if ok:
            hi, best = mid, g
        else:
            lo = mid
    return hi, best
