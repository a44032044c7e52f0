"""Ergodic averages of ``1_[1]`` under the shift and their limits on periodic points."""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Dict, Iterator

from .core import PeriodicPoint
from .measures import FiniteSupportMeasure

__all__ = [
    "LimitFunction",
    "ergodic_average",
    "ergodic_limit",
    "first_n_below",
    "l1_error",
    "l1_series",
    "limit_function",
]

# f = lim A_n 1_[1], represented on the atoms of a measure only.
LimitFunction = Dict[PeriodicPoint, Fraction]


def _ones_in_prefix(p: PeriodicPoint, n: int) -> int:
    q, r = divmod(n, len(p))
    return q * p.ones + p.prefix(r).count("1")


def ergodic_average(p: PeriodicPoint, n: int) -> Fraction:
    """``(1/n) Σ_{i<n} 1_[1](T^i p)``: the density of 1s among the first ``n`` bits."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return Fraction(_ones_in_prefix(p, n), n)


def ergodic_limit(p: PeriodicPoint) -> Fraction:
    return Fraction(p.ones, len(p))


def limit_function(m: FiniteSupportMeasure) -> LimitFunction:
    return {p: ergodic_limit(p) for p in m.atoms}


def l1_error(m: FiniteSupportMeasure, n: int) -> Fraction:
    """``‖A_n 1_[1] - f‖`` in ``L1(m)``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    total = Fraction(0)
    for p, mass in m.atoms.items():
        # |c/n - a/b| = |c*b - a*n| / (n*b)
        b = len(p)
        total += mass * Fraction(abs(_ones_in_prefix(p, n) * b - p.ones * n), n * b)
    return total


def l1_series(m: FiniteSupportMeasure, n_max: int) -> Iterator[tuple[int, Fraction]]:
    for n in range(1, n_max + 1):
        yield n, l1_error(m, n)


def first_n_below(m: FiniteSupportMeasure, threshold, n_max: int | None = None) -> int:
    """Smallest ``n`` with ``l1_error(m, n) < threshold``.

    Averages over a whole number of periods are exact, so the search always
    stops by the least common multiple of the atom periods.
    """
    threshold = Fraction(threshold)
    if n_max is None:
        n_max = lcm(*(len(p) for p in m.atoms))
    for n in range(1, n_max + 1):
        if l1_error(m, n) < threshold:
            return n
    raise ValueError(f"no n <= {n_max} with l1_error < {threshold}")
