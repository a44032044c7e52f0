"""Weighted Rademacher series under the coin-flipping measure.

For an injective list ``φ(1), ..., φ(N)`` the partial sums are
``f_n = Σ_{i<=n} 4^-φ(i) h_i``. A simple function of complexity ``n`` that
stays within ``4^-(m+1)`` of ``f_N`` on more than half the space exists
exactly when no index ``j > n`` has ``φ(j) <= m``; once such an ``n`` is
known, ``m`` is in the range of ``φ`` iff it is among ``φ(1..n)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .approx import best_window
from .core import check_word, words
from .simplefn import SimpleFunction, linear_combination, rademacher

__all__ = [
    "DecodeResult",
    "PhiMap",
    "PremiseViolation",
    "coinflip_cylinder",
    "f_n",
    "min_deviation_coinflip",
    "range_decode",
    "tail_bound",
]


class PremiseViolation(ValueError):
    def __init__(self, offending: list[int], m: int):
        self.offending = offending
        super().__init__(f"phi(j) <= {m} for j in {offending}")


class PhiMap(tuple):
    """Injective map ``i -> φ(i)`` on ``{1..N}``, stored as ``(φ(1), ..., φ(N))``."""

    def __new__(cls, values: Sequence[int]):
        values = tuple(int(v) for v in values)
        if any(v < 0 for v in values):
            raise ValueError("phi values must be >= 0")
        if len(set(values)) != len(values):
            raise ValueError(f"phi is not injective: {values}")
        return super().__new__(cls, values)

    def __call__(self, i: int) -> int:
        if not 1 <= i <= len(self):
            raise IndexError(f"phi is defined on 1..{len(self)}, not {i}")
        return self[i - 1]

    @property
    def N(self) -> int:
        return len(self)

    def image(self, n: int) -> set[int]:
        return set(self[:n])


def coinflip_cylinder(sigma: str) -> Fraction:
    return Fraction(1, 2 ** len(check_word(sigma)))


def f_n(phi: PhiMap, n: int) -> SimpleFunction:
    if not 0 <= n <= len(phi):
        raise ValueError(f"n must lie in 0..{len(phi)}")
    if n == 0:
        return SimpleFunction.constant(0)
    return linear_combination((Fraction(1, 4 ** phi(i)), rademacher(i)) for i in range(1, n + 1))


def tail_bound(phi: PhiMap, n: int, m: int) -> Fraction:
    """``‖f_N - f_n‖_∞`` exactly, valid under ``φ(j) > m`` for all ``j > n``.

    The rademacher terms can all take sign +1 together, so the sup norm of
    the tail is the plain sum of its weights.
    """
    if not 0 <= n <= len(phi):
        raise ValueError(f"n must lie in 0..{len(phi)}")
    offending = [j for j in range(n + 1, len(phi) + 1) if phi(j) <= m]
    if offending:
        raise PremiseViolation(offending, m)
    return sum((Fraction(1, 4 ** phi(j)) for j in range(n + 1, len(phi) + 1)), Fraction(0))


def min_deviation_coinflip(phi: PhiMap, k: int, delta) -> tuple[Fraction, SimpleFunction]:
    """Minimum over ``g`` of complexity ``k`` of ``P({|g - f_N| > delta})``, with a witness."""
    delta = Fraction(delta)
    if delta <= 0:
        raise ValueError("delta must be > 0")
    N = len(phi)
    f = f_n(phi, N)
    if k >= N:
        return Fraction(0), f.refine(k)
    weight = Fraction(1, 2 ** N)
    rest = N - k
    total = Fraction(0)
    table = {}
    for sigma in words(k):
        pairs = [(f.value(sigma + t), weight) for t in words(rest)]
        covered, c = best_window(pairs, delta)
        total += Fraction(1, 2 ** k) - covered
        table[sigma] = c
    return total, SimpleFunction(k, table)


@dataclass(frozen=True)
class DecodeResult:
    n: int
    m: int
    delta: Fraction
    deviation: Fraction
    witness: SimpleFunction
    certified: bool
    in_range: Optional[bool]  # None when not certified


def range_decode(phi: PhiMap, n: int, m: int, delta=None) -> DecodeResult:
    """Decide ``m ∈ range(φ)`` from the complexity-``n`` deviation test.

    The test asks for a complexity-``n`` function within ``delta``
    (default ``4^-(m+1)``) of ``f_N`` outside a set of measure below 1/2.
    If it passes, ``n`` is large enough and the answer is ``m ∈ φ(1..n)``;
    otherwise the result is uncertified.
    """
    if not 0 <= n <= len(phi):
        raise ValueError(f"n must lie in 0..{len(phi)}")
    delta = Fraction(1, 4 ** (m + 1)) if delta is None else Fraction(delta)
    deviation, witness = min_deviation_coinflip(phi, n, delta)
    certified = deviation < Fraction(1, 2)
    return DecodeResult(
        n=n,
        m=m,
        delta=delta,
        deviation=deviation,
        witness=witness,
        certified=certified,
        in_range=(m in phi.image(n)) if certified else None,
    )
