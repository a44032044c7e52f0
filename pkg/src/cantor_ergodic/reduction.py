"""Deciding halting for catalog machines from a bound on the complexity of the limit.

Given ``k_e`` with some ``g`` of complexity ``k_e`` satisfying
``‖f - g‖_1 < ε_e = 2^-(e+1)/64`` in the mixture, Markov's inequality gives
``μ(|f-g| > 1/8) < 8ε_e`` and therefore ``μ_e(|f-g| > 1/8) < 1/8``. For a
machine halting at ``s`` the minimal such deviation is at least 1/8 until
``k > (3s+2)/2``, so ``s <= (2k_e - 2)/3 < k_e``: running machine ``e``
for ``k_e`` steps settles whether it halts.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Protocol

from .approx import complexity_bound
from .ergodic import limit_function
from .machines import Catalog, run
from .measures import entry_status, exact_mixture

__all__ = [
    "BoundOracle",
    "CheatingBoundOracle",
    "PaddedOracle",
    "Verdict",
    "decide_halting",
    "epsilon_for",
]


class BoundOracle(Protocol):
    def bound(self, eps: Fraction) -> int:
        """Some ``k`` such that a ``g`` of complexity ``k`` is within ``eps`` of ``f`` in L1."""


def epsilon_for(e: int) -> Fraction:
    if e < 0:
        raise ValueError("machine index must be >= 0")
    return Fraction(1, 2 ** (e + 1) * 64)


class CheatingBoundOracle:
    """The least valid complexity bound, computed from the catalog's ground truth.

    Stands in for an oracle that cannot exist in general; used to exercise
    the decoder.
    """

    def __init__(self, catalog: Catalog):
        for e, entry in enumerate(catalog):
            if not entry.annotated:
                raise ValueError(f"catalog entry {e} has no ground truth")
        self.catalog = catalog
        self.measure = exact_mixture(catalog)
        self.f = limit_function(self.measure)
        self._bound = lru_cache(maxsize=None)(self._compute)

    def _compute(self, eps: Fraction) -> int:
        return complexity_bound(self.measure, self.f, eps)[0]

    def bound(self, eps) -> int:
        return self._bound(Fraction(eps))


@dataclass
class PaddedOracle:
    """Any bound stays a bound when enlarged."""

    inner: BoundOracle
    pad: int = 7

    def bound(self, eps) -> int:
        return self.inner.bound(eps) + self.pad


@dataclass(frozen=True)
class Verdict:
    e: int
    kind: str
    epsilon: Fraction
    k: int
    budget: int
    halts: bool
    halted_at: Optional[int]
    ground_truth: Optional[bool] = None  # None: not annotated

    @property
    def match(self) -> Optional[bool]:
        return None if self.ground_truth is None else self.ground_truth == self.halts


def decide_halting(oracle: BoundOracle, catalog: Catalog, e: int) -> Verdict:
    if not 0 <= e < len(catalog):
        raise IndexError(f"machine index {e} outside catalog of {len(catalog)}")
    entry = catalog[e]
    eps = epsilon_for(e)
    k = oracle.bound(eps)
    result = run(entry.machine, k)
    truth = entry_status(entry) is not None if entry.annotated else None
    return Verdict(
        e=e,
        kind=entry.kind,
        epsilon=eps,
        k=k,
        budget=k,
        halts=result.halted,
        halted_at=result.steps if result.halted else None,
        ground_truth=truth,
    )
