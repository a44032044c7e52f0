"""Shift-invariant measures on Cantor space evaluated on cylinders.

Every measure used here has finite support on periodic points. The
machine-indexed measure ``μ_e`` puts mass 1/2 on each of ``0*`` and ``1*``
when machine ``e`` never halts; when it halts at step ``s`` it spreads mass
uniformly over the ``8s`` shifts of ``(1^s 0^3s)*`` and ``(1^3s 0^s)*``.
The mixture weights ``μ_e`` by ``2^-(e+1)``.
"""

from __future__ import annotations

import math
from collections import defaultdict
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Optional

from .core import Interval, PeriodicPoint, check_word, cyclic_shifts, words
from .machines import Catalog, CatalogEntry, Machine, RunResult, run

__all__ = [
    "FiniteSupportMeasure",
    "MixtureError",
    "check_shift_invariance",
    "entry_status",
    "exact_mixture",
    "mixture_eval",
    "mu_e_closed_form",
    "mu_e_eval",
    "mu_e_eval_with_run",
    "simulation_budget",
    "support_mu_e",
]

ZERO_STAR = PeriodicPoint("0")
ONE_STAR = PeriodicPoint("1")


class MixtureError(ValueError):
    """The requested precision cannot be met (unknown tail too heavy)."""


class FiniteSupportMeasure:
    """Probability measure given by finitely many atoms at periodic points.

    Masses of atoms that canonicalize to the same point are added.
    """

    def __init__(self, atoms: Iterable[tuple[PeriodicPoint, Fraction]] | Mapping, *, normalized: bool = True):
        items = atoms.items() if isinstance(atoms, Mapping) else atoms
        agg: dict[PeriodicPoint, Fraction] = defaultdict(Fraction)
        for p, mass in items:
            mass = Fraction(mass)
            if mass <= 0:
                raise ValueError(f"atom {p} has nonpositive mass {mass}")
            agg[p] += mass
        if normalized and sum(agg.values()) != 1:
            raise ValueError(f"total mass {sum(agg.values())} != 1")
        self.atoms: dict[PeriodicPoint, Fraction] = dict(agg)
        self._by_prefix: dict[int, dict[str, Fraction]] = {}

    def __len__(self):
        return len(self.atoms)

    def __eq__(self, other):
        if not isinstance(other, FiniteSupportMeasure):
            return NotImplemented
        return self.atoms == other.atoms

    def __repr__(self):
        return f"FiniteSupportMeasure({len(self.atoms)} atoms)"

    @property
    def max_period(self) -> int:
        return max(len(p) for p in self.atoms)

    def cylinder_masses(self, k: int) -> dict[str, Fraction]:
        """Mass of every length-``k`` cylinder that has positive mass."""
        if k not in self._by_prefix:
            out: dict[str, Fraction] = defaultdict(Fraction)
            for p, mass in self.atoms.items():
                out[p.prefix(k)] += mass
            self._by_prefix[k] = dict(out)
        return self._by_prefix[k]

    def groups(self, k: int) -> dict[str, list[tuple[PeriodicPoint, Fraction]]]:
        """Atoms grouped by the length-``k`` cylinder containing them."""
        out = defaultdict(list)
        for p, mass in self.atoms.items():
            out[p.prefix(k)].append((p, mass))
        return dict(out)

    def cylinder(self, sigma: str) -> Fraction:
        """``m([σ])`` by summing the atoms inside ``[σ]``."""
        check_word(sigma)
        return self.cylinder_masses(len(sigma)).get(sigma, Fraction(0))

    measure_of_cylinder = cylinder

    @staticmethod
    def mix(weighted: Iterable[tuple[Fraction, "FiniteSupportMeasure"]]) -> "FiniteSupportMeasure":
        pairs = []
        for w, m in weighted:
            pairs.extend((p, Fraction(w) * mass) for p, mass in m.atoms.items())
        return FiniteSupportMeasure(pairs)


@lru_cache(maxsize=256)
def support_mu_e(s: Optional[int]) -> FiniteSupportMeasure:
    """``μ_e`` for a machine halting at step ``s`` (``None``: never halts)."""
    if s is None:
        return FiniteSupportMeasure({ZERO_STAR: Fraction(1, 2), ONE_STAR: Fraction(1, 2)})
    if s < 1:
        raise ValueError("halting time must be >= 1")
    mass = Fraction(1, 8 * s)
    low = cyclic_shifts("1" * s + "0" * (3 * s))
    high = cyclic_shifts("1" * (3 * s) + "0" * s)
    return FiniteSupportMeasure((p, mass) for p in low + high)


def _shape(sigma: str) -> str:
    """``"const"``, ``"one_switch"`` or ``"other"`` by the number of bit changes."""
    switches = sum(a != b for a, b in zip(sigma, sigma[1:]))
    return {0: "const", 1: "one_switch"}.get(switches, "other")


def mu_e_closed_form(s: int, sigma: str) -> Fraction:
    """Closed-form ``μ_e([σ])`` for a machine halting at ``s``, valid when ``len(σ) < s``."""
    check_word(sigma)
    k = len(sigma)
    if s < 1:
        raise ValueError("halting time must be >= 1")
    if k >= s:
        raise ValueError(f"closed form needs len(sigma) < s (got k={k}, s={s})")
    if k == 0:
        return Fraction(1)
    shape = _shape(sigma)
    if shape == "const":
        return Fraction(1, 2) - Fraction(k - 1, 4 * s)
    if shape == "one_switch":
        return Fraction(1, 4 * s)
    return Fraction(0)


def simulation_budget(k: int, eps: Fraction) -> int:
    """Steps to simulate before the non-halting values are within ``eps``."""
    return max(k + 1, math.ceil(Fraction(k) / (4 * eps)))


def mu_e_eval_with_run(machine: Machine, sigma: str, eps) -> tuple[Interval, RunResult]:
    """Enclosure of ``μ_e([σ])`` of width at most ``eps``, and the run that produced it.

    If the machine halts within the budget ``T`` the value is exact.
    Otherwise it either never halts or halts at some ``s > T > k``, and the
    closed form bounds the halting value between the never value and a
    shift of at most ``(k-1)/(4(T+1))`` (constant words) or ``1/(4(T+1))``
    (one-switch words), both below ``eps``.
    """
    eps = Fraction(eps)
    if eps <= 0:
        raise ValueError("eps must be > 0")
    check_word(sigma)
    k = len(sigma)
    result = run(machine, simulation_budget(k, eps))
    if result.halted:
        return Interval.point(support_mu_e(result.steps).cylinder(sigma)), result
    never = support_mu_e(None).cylinder(sigma)
    t1 = result.steps + 1
    shape = _shape(sigma) if k else "empty"
    if shape == "const":
        return Interval(never - Fraction(k - 1, 4 * t1), never), result
    if shape == "one_switch":
        return Interval(never, never + Fraction(1, 4 * t1)), result
    return Interval.point(never), result


def mu_e_eval(machine: Machine, sigma: str, eps) -> Interval:
    return mu_e_eval_with_run(machine, sigma, eps)[0]


def entry_status(entry: CatalogEntry) -> Optional[int]:
    """Annotated halting time of a catalog entry (``None`` = never)."""
    if not entry.annotated:
        raise ValueError(f"catalog entry {entry.machine!r} carries no ground truth")
    return entry.halts_at


def exact_mixture(catalog: Catalog) -> FiniteSupportMeasure:
    """``Σ_e 2^-(e+1) μ_e`` over an annotated catalog, tail filled with never-measures."""
    n = len(catalog)
    weighted = [(Fraction(1, 2 ** (e + 1)), support_mu_e(entry_status(entry))) for e, entry in enumerate(catalog)]
    weighted.append((Fraction(1, 2 ** n), support_mu_e(None)))
    return FiniteSupportMeasure.mix(weighted)


def mixture_eval(catalog: Catalog, sigma: str, eps, tail: str = "unknown") -> Interval:
    """Enclosure of the mixture's ``μ([σ])`` of width at most ``eps``.

    Machines past the end of the catalog carry total weight ``2^-E``. With
    ``tail="never"`` they are taken to be non-halting (exact contribution);
    with ``tail="unknown"`` they contribute ``[0, 2^-E]``.
    """
    eps = Fraction(eps)
    if eps <= 0:
        raise ValueError("eps must be > 0")
    if tail not in ("unknown", "never"):
        raise ValueError(f"tail must be 'unknown' or 'never', not {tail!r}")
    check_word(sigma)
    tail_weight = Fraction(1, 2 ** len(catalog))
    if tail == "unknown":
        if tail_weight >= eps:
            raise MixtureError(f"unknown tail weight {tail_weight} leaves no room within eps={eps}")
        tail_part = Interval(0, tail_weight)
    else:
        tail_part = Interval.point(tail_weight * support_mu_e(None).cylinder(sigma))
    # Σ 2^-(e+1) * term_eps <= (1 - tail_weight) * term_eps <= remaining
    term_eps = eps - tail_part.width
    total = tail_part
    for e, entry in enumerate(catalog):
        total = total + mu_e_eval(entry.machine, sigma, term_eps).scale(Fraction(1, 2 ** (e + 1)))
    return total


def check_shift_invariance(m: FiniteSupportMeasure, max_k: int) -> bool:
    """``m([σ]) == m([0σ]) + m([1σ])`` for every word of length ``<= max_k``."""
    for k in range(max_k + 1):
        for sigma in words(k):
            if m.cylinder(sigma) != m.cylinder("0" + sigma) + m.cylinder("1" + sigma):
                return False
    return True
