"""Words, cylinders and periodic points of Cantor space, plus exact intervals.

Words are plain ``str`` objects over ``"01"``; the empty word names the
whole space. Every point this package ever needs is purely periodic, so a
point is stored as a primitive period together with a rotation.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable

__all__ = [
    "Interval",
    "PeriodicPoint",
    "check_word",
    "cyclic_shifts",
    "format_rational",
    "in_cylinder",
    "parse_point",
    "parse_rational",
    "parse_word",
    "primitive_root",
    "words",
]

_RUN = re.compile(r"([01])\^(\d+)")


def check_word(w: str) -> str:
    if not isinstance(w, str) or any(c not in "01" for c in w):
        raise ValueError(f"not a binary word: {w!r}")
    return w


def parse_word(text: str) -> str:
    """Parse a word, accepting run-length sugar such as ``"1^5 0^15"``.

    Tokens are separated by whitespace; each is either a literal bit string
    or ``b^n``. A lone ``""`` or ``"ε"`` is the empty word.
    """
    text = text.strip()
    if text in ("", "ε", "''", '""'):
        return ""
    out = []
    for tok in text.split():
        m = _RUN.fullmatch(tok)
        if m:
            out.append(m.group(1) * int(m.group(2)))
        else:
            out.append(check_word(tok))
    return "".join(out)


def words(k: int) -> Iterable[str]:
    """All words of length ``k`` in lexicographic order."""
    if k == 0:
        yield ""
        return
    for i in range(1 << k):
        yield format(i, f"0{k}b")


def primitive_root(w: str) -> str:
    n = len(w)
    for d in range(1, n + 1):
        if n % d == 0 and w[:d] * (n // d) == w:
            return w[:d]
    return w


def _canonical_period(w: str) -> tuple[str, int]:
    """Least rotation of the primitive root of ``w`` and the offset it starts at."""
    root = primitive_root(w)
    best = min(range(len(root)), key=lambda j: root[j:] + root[:j])
    return root[best:] + root[:best], best


@dataclass(frozen=True)
class PeriodicPoint:
    """The sequence ``period[rotation:] + period[:rotation]`` repeated forever.

    Construction canonicalizes: the period is reduced to its primitive root
    and then to the lexicographically least rotation of that root, with the
    rotation adjusted so that the bits are unchanged. Two representations of
    the same sequence therefore compare (and hash) equal.
    """

    period: str
    rotation: int = 0

    def __post_init__(self):
        w = check_word(self.period)
        if not w:
            raise ValueError("period must be nonempty")
        canon, offset = _canonical_period(w)
        object.__setattr__(self, "period", canon)
        object.__setattr__(self, "rotation", (self.rotation - offset) % len(canon))

    @classmethod
    def _trusted(cls, period: str, rotation: int) -> "PeriodicPoint":
        # period already canonical, rotation already reduced
        p = object.__new__(cls)
        object.__setattr__(p, "period", period)
        object.__setattr__(p, "rotation", rotation)
        return p

    def __str__(self):
        return f"({self.period})*@{self.rotation}"

    def __len__(self):
        return len(self.period)

    @cached_property
    def _word(self) -> str:
        # the period read from the current position
        return self.period[self.rotation:] + self.period[:self.rotation]

    @cached_property
    def ones(self) -> int:
        return self.period.count("1")

    def bit(self, i: int) -> int:
        return int(self._word[i % len(self.period)])

    def prefix(self, k: int) -> str:
        if k < 0:
            raise ValueError("prefix length must be >= 0")
        w = self._word
        reps = -(-k // len(w))
        return (w * reps)[:k]

    def shift(self, j: int = 1) -> "PeriodicPoint":
        return PeriodicPoint._trusted(self.period, (self.rotation + j) % len(self.period))


def cyclic_shifts(w: str) -> list[PeriodicPoint]:
    """The ``len(w)`` shifts of ``w*``; pairwise distinct iff ``w`` is primitive."""
    check_word(w)
    if not w:
        raise ValueError("cyclic_shifts of the empty word")
    canon, offset = _canonical_period(w)
    n = len(canon)
    return [PeriodicPoint._trusted(canon, (j - offset) % n) for j in range(len(w))]


def in_cylinder(p: PeriodicPoint, sigma: str) -> bool:
    return p.prefix(len(sigma)) == sigma


def parse_point(text: str) -> PeriodicPoint:
    """Parse ``"(w)*@r"`` (``@r`` optional); ``w`` may use run-length sugar."""
    m = re.fullmatch(r"\s*\((.*)\)\*\s*(?:@\s*(-?\d+))?\s*", text)
    if not m:
        raise ValueError(f"bad periodic point {text!r}; expected '(w)*@r'")
    return PeriodicPoint(parse_word(m.group(1)), int(m.group(2) or 0))


def parse_rational(text) -> Fraction:
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"bad rational {text!r}") from exc


def format_rational(x: Fraction) -> str:
    """Exact ``num/den`` form; the denominator is always written."""
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class Interval:
    """Closed rational interval ``[lo, hi]``. All operations are exact."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        lo, hi = Fraction(self.lo), Fraction(self.hi)
        if lo > hi:
            raise ValueError(f"empty interval [{lo}, {hi}]")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @classmethod
    def point(cls, x) -> "Interval":
        return cls(x, x)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def __add__(self, other: "Interval") -> "Interval":
        return Interval(self.lo + other.lo, self.hi + other.hi)

    def scale(self, c) -> "Interval":
        c = Fraction(c)
        a, b = self.lo * c, self.hi * c
        return Interval(min(a, b), max(a, b))

    def contains(self, x) -> bool:
        return self.lo <= x <= self.hi

    def intersects(self, other: "Interval") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    @staticmethod
    def sum(items: Iterable["Interval"]) -> "Interval":
        total = Interval(0, 0)
        for it in items:
            total = total + it
        return total

    def to_json(self) -> dict:
        return {"lo": format_rational(self.lo), "hi": format_rational(self.hi)}

    def __str__(self):
        return f"[{format_rational(self.lo)}, {format_rational(self.hi)}]"
