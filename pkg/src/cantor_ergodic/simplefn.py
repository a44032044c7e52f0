"""Simple functions: rational-valued functions measurable over length-k cylinders."""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from typing import Iterable, Mapping

from .core import PeriodicPoint, check_word, format_rational, parse_rational, words

__all__ = ["SimpleFunction", "linear_combination", "rademacher", "DENSE_JSON_MAX_K"]

# Above this complexity the JSON form lists only the non-default cylinders.
DENSE_JSON_MAX_K = 16


class SimpleFunction:
    """A function constant on every cylinder ``[σ]`` with ``len(σ) == k``.

    Conceptually a table of ``2**k`` values in lexicographic cylinder order.
    It is stored as a default value plus the cylinders that differ from it,
    so witnesses at large ``k`` cost memory proportional to their support.
    Instances are immutable and compare equal when they agree as functions
    at the same complexity.
    """

    __slots__ = ("_k", "_default", "_entries")

    def __init__(self, k: int, entries: Mapping[str, Fraction] | None = None, default=0):
        if k < 0:
            raise ValueError("complexity must be >= 0")
        default = Fraction(default)
        table = {}
        for w, v in (entries or {}).items():
            check_word(w)
            if len(w) != k:
                raise ValueError(f"cylinder {w!r} does not have length {k}")
            v = Fraction(v)
            if v != default:
                table[w] = v
        self._k = k
        self._default = default
        self._entries = table

    @classmethod
    def from_values(cls, values: Iterable) -> "SimpleFunction":
        """Build from a dense table of length ``2**k`` (lexicographic order)."""
        vals = [Fraction(v) for v in values]
        k = len(vals).bit_length() - 1
        if len(vals) != 1 << k:
            raise ValueError(f"table length {len(vals)} is not a power of two")
        return cls(k, dict(zip(words(k), vals)))

    @classmethod
    def constant(cls, c, k: int = 0) -> "SimpleFunction":
        return cls(k, default=c)

    @classmethod
    def indicator(cls, sigma: str) -> "SimpleFunction":
        return cls(len(sigma), {sigma: 1})

    @property
    def k(self) -> int:
        return self._k

    @property
    def default(self) -> Fraction:
        return self._default

    def entries(self) -> dict[str, Fraction]:
        """The cylinders whose value differs from :attr:`default`."""
        return dict(self._entries)

    def value(self, sigma: str) -> Fraction:
        """Value on the cylinder ``[σ]``; ``σ`` may be longer than ``k``."""
        if len(sigma) < self._k:
            raise ValueError(f"cylinder {sigma!r} is coarser than complexity {self._k}")
        return self._entries.get(sigma[:self._k], self._default)

    def __call__(self, p: PeriodicPoint) -> Fraction:
        return self._entries.get(p.prefix(self._k), self._default)

    eval = __call__

    def values(self) -> list[Fraction]:
        """Dense table in lexicographic cylinder order."""
        return [self._entries.get(w, self._default) for w in words(self._k)]

    def refine(self, k: int) -> "SimpleFunction":
        if k < self._k:
            raise ValueError(f"cannot refine complexity {self._k} down to {k}")
        if k == self._k:
            return self
        ext = k - self._k
        table = {w + t: v for w, v in self._entries.items() for t in words(ext)}
        return SimpleFunction(k, table, self._default)

    def __eq__(self, other):
        if not isinstance(other, SimpleFunction):
            return NotImplemented
        if self._k != other._k:
            return False
        if self._default == other._default:
            return self._entries == other._entries
        return self.values() == other.values()

    def __hash__(self):
        # invariant under the choice of default: hash the multiset of values
        counts = Counter(self._entries.values())
        counts[self._default] += (1 << self._k) - len(self._entries)
        return hash((self._k, frozenset((v, c) for v, c in counts.items() if c)))

    def __repr__(self):
        if self._k <= 4:
            vals = ", ".join(str(v) for v in self.values())
            return f"SimpleFunction(k={self._k}, [{vals}])"
        return f"SimpleFunction(k={self._k}, default={self._default}, {len(self._entries)} entries)"

    def to_json(self) -> dict:
        if self._k <= DENSE_JSON_MAX_K:
            return {"k": self._k, "values": [format_rational(v) for v in self.values()]}
        return {
            "k": self._k,
            "default": format_rational(self._default),
            "entries": {w: format_rational(v) for w, v in sorted(self._entries.items())},
        }

    @classmethod
    def from_json(cls, obj: dict) -> "SimpleFunction":
        k = int(obj["k"])
        if "values" in obj:
            g = cls.from_values(parse_rational(v) for v in obj["values"])
            if g.k != k:
                raise ValueError(f"declared k={k} but table has 2**{g.k} entries")
            return g
        entries = {w: parse_rational(v) for w, v in obj.get("entries", {}).items()}
        return cls(k, entries, parse_rational(obj.get("default", 0)))


def linear_combination(terms: Iterable[tuple]) -> SimpleFunction:
    """``Σ c_i g_i`` at the maximal complexity of the inputs."""
    terms = [(Fraction(c), g) for c, g in terms]
    if not terms:
        raise ValueError("linear_combination of an empty list")
    k = max(g.k for _, g in terms)
    default = sum((c * g.default for c, g in terms), Fraction(0))
    touched = set()
    for _, g in terms:
        for w in g._entries:
            touched.update(w + t for t in words(k - g.k))
    table = {w: sum((c * g.value(w) for c, g in terms), Fraction(0)) for w in touched}
    return SimpleFunction(k, table, default)


def rademacher(k: int) -> SimpleFunction:
    """``h_k``: +1 on cylinders of length ``k`` ending in 0, -1 on those ending in 1."""
    if k < 1:
        raise ValueError("rademacher function needs k >= 1 (no last bit when k = 0)")
    return SimpleFunction(k, {w: -1 for w in words(k) if w[-1] == "1"}, default=1)
