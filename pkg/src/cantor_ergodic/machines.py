"""Turing machines with step-bounded execution, and machine catalogs.

A catalog stands in for the enumeration of all machines: entry ``e`` is
machine ``e``. Besides genuine transition tables, two synthetic kinds give
exact control over halting times: ``Clock(s)`` halts after exactly ``s``
steps and ``Loop`` never halts.

Convention: a machine halts in ``s`` steps when its ``s``-th transition
enters HALT, or when step ``s`` would fire an undefined transition.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional, Union

__all__ = [
    "Catalog",
    "CatalogEntry",
    "CatalogError",
    "Clock",
    "HALT",
    "Loop",
    "RunResult",
    "TuringMachine",
    "load_catalog",
    "parse_machine",
    "run",
    "save_catalog",
]

HALT = "HALT"
SYMBOLS = ("0", "1", "B")


class CatalogError(ValueError):
    pass


@dataclass(frozen=True)
class TuringMachine:
    """Single-tape machine over ``{0, 1, B}`` started on a blank tape.

    ``transitions`` maps ``(state, symbol)`` to ``(write, move, next)`` with
    ``move`` in ``"LR"`` and ``next`` a state or :data:`HALT`.
    """

    start: int
    transitions: dict = field(hash=False)

    def __post_init__(self):
        for (state, sym), (write, move, nxt) in self.transitions.items():
            if sym not in SYMBOLS or write not in SYMBOLS:
                raise ValueError(f"bad symbol in transition {(state, sym)}")
            if move not in ("L", "R"):
                raise ValueError(f"bad move {move!r} in transition {(state, sym)}")
            if nxt != HALT and nxt not in self.states:
                raise ValueError(f"transition {(state, sym)} leads to unknown state {nxt!r}")

    @property
    def states(self) -> set:
        return {self.start} | {state for state, _ in self.transitions}


@dataclass(frozen=True)
class Clock:
    s: int

    def __post_init__(self):
        if self.s < 1:
            raise ValueError("clock machine needs s >= 1")


@dataclass(frozen=True)
class Loop:
    pass


Machine = Union[TuringMachine, Clock, Loop]


@dataclass(frozen=True)
class RunResult:
    """Outcome of a bounded run: halted at step ``steps``, or still running after ``steps``."""

    halted: bool
    steps: int

    def __str__(self):
        return f"halted_at({self.steps})" if self.halted else f"still_running_after({self.steps})"


def _run_table(m: TuringMachine, budget: int) -> RunResult:
    tape: dict[int, str] = {}
    head, state = 0, m.start
    for step in range(1, budget + 1):
        key = (state, tape.get(head, "B"))
        if key not in m.transitions:
            return RunResult(True, step)
        write, move, nxt = m.transitions[key]
        tape[head] = write
        head += 1 if move == "R" else -1
        if nxt == HALT:
            return RunResult(True, step)
        state = nxt
    return RunResult(False, budget)


def run(m: Machine, budget: int) -> RunResult:
    """Simulate ``m`` for at most ``budget`` steps."""
    if budget < 0:
        raise ValueError("budget must be >= 0")
    if isinstance(m, Clock):
        return RunResult(True, m.s) if m.s <= budget else RunResult(False, budget)
    if isinstance(m, Loop):
        return RunResult(False, budget)
    return _run_table(m, budget)


@dataclass(frozen=True)
class CatalogEntry:
    """A machine plus optional ground truth.

    ``annotated`` says whether the truth is known; if so ``halts_at`` is the
    halting time or ``None`` for a machine that never halts.
    """

    machine: Machine
    annotated: bool = False
    halts_at: Optional[int] = None

    @property
    def kind(self) -> str:
        return {Clock: "clock", Loop: "loop"}.get(type(self.machine), "table")


@dataclass(frozen=True)
class Catalog:
    entries: tuple

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, e: int) -> CatalogEntry:
        return self.entries[e]

    def __iter__(self):
        return iter(self.entries)

    @classmethod
    def of(cls, *machines: Machine, annotate: bool = True) -> "Catalog":
        """Catalog of clock/loop machines, annotated with their intrinsic truth."""
        out = []
        for m in machines:
            if annotate and isinstance(m, Clock):
                out.append(CatalogEntry(m, True, m.s))
            elif annotate and isinstance(m, Loop):
                out.append(CatalogEntry(m, True, None))
            else:
                out.append(CatalogEntry(m))
        return cls(tuple(out))


def _machine_to_json(m: Machine) -> dict:
    if isinstance(m, Clock):
        return {"kind": "clock", "s": m.s}
    if isinstance(m, Loop):
        return {"kind": "loop"}
    trans = {
        f"{state},{sym}": [write, move, nxt]
        for (state, sym), (write, move, nxt) in sorted(m.transitions.items(), key=lambda kv: (str(kv[0][0]), kv[0][1]))
    }
    return {"kind": "table", "start": m.start, "transitions": trans}


def _symbol(x) -> str:
    s = str(x)
    if s not in SYMBOLS:
        raise ValueError(f"bad tape symbol {x!r}")
    return s


def _machine_from_json(obj) -> Machine:
    if not isinstance(obj, dict):
        raise ValueError("entry is not an object")
    kind = obj.get("kind")
    if kind == "clock":
        s = obj.get("s")
        if not isinstance(s, int) or isinstance(s, bool):
            raise ValueError("clock needs integer 's'")
        return Clock(s)
    if kind == "loop":
        return Loop()
    if kind == "table":
        trans = {}
        for key, val in obj.get("transitions", {}).items():
            state, _, sym = key.partition(",")
            write, move, nxt = val
            trans[(int(state), _symbol(sym.strip()))] = (
                _symbol(write),
                move,
                HALT if nxt == HALT else int(nxt),
            )
        return TuringMachine(int(obj["start"]), trans)
    raise ValueError(f"unknown kind {kind!r}")


def load_catalog(text: str) -> Catalog:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CatalogError(f"catalog is not valid JSON: {exc}") from exc
    if not isinstance(doc, list):
        raise CatalogError("catalog must be a JSON array")
    entries = []
    for e, obj in enumerate(doc):
        try:
            machine = _machine_from_json(obj)
            truth = obj.get("truth")
            if truth is None:
                entries.append(CatalogEntry(machine))
            elif truth.get("never") is True and "halts_at" not in truth:
                entries.append(CatalogEntry(machine, True, None))
            elif isinstance(truth.get("halts_at"), int) and truth["halts_at"] >= 1:
                entries.append(CatalogEntry(machine, True, truth["halts_at"]))
            else:
                raise ValueError(f"bad truth annotation {truth!r}")
        except (ValueError, KeyError, TypeError, AttributeError) as exc:
            raise CatalogError(f"catalog entry {e}: {exc}") from exc
    return Catalog(tuple(entries))


def save_catalog(catalog: Catalog) -> str:
    doc = []
    for entry in catalog:
        obj = _machine_to_json(entry.machine)
        if entry.annotated:
            obj["truth"] = {"never": True} if entry.halts_at is None else {"halts_at": entry.halts_at}
        doc.append(obj)
    return json.dumps(doc, indent=2)


def parse_machine(text: str) -> Machine:
    """``clock:<s>``, ``loop`` or ``file:<path>#<index>``."""
    text = text.strip()
    if text == "loop":
        return Loop()
    if text.startswith("clock:"):
        return Clock(int(text[6:]))
    if text.startswith("file:"):
        path, _, idx = text[5:].rpartition("#")
        if not path:
            raise ValueError("file machine needs '#<index>'")
        with open(path, encoding="utf-8") as fh:
            return load_catalog(fh.read())[int(idx)].machine
    raise ValueError(f"bad machine {text!r}; expected clock:<s>, loop or file:<path>#<index>")
