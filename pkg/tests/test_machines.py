import json

import pytest
from hypothesis import given, strategies as st

from cantor_ergodic.machines import (
    HALT,
    Catalog,
    CatalogEntry,
    CatalogError,
    Clock,
    Loop,
    TuringMachine,
    load_catalog,
    run,
    save_catalog,
)


def test_run_examples():
    r = run(Clock(5), 10)
    assert r.halted and r.steps == 5
    r = run(Loop(), 10**6)
    assert not r.halted and r.steps == 10**6
    one_shot = TuringMachine(0, {(0, "B"): ("1", "R", HALT)})
    assert run(one_shot, 3).halted and run(one_shot, 3).steps == 1


def test_table_machine_counter():
    # writes three 1s moving right, then halts on its 4th step
    tm = TuringMachine(0, {
        (0, "B"): ("1", "R", 1),
        (1, "B"): ("1", "R", 2),
        (2, "B"): ("1", "R", 3),
        (3, "B"): ("1", "L", HALT),
    })
    assert run(tm, 3).halted is False
    assert run(tm, 4).steps == 4 and run(tm, 4).halted


def test_undefined_transition_halts_when_it_would_fire():
    tm = TuringMachine(0, {(0, "B"): ("1", "L", 1), (1, "B"): ("1", "R", 1)})
    # step 1: 0,B -> state 1 at -1; step 2: 1,B -> state 1 at 0; step 3: (1, "1") undefined
    assert run(tm, 2).halted is False
    assert run(tm, 3).steps == 3 and run(tm, 3).halted


def test_table_machine_that_loops():
    tm = TuringMachine(0, {(0, "B"): ("B", "R", 0)})
    assert not run(tm, 500).halted


@given(st.integers(1, 200), st.integers(0, 400))
def test_clock_halts_exactly_at_s(s, t):
    assert run(Clock(s), t).halted == (t >= s)


@given(st.integers(1, 60), st.integers(0, 60), st.integers(0, 60))
def test_monotone(s, t, extra):
    r = run(Clock(s), t)
    if r.halted:
        assert run(Clock(s), t + extra) == r


def test_bad_machines():
    with pytest.raises(ValueError):
        Clock(0)
    with pytest.raises(ValueError):
        TuringMachine(0, {(0, "B"): ("1", "R", 7)})
    with pytest.raises(ValueError):
        run(Loop(), -1)


def test_load_catalog():
    cat = load_catalog('[{"kind":"clock","s":7}]')
    assert len(cat) == 1 and cat[0].machine == Clock(7) and not cat[0].annotated
    with pytest.raises(CatalogError, match="entry 0"):
        load_catalog('[{"kind":"clock","s":0}]')
    with pytest.raises(CatalogError, match="entry 1"):
        load_catalog('[{"kind":"loop"}, {"kind":"warp"}]')
    with pytest.raises(CatalogError):
        load_catalog("{}")


def test_catalog_round_trip():
    cat = Catalog((
        CatalogEntry(Clock(3), True, 3),
        CatalogEntry(Loop(), True, None),
        CatalogEntry(TuringMachine(0, {(0, "B"): ("1", "R", 1), (1, "B"): ("0", "L", HALT)}), True, 2),
    ))
    text = save_catalog(cat)
    again = load_catalog(text)
    assert again == cat
    assert json.loads(save_catalog(again)) == json.loads(text)


def test_table_truth_matches_run():
    cat = load_catalog(json.dumps([
        {"kind": "table", "start": 0, "transitions": {"0,B": ["1", "R", 1], "1,B": [0, "L", "HALT"]}, "truth": {"halts_at": 2}}
    ]))
    assert run(cat[0].machine, 10).steps == cat[0].halts_at
