from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bisimctl.errors import InputError
from bisimctl.compose import parallel
from bisimctl.system import (
    Run,
    TransitionSystem,
    enumerate_runs,
    is_deterministic,
    is_run,
    reachable,
    validate,
    witnesses,
)

from generators import deterministic_systems, systems
from oracles import all_witnesses, all_words, exhaustive_is_run


def test_spec_is_valid(spec):
    assert validate(spec) == []
    assert len(spec.states) == 4 and len(spec.transitions) == 4 and spec.initial == "p0"


def test_unknown_initial_reported():
    ts = TransitionSystem("T", ("s0",), "x", ("a",), ())
    report = validate(ts)
    assert len(report) == 1
    assert report[0].element == "x" and "x" in str(report[0])


def test_unknown_label_reported():
    ts = TransitionSystem("T", ("s0", "s1"), "s0", ("a",), (("s0", "d", "s1"),))
    report = validate(ts)
    assert [v.element for v in report] == ["d"]


def test_duplicates_and_empty_sets_reported():
    ts = TransitionSystem("T", ("s0", "s0"), "s0", (), (("s0", "a", "s0"), ("s0", "a", "s0")))
    kinds = {v.kind for v in validate(ts)}
    assert {"duplicate-state", "duplicate-transition", "empty-labels", "transition-label"} <= kinds


def test_bad_identifier_reported():
    ts = TransitionSystem("T", ("s 0",), "s 0", ("a",), ())
    assert [v.kind for v in validate(ts)] == ["bad-state"]


def test_determinism(spec, plant):
    assert is_deterministic(plant)
    assert not is_deterministic(spec)
    assert is_deterministic(TransitionSystem("one", ("s",), "s", ("a",), ()))


def test_reachable_product(spec, plant):
    full = parallel(spec, plant).product
    assert len(full.states) == 16
    r = reachable(full)
    assert set(r.states) == {"(p0,q0)", "(p1,q1)", "(p2,q1)", "(p3,q3)"}
    assert r.labels == full.labels
    assert validate(r) == []


def test_reachable_identity_and_trim(spec):
    assert reachable(spec) == spec
    two = TransitionSystem("T", ("s0", "s1"), "s0", ("a",), ())
    assert reachable(two) == TransitionSystem("T", ("s0",), "s0", ("a",), ())


def test_is_run(spec):
    assert is_run(spec, "ab")
    assert is_run(spec, "ac")
    assert is_run(spec, ())
    assert not is_run(spec, "ba")
    # oracle: exhaustive witness search over state sequences of length 3
    assert not exhaustive_is_run(spec, ("b", "a"))


def test_is_run_unknown_label(spec):
    with pytest.raises(InputError):
        is_run(spec, "ad")


def test_enumerate_runs(spec, plant):
    assert enumerate_runs(spec, 2) == {(), ("a",), ("a", "b"), ("a", "c")}
    assert enumerate_runs(spec, 0) == {()}
    assert enumerate_runs(plant, 1) == {(), ("a",), ("b",)}
    for w in enumerate_runs(spec, 2):
        assert is_run(spec, w)


def test_witnesses(spec):
    runs = sorted(r.state_witness for r in witnesses(spec, "a"))
    assert runs == [("p0", "p1"), ("p0", "p2")]
    assert all(isinstance(r, Run) and r.is_run_of(spec) for r in witnesses(spec, "ab"))


@settings(max_examples=60, deadline=None)
@given(systems(max_states=3, labels=("a", "b")))
def test_reachable_idempotent(ts):
    once = reachable(ts)
    assert reachable(once) == once
    assert validate(once) == []
    assert once.initial in once.states


@settings(max_examples=40, deadline=None)
@given(systems(max_states=3, labels=("a", "b", "c")), st.integers(0, 4))
def test_enumerate_runs_exact(ts, k):
    runs = enumerate_runs(ts, k)
    for w in all_words(ts.labels, k):
        assert (w in runs) == exhaustive_is_run(ts, w)


@settings(max_examples=40, deadline=None)
@given(deterministic_systems(max_states=4, labels=("a", "b")))
def test_deterministic_witness_unique(ts):
    for w in all_words(ts.labels, 6):
        assert len(all_witnesses(ts, w)) <= 1


def test_words_cover_small_alphabet():
    # sanity of the oracle helper itself
    assert len(list(all_words(("a", "b"), 2))) == 1 + 2 + 4
    assert set(all_words(("a",), 1)) == {(), ("a",)}
    assert len(list(product("ab", repeat=0))) == 1
