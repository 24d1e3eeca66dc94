import random
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bisimctl.compose import canonical_mediator, parallel, pullback
from bisimctl.errors import CategoryError
from bisimctl.morphism import check_morphism, compose, identity, morphism
from bisimctl.system import TransitionSystem, enumerate_runs, is_deterministic, reachable, validate

from generators import random_pair, systems
from helpers import isomorphic
from oracles import brute_runs, enumerate_state_maps, is_morphism_raw


def assert_square_commutes(result, f, g):
    assert compose(f, result.proj_left) == result.to_mediator
    assert compose(g, result.proj_right) == result.to_mediator
    for m in (result.proj_left, result.proj_right, result.to_mediator):
        assert check_morphism(m) == []


def test_figure_product(spec, plant, closed_loop):
    mediator, to_a = canonical_mediator(spec.labels)
    result = pullback(to_a(spec), to_a(plant))
    assert len(result.product.states) == 16
    assert validate(result.product) == []
    assert isomorphic(result.product, closed_loop)
    loop = reachable(result.product)
    assert sorted(loop.transitions) == [
        ("(p0,q0)", "a", "(p1,q1)"),
        ("(p0,q0)", "a", "(p2,q1)"),
        ("(p1,q1)", "b", "(p3,q3)"),
        ("(p2,q1)", "c", "(p3,q3)"),
    ]
    assert_square_commutes(result, to_a(spec), to_a(plant))
    assert isomorphic(parallel(spec, plant).product, result.product, reachable_only=False)


def test_pullback_of_identities_is_diagonal(spec):
    result = pullback(identity(spec), identity(spec))
    assert {result.pair_of(s) for s in result.product.states} == {(s, s) for s in spec.states}
    assert isomorphic(result.product, spec, reachable_only=False)


def test_pullback_over_two_state_mediator():
    labels = ("a", "b")
    med = TransitionSystem.build("M", [("m0", "a", "m1"), ("m1", "b", "m0"), ("m0", "b", "m0")], "m0", labels=labels)
    t1 = TransitionSystem.build("X", [("x0", "a", "x1"), ("x1", "b", "x0"), ("x0", "b", "x0")], "x0", labels=labels)
    t2 = TransitionSystem.build("Y", [("y0", "a", "y1"), ("y1", "b", "y0"), ("y0", "b", "y0")], "y0", labels=labels)
    f = morphism(t1, med, {"x0": "m0", "x1": "m1"})
    g = morphism(t2, med, {"y0": "m0", "y1": "m1"})
    result = pullback(f, g)
    want = {(a, b) for a, b in product(t1.states, t2.states) if f(a) == g(b)}
    assert {result.pair_of(s) for s in result.product.states} == want == {("x0", "y0"), ("x1", "y1")}
    assert_square_commutes(result, f, g)


def test_canonical_mediator(spec):
    med, to_a = canonical_mediator(("a", "b", "c"))
    assert med.states == ("*",) and len(med.transitions) == 3
    assert check_morphism(to_a(spec)) == []
    assert enumerate_runs(med, 4) == brute_runs(med, 4)
    assert len(enumerate_runs(med, 4)) == sum(3**k for k in range(5))


def test_parallel_with_mediator_is_identity(spec):
    med, _ = canonical_mediator(spec.labels)
    assert isomorphic(parallel(spec, med).product, spec, reachable_only=False)


def test_label_mismatch(spec):
    other = TransitionSystem("U", ("u",), "u", ("a",), ())
    with pytest.raises(CategoryError):
        parallel(spec, other)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(0, 4))
def test_runs_intersection(seed, k):
    t1, t2 = random_pair(random.Random(seed), 3, 2)
    runs = enumerate_runs(parallel(t1, t2).product, k)
    assert runs == enumerate_runs(t1, k) & enumerate_runs(t2, k)
    assert runs == brute_runs(t1, k) & brute_runs(t2, k)


@settings(max_examples=40, deadline=None)
@given(systems(max_states=3, labels=("a", "b")))
def test_self_product_runs(ts):
    if is_deterministic(ts):
        assert enumerate_runs(parallel(ts, ts).product, 4) == enumerate_runs(ts, 4)


@settings(max_examples=25, deadline=None)
@given(
    systems(max_states=2, labels=("a",), prefix="x"),
    systems(max_states=2, labels=("a",), prefix="y"),
    systems(max_states=2, labels=("a",), prefix="z"),
)
def test_universal_property(x, y, z):
    """Every cone from z factors through the product in exactly one way."""
    result = parallel(x, y)
    prod = result.product
    _, to_a = canonical_mediator(("a",))
    for am in enumerate_state_maps(z.states, x.states):
        if not is_morphism_raw(z, x, am):
            continue
        for bm in enumerate_state_maps(z.states, y.states):
            if not is_morphism_raw(z, y, bm):
                continue
            # canonical mediator: every pair of legs commutes
            factorizations = [
                gm
                for gm in enumerate_state_maps(z.states, prod.states)
                if is_morphism_raw(z, prod, gm)
                and all(result.pair_of(gm[s]) == (am[s], bm[s]) for s in z.states)
            ]
            assert len(factorizations) == 1


@settings(max_examples=30, deadline=None)
@given(
    systems(max_states=3, labels=("a", "b"), prefix="x"),
    systems(max_states=3, labels=("a", "b"), prefix="y"),
    systems(max_states=2, labels=("a", "b"), prefix="z"),
)
def test_parallel_commutative_associative(x, y, z):
    assert isomorphic(parallel(x, y).product, parallel(y, x).product)
    left = parallel(parallel(x, y).product, z).product
    right = parallel(x, parallel(y, z).product).product
    assert isomorphic(left, right)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_general_mediator_square(seed):
    rng = random.Random(seed)
    labels = ("a", "b")
    med = TransitionSystem(
        "M", ("m0", "m1"), "m0", labels, tuple((a, l, b) for a in ("m0", "m1") for l in labels for b in ("m0", "m1"))
    )
    t1, t2 = random_pair(rng, 3, 2)
    t1 = TransitionSystem(t1.name, t1.states, t1.initial, labels, t1.transitions)
    t2 = TransitionSystem(t2.name, t2.states, t2.initial, labels, t2.transitions)
    fm = {s: ("m0" if s == t1.initial else rng.choice(["m0", "m1"])) for s in t1.states}
    gm = {s: ("m0" if s == t2.initial else rng.choice(["m0", "m1"])) for s in t2.states}
    f, g = morphism(t1, med, fm), morphism(t2, med, gm)
    result = pullback(f, g)
    assert_square_commutes(result, f, g)
    for s in result.product.states:
        a, b = result.pair_of(s)
        assert fm[a] == gm[b]
    # pullback over a complete mediator differs from the plain product only by mediator-incompatible pairs
    plain = parallel(t1, t2)
    kept = {plain.pair_of(s) for s in plain.product.states if fm[plain.pair_of(s)[0]] == gm[plain.pair_of(s)[1]]}
    assert {result.pair_of(s) for s in result.product.states} == kept
