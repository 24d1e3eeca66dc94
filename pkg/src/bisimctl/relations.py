"""Simulation and bisimulation relations, and spans of morphisms."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import CategoryError, ConstructionError, InputError
from .morphism import Morphism, morphism, require_fixed_labels
from .system import TransitionSystem, pair_names

Pair = tuple[str, str]


@dataclass(frozen=True)
class Relation:
    left: TransitionSystem
    right: TransitionSystem
    pairs: frozenset[Pair]

    def __post_init__(self):
        object.__setattr__(self, "pairs", frozenset(map(tuple, self.pairs)))
        bad = [p for p in self.pairs if p[0] not in self.left.state_set or p[1] not in self.right.state_set]
        if bad:
            raise InputError(f"relation pairs outside the state sets: {sorted(bad)}")

    def __contains__(self, pair):
        return tuple(pair) in self.pairs

    def __iter__(self):
        return iter(sorted(self.pairs))

    def __len__(self):
        return len(self.pairs)

    @property
    def initial_pair(self) -> Pair:
        return (self.left.initial, self.right.initial)

    def transpose(self) -> "Relation":
        return Relation(self.right, self.left, frozenset((b, a) for a, b in self.pairs))


@dataclass(frozen=True)
class Span:
    """``left <- apex -> right`` with both legs in the fixed-label category."""

    apex: TransitionSystem
    left_leg: Morphism
    right_leg: Morphism


def _same_labels(t1, t2):
    if t1.label_set != t2.label_set:
        raise CategoryError(f"label sets of {t1.name} and {t2.name} differ")


def _transfers(rel, t1, t2, pairs):
    for p1, p2 in pairs:
        for lab, q1 in t1.outgoing.get(p1, ()):
            if not any((q1, q2) in rel for q2 in t2.post(p2, lab)):
                return False
    return True


def check_simulation(r: Relation) -> bool:
    """Initial pair present and every left move matched on the right inside ``r``."""
    _same_labels(r.left, r.right)
    return r.initial_pair in r.pairs and _transfers(r.pairs, r.left, r.right, r.pairs)


def check_bisimulation(r: Relation) -> bool:
    if not check_simulation(r):
        return False
    back = {(b, a) for a, b in r.pairs}
    return _transfers(back, r.right, r.left, back)


def simulation_pairs(t1: TransitionSystem, t2: TransitionSystem, compat: Iterable[Pair] | None = None) -> set[Pair]:
    """Greatest subset of ``compat`` closed under the simulation transfer condition.

    Pairs are removed until a fixed point.  For each left transition target
    ``s'`` under label ``l`` and each right state ``p``, a counter holds how many
    ``l``-successors of ``p`` are still related to ``s'``; a pair ``(s, p)`` dies
    once some ``s -l-> s'`` has its counter at zero.  The initial pair gets no
    special treatment here.
    """
    _same_labels(t1, t2)
    if compat is None:
        rel = {(a, b) for a in t1.states for b in t2.states}
    else:
        rel = {tuple(p) for p in compat if p[0] in t1.state_set and p[1] in t2.state_set}

    pre1 = defaultdict(list)  # (l, s') -> [s]
    in_labels1 = defaultdict(set)  # s' -> {l}
    for s, lab, s2 in t1.transition_set:
        pre1[lab, s2].append(s)
        in_labels1[s2].add(lab)
    pre2 = defaultdict(list)  # (l, t) -> [p]
    for p, lab, t in t2.transition_set:
        pre2[lab, t].append(p)

    count = {}
    dead = []
    for lab, s2 in pre1:
        for p in t2.states:
            n = sum(1 for t in t2.post(p, lab) if (s2, t) in rel)
            count[p, lab, s2] = n
            if n == 0:
                dead.append((p, lab, s2))

    while dead:
        p, lab, s2 = dead.pop()
        for s in pre1[lab, s2]:
            if (s, p) not in rel:
                continue
            rel.discard((s, p))
            # (s, p) no longer supports predecessors of p paired with s
            for lab_in in in_labels1.get(s, ()):
                for p_pre in pre2.get((lab_in, p), ()):
                    key = (p_pre, lab_in, s)
                    count[key] -= 1
                    if count[key] == 0:
                        dead.append(key)

    return rel


def greatest_simulation(t1: TransitionSystem, t2: TransitionSystem, compat: Iterable[Pair] | None = None):
    """Largest simulation from ``t1`` to ``t2`` inside ``compat`` (all pairs when omitted).

    Returns None when the initial pair does not survive the fixed point.
    """
    rel = simulation_pairs(t1, t2, compat)
    if (t1.initial, t2.initial) not in rel:
        return None
    return Relation(t1, t2, frozenset(rel))


def coarsest_partition(ts: TransitionSystem, colors: Mapping[str, object] | None = None) -> dict[str, int]:
    """Coarsest bisimulation-stable partition of ``ts`` refining ``colors``.

    Blocks are split by the signature ``(block, {(label, successor block)})``
    until the block count stops growing.  Block ids are assigned in sorted
    state order, so the result is deterministic.
    """
    if colors is None:
        colors = {}
    keys = {}
    block = {}
    for s in ts.states:
        block[s] = keys.setdefault(repr(colors.get(s)), len(keys))
    n_blocks = len(keys)
    while True:
        keys = {}
        refined = {}
        for s in ts.states:
            sig = (block[s], frozenset((lab, block[dst]) for lab, dst in ts.outgoing.get(s, ())))
            refined[s] = keys.setdefault(sig, len(keys))
        block = refined
        if len(keys) == n_blocks:
            return block
        n_blocks = len(keys)


def disjoint_union(t1: TransitionSystem, t2: TransitionSystem):
    """Union of ``t1`` and ``t2`` with states tagged ``0:`` and ``1:``; initial is ``t1``'s."""
    _same_labels(t1, t2)
    tag1 = {s: f"0:{s}" for s in t1.states}
    tag2 = {s: f"1:{s}" for s in t2.states}
    union = TransitionSystem(
        f"{t1.name}+{t2.name}",
        tuple(tag1.values()) + tuple(tag2.values()),
        tag1[t1.initial],
        t1.labels,
        tuple((tag1[a], lab, tag1[b]) for a, lab, b in t1.transitions)
        + tuple((tag2[a], lab, tag2[b]) for a, lab, b in t2.transitions),
    )
    return union, tag1, tag2


def greatest_bisimulation(t1: TransitionSystem, t2: TransitionSystem, colors=None):
    """Largest bisimulation between ``t1`` and ``t2``, or None if the initial states are not bisimilar.

    ``colors`` optionally gives a pair of maps (left states, right states) to
    observations; related states must then have equal observations.
    """
    union, tag1, tag2 = disjoint_union(t1, t2)
    tagged_colors = None
    if colors is not None:
        c1, c2 = colors
        tagged_colors = {tag1[s]: c1[s] for s in t1.states}
        tagged_colors.update({tag2[s]: c2[s] for s in t2.states})
    block = coarsest_partition(union, tagged_colors)
    if block[tag1[t1.initial]] != block[tag2[t2.initial]]:
        return None
    members = defaultdict(list)
    for s in t2.states:
        members[block[tag2[s]]].append(s)
    pairs = frozenset((a, b) for a in t1.states for b in members.get(block[tag1[a]], ()))
    return Relation(t1, t2, pairs)


def span_from_relation(r: Relation, name: str | None = None) -> Span:
    """The span whose apex has the related pairs as states and the projections as legs."""
    _same_labels(r.left, r.right)
    if r.initial_pair not in r.pairs:
        raise ConstructionError(f"initial pair {r.initial_pair} is not in the relation")
    names = pair_names(r.pairs)
    transitions = []
    for (p1, p2), src in names.items():
        for lab, q1 in r.left.outgoing.get(p1, ()):
            for q2 in r.right.post(p2, lab):
                dst = names.get((q1, q2))
                if dst is not None:
                    transitions.append((src, lab, dst))
    apex = TransitionSystem(
        name or f"{r.left.name}~{r.right.name}",
        tuple(names.values()),
        names[r.initial_pair],
        r.left.labels,
        tuple(transitions),
    )
    left = morphism(apex, r.left, {n: pair[0] for pair, n in names.items()})
    right = morphism(apex, r.right, {n: pair[1] for pair, n in names.items()})
    return Span(apex, left, right)


def relation_from_span(span: Span) -> Relation:
    require_fixed_labels(span.left_leg)
    require_fixed_labels(span.right_leg)
    a, b = span.left_leg.state_map, span.right_leg.state_map
    return Relation(
        span.left_leg.target,
        span.right_leg.target,
        frozenset((a[t], b[t]) for t in span.apex.states),
    )
