"""Composition of transition systems as a pullback over a mediating system."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass

from .errors import CategoryError
from .morphism import Morphism, compose, morphism, require_fixed_labels
from .system import TransitionSystem, pair_names

MEDIATOR_STATE = "*"


@dataclass(frozen=True)
class PullbackResult:
    product: TransitionSystem
    proj_left: Morphism
    proj_right: Morphism
    to_mediator: Morphism

    def pair_of(self, state: str) -> tuple[str, str]:
        return (self.proj_left.state_map[state], self.proj_right.state_map[state])


def pullback(f: Morphism, g: Morphism, name: str | None = None) -> PullbackResult:
    """Pullback of ``f: T1 -> A`` and ``g: T2 -> A`` in the fixed-label category.

    States are the pairs with equal mediator images; a pair of equally labeled
    transitions synchronizes when both map onto the same mediator transition.
    Unreachable pairs are kept.
    """
    require_fixed_labels(f)
    require_fixed_labels(g)
    if f.target != g.target:
        raise CategoryError("morphisms do not share a mediator")
    t1, t2 = f.source, g.source
    fq, gq = f.state_map, g.state_map

    by_image = defaultdict(list)
    for q2 in t2.states:
        by_image[gq[q2]].append(q2)
    pairs = [(q1, q2) for q1 in t1.states for q2 in by_image.get(fq[q1], ())]
    names = pair_names(pairs)

    # identity label maps: equal mediator transitions means equal images at both ends
    moves2 = defaultdict(list)
    for p2, lab, q2 in t2.transition_set:
        moves2[lab, gq[p2], gq[q2]].append((p2, q2))
    transitions = []
    for p1, lab, q1 in t1.transition_set:
        for p2, q2 in moves2.get((lab, fq[p1], fq[q1]), ()):
            transitions.append((names[p1, p2], lab, names[q1, q2]))

    product = TransitionSystem(
        name or f"{t1.name}x{t2.name}",
        tuple(names.values()),
        names[t1.initial, t2.initial],
        t1.labels,
        tuple(transitions),
    )
    left = morphism(product, t1, {n: p[0] for p, n in names.items()})
    right = morphism(product, t2, {n: p[1] for p, n in names.items()})
    return PullbackResult(product, left, right, compose(f, left))


def canonical_mediator(labels):
    """One-state system over ``labels`` with a self-loop per label, and the morphism builder into it."""
    labels = tuple(sorted(set(labels)))
    mediator = TransitionSystem(
        "A",
        (MEDIATOR_STATE,),
        MEDIATOR_STATE,
        labels,
        tuple((MEDIATOR_STATE, lab, MEDIATOR_STATE) for lab in labels),
    )

    def to_mediator(ts: TransitionSystem) -> Morphism:
        return morphism(ts, mediator, {s: MEDIATOR_STATE for s in ts.states})

    return mediator, to_mediator


def parallel(t1: TransitionSystem, t2: TransitionSystem, name: str | None = None) -> PullbackResult:
    """Synchronous product: both systems move together on every label."""
    if t1.label_set != t2.label_set:
        raise CategoryError(f"label sets of {t1.name} and {t2.name} differ")
    _, to_mediator = canonical_mediator(t1.labels)
    return pullback(to_mediator(t1), to_mediator(t2), name=name or f"{t1.name}||{t2.name}")
