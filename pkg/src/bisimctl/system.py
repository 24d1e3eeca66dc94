"""Finite labeled transition systems and their basic semantic queries.

A :class:`TransitionSystem` is an immutable value ``(states, initial, labels,
transitions)``.  Construction never validates; call :func:`validate` to get the
list of violated invariants.  States and labels are opaque strings.
"""

from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, NamedTuple

from .errors import InputError

Transition = tuple[str, str, str]
Word = tuple[str, ...]


class Violation(NamedTuple):
    kind: str
    element: object
    message: str

    def __str__(self):
        return self.message


@dataclass(frozen=True)
class TransitionSystem:
    name: str
    states: tuple[str, ...]
    initial: str
    labels: tuple[str, ...]
    transitions: tuple[Transition, ...]

    def __post_init__(self):
        # sorted, duplicates preserved so that validate() can report them
        object.__setattr__(self, "states", tuple(sorted(self.states)))
        object.__setattr__(self, "labels", tuple(sorted(self.labels)))
        object.__setattr__(self, "transitions", tuple(sorted(tuple(t) for t in self.transitions)))

    @classmethod
    def build(cls, name, transitions, initial, states=(), labels=()):
        """Build a system, collecting states and labels from the transitions too."""
        transitions = set(map(tuple, transitions))
        all_states = set(states) | {initial}
        all_labels = set(labels)
        for src, lab, dst in transitions:
            all_states.update((src, dst))
            all_labels.add(lab)
        return cls(name, tuple(all_states), initial, tuple(all_labels), tuple(transitions))

    @cached_property
    def state_set(self) -> frozenset[str]:
        return frozenset(self.states)

    @cached_property
    def label_set(self) -> frozenset[str]:
        return frozenset(self.labels)

    @cached_property
    def transition_set(self) -> frozenset[Transition]:
        return frozenset(self.transitions)

    @cached_property
    def successors(self) -> dict[tuple[str, str], tuple[str, ...]]:
        """``(state, label) -> targets``; missing keys mean no transition."""
        post = defaultdict(list)
        for src, lab, dst in self.transition_set:
            post[src, lab].append(dst)
        return {k: tuple(sorted(v)) for k, v in post.items()}

    @cached_property
    def outgoing(self) -> dict[str, tuple[tuple[str, str], ...]]:
        """``state -> ((label, target), ...)`` in sorted order."""
        out = defaultdict(list)
        for src, lab, dst in self.transitions:
            out[src].append((lab, dst))
        return {k: tuple(v) for k, v in out.items()}

    def post(self, state: str, label: str) -> tuple[str, ...]:
        return self.successors.get((state, label), ())

    def __str__(self):
        return f"{self.name}: {len(self.states)} states, {len(self.transitions)} transitions"


@dataclass(frozen=True)
class Run:
    labels_word: Word
    state_witness: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "labels_word", tuple(self.labels_word))
        object.__setattr__(self, "state_witness", tuple(self.state_witness))

    def is_run_of(self, ts: TransitionSystem) -> bool:
        """Check the run invariants against ``ts``."""
        word, states = self.labels_word, self.state_witness
        if len(states) != len(word) + 1 or states[0] != ts.initial:
            return False
        return all(
            (states[i], lab, states[i + 1]) in ts.transition_set for i, lab in enumerate(word)
        )


def is_identifier(token) -> bool:
    return isinstance(token, str) and token != "" and "#" not in token and not any(
        ch.isspace() for ch in token
    )


def validate(ts: TransitionSystem) -> list[Violation]:
    """Return every violated invariant of ``ts``; an empty list means valid."""
    report = []
    if not ts.states:
        report.append(Violation("empty-states", None, "state set is empty"))
    if not ts.labels:
        report.append(Violation("empty-labels", None, "label set is empty"))
    for kind, items in (("state", ts.states), ("label", ts.labels)):
        seen = set()
        for item in items:
            if item in seen:
                report.append(Violation(f"duplicate-{kind}", item, f"duplicate {kind} {item!r}"))
            seen.add(item)
            if not is_identifier(item):
                report.append(Violation(f"bad-{kind}", item, f"{kind} {item!r} is not a valid identifier"))
    if ts.initial not in ts.state_set:
        report.append(Violation("initial", ts.initial, f"initial state {ts.initial!r} is not a state"))
    seen = set()
    for t in ts.transitions:
        src, lab, dst = t
        if t in seen:
            report.append(Violation("duplicate-transition", t, f"duplicate transition {src} {lab} {dst}"))
        seen.add(t)
        for end, role in ((src, "source"), (dst, "target")):
            if end not in ts.state_set:
                report.append(
                    Violation("transition-state", end, f"transition {src} {lab} {dst}: {role} {end!r} is not a state")
                )
        if lab not in ts.label_set:
            report.append(
                Violation("transition-label", lab, f"transition {src} {lab} {dst}: label {lab!r} is not a label")
            )
    return report


def is_deterministic(ts: TransitionSystem) -> bool:
    return all(len(targets) == 1 for targets in ts.successors.values())


def reachable_states(ts: TransitionSystem) -> set[str]:
    seen = {ts.initial}
    queue = deque([ts.initial])
    while queue:
        state = queue.popleft()
        for _, dst in ts.outgoing.get(state, ()):
            if dst not in seen:
                seen.add(dst)
                queue.append(dst)
    return seen


def reachable(ts: TransitionSystem) -> TransitionSystem:
    """Restrict ``ts`` to the states reachable from its initial state.

    The label set is kept unchanged even if some labels no longer occur.
    """
    keep = reachable_states(ts)
    if len(keep) == len(ts.state_set):
        return ts
    return TransitionSystem(
        ts.name,
        tuple(s for s in ts.states if s in keep),
        ts.initial,
        ts.labels,
        tuple(t for t in ts.transitions if t[0] in keep),
    )


def _check_word(ts, word):
    for lab in word:
        if lab not in ts.label_set:
            raise InputError(f"label {lab!r} is not in the label set of {ts.name}")


def is_run(ts: TransitionSystem, word: Iterable[str]) -> bool:
    """True iff some state witness makes ``word`` a run of ``ts``."""
    word = tuple(word)
    _check_word(ts, word)
    current = {ts.initial}
    for lab in word:
        current = {dst for src in current for dst in ts.post(src, lab)}
        if not current:
            return False
    return True


def witnesses(ts: TransitionSystem, word: Iterable[str]) -> Iterator[Run]:
    """Yield every :class:`Run` of ``ts`` whose label word is ``word``."""
    word = tuple(word)
    _check_word(ts, word)

    def extend(prefix):
        if len(prefix) == len(word) + 1:
            yield Run(word, prefix)
            return
        for dst in ts.post(prefix[-1], word[len(prefix) - 1]):
            yield from extend(prefix + (dst,))

    yield from extend((ts.initial,))


def enumerate_runs(ts: TransitionSystem, max_length: int) -> set[Word]:
    """All run words of length at most ``max_length`` (the empty word included)."""
    if max_length < 0:
        raise InputError("max_length must be nonnegative")
    runs = {()}
    frontier = {(): frozenset({ts.initial})}
    for _ in range(max_length):
        grown = {}
        for word, current in frontier.items():
            by_label = defaultdict(set)
            for src in current:
                for lab, dst in ts.outgoing.get(src, ()):
                    by_label[lab].add(dst)
            for lab, targets in by_label.items():
                grown[word + (lab,)] = frozenset(targets)
        runs.update(grown)
        frontier = grown
    return runs


def pair_names(pairs: Iterable[tuple[str, str]]) -> dict[tuple[str, str], str]:
    """Deterministic, collision-free identifiers ``(s1,s2)`` for state pairs."""
    names = {}
    taken = set()
    for pair in sorted(set(pairs)):
        base = f"({pair[0]},{pair[1]})"
        name, k = base, 1
        while name in taken:
            name = f"{base}~{k}"
            k += 1
        taken.add(name)
        names[pair] = name
    return names
