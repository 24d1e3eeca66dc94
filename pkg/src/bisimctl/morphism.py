"""Morphisms of transition systems: checking, run mapping, openness, faithfulness."""

from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import dataclass
from typing import Mapping

from .errors import CategoryError, InputError
from .system import Run, TransitionSystem, Violation, reachable_states


@dataclass(frozen=True, eq=False)
class Morphism:
    """A pair of maps ``(state_map, label_map)`` from ``source`` to ``target``."""

    source: TransitionSystem
    target: TransitionSystem
    state_map: Mapping[str, str]
    label_map: Mapping[str, str]

    def __eq__(self, other):
        if not isinstance(other, Morphism):
            return NotImplemented
        return (
            self.source == other.source
            and self.target == other.target
            and dict(self.state_map) == dict(other.state_map)
            and dict(self.label_map) == dict(other.label_map)
        )

    def __hash__(self):
        return hash((self.source, self.target, frozenset(self.state_map.items())))

    @property
    def is_label_identity(self) -> bool:
        return all(self.label_map.get(lab) == lab for lab in self.source.labels)

    def __call__(self, state: str) -> str:
        return self.state_map[state]


def morphism(source, target, state_map, label_map=None) -> Morphism:
    """Build a morphism; ``label_map`` defaults to the identity on source labels."""
    if label_map is None:
        label_map = {lab: lab for lab in source.labels}
    return Morphism(source, target, dict(state_map), dict(label_map))


def identity(ts: TransitionSystem) -> Morphism:
    return morphism(ts, ts, {s: s for s in ts.states})


def compose(g: Morphism, f: Morphism) -> Morphism:
    """``g . f``: first ``f``, then ``g``."""
    if f.target != g.source:
        raise InputError("morphisms are not composable")
    return Morphism(
        f.source,
        g.target,
        {s: g.state_map[f.state_map[s]] for s in f.source.states},
        {lab: g.label_map[f.label_map[lab]] for lab in f.source.labels},
    )


def _require_total(f: Morphism):
    missing = [s for s in f.source.states if s not in f.state_map]
    if missing:
        raise InputError(f"state map is not total: no image for {', '.join(missing)}")
    missing = [lab for lab in f.source.labels if lab not in f.label_map]
    if missing:
        raise InputError(f"label map is not total: no image for {', '.join(missing)}")


def require_fixed_labels(f: Morphism):
    if f.source.label_set != f.target.label_set:
        raise CategoryError(f"label sets of {f.source.name} and {f.target.name} differ")
    if not f.is_label_identity:
        raise CategoryError("label map is not the identity")


def check_morphism(f: Morphism) -> list[Violation]:
    """Return the violated morphism conditions; empty iff ``f`` is a morphism."""
    _require_total(f)
    report = []
    for s, image in f.state_map.items():
        if image not in f.target.state_set:
            report.append(Violation("state-image", s, f"state {s} maps to {image!r}, which is not a target state"))
    for lab, image in f.label_map.items():
        if image not in f.target.label_set:
            report.append(Violation("label-image", lab, f"label {lab} maps to {image!r}, which is not a target label"))
    if f.state_map[f.source.initial] != f.target.initial:
        report.append(
            Violation(
                "initial",
                f.source.initial,
                f"initial state {f.source.initial} maps to {f.state_map[f.source.initial]}, "
                f"not to the target initial state {f.target.initial}",
            )
        )
    for t in f.source.transitions:
        src, lab, dst = t
        image = (f.state_map[src], f.label_map[lab], f.state_map[dst])
        if image not in f.target.transition_set:
            report.append(
                Violation(
                    "transition",
                    t,
                    f"transition {src} {lab} {dst} maps to {' '.join(image)}, which is not a target transition",
                )
            )
    return report


def map_run(f: Morphism, run: Run) -> Run:
    if not run.is_run_of(f.source):
        raise InputError(f"not a run of {f.source.name}: {run}")
    return Run(
        tuple(f.label_map[lab] for lab in run.labels_word),
        tuple(f.state_map[s] for s in run.state_witness),
    )


def is_open(f: Morphism) -> bool:
    """Path-lifting property in its local (zig-zag) form.

    Every target transition leaving the image of a reachable source state must
    be matched by an equally labeled source transition whose target has the
    same image.
    """
    require_fixed_labels(f)
    fq = f.state_map
    for p in reachable_states(f.source):
        image = fq[p]
        lifted = {(lab, fq[dst]) for lab, dst in f.source.outgoing.get(p, ())}
        for step in f.target.outgoing.get(image, ()):
            if step not in lifted:
                return False
    return True


def zigzag_failures(f: Morphism) -> list[tuple[str, str, str]]:
    """Source states paired with the target transitions that cannot be lifted."""
    require_fixed_labels(f)
    fq = f.state_map
    failures = []
    for p in sorted(reachable_states(f.source)):
        lifted = {(lab, fq[dst]) for lab, dst in f.source.outgoing.get(p, ())}
        for lab, dst in f.target.outgoing.get(fq[p], ()):
            if (lab, dst) not in lifted:
                failures.append((p, lab, dst))
    return failures


def is_faithful_on_paths(f: Morphism, depth: int) -> bool:
    """True iff no run of length ``<= depth`` has two distinct lifts along ``f``.

    Two lifts of the same image path first differ at a source state with two
    distinct equally labeled successors that ``f`` sends to the same state;
    the search looks for such a branching point within ``depth - 1`` steps of
    the initial state.
    """
    if depth < 1:
        raise InputError("depth must be positive")
    fq, fl = f.state_map, f.label_map
    dist = {f.source.initial: 0}
    queue = deque([f.source.initial])
    while queue:
        p = queue.popleft()
        images = defaultdict(set)
        for lab, dst in f.source.outgoing.get(p, ()):
            key = (fl[lab], fq[dst])
            images[key].add(dst)
            if len(images[key]) > 1:
                return False
        if dist[p] + 1 < depth:
            for _, dst in f.source.outgoing.get(p, ()):
                if dst not in dist:
                    dist[dst] = dist[p] + 1
                    queue.append(dst)
    return True
