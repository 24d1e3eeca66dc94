"""Bisimulation-controller synthesis for deterministic plants.

Given ``plant_map: P -> A`` and ``spec_map: S -> A`` over a shared mediator
``A``, a controller exists iff the plant simulates the specification through
mediator-compatible pairs, and then the specification itself is a controller.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .compose import PullbackResult, canonical_mediator, pullback
from .errors import CategoryError, FaithfulnessUnverified, InputError
from .morphism import Morphism, check_morphism, is_open, require_fixed_labels
from .relations import Relation, greatest_bisimulation, greatest_simulation, simulation_pairs, span_from_relation
from .system import TransitionSystem, is_deterministic, reachable


class Outcome(enum.Enum):
    SUCCESS = "SUCCESS"
    NO_CONTROLLER = "NO_CONTROLLER"


@dataclass(frozen=True)
class SynthesisProblem:
    plant_map: Morphism
    spec_map: Morphism

    def __post_init__(self):
        require_fixed_labels(self.plant_map)
        require_fixed_labels(self.spec_map)
        if self.plant_map.target != self.spec_map.target:
            raise CategoryError("plant and specification do not share a mediator")
        for role, f in (("plant", self.plant_map), ("specification", self.spec_map)):
            report = check_morphism(f)
            if report:
                raise InputError(f"{role} map is not a morphism: " + "; ".join(map(str, report)))

    @classmethod
    def canonical(cls, plant: TransitionSystem, spec: TransitionSystem) -> "SynthesisProblem":
        """Problem over the one-state mediator, i.e. plain parallel composition."""
        if plant.label_set != spec.label_set:
            raise CategoryError(f"label sets of {plant.name} and {spec.name} differ")
        _, to_mediator = canonical_mediator(plant.labels)
        return cls(to_mediator(plant), to_mediator(spec))

    @property
    def plant(self) -> TransitionSystem:
        return self.plant_map.source

    @property
    def spec(self) -> TransitionSystem:
        return self.spec_map.source

    @property
    def mediator(self) -> TransitionSystem:
        return self.plant_map.target

    def compat(self):
        """Specification/plant pairs with the same mediator image."""
        sq, pq = self.spec_map.state_map, self.plant_map.state_map
        by_image = {}
        for p in self.plant.states:
            by_image.setdefault(pq[p], []).append(p)
        return {(s, p) for s in self.spec.states for p in by_image.get(sq[s], ())}


@dataclass(frozen=True)
class VerificationReport:
    bisimilar: bool
    mediator_commutes: bool
    faithfulness_checked: bool
    bisimulation_relation: Relation | None

    @property
    def passed(self) -> bool:
        return self.bisimilar and self.mediator_commutes and self.faithfulness_checked

    def lines(self):
        yield f"bisimilar: {'yes' if self.bisimilar else 'no'}"
        yield f"mediator commutes: {'yes' if self.mediator_commutes else 'no'}"
        yield f"plant deterministic: {'yes' if self.faithfulness_checked else 'no'}"
        yield f"verification: {'PASS' if self.passed else 'FAIL'}"


@dataclass(frozen=True)
class SynthesisResult:
    outcome: Outcome
    controller_map: Morphism | None
    closed_loop: PullbackResult | None
    witness_relation: Relation
    verification: VerificationReport
    diagnostic: str = ""

    @property
    def success(self) -> bool:
        return self.outcome is Outcome.SUCCESS


def _require_deterministic(prob):
    if not is_deterministic(prob.plant):
        raise FaithfulnessUnverified(
            f"plant {prob.plant.name} is not deterministic; controller synthesis needs a deterministic plant"
        )


def existence_check(prob: SynthesisProblem):
    """Greatest mediator-compatible simulation from the specification to the plant, or None."""
    _require_deterministic(prob)
    return greatest_simulation(prob.spec, prob.plant, prob.compat())


def _diagnose(prob: SynthesisProblem) -> str:
    spec, plant = prob.spec, prob.plant
    init = (spec.initial, plant.initial)
    rel = simulation_pairs(spec, plant, prob.compat())
    for lab, dst in spec.outgoing.get(spec.initial, ()):
        if not any((dst, t) in rel for t in plant.post(plant.initial, lab)):
            return f"specification transition {spec.initial} {lab} {dst} cannot be matched from plant state {plant.initial}"
    return f"initial pair {init} is not in any simulation"


def verify_controller(controller_map: Morphism, prob: SynthesisProblem, closed_loop=None) -> VerificationReport:
    """Check that ``controller x_A plant`` is bisimilar to the specification through mediator-compatible pairs.

    Bisimilarity of the initial states depends only on reachable states, so the
    check runs on the reachable parts of the specification and the closed loop.
    """
    faithful = is_deterministic(prob.plant)
    loop = closed_loop
    if loop is None:
        try:
            loop = pullback(controller_map, prob.plant_map)
        except CategoryError:
            return VerificationReport(False, False, faithful, None)
    spec = reachable(prob.spec)
    closed = reachable(loop.product)
    sq, cq = prob.spec_map.state_map, loop.to_mediator.state_map
    rel = greatest_bisimulation(
        spec, closed, colors=({s: sq[s] for s in spec.states}, {c: cq[c] for c in closed.states})
    )
    if rel is None:
        return VerificationReport(False, True, faithful, None)
    commutes = all(sq[s] == cq[c] for s, c in rel.pairs)
    span = span_from_relation(rel)
    legs_open = is_open(span.left_leg) and is_open(span.right_leg)
    return VerificationReport(legs_open, commutes, faithful, rel)


def synthesize(prob: SynthesisProblem) -> SynthesisResult:
    witness = existence_check(prob)
    if witness is None:
        return SynthesisResult(
            Outcome.NO_CONTROLLER,
            None,
            None,
            Relation(prob.spec, prob.plant, frozenset()),
            VerificationReport(False, False, True, None),
            _diagnose(prob),
        )
    controller_map = prob.spec_map
    closed_loop = pullback(controller_map, prob.plant_map, name=f"{prob.spec.name}||{prob.plant.name}")
    report = verify_controller(controller_map, prob, closed_loop)
    return SynthesisResult(Outcome.SUCCESS, controller_map, closed_loop, witness, report)
