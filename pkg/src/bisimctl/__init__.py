"""Simulation, bisimulation, pullback composition and bisimulation-controller
synthesis for finite labeled transition systems."""

from .compose import PullbackResult, canonical_mediator, parallel, pullback
from .errors import (
    BisimError,
    CategoryError,
    ConstructionError,
    FaithfulnessUnverified,
    InputError,
    ParseError,
    PreconditionError,
)
from .morphism import (
    Morphism,
    check_morphism,
    compose,
    identity,
    is_faithful_on_paths,
    is_open,
    map_run,
    morphism,
)
from .relations import (
    Relation,
    Span,
    check_bisimulation,
    check_simulation,
    greatest_bisimulation,
    greatest_simulation,
    relation_from_span,
    span_from_relation,
)
from .synthesis import (
    Outcome,
    SynthesisProblem,
    SynthesisResult,
    VerificationReport,
    existence_check,
    synthesize,
    verify_controller,
)
from .system import (
    Run,
    TransitionSystem,
    Violation,
    enumerate_runs,
    is_deterministic,
    is_run,
    reachable,
    validate,
)

__version__ = "0.1.0"
