"""Small ready-made systems: a nondeterministic specification, a deterministic
plant it can be enforced on, and the resulting closed loop."""

from .system import TransitionSystem

LABELS = ("a", "b", "c")


def spec_system() -> TransitionSystem:
    return TransitionSystem.build(
        "T_S",
        [("p0", "a", "p1"), ("p0", "a", "p2"), ("p1", "b", "p3"), ("p2", "c", "p3")],
        "p0",
        labels=LABELS,
    )


def plant_system() -> TransitionSystem:
    return TransitionSystem.build(
        "T_P",
        [("q0", "a", "q1"), ("q0", "b", "q2"), ("q1", "b", "q3"), ("q1", "c", "q3"), ("q2", "a", "q3")],
        "q0",
        labels=LABELS,
    )


def closed_loop_system() -> TransitionSystem:
    """Reachable closed loop with states renamed ``r0..r3``."""
    return TransitionSystem.build(
        "T_SxT_P",
        [("r0", "a", "r1"), ("r0", "a", "r2"), ("r1", "b", "r3"), ("r2", "c", "r3")],
        "r0",
        labels=LABELS,
    )
