"""Command line entry point.

Exit codes: 0 success or property holds, 1 property fails, 2 input or parse
error, 3 precondition violation (label mismatch, nondeterministic plant, ...).
Human-readable reports go to stdout as ``#`` comment lines, so the output of a
command that emits a document can be fed back to another command unchanged.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import __version__
from .compose import canonical_mediator, parallel, pullback
from .errors import InputError, PreconditionError
from .morphism import check_morphism, is_open, zigzag_failures
from .relations import greatest_bisimulation, greatest_simulation
from .synthesis import SynthesisProblem, synthesize, verify_controller
from .system import enumerate_runs, is_deterministic, reachable, validate
from .textio import parse_morphism, parse_relation, parse_system, serialize

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_PRECONDITION = 0, 1, 2, 3


class _Out:
    def __init__(self, stream, quiet):
        self.stream = stream
        self.quiet = quiet

    def report(self, *lines):
        if not self.quiet:
            for line in lines:
                self.stream.write(f"# {line}\n")

    def document(self, value):
        self.stream.write(serialize(value))


def _read(path) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text(encoding="utf-8")


def _system(path, strict=True):
    return parse_system(_read(path), strict=strict)


def _morphism(path, source, target, args, out):
    f = parse_morphism(_read(path), source, target, check=not args.no_check)
    if args.no_check:
        report = check_morphism(f)
        out.report(f"morphism {path}: {'valid' if not report else 'INVALID'}", *map(str, report))
    return f


def _write(path, value):
    Path(path).write_text(serialize(value), encoding="utf-8")


def cmd_validate(args, out):
    ts = _system(args.system, strict=False)
    report = validate(ts)
    out.report(f"{ts.name}: {'valid' if not report else f'{len(report)} violation(s)'}", *map(str, report))
    return EXIT_OK if not report else EXIT_FAIL


def cmd_deterministic(args, out):
    ts = _system(args.system)
    det = is_deterministic(ts)
    out.report(f"{ts.name}: {'deterministic' if det else 'nondeterministic'}")
    return EXIT_OK if det else EXIT_FAIL


def cmd_reachable(args, out):
    out.document(reachable(_system(args.system)))
    return EXIT_OK


def cmd_runs(args, out):
    ts = _system(args.system)
    if args.max < 0:
        raise InputError("--max must be nonnegative")
    words = sorted(enumerate_runs(ts, args.max), key=lambda w: (len(w), w))
    out.report(f"{ts.name}: {len(words)} run(s) of length <= {args.max}")
    for word in words:
        out.stream.write(" ".join(("run",) + word) + "\n")
    return EXIT_OK


def cmd_compose(args, out):
    result = parallel(_system(args.left), _system(args.right))
    out.document(reachable(result.product) if args.reachable else result.product)
    return EXIT_OK


def cmd_pullback(args, out):
    left, right, mediator = _system(args.left), _system(args.right), _system(args.mediator)
    f = _morphism(args.left_map, left, mediator, args, out)
    g = _morphism(args.right_map, right, mediator, args, out)
    result = pullback(f, g)
    out.document(reachable(result.product) if args.reachable else result.product)
    return EXIT_OK


def cmd_sim(args, out):
    t1, t2 = _system(getattr(args, "from")), _system(args.to)
    compat = parse_relation(_read(args.compat), t1, t2).pairs if args.compat else None
    rel = greatest_simulation(t1, t2, compat)
    if rel is None:
        out.report(f"no simulation from {t1.name} to {t2.name}")
        return EXIT_FAIL
    out.report(f"{t2.name} simulates {t1.name}: greatest simulation has {len(rel)} pair(s)")
    out.document(rel)
    return EXIT_OK


def cmd_bisim(args, out):
    t1, t2 = _system(args.left), _system(args.right)
    rel = greatest_bisimulation(t1, t2)
    if rel is None:
        out.report(f"{t1.name} and {t2.name} are not bisimilar")
        return EXIT_FAIL
    out.report(f"{t1.name} and {t2.name} are bisimilar: greatest bisimulation has {len(rel)} pair(s)")
    out.document(rel)
    return EXIT_OK


def cmd_check_open(args, out):
    source, target = _system(args.source), _system(args.target)
    f = _morphism(args.map, source, target, args, out)
    if check_morphism(f):
        out.report("not a morphism; openness undefined")
        return EXIT_FAIL
    if is_open(f):
        out.report(f"morphism {source.name} -> {target.name} is open")
        return EXIT_OK
    out.report(f"morphism {source.name} -> {target.name} is not open")
    out.report(*(f"state {p}: target move {lab} -> {dst} has no lift" for p, lab, dst in zigzag_failures(f)))
    return EXIT_FAIL


def _problem(args, out):
    plant, spec = _system(args.plant), _system(args.spec)
    if args.mediator is None:
        if args.plant_map or args.spec_map:
            raise InputError("--plant-map/--spec-map need --mediator")
        return SynthesisProblem.canonical(plant, spec)
    if not (args.plant_map and args.spec_map):
        raise InputError("--mediator needs both --plant-map and --spec-map")
    mediator = _system(args.mediator)
    return SynthesisProblem(
        _morphism(args.plant_map, plant, mediator, args, out),
        _morphism(args.spec_map, spec, mediator, args, out),
    )


def cmd_synthesize(args, out):
    prob = _problem(args, out)
    result = synthesize(prob)
    out.report(f"outcome: {result.outcome.value}")
    if not result.success:
        out.report(result.diagnostic)
        return EXIT_FAIL
    closed = reachable(result.closed_loop.product)
    out.report(
        f"controller: {prob.spec.name}",
        f"closed loop: {len(closed.states)} reachable state(s), {len(closed.transitions)} transition(s)",
        *result.verification.lines(),
    )
    out.document(result.witness_relation)
    if args.controller_out:
        _write(args.controller_out, prob.spec)
    if args.closed_loop_out:
        _write(args.closed_loop_out, closed)
    return EXIT_OK if result.verification.passed else EXIT_FAIL


def cmd_verify(args, out):
    prob = _problem(args, out)
    controller = _system(args.controller)
    if args.mediator is None:
        _, to_mediator = canonical_mediator(prob.mediator.labels)
        controller_map = to_mediator(controller)
    elif args.controller_map:
        controller_map = _morphism(args.controller_map, controller, prob.mediator, args, out)
    else:
        raise InputError("--mediator needs --controller-map for verify")
    report = verify_controller(controller_map, prob)
    out.report(*report.lines())
    if report.passed:
        out.document(report.bisimulation_relation)
    return EXIT_OK if report.passed else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bisimctl",
        description="Simulation, bisimulation, composition and controller synthesis for labeled transition systems.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-q", "--quiet", action="store_true", help="suppress '#' report lines")
    parser.add_argument("--no-check", action="store_true", help="accept invalid morphism documents and report them")
    # the same flags are accepted after the subcommand; SUPPRESS keeps the global value
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-q", "--quiet", action="store_true", default=argparse.SUPPRESS, help=argparse.SUPPRESS)
    common.add_argument("--no-check", action="store_true", default=argparse.SUPPRESS, help=argparse.SUPPRESS)
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name, func, help_):
        p = sub.add_parser(name, help=help_, parents=[common])
        p.set_defaults(func=func)
        return p

    p = add("validate", cmd_validate, "list violated invariants of a system")
    p.add_argument("system")
    p = add("deterministic", cmd_deterministic, "exit 0 iff the system is deterministic")
    p.add_argument("system")
    p = add("reachable", cmd_reachable, "print the reachable part of a system")
    p.add_argument("system")
    p = add("runs", cmd_runs, "list all runs up to a given length")
    p.add_argument("--max", type=int, required=True, metavar="K")
    p.add_argument("system")
    p = add("compose", cmd_compose, "synchronous parallel composition")
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("--reachable", action="store_true", help="keep only reachable product states")
    p = add("pullback", cmd_pullback, "pullback of two morphisms into a mediator")
    p.add_argument("--left-map", required=True, metavar="F")
    p.add_argument("--right-map", required=True, metavar="G")
    p.add_argument("--reachable", action="store_true")
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("mediator")
    p = add("sim", cmd_sim, "greatest simulation relation")
    p.add_argument("--from", required=True, metavar="S")
    p.add_argument("--to", required=True, metavar="P")
    p.add_argument("--compat", metavar="R", help="relation of admissible pairs")
    p = add("bisim", cmd_bisim, "greatest bisimulation relation")
    p.add_argument("left")
    p.add_argument("right")
    p = add("check-open", cmd_check_open, "check the path-lifting property of a morphism")
    p.add_argument("--map", required=True, metavar="F")
    p.add_argument("source")
    p.add_argument("target")

    for name, func, help_ in (
        ("synthesize", cmd_synthesize, "synthesize a bisimulation controller"),
        ("verify", cmd_verify, "verify a candidate controller"),
    ):
        p = add(name, func, help_)
        p.add_argument("--plant", required=True, metavar="P")
        p.add_argument("--spec", required=True, metavar="S")
        p.add_argument("--mediator", metavar="A", help="mediator system (default: one state, all labels)")
        p.add_argument("--plant-map", metavar="F")
        p.add_argument("--spec-map", metavar="G")
        if name == "synthesize":
            p.add_argument("--controller-out", metavar="FILE")
            p.add_argument("--closed-loop-out", metavar="FILE", help="write the reachable closed loop")
        else:
            p.add_argument("--controller", required=True, metavar="C")
            p.add_argument("--controller-map", metavar="H")
    return parser


def main(argv=None, stdout=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out = _Out(stdout or sys.stdout, args.quiet)
    try:
        return args.func(args, out)
    except (InputError, OSError) as exc:
        print(f"bisimctl: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except PreconditionError as exc:
        print(f"bisimctl: {exc.code}: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
