"""Instance files, subcommands, and text/JSON output for the whole pipeline.

Instance format (line oriented, `#` starts a comment):

    vertices <v1> <v2> ...        # listing order is the implicit order
    arc <+|-> <tail> <head>       # one per arc, lightest first
    targets <t1> ...
    ground <e1> ...

Orientation format:

    ground <e1> <e2> ...
    signed {+e1 -e2}              # one signed subset per line
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path as FilePath
from typing import Iterable

from .digraph import complete_lifting, is_acyclic
from .errors import GammoidError, InputError, ParseError
from .gammoid import CircuitFamily, RepresentedGammoid, circuits
from .heavy_arc import HeavyArcSignature, extend_signature, orient_acyclic
from .oracle import compare_orientations, oracle_orientation
from .oriented import (
    Orientation,
    SignedSubset,
    check_circuit_axioms,
    contract_orientation,
    underlying_matroid,
)

COMMANDS = ("circuits", "orient", "lift", "axioms", "verify")


@dataclass(frozen=True)
class InstanceFile:
    """A parsed instance: represented gammoid plus arc signature.

    The vertex listing order defines the implicit order and the arc listing
    order defines the arc order, lightest first.
    """

    gammoid: RepresentedGammoid
    signature: HeavyArcSignature


def _content_lines(text: str):
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield number, line.split()


def _parse_names(number: int, names: list, known: frozenset, what: str) -> tuple:
    seen = []
    for name in names:
        if name not in known:
            raise ParseError(number, f"unknown vertex {name!r} in {what}")
        if name in seen:
            raise ParseError(number, f"duplicate {what} entry {name!r}")
        seen.append(name)
    return tuple(seen)


def parse_instance(text: str) -> InstanceFile:
    """Parse an instance file; malformed input raises ParseError naming the
    offending line."""
    vertices: tuple | None = None
    vertex_set: frozenset = frozenset()
    arc_order: list = []
    arc_signs: dict = {}
    targets: tuple | None = None
    ground: tuple | None = None
    last_line = 0
    for number, tokens in _content_lines(text):
        last_line = number
        keyword, rest = tokens[0], tokens[1:]
        if keyword == "vertices":
            if vertices is not None:
                raise ParseError(number, "second vertices line")
            seen = set()
            for name in rest:
                if name in seen:
                    raise ParseError(number, f"duplicate vertex {name!r}")
                seen.add(name)
            vertices = tuple(rest)
            vertex_set = frozenset(vertices)
        elif keyword == "arc":
            if vertices is None:
                raise ParseError(number, "arc line before the vertices line")
            if len(rest) != 3 or rest[0] not in ("+", "-"):
                raise ParseError(number, "expected: arc <+|-> <tail> <head>")
            sign_token, tail, head = rest
            for name in (tail, head):
                if name not in vertex_set:
                    raise ParseError(number, f"unknown vertex {name!r} in arc")
            if (tail, head) in arc_signs:
                raise ParseError(number, f"duplicate arc {tail} {head}")
            arc_order.append((tail, head))
            arc_signs[(tail, head)] = 1 if sign_token == "+" else -1
        elif keyword == "targets":
            if vertices is None:
                raise ParseError(number, "targets line before the vertices line")
            if targets is not None:
                raise ParseError(number, "second targets line")
            targets = _parse_names(number, rest, vertex_set, "targets")
        elif keyword == "ground":
            if vertices is None:
                raise ParseError(number, "ground line before the vertices line")
            if ground is not None:
                raise ParseError(number, "second ground line")
            ground = _parse_names(number, rest, vertex_set, "ground")
        else:
            raise ParseError(number, f"unknown keyword {keyword!r}")
    if vertices is None:
        raise ParseError(last_line or 1, "missing vertices line")
    if targets is None:
        raise ParseError(last_line, "missing targets line")
    if ground is None:
        raise ParseError(last_line, "missing ground line")
    from .digraph import Digraph

    digraph = Digraph(vertices, arc_order)
    return InstanceFile(
        RepresentedGammoid(digraph, targets, ground),
        HeavyArcSignature(arc_order, arc_signs),
    )


def format_instance(instance: InstanceFile) -> str:
    """Canonical instance text; parsing it back yields an identical instance."""
    digraph = instance.gammoid.digraph
    lines = [" ".join(["vertices", *map(str, digraph.vertices)])]
    for arc, sign in zip(instance.signature.arc_order, instance.signature.signs):
        lines.append(f"arc {'+' if sign > 0 else '-'} {arc[0]} {arc[1]}")
    lines.append(" ".join(["targets", *map(str, instance.gammoid.targets)]))
    lines.append(" ".join(["ground", *map(str, instance.gammoid.ground)]))
    return "\n".join(lines) + "\n"


def parse_signed_family(text: str) -> tuple:
    """Parse an orientation file into (ground, list of signed subsets)."""
    ground: tuple | None = None
    members: list = []
    last_line = 0
    for number, tokens in _content_lines(text):
        last_line = number
        keyword, rest = tokens[0], tokens[1:]
        if keyword == "ground":
            if ground is not None:
                raise ParseError(number, "second ground line")
            seen = set()
            for name in rest:
                if name in seen:
                    raise ParseError(number, f"duplicate ground element {name!r}")
                seen.add(name)
            ground = tuple(rest)
        elif keyword == "signed":
            if ground is None:
                raise ParseError(number, "signed line before the ground line")
            body = " ".join(rest)
            if not (body.startswith("{") and body.endswith("}")):
                raise ParseError(number, "expected: signed {+e1 -e2 ...}")
            signs: dict = {}
            for token in body[1:-1].split():
                if len(token) < 2 or token[0] not in ("+", "-"):
                    raise ParseError(number, f"bad signed element {token!r}")
                name = token[1:]
                if name not in set(ground):
                    raise ParseError(number, f"unknown element {name!r}")
                if name in signs:
                    raise ParseError(number, f"element {name!r} listed twice")
                signs[name] = 1 if token[0] == "+" else -1
            members.append(SignedSubset(ground, signs))
        else:
            raise ParseError(number, f"unknown keyword {keyword!r}")
    if ground is None:
        raise ParseError(last_line or 1, "missing ground line")
    return ground, members


def format_orientation(orientation: Orientation, full: bool = False) -> str:
    """Orientation text: one representative per +/- pair, the negation too
    when `full` is set."""
    lines = [" ".join(["ground", *map(str, orientation.ground)])]
    for rep in orientation.representatives:
        lines.append(f"signed {rep}")
        if full:
            lines.append(f"signed {-rep}")
    return "\n".join(lines) + "\n"


def _ordered_circuits(family: CircuitFamily) -> list:
    position = {element: i for i, element in enumerate(family.ground)}
    in_order = [
        tuple(sorted(member, key=position.__getitem__)) for member in family.members
    ]
    in_order.sort(key=lambda member: tuple(position[e] for e in member))
    return in_order


def _dump(payload: dict) -> str:
    return json.dumps(payload, indent=2) + "\n"


def _cmd_circuits(text: str, as_json: bool) -> tuple:
    instance = parse_instance(text)
    family = circuits(instance.gammoid)
    ordered = _ordered_circuits(family)
    if as_json:
        payload = {
            "command": "circuits",
            "ground": [str(e) for e in family.ground],
            "circuits": [[str(e) for e in member] for member in ordered],
        }
        return 0, _dump(payload)
    lines = ["{" + " ".join(map(str, member)) + "}" for member in ordered]
    return 0, "\n".join(lines) + ("\n" if lines else "")


def _oriented_instance(instance: InstanceFile) -> tuple:
    """(workable acyclic gammoid, its signature, trace or None)."""
    if is_acyclic(instance.gammoid.digraph):
        return instance.gammoid, instance.signature, None
    trace = complete_lifting(instance.gammoid.digraph)
    lifted = RepresentedGammoid(
        trace.result,
        instance.gammoid.targets + trace.new_sinks,
        instance.gammoid.ground + trace.new_sources,
    )
    return lifted, extend_signature(instance.signature, trace), trace


def _cmd_orient(text: str, as_json: bool, full: bool) -> tuple:
    instance = parse_instance(text)
    work, signature, trace = _oriented_instance(instance)
    orientation = orient_acyclic(work, signature)
    if trace is not None:
        orientation = contract_orientation(orientation, instance.gammoid.ground)
    if as_json:
        payload = {
            "command": "orient",
            "ground": [str(e) for e in orientation.ground],
            "representatives": [list(rep.signs) for rep in orientation.representatives],
        }
        if full:
            payload["family"] = sorted(list(member.signs) for member in orientation.members)
        return 0, _dump(payload)
    return 0, format_orientation(orientation, full=full)


def _cmd_lift(text: str, as_json: bool) -> tuple:
    instance = parse_instance(text)
    trace = complete_lifting(instance.gammoid.digraph)
    lifted = InstanceFile(
        RepresentedGammoid(
            trace.result,
            instance.gammoid.targets + trace.new_sinks,
            instance.gammoid.ground + trace.new_sources,
        ),
        extend_signature(instance.signature, trace),
    )
    body = format_instance(lifted)
    if as_json:
        payload = {
            "command": "lift",
            "liftings": len(trace.steps),
            "steps": [
                {
                    "cycle": [str(v) for v in step.cycle],
                    "new_source": str(step.new_source),
                    "new_sink": str(step.new_sink),
                }
                for step in trace.steps
            ],
            "instance": body,
        }
        return 0, _dump(payload)
    comments = [
        f"# lifting {i}: cycle {' '.join(map(str, step.cycle))}"
        f" cut at ({step.cycle[0]} {step.cycle[1]}),"
        f" new ground {step.new_source}, new target {step.new_sink}"
        for i, step in enumerate(trace.steps, start=1)
    ]
    if not comments:
        comments = ["# already acyclic; instance unchanged"]
    return 0, "\n".join(comments) + "\n" + body


def _violation_json(violation) -> dict:
    return {
        "axiom": violation.axiom,
        "witnesses": [list(w.signs) for w in violation.witnesses],
        "eliminated": None if violation.eliminated is None else str(violation.eliminated),
        "retained": None if violation.retained is None else str(violation.retained),
    }


def _cmd_axioms(text: str, as_json: bool) -> tuple:
    ground, members = parse_signed_family(text)
    # orientation files carry one representative per pair; close under negation
    closed = {member.signs: member for member in members}
    for member in members:
        closed.setdefault((-member).signs, -member)
    report = check_circuit_axioms(list(closed.values()))
    if as_json:
        payload = {
            "command": "axioms",
            "ground": [str(e) for e in ground],
            "ok": report.ok,
            "violations": [_violation_json(v) for v in report.violations],
        }
        return (0 if report.ok else 1), _dump(payload)
    if report.ok:
        return 0, "axioms: ok\n"
    body = str(report)
    return 1, body + f"\naxioms: {len(report.violations)} violation(s)\n"


def _cmd_verify(text: str, as_json: bool) -> tuple:
    instance = parse_instance(text)
    gammoid = instance.gammoid
    family = circuits(gammoid)
    acyclic = is_acyclic(gammoid.digraph)
    work, signature, trace = _oriented_instance(instance)
    combinatorial = orient_acyclic(work, signature)
    oracle = oracle_orientation(work, signature)
    agreement = compare_orientations(combinatorial, oracle)
    final = (
        combinatorial
        if trace is None
        else contract_orientation(combinatorial, gammoid.ground)
    )
    supports_match = underlying_matroid(final).members == family.members
    report = check_circuit_axioms(final)
    ok = agreement and supports_match and report.ok
    if as_json:
        payload = {
            "command": "verify",
            "vertices": len(gammoid.digraph.vertices),
            "arcs": len(gammoid.digraph.arcs),
            "acyclic": acyclic,
            "liftings": 0 if trace is None else len(trace.steps),
            "circuits": len(family.members),
            "oracle_agreement": agreement,
            "supports_match": supports_match,
            "axioms_ok": report.ok,
            "ok": ok,
        }
        return (0 if ok else 1), _dump(payload)
    lines = [
        f"instance: {len(gammoid.digraph.vertices)} vertices,"
        f" {len(gammoid.digraph.arcs)} arcs, {'acyclic' if acyclic else 'cyclic'}",
        f"liftings: {0 if trace is None else len(trace.steps)}",
        f"circuits: {len(family.members)}",
        f"oracle comparison: {'agreement' if agreement else 'DISAGREEMENT'}",
        f"supports match circuits: {'yes' if supports_match else 'NO'}",
        f"axioms: {'ok' if report.ok else 'VIOLATED'}",
        f"verify: {'ok' if ok else 'FAILED'}",
    ]
    return (0 if ok else 1), "\n".join(lines) + "\n"


def run_command(command: str, path: str, *, as_json: bool = False, full: bool = False) -> tuple:
    """Run one subcommand against a file; returns (exit status, output text).

    Exit status 0 means success/agreement, 1 a failed check, 2 bad input or a
    refused instance.
    """
    if command not in COMMANDS:
        raise InputError(f"unknown command {command!r}")
    try:
        text = FilePath(path).read_text(encoding="utf-8")
    except OSError as exc:
        return 2, f"error: {exc}\n"
    try:
        if command == "circuits":
            return _cmd_circuits(text, as_json)
        if command == "orient":
            return _cmd_orient(text, as_json, full)
        if command == "lift":
            return _cmd_lift(text, as_json)
        if command == "axioms":
            return _cmd_axioms(text, as_json)
        return _cmd_verify(text, as_json)
    except GammoidError as exc:
        return 2, f"error: {exc}\n"


def main(argv: Iterable[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="gammoid",
        description="Orient gammoids from signed, totally ordered arc sets and "
        "cross-check the result against exact integer linear algebra.",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    helps = {
        "circuits": "print the circuits of the represented matroid",
        "orient": "print the signed circuits induced by the arc signature",
        "lift": "cut all cycles and print the lifted instance",
        "axioms": "check an orientation file against the circuit axioms",
        "verify": "cross-check the orientation against the exact integer oracle",
    }
    for name in COMMANDS:
        sub = subparsers.add_parser(name, help=helps[name])
        sub.add_argument("path", help="instance file" if name != "axioms" else "orientation file")
        sub.add_argument("--json", action="store_true", help="emit JSON instead of text")
        if name == "orient":
            sub.add_argument("--full", action="store_true", help="also print negations")
    args = parser.parse_args(None if argv is None else list(argv))
    code, output = run_command(
        args.command,
        args.path,
        as_json=args.json,
        full=getattr(args, "full", False),
    )
    stream = sys.stderr if code == 2 else sys.stdout
    stream.write(output)
    return code


if __name__ == "__main__":
    sys.exit(main())
