"""Arc-signature machinery: routing order, routing signs, circuit signatures,
and the orientation pipeline (direct for acyclic digraphs, via cycle lifting
otherwise)."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Union

from .digraph import (
    Arc,
    Digraph,
    LiftingTrace,
    Routing,
    Vertex,
    complete_lifting,
    enumerate_routings,
    is_acyclic,
)
from .errors import CyclicDigraphError, DependentSetError, InputError
from .gammoid import RepresentedGammoid, circuits, is_circuit
from .oriented import Orientation, SignedSubset, contract_orientation


@dataclass(frozen=True)
class HeavyArcSignature:
    """A sign for every arc plus a total order on the arcs.

    `arc_order` lists the arcs ascending, lightest first; `signs` is a tuple
    of +/-1 aligned with it.  The constructor also accepts a mapping from arcs
    to signs.
    """

    arc_order: tuple
    signs: tuple

    def __init__(self, arc_order: Iterable[Arc], arc_signs: Union[Mapping, Iterable[int]]):
        order = tuple((tail, head) for tail, head in arc_order)
        if len(set(order)) != len(order):
            raise InputError("the arc order lists an arc twice")
        if isinstance(arc_signs, Mapping):
            missing = set(order) - set(arc_signs)
            if missing:
                raise InputError(f"missing sign for arcs {sorted(map(repr, missing))}")
            stray = set(arc_signs) - set(order)
            if stray:
                raise InputError(f"signs given for unknown arcs {sorted(map(repr, stray))}")
            aligned = tuple(int(arc_signs[arc]) for arc in order)
        else:
            aligned = tuple(int(value) for value in arc_signs)
            if len(aligned) != len(order):
                raise InputError("sign sequence does not match the arc order")
        if any(value not in (-1, 1) for value in aligned):
            raise InputError("arc signs must be -1 or +1")
        object.__setattr__(self, "arc_order", order)
        object.__setattr__(self, "signs", aligned)

    @classmethod
    def lexicographic(cls, digraph: Digraph, arc_signs: Union[Mapping, int] = 1) -> "HeavyArcSignature":
        """The order induced by the implicit vertex order (lexicographic on
        arc pairs); `arc_signs` may be a mapping or a single default sign."""
        order = digraph.sorted_arcs
        if isinstance(arc_signs, Mapping):
            return cls(order, arc_signs)
        return cls(order, [int(arc_signs)] * len(order))

    @cached_property
    def _rank(self) -> dict:
        return {arc: i for i, arc in enumerate(self.arc_order)}

    def rank_of(self, arc: Arc) -> int:
        try:
            return self._rank[arc]
        except KeyError:
            raise InputError(f"arc {arc!r} is not ordered by this signature") from None

    def sign_of(self, arc: Arc) -> int:
        return self.signs[self.rank_of(arc)]

    def heaviest(self, arcs: Iterable[Arc]) -> Arc:
        candidates = list(arcs)
        if not candidates:
            raise InputError("no arcs to compare")
        return max(candidates, key=self.rank_of)

    def validate_for(self, digraph: Digraph) -> None:
        if set(self.arc_order) != digraph.arcs:
            raise InputError("signature does not cover exactly the digraph's arcs")


def compare_routings(first: Routing, second: Routing, signature: HeavyArcSignature) -> int:
    """Total order on routings: -1, 0 or +1.

    Routings with equal traversed arc sets compare equal; otherwise the one
    containing the heaviest arc of the symmetric difference is the greater.
    """
    if first.arcs == second.arcs:
        return 0
    top = signature.heaviest(first.arcs ^ second.arcs)
    return 1 if top in first.arcs else -1


def max_routing(
    digraph: Digraph,
    starts: Iterable[Vertex],
    targets: Iterable[Vertex],
    signature: HeavyArcSignature,
) -> Routing:
    """The greatest routing from `starts` into `targets` under the routing
    order.  Exhaustive enumerate-and-compare; raises DependentSetError when no
    routing exists."""
    signature.validate_for(digraph)
    routings = enumerate_routings(digraph, starts, targets)
    if not routings:
        raise DependentSetError(
            f"{sorted(map(repr, set(starts)))} admits no routing: the set is dependent"
        )
    best = None
    for routing in routings:
        if best is None or compare_routings(routing, best, signature) > 0:
            best = routing
    return best


def routing_sign(
    routing: Routing,
    starts: Iterable[Vertex],
    targets: Iterable[Vertex],
    signature: HeavyArcSignature,
) -> int:
    """Sign of a routing: permutation parity of the start-to-end index map
    times the product of the traversed arc signs.

    `starts` and `targets` must be given in the implicit order; the routing's
    paths must start exactly at `starts` and end inside `targets`.
    """
    start_list = tuple(starts)
    target_list = tuple(targets)
    if len(set(start_list)) != len(start_list) or len(set(target_list)) != len(target_list):
        raise InputError("starts and targets must be duplicate-free")
    if routing.starts != frozenset(start_list):
        raise InputError("routing does not start exactly at the given starts")
    target_position = {vertex: i for i, vertex in enumerate(target_list)}
    images = []
    product = 1
    for start in start_list:
        path = routing.path_from(start)
        if path.last not in target_position:
            raise InputError(f"path end {path.last!r} is not a listed target")
        images.append(target_position[path.last])
        for arc in path.arcs:
            product *= signature.sign_of(arc)
    inversions = sum(
        1
        for i, j in itertools.combinations(range(len(images)), 2)
        if images[i] > images[j]
    )
    parity = -1 if inversions % 2 else 1
    return parity * product


def _deletion_signs(
    gammoid: RepresentedGammoid,
    signature: HeavyArcSignature,
    members: tuple,
) -> list:
    """Routing signs of the maximal routings of each one-element deletion."""
    signs = []
    for element in members:
        rest = tuple(e for e in members if e != element)
        routing = max_routing(gammoid.digraph, rest, gammoid.target_set, signature)
        signs.append(routing_sign(routing, rest, gammoid.targets, signature))
    return signs


def circuit_signature(
    gammoid: RepresentedGammoid,
    signature: HeavyArcSignature,
    circuit: Iterable[Vertex],
    anchor: int,
) -> SignedSubset:
    """The signed subset a circuit induces, anchored at its `anchor`-th
    element (1-based, in the implicit order).

    The anchor element receives minus the sign of the maximal routing of the
    circuit minus that element; element j receives the sign of its deletion
    routing times (-1)^(anchor - j + 1).
    """
    signature.validate_for(gammoid.digraph)
    members = gammoid.digraph.ordered(circuit)
    stray = set(members) - gammoid.ground_set
    if stray:
        raise InputError(f"{sorted(map(repr, stray))} not in the ground set")
    if not is_circuit(gammoid, members):
        raise InputError(f"{sorted(map(repr, members))} is not a circuit")
    if not 1 <= anchor <= len(members):
        raise InputError(f"anchor index {anchor} out of range")
    signs = _deletion_signs(gammoid, signature, members)
    values = {}
    for j, element in enumerate(members, start=1):
        if j == anchor:
            values[element] = -signs[j - 1]
        else:
            flip = (anchor - j + 1) % 2 != 0
            values[element] = -signs[j - 1] if flip else signs[j - 1]
    return SignedSubset(gammoid.ground, values)


def orient_acyclic(gammoid: RepresentedGammoid, signature: HeavyArcSignature) -> Orientation:
    """The orientation of an acyclically represented gammoid: the circuit
    signatures anchored at their first element, closed under negation."""
    if not is_acyclic(gammoid.digraph):
        raise CyclicDigraphError(
            "the representing digraph has a cycle; use orient(), which lifts cycles first"
        )
    signature.validate_for(gammoid.digraph)
    family = circuits(gammoid)
    ordered = sorted(
        family.members,
        key=lambda member: tuple(gammoid.digraph.index(v) for v in gammoid.digraph.ordered(member)),
    )
    representatives = [
        circuit_signature(gammoid, signature, member, 1) for member in ordered
    ]
    return Orientation(gammoid.ground, representatives)


def extend_signature(signature: HeavyArcSignature, trace: LiftingTrace) -> HeavyArcSignature:
    """Extend a signature along a lifting trace.

    Each step removes the cut arc from the order and appends the step's three
    new arcs above everything, in the order (first, new sink), (new source,
    second), (new source, new sink), all with sign +1.
    """
    signature.validate_for(trace.stages[0])
    order = list(signature.arc_order)
    signs = {arc: sign for arc, sign in zip(signature.arc_order, signature.signs)}
    for step in trace.steps:
        first, second = step.cycle[0], step.cycle[1]
        cut = (first, second)
        order.remove(cut)
        del signs[cut]
        for arc in ((first, step.new_sink), (step.new_source, second), (step.new_source, step.new_sink)):
            order.append(arc)
            signs[arc] = 1
    return HeavyArcSignature(order, signs)


def orient(gammoid: RepresentedGammoid, signature: HeavyArcSignature) -> Orientation:
    """Orientation of any represented gammoid.

    Acyclic digraphs are handled directly; otherwise all cycles are lifted
    away, the lifted representation (extra ground elements and targets) is
    oriented, and the result is contracted back onto the original ground set.
    The supports of the result are exactly the circuits of the input.
    """
    if is_acyclic(gammoid.digraph):
        return orient_acyclic(gammoid, signature)
    trace = complete_lifting(gammoid.digraph)
    lifted_signature = extend_signature(signature, trace)
    lifted = RepresentedGammoid(
        trace.result,
        gammoid.targets + trace.new_sinks,
        gammoid.ground + trace.new_sources,
    )
    lifted_orientation = orient_acyclic(lifted, lifted_signature)
    return contract_orientation(lifted_orientation, gammoid.ground)
