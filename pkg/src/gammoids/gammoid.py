"""The matroid of routable subsets: independence, rank, circuits, and minors."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

from .digraph import Digraph, Vertex, has_routing, max_disjoint_paths
from .errors import GroundMismatchError, InputError


@dataclass(frozen=True)
class RepresentedGammoid:
    """A digraph together with a target set and a ground set.

    A subset of the ground set is independent exactly when it can be routed
    into the targets along pairwise vertex-disjoint paths.  Targets and ground
    may intersect; both inherit the implicit order of the digraph's vertices.
    """

    digraph: Digraph
    targets: tuple
    ground: tuple

    def __init__(self, digraph: Digraph, targets: Iterable[Vertex], ground: Iterable[Vertex]):
        object.__setattr__(self, "digraph", digraph)
        object.__setattr__(self, "targets", digraph.ordered(targets))
        object.__setattr__(self, "ground", digraph.ordered(ground))

    @cached_property
    def target_set(self) -> frozenset:
        return frozenset(self.targets)

    @cached_property
    def ground_set(self) -> frozenset:
        return frozenset(self.ground)


@dataclass(frozen=True)
class CircuitFamily:
    """The minimal dependent subsets of a matroid over an ordered ground set.

    No member contains another and the empty set is never a member.
    """

    ground: tuple
    members: frozenset

    def __init__(self, ground: Iterable[Vertex], members: Iterable[frozenset]):
        ground_tuple = tuple(ground)
        ground_set = frozenset(ground_tuple)
        member_set = frozenset(frozenset(member) for member in members)
        for member in member_set:
            if not member:
                raise InputError("the empty set is never a circuit")
            if not member <= ground_set:
                raise InputError(f"circuit {set(member)!r} leaves the ground set")
        for first, second in itertools.combinations(member_set, 2):
            if first <= second or second <= first:
                raise InputError("circuits must be pairwise incomparable")
        object.__setattr__(self, "ground", ground_tuple)
        object.__setattr__(self, "members", member_set)


def _ground_subset(gammoid: RepresentedGammoid, subset: Iterable[Vertex]) -> frozenset:
    members = frozenset(subset)
    stray = members - gammoid.ground_set
    if stray:
        raise InputError(f"{sorted(map(repr, stray))} not in the ground set")
    return members


def is_independent(gammoid: RepresentedGammoid, subset: Iterable[Vertex]) -> bool:
    """Whether `subset` of the ground set routes into the targets."""
    members = _ground_subset(gammoid, subset)
    return has_routing(gammoid.digraph, members, gammoid.target_set)


def rank(gammoid: RepresentedGammoid, subset: Iterable[Vertex]) -> int:
    """Size of a largest independent (routable) subset of `subset`."""
    members = _ground_subset(gammoid, subset)
    return max_disjoint_paths(gammoid.digraph, members, gammoid.target_set)


def is_circuit(gammoid: RepresentedGammoid, subset: Iterable[Vertex]) -> bool:
    """Whether `subset` is a minimal dependent set: dependent, with every
    one-element deletion independent."""
    members = _ground_subset(gammoid, subset)
    if not members:
        return False
    if has_routing(gammoid.digraph, members, gammoid.target_set):
        return False
    return all(
        has_routing(gammoid.digraph, members - {element}, gammoid.target_set)
        for element in members
    )


def circuits(gammoid: RepresentedGammoid) -> CircuitFamily:
    """All circuits of the represented matroid.

    Subsets are scanned in size-ascending order with the polynomial routing
    feasibility test; supersets of discovered circuits are pruned, which keeps
    exactly the inclusion-minimal dependent sets.
    """
    found: list[frozenset] = []
    for size in range(1, len(gammoid.ground) + 1):
        for combo in itertools.combinations(gammoid.ground, size):
            candidate = frozenset(combo)
            if any(circuit <= candidate for circuit in found):
                continue
            if not has_routing(gammoid.digraph, candidate, gammoid.target_set):
                found.append(candidate)
    return CircuitFamily(gammoid.ground, found)


def contract_circuits(family: CircuitFamily, onto: Iterable[Vertex]) -> CircuitFamily:
    """Circuits of the contraction of the matroid to `onto`.

    These are the inclusion-minimal non-empty intersections of the original
    circuits with `onto`; equivalent to the rank-function definition
    rk(Y | contracted) = rk(Y + discarded) - rk(discarded).
    """
    onto_set = frozenset(onto)
    stray = onto_set - set(family.ground)
    if stray:
        raise InputError(f"{sorted(map(repr, stray))} not in the ground set")
    ground = tuple(element for element in family.ground if element in onto_set)
    restricted = {member & onto_set for member in family.members}
    restricted.discard(frozenset())
    minimal = {
        member
        for member in restricted
        if not any(other < member for other in restricted)
    }
    return CircuitFamily(ground, minimal)


def matroids_equal(first: CircuitFamily, second: CircuitFamily) -> bool:
    """Whether two circuit families over the same ground set coincide."""
    if set(first.ground) != set(second.ground):
        raise GroundMismatchError("circuit families live on different ground sets")
    return first.members == second.members
