"""Finite digraphs with ordered vertices: paths, routings, pivots, cycle lifting.

Every value in this module is immutable after construction and every function
is a pure function of its arguments, so concurrent use is safe.  The listing
order of the vertex set is the *implicit order* that all downstream
constructions (subset orderings, permutation signs, canonical cycles) rely on.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from functools import cached_property
from typing import Hashable, Iterable, Optional

from .errors import CyclicDigraphError, InputError

Vertex = Hashable
Arc = tuple


@dataclass(frozen=True)
class Digraph:
    """A finite simple digraph; loops are allowed, parallel arcs are not.

    `vertices` is an ordered tuple of distinct identifiers; `arcs` is a set of
    ordered pairs of listed vertices.
    """

    vertices: tuple
    arcs: frozenset

    def __init__(self, vertices: Iterable[Vertex], arcs: Iterable[Arc] = ()):
        listed = tuple(vertices)
        seen = set()
        for vertex in listed:
            if vertex in seen:
                raise InputError(f"duplicate vertex {vertex!r}")
            seen.add(vertex)
        arc_set = set()
        for arc in arcs:
            try:
                tail, head = arc
            except (TypeError, ValueError):
                raise InputError(f"arc {arc!r} is not a vertex pair") from None
            if tail not in seen:
                raise InputError(f"arc references unlisted vertex {tail!r}")
            if head not in seen:
                raise InputError(f"arc references unlisted vertex {head!r}")
            arc_set.add((tail, head))
        object.__setattr__(self, "vertices", listed)
        object.__setattr__(self, "arcs", frozenset(arc_set))

    @cached_property
    def _index(self) -> dict:
        return {vertex: i for i, vertex in enumerate(self.vertices)}

    @cached_property
    def vertex_set(self) -> frozenset:
        return frozenset(self.vertices)

    def index(self, vertex: Vertex) -> int:
        """Position of `vertex` in the implicit order."""
        try:
            return self._index[vertex]
        except KeyError:
            raise InputError(f"unknown vertex {vertex!r}") from None

    def ordered(self, subset: Iterable[Vertex]) -> tuple:
        """The distinct members of `subset` sorted by the implicit order."""
        return tuple(sorted(set(subset), key=self.index))

    def arc_key(self, arc: Arc) -> tuple:
        return (self.index(arc[0]), self.index(arc[1]))

    @cached_property
    def sorted_arcs(self) -> tuple:
        """All arcs sorted lexicographically by the implicit vertex order."""
        return tuple(sorted(self.arcs, key=self.arc_key))

    @cached_property
    def _out(self) -> dict:
        table = {vertex: [] for vertex in self.vertices}
        for tail, head in self.sorted_arcs:
            table[tail].append(head)
        return {vertex: tuple(heads) for vertex, heads in table.items()}

    @cached_property
    def _in(self) -> dict:
        table = {vertex: [] for vertex in self.vertices}
        for tail, head in self.sorted_arcs:
            table[head].append(tail)
        return {vertex: tuple(tails) for vertex, tails in table.items()}

    def successors(self, vertex: Vertex) -> tuple:
        self.index(vertex)
        return self._out[vertex]

    def predecessors(self, vertex: Vertex) -> tuple:
        self.index(vertex)
        return self._in[vertex]

    def has_arc(self, tail: Vertex, head: Vertex) -> bool:
        return (tail, head) in self.arcs


@dataclass(frozen=True)
class Path:
    """A repetition-free walk; a single vertex is a path with no arcs."""

    vertices: tuple

    def __init__(self, vertices: Iterable[Vertex]):
        listed = tuple(vertices)
        if not listed:
            raise InputError("a path needs at least one vertex")
        if len(set(listed)) != len(listed):
            raise InputError(f"path {listed!r} repeats a vertex")
        object.__setattr__(self, "vertices", listed)

    @property
    def first(self) -> Vertex:
        return self.vertices[0]

    @property
    def last(self) -> Vertex:
        return self.vertices[-1]

    @cached_property
    def arcs(self) -> frozenset:
        return frozenset(zip(self.vertices, self.vertices[1:]))


@dataclass(frozen=True)
class Routing:
    """A set of pairwise vertex-disjoint paths, one per start vertex.

    The start set is implicit: it is the set of first vertices of the paths.
    For a fixed start set a routing is determined by its traversed arc set.
    """

    paths: frozenset

    def __init__(self, paths: Iterable[Path]):
        path_set = frozenset(paths)
        touched = 0
        combined = set()
        for path in path_set:
            touched += len(path.vertices)
            combined.update(path.vertices)
        if len(combined) != touched:
            raise InputError("routing paths must be pairwise vertex-disjoint")
        object.__setattr__(self, "paths", path_set)

    @cached_property
    def starts(self) -> frozenset:
        return frozenset(path.first for path in self.paths)

    @cached_property
    def ends(self) -> frozenset:
        return frozenset(path.last for path in self.paths)

    @cached_property
    def arcs(self) -> frozenset:
        combined = set()
        for path in self.paths:
            combined.update(path.arcs)
        return frozenset(combined)

    def path_from(self, start: Vertex) -> Path:
        for path in self.paths:
            if path.first == start:
                return path
        raise InputError(f"no path starts at {start!r}")


def enumerate_paths(digraph: Digraph, start: Vertex, end: Vertex) -> frozenset:
    """All paths from `start` to `end`, including the single-vertex path when
    the two coincide."""
    digraph.index(start)
    digraph.index(end)
    found = []
    trail = [start]
    on_trail = {start}

    def extend() -> None:
        current = trail[-1]
        if current == end:
            # a path cannot revisit its end vertex, so stop here
            found.append(Path(tuple(trail)))
            return
        for nxt in digraph.successors(current):
            if nxt in on_trail:
                continue
            trail.append(nxt)
            on_trail.add(nxt)
            extend()
            on_trail.discard(nxt)
            trail.pop()

    extend()
    return frozenset(found)


def _paths_into(digraph: Digraph, start: Vertex, targets: frozenset, blocked: set) -> list:
    """Vertex tuples of the paths from `start` ending in `targets` that avoid
    `blocked`; a path may run through a target and end at a later one."""
    if start in blocked:
        return []
    found = []
    trail = [start]
    on_trail = {start}

    def extend() -> None:
        current = trail[-1]
        if current in targets:
            found.append(tuple(trail))
        for nxt in digraph.successors(current):
            if nxt in on_trail or nxt in blocked:
                continue
            trail.append(nxt)
            on_trail.add(nxt)
            extend()
            on_trail.discard(nxt)
            trail.pop()

    extend()
    return found


def max_disjoint_paths(
    digraph: Digraph,
    starts: Iterable[Vertex],
    targets: Iterable[Vertex],
    *,
    blocked: Iterable[Vertex] = (),
) -> int:
    """Largest number of pairwise vertex-disjoint paths from distinct members
    of `starts` into `targets`.

    This is the unit-vertex-capacity max-flow bound; `blocked` vertices are
    unusable (an internal hook for routing enumeration).
    """
    start_list = digraph.ordered(starts)
    target_list = digraph.ordered(targets)
    blocked_set = {vertex for vertex in blocked}
    count = len(digraph.vertices)
    source = 2 * count
    sink = 2 * count + 1

    heads: list[int] = []
    caps: list[int] = []
    adjacency: list[list[int]] = [[] for _ in range(2 * count + 2)]

    def add_edge(tail: int, head: int) -> None:
        adjacency[tail].append(len(heads))
        heads.append(head)
        caps.append(1)
        adjacency[head].append(len(heads))
        heads.append(tail)
        caps.append(0)

    for vertex in digraph.vertices:
        if vertex in blocked_set:
            continue
        i = digraph.index(vertex)
        add_edge(2 * i, 2 * i + 1)
    for tail, head in digraph.sorted_arcs:
        if tail in blocked_set or head in blocked_set:
            continue
        add_edge(2 * digraph.index(tail) + 1, 2 * digraph.index(head))
    for vertex in start_list:
        if vertex not in blocked_set:
            add_edge(source, 2 * digraph.index(vertex))
    for vertex in target_list:
        if vertex not in blocked_set:
            add_edge(2 * digraph.index(vertex) + 1, sink)

    flow = 0
    while True:
        # breadth-first search for an augmenting path in the residual graph
        parent_edge = [-1] * (2 * count + 2)
        parent_edge[source] = -2
        queue = [source]
        while queue and parent_edge[sink] == -1:
            frontier = []
            for node in queue:
                for edge in adjacency[node]:
                    nxt = heads[edge]
                    if caps[edge] > 0 and parent_edge[nxt] == -1:
                        parent_edge[nxt] = edge
                        frontier.append(nxt)
            queue = frontier
        if parent_edge[sink] == -1:
            return flow
        node = sink
        while node != source:
            edge = parent_edge[node]
            caps[edge] -= 1
            caps[edge ^ 1] += 1
            node = heads[edge ^ 1]
        flow += 1


def has_routing(digraph: Digraph, starts: Iterable[Vertex], targets: Iterable[Vertex]) -> bool:
    """Whether every member of `starts` can be routed into `targets` along
    pairwise vertex-disjoint paths.  Polynomial (max-flow), no enumeration."""
    start_list = digraph.ordered(starts)
    return max_disjoint_paths(digraph, start_list, targets) == len(start_list)


def enumerate_routings(
    digraph: Digraph, starts: Iterable[Vertex], targets: Iterable[Vertex]
) -> frozenset:
    """Every routing from `starts` into `targets`.

    Returns the empty set when no routing exists and the set containing the
    empty routing when `starts` is empty.  Backtracking over vertex-disjoint
    path systems with a flow-based feasibility prune at each level.
    """
    start_list = digraph.ordered(starts)
    target_set = frozenset(digraph.ordered(targets))
    routings = []
    used: set = set()
    chosen: list[tuple] = []

    def feasible(position: int) -> bool:
        remaining = start_list[position:]
        if any(vertex in used for vertex in remaining):
            return False
        reachable = max_disjoint_paths(digraph, remaining, target_set, blocked=used)
        return reachable == len(remaining)

    def place(position: int) -> None:
        if position == len(start_list):
            routings.append(Routing(Path(vertices) for vertices in chosen))
            return
        if not feasible(position):
            return
        for vertices in _paths_into(digraph, start_list[position], target_set, used):
            used.update(vertices)
            chosen.append(vertices)
            place(position + 1)
            chosen.pop()
            used.difference_update(vertices)

    place(0)
    return frozenset(routings)


def pivot(digraph: Digraph, tail: Vertex, head: Vertex) -> Digraph:
    """The pivot of the arc (tail, head): drop every arc out of `tail` and give
    `head` an arc to each former out-neighbour of `tail` and to `tail` itself
    (never a loop on `head`).

    The reversed arc (head, tail) is essential: when `head` is a sink target
    and `tail` lies outside the targets, the pivot swaps the two without
    changing the represented matroid.
    """
    if (tail, head) not in digraph.arcs:
        raise InputError(f"({tail!r}, {head!r}) is not an arc, cannot pivot")
    kept = {arc for arc in digraph.arcs if arc[0] != tail}
    reached = {other for start, other in digraph.arcs if start == tail}
    reached.add(tail)
    moved = {(head, other) for other in reached if other != head}
    return Digraph(digraph.vertices, kept | moved)


def enumerate_cycles(digraph: Digraph) -> tuple:
    """All cycle walks, one per rotation class.

    Each cycle is reported as the rotation that starts (and ends) at its
    implicit-order-minimal vertex; the result is sorted lexicographically by
    vertex index, so the first entry is the canonical cycle of the digraph.
    """
    cycles = []
    for base in digraph.vertices:
        base_index = digraph.index(base)
        trail = [base]
        on_trail = {base}

        def extend() -> None:
            for nxt in digraph.successors(trail[-1]):
                if nxt == base:
                    cycles.append(tuple(trail) + (base,))
                elif digraph.index(nxt) > base_index and nxt not in on_trail:
                    trail.append(nxt)
                    on_trail.add(nxt)
                    extend()
                    on_trail.discard(nxt)
                    trail.pop()

        extend()
    cycles.sort(key=lambda walk: tuple(digraph.index(vertex) for vertex in walk))
    return tuple(cycles)


def find_cycle(digraph: Digraph) -> Optional[tuple]:
    """The canonical cycle walk of the digraph, or None if it is acyclic.

    Canonical means: among all cycles, normalised to start at their minimal
    vertex, the lexicographically least vertex sequence.
    """
    cycles = enumerate_cycles(digraph)
    return cycles[0] if cycles else None


def topological_order(digraph: Digraph) -> tuple:
    """The vertices in an arc-respecting order, ties broken by the implicit
    order.  Raises CyclicDigraphError when no such order exists."""
    in_degree = {vertex: 0 for vertex in digraph.vertices}
    for _, head in digraph.arcs:
        in_degree[head] += 1
    ready = [digraph.index(v) for v in digraph.vertices if in_degree[v] == 0]
    heapq.heapify(ready)
    order = []
    while ready:
        vertex = digraph.vertices[heapq.heappop(ready)]
        order.append(vertex)
        for nxt in digraph.successors(vertex):
            in_degree[nxt] -= 1
            if in_degree[nxt] == 0:
                heapq.heappush(ready, digraph.index(nxt))
    if len(order) != len(digraph.vertices):
        raise CyclicDigraphError("digraph contains a cycle")
    return tuple(order)


def is_acyclic(digraph: Digraph) -> bool:
    """Whether the digraph has no cycle walk (loops count as cycles)."""
    try:
        topological_order(digraph)
    except CyclicDigraphError:
        return False
    return True


def _validate_cycle(digraph: Digraph, cycle: tuple) -> tuple:
    walk = tuple(cycle)
    if len(walk) < 2 or walk[0] != walk[-1]:
        raise InputError(f"{walk!r} is not a cycle walk")
    body = walk[:-1]
    if len(set(body)) != len(body):
        raise InputError(f"{walk!r} is not a cycle walk: interior repeats a vertex")
    for tail, head in zip(walk, walk[1:]):
        if (tail, head) not in digraph.arcs:
            raise InputError(f"cycle uses missing arc ({tail!r}, {head!r})")
    return walk


@dataclass(frozen=True)
class LiftingStep:
    """One cycle-removal surgery: which cycle was cut and which fresh vertices
    were spliced in.  `new_source` feeds the cycle's second vertex and joins
    the ground side; `new_sink` absorbs the cycle's first vertex and joins the
    target side."""

    cycle: tuple
    new_source: Vertex
    new_sink: Vertex


@dataclass(frozen=True)
class LiftingTrace:
    """The record of repeatedly cutting cycles until none remain.

    `stages` holds the digraph before and after each step, so it has one more
    entry than `steps`; the final stage is acyclic.
    """

    steps: tuple
    stages: tuple

    @property
    def result(self) -> Digraph:
        return self.stages[-1]

    @property
    def new_sources(self) -> tuple:
        return tuple(step.new_source for step in self.steps)

    @property
    def new_sinks(self) -> tuple:
        return tuple(step.new_sink for step in self.steps)


def lift_cycle(digraph: Digraph, cycle: tuple, new_source: Vertex, new_sink: Vertex) -> Digraph:
    """Cut one cycle: delete its first arc (c1, c2) and add fresh vertices
    with arcs (c1, new_sink), (new_source, c2), (new_source, new_sink).

    The fresh vertices are appended to the implicit order, source first.  The
    given cycle is no longer a walk of the result, and the total number of
    cycles strictly decreases.
    """
    walk = _validate_cycle(digraph, cycle)
    if new_source == new_sink:
        raise InputError("the two fresh vertices must be distinct")
    for fresh in (new_source, new_sink):
        if fresh in digraph.vertex_set:
            raise InputError(f"vertex {fresh!r} is not fresh")
    first, second = walk[0], walk[1]
    arcs = set(digraph.arcs)
    arcs.discard((first, second))
    arcs.add((first, new_sink))
    arcs.add((new_source, second))
    arcs.add((new_source, new_sink))
    return Digraph(digraph.vertices + (new_source, new_sink), arcs)


def _fresh_name(base: str, taken: frozenset) -> str:
    name = base
    while name in taken:
        name = name + "'"
    return name


def complete_lifting(digraph: Digraph) -> LiftingTrace:
    """Cut canonical cycles until the digraph is acyclic.

    Fresh vertices are named x1, t1, x2, t2, ... (primed on collision) and
    appended to the implicit order in that sequence.  Terminates because each
    step strictly decreases the number of cycles; an acyclic digraph yields an
    empty trace.
    """
    steps = []
    stages = [digraph]
    current = digraph
    counter = 1
    while True:
        cycle = find_cycle(current)
        if cycle is None:
            break
        new_source = _fresh_name(f"x{counter}", current.vertex_set)
        new_sink = _fresh_name(f"t{counter}", current.vertex_set | {new_source})
        current = lift_cycle(current, cycle, new_source, new_sink)
        steps.append(LiftingStep(cycle, new_source, new_sink))
        stages.append(current)
        counter += 1
    return LiftingTrace(tuple(steps), tuple(stages))
