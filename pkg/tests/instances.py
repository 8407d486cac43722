"""Shared test support: independent brute-force oracles (no package code on
the checked path) and seeded random instance generators."""

from __future__ import annotations

import itertools
from pathlib import Path

from gammoids import (
    Digraph,
    HeavyArcSignature,
    RepresentedGammoid,
    complete_lifting,
    is_acyclic,
    max_disjoint_paths,
)
from gammoids.cli import InstanceFile, parse_instance

DATA = Path(__file__).parent / "data"

VERTS = list("abcdefg")


# ---------------------------------------------------------------------------
# independent oracles: plain searches over raw arc lists


def brute_paths(arcs, start, end):
    """All simple start-to-end vertex tuples, by naive DFS."""
    out = {}
    for tail, head in arcs:
        out.setdefault(tail, []).append(head)
    found = set()

    def walk(trail):
        current = trail[-1]
        if current == end:
            found.add(tuple(trail))
            return
        for nxt in out.get(current, []):
            if nxt not in trail:
                walk(trail + [nxt])

    walk([start])
    return found


def brute_routings(arcs, starts, targets):
    """All vertex-disjoint path systems covering `starts` into `targets`,
    as frozensets of vertex tuples."""
    start_list = sorted(set(starts), key=str)
    target_set = set(targets)
    out = {}
    for tail, head in arcs:
        out.setdefault(tail, []).append(head)

    def paths_from(source, used):
        collected = []

        def walk(trail):
            current = trail[-1]
            if current in target_set:
                collected.append(tuple(trail))
            for nxt in out.get(current, []):
                if nxt not in trail and nxt not in used:
                    walk(trail + [nxt])

        if source not in used:
            walk([source])
        return collected

    results = set()

    def place(position, used, acc):
        if position == len(start_list):
            results.add(frozenset(acc))
            return
        for path in paths_from(start_list[position], used):
            place(position + 1, used | set(path), acc + [path])

    place(0, set(), [])
    return results


def brute_routable(arcs, starts, targets):
    return bool(brute_routings(arcs, starts, targets))


def brute_rank(arcs, subset, targets):
    elements = sorted(set(subset), key=str)
    for size in range(len(elements), -1, -1):
        for combo in itertools.combinations(elements, size):
            if brute_routable(arcs, combo, targets):
                return size
    return 0


def brute_circuits(arcs, ground, targets):
    """Minimal non-routable subsets, by checking every subset."""
    elements = sorted(set(ground), key=str)
    dependents = [
        frozenset(combo)
        for size in range(1, len(elements) + 1)
        for combo in itertools.combinations(elements, size)
        if not brute_routable(arcs, combo, targets)
    ]
    return {
        member
        for member in dependents
        if not any(other < member for other in dependents)
    }


def brute_has_cycle(vertices, arcs):
    """Depth-first cycle detection, independent of the package."""
    out = {}
    for tail, head in arcs:
        out.setdefault(tail, []).append(head)
    state = dict.fromkeys(vertices, 0)  # 0 new, 1 active, 2 done

    def visit(vertex):
        state[vertex] = 1
        for nxt in out.get(vertex, []):
            if state[nxt] == 1:
                return True
            if state[nxt] == 0 and visit(nxt):
                return True
        state[vertex] = 2
        return False

    return any(state[v] == 0 and visit(v) for v in vertices)


def perm_det(rows):
    """Permutation-expansion determinant; empty matrix gives 1."""
    size = len(rows)
    total = 0
    for perm in itertools.permutations(range(size)):
        inversions = sum(
            1 for i, j in itertools.combinations(range(size), 2) if perm[i] > perm[j]
        )
        product = 1 if inversions % 2 == 0 else -1
        for i in range(size):
            product *= rows[i][perm[i]]
        total += product
    return total


# ---------------------------------------------------------------------------
# random instances


def random_dag(rng, max_vertices=7, max_arcs=12):
    count = rng.randint(min(3, max_vertices), max_vertices)
    names = VERTS[:count]
    hidden = names[:]
    rng.shuffle(hidden)
    position = {name: i for i, name in enumerate(hidden)}
    candidates = [
        (tail, head) for tail in names for head in names if position[tail] < position[head]
    ]
    rng.shuffle(candidates)
    cap = min(max_arcs, len(candidates))
    keep = rng.randint(max(1, cap // 2), cap) if cap else 0
    return Digraph(names, candidates[:keep])


def random_cyclic(rng, max_vertices=6, max_arcs=9):
    while True:
        count = rng.randint(min(2, max_vertices), max_vertices)
        names = VERTS[:count]
        candidates = [(tail, head) for tail in names for head in names]
        rng.shuffle(candidates)
        cap = min(max_arcs, len(candidates))
        keep = rng.randint(max(1, cap // 2), cap)
        digraph = Digraph(names, candidates[:keep])
        if not is_acyclic(digraph):
            return digraph


def random_signature(rng, digraph):
    arcs = sorted(digraph.arcs)
    rng.shuffle(arcs)
    return HeavyArcSignature(arcs, [rng.choice((-1, 1)) for _ in arcs])


def random_subset(rng, pool, max_size=None):
    bound = len(pool) if max_size is None else min(max_size, len(pool))
    return rng.sample(list(pool), rng.randint(0, bound))


def random_instance(rng, *, acyclic=True, max_vertices=7, max_arcs=12):
    digraph = (
        random_dag(rng, max_vertices, max_arcs)
        if acyclic
        else random_cyclic(rng, max_vertices, max_arcs)
    )
    count = len(digraph.vertices)
    # skew toward large ground sets and mid-sized target sets, which is where
    # circuits live; keep a small share of degenerate shapes for edge coverage
    ground = rng.sample(digraph.vertices, rng.randint(min(2, count), count))
    targets = rng.sample(digraph.vertices, rng.randint(1, max(1, count - 1)))
    if rng.random() < 0.04:
        ground = []
    if rng.random() < 0.04:
        targets = []
    return RepresentedGammoid(digraph, targets, ground), random_signature(rng, digraph)


def random_lifting_instance(rng, *, max_steps=4, max_lifted_ground=9):
    """A cyclic instance whose complete lifting stays desk sized."""
    while True:
        gammoid, signature = random_instance(
            rng, acyclic=False, max_vertices=6, max_arcs=9
        )
        trace = complete_lifting(gammoid.digraph)
        if len(trace.steps) <= max_steps and len(gammoid.ground) + len(trace.steps) <= max_lifted_ground:
            return gammoid, signature, trace


def retarget(gammoid):
    """An equivalent representation whose target count equals the rank of the
    ground set: rank-many fresh targets, each fed by every old target."""
    r = max_disjoint_paths(gammoid.digraph, gammoid.ground, gammoid.target_set)
    fresh = [f"w{i}" for i in range(1, r + 1)]
    vertices = gammoid.digraph.vertices + tuple(fresh)
    arcs = set(gammoid.digraph.arcs)
    arcs.update((old, new) for old in gammoid.targets for new in fresh)
    return RepresentedGammoid(Digraph(vertices, arcs), fresh, gammoid.ground)


# ---------------------------------------------------------------------------
# the 11-vertex cyclic reference instance


def reference_instance() -> InstanceFile:
    return parse_instance((DATA / "cyclic_reference.inst").read_text())


# start sets -> (path vertex strings, routing sign) for the reference instance
REFERENCE_ROUTINGS = {
    ("f", "g"): ({"fxb", "gyc"}, +1),
    ("f", "i"): ({"fxb", "igyc"}, +1),
    ("g", "i"): ({"gyc", "ifxb"}, -1),
    ("d", "e", "f"): ({"d", "eyc", "fxb"}, -1),
    ("d", "e", "i"): ({"d", "exb", "igyc"}, +1),
    ("d", "f", "i"): ({"d", "fxb", "igyc"}, +1),
    ("e", "f", "i"): ({"exb", "fd", "igyc"}, -1),
    ("d", "e", "g"): ({"d", "eyc", "ghifxb"}, -1),
    ("d", "g", "i"): ({"d", "gyc", "ifxb"}, -1),
    ("e", "g", "i"): ({"exb", "gyc", "ifd"}, +1),
}

# circuit -> anchored signature over the ground set (d e f g i)
REFERENCE_SIGNATURES = {
    ("f", "g", "i"): {"f": 1, "g": 1, "i": -1},
    ("d", "e", "f", "i"): {"d": 1, "e": 1, "f": -1, "i": -1},
    ("d", "e", "g", "i"): {"d": -1, "e": -1, "g": -1, "i": -1},
}

REFERENCE_CIRCUITS = {
    frozenset("fgi"),
    frozenset("defg"),
    frozenset("defi"),
    frozenset("degi"),
}
