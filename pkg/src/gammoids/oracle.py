"""Exact integer ground truth for orientations.

Arc weights whose magnitudes dominate every product of strictly lighter
weights realize the represented gammoid over the integers; the path-counting
matrix and Cramer-rule determinant signs then reproduce the signed circuits.
All arithmetic is arbitrary-precision integer, never floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

from .digraph import Digraph, Vertex, is_acyclic, topological_order
from .errors import (
    CyclicDigraphError,
    GroundMismatchError,
    InputError,
    OracleLimitError,
    SingularMinorError,
)
from .gammoid import RepresentedGammoid, circuits
from .heavy_arc import HeavyArcSignature, max_routing
from .oriented import Orientation, SignedSubset

# Weight magnitudes grow doubly exponentially in the arc count; past this
# bound the determinants stop being practical.
MAX_ORACLE_ARCS = 24


@dataclass(frozen=True)
class HeavyWeighting:
    """Nonzero integer arc weights; `values` is aligned with `arcs`."""

    arcs: tuple
    values: tuple

    def __init__(self, arcs: Iterable, values: Iterable[int]):
        arc_tuple = tuple((tail, head) for tail, head in arcs)
        value_tuple = tuple(int(value) for value in values)
        if len(arc_tuple) != len(value_tuple):
            raise InputError("weights do not match the arcs")
        if any(value == 0 for value in value_tuple):
            raise InputError("arc weights must be nonzero")
        object.__setattr__(self, "arcs", arc_tuple)
        object.__setattr__(self, "values", value_tuple)

    @cached_property
    def _table(self) -> dict:
        return dict(zip(self.arcs, self.values))

    def weight_of(self, arc) -> int:
        try:
            return self._table[arc]
        except KeyError:
            raise InputError(f"arc {arc!r} carries no weight") from None


def heavy_weighting(signature: HeavyArcSignature) -> HeavyWeighting:
    """The canonical integer weighting for a signature.

    With the arcs ascending, the magnitude of each weight is one more than
    the product of (1 + magnitude) over all strictly lighter arcs, so it
    strictly exceeds the sum over all subsets of lighter arcs of their weight
    products; signs follow the signature.
    """
    if len(signature.arc_order) > MAX_ORACLE_ARCS:
        raise OracleLimitError(
            f"{len(signature.arc_order)} arcs exceed the exact-arithmetic limit of "
            f"{MAX_ORACLE_ARCS}; the weight magnitudes grow doubly exponentially"
        )
    values = []
    dominated = 1  # equals the sum over all subsets of lighter arcs of their weight products
    for sign in signature.signs:
        magnitude = 1 + dominated
        values.append(sign * magnitude)
        dominated *= 1 + magnitude
    return HeavyWeighting(signature.arc_order, values)


def verify_heavy_weighting(weighting: HeavyWeighting, signature: HeavyArcSignature) -> bool:
    """Brute-force check of the three weighting conditions: magnitude at least
    one, sign agreement, and strict domination of the subset-product sum of
    all lighter arcs (all 2^k subsets are enumerated)."""
    if set(weighting.arcs) != set(signature.arc_order):
        return False
    for position, arc in enumerate(signature.arc_order):
        value = weighting.weight_of(arc)
        if abs(value) < 1:
            return False
        if (1 if value > 0 else -1) != signature.sign_of(arc):
            return False
        lighter = [abs(weighting.weight_of(other)) for other in signature.arc_order[:position]]
        total = 0
        for mask in range(1 << len(lighter)):
            product = 1
            for i, magnitude in enumerate(lighter):
                if mask >> i & 1:
                    product *= magnitude
            total += product
        if total >= abs(value):
            return False
    return True


@dataclass(frozen=True)
class PathMatrix:
    """Exact integer matrix whose (u, v) entry sums the weight products of all
    u-to-v paths; rows and columns keep the implicit vertex order."""

    rows: tuple
    cols: tuple
    entries: tuple

    @cached_property
    def _row_position(self) -> dict:
        return {label: i for i, label in enumerate(self.rows)}

    @cached_property
    def _col_position(self) -> dict:
        return {label: i for i, label in enumerate(self.cols)}

    def entry(self, row: Vertex, col: Vertex) -> int:
        try:
            return self.entries[self._row_position[row]][self._col_position[col]]
        except KeyError:
            raise InputError(f"({row!r}, {col!r}) is outside the matrix") from None

    def submatrix(self, rows: Iterable[Vertex], cols: Iterable[Vertex]) -> list:
        """Rows and columns selected by label, in this matrix's own order."""
        row_set = frozenset(rows)
        col_set = frozenset(cols)
        stray = (row_set - set(self.rows)) | (col_set - set(self.cols))
        if stray:
            raise InputError(f"{sorted(map(repr, stray))} not indexed by the matrix")
        picked_rows = [i for i, label in enumerate(self.rows) if label in row_set]
        picked_cols = [j for j, label in enumerate(self.cols) if label in col_set]
        return [[self.entries[i][j] for j in picked_cols] for i in picked_rows]


def path_matrix(
    digraph: Digraph,
    weighting: HeavyWeighting,
    ground: Iterable[Vertex],
    targets: Iterable[Vertex],
) -> PathMatrix:
    """The path-sum matrix of an acyclic digraph, rows over `ground` and
    columns over `targets`.  In an acyclic digraph every walk is a path, so a
    single dynamic-programming sweep per row is exact."""
    if not is_acyclic(digraph):
        raise CyclicDigraphError("the path matrix is defined for acyclic digraphs only")
    if set(weighting.arcs) != digraph.arcs:
        raise InputError("weighting does not cover exactly the digraph's arcs")
    rows = digraph.ordered(ground)
    cols = digraph.ordered(targets)
    order = topological_order(digraph)
    position = {vertex: i for i, vertex in enumerate(order)}
    entries = []
    for source in rows:
        sums = {source: 1}
        for vertex in order[position[source] + 1 :]:
            total = 0
            for previous in digraph.predecessors(vertex):
                partial = sums.get(previous)
                if partial:
                    total += partial * weighting.weight_of((previous, vertex))
            if total:
                sums[vertex] = total
        entries.append(tuple(sums.get(col, 0) for col in cols))
    return PathMatrix(rows, cols, tuple(entries))


def _det_cofactor(rows: list) -> int:
    size = len(rows)
    if size == 0:
        return 1
    if size == 1:
        return rows[0][0]
    total = 0
    sign = 1
    for j in range(size):
        factor = rows[0][j]
        if factor:
            minor = [row[:j] + row[j + 1 :] for row in rows[1:]]
            total += sign * factor * _det_cofactor(minor)
        sign = -sign
    return total


def _det_bareiss(rows: list) -> int:
    size = len(rows)
    work = [list(row) for row in rows]
    sign = 1
    previous = 1
    for k in range(size - 1):
        if work[k][k] == 0:
            for i in range(k + 1, size):
                if work[i][k] != 0:
                    work[k], work[i] = work[i], work[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = work[k][k]
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                work[i][j] = (work[i][j] * pivot - work[i][k] * work[k][j]) // previous
            work[i][k] = 0
        previous = pivot
    return sign * work[size - 1][size - 1]


def det_sign(matrix: Iterable[Iterable[int]]) -> int:
    """Exact sign of the determinant of a square integer matrix.

    Cofactor expansion for small matrices, fraction-free (Bareiss)
    elimination otherwise; the empty matrix has determinant one.
    """
    rows = [list(row) for row in matrix]
    for row in rows:
        if len(row) != len(rows):
            raise InputError("determinant of a non-square matrix")
    value = _det_cofactor(rows) if len(rows) <= 4 else _det_bareiss(rows)
    return (value > 0) - (value < 0)


def cramer_circuit_orientation(
    matrix: PathMatrix,
    circuit: Iterable[Vertex],
    anchor: Vertex,
    target_subset: Iterable[Vertex],
) -> SignedSubset:
    """The signed circuit the matrix assigns to `circuit`, anchored at -1 on
    `anchor`.

    Every other element receives the sign of the Cramer-rule coefficient: the
    determinant of the base minor with that element's row replaced by the
    anchor's row, divided by the base-minor determinant.  The base minor
    (rows: circuit minus anchor; columns: `target_subset`) must be invertible.
    """
    circuit_set = frozenset(circuit)
    if anchor not in circuit_set:
        raise InputError(f"anchor {anchor!r} is not in the circuit")
    stray = circuit_set - set(matrix.rows)
    if stray:
        raise InputError(f"{sorted(map(repr, stray))} not indexed by the matrix")
    col_set = frozenset(target_subset)
    if len(col_set) != len(circuit_set) - 1:
        raise InputError("need exactly one target column per non-anchor element")
    base_rows = [label for label in matrix.rows if label in circuit_set and label != anchor]
    cols = [label for label in matrix.cols if label in col_set]
    if len(cols) != len(col_set):
        raise InputError("target subset not indexed by the matrix")
    base = matrix.submatrix(base_rows, cols)
    base_sign = det_sign(base)
    if base_sign == 0:
        raise SingularMinorError(
            "the base minor is singular; pick the target subset from the common "
            "end vertices of the maximal routings of the circuit deletions"
        )
    anchor_row = [matrix.entry(anchor, col) for col in cols]
    values = {anchor: -1}
    for i, element in enumerate(base_rows):
        replaced = [row[:] for row in base]
        replaced[i] = anchor_row
        values[element] = det_sign(replaced) * base_sign
    return SignedSubset(matrix.rows, values)


def oracle_orientation(gammoid: RepresentedGammoid, signature: HeavyArcSignature) -> Orientation:
    """Ground-truth orientation from exact linear algebra.

    Builds the canonical integer weighting and the path matrix, then derives
    one signed circuit per matroid circuit by Cramer-rule determinant signs,
    anchored to match the combinatorial signature at the circuit's first
    element.  Requires an acyclic digraph.
    """
    if not is_acyclic(gammoid.digraph):
        raise CyclicDigraphError("the exact check needs an acyclic digraph; lift cycles first")
    signature.validate_for(gammoid.digraph)
    weighting = heavy_weighting(signature)
    matrix = path_matrix(gammoid.digraph, weighting, gammoid.ground, gammoid.targets)
    family = circuits(gammoid)
    ordered_members = sorted(
        family.members,
        key=lambda member: tuple(sorted(gammoid.digraph.index(v) for v in member)),
    )
    representatives = []
    for member in ordered_members:
        ordered_circuit = gammoid.digraph.ordered(member)
        anchor = ordered_circuit[0]
        rest = ordered_circuit[1:]
        routing = max_routing(gammoid.digraph, rest, gammoid.target_set, signature)
        landing = routing.ends
        signed = cramer_circuit_orientation(matrix, ordered_circuit, anchor, landing)
        base_sign = det_sign(matrix.submatrix(rest, landing))
        representatives.append(signed if base_sign > 0 else -signed)
    return Orientation(gammoid.ground, representatives)


def compare_orientations(first: Orientation, second: Orientation) -> bool:
    """Set equality of two negation-closed signed circuit families."""
    if first.ground != second.ground:
        raise GroundMismatchError("orientations live on different ground sets")
    return first.members == second.members
