"""Signed-set algebra, circuit-axiom verification, and orientation minors."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Optional, Union

from .digraph import Vertex
from .errors import GroundMismatchError, InputError
from .gammoid import CircuitFamily

Sign = int  # -1, 0, +1


@dataclass(frozen=True)
class SignedSubset:
    """A map from an ordered ground set to {-1, 0, +1}.

    `signs` is a tuple aligned with `ground`.  The constructor also accepts a
    mapping from elements to signs; omitted elements are zero.
    """

    ground: tuple
    signs: tuple

    def __init__(self, ground: Iterable[Vertex], signs: Union[Mapping, Iterable[Sign]]):
        ground_tuple = tuple(ground)
        if isinstance(signs, Mapping):
            stray = set(signs) - set(ground_tuple)
            if stray:
                raise InputError(f"{sorted(map(repr, stray))} not in the ground set")
            aligned = tuple(int(signs.get(element, 0)) for element in ground_tuple)
        else:
            aligned = tuple(int(value) for value in signs)
            if len(aligned) != len(ground_tuple):
                raise InputError("sign sequence does not match the ground set")
        if any(value not in (-1, 0, 1) for value in aligned):
            raise InputError("signs must be -1, 0 or +1")
        object.__setattr__(self, "ground", ground_tuple)
        object.__setattr__(self, "signs", aligned)

    @cached_property
    def _position(self) -> dict:
        return {element: i for i, element in enumerate(self.ground)}

    def sign_of(self, element: Vertex) -> Sign:
        try:
            return self.signs[self._position[element]]
        except KeyError:
            raise InputError(f"unknown element {element!r}") from None

    @cached_property
    def positives(self) -> frozenset:
        return frozenset(e for e, s in zip(self.ground, self.signs) if s > 0)

    @cached_property
    def negatives(self) -> frozenset:
        return frozenset(e for e, s in zip(self.ground, self.signs) if s < 0)

    @cached_property
    def support(self) -> frozenset:
        return frozenset(e for e, s in zip(self.ground, self.signs) if s != 0)

    @cached_property
    def zeros(self) -> frozenset:
        return frozenset(e for e, s in zip(self.ground, self.signs) if s == 0)

    def restrict(self, onto: Iterable[Vertex]) -> "SignedSubset":
        """The signed subset read off on the sub-ground `onto` (order kept)."""
        onto_set = frozenset(onto)
        stray = onto_set - set(self.ground)
        if stray:
            raise InputError(f"{sorted(map(repr, stray))} not in the ground set")
        kept = [(e, s) for e, s in zip(self.ground, self.signs) if e in onto_set]
        return SignedSubset(tuple(e for e, _ in kept), tuple(s for _, s in kept))

    def __neg__(self) -> "SignedSubset":
        return SignedSubset(self.ground, tuple(-value for value in self.signs))

    def __str__(self) -> str:
        parts = [
            ("+" if sign > 0 else "-") + str(element)
            for element, sign in zip(self.ground, self.signs)
            if sign
        ]
        return "{" + " ".join(parts) + "}"


def negate(signed: SignedSubset) -> SignedSubset:
    """Pointwise sign flip; an involution."""
    return -signed


@dataclass(frozen=True)
class Orientation:
    """A negation-closed family of signed circuits over a common ground set.

    `representatives` stores one member per +/- pair, sorted canonically;
    `members` is the full family.  Supports are pairwise incomparable and
    never empty.
    """

    ground: tuple
    representatives: tuple

    def __init__(self, ground: Iterable[Vertex], representatives: Iterable[SignedSubset]):
        ground_tuple = tuple(ground)
        position = {element: i for i, element in enumerate(ground_tuple)}
        reps = list(representatives)
        for rep in reps:
            if rep.ground != ground_tuple:
                raise GroundMismatchError("representative on a different ground set")
            if not rep.support:
                raise InputError("a signed circuit cannot have empty support")
        reps.sort(key=lambda rep: (tuple(sorted(position[e] for e in rep.support)), rep.signs))
        supports = [rep.support for rep in reps]
        if len(set(supports)) != len(supports):
            raise InputError("one representative per support is required")
        for first, second in itertools.combinations(supports, 2):
            if first <= second or second <= first:
                raise InputError("circuit supports must be pairwise incomparable")
        object.__setattr__(self, "ground", ground_tuple)
        object.__setattr__(self, "representatives", tuple(reps))

    @cached_property
    def members(self) -> frozenset:
        closed = set(self.representatives)
        closed.update(-rep for rep in self.representatives)
        return frozenset(closed)

    @cached_property
    def supports(self) -> tuple:
        return tuple(rep.support for rep in self.representatives)


@dataclass(frozen=True)
class Violation:
    """One failed axiom instance with its minimal witness."""

    axiom: str
    witnesses: tuple
    eliminated: Optional[Vertex] = None
    retained: Optional[Vertex] = None

    def __str__(self) -> str:
        parts = [f"{self.axiom} violated"]
        names = ("X", "Y")
        details = [f"{names[i]}={witness}" for i, witness in enumerate(self.witnesses)]
        if self.eliminated is not None:
            details.append(f"e={self.eliminated}")
        if self.retained is not None:
            details.append(f"f={self.retained}")
        return parts[0] + " (" + ", ".join(details) + ")"


@dataclass(frozen=True)
class AxiomReport:
    """The complete list of axiom violations for a signed-subset family."""

    violations: tuple

    @property
    def ok(self) -> bool:
        return not self.violations

    def named(self, axiom: str) -> tuple:
        return tuple(v for v in self.violations if v.axiom == axiom)

    def __str__(self) -> str:
        if self.ok:
            return "all circuit axioms hold"
        return "\n".join(str(v) for v in self.violations)


def _canonical_members(family: Iterable[SignedSubset]) -> list:
    members = list(family.members if isinstance(family, Orientation) else family)
    if not members:
        return []
    ground = members[0].ground
    for member in members:
        if member.ground != ground:
            raise GroundMismatchError("family members on different ground sets")
    # dedupe, then order by support and sign pattern for a stable report
    unique = {member.signs: member for member in members}
    position = {element: i for i, element in enumerate(ground)}

    def key(member: SignedSubset) -> tuple:
        return (tuple(sorted(position[e] for e in member.support)), member.signs)

    return sorted(unique.values(), key=key)


def check_circuit_axioms(family: Iterable[SignedSubset]) -> AxiomReport:
    """Verify the signed circuit axioms and report every violation.

    Checked, in report order: no empty support; closure under negation;
    support incomparability; weak elimination (some member avoids a common
    oppositely signed element inside the union of signs); strong elimination
    (additionally, any element positive in one circuit and not negative in the
    other can be kept positive).  An empty report means the family is a valid
    signed circuit family.
    """
    members = _canonical_members(family)
    if not members:
        return AxiomReport(())
    ground = members[0].ground
    bit = {element: 1 << i for i, element in enumerate(ground)}
    masks = []
    for member in members:
        positive = sum(bit[e] for e in member.positives)
        negative = sum(bit[e] for e in member.negatives)
        masks.append((positive, negative))
    mask_set = set(masks)
    violations: list[Violation] = []

    for member, (positive, negative) in zip(members, masks):
        if not positive and not negative:
            violations.append(Violation("empty support", (member,)))
    for member, (positive, negative) in zip(members, masks):
        if (negative, positive) not in mask_set:
            violations.append(Violation("negation closure", (member,)))
    for i, first in enumerate(members):
        fp, fn = masks[i]
        for j, second in enumerate(members):
            if i == j:
                continue
            sp, sn = masks[j]
            if (fp, fn) == (sn, sp):
                continue
            support, other = fp | fn, sp | sn
            if support and support & ~other == 0 and (fp, fn) != (sp, sn):
                violations.append(Violation("support incomparability", (first, second)))

    for i, first in enumerate(members):
        fp, fn = masks[i]
        for j, second in enumerate(members):
            sp, sn = masks[j]
            if i == j or (fp, fn) == (sn, sp):
                continue
            common = fp & sn
            if not common:
                continue
            keep_range = (fp & ~sn) | (sp & ~fn)
            for element in ground:
                ebit = bit[element]
                if not common & ebit:
                    continue
                allowed_positive = (fp | sp) & ~ebit
                allowed_negative = (fn | sn) & ~ebit
                candidates = [
                    zp
                    for (zp, zn) in masks
                    if zp & ~allowed_positive == 0 and zn & ~allowed_negative == 0
                ]
                if not candidates:
                    violations.append(
                        Violation("weak elimination", (first, second), eliminated=element)
                    )
                for kept in ground:
                    kbit = bit[kept]
                    if not keep_range & kbit:
                        continue
                    if not any(zp & kbit for zp in candidates):
                        violations.append(
                            Violation(
                                "strong elimination",
                                (first, second),
                                eliminated=element,
                                retained=kept,
                            )
                        )
    return AxiomReport(tuple(violations))


def contract_orientation(orientation: Orientation, onto: Iterable[Vertex]) -> Orientation:
    """The orientation induced on `onto` by contracting everything else away.

    Every signed circuit is restricted to `onto`; empty restrictions are
    dropped and only restrictions with inclusion-minimal support are kept.
    The result is closed under negation and its supports are the contraction
    of the original support family.
    """
    onto_set = frozenset(onto)
    stray = onto_set - set(orientation.ground)
    if stray:
        raise InputError(f"{sorted(map(repr, stray))} not in the ground set")
    ground = tuple(element for element in orientation.ground if element in onto_set)
    restricted = [rep.restrict(ground) for rep in orientation.representatives]
    supports = {cut.support for cut in restricted if cut.support}
    minimal = {
        support
        for support in supports
        if not any(other < support for other in supports)
    }
    taken: dict = {}
    for cut in restricted:
        if cut.support in minimal and cut.support not in taken:
            taken[cut.support] = cut
    return Orientation(ground, tuple(taken.values()))


def underlying_matroid(orientation: Orientation) -> CircuitFamily:
    """The support family of the orientation, one set per +/- pair."""
    return CircuitFamily(orientation.ground, orientation.supports)
