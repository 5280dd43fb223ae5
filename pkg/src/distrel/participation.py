"""Emphasized suborders of a concept lattice and the contexts they induce.

The object concept of ``g`` is the least concept whose extent contains ``g``;
the attribute concept of ``m`` is the greatest concept whose intent
contains ``m``.
"""

from __future__ import annotations

from typing import Callable, Iterable, Mapping

from .errors import InputError
from .fca import Concept, ConceptLattice, FormalContext, concept_of_attributes, concept_of_objects
from .relational import DEFAULT_CAP, Relation, SortedDomain, full_tuple_poset


def object_concept(lat: ConceptLattice, g) -> Concept:
    return concept_of_objects(lat.context, [g])


def attribute_concept(lat: ConceptLattice, m) -> Concept:
    return concept_of_attributes(lat.context, [m])


def _object_concept_idx(lat: ConceptLattice, i: int) -> int:
    return lat.index_of_intent_mask(lat.context.rows[i])


def _attribute_concept_idx(lat: ConceptLattice, k: int) -> int:
    ctx = lat.context
    return lat.index_of_intent_mask(ctx.intent_of_mask(ctx.extent_of_mask(1 << k)))


class SubLattice:
    """A set of concepts with inclusion ``iota`` and its right adjoint.

    ``coadjoint`` maps every concept index to a member index.  The adjoint
    law ``iota(p) <= c  iff  p <= coadjoint(c)`` is checked at construction;
    member sets that do not admit it are rejected.
    """

    def __init__(self, lattice: ConceptLattice, members: Iterable[int],
                 coadjoint: Mapping[int, int] | Callable[[int], int] | None = None):
        self.lattice = lattice
        self.members = frozenset(members)
        bad = [p for p in self.members if not 0 <= p < len(lattice)]
        if bad or not self.members:
            raise InputError("members must be a nonempty set of concept indices")
        if coadjoint is None:
            co = {c: self._greatest_below(c) for c in range(len(lattice))}
        elif callable(coadjoint):
            co = {c: coadjoint(c) for c in range(len(lattice))}
        else:
            co = dict(coadjoint)
        self.coadjoint = co
        self._check()

    def _greatest_below(self, c: int) -> int:
        below = [p for p in self.members if self.lattice.leq(p, c)]
        for p in below:
            if all(self.lattice.leq(q, p) for q in below):
                return p
        raise InputError(f"no greatest member below {self.lattice.label(c)}")

    def _check(self) -> None:
        lat = self.lattice
        for c in range(len(lat)):
            if self.coadjoint.get(c) not in self.members:
                raise InputError(f"coadjoint of {lat.label(c)} is not a member")
            for p in self.members:
                if lat.leq(p, c) != lat.leq(p, self.coadjoint[c]):
                    raise InputError(f"adjoint law fails at {lat.label(p)}, {lat.label(c)}")

    def iota(self, p: int) -> int:
        if p not in self.members:
            raise InputError(f"{self.lattice.label(p)} is not a member")
        return p

    def __len__(self) -> int:
        return len(self.members)

    def __repr__(self) -> str:
        labels = ", ".join(self.lattice.label(p) for p in sorted(self.members))
        return f"SubLattice({{{labels}}})"


def full_sublattice(lat: ConceptLattice) -> SubLattice:
    return SubLattice(lat, range(len(lat)), {c: c for c in range(len(lat))})


def principal_ideal(lat: ConceptLattice, c: int | Concept) -> SubLattice:
    """All concepts below ``c``; the coadjoint is meet with ``c``."""
    if isinstance(c, Concept):
        c = lat.index(c)
    if not 0 <= c < len(lat):
        raise InputError(f"no concept with index {c}")
    members = [d for d in range(len(lat)) if lat.leq(d, c)]
    return SubLattice(lat, members, lambda d: lat.meet([c, d]))


def participation_context(ctx: FormalContext, lat: ConceptLattice,
                          P: SubLattice) -> FormalContext:
    """Cross ``(g, m)`` when some member sits between the object and attribute concepts."""
    if lat.context != ctx:
        raise InputError("lattice was not built from this context")
    if P.lattice is not lat:
        raise InputError("suborder belongs to a different lattice")
    # members above each concept, as a bitmask over member indices
    member_mask = 0
    for p in P.members:
        member_mask |= 1 << p
    gam = [_object_concept_idx(lat, i) for i in range(len(ctx.objects))]
    mu = [_attribute_concept_idx(lat, k) for k in range(len(ctx.attributes))]
    down_mu = []
    for k in mu:
        m = 0
        for j in range(len(lat)):
            if lat.leq(j, k):
                m |= 1 << j
        down_mu.append(m)
    rows = []
    for gi in gam:
        between = lat.up_mask(gi) & member_mask
        row = 0
        for k, dm in enumerate(down_mu):
            if between & dm:
                row |= 1 << k
        rows.append(row)
    return FormalContext.from_rows(ctx.objects, ctx.attributes, rows)


def solution_indicator_context(P: Relation, constraints: Iterable[str],
                               domain: SortedDomain,
                               cap: int | None = DEFAULT_CAP) -> FormalContext:
    """Full tuples against constraints, crossed on every constraint exactly for members of ``P``."""
    if P.arity != domain.sorts:
        raise InputError("indicator context needs a relation of full tuples")
    objs = full_tuple_poset(domain, cap)
    attrs = list(constraints)
    full = (1 << len(attrs)) - 1
    rows = [full if t.values in P.tuples else 0 for t in objs.elements]
    return FormalContext.from_rows(objs, attrs, rows)
