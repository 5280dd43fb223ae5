"""Morphisms of sorted domains and the direct/inverse image of distributed relations.

A morphism from ``(N1, D1)`` to ``(N2, D2)`` is a sort map ``f: N1 -> N2``
together with, for each arity ``U`` of the source, a monotone map
``phi_U: D2^{f U} -> D1^U``.  Note the contravariance of the value maps.
Families are materialized lazily, one arity at a time.
"""

from __future__ import annotations

import itertools
from typing import Callable, Iterable, Mapping

from .errors import CapacityError, InputError
from .poset import Violation
from .relational import (
    DEFAULT_CAP, Arity, DistributedRelation, Relation, Signature, SortedDomain,
    _check_cap, _positions, complete_down, full_tuple_poset,
)

MAX_PREIMAGE_SORTS = 20

ValueMap = Callable[[tuple], tuple]


class DomainMorphism:
    """Sort map plus an arity-indexed family of value maps (target powers to source powers)."""

    def __init__(self, source: SortedDomain, target: SortedDomain,
                 sort_map: Mapping[str, str],
                 family: Callable[[Arity], ValueMap],
                 declared: Iterable[Arity] | None = None,
                 value_maps: Mapping[str, Mapping] | None = None,
                 tables: Mapping[Arity, Mapping[tuple, tuple]] | None = None):
        missing = [a for a in source.sorts if a not in sort_map]
        if missing:
            raise InputError(f"sort map undefined at {missing}")
        for a in source.sorts:
            if sort_map[a] not in target.values:
                raise InputError(f"sort map sends {a!r} to unknown sort {sort_map[a]!r}")
        self.source = source
        self.target = target
        self.sort_map = {a: sort_map[a] for a in source.sorts}
        self._family = family
        self.declared = None if declared is None else tuple(source.arity(u) for u in declared)
        self.value_maps = value_maps
        self.tables = tables
        self._cache: dict[Arity, ValueMap] = {}

    @classmethod
    def componentwise(cls, source: SortedDomain, target: SortedDomain,
                      sort_map: Mapping[str, str],
                      value_maps: Mapping[str, Mapping]) -> DomainMorphism:
        """``phi_U`` is the product of per-sort maps ``D2_{f(a)} -> D1_a``."""
        vm = {a: dict(value_maps[a]) for a in source.sorts if a in value_maps}
        if len(vm) != len(source.sorts):
            raise InputError("a value map is needed for every source sort")

        def family(u: Arity) -> ValueMap:
            fu = target.arity(sort_map[a] for a in u)
            pos = [fu.index(sort_map[a]) for a in u]
            maps = [vm[a] for a in u]

            def apply(y: tuple) -> tuple:
                try:
                    return tuple(g[y[p]] for g, p in zip(maps, pos))
                except KeyError as exc:
                    raise InputError(f"value map undefined at {exc.args[0]!r}") from None
            return apply

        return cls(source, target, sort_map, family, value_maps=vm)

    @classmethod
    def explicit(cls, source: SortedDomain, target: SortedDomain,
                 sort_map: Mapping[str, str],
                 tables: Mapping[Iterable[str], Mapping[tuple, tuple]]) -> DomainMorphism:
        """``phi_U`` given as a lookup table for each declared arity."""
        canon = {source.arity(u): {tuple(k): tuple(v) for k, v in t.items()}
                 for u, t in tables.items()}

        def family(u: Arity) -> ValueMap:
            if u not in canon:
                raise InputError(f"no value map declared for arity {{{','.join(u)}}}")
            table = canon[u]

            def apply(y: tuple) -> tuple:
                try:
                    return table[y]
                except KeyError:
                    raise InputError(f"value map for {{{','.join(u)}}} undefined at {y}") from None
            return apply

        return cls(source, target, sort_map, family, declared=list(canon), tables=canon)

    def image_arity(self, u: Iterable[str]) -> Arity:
        return self.target.arity(self.sort_map[a] for a in u)

    def phi(self, u: Iterable[str]) -> ValueMap:
        u = self.source.arity(u)
        if u not in self._cache:
            self._cache[u] = self._family(u)
        return self._cache[u]

    def arities_to_check(self, limit: int = 8) -> list[Arity]:
        if self.declared is not None:
            return list(self.declared)
        n = self.source.sorts
        if len(n) <= limit:
            return [u for k in range(len(n) + 1) for u in itertools.combinations(n, k)]
        return [()] + [(a,) for a in n] + [n]

    def __repr__(self) -> str:
        return f"DomainMorphism({self.source!r} -> {self.target!r})"


def compose(m1: DomainMorphism, m2: DomainMorphism) -> DomainMorphism:
    """``m2 . m1``: sorts go ``N1 -> N2 -> N3``, values come back ``D3 -> D2 -> D1``."""
    if m1.target != m2.source:
        raise InputError("morphisms are not composable")
    smap = {a: m2.sort_map[m1.sort_map[a]] for a in m1.source.sorts}

    def family(u: Arity) -> ValueMap:
        inner = m2.phi(m1.image_arity(u))
        outer = m1.phi(u)
        return lambda y: outer(inner(y))

    return DomainMorphism(m1.source, m2.target, smap, family)


def _leq_tuple(dom: SortedDomain, arity: Arity, y: tuple, x: tuple) -> bool:
    return all(dom.values[a].leq(v, w) for a, v, w in zip(arity, y, x))


def validate_morphism(m: DomainMorphism, cap: int | None = DEFAULT_CAP) -> list[Violation]:
    """Check totality, monotonicity and the naturality squares by enumeration."""
    out: list[Violation] = []
    arities = m.arities_to_check()
    ok: set[Arity] = set()
    for u in arities:
        fu = m.image_arity(u)
        _check_cap(f"morphism check on {{{','.join(u)}}}", m.target.size(fu), cap)
        try:
            phi = m.phi(u)
        except InputError as exc:
            out.append(Violation("family", str(exc), (u,)))
            continue
        images = {}
        good = True
        for y in m.target.power_values(fu):
            try:
                x = phi(y)
            except InputError as exc:
                out.append(Violation("total", str(exc), (u, y)))
                good = False
                continue
            if len(x) != len(u) or any(v not in m.source.values[a] for a, v in zip(u, x)):
                out.append(Violation("codomain", f"phi{{{','.join(u)}}}{y} = {x} "
                                     "is not a source tuple", (u, y)))
                good = False
                continue
            images[y] = x
        if not good:
            continue
        ok.add(u)
        if not all(m.target.values[b].is_discrete for b in fu):
            for y, y2 in itertools.permutations(images, 2):
                if _leq_tuple(m.target, fu, y, y2) and \
                        not _leq_tuple(m.source, u, images[y], images[y2]):
                    out.append(Violation("monotone", f"phi{{{','.join(u)}}} reverses "
                                         f"{y} <= {y2}", (u, y, y2)))
    for v in arities:
        for u in arities:
            if u == v or v not in ok or u not in ok or not set(u) <= set(v):
                continue
            fv, fu = m.image_arity(v), m.image_arity(u)
            pv, pu = m.phi(v), m.phi(u)
            down = _positions(v, u)
            fdown = _positions(fv, fu)
            for y in m.target.power_values(fv):
                left = tuple(pv(y)[p] for p in down)
                right = pu(tuple(y[p] for p in fdown))
                if left != right:
                    out.append(Violation(
                        "naturality",
                        f"square ({{{','.join(v)}}}, {{{','.join(u)}}}) fails at {y}: "
                        f"{left} != {right}", (v, u, y)))
                    break
    return out


PROJECTION_SORT = "1"


def projection_morphism(domain: SortedDomain, cap: int | None = DEFAULT_CAP) -> DomainMorphism:
    """The canonical morphism from ``(N, D)`` to the single sort of full tuples."""
    full = full_tuple_poset(domain, cap)
    target = SortedDomain({PROJECTION_SORT: full})
    n = domain.sorts

    def family(u: Arity) -> ValueMap:
        if not u:
            return lambda y: ()
        pos = _positions(n, u)
        return lambda y: tuple(y[0].values[p] for p in pos)

    return DomainMorphism(domain, target, {a: PROJECTION_SORT for a in n}, family)


def _constraint_name(e: str, u: Arity) -> str:
    return f"({e},{{{','.join(u)}}})"


def direct_image(m: DomainMorphism, R2: DistributedRelation) -> DistributedRelation:
    """Push a relation over the target domain back onto the source sorts.

    One constraint ``(e2,U)`` arises for every source arity ``U`` whose image
    is exactly the scheme of ``e2``; its relation is the (down-closed) image
    of ``R2[e2]`` under ``phi_U``.
    """
    if R2.domain != m.target:
        raise InputError("direct image needs a relation over the morphism's target domain")
    sig2 = R2.signature
    names, scheme, rel, origin = [], {}, {}, []
    for e2 in sig2.constraints:
        t = set(sig2.scheme[e2])
        pre = [a for a in m.source.sorts if m.sort_map[a] in t]
        if len(pre) > MAX_PREIMAGE_SORTS:
            raise CapacityError(f"preimage subsets of {e2}", 2 ** len(pre), 2 ** MAX_PREIMAGE_SORTS)
        for k in range(len(pre) + 1):
            for u in itertools.combinations(pre, k):
                if {m.sort_map[a] for a in u} != t:
                    continue
                name = _constraint_name(e2, u)
                phi = m.phi(u)
                img = Relation(u, frozenset(phi(y) for y in R2.rel[e2].tuples))
                names.append(name)
                scheme[name] = u
                rel[name] = complete_down(img, m.source) if not m.source.is_discrete else img
                origin.append((e2, frozenset(u)))
    pairs = []
    for (e, u), n1 in zip(origin, names):
        for (d, w), n2 in zip(origin, names):
            if n1 != n2 and sig2.order.leq(e, d) and u >= w:
                pairs.append((n1, n2))
    return DistributedRelation(m.source, Signature(names, scheme, pairs), rel)


def inverse_image(m: DomainMorphism, R1: DistributedRelation,
                  cap: int | None = DEFAULT_CAP) -> DistributedRelation:
    """Pull a relation over the source domain forward to the target sorts."""
    if R1.domain != m.source:
        raise InputError("inverse image needs a relation over the morphism's source domain")
    sig1 = R1.signature
    scheme, rel = {}, {}
    for e in sig1.constraints:
        u = sig1.scheme[e]
        fu = m.image_arity(u)
        _check_cap(f"inverse image of {e}", m.target.size(fu), cap)
        phi = m.phi(u)
        tuples = R1.rel[e].tuples
        scheme[e] = fu
        rel[e] = Relation(fu, frozenset(y for y in m.target.power_values(fu) if phi(y) in tuples))
    return DistributedRelation(m.target, Signature(sig1.constraints, scheme, sig1.order), rel)
