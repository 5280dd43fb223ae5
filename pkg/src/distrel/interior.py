"""Solution sets, projections of candidate solutions, and relational interior."""

from __future__ import annotations

from typing import Iterable

from .errors import InputError
from .relational import (
    DEFAULT_CAP, DistributedRelation, Relation, Signature, SortedDomain,
    _check_cap, _positions, _satisfaction_rows, projective_containment,
)


def solution_set(R: DistributedRelation, cap: int | None = DEFAULT_CAP) -> Relation:
    """Full tuples satisfying every constraint, by enumerate-and-filter."""
    dom = R.domain
    n = dom.sorts
    _check_cap("full power", dom.size(n), cap)
    want = (1 << len(R.constraints)) - 1
    tuples = list(dom.power_values(n))
    rows = _satisfaction_rows(R, n, tuples)
    return Relation(n, frozenset(t for t, r in zip(tuples, rows) if r == want))


def project_solution(P: Relation, signature: Signature, domain: SortedDomain) -> DistributedRelation:
    """Project a set of full tuples onto every constraint scheme."""
    if P.arity != domain.sorts:
        raise InputError("candidate solutions must be full tuples")
    rel = {}
    for e in signature.constraints:
        sch = signature.scheme[e]
        pos = _positions(P.arity, sch)
        rel[e] = Relation(sch, frozenset(tuple(t[p] for p in pos) for t in P.tuples))
    return DistributedRelation(domain, signature, rel)


def interior(R: DistributedRelation, cap: int | None = DEFAULT_CAP) -> DistributedRelation:
    """Projection of the solution set: the least relation with the same solutions."""
    return project_solution(solution_set(R, cap), R.signature, R.domain)


def _same_shape(R: DistributedRelation, S: DistributedRelation) -> None:
    if R.domain != S.domain or R.signature != S.signature:
        raise InputError("distributed relations must share domain and signature")


def leq(R: DistributedRelation, S: DistributedRelation) -> bool:
    """Pointwise order: every constraint relation of ``R`` is inside that of ``S``."""
    _same_shape(R, S)
    return all(R.rel[e].tuples <= S.rel[e].tuples for e in R.constraints)


def pointwise_meet(rs: Iterable[DistributedRelation]) -> DistributedRelation:
    rs = list(rs)
    for S in rs[1:]:
        _same_shape(rs[0], S)
    return rs[0].with_relations({
        e: Relation(rs[0].rel[e].arity, frozenset.intersection(*(S.rel[e].tuples for S in rs)))
        for e in rs[0].constraints})


def pointwise_join(rs: Iterable[DistributedRelation]) -> DistributedRelation:
    rs = list(rs)
    for S in rs[1:]:
        _same_shape(rs[0], S)
    return rs[0].with_relations({
        e: Relation(rs[0].rel[e].arity, frozenset.union(*(S.rel[e].tuples for S in rs)))
        for e in rs[0].constraints})


def equivalent(R: DistributedRelation, S: DistributedRelation,
               cap: int | None = DEFAULT_CAP) -> bool:
    _same_shape(R, S)
    return solution_set(R, cap) == solution_set(S, cap)


def isolated_tuples(R: DistributedRelation, cap: int | None = DEFAULT_CAP) -> dict[str, Relation]:
    """Per constraint, the tuples that take part in no solution."""
    inner = interior(R, cap)
    return {e: Relation(R.rel[e].arity, R.rel[e].tuples - inner.rel[e].tuples)
            for e in R.constraints}


def containment_conditions(R: DistributedRelation) -> list[tuple[str, str, bool]]:
    """Every candidate condition ``d <= e`` (scheme of e inside scheme of d) and its truth."""
    sig = R.signature
    out = []
    for d in sig.constraints:
        for e in sig.constraints:
            if d != e and set(sig.scheme[e]) <= set(sig.scheme[d]):
                out.append((d, e, projective_containment(R.rel[d], R.rel[e])))
    return out
