"""Sorted domains, relations and distributed relations.

A relation stores its tuples as plain Python tuples of values laid out in
the canonical order of its arity (the domain's sort list restricted to the
arity).  :class:`Tuple` is the tagged form used where a tuple travels on its
own, e.g. as an object of a satisfaction context.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import prod
from typing import Hashable, Iterable, Iterator, Mapping, Sequence

from .errors import CapacityError, InputError
from .fca import FormalContext
from .poset import Poset, Violation

DEFAULT_CAP = 1_000_000

Arity = tuple  # canonical tuple of sort names


@dataclass(frozen=True)
class Tuple:
    """A value assignment tagged with its arity; ``Tuple((), ())`` is the empty tuple."""

    arity: Arity
    values: tuple

    def __post_init__(self):
        if len(self.arity) != len(self.values):
            raise InputError(f"tuple {self.values!r} does not fit arity {self.arity!r}")

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.values)) + ")"

    def tagged(self) -> str:
        return "(" + ",".join(f"{a}={v}" for a, v in zip(self.arity, self.values)) + ")"

    def __getitem__(self, sort: str):
        try:
            return self.values[self.arity.index(sort)]
        except ValueError:
            raise InputError(f"sort {sort!r} not in arity {self.arity!r}") from None


EMPTY_TUPLE = Tuple((), ())


class SortedDomain:
    """Per-sort finite posets of values, indexed by an ordered list of sorts."""

    __slots__ = ("sorts", "values", "_pos")

    def __init__(self, sorts: Mapping[str, Poset | Iterable[Hashable]]):
        self.sorts: tuple[str, ...] = tuple(sorts)
        self.values: dict[str, Poset] = {
            a: v if isinstance(v, Poset) else Poset(v) for a, v in sorts.items()}
        self._pos = {a: i for i, a in enumerate(self.sorts)}

    def arity(self, names: Iterable[str]) -> Arity:
        """Canonical arity for a set of sort names."""
        names = set(names)
        unknown = names - self._pos.keys()
        if unknown:
            raise InputError(f"unknown sort(s) {sorted(map(str, unknown))}")
        return tuple(a for a in self.sorts if a in names)

    def size(self, arity: Iterable[str]) -> int:
        return prod(len(self.values[a]) for a in arity)

    def power_values(self, arity: Arity) -> Iterator[tuple]:
        return itertools.product(*(self.values[a].elements for a in arity))

    def value_key(self, arity: Arity, t: tuple) -> tuple[int, ...]:
        """Sort key placing tuples in declaration order of values."""
        return tuple(self.values[a].index(v) for a, v in zip(arity, t))

    @property
    def is_discrete(self) -> bool:
        return all(p.is_discrete for p in self.values.values())

    def __eq__(self, other) -> bool:
        if not isinstance(other, SortedDomain):
            return NotImplemented
        return self.sorts == other.sorts and self.values == other.values

    def __hash__(self) -> int:
        return hash((self.sorts, tuple(self.values[a] for a in self.sorts)))

    def __repr__(self) -> str:
        return "SortedDomain(" + ", ".join(f"{a}:{len(self.values[a])}" for a in self.sorts) + ")"


@dataclass(frozen=True)
class Relation:
    arity: Arity
    tuples: frozenset = field(default_factory=frozenset)

    @classmethod
    def of(cls, arity: Iterable[str], tuples: Iterable[Sequence]) -> Relation:
        arity = tuple(arity)
        ts = frozenset(tuple(t) for t in tuples)
        for t in ts:
            if len(t) != len(arity):
                raise InputError(f"tuple {t!r} does not fit arity {arity!r}")
        return cls(arity, ts)

    def __len__(self) -> int:
        return len(self.tuples)

    def __iter__(self):
        return iter(self.tuples)

    def __contains__(self, t) -> bool:
        return tuple(t) in self.tuples

    def sorted(self, domain: SortedDomain) -> list[tuple]:
        return sorted(self.tuples, key=lambda t: domain.value_key(self.arity, t))

    def tagged(self) -> set[Tuple]:
        return {Tuple(self.arity, t) for t in self.tuples}

    def __repr__(self) -> str:
        body = ", ".join("(" + ",".join(map(str, t)) + ")" for t in sorted(self.tuples, key=repr))
        return f"Relation({{{','.join(self.arity)}}}: {{{body}}})"


class Signature:
    """Constraint names, a preorder on them, and a scheme for each."""

    __slots__ = ("constraints", "order", "scheme")

    def __init__(self, constraints: Iterable[str], scheme: Mapping[str, Iterable[str]],
                 order: Poset | Iterable[tuple[str, str]] = ()):
        self.constraints: tuple[str, ...] = tuple(constraints)
        self.order: Poset = order if isinstance(order, Poset) else \
            Poset(self.constraints, order, strict=False)
        if self.order.elements != self.constraints:
            raise InputError("signature order must range over the constraint list")
        missing = [e for e in self.constraints if e not in scheme]
        if missing:
            raise InputError(f"constraint(s) without scheme: {missing}")
        self.scheme: dict[str, Arity] = {e: tuple(scheme[e]) for e in self.constraints}

    @property
    def is_discrete(self) -> bool:
        return self.order.is_discrete

    def __eq__(self, other) -> bool:
        if not isinstance(other, Signature):
            return NotImplemented
        return (self.constraints == other.constraints and self.order == other.order
                and self.scheme == other.scheme)

    def __hash__(self) -> int:
        return hash((self.constraints, tuple(self.scheme.items())))

    def __repr__(self) -> str:
        return "Signature(" + ", ".join(
            f"{e}:{{{','.join(self.scheme[e])}}}" for e in self.constraints) + ")"


class DistributedRelation:
    """A signature interpreted over a sorted domain; networks are the discrete case."""

    __slots__ = ("domain", "signature", "rel")

    def __init__(self, domain: SortedDomain, signature: Signature,
                 rel: Mapping[str, Relation]):
        self.domain = domain
        self.signature = signature
        self.rel: dict[str, Relation] = {e: rel[e] for e in signature.constraints if e in rel}
        extra = set(rel) - set(signature.constraints)
        if extra:
            raise InputError(f"relations for undeclared constraint(s) {sorted(extra)}")

    @classmethod
    def network(cls, domain: SortedDomain,
                constraints: Mapping[str, tuple[Iterable[str], Iterable[Sequence]]],
                order: Iterable[tuple[str, str]] = ()) -> DistributedRelation:
        """Build from ``{name: (scheme, tuples)}`` with tuples in scheme order."""
        scheme, rel = {}, {}
        for e, (names, tuples) in constraints.items():
            names = list(names)
            canon = domain.arity(names)
            perm = [names.index(a) for a in canon]
            scheme[e] = canon
            rel[e] = Relation.of(canon, (tuple(t[p] for p in perm) for t in tuples))
        return cls(domain, Signature(list(constraints), scheme, order), rel)

    @property
    def constraints(self) -> tuple[str, ...]:
        return self.signature.constraints

    def with_relations(self, rel: Mapping[str, Relation]) -> DistributedRelation:
        return DistributedRelation(self.domain, self.signature, rel)

    def size(self) -> int:
        return sum(len(r) for r in self.rel.values())

    def __eq__(self, other) -> bool:
        if not isinstance(other, DistributedRelation):
            return NotImplemented
        return (self.domain == other.domain and self.signature == other.signature
                and self.rel == other.rel)

    def __hash__(self) -> int:
        return hash((self.domain, self.signature, tuple(self.rel.items())))

    def __repr__(self) -> str:
        return (f"DistributedRelation({len(self.domain.sorts)} sorts, "
                f"{len(self.constraints)} constraints, {self.size()} tuples)")


def _check_cap(what: str, size: int, cap: int | None) -> None:
    if cap is not None and size > cap:
        raise CapacityError(what, size, cap)


def power(domain: SortedDomain, arity: Iterable[str], cap: int | None = DEFAULT_CAP) -> Relation:
    """The full relation over ``arity``; the empty arity gives ``{()}``."""
    u = domain.arity(arity)
    _check_cap(f"power {{{','.join(u)}}}", domain.size(u), cap)
    return Relation(u, frozenset(domain.power_values(u)))


def project_tuple(x: Tuple, arity: Iterable[str]) -> Tuple:
    u = set(arity)
    if not u <= set(x.arity):
        raise InputError(f"cannot project {x.tagged()} onto {sorted(u)}")
    pos = [i for i, a in enumerate(x.arity) if a in u]
    return Tuple(tuple(x.arity[i] for i in pos), tuple(x.values[i] for i in pos))


def _positions(src: Arity, dst: Arity) -> list[int]:
    return [src.index(a) for a in dst]


def project_relation(r: Relation, arity: Iterable[str]) -> Relation:
    u = set(arity)
    if not u <= set(r.arity):
        raise InputError(f"cannot project {{{','.join(r.arity)}}} onto {sorted(u)}")
    dst = tuple(a for a in r.arity if a in u)
    pos = _positions(r.arity, dst)
    return Relation(dst, frozenset(tuple(t[p] for p in pos) for t in r.tuples))


def tuple_leq(y: Tuple, x: Tuple) -> bool:
    """Whole-part order: ``x`` is a projection of ``y``; the empty tuple is the top."""
    if not set(x.arity) <= set(y.arity):
        return False
    return project_tuple(y, x.arity).values == x.values


def projective_containment(s: Relation, r: Relation) -> bool:
    """``s <= r``: the scheme of ``r`` is inside that of ``s`` and s projects into r."""
    if not set(r.arity) <= set(s.arity):
        return False
    pos = _positions(s.arity, r.arity)
    return all(tuple(t[p] for p in pos) in r.tuples for t in s.tuples)


def natural_join(rels: Iterable[Relation], domain: SortedDomain,
                 cap: int | None = DEFAULT_CAP) -> Relation:
    """Tuples over the union arity projecting into every member (the infimum)."""
    rels = list(rels)
    if not rels:
        raise InputError("natural join of an empty family")
    acc_ar: Arity = ()
    acc: set = {()}
    for r in sorted(rels, key=len):
        new_ar = domain.arity(set(acc_ar) | set(r.arity))
        shared = [a for a in r.arity if a in acc_ar]
        r_key = _positions(r.arity, tuple(shared))
        a_key = _positions(acc_ar, tuple(shared))
        index: dict[tuple, list[tuple]] = {}
        for t in r.tuples:
            index.setdefault(tuple(t[p] for p in r_key), []).append(t)
        src = [(0, acc_ar.index(a)) if a in acc_ar else (1, r.arity.index(a)) for a in new_ar]
        out = set()
        for t in acc:
            for s in index.get(tuple(t[p] for p in a_key), ()):
                pair = (t, s)
                out.add(tuple(pair[w][p] for w, p in src))
            _check_cap(f"natural join over {{{','.join(new_ar)}}}", len(out), cap)
        acc_ar, acc = new_ar, out
    return Relation(acc_ar, frozenset(acc))


def is_closed_below(r: Relation, domain: SortedDomain) -> list[tuple]:
    """Witnesses ``(x, y)`` with ``x`` in ``r``, ``y < x`` one coordinate down, ``y`` missing."""
    out = []
    lower = {a: {v: domain.values[a].below(v) for v in domain.values[a]}
             for a in r.arity if not domain.values[a].is_discrete}
    if not lower:
        return out
    for t in r.tuples:
        for p, a in enumerate(r.arity):
            for v in lower.get(a, {}).get(t[p], ()):
                y = t[:p] + (v,) + t[p + 1:]
                if y not in r.tuples:
                    out.append((t, y))
    return out


def complete_down(r: Relation, domain: SortedDomain) -> Relation:
    """Smallest closed-below relation containing ``r``."""
    lower = {a: {v: domain.values[a].below(v) for v in domain.values[a]} for a in r.arity}
    seen = set(r.tuples)
    stack = list(seen)
    while stack:
        t = stack.pop()
        for p, a in enumerate(r.arity):
            for v in lower[a].get(t[p], ()):
                y = t[:p] + (v,) + t[p + 1:]
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
    return Relation(r.arity, frozenset(seen))


def validate_network(R: DistributedRelation) -> list[Violation]:
    """Report scheme, closed-below and monotonicity violations; empty means valid."""
    out: list[Violation] = []
    dom, sig = R.domain, R.signature
    for a in dom.sorts:
        out.extend(dom.values[a].violations())
    for e in sig.constraints:
        sch = sig.scheme[e]
        try:
            canon = dom.arity(sch)
        except InputError as exc:
            out.append(Violation("scheme", f"{e}: {exc}", (e,)))
            continue
        if canon != sch:
            out.append(Violation("scheme", f"{e}: scheme {sch} is not in sort order", (e,)))
        r = R.rel.get(e)
        if r is None:
            out.append(Violation("missing", f"{e}: no relation assigned", (e,)))
            continue
        if r.arity != sch:
            out.append(Violation("arity", f"{e}: relation arity {{{','.join(r.arity)}}} "
                                 f"differs from scheme {{{','.join(sch)}}}", (e,)))
            continue
        bad = [t for t in r.tuples if len(t) != len(sch)
               or any(v not in dom.values[a] for a, v in zip(sch, t))]
        for t in sorted(bad, key=repr):
            out.append(Violation("value", f"{e}: tuple {t} has values outside the domain", (e, t)))
        if bad:
            continue
        for x, y in sorted(is_closed_below(r, dom), key=repr):
            out.append(Violation("closed-below", f"{e}: {y} lies below {x} but is missing",
                                 (e, x, y)))
    for i, j in sig.order.strict_pairs():
        e1, e2 = sig.constraints[i], sig.constraints[j]
        if not set(sig.scheme[e2]) <= set(sig.scheme[e1]):
            out.append(Violation("scheme-order", f"{e1} <= {e2} but scheme of {e2} "
                                 f"is not inside scheme of {e1}", (e1, e2)))
        elif e1 in R.rel and e2 in R.rel and \
                not projective_containment(R.rel[e1], R.rel[e2]):
            out.append(Violation("monotonicity", f"{e1} <= {e2} but {e1} does not "
                                 f"project into {e2}", (e1, e2)))
    return out


def satisfies(R: DistributedRelation, x: Tuple, e: str) -> bool:
    if e not in R.signature.scheme:
        raise InputError(f"unknown constraint {e!r}")
    sch = R.signature.scheme[e]
    if not set(sch) <= set(x.arity):
        return False
    pos = _positions(x.arity, sch)
    return tuple(x.values[p] for p in pos) in R.rel[e].tuples


def _satisfaction_rows(R: DistributedRelation, arity: Arity,
                       value_tuples: Iterable[tuple]) -> list[int]:
    sig = R.signature
    checks = []
    for k, e in enumerate(sig.constraints):
        sch = sig.scheme[e]
        if set(sch) <= set(arity):
            checks.append((1 << k, _positions(arity, sch), R.rel[e].tuples))
    rows = []
    for t in value_tuples:
        row = 0
        for bit, pos, tuples in checks:
            if tuple(t[p] for p in pos) in tuples:
                row |= bit
        rows.append(row)
    return rows


def full_tuple_poset(domain: SortedDomain, cap: int | None = DEFAULT_CAP) -> Poset:
    """All full tuples in power order, with the componentwise value order."""
    n = domain.sorts
    _check_cap("full power", domain.size(n), cap)
    elems = [Tuple(n, v) for v in domain.power_values(n)]
    if domain.is_discrete:
        return Poset(elems)
    idx = {t.values: i for i, t in enumerate(elems)}
    pairs = []
    for t in elems:
        for p, a in enumerate(n):
            for v in domain.values[a].below(t.values[p]):
                y = t.values[:p] + (v,) + t.values[p + 1:]
                pairs.append((elems[idx[y]], t))
    return Poset(elems, pairs)


def all_tuple_poset(domain: SortedDomain, cap: int | None = DEFAULT_CAP) -> Poset:
    """Tuples of every arity ordered by projection, wholes first and the empty tuple last."""
    n = domain.sorts
    _check_cap("all-arity tuples", prod(len(domain.values[a]) + 1 for a in n), cap)
    elems: list[Tuple] = []
    for k in range(len(n), -1, -1):
        for u in itertools.combinations(n, k):
            elems.extend(Tuple(u, v) for v in domain.power_values(u))
    idx = {(t.arity, t.values): i for i, t in enumerate(elems)}
    up = {}
    for i, t in enumerate(elems):
        m = 0
        for k in range(len(t.arity) + 1):
            for sub in itertools.combinations(range(len(t.arity)), k):
                key = (tuple(t.arity[p] for p in sub), tuple(t.values[p] for p in sub))
                m |= 1 << idx[key]
        up[i] = m
    return Poset._from_up(elems, up, strict=True)


def satisfaction_context(R: DistributedRelation, mode: str = "full",
                         cap: int | None = DEFAULT_CAP) -> FormalContext:
    """Tuples against constraints, crossed where the tuple satisfies the constraint.

    ``mode="full"`` uses the full tuples only; ``mode="all"`` uses tuples of
    every arity (including the empty tuple) ordered by projection.
    """
    if mode == "full":
        objs = full_tuple_poset(R.domain, cap)
    elif mode == "all":
        objs = all_tuple_poset(R.domain, cap)
    else:
        raise InputError(f"unknown satisfaction context mode {mode!r}")
    rows = []
    by_arity: dict[Arity, list[int]] = {}
    for i, t in enumerate(objs.elements):
        by_arity.setdefault(t.arity, []).append(i)
    rows = [0] * len(objs)
    for ar, idxs in by_arity.items():
        for i, r in zip(idxs, _satisfaction_rows(R, ar, (objs.elements[i].values for i in idxs))):
            rows[i] = r
    return FormalContext.from_rows(objs, R.signature.order, rows)


def as_single_sorted(ctx: FormalContext, sort: str = "G") -> DistributedRelation:
    """A context as a one-sort distributed relation with one unary constraint per attribute."""
    dom = SortedDomain({sort: ctx.objects})
    attrs = ctx.attributes.elements
    sig = Signature(attrs, {m: (sort,) for m in attrs}, ctx.attributes)
    rel = {}
    for k, m in enumerate(attrs):
        rel[m] = Relation((sort,), frozenset(
            (g,) for g, r in zip(ctx.objects.elements, ctx.rows) if r >> k & 1))
    return DistributedRelation(dom, sig, rel)


def to_context(R: DistributedRelation) -> FormalContext:
    """Inverse of :func:`as_single_sorted`; every scheme must be the single sort."""
    if len(R.domain.sorts) != 1:
        raise InputError("to_context needs a single-sorted distributed relation")
    (sort,) = R.domain.sorts
    bad = [e for e in R.constraints if R.signature.scheme[e] != (sort,)]
    if bad:
        raise InputError(f"constraint(s) {bad} are not unary over {sort!r}")
    objs = R.domain.values[sort]
    rows = [0] * len(objs)
    for k, e in enumerate(R.constraints):
        for (g,) in R.rel[e].tuples:
            rows[objs.index(g)] |= 1 << k
    return FormalContext.from_rows(objs, R.signature.order, rows)
