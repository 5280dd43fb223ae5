"""Order-theoretic formal contexts and their concept lattices.

Subsets of objects and attributes are passed in and returned as frozensets
of element labels.  Internally every object row is an attribute bitmask
(bit ``k`` is attribute ``k``), which is what the closure kernels consume.

Concepts are indexed in lectic order: an intent is read as a binary number
whose most significant digit is the first declared attribute, and concepts
are sorted ascending by that number.  The top concept therefore comes first
and the bottom concept last, and the order matrix is lower triangular.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Iterable, Mapping, Sequence

from . import kernels
from .errors import InputError
from .poset import Poset, Violation, _bits


def _as_poset(x) -> Poset:
    return x if isinstance(x, Poset) else Poset(x)


class FormalContext:
    """A triple (objects, attributes, incidence) over two finite orders."""

    __slots__ = ("objects", "attributes", "rows", "_packed")

    def __init__(self, objects: Poset | Iterable[Hashable],
                 attributes: Poset | Iterable[Hashable],
                 incidence: Iterable[tuple[Hashable, Hashable]] = ()):
        self.objects = _as_poset(objects)
        self.attributes = _as_poset(attributes)
        rows = [0] * len(self.objects)
        for g, m in incidence:
            rows[self.objects.index(g)] |= 1 << self.attributes.index(m)
        self.rows: tuple[int, ...] = tuple(rows)
        self._packed = None

    @classmethod
    def from_rows(cls, objects, attributes, rows: Iterable[int]) -> FormalContext:
        ctx = cls(objects, attributes)
        ctx.rows = tuple(rows)
        if len(ctx.rows) != len(ctx.objects):
            raise InputError("one row per object is required")
        if any(r >> len(ctx.attributes) for r in ctx.rows):
            raise InputError("row mentions an attribute index out of range")
        return ctx

    @property
    def incidence(self) -> frozenset:
        attrs = self.attributes.elements
        return frozenset((g, attrs[k]) for g, r in zip(self.objects.elements, self.rows)
                         for k in _bits(r))

    @property
    def full_mask(self) -> int:
        return (1 << len(self.attributes)) - 1

    def has(self, g, m) -> bool:
        return bool(self.rows[self.objects.index(g)] >> self.attributes.index(m) & 1)

    def packed(self):
        # cached row array for the compiled kernels
        if self._packed is None:
            self._packed = kernels.pack_rows(self.rows) \
                if len(self.attributes) <= kernels.MAX_C_ATTRS else self.rows
        return self._packed

    def object_mask(self, objs: Iterable) -> int:
        m = 0
        for g in objs:
            m |= 1 << self.objects.index(g)
        return m

    def attribute_mask(self, attrs: Iterable) -> int:
        m = 0
        for a in attrs:
            m |= 1 << self.attributes.index(a)
        return m

    def objects_of(self, mask: int) -> frozenset:
        els = self.objects.elements
        return frozenset(els[i] for i in _bits(mask))

    def attributes_of(self, mask: int) -> frozenset:
        els = self.attributes.elements
        return frozenset(els[i] for i in _bits(mask))

    # mask-level derivations; the public functions below wrap these

    def intent_of_mask(self, objmask: int) -> int:
        acc = self.full_mask
        rows = self.rows
        for i in _bits(objmask):
            acc &= rows[i]
        return acc

    def extent_of_mask(self, attrmask: int) -> int:
        return kernels.extent_mask(self.packed(), attrmask, len(self.attributes))

    def hull_of_mask(self, attrmask: int) -> int:
        return kernels.intent_closure(self.packed(), attrmask, len(self.attributes))

    def __eq__(self, other) -> bool:
        if not isinstance(other, FormalContext):
            return NotImplemented
        return (self.objects == other.objects and self.attributes == other.attributes
                and self.rows == other.rows)

    def __hash__(self) -> int:
        return hash((self.objects, self.attributes, self.rows))

    def __repr__(self) -> str:
        crosses = sum(bin(r).count("1") for r in self.rows)
        return (f"FormalContext({len(self.objects)} objects, "
                f"{len(self.attributes)} attributes, {crosses} crosses)")


@dataclass(frozen=True)
class Concept:
    extent: frozenset
    intent: frozenset

    def __repr__(self) -> str:
        return f"Concept(|extent|={len(self.extent)}, intent={sorted(map(str, self.intent))})"


def validate_context(ctx: FormalContext) -> list[Violation]:
    """Report poset-law and order-respect violations; empty means valid."""
    out = list(ctx.objects.violations()) + list(ctx.attributes.violations())
    G, M = ctx.objects.elements, ctx.attributes.elements
    for i, j in ctx.objects.strict_pairs():
        missing = ctx.rows[j] & ~ctx.rows[i]
        for k in _bits(missing):
            out.append(Violation(
                "order-down",
                f"{G[i]} <= {G[j]} and {G[j]} has {M[k]} but {G[i]} does not",
                (G[i], G[j], M[k])))
    for k1, k2 in ctx.attributes.strict_pairs():
        for i, r in enumerate(ctx.rows):
            if r >> k1 & 1 and not r >> k2 & 1:
                out.append(Violation(
                    "order-up",
                    f"{G[i]} has {M[k1]} and {M[k1]} <= {M[k2]} but lacks {M[k2]}",
                    (G[i], M[k1], M[k2])))
    return out


def derive_intent(ctx: FormalContext, objs: Iterable) -> frozenset:
    """Attributes shared by every object in ``objs``."""
    return ctx.attributes_of(ctx.intent_of_mask(ctx.object_mask(objs)))


def derive_extent(ctx: FormalContext, attrs: Iterable) -> frozenset:
    """Objects having every attribute in ``attrs``."""
    return ctx.objects_of(ctx.extent_of_mask(ctx.attribute_mask(attrs)))


def extent_closure(ctx: FormalContext, objs: Iterable) -> frozenset:
    return ctx.objects_of(ctx.extent_of_mask(ctx.intent_of_mask(ctx.object_mask(objs))))


def intent_hull(ctx: FormalContext, attrs: Iterable) -> frozenset:
    """Smallest concept intent containing ``attrs``.

    Read in the opposite attribute-set order this is an interior operator;
    as a set operator it only ever enlarges its argument.
    """
    return ctx.attributes_of(ctx.hull_of_mask(ctx.attribute_mask(attrs)))


def concept_of_objects(ctx: FormalContext, objs: Iterable) -> Concept:
    intent = ctx.intent_of_mask(ctx.object_mask(objs))
    return Concept(ctx.objects_of(ctx.extent_of_mask(intent)), ctx.attributes_of(intent))


def concept_of_attributes(ctx: FormalContext, attrs: Iterable) -> Concept:
    extent = ctx.extent_of_mask(ctx.attribute_mask(attrs))
    return Concept(ctx.objects_of(extent), ctx.attributes_of(ctx.intent_of_mask(extent)))


def lectic_key(intent_mask: int, n_attrs: int) -> int:
    """Numeric value of an intent with attribute 0 as the most significant bit."""
    key = 0
    for k in _bits(intent_mask):
        key |= 1 << (n_attrs - 1 - k)
    return key


class OrderMatrix(Sequence):
    """Read-only boolean matrix view over up-set bitmasks; rows are built on access."""

    __slots__ = ("_up",)

    def __init__(self, up: Sequence[int]):
        self._up = up

    def __len__(self) -> int:
        return len(self._up)

    def __getitem__(self, j):
        if isinstance(j, slice):
            return [self[k] for k in range(*j.indices(len(self)))]
        up, n = self._up[j], len(self._up)
        return tuple(bool(up >> i & 1) for i in range(n))

    def __eq__(self, other) -> bool:
        if isinstance(other, OrderMatrix):
            return list(self._up) == list(other._up)
        return NotImplemented

    __hash__ = None


class ConceptLattice:
    """All concepts of a context in lectic order, with order and covers.

    ``order[j][i]`` is true when concept ``j`` lies below concept ``i``.
    ``covers[j]`` holds the indices of the upper covers (successors) of ``j``.
    Indices are 0-based; :meth:`label` renders the 1-based ``C_n`` names.
    """

    def __init__(self, context: FormalContext, intent_masks: list[int]):
        self.context = context
        n = len(context.attributes)
        self.intent_masks: tuple[int, ...] = tuple(
            sorted(intent_masks, key=lambda m: lectic_key(m, n)))
        self.extent_masks = tuple(context.extent_of_mask(m) for m in self.intent_masks)
        self.concepts: tuple[Concept, ...] = tuple(
            Concept(context.objects_of(e), context.attributes_of(i))
            for e, i in zip(self.extent_masks, self.intent_masks))
        self._by_intent = {m: k for k, m in enumerate(self.intent_masks)}
        self._up = self._upsets()
        self.order = OrderMatrix(self._up)
        self.covers = tuple(frozenset(_bits(c)) for c in self._cover_masks())

    def _upsets(self) -> list[int]:
        # j <= i iff intent_i has no attribute outside intent_j
        ims = self.intent_masks
        n_attrs = len(self.context.attributes)
        having = [0] * n_attrs
        for i, b in enumerate(ims):
            for k in _bits(b):
                having[k] |= 1 << i
        everything = (1 << len(ims)) - 1
        ups = []
        for a in ims:
            outside = 0
            for k in _bits(~a & self.context.full_mask):
                outside |= having[k]
            ups.append(everything & ~outside)
        return ups

    def _cover_masks(self) -> list[int]:
        # Lindig's neighbour test: B & row(g) is already an intent, and it is an
        # upper cover exactly when every object it adds generates it.
        rows = self.context.rows
        by_intent = self._by_intent
        out = []
        for A, B in zip(self.extent_masks, self.intent_masks):
            counts: dict[int, int] = {}
            for g, r in enumerate(rows):
                if not A >> g & 1:
                    c = B & r
                    counts[c] = counts.get(c, 0) + 1
            size = A.bit_count()
            m = 0
            for c, cnt in counts.items():
                k = by_intent[c]
                if cnt == self.extent_masks[k].bit_count() - size:
                    m |= 1 << k
            out.append(m)
        return out

    def __len__(self) -> int:
        return len(self.concepts)

    def __getitem__(self, i: int) -> Concept:
        return self.concepts[i]

    def __iter__(self):
        return iter(self.concepts)

    @staticmethod
    def label(i: int) -> str:
        return f"C_{i + 1}"

    def index(self, c: Concept) -> int:
        try:
            k = self._by_intent[self.context.attribute_mask(c.intent)]
        except (InputError, KeyError):
            raise InputError(f"{c!r} is not a concept of this lattice") from None
        if self.concepts[k] != c:
            raise InputError(f"{c!r} is not a concept of this lattice")
        return k

    def index_of_intent_mask(self, mask: int) -> int:
        return self._by_intent[mask]

    @property
    def top(self) -> int:
        return 0

    @property
    def bottom(self) -> int:
        return len(self) - 1

    def leq(self, j: int, i: int) -> bool:
        return bool(self._up[j] >> i & 1)

    def up_mask(self, j: int) -> int:
        return self._up[j]

    def lower_covers(self, i: int) -> frozenset:
        return frozenset(j for j, c in enumerate(self.covers) if i in c)

    def object_generators(self, i: int) -> list:
        """Objects whose object concept is concept ``i``, in object order."""
        target = self.intent_masks[i]
        ctx = self.context
        return [g for g, r in zip(ctx.objects.elements, ctx.rows) if r == target]

    def attribute_generators(self, i: int) -> list:
        """Attributes whose attribute concept is concept ``i``."""
        target = self.extent_masks[i]
        ctx = self.context
        return [m for k, m in enumerate(ctx.attributes.elements)
                if ctx.extent_of_mask(1 << k) == target]

    def meet(self, idx: Iterable[int]) -> int:
        idx = list(idx)
        if not idx:
            raise InputError("meet of an empty family")
        ext = -1
        union = 0
        for k in idx:
            ext &= self.extent_masks[k]
            union |= self.intent_masks[k]
        hull = self.context.hull_of_mask(union)
        k = self._by_intent[hull]
        assert ext == self.extent_masks[k]
        return k

    def join(self, idx: Iterable[int]) -> int:
        idx = list(idx)
        if not idx:
            raise InputError("join of an empty family")
        common = self.context.full_mask
        for k in idx:
            common &= self.intent_masks[k]
        return self._by_intent[common]

    def __repr__(self) -> str:
        return f"ConceptLattice({len(self)} concepts)"


def enumerate_concepts(ctx: FormalContext, backend: str | None = None) -> ConceptLattice:
    """Every concept of ``ctx`` exactly once, in lectic order."""
    intents = kernels.next_closure_intents(ctx.packed(), len(ctx.attributes), backend=backend)
    return ConceptLattice(ctx, intents)


def concept_meet(lat: ConceptLattice, cs: Iterable[Concept]) -> Concept:
    """Greatest lower bound: extents intersect, intents are hulled from their union."""
    cs = list(cs)
    if not cs:
        raise InputError("meet of an empty family")
    return lat[lat.meet(lat.index(c) for c in cs)]


def concept_join(lat: ConceptLattice, cs: Iterable[Concept]) -> Concept:
    """Least upper bound: intents intersect, extents are closed from their union."""
    cs = list(cs)
    if not cs:
        raise InputError("join of an empty family")
    return lat[lat.join(lat.index(c) for c in cs)]


def _check_map(phi: Mapping, dom: Poset, cod: Poset) -> None:
    for g in dom:
        if g not in phi:
            raise InputError(f"object map is undefined at {g!r}")
        if phi[g] not in cod:
            raise InputError(f"object map sends {g!r} outside the codomain")
    for a, b in dom.pairs():
        if not cod.leq(phi[a], phi[b]):
            raise InputError(f"object map is not monotone: {a!r} <= {b!r} "
                             f"but {phi[a]!r} !<= {phi[b]!r}")


def context_direct_image(phi: Mapping, ctx2: FormalContext,
                         codomain: Poset | Iterable) -> FormalContext:
    """Existential image of ``ctx2`` along ``phi: G2 -> G1``."""
    cod = _as_poset(codomain)
    _check_map(phi, ctx2.objects, cod)
    rows = [0] * len(cod)
    for g, r in zip(ctx2.objects.elements, ctx2.rows):
        rows[cod.index(phi[g])] |= r
    return FormalContext.from_rows(cod, ctx2.attributes, rows)


def context_inverse_image(phi: Mapping, ctx1: FormalContext,
                          domain: Poset | Iterable) -> FormalContext:
    """Pull ``ctx1`` back along ``phi: G2 -> G1``."""
    dom = _as_poset(domain)
    _check_map(phi, dom, ctx1.objects)
    rows = [ctx1.rows[ctx1.objects.index(phi[g])] for g in dom]
    return FormalContext.from_rows(dom, ctx1.attributes, rows)
