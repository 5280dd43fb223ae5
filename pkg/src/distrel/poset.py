"""Finite posets and preorders given extensionally."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Iterable, Sequence

from .errors import InputError


@dataclass(frozen=True)
class Violation:
    """One entry of a validation report."""

    kind: str
    message: str
    witness: tuple = ()

    def __str__(self) -> str:
        return f"{self.kind}: {self.message}"


class Poset:
    """A finite preorder on named elements.

    ``pairs`` lists ``(a, b)`` meaning ``a <= b``; the reflexive-transitive
    closure is taken at construction.  With no pairs the order is discrete.
    ``strict`` marks the order as a partial order, in which case antisymmetry
    is reported by :meth:`violations` (it is never enforced silently).
    """

    __slots__ = ("elements", "strict", "_index", "_up", "_hash")

    def __init__(self, elements: Iterable[Hashable],
                 pairs: Iterable[tuple[Hashable, Hashable]] = (),
                 strict: bool = True):
        self.elements: tuple = tuple(elements)
        self.strict = strict
        self._index = {x: i for i, x in enumerate(self.elements)}
        if len(self._index) != len(self.elements):
            raise InputError("duplicate poset elements")
        up: dict[int, int] = {}
        for a, b in pairs:
            i, j = self.index(a), self.index(b)
            if i != j:
                up[i] = up.get(i, 1 << i) | (1 << j)
        self._up = _transitive_closure(up) if up else {}
        self._hash = None

    @classmethod
    def discrete(cls, elements: Iterable[Hashable]) -> Poset:
        return cls(elements)

    @classmethod
    def _from_up(cls, elements: Sequence, up: dict[int, int], strict: bool) -> Poset:
        # trusted constructor: ``up`` is already reflexive-transitive
        p = cls(elements, strict=strict)
        p._up = {i: m for i, m in up.items() if m != 1 << i}
        return p

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x) -> bool:
        return x in self._index

    def index(self, x) -> int:
        try:
            return self._index[x]
        except (KeyError, TypeError):
            raise InputError(f"unknown element {x!r}") from None

    @property
    def is_discrete(self) -> bool:
        return not self._up

    def up_mask(self, i: int) -> int:
        """Bitmask of indices ``j`` with ``elements[i] <= elements[j]``."""
        return self._up.get(i, 1 << i)

    def down_mask(self, j: int) -> int:
        m = 1 << j
        for i, up in self._up.items():
            if up >> j & 1:
                m |= 1 << i
        return m

    def leq_idx(self, i: int, j: int) -> bool:
        return i == j or bool(self._up.get(i, 0) >> j & 1)

    def leq(self, a, b) -> bool:
        return self.leq_idx(self.index(a), self.index(b))

    def strict_pairs(self) -> list[tuple[int, int]]:
        """All ``(i, j)`` with ``i != j`` and ``i <= j``, sorted."""
        out = []
        for i in sorted(self._up):
            m = self._up[i] & ~(1 << i)
            while m:
                low = m & -m
                out.append((i, low.bit_length() - 1))
                m ^= low
        return out

    def pairs(self) -> list[tuple]:
        """Non-reflexive order pairs by element, in canonical order."""
        return [(self.elements[i], self.elements[j]) for i, j in self.strict_pairs()]

    def below(self, x) -> list:
        """Elements strictly below ``x``."""
        j = self.index(x)
        return [self.elements[i] for i in _bits(self.down_mask(j) & ~(1 << j))]

    def violations(self) -> list[Violation]:
        if not self.strict:
            return []
        out = []
        for i, j in self.strict_pairs():
            if i < j and self.leq_idx(j, i):
                a, b = self.elements[i], self.elements[j]
                out.append(Violation("antisymmetry",
                                     f"{a} <= {b} and {b} <= {a}", (a, b)))
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, Poset):
            return NotImplemented
        return (self.elements == other.elements and self.strict == other.strict
                and self._up == other._up)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.elements, tuple(sorted(self._up.items()))))
        return self._hash

    def __repr__(self) -> str:
        kind = "Poset" if self.strict else "Preorder"
        return f"{kind}({len(self.elements)} elements, {len(self.strict_pairs())} pairs)"


def _bits(m: int):
    while m:
        low = m & -m
        yield low.bit_length() - 1
        m ^= low


def _transitive_closure(up: dict[int, int]) -> dict[int, int]:
    # Warshall over bitmask rows; only rows with proper successors are stored
    rows = dict(up)
    changed = True
    while changed:
        changed = False
        for i, m in rows.items():
            new = m
            for j in _bits(m & ~(1 << i)):
                new |= rows.get(j, 0)
            if new != m:
                rows[i] = new
                changed = True
    return rows
