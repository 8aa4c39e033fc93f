"""Finite partial orders and their up-sets, down-sets and products.

At this scale a finite poset plays the role of a dcpo: every directed
subset has a maximum, so monotone maps are exactly the Scott-continuous
ones, up-closed sets are the Scott-opens and down-closed sets the
Scott-closed sets.  Everything here is immutable and enumerations are
deterministic (element order is the label order given at construction,
subsets are ordered by ascending bitmask).
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    CycleDetected,
    DuplicateLabel,
    InvalidOrder,
    SizeGuardExceeded,
    UnknownElement,
    UnknownLabel,
)
from .sampling import DEFAULT_SIZE_GUARD


@dataclass(frozen=True)
class FinPoset:
    """A finite poset: element labels plus a boolean <= matrix.

    The matrix is validated at construction.  Equality and hashing are by
    presentation (labels and matrix), so two posets built the same way are
    interchangeable, while merely isomorphic posets are not.
    """

    labels: tuple
    leq: tuple

    def __post_init__(self):
        labels = tuple(self.labels)
        leq = tuple(tuple(bool(v) for v in row) for row in self.leq)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "leq", leq)
        n = len(labels)
        if len(set(labels)) != n:
            raise DuplicateLabel(f"duplicate element labels in {labels}")
        if len(leq) != n or any(len(row) != n for row in leq):
            raise InvalidOrder("relation matrix shape does not match element count")
        for i in range(n):
            if not leq[i][i]:
                raise InvalidOrder(f"relation not reflexive at {labels[i]}")
            for j in range(n):
                if leq[i][j] and leq[j][i] and i != j:
                    raise InvalidOrder(
                        f"relation not antisymmetric on {labels[i]}, {labels[j]}"
                    )
                for k in range(n):
                    if leq[i][j] and leq[j][k] and not leq[i][k]:
                        raise InvalidOrder(f"relation not transitive via {labels[j]}")

    @property
    def size(self) -> int:
        return len(self.labels)

    def __len__(self):
        return len(self.labels)

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise UnknownLabel(f"unknown element {label!r}") from None

    def leq_idx(self, i: int, j: int) -> bool:
        return self.leq[i][j]

    def leq_label(self, a: str, b: str) -> bool:
        return self.leq[self.index(a)][self.index(b)]

    def covers(self):
        """Cover pairs (i, j): j covers i, i.e. i < j with nothing in between."""
        n = self.size
        out = []
        for i in range(n):
            for j in range(n):
                if i == j or not self.leq[i][j]:
                    continue
                if any(
                    self.leq[i][k] and self.leq[k][j] and k != i and k != j
                    for k in range(n)
                ):
                    continue
                out.append((i, j))
        return out

    def linear_extension(self):
        """Element indices sorted bottom-up, stable on incomparable elements."""
        n = self.size
        remaining = list(range(n))
        out = []
        placed = set()
        while remaining:
            for i in remaining:
                if all(j in placed for j in range(n) if self.leq[j][i] and j != i):
                    out.append(i)
                    placed.add(i)
                    remaining.remove(i)
                    break
        return out

    def down_mask(self, indices) -> int:
        """Bitmask of the down-closure of the given element indices."""
        mask = 0
        for i in indices:
            for j in range(self.size):
                if self.leq[j][i]:
                    mask |= 1 << j
        return mask

    def up_mask(self, indices) -> int:
        mask = 0
        for i in indices:
            for j in range(self.size):
                if self.leq[i][j]:
                    mask |= 1 << j
        return mask

    def dot(self, name: str = "poset") -> str:
        """Hasse diagram (transitive reduction) in DOT, stable ordering."""
        lines = [f'digraph "{name}" {{', "  rankdir=BT;"]
        for label in self.labels:
            lines.append(f'  "{label}";')
        for i, j in sorted(self.covers()):
            lines.append(f'  "{self.labels[i]}" -> "{self.labels[j]}";')
        lines.append("}")
        return "\n".join(lines) + "\n"


def poset_from_cover(labels, cover_pairs) -> FinPoset:
    """Build a poset as the reflexive-transitive closure of cover pairs.

    Raises CycleDetected when the closure violates antisymmetry.
    """
    labels = tuple(labels)
    if len(set(labels)) != len(labels):
        raise DuplicateLabel(f"duplicate element labels in {labels}")
    pos = {lab: i for i, lab in enumerate(labels)}
    n = len(labels)
    leq = [[i == j for j in range(n)] for i in range(n)]
    for low, high in cover_pairs:
        if low not in pos:
            raise UnknownLabel(f"unknown element {low!r} in cover pair")
        if high not in pos:
            raise UnknownLabel(f"unknown element {high!r} in cover pair")
        leq[pos[low]][pos[high]] = True
    for k in range(n):
        for i in range(n):
            if leq[i][k]:
                for j in range(n):
                    if leq[k][j]:
                        leq[i][j] = True
    for i in range(n):
        for j in range(n):
            if i != j and leq[i][j] and leq[j][i]:
                raise CycleDetected(
                    f"cover relation creates a cycle through {labels[i]} and {labels[j]}"
                )
    return FinPoset(labels, tuple(tuple(row) for row in leq))


UP = "up"
DOWN = "down"
ANY = "any"


@dataclass(frozen=True)
class ElemSet:
    """A subset of a poset's elements as a bitmask, tagged by closure kind."""

    poset: FinPoset
    mask: int
    kind: str = ANY

    def __post_init__(self):
        if self.mask < 0 or self.mask >= (1 << self.poset.size):
            raise UnknownElement(f"bitmask {self.mask} out of range")
        if self.kind == UP and not _is_up_closed(self.poset, self.mask):
            raise InvalidOrder("set is not up-closed")
        if self.kind == DOWN and not _is_down_closed(self.poset, self.mask):
            raise InvalidOrder("set is not down-closed")

    def members(self):
        return tuple(i for i in range(self.poset.size) if self.mask >> i & 1)

    def member_labels(self):
        return tuple(self.poset.labels[i] for i in self.members())

    def __contains__(self, index: int) -> bool:
        return bool(self.mask >> index & 1)

    def complement(self) -> "ElemSet":
        full = (1 << self.poset.size) - 1
        flip = {UP: DOWN, DOWN: UP, ANY: ANY}[self.kind]
        return ElemSet(self.poset, full & ~self.mask, flip)

    def label(self) -> str:
        return "{" + ",".join(self.member_labels()) + "}"


def _is_up_closed(poset: FinPoset, mask: int) -> bool:
    for i in range(poset.size):
        if mask >> i & 1:
            for j in range(poset.size):
                if poset.leq[i][j] and not mask >> j & 1:
                    return False
    return True


def _is_down_closed(poset: FinPoset, mask: int) -> bool:
    for i in range(poset.size):
        if mask >> i & 1:
            for j in range(poset.size):
                if poset.leq[j][i] and not mask >> j & 1:
                    return False
    return True


def _guard_subsets(n: int, size_guard: int) -> int:
    count = 1 << n
    if count > size_guard:
        raise SizeGuardExceeded(count, size_guard)
    return count


def all_up_sets(poset: FinPoset, size_guard: int = DEFAULT_SIZE_GUARD):
    """Every up-closed subset, ordered by ascending bitmask.

    For a finite poset these are exactly the Scott-open sets.
    """
    count = _guard_subsets(poset.size, size_guard)
    return [ElemSet(poset, mask, UP) for mask in range(count) if _is_up_closed(poset, mask)]


def all_down_sets(poset: FinPoset, size_guard: int = DEFAULT_SIZE_GUARD):
    """Every down-closed subset (the Scott-closed sets), ascending bitmask."""
    count = _guard_subsets(poset.size, size_guard)
    return [
        ElemSet(poset, mask, DOWN) for mask in range(count) if _is_down_closed(poset, mask)
    ]


def product_poset(x: FinPoset, y: FinPoset) -> FinPoset:
    """Cartesian product with the componentwise order."""
    labels = tuple(f"({a},{b})" for a in x.labels for b in y.labels)
    ny = y.size
    n = x.size * ny
    leq = tuple(
        tuple(x.leq[i // ny][j // ny] and y.leq[i % ny][j % ny] for j in range(n))
        for i in range(n)
    )
    return FinPoset(labels, leq)


def sub_poset(poset: FinPoset, indices) -> FinPoset:
    """Restriction of the order to the given element indices (in that order)."""
    indices = list(indices)
    labels = tuple(poset.labels[i] for i in indices)
    leq = tuple(tuple(poset.leq[i][j] for j in indices) for i in indices)
    return FinPoset(labels, leq)


def set_inclusion_poset(sets, reverse: bool = False) -> FinPoset:
    """The given ElemSets ordered by (reverse) inclusion of their masks."""
    labels = tuple(s.label() for s in sets)

    def incl(a, b):
        return (a.mask & b.mask) == a.mask

    leq = tuple(
        tuple(incl(b, a) if reverse else incl(a, b) for b in sets) for a in sets
    )
    return FinPoset(labels, leq)


def is_order_iso(p: FinPoset, q: FinPoset, mapping) -> bool:
    """Does the index mapping p -> q define an order isomorphism?"""
    if p.size != q.size or sorted(mapping) != list(range(q.size)):
        return False
    for i in range(p.size):
        for j in range(p.size):
            if p.leq[i][j] != q.leq[mapping[i]][mapping[j]]:
                return False
    return True
