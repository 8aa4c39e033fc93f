"""Monotone maps between finite posets and enumerated exponentials [X -> Y].

A monotone total map is the finite stand-in for a Scott-continuous
function.  The exponential carries the pointwise order and is itself
materialised as a FinPoset so that further exponentials can be taken.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NotMonotone, SizeGuardExceeded, TypeMismatch
from .poset import FinPoset
from .sampling import DEFAULT_SIZE_GUARD


@dataclass(frozen=True)
class MonoMap:
    """A monotone total map, stored as a table of target indices.

    Maps are only comparable and composable when their source/target posets
    match as presented (same labels, same order), never up to isomorphism.
    """

    source: FinPoset
    target: FinPoset
    table: tuple

    def __post_init__(self):
        object.__setattr__(self, "table", tuple(self.table))
        if len(self.table) != self.source.size:
            raise TypeMismatch("table length does not match source size")
        if any(t < 0 or t >= self.target.size for t in self.table):
            raise TypeMismatch("table entry out of target range")
        for i, j in self.source.covers():
            if not self.target.leq[self.table[i]][self.table[j]]:
                raise NotMonotone(
                    f"table violates monotonicity on "
                    f"{self.source.labels[i]} <= {self.source.labels[j]}"
                )

    def __call__(self, i: int) -> int:
        return self.table[i]

    def apply_label(self, label: str) -> str:
        return self.target.labels[self.table[self.source.index(label)]]

    def leq(self, other: "MonoMap") -> bool:
        """Pointwise comparison; requires identical source and target."""
        if self.source != other.source or self.target != other.target:
            raise TypeMismatch("maps live in different exponentials")
        return all(
            self.target.leq[a][b] for a, b in zip(self.table, other.table)
        )

    def key(self) -> str:
        """Deterministic label, target indices in source element order."""
        return "[" + ",".join(str(t) for t in self.table) + "]"

    def entries(self) -> str:
        """Human-readable body of the map literal: ``a |-> b; ...``."""
        return "; ".join(
            f"{a} |-> {self.target.labels[t]}"
            for a, t in zip(self.source.labels, self.table)
        )


def identity_map(poset: FinPoset) -> MonoMap:
    return MonoMap(poset, poset, tuple(range(poset.size)))


def constant_map(source: FinPoset, target: FinPoset, value: int) -> MonoMap:
    return MonoMap(source, target, (value,) * source.size)


def compose(u: MonoMap, v: MonoMap) -> MonoMap:
    """Apply u then v (i.e. the map v . u)."""
    if u.target != v.source:
        raise TypeMismatch("target of the first map differs from source of the second")
    return MonoMap(u.source, v.target, tuple(v.table[t] for t in u.table))


def precompose(u: MonoMap, g: MonoMap) -> MonoMap:
    """The contravariant action on predicates: x |-> g(u(x))."""
    return compose(u, g)


class ExpPoset:
    """All monotone maps X -> Y with the pointwise order, as a poset.

    Maps are listed in ascending lexicographic order of their tables; the
    materialised poset uses the tables as element labels.
    """

    def __init__(self, source: FinPoset, target: FinPoset, maps):
        self.source = source
        self.target = target
        self.maps = tuple(maps)
        self._by_table = {m.table: i for i, m in enumerate(self.maps)}
        labels = tuple(m.key() for m in self.maps)
        leq = tuple(
            tuple(a.leq(b) for b in self.maps) for a in self.maps
        )
        self.poset = FinPoset(labels, leq)

    def __len__(self):
        return len(self.maps)

    def index(self, m) -> int:
        table = m.table if isinstance(m, MonoMap) else tuple(m)
        try:
            return self._by_table[table]
        except KeyError:
            raise TypeMismatch(f"map {table} is not in this exponential") from None


def enumerate_monotone(
    source: FinPoset, target: FinPoset, size_guard: int = DEFAULT_SIZE_GUARD
) -> ExpPoset:
    """Enumerate the exponential [source -> target].

    Backtracks along a linear extension of the source, pruning assignments
    that break monotonicity against already-assigned lower elements, so the
    full |Y|^|X| space is never generated.
    """
    bound = target.size ** source.size if source.size else 1
    if bound > size_guard:
        raise SizeGuardExceeded(bound, size_guard)
    order = source.linear_extension()
    n = source.size
    below = [
        [order[j] for j in range(k) if source.leq[order[j]][order[k]]]
        for k in range(n)
    ]
    assignment = [0] * n
    tables = []

    def backtrack(k):
        if k == n:
            tables.append(tuple(assignment))
            return
        e = order[k]
        for v in range(target.size):
            if all(target.leq[assignment[b]][v] for b in below[k]):
                assignment[e] = v
                backtrack(k + 1)

    backtrack(0)
    tables.sort()
    maps = [MonoMap(source, target, t) for t in tables]
    return ExpPoset(source, target, maps)
