"""Continuation-style functionals over an observation algebra.

For a finite poset X and a finite observation algebra R, the predicates are
the exponential [X -> R] and the functionals the double exponential
[[X -> R] -> R].  The unit sends a point to evaluation at that point, and a
state transformer t : X -> [[Y -> R] -> R] lifts to functionals by
``lift(t)(phi)(g) = phi(x |-> t(x)(g))``.

Three families of functionals sit inside the full double exponential: the
op-preserving ones (hom), the tag-relaxed ones, and the family generated
from the point evaluations by the pointwise ops (free).  All three contain
the point evaluations and are closed under the lifting, so each yields a
monad sitting inside the continuation monad.
"""

from __future__ import annotations

from functools import lru_cache

from .algebra import (
    CheckOutcome,
    FinAlgebra,
    generated_subalgebra,
    is_homomorphism,
    is_relaxed_morphism,
    lift_pointwise,
)
from .errors import NonMonotoneResult, NotMonotone, TypeMismatch
from .funcspace import MonoMap, enumerate_monotone
from .poset import FinPoset, sub_poset
from .sampling import DEFAULT_SIZE_GUARD


class FunctionalSpace:
    """Everything derived from one (poset, algebra) pair, built once.

    ``predicates`` is the exponential [X -> R] with the pointwise algebra
    ``pred_algebra`` on it; ``space`` is the double exponential holding the
    functionals, with the pointwise algebra ``func_algebra`` on it.
    """

    def __init__(self, x: FinPoset, algebra: FinAlgebra, size_guard: int):
        self.x = x
        self.algebra = algebra
        self.pred_algebra = lift_pointwise(algebra, x, size_guard)
        self.predicates = self.pred_algebra.expo
        self.func_algebra = lift_pointwise(algebra, self.predicates.poset, size_guard)
        self.space = self.func_algebra.expo
        self.delta_indices = tuple(
            self.space.index(
                tuple(m.table[i] for m in self.predicates.maps)
            )
            for i in range(x.size)
        )
        self._hom = None
        self._relaxed = None
        self._free = None

    def functional(self, i: int) -> MonoMap:
        return self.space.maps[i]

    def delta(self, i: int) -> MonoMap:
        return self.space.maps[self.delta_indices[i]]

    @property
    def hom_indices(self):
        if self._hom is None:
            self._hom = tuple(
                i
                for i, m in enumerate(self.space.maps)
                if is_homomorphism(m, self.pred_algebra, self.algebra)
            )
        return self._hom

    @property
    def relaxed_indices(self):
        if self._relaxed is None:
            self._relaxed = tuple(
                i
                for i, m in enumerate(self.space.maps)
                if is_relaxed_morphism(m, self.pred_algebra, self.algebra)
            )
        return self._relaxed

    @property
    def free_indices(self):
        if self._free is None:
            self._free = generated_subalgebra(self.func_algebra, self.delta_indices)
        return self._free

    def family_poset(self, indices) -> FinPoset:
        return sub_poset(self.space.poset, indices)


@lru_cache(maxsize=None)
def _functional_space(x, algebra, size_guard):
    return FunctionalSpace(x, algebra, size_guard)


def functional_space(x: FinPoset, algebra: FinAlgebra, size_guard: int = DEFAULT_SIZE_GUARD) -> FunctionalSpace:
    return _functional_space(x, algebra, size_guard)


def delta(x: FinPoset, algebra: FinAlgebra, size_guard: int = DEFAULT_SIZE_GUARD):
    """The point evaluations x |-> (f |-> f(x)), in element order."""
    space = functional_space(x, algebra, size_guard)
    return [space.delta(i) for i in range(x.size)]


def hom_functionals(x, algebra, size_guard: int = DEFAULT_SIZE_GUARD):
    space = functional_space(x, algebra, size_guard)
    return [space.functional(i) for i in space.hom_indices]


def relaxed_functionals(x, algebra, size_guard: int = DEFAULT_SIZE_GUARD):
    space = functional_space(x, algebra, size_guard)
    return [space.functional(i) for i in space.relaxed_indices]


def free_functionals(x, algebra, size_guard: int = DEFAULT_SIZE_GUARD):
    space = functional_space(x, algebra, size_guard)
    return [space.functional(i) for i in space.free_indices]


class StateTransformer:
    """A monotone assignment of a functional over [Y -> R] to every x in X."""

    def __init__(self, source: FinPoset, space: FunctionalSpace, table):
        self.source = source
        self.space = space
        self.table = tuple(table)
        if len(self.table) != source.size:
            raise TypeMismatch("transformer table length does not match the source")
        order = space.space.poset
        for i in range(source.size):
            if not 0 <= self.table[i] < len(space.space):
                raise TypeMismatch("transformer table entry outside the functional space")
            for j in range(source.size):
                if source.leq[i][j] and not order.leq[self.table[i]][self.table[j]]:
                    raise NotMonotone(
                        f"transformer not monotone on {source.labels[i]} <= {source.labels[j]}"
                    )

    def __call__(self, i: int) -> MonoMap:
        return self.space.functional(self.table[i])

    def __eq__(self, other):
        return (
            isinstance(other, StateTransformer)
            and self.source == other.source
            and self.space.x == other.space.x
            and self.space.algebra == other.space.algebra
            and self.table == other.table
        )

    def __hash__(self):
        return hash((self.source, self.space.x, self.space.algebra, self.table))


class PredicateTransformer:
    """A monotone assignment of a predicate over X to every predicate over Y."""

    def __init__(self, y_space: FunctionalSpace, x_space: FunctionalSpace, table):
        if y_space.algebra != x_space.algebra:
            raise TypeMismatch("predicate transformer endpoints disagree on the algebra")
        self.y_space = y_space
        self.x_space = x_space
        self.table = tuple(table)
        if len(self.table) != len(y_space.predicates):
            raise TypeMismatch("table length does not match the predicate count")
        for g in range(len(self.table)):
            if not 0 <= self.table[g] < len(x_space.predicates):
                raise TypeMismatch("table entry outside the target predicates")
            for h in range(len(self.table)):
                if y_space.predicates.poset.leq[g][h] and not x_space.predicates.poset.leq[
                    self.table[g]
                ][self.table[h]]:
                    raise NotMonotone("predicate transformer not monotone")

    def __call__(self, g: int) -> MonoMap:
        return self.x_space.predicates.maps[self.table[g]]

    def as_map(self) -> MonoMap:
        return MonoMap(
            self.y_space.predicates.poset, self.x_space.predicates.poset, self.table
        )

    def __eq__(self, other):
        return (
            isinstance(other, PredicateTransformer)
            and self.y_space.x == other.y_space.x
            and self.x_space.x == other.x_space.x
            and self.y_space.algebra == other.y_space.algebra
            and self.table == other.table
        )

    def __hash__(self):
        return hash(
            (self.y_space.x, self.x_space.x, self.y_space.algebra, self.table)
        )


def delta_transformer(x: FinPoset, algebra: FinAlgebra, size_guard: int = DEFAULT_SIZE_GUARD) -> StateTransformer:
    """The unit as a state transformer X -> [[X -> R] -> R]."""
    space = functional_space(x, algebra, size_guard)
    return StateTransformer(x, space, space.delta_indices)


def kleisli_lift(t: StateTransformer, phi: MonoMap, size_guard: int = DEFAULT_SIZE_GUARD) -> MonoMap:
    """lift(t)(phi): the functional g |-> phi(x |-> t(x)(g))."""
    x_space = functional_space(t.source, t.space.algebra, size_guard)
    if phi.source != x_space.predicates.poset:
        raise TypeMismatch("functional does not live over the transformer's source")
    out = []
    for g in range(len(t.space.predicates)):
        inner = tuple(
            t.space.functional(t.table[i]).table[g] for i in range(t.source.size)
        )
        try:
            inner_idx = x_space.predicates.index(inner)
        except TypeMismatch:
            raise NonMonotoneResult(
                "inner predicate of the lifting is not monotone"
            ) from None
        out.append(phi.table[inner_idx])
    return MonoMap(t.space.predicates.poset, t.space.algebra.carrier, tuple(out))


def functor_action(u: MonoMap, phi: MonoMap, algebra: FinAlgebra, size_guard: int = DEFAULT_SIZE_GUARD) -> MonoMap:
    """Push a functional over [X -> R] forward along u : X -> Y (g |-> phi(g . u))."""
    x_space = functional_space(u.source, algebra, size_guard)
    y_space = functional_space(u.target, algebra, size_guard)
    if phi.source != x_space.predicates.poset:
        raise TypeMismatch("functional does not live over the map's source")
    out = []
    for g in y_space.predicates.maps:
        pulled = tuple(g.table[u.table[i]] for i in range(u.source.size))
        out.append(phi.table[x_space.predicates.index(pulled)])
    return MonoMap(y_space.predicates.poset, algebra.carrier, tuple(out))


def p_transform(t: StateTransformer, size_guard: int = DEFAULT_SIZE_GUARD) -> PredicateTransformer:
    """State to predicate transformer: g |-> (x |-> t(x)(g))."""
    x_space = functional_space(t.source, t.space.algebra, size_guard)
    table = []
    for g in range(len(t.space.predicates)):
        pred = tuple(
            t.space.functional(t.table[i]).table[g] for i in range(t.source.size)
        )
        try:
            table.append(x_space.predicates.index(pred))
        except TypeMismatch:
            raise NonMonotoneResult("transformed predicate is not monotone") from None
    return PredicateTransformer(t.space, x_space, tuple(table))


def q_transform(s: PredicateTransformer, size_guard: int = DEFAULT_SIZE_GUARD) -> StateTransformer:
    """Predicate to state transformer: x |-> (g |-> s(g)(x))."""
    y_space = s.y_space
    table = []
    for i in range(s.x_space.x.size):
        functional = tuple(
            s.x_space.predicates.maps[s.table[g]].table[i]
            for g in range(len(y_space.predicates))
        )
        try:
            table.append(y_space.space.index(functional))
        except TypeMismatch:
            raise NonMonotoneResult("resulting functional is not monotone") from None
    return StateTransformer(s.x_space.x, y_space, tuple(table))


def all_state_transformers(x: FinPoset, target: FunctionalSpace, indices=None, size_guard: int = DEFAULT_SIZE_GUARD):
    """Every monotone t from x into the functional space (or a sub-family)."""
    if indices is None:
        expo = enumerate_monotone(x, target.space.poset, size_guard)
        return [StateTransformer(x, target, m.table) for m in expo.maps]
    family = target.family_poset(indices)
    expo = enumerate_monotone(x, family, size_guard)
    return [
        StateTransformer(x, target, tuple(indices[v] for v in m.table))
        for m in expo.maps
    ]


def all_predicate_transformers(y_space: FunctionalSpace, x_space: FunctionalSpace, size_guard: int = DEFAULT_SIZE_GUARD):
    expo = enumerate_monotone(y_space.predicates.poset, x_space.predicates.poset, size_guard)
    return [PredicateTransformer(y_space, x_space, m.table) for m in expo.maps]


def compose_transformers(t: StateTransformer, r: StateTransformer, size_guard: int = DEFAULT_SIZE_GUARD) -> StateTransformer:
    """The Kleisli composite x |-> lift(r)(t(x))."""
    table = [
        r.space.space.index(kleisli_lift(r, t(i), size_guard).table)
        for i in range(t.source.size)
    ]
    return StateTransformer(t.source, r.space, tuple(table))


def check_monad_laws(x, y, z, algebra, t: StateTransformer, r: StateTransformer, size_guard: int = DEFAULT_SIZE_GUARD):
    """The two unit laws and associativity for one (t, r) pair, exhaustively."""
    if t.source != x or t.space.x != y or r.source != y or r.space.x != z:
        raise TypeMismatch("transformer endpoints do not match the stated posets")
    x_space = functional_space(x, algebra, size_guard)
    checks = []

    unit = delta_transformer(x, algebra, size_guard)
    ok = all(
        kleisli_lift(unit, phi, size_guard).table == phi.table
        for phi in x_space.space.maps
    )
    checks.append(CheckOutcome("monad:lift-of-unit-is-identity", ok, "exhaustive"))

    ok = all(
        kleisli_lift(t, x_space.delta(i), size_guard).table == t(i).table
        for i in range(x.size)
    )
    checks.append(CheckOutcome("monad:lift-after-unit-is-plain", ok, "exhaustive"))

    rt = compose_transformers(t, r, size_guard)
    ok = all(
        kleisli_lift(rt, phi, size_guard).table
        == kleisli_lift(r, kleisli_lift(t, phi, size_guard), size_guard).table
        for phi in x_space.space.maps
    )
    checks.append(CheckOutcome("monad:lift-is-associative", ok, "exhaustive"))
    return checks
