"""Concrete powerdomains: Hoare, Smyth, points-as-frame-maps, and valuations.

The nondeterministic powerdomains arise as op-preserving functionals into
the two-element observation algebras and are cross-checked here against
their set-based presentations (down-sets, up-sets).  The probabilistic and
mixed constructions live over the extended nonnegative rationals: simple
valuations are finite weighted sums of point evaluations, and the mixed
angelic/demonic functionals are finite maxima/minima of those.

Ordering valuations is decidable here by a layer-cake argument: a monotone
predicate on a finite poset is a positive combination of characteristic
functions of up-sets, and valuation evaluation is linear, so domination on
every predicate reduces to domination on the finitely many up-sets.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .algebra import CheckOutcome, FinAlgebra, is_homomorphism
from .errors import RejectInteger, TypeMismatch
from .extnum import ExtNN, ONE, ZERO, enn_max, enn_min, enn_sum
from .monad import functional_space
from .poset import ElemSet, FinPoset, all_down_sets, all_up_sets, is_order_iso, set_inclusion_poset
from .sampling import (
    DEFAULT_SIZE_GUARD,
    DEFAULT_TRIALS,
    SCALAR_GRID,
    random_monotone_values,
    task_rng,
)

EXHAUSTIVE = "exhaustive"
SAMPLED = "grid+samples"


# ---------------------------------------------------------------------------
# predicates with extended-rational values


@dataclass(frozen=True)
class Predicate:
    """A monotone assignment of extended rationals to a finite poset."""

    poset: FinPoset
    values: tuple

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(self.values))
        if len(self.values) != self.poset.size:
            raise TypeMismatch("value count does not match the poset")
        for i, j in self.poset.covers():
            if not self.values[i] <= self.values[j]:
                raise TypeMismatch(
                    f"predicate not monotone on {self.poset.labels[i]} <= {self.poset.labels[j]}"
                )

    def __call__(self, i: int) -> ExtNN:
        return self.values[i]

    def literal(self) -> str:
        inner = "; ".join(
            f"{lab} -> {v}" for lab, v in zip(self.poset.labels, self.values)
        )
        return "pred { " + inner + " }"


def constant_predicate(poset: FinPoset, value: ExtNN) -> Predicate:
    return Predicate(poset, (value,) * poset.size)


def chi(up_set: ElemSet) -> Predicate:
    """Characteristic predicate of an up-set (1 inside, 0 outside)."""
    return Predicate(
        up_set.poset,
        tuple(ONE if i in up_set else ZERO for i in range(up_set.poset.size)),
    )


def pred_add(f: Predicate, g: Predicate) -> Predicate:
    _same_poset(f, g)
    return Predicate(f.poset, tuple(a + b for a, b in zip(f.values, g.values)))


def pred_sup(f: Predicate, g: Predicate) -> Predicate:
    _same_poset(f, g)
    return Predicate(f.poset, tuple(enn_max(a, b) for a, b in zip(f.values, g.values)))


def pred_inf(f: Predicate, g: Predicate) -> Predicate:
    _same_poset(f, g)
    return Predicate(f.poset, tuple(enn_min(a, b) for a, b in zip(f.values, g.values)))


def pred_scale(r: ExtNN, f: Predicate) -> Predicate:
    return Predicate(f.poset, tuple(r * v for v in f.values))


def pred_leq(f: Predicate, g: Predicate) -> bool:
    _same_poset(f, g)
    return all(a <= b for a, b in zip(f.values, g.values))


def random_predicate(poset: FinPoset, rng) -> Predicate:
    return Predicate(poset, random_monotone_values(poset, rng))


def _same_poset(f, g):
    if f.poset != g.poset:
        raise TypeMismatch("operands live over different posets")


class PredAlgebra:
    """Pointwise lift of an extended-rational algebra to predicates over a poset.

    Grid tuples run over the characteristic predicates of all up-sets;
    sampling draws random monotone predicates.
    """

    exhaustive = False

    def __init__(self, base, poset: FinPoset, size_guard: int = DEFAULT_SIZE_GUARD):
        self.base = base
        self.poset = poset
        self.signature = base.signature
        self.name = f"{base.name}^{poset.size}"
        self.chis = tuple(chi(u) for u in all_up_sets(poset, size_guard))

    def apply(self, symbol, args, param=None):
        values = tuple(
            self.base.apply(symbol, tuple(a.values[i] for a in args), param)
            for i in range(self.poset.size)
        )
        return Predicate(self.poset, values)

    def leq(self, a, b) -> bool:
        return pred_leq(a, b)

    def eq(self, a, b) -> bool:
        return a.values == b.values

    def value_str(self, a) -> str:
        return a.literal()

    def grid_tuples(self, nvars):
        return itertools.product(self.chis, repeat=nvars)

    def sample_tuple(self, nvars, rng):
        return tuple(random_predicate(self.poset, rng) for _ in range(nvars))

    def grid_params(self, symbol):
        return self.base.grid_params(symbol)

    def sample_param(self, symbol, rng):
        return self.base.sample_param(symbol, rng)

    @property
    def check_mode(self) -> str:
        return SAMPLED


# ---------------------------------------------------------------------------
# simple valuations and their finite max/min combinations


@dataclass(frozen=True)
class SimpleValuation:
    """A finite weighted sum of point evaluations, kept in canonical form.

    Atoms are (weight, element index) pairs sorted by element index with
    duplicate points merged and zero weights dropped; the empty sum is the
    zero valuation.
    """

    poset: FinPoset
    atoms: tuple

    def __post_init__(self):
        merged: dict[int, ExtNN] = {}
        for weight, point in self.atoms:
            if not 0 <= point < self.poset.size:
                raise TypeMismatch(f"atom point {point} outside the poset")
            weight = ExtNN(weight)
            merged[point] = merged.get(point, ZERO) + weight
        canon = tuple(
            (merged[p], p) for p in sorted(merged) if merged[p] != ZERO
        )
        object.__setattr__(self, "atoms", canon)

    def __call__(self, f: Predicate) -> ExtNN:
        if f.poset != self.poset:
            raise TypeMismatch("predicate lives over a different poset")
        return enn_sum(w * f.values[p] for w, p in self.atoms)

    def mass(self) -> ExtNN:
        return enn_sum(w for w, _ in self.atoms)

    def scale(self, r: ExtNN) -> "SimpleValuation":
        return SimpleValuation(self.poset, tuple((r * w, p) for w, p in self.atoms))

    def add(self, other: "SimpleValuation") -> "SimpleValuation":
        if other.poset != self.poset:
            raise TypeMismatch("valuations live over different posets")
        return SimpleValuation(self.poset, self.atoms + other.atoms)

    def sort_key(self):
        return tuple((p, str(w)) for w, p in self.atoms)

    def literal(self) -> str:
        inner = "; ".join(f"{w} @ {self.poset.labels[p]}" for w, p in self.atoms)
        return "val { " + inner + " }"


def dirac(poset: FinPoset, point: int) -> SimpleValuation:
    return SimpleValuation(poset, ((ONE, point),))


def eval_valuation(mu: SimpleValuation, f: Predicate) -> ExtNN:
    return mu(f)


def cone_combine(a: ExtNN, mu: SimpleValuation, b: ExtNN, nu: SimpleValuation) -> SimpleValuation:
    """Canonical form of a*mu + b*nu."""
    return mu.scale(a).add(nu.scale(b))


def valuation_leq(mu: SimpleValuation, nu: SimpleValuation, size_guard: int = DEFAULT_SIZE_GUARD) -> bool:
    """Pointwise domination on all predicates, via the layer-cake reduction."""
    if mu.poset != nu.poset:
        raise TypeMismatch("valuations live over different posets")
    return all(
        mu(chi(u)) <= nu(chi(u)) for u in all_up_sets(mu.poset, size_guard)
    )


def _combo(kind, values):
    acc = None
    for v in values:
        acc = v if acc is None else (enn_max(acc, v) if kind == "max" else enn_min(acc, v))
    return acc


@dataclass(frozen=True)
class SubFn:
    """Finite maximum of simple valuations: evaluates sublinearly."""

    components: tuple

    def __post_init__(self):
        comps = _canonical_components(self.components)
        object.__setattr__(self, "components", comps)

    @property
    def poset(self):
        return self.components[0].poset

    def __call__(self, f: Predicate) -> ExtNN:
        return _combo("max", (mu(f) for mu in self.components))

    def literal(self) -> str:
        return "sup{ " + "; ".join(c.literal() for c in self.components) + " }"


@dataclass(frozen=True)
class SupFn:
    """Finite minimum of simple valuations: evaluates superlinearly."""

    components: tuple

    def __post_init__(self):
        comps = _canonical_components(self.components)
        object.__setattr__(self, "components", comps)

    @property
    def poset(self):
        return self.components[0].poset

    def __call__(self, f: Predicate) -> ExtNN:
        return _combo("min", (mu(f) for mu in self.components))

    def literal(self) -> str:
        return "inf{ " + "; ".join(c.literal() for c in self.components) + " }"


def _canonical_components(components):
    comps = tuple(components)
    if not comps:
        raise TypeMismatch("at least one component valuation is required")
    poset = comps[0].poset
    if any(c.poset != poset for c in comps):
        raise TypeMismatch("components live over different posets")
    unique = {c.sort_key(): c for c in comps}
    return tuple(unique[k] for k in sorted(unique))


# ---------------------------------------------------------------------------
# nondeterministic powerdomains against their set-based presentations


@dataclass
class PowerdomainResult:
    kind: str
    poset: FinPoset
    sets: list
    set_poset: FinPoset
    functionals: list
    pairing: list  # (set label, functional key)
    checks: list

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    def as_record(self):
        return {
            "kind": self.kind,
            "elements": [s.label() for s in self.sets],
            "count": len(self.sets),
            "functional_count": len(self.functionals),
            "pairing": [{"set": a, "functional": b} for a, b in self.pairing],
            "checks": [c.as_record() for c in self.checks],
            "verdict": "pass" if self.passed else "fail",
        }


def _upset_of_predicate(pred_map, algebra):
    """Indices where a two-valued predicate map takes the top value."""
    top = 1 if algebra.carrier.leq[0][1] else 0
    return frozenset(i for i, v in enumerate(pred_map.table) if v == top)


def hoare_powerdomain(x: FinPoset, algebra_ang: FinAlgebra, size_guard: int = DEFAULT_SIZE_GUARD) -> PowerdomainResult:
    """Down-sets of X matched with the join-preserving functionals.

    The empty set is kept as the bottom element.  A down-set C corresponds
    to the functional sending a predicate with support U to 0 when U misses
    C and to 1 otherwise.
    """
    space = functional_space(x, algebra_ang, size_guard)
    downs = all_down_sets(x, size_guard)
    down_poset = set_inclusion_poset(downs)
    homs = list(space.hom_indices)
    checks = []

    pairing = []
    images = []
    for d in downs:
        table = []
        for pred in space.predicates.maps:
            support = _upset_of_predicate(pred, algebra_ang)
            hit = any(i in d for i in support)
            table.append(1 if hit else 0)
        idx = space.space.index(tuple(table))
        images.append(idx)
        pairing.append((d.label(), space.functional(idx).key()))

    bijective = sorted(images) == sorted(homs) and len(set(images)) == len(images)
    checks.append(CheckOutcome("hoare:bijection-onto-homs", bijective, EXHAUSTIVE))
    if bijective:
        mapping = [sorted(homs).index(i) for i in images]
        hom_poset = space.family_poset(tuple(sorted(homs)))
        iso = is_order_iso(down_poset, hom_poset, mapping)
    else:
        iso = False
    checks.append(CheckOutcome("hoare:order-isomorphism", iso, EXHAUSTIVE))
    checks.append(
        CheckOutcome(
            "hoare:free-equals-hom",
            sorted(space.free_indices) == sorted(homs),
            EXHAUSTIVE,
        )
    )
    return PowerdomainResult(
        "hoare", x, downs, down_poset, [space.functional(i) for i in sorted(homs)], pairing, checks
    )


def smyth_powerdomain(x: FinPoset, algebra_dem: FinAlgebra, size_guard: int = DEFAULT_SIZE_GUARD) -> PowerdomainResult:
    """Up-sets of X under reverse inclusion matched with the meet-preserving
    functionals; the empty set rides along as the top element.

    Every functional's preimage of 1 is also checked to be a filter of
    up-sets (up-closed under inclusion, closed under intersection, and
    containing the whole space).
    """
    space = functional_space(x, algebra_dem, size_guard)
    ups = all_up_sets(x, size_guard)
    up_poset = set_inclusion_poset(ups, reverse=True)
    homs = list(space.hom_indices)
    checks = []

    pairing = []
    images = []
    for q in ups:
        table = []
        for pred in space.predicates.maps:
            support = _upset_of_predicate(pred, algebra_dem)
            covered = all(i in support for i in q.members())
            table.append(1 if covered else 0)
        idx = space.space.index(tuple(table))
        images.append(idx)
        pairing.append((q.label(), space.functional(idx).key()))

    bijective = sorted(images) == sorted(homs) and len(set(images)) == len(images)
    checks.append(CheckOutcome("smyth:bijection-onto-homs", bijective, EXHAUSTIVE))
    if bijective:
        mapping = [sorted(homs).index(i) for i in images]
        hom_poset = space.family_poset(tuple(sorted(homs)))
        iso = is_order_iso(up_poset, hom_poset, mapping)
    else:
        iso = False
    checks.append(CheckOutcome("smyth:order-isomorphism", iso, EXHAUSTIVE))
    checks.append(
        CheckOutcome(
            "smyth:free-equals-hom",
            sorted(space.free_indices) == sorted(homs),
            EXHAUSTIVE,
        )
    )

    filter_ok = True
    for i in homs:
        functional = space.functional(i)
        ones = [
            _upset_of_predicate(space.predicates.maps[g], algebra_dem)
            for g in range(len(space.predicates))
            if functional.table[g] == 1
        ]
        whole = frozenset(range(x.size))
        if whole not in ones:
            filter_ok = False
        for u in ones:
            for v in ones:
                if u & v not in ones:
                    filter_ok = False
            for w in (
                _upset_of_predicate(p, algebra_dem) for p in space.predicates.maps
            ):
                if u <= w and w not in ones:
                    filter_ok = False
    checks.append(CheckOutcome("smyth:preimages-are-filters", filter_ok, EXHAUSTIVE))
    return PowerdomainResult(
        "smyth", x, ups, up_poset, [space.functional(i) for i in sorted(homs)], pairing, checks
    )


def sobrification(x: FinPoset, frame_algebra: FinAlgebra, size_guard: int = DEFAULT_SIZE_GUARD):
    """Functionals preserving the full frame structure; equals the points here.

    Finite posets are sober, so the result is order-isomorphic to X via the
    point evaluations.
    """
    space = functional_space(x, frame_algebra, size_guard)
    homs = list(space.hom_indices)
    checks = [
        CheckOutcome("sober:count-equals-points", len(homs) == x.size, EXHAUSTIVE),
        CheckOutcome(
            "sober:points-are-the-functionals",
            sorted(space.delta_indices) == sorted(homs),
            EXHAUSTIVE,
        ),
        CheckOutcome(
            "sober:delta-is-order-iso",
            is_order_iso(
                x,
                space.family_poset(tuple(sorted(homs))),
                [sorted(homs).index(i) for i in space.delta_indices],
            )
            if sorted(space.delta_indices) == sorted(homs)
            else False,
            EXHAUSTIVE,
        ),
    ]
    return [space.functional(i) for i in homs], checks


# ---------------------------------------------------------------------------
# sublinear / superlinear law checks


@dataclass
class LawReport:
    name: str
    seed: int
    trials: int
    checks: list

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    def __bool__(self):
        return self.passed

    def as_record(self):
        return {
            "name": self.name,
            "seed": self.seed,
            "trials": self.trials,
            "verdict": "pass" if self.passed else "fail",
            "checks": [c.as_record() for c in self.checks],
        }


def _predicate_pairs(poset, rng, trials, size_guard):
    chis = [chi(u) for u in all_up_sets(poset, size_guard)]
    for f, g in itertools.product(chis, repeat=2):
        yield f, g
    for _ in range(trials):
        yield random_predicate(poset, rng), random_predicate(poset, rng)


def _homogeneity_check(phi, poset, rng, trials, size_guard):
    chis = [chi(u) for u in all_up_sets(poset, size_guard)]
    preds = chis + [random_predicate(poset, rng) for _ in range(trials)]
    for r in SCALAR_GRID:
        for f in preds:
            lhs = phi(pred_scale(r, f))
            rhs = r * phi(f)
            if lhs != rhs:
                return CheckOutcome(
                    "homogeneity",
                    False,
                    SAMPLED,
                    {"r": str(r), "f": f.literal(), "lhs": str(lhs), "rhs": str(rhs)},
                )
    return CheckOutcome("homogeneity", True, SAMPLED)


def _pair_law_check(name, phi, poset, rng, trials, size_guard, combine, relation):
    for f, g in _predicate_pairs(poset, rng, trials, size_guard):
        lhs = phi(combine(f, g))
        rhs = relation["combine_values"](phi(f), phi(g))
        if not relation["holds"](lhs, rhs):
            return CheckOutcome(
                name,
                False,
                SAMPLED,
                {
                    "f": f.literal(),
                    "g": g.literal(),
                    "lhs": str(lhs),
                    "rhs": str(rhs),
                },
            )
    return CheckOutcome(name, True, SAMPLED)


def check_sublinear(phi, trials: int = DEFAULT_TRIALS, seed: int = 42, size_guard: int = DEFAULT_SIZE_GUARD) -> LawReport:
    """Homogeneity, zero at zero, subadditivity, and join domination."""
    poset = phi.poset
    checks = [
        CheckOutcome(
            "zero-at-zero",
            phi(constant_predicate(poset, ZERO)) == ZERO,
            EXHAUSTIVE,
        ),
        _homogeneity_check(phi, poset, task_rng(seed, "sublinear:homog"), max(trials // 10, 10), size_guard),
        _pair_law_check(
            "subadditive",
            phi,
            poset,
            task_rng(seed, "sublinear:add"),
            trials,
            size_guard,
            pred_add,
            {"combine_values": lambda a, b: a + b, "holds": lambda l, r: l <= r},
        ),
        _pair_law_check(
            "dominates-joins",
            phi,
            poset,
            task_rng(seed, "sublinear:join"),
            trials,
            size_guard,
            pred_sup,
            {"combine_values": enn_max, "holds": lambda l, r: r <= l},
        ),
    ]
    return LawReport("sublinear", seed, trials, checks)


def check_superlinear(phi, trials: int = DEFAULT_TRIALS, seed: int = 42, size_guard: int = DEFAULT_SIZE_GUARD) -> LawReport:
    """Homogeneity, zero at zero, superadditivity, and meet domination."""
    poset = phi.poset
    checks = [
        CheckOutcome(
            "zero-at-zero",
            phi(constant_predicate(poset, ZERO)) == ZERO,
            EXHAUSTIVE,
        ),
        _homogeneity_check(phi, poset, task_rng(seed, "superlinear:homog"), max(trials // 10, 10), size_guard),
        _pair_law_check(
            "superadditive",
            phi,
            poset,
            task_rng(seed, "superlinear:add"),
            trials,
            size_guard,
            pred_add,
            {"combine_values": lambda a, b: a + b, "holds": lambda l, r: r <= l},
        ),
        _pair_law_check(
            "below-meets",
            phi,
            poset,
            task_rng(seed, "superlinear:meet"),
            trials,
            size_guard,
            pred_inf,
            {"combine_values": enn_min, "holds": lambda l, r: l <= r},
        ),
    ]
    return LawReport("superlinear", seed, trials, checks)


def domination_check(mu: SimpleValuation, phi, trials: int = DEFAULT_TRIALS, seed: int = 42, size_guard: int = DEFAULT_SIZE_GUARD) -> LawReport:
    """Is mu below a SubFn (resp. above a SupFn) on every tested predicate?

    The verdict is "no violation found"; it never proves membership in the
    dominated set.
    """
    if mu.poset != phi.poset:
        raise TypeMismatch("valuation and functional live over different posets")
    below = isinstance(phi, SubFn)
    name = "dominated-by-max" if below else "dominates-min"
    rng = task_rng(seed, "domination")
    chis = [chi(u) for u in all_up_sets(mu.poset, size_guard)]
    preds = chis + [random_predicate(mu.poset, rng) for _ in range(trials)]
    for f in preds:
        a, b = mu(f), phi(f)
        ok = a <= b if below else b <= a
        if not ok:
            return LawReport(
                name,
                seed,
                trials,
                [
                    CheckOutcome(
                        name,
                        False,
                        SAMPLED,
                        {"f": f.literal(), "mu": str(a), "phi": str(b)},
                    )
                ],
            )
    return LawReport(name, seed, trials, [CheckOutcome(name, True, SAMPLED)])


def non_integer_witness(x: FinPoset, point: int, r: ExtNN, rat_monoid, trials: int = DEFAULT_TRIALS, seed: int = 42, size_guard: int = DEFAULT_SIZE_GUARD) -> LawReport:
    """Witness that a non-integer multiple of a point evaluation cannot be
    generated from point evaluations by addition alone.

    The functional r * x^ is additive and homogeneous (checked by sampling
    against the additive monoid), yet its total mass r is not a natural
    number, while anything built from point evaluations by finite sums has
    natural total mass; masses are preserved by directed suprema, so the
    mass obstruction is decisive at this scale.
    """
    if r.is_infinite or r.is_integer:
        raise RejectInteger(f"{r} is not a finite non-integer scalar")
    mu = dirac(x, point).scale(r)
    pred_alg = PredAlgebra(rat_monoid, x, size_guard)
    rng = task_rng(seed, "non-integer-witness")
    hom = is_homomorphism(mu, pred_alg, rat_monoid, rng, trials)
    hom.name = "scaled-point-evaluation-is-additive"
    mass = mu.mass()
    checks = [
        hom,
        CheckOutcome(
            "mass-outside-naturals",
            not (mass.is_infinite or mass.is_integer),
            EXHAUSTIVE,
            {"mass": str(mass)},
        ),
    ]
    return LawReport("non-integer-witness", seed, trials, checks)
