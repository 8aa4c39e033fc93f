"""Ordered algebras, pointwise lifting, and the (in)equational law checkers.

A signature lists operation symbols with arities and a tag that places each
symbol in the lax and/or oplax class: morphism conditions against an
``LE``-tagged op relax to ``phi(op(..)) <= op(phi(..))``, against a
``GE``-tagged op to ``>=``, and ``EQ`` keeps equality (the op counts as both).

Two carrier flavours exist.  ``FinAlgebra`` has a finite poset carrier with
explicit operation tables; every law is checked exhaustively there.
``RatAlgebra`` is carried by the extended nonnegative rationals with ops
realised as closed forms; laws over it are checked in two phases (a fixed
grid exhaustively, then seeded random tuples), so verdicts are
counterexample-free claims, never proofs.  Checker reports record which
mode produced them.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum

from .errors import (
    ArityMismatch,
    PowdomError,
    SignatureMismatch,
    TypeMismatch,
    UnboundVariable,
    UnknownElement,
    UnknownOp,
)
from .extnum import ONE, enn_mul
from .funcspace import MonoMap, compose, enumerate_monotone, identity_map
from .poset import FinPoset, sub_poset
from .sampling import (
    DEFAULT_SIZE_GUARD,
    DEFAULT_TRIALS,
    LAW_GRID,
    random_extnn,
)

EXHAUSTIVE = "exhaustive"
SAMPLED = "grid+samples"


class OpTag(str, Enum):
    LE = "LE"
    GE = "GE"
    EQ = "EQ"


@dataclass(frozen=True)
class OpSpec:
    symbol: str
    arity: int
    tag: OpTag = OpTag.EQ
    parametric: bool = False  # a scalar-indexed family like r * -

    def __post_init__(self):
        if self.arity < 0:
            raise ArityMismatch(f"negative arity for {self.symbol}")

    @property
    def lax(self) -> bool:
        return self.tag in (OpTag.LE, OpTag.EQ)

    @property
    def oplax(self) -> bool:
        return self.tag in (OpTag.GE, OpTag.EQ)


@dataclass(frozen=True)
class Signature:
    ops: tuple

    def __post_init__(self):
        object.__setattr__(self, "ops", tuple(self.ops))
        symbols = [op.symbol for op in self.ops]
        if len(set(symbols)) != len(symbols):
            raise SignatureMismatch(f"duplicate op symbols in {symbols}")

    def spec(self, symbol: str) -> OpSpec:
        for op in self.ops:
            if op.symbol == symbol:
                return op
        raise UnknownOp(f"unknown operation {symbol!r}")

    def symbols(self):
        return tuple(op.symbol for op in self.ops)


class FinAlgebra:
    """A finite poset carrier with one monotone table per operation."""

    exhaustive = True

    def __init__(self, name, carrier: FinPoset, signature: Signature, tables, expo=None):
        self.name = name
        self.carrier = carrier
        self.signature = signature
        self.tables = {sym: dict(tbl) for sym, tbl in tables.items()}
        self.expo = expo  # set when this algebra was built by pointwise lifting
        self._validate()
        self._key = (
            carrier,
            signature,
            tuple(
                (sym, tuple(sorted(self.tables[sym].items())))
                for sym in signature.symbols()
            ),
        )

    def _validate(self):
        n = self.carrier.size
        covers = self.carrier.covers()
        for op in self.signature.ops:
            if op.parametric:
                raise PowdomError("finite algebras cannot carry parametric op families")
            table = self.tables.get(op.symbol)
            if table is None:
                raise UnknownOp(f"no table for operation {op.symbol!r}")
            for args in itertools.product(range(n), repeat=op.arity):
                if args not in table:
                    raise ArityMismatch(
                        f"table for {op.symbol} missing entry {args}"
                    )
                if not 0 <= table[args] < n:
                    raise UnknownElement(
                        f"table for {op.symbol} maps {args} outside the carrier"
                    )
            # monotone in each argument: stepping one coordinate up a cover
            # edge may only move the result up
            for args in itertools.product(range(n), repeat=op.arity):
                for pos in range(op.arity):
                    for lo, hi in covers:
                        if args[pos] != lo:
                            continue
                        bumped = args[:pos] + (hi,) + args[pos + 1 :]
                        if not self.carrier.leq[table[args]][table[bumped]]:
                            raise PowdomError(
                                f"operation {op.symbol} is not monotone at {args} -> {bumped}"
                            )

    def __eq__(self, other):
        return isinstance(other, FinAlgebra) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def values(self):
        return range(self.carrier.size)

    def apply(self, symbol, args, param=None):
        self.signature.spec(symbol)
        try:
            return self.tables[symbol][tuple(args)]
        except KeyError:
            raise ArityMismatch(f"bad argument tuple {args} for {symbol}") from None

    def leq(self, a, b) -> bool:
        return self.carrier.leq[a][b]

    def eq(self, a, b) -> bool:
        return a == b

    def value_str(self, a) -> str:
        return self.carrier.labels[a]

    def grid_tuples(self, nvars):
        return itertools.product(range(self.carrier.size), repeat=nvars)

    def sample_tuple(self, nvars, rng):  # pragma: no cover - exhaustive carrier
        raise PowdomError("finite carriers are checked exhaustively")

    def grid_params(self, symbol):
        return (None,)

    def sample_param(self, symbol, rng):
        return None

    @property
    def check_mode(self) -> str:
        return EXHAUSTIVE


class RatAlgebra:
    """Ops on the extended nonnegative rationals, realised as closed forms.

    A parametric op is a scalar-indexed family; law checks quantify over the
    parameter the same way they quantify over carrier values.
    """

    exhaustive = False

    def __init__(self, name, signature: Signature, ops, grid=LAW_GRID):
        self.name = name
        self.signature = signature
        self.ops = dict(ops)
        self.grid = tuple(grid)
        for op in signature.ops:
            if op.symbol not in self.ops:
                raise UnknownOp(f"no realisation for operation {op.symbol!r}")
        self._grid_monotone()

    def _grid_monotone(self):
        # cheap construction-time sanity check; the verify suite re-runs the
        # monotonicity law with samples as well
        for op in self.signature.ops:
            params = self.grid if op.parametric else (None,)
            for param in params:
                for args in itertools.product(self.grid, repeat=op.arity):
                    for pos in range(op.arity):
                        for hi in self.grid:
                            if not args[pos] <= hi:
                                continue
                            bumped = args[:pos] + (hi,) + args[pos + 1 :]
                            lo_v = self.apply(op.symbol, args, param)
                            hi_v = self.apply(op.symbol, bumped, param)
                            if not lo_v <= hi_v:
                                raise PowdomError(
                                    f"operation {op.symbol} is not monotone at {args}"
                                )

    def apply(self, symbol, args, param=None):
        spec = self.signature.spec(symbol)
        if len(tuple(args)) != spec.arity:
            raise ArityMismatch(f"bad argument tuple for {symbol}")
        fn = self.ops[symbol]
        if spec.parametric:
            if param is None:
                raise ArityMismatch(f"operation family {symbol} needs a parameter")
            return fn(param, *args)
        return fn(*args)

    def leq(self, a, b) -> bool:
        return a <= b

    def eq(self, a, b) -> bool:
        return a == b

    def value_str(self, a) -> str:
        return str(a)

    def grid_tuples(self, nvars):
        return itertools.product(self.grid, repeat=nvars)

    def sample_tuple(self, nvars, rng):
        return tuple(random_extnn(rng) for _ in range(nvars))

    def grid_params(self, symbol):
        if not self.signature.spec(symbol).parametric:
            return (None,)
        return self.grid

    def sample_param(self, symbol, rng):
        if not self.signature.spec(symbol).parametric:
            return None
        return random_extnn(rng)

    @property
    def check_mode(self) -> str:
        return SAMPLED


def lift_pointwise(algebra: FinAlgebra, base: FinPoset, size_guard: int = DEFAULT_SIZE_GUARD) -> FinAlgebra:
    """The algebra on the exponential [base -> carrier], ops applied pointwise."""
    expo = enumerate_monotone(base, algebra.carrier, size_guard)
    n = base.size
    tables = {}
    for op in algebra.signature.ops:
        table = {}
        for args in itertools.product(range(len(expo)), repeat=op.arity):
            result = tuple(
                algebra.apply(op.symbol, tuple(expo.maps[a].table[x] for a in args))
                for x in range(n)
            )
            table[args] = expo.index(result)
        tables[op.symbol] = table
    return FinAlgebra(
        f"{algebra.name}^[{base.size}]", expo.poset, algebra.signature, tables, expo=expo
    )


# ---------------------------------------------------------------------------
# check outcomes


@dataclass
class CheckOutcome:
    """Result of one law check; truthy iff the law held on every instance."""

    name: str
    passed: bool
    mode: str
    witness: dict | None = None

    def __bool__(self):
        return self.passed

    def as_record(self):
        return {
            "name": self.name,
            "verdict": "pass" if self.passed else "fail",
            "mode": self.mode,
            "witness": self.witness,
        }


@dataclass
class PairwiseReport:
    """Commutation matrix over all ordered op pairs plus an overall verdict."""

    name: str
    algebra: str
    checks: list
    passed: bool
    mode: str

    def __bool__(self):
        return self.passed

    def witnesses(self):
        return [c for c in self.checks if not c.passed]

    def as_record(self):
        return {
            "name": self.name,
            "algebra": self.algebra,
            "verdict": "pass" if self.passed else "fail",
            "mode": self.mode,
            "pairs": [c.as_record() for c in self.checks],
        }


def _require_same_signature(b, r):
    if b.signature != r.signature:
        raise SignatureMismatch(
            f"signatures of {getattr(b, 'name', '?')} and {getattr(r, 'name', '?')} differ"
        )


def _relation_holds(relation, algebra, lhs, rhs) -> bool:
    if relation == "eq":
        return algebra.eq(lhs, rhs)
    if relation == "le":
        return algebra.leq(lhs, rhs)
    return algebra.leq(rhs, lhs)


_REL_TEXT = {"eq": "=", "le": "<=", "ge": ">="}


def _interchange_check(algebra, sigma: str, omega: str, relation, rng=None, trials=0, label=None):
    """Check sigma(omega(rows)) REL omega(sigma(columns)) over all matrices."""
    s_spec = algebra.signature.spec(sigma)
    o_spec = algebra.signature.spec(omega)
    n, m = s_spec.arity, o_spec.arity
    name = label or f"{relation}:{sigma},{omega}"

    def instance_fails(matrix, s_param, o_param):
        lhs = algebra.apply(
            sigma, tuple(algebra.apply(omega, matrix[i], o_param) for i in range(n)), s_param
        )
        rhs = algebra.apply(
            omega,
            tuple(
                algebra.apply(sigma, tuple(matrix[i][j] for i in range(n)), s_param)
                for j in range(m)
            ),
            o_param,
        )
        if _relation_holds(relation, algebra, lhs, rhs):
            return None
        return {
            "sigma": sigma,
            "omega": omega,
            "relation": _REL_TEXT[relation],
            "matrix": [[algebra.value_str(v) for v in row] for row in matrix],
            "sigma_param": None if s_param is None else algebra.value_str(s_param),
            "omega_param": None if o_param is None else algebra.value_str(o_param),
            "lhs": algebra.value_str(lhs),
            "rhs": algebra.value_str(rhs),
        }

    for s_param in algebra.grid_params(sigma):
        for o_param in algebra.grid_params(omega):
            for flat in algebra.grid_tuples(n * m):
                matrix = tuple(flat[i * m : (i + 1) * m] for i in range(n))
                witness = instance_fails(matrix, s_param, o_param)
                if witness is not None:
                    return CheckOutcome(name, False, algebra.check_mode, witness)
    if not algebra.exhaustive and rng is not None:
        for _ in range(trials):
            matrix = tuple(
                algebra.sample_tuple(m, rng) for _ in range(n)
            )
            witness = instance_fails(
                matrix, algebra.sample_param(sigma, rng), algebra.sample_param(omega, rng)
            )
            if witness is not None:
                return CheckOutcome(name, False, algebra.check_mode, witness)
    return CheckOutcome(name, True, algebra.check_mode)


def commutes(algebra, sigma: str, omega: str, rng=None, trials=0) -> CheckOutcome:
    """Interchange law with equality (the entropic law for the pair)."""
    return _interchange_check(algebra, sigma, omega, "eq", rng, trials, f"commutes:{sigma},{omega}")


def subcommutes(algebra, sigma: str, omega: str, rng=None, trials=0) -> CheckOutcome:
    """sigma(omega(rows)) <= omega(sigma(columns)) for all matrices."""
    return _interchange_check(algebra, sigma, omega, "le", rng, trials, f"subcommutes:{sigma},{omega}")


def supercommutes(algebra, sigma: str, omega: str, rng=None, trials=0) -> CheckOutcome:
    return _interchange_check(algebra, sigma, omega, "ge", rng, trials, f"supercommutes:{sigma},{omega}")


def is_entropic(algebra, rng=None, trials=0) -> PairwiseReport:
    """Do all ordered op pairs satisfy the interchange law?

    Nullary symbols ride along: for constants the law degenerates to
    omega(c,...,c) = c, and for two constants to their equality, so the
    matrix subsumes the constants caveat.
    """
    checks = []
    for sigma in algebra.signature.symbols():
        for omega in algebra.signature.symbols():
            checks.append(commutes(algebra, sigma, omega, rng, trials))
    return PairwiseReport(
        "entropic", algebra.name, checks, all(c.passed for c in checks), algebra.check_mode
    )


def is_relaxed_entropic(algebra, rng=None, trials=0) -> PairwiseReport:
    """Does every op subcommute with LE-tagged and supercommute with GE-tagged ops?"""
    checks = []
    for sigma in algebra.signature.symbols():
        for omega_spec in algebra.signature.ops:
            if omega_spec.lax:
                checks.append(subcommutes(algebra, sigma, omega_spec.symbol, rng, trials))
            if omega_spec.oplax:
                checks.append(supercommutes(algebra, sigma, omega_spec.symbol, rng, trials))
    return PairwiseReport(
        "relaxed-entropic",
        algebra.name,
        checks,
        all(c.passed for c in checks),
        algebra.check_mode,
    )


def _as_callable(phi, b, r):
    if isinstance(phi, MonoMap):
        if getattr(b, "carrier", None) is not None and phi.source != b.carrier:
            raise TypeMismatch("map source does not match the domain algebra carrier")
        if getattr(r, "carrier", None) is not None and phi.target != r.carrier:
            raise TypeMismatch("map target does not match the codomain algebra carrier")
        return phi.table.__getitem__
    return phi


def _morphism_check(phi, b, r, relation_for, rng, trials, name) -> CheckOutcome:
    _require_same_signature(b, r)
    fn = _as_callable(phi, b, r)
    mode = b.check_mode

    def instance_fails(op, relation, args, param):
        lhs = fn(b.apply(op.symbol, args, param))
        rhs = r.apply(op.symbol, tuple(fn(a) for a in args), param)
        if _relation_holds(relation, r, lhs, rhs):
            return None
        return {
            "op": op.symbol,
            "relation": _REL_TEXT[relation],
            "args": [b.value_str(a) for a in args],
            "param": None if param is None else str(param),
            "lhs": r.value_str(lhs),
            "rhs": r.value_str(rhs),
        }

    for op in b.signature.ops:
        relation = relation_for(op)
        if relation is None:
            continue
        for param in b.grid_params(op.symbol):
            for args in b.grid_tuples(op.arity):
                witness = instance_fails(op, relation, args, param)
                if witness is not None:
                    return CheckOutcome(name, False, mode, witness)
        if not b.exhaustive and rng is not None:
            for _ in range(trials):
                witness = instance_fails(
                    op,
                    relation,
                    b.sample_tuple(op.arity, rng),
                    b.sample_param(op.symbol, rng),
                )
                if witness is not None:
                    return CheckOutcome(name, False, mode, witness)
    return CheckOutcome(name, True, mode)


def is_homomorphism(phi, b, r, rng=None, trials=0) -> CheckOutcome:
    """Does phi preserve every operation exactly?

    ``phi`` is a MonoMap from b's carrier to r's carrier, or any callable on
    carrier values.
    """
    return _morphism_check(phi, b, r, lambda op: "eq", rng, trials, "homomorphism")


def is_relaxed_morphism(phi, b, r, rng=None, trials=0) -> CheckOutcome:
    """Morphism check with the tagged relaxations: <= for LE ops, >= for GE."""

    def relation_for(op):
        return {OpTag.LE: "le", OpTag.GE: "ge", OpTag.EQ: "eq"}[op.tag]

    return _morphism_check(phi, b, r, relation_for, rng, trials, "relaxed-morphism")


def generated_subalgebra(algebra: FinAlgebra, generators) -> tuple:
    """Least subset containing the generators and closed under all op tables.

    Returned as a sorted tuple of carrier indices; nullary ops seed the
    closure even when no generators are given.
    """
    n = algebra.carrier.size
    current = set()
    for g in generators:
        if not 0 <= g < n:
            raise UnknownElement(f"generator index {g} outside the carrier")
        current.add(g)
    changed = True
    while changed:
        changed = False
        ordered = sorted(current)
        for op in algebra.signature.ops:
            for args in itertools.product(ordered, repeat=op.arity):
                value = algebra.apply(op.symbol, args)
                if value not in current:
                    current.add(value)
                    changed = True
    return tuple(sorted(current))


# ---------------------------------------------------------------------------
# terms


@dataclass(frozen=True)
class Var:
    index: int


@dataclass(frozen=True)
class App:
    symbol: str
    args: tuple
    param: object = None

    def __post_init__(self):
        object.__setattr__(self, "args", tuple(self.args))


def eval_term(term, env, algebra):
    """Bottom-up evaluation of a term against an algebra's operations."""
    if isinstance(term, Var):
        if not 0 <= term.index < len(env):
            raise UnboundVariable(f"variable v{term.index} not bound")
        return env[term.index]
    spec = algebra.signature.spec(term.symbol)
    if len(term.args) != spec.arity:
        raise ArityMismatch(
            f"{term.symbol} expects {spec.arity} arguments, got {len(term.args)}"
        )
    values = tuple(eval_term(a, env, algebra) for a in term.args)
    return algebra.apply(term.symbol, values, term.param)


# ---------------------------------------------------------------------------
# endomorphisms and module axioms


def endomorphisms(algebra: FinAlgebra, size_guard: int = DEFAULT_SIZE_GUARD):
    """All monotone self-maps of the carrier preserving every operation."""
    expo = enumerate_monotone(algebra.carrier, algebra.carrier, size_guard)
    return [m for m in expo.maps if is_homomorphism(m, algebra, algebra)]


def endo_algebra(algebra: FinAlgebra, size_guard: int = DEFAULT_SIZE_GUARD) -> FinAlgebra:
    """The endomorphisms as an algebra: pointwise ops, composition, identity.

    Requires the endomorphisms to be closed under the pointwise ops (which
    holds when the base algebra is entropic).
    """
    expo = enumerate_monotone(algebra.carrier, algebra.carrier, size_guard)
    endo_idx = [i for i, m in enumerate(expo.maps) if is_homomorphism(m, algebra, algebra)]
    pos = {e: k for k, e in enumerate(endo_idx)}
    carrier = sub_poset(expo.poset, endo_idx)
    n = algebra.carrier.size

    def locate(table):
        try:
            return pos[expo.index(table)]
        except (KeyError, TypeMismatch):
            raise PowdomError(
                "endomorphisms are not closed under the pointwise operations"
            ) from None

    tables = {}
    for op in algebra.signature.ops:
        table = {}
        for args in itertools.product(range(len(endo_idx)), repeat=op.arity):
            result = tuple(
                algebra.apply(
                    op.symbol, tuple(expo.maps[endo_idx[a]].table[x] for a in args)
                )
                for x in range(n)
            )
            table[args] = locate(result)
        tables[op.symbol] = table
    comp = {}
    for a in range(len(endo_idx)):
        for b in range(len(endo_idx)):
            # comp(a, b) applies b first, then a
            result = compose(expo.maps[endo_idx[b]], expo.maps[endo_idx[a]])
            comp[(a, b)] = locate(result.table)
    tables["comp"] = comp
    tables["id"] = {(): pos[expo.index(identity_map(algebra.carrier))]}
    signature = Signature(
        algebra.signature.ops
        + (OpSpec("comp", 2, OpTag.EQ), OpSpec("id", 0, OpTag.EQ))
    )
    return FinAlgebra(f"End({algebra.name})", carrier, signature, tables)


@dataclass
class EndoAction:
    """An endomorphism family acting on an algebra, for module-axiom checks."""

    grid_endos: tuple
    identity: object
    compose: object  # (e1, e2) -> e1 after e2
    op_on_endos: object  # (symbol, endo tuple, param) -> endo
    act: object  # (endo, carrier value) -> carrier value
    describe: object = str
    sample_endo: object = None  # rng -> endo, for the sampled phase


def scalar_action(algebra: RatAlgebra) -> EndoAction:
    """Scalars acting by multiplication; the endomorphism family of the carrier."""
    return EndoAction(
        grid_endos=tuple(algebra.grid),
        identity=ONE,
        compose=enn_mul,
        op_on_endos=lambda sym, endos, param: algebra.apply(sym, endos, param),
        act=enn_mul,
        describe=str,
        sample_endo=random_extnn,
    )


def map_action(algebra: FinAlgebra, endos=None) -> EndoAction:
    """Monotone self-maps acting by application (endos default to the hom ones)."""
    if endos is None:
        endos = endomorphisms(algebra)
    n = algebra.carrier.size

    def op_on_endos(sym, maps, param):
        table = tuple(
            algebra.apply(sym, tuple(m.table[x] for m in maps), param) for x in range(n)
        )
        return MonoMap(algebra.carrier, algebra.carrier, table)

    return EndoAction(
        grid_endos=tuple(endos),
        identity=identity_map(algebra.carrier),
        compose=lambda e1, e2: compose(e2, e1),
        op_on_endos=op_on_endos,
        act=lambda e, x: e.table[x],
        describe=lambda e: e.key(),
    )


@dataclass
class ModuleAxiomReport:
    algebra: str
    checks: list
    passed: bool
    mode: str

    def __bool__(self):
        return self.passed

    def as_record(self):
        return {
            "algebra": self.algebra,
            "verdict": "pass" if self.passed else "fail",
            "mode": self.mode,
            "axioms": [c.as_record() for c in self.checks],
        }


def check_module_axioms(action: EndoAction, algebra, rng=None, trials=DEFAULT_TRIALS) -> ModuleAxiomReport:
    """Verify the four module axioms for an endomorphism action.

    identity action, compatibility with composition, ops on endos acting
    pointwise, and each endo acting as an op-preserving map.
    """
    sampled = not algebra.exhaustive and rng is not None and action.sample_endo is not None
    mode = algebra.check_mode

    def fail(name, detail):
        return CheckOutcome(name, False, mode, detail)

    checks = []

    def run_axiom(name, endo_count, value_count, test):
        # grid/exhaustive phase
        for es in itertools.product(action.grid_endos, repeat=endo_count):
            for xs in algebra.grid_tuples(value_count):
                detail = test(es, xs)
                if detail is not None:
                    checks.append(fail(name, detail))
                    return
        # sampled joint phase on the infinite carrier
        if sampled:
            for _ in range(trials):
                es = tuple(action.sample_endo(rng) for _ in range(endo_count))
                xs = algebra.sample_tuple(value_count, rng)
                detail = test(es, xs)
                if detail is not None:
                    checks.append(fail(name, detail))
                    return
        checks.append(CheckOutcome(name, True, mode))

    def ax1(es, xs):
        (x,) = xs
        got = action.act(action.identity, x)
        if not algebra.eq(got, x):
            return {"x": algebra.value_str(x), "got": algebra.value_str(got)}
        return None

    def ax2(es, xs):
        e1, e2 = es
        (x,) = xs
        lhs = action.act(action.compose(e1, e2), x)
        rhs = action.act(e1, action.act(e2, x))
        if not algebra.eq(lhs, rhs):
            return {
                "endos": [action.describe(e1), action.describe(e2)],
                "x": algebra.value_str(x),
                "lhs": algebra.value_str(lhs),
                "rhs": algebra.value_str(rhs),
            }
        return None

    run_axiom("ax1:identity", 0, 1, ax1)
    run_axiom("ax2:composition", 2, 1, ax2)

    for op in algebra.signature.ops:
        params = algebra.grid_params(op.symbol)

        def ax3(es, xs, op=op, params=params):
            (x,) = xs
            for param in params:
                lhs = action.act(action.op_on_endos(op.symbol, es, param), x)
                rhs = algebra.apply(
                    op.symbol, tuple(action.act(e, x) for e in es), param
                )
                if not algebra.eq(lhs, rhs):
                    return {
                        "op": op.symbol,
                        "endos": [action.describe(e) for e in es],
                        "x": algebra.value_str(x),
                        "lhs": algebra.value_str(lhs),
                        "rhs": algebra.value_str(rhs),
                    }
            return None

        def ax4(es, xs, op=op, params=params):
            (e,) = es
            for param in params:
                lhs = action.act(e, algebra.apply(op.symbol, xs, param))
                rhs = algebra.apply(op.symbol, tuple(action.act(e, x) for x in xs), param)
                if not algebra.eq(lhs, rhs):
                    return {
                        "op": op.symbol,
                        "endo": action.describe(e),
                        "args": [algebra.value_str(x) for x in xs],
                        "lhs": algebra.value_str(lhs),
                        "rhs": algebra.value_str(rhs),
                    }
            return None

        run_axiom(f"ax3:ops-pointwise:{op.symbol}", op.arity, 1, ax3)
        run_axiom(f"ax4:endo-preserves:{op.symbol}", 1, op.arity, ax4)

    return ModuleAxiomReport(
        getattr(algebra, "name", "?"), checks, all(c.passed for c in checks), mode
    )
