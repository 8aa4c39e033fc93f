import itertools

import pytest

from powdom import catalog
from powdom.algebra import FinAlgebra, OpSpec, OpTag, Signature, is_homomorphism
from powdom.errors import TypeMismatch
from powdom.funcspace import MonoMap, compose, enumerate_monotone, identity_map
from powdom.monad import (
    StateTransformer,
    all_predicate_transformers,
    all_state_transformers,
    check_monad_laws,
    compose_transformers,
    delta,
    delta_transformer,
    free_functionals,
    functional_space,
    functor_action,
    hom_functionals,
    kleisli_lift,
    p_transform,
    q_transform,
    relaxed_functionals,
)
from powdom.poset import is_order_iso, set_inclusion_poset, all_down_sets

POSETS = catalog.builtin_posets()
ALGS = catalog.builtin_algebras()


def tagged_two_ang(tag):
    sig = Signature((OpSpec("join", 2, tag), OpSpec("zero", 0, OpTag.EQ)))
    return FinAlgebra(
        f"2_ang_{tag.value}",
        catalog.TWO,
        sig,
        {"join": {(i, j): max(i, j) for i in (0, 1) for j in (0, 1)}, "zero": {(): 0}},
    )


class TestDelta:
    def test_two_chain_tables(self):
        # predicates over C2 in table order: (0,0) < (0,1) < (1,1);
        # evaluation at bot reads the first coordinate, at top the second
        ds = delta(POSETS["C2"], ALGS["2_ang"])
        assert ds[0].table == (0, 0, 1)
        assert ds[1].table == (0, 1, 1)

    def test_singleton(self):
        ds = delta(POSETS["one"], ALGS["2_ang"])
        space = functional_space(POSETS["one"], ALGS["2_ang"])
        assert len(ds) == 1
        assert ds[0].table == tuple(
            m.table[0] for m in space.predicates.maps
        )

    @pytest.mark.parametrize("pname", sorted(POSETS))
    @pytest.mark.parametrize("aname", ["2_ang", "2_dem"])
    def test_order_embedding(self, pname, aname):
        poset = POSETS[pname]
        ds = delta(poset, ALGS[aname])
        for i in range(poset.size):
            for j in range(poset.size):
                assert poset.leq[i][j] == ds[i].leq(ds[j])


class TestKleisli:
    def test_lift_of_unit_is_identity(self):
        space = functional_space(POSETS["C2"], ALGS["2_ang"])
        unit = delta_transformer(POSETS["C2"], ALGS["2_ang"])
        for phi in space.space.maps:
            assert kleisli_lift(unit, phi).table == phi.table

    def test_lift_at_point_evaluations(self):
        x, y = POSETS["A2"], POSETS["C2"]
        r = ALGS["2_ang"]
        xs = functional_space(x, r)
        ys = functional_space(y, r)
        for t in all_state_transformers(x, ys)[:10]:
            for i in range(x.size):
                assert kleisli_lift(t, xs.delta(i)).table == t(i).table

    def test_constant_transformer(self):
        # a transformer constant at psi lifts phi to g |-> phi(const psi(g))
        x = POSETS["C2"]
        r = ALGS["2_ang"]
        xs = functional_space(x, r)
        psi = xs.space.maps[0]
        t = StateTransformer(x, xs, (0,) * x.size)
        for phi in xs.space.maps:
            lifted = kleisli_lift(t, phi)
            for g in range(len(xs.predicates)):
                const_pred = xs.predicates.index((psi.table[g],) * x.size)
                assert lifted.table[g] == phi.table[const_pred]

    def test_type_mismatch(self):
        x, y = POSETS["C2"], POSETS["A2"]
        r = ALGS["2_ang"]
        ys = functional_space(y, r)
        t = all_state_transformers(x, ys)[0]
        wrong = functional_space(y, r).space.maps[0]
        with pytest.raises(TypeMismatch):
            kleisli_lift(t, wrong)


class TestFunctorAction:
    def test_identity(self):
        x = POSETS["A2"]
        r = ALGS["2_ang"]
        space = functional_space(x, r)
        u = identity_map(x)
        for phi in space.space.maps:
            assert functor_action(u, phi, r).table == phi.table

    def test_on_point_evaluations(self):
        # naturality: pushing x^ forward along u gives (u x)^
        x, y = POSETS["A2"], POSETS["C2"]
        r = ALGS["2_ang"]
        xs, ys = functional_space(x, r), functional_space(y, r)
        for u in enumerate_monotone(x, y).maps:
            for i in range(x.size):
                assert (
                    functor_action(u, xs.delta(i), r).table
                    == ys.delta(u.table[i]).table
                )

    def test_functorial(self):
        x, y, z = POSETS["C2"], POSETS["A2"], POSETS["C2"]
        r = ALGS["2_ang"]
        xs = functional_space(x, r)
        for u in enumerate_monotone(x, y).maps:
            for v in enumerate_monotone(y, z).maps:
                for phi in xs.space.maps:
                    assert (
                        functor_action(compose(u, v), phi, r).table
                        == functor_action(v, functor_action(u, phi, r), r).table
                    )

    def test_agrees_with_lifted_unit(self):
        # the functor action is the lifting of (unit . u)
        x, y = POSETS["C2"], POSETS["A2"]
        r = ALGS["2_ang"]
        xs, ys = functional_space(x, r), functional_space(y, r)
        for u in enumerate_monotone(x, y).maps:
            t = StateTransformer(x, ys, tuple(ys.delta_indices[u.table[i]] for i in range(x.size)))
            for phi in xs.space.maps:
                assert functor_action(u, phi, r).table == kleisli_lift(t, phi).table


class TestTransformers:
    def test_p_of_unit_after_map_is_precompose(self):
        x, y = POSETS["A2"], POSETS["C2"]
        r = ALGS["2_ang"]
        xs, ys = functional_space(x, r), functional_space(y, r)
        for u in enumerate_monotone(x, y).maps:
            t = StateTransformer(
                x, ys, tuple(ys.delta_indices[u.table[i]] for i in range(x.size))
            )
            s = p_transform(t)
            for g_idx, g in enumerate(ys.predicates.maps):
                pulled = tuple(g.table[u.table[i]] for i in range(x.size))
                assert s.table[g_idx] == xs.predicates.index(pulled)

    def test_q_of_identity_is_unit(self):
        x = POSETS["C2"]
        r = ALGS["2_ang"]
        xs = functional_space(x, r)
        ident = all_predicate_transformers(xs, xs)
        s = next(
            s for s in ident if s.table == tuple(range(len(xs.predicates)))
        )
        assert q_transform(s) == delta_transformer(x, r)

    @pytest.mark.parametrize("xn", ["one", "C2", "A2"])
    @pytest.mark.parametrize("yn", ["one", "C2", "A2"])
    def test_roundtrips(self, xn, yn):
        x, y = POSETS[xn], POSETS[yn]
        r = ALGS["2_ang"]
        xs, ys = functional_space(x, r), functional_space(y, r)
        for t in all_state_transformers(x, ys):
            assert q_transform(p_transform(t)) == t
        for s in all_predicate_transformers(ys, xs):
            assert p_transform(q_transform(s)) == s

    def test_hom_correspondence(self):
        # transformers valued in op-preserving functionals match exactly the
        # op-preserving predicate transformers
        x, y = POSETS["C2"], POSETS["A2"]
        r = ALGS["2_ang"]
        xs, ys = functional_space(x, r), functional_space(y, r)
        images = {
            p_transform(t).table
            for t in all_state_transformers(x, ys, ys.hom_indices)
        }
        homs = {
            s.table
            for s in all_predicate_transformers(ys, xs)
            if is_homomorphism(s.as_map(), ys.pred_algebra, xs.pred_algebra)
        }
        assert images == homs


class TestFamilies:
    def test_hoare_functionals_count(self):
        homs = hom_functionals(POSETS["C2"], ALGS["2_ang"])
        assert len(homs) == 3
        downs = all_down_sets(POSETS["C2"])
        space = functional_space(POSETS["C2"], ALGS["2_ang"])
        assert is_order_iso(
            set_inclusion_poset(downs),
            space.family_poset(space.hom_indices),
            [0, 1, 2],
        )

    def test_antichain_counts(self):
        assert len(hom_functionals(POSETS["A2"], ALGS["2_ang"])) == 4

    def test_point_evaluations_always_inside(self):
        for aname in ("2_ang", "2_dem", "lattice2"):
            space = functional_space(POSETS["one"], ALGS[aname])
            assert set(space.delta_indices) <= set(space.hom_indices)

    def test_relaxed_equals_hom_for_exact_tags(self):
        space = functional_space(POSETS["A2"], ALGS["2_ang"])
        assert space.relaxed_indices == space.hom_indices

    def test_relaxed_with_lax_join_on_chain(self):
        # with the join tagged lax, monotonicity already forces equality on a
        # chain, so the relaxed family coincides with the homs here
        r = tagged_two_ang(OpTag.LE)
        space = functional_space(POSETS["C2"], r)
        assert set(space.hom_indices) <= set(space.relaxed_indices)
        assert space.relaxed_indices == space.hom_indices

    def test_relaxed_strictly_larger_with_oplax_join(self):
        r = tagged_two_ang(OpTag.GE)
        space = functional_space(POSETS["A2"], r)
        assert set(space.hom_indices) < set(space.relaxed_indices)

    def test_point_evaluations_relaxed_for_any_tagging(self):
        for tag in (OpTag.LE, OpTag.GE, OpTag.EQ):
            space = functional_space(POSETS["C2"], tagged_two_ang(tag))
            assert set(space.delta_indices) <= set(space.relaxed_indices)

    def test_free_on_chain(self):
        frees = free_functionals(POSETS["C2"], ALGS["2_ang"])
        homs = hom_functionals(POSETS["C2"], ALGS["2_ang"])
        assert {f.table for f in frees} == {h.table for h in homs}

    def test_free_on_antichain(self):
        space = functional_space(POSETS["A2"], ALGS["2_ang"])
        frees = set(space.free_indices)
        zero = space.space.index(tuple(0 for _ in space.predicates.maps))
        join_of_deltas = space.func_algebra.apply("join", space.delta_indices)
        assert frees == set(space.delta_indices) | {zero, join_of_deltas}

    def test_free_on_singleton(self):
        assert len(free_functionals(POSETS["one"], ALGS["2_ang"])) == 2

    def test_relaxed_superset_of_hom(self):
        for tag in (OpTag.LE, OpTag.GE):
            for pname in ("C2", "A2", "vee"):
                space = functional_space(POSETS[pname], tagged_two_ang(tag))
                assert set(space.hom_indices) <= set(space.relaxed_indices)
                assert set(relaxed_functionals(POSETS[pname], tagged_two_ang(tag))) >= set()


class TestMonadLaws:
    def test_endpoint_validation(self):
        r = ALGS["2_ang"]
        ys = functional_space(POSETS["C2"], r)
        t = all_state_transformers(POSETS["C2"], ys)[0]
        with pytest.raises(TypeMismatch):
            check_monad_laws(POSETS["A2"], POSETS["C2"], POSETS["C2"], r, t, t)

    def test_unit_laws_spot(self):
        x = POSETS["C2"]
        r = ALGS["2_ang"]
        ys = functional_space(POSETS["A2"], r)
        t = all_state_transformers(x, ys)[5]
        checks = check_monad_laws(x, POSETS["A2"], POSETS["A2"], r, t, all_state_transformers(POSETS["A2"], ys)[3])
        assert all(c.passed for c in checks)

    def test_composition_respects_lifting(self):
        x = y = z = POSETS["C2"]
        r = ALGS["2_dem"]
        ys, zs = functional_space(y, r), functional_space(z, r)
        t = all_state_transformers(x, ys)[2]
        rr = all_state_transformers(y, zs)[4]
        comp = compose_transformers(t, rr)
        xs = functional_space(x, r)
        for phi in xs.space.maps:
            assert (
                kleisli_lift(comp, phi).table
                == kleisli_lift(rr, kleisli_lift(t, phi)).table
            )


class TestLiftingPreservation:
    def test_lifting_is_op_preserving(self):
        # lifting commutes with the pointwise ops on functionals
        x, y = POSETS["C2"], POSETS["A2"]
        r = ALGS["2_ang"]
        xs, ys = functional_space(x, r), functional_space(y, r)
        for t in all_state_transformers(x, ys)[:12]:
            for args in itertools.product(range(len(xs.space)), repeat=2):
                combined = xs.func_algebra.apply("join", args)
                lhs = kleisli_lift(t, xs.functional(combined)).table
                parts = tuple(
                    ys.space.index(kleisli_lift(t, xs.functional(a)).table)
                    for a in args
                )
                assert lhs == ys.functional(ys.func_algebra.apply("join", parts)).table

    def test_lifting_preserves_homs(self):
        x, y = POSETS["A2"], POSETS["C2"]
        r = ALGS["2_dem"]
        xs, ys = functional_space(x, r), functional_space(y, r)
        hom_set = set(ys.hom_indices)
        for t in all_state_transformers(x, ys, ys.hom_indices):
            for i in xs.hom_indices:
                lifted = kleisli_lift(t, xs.functional(i))
                assert ys.space.index(lifted.table) in hom_set


def test_unit_on_algebra_is_op_preserving():
    # evaluation maps restricted to op-preserving functionals preserve ops
    from powdom.algebra import lift_pointwise
    from powdom.poset import sub_poset

    for aname in ("2_ang", "2_dem", "lattice2"):
        a = ALGS[aname]
        expo = enumerate_monotone(a.carrier, a.carrier)
        hom_idx = [i for i, m in enumerate(expo.maps) if is_homomorphism(m, a, a)]
        hom_poset = sub_poset(expo.poset, hom_idx)
        lifted = lift_pointwise(a, hom_poset)
        table = tuple(
            lifted.expo.index(tuple(expo.maps[h].table[v] for h in hom_idx))
            for v in range(a.carrier.size)
        )
        delta_a = MonoMap(a.carrier, lifted.carrier, table)
        assert is_homomorphism(delta_a, a, lifted).passed
