import itertools
import random
from fractions import Fraction as F

import pytest

from conftest import coordinate_generator
from mvlogic.interlab import (
    Exhausted, HenkinFilter, NotFoundWithin, PremiseNotEntailed, TermCyl,
    TermNeg, TermOdot, TermOne, TermOplus, TermSub, TermVar, TermZero,
    VocabSplit, ZeroElement, eta_agreement_check, eta_translate,
    henkin_filter_build, interpolant_search, leq, representation_map,
)
from mvlogic.mv_core import Chain
from mvlogic.polyadic import build_generated, dimension_set
from mvlogic.semantics import Model, entails, random_model
from mvlogic.syntax import (
    Atom, BOTTOM, Exists, Implies, LanguageSpec, Odot, Oplus, TOP,
    predicates_of, render,
)
from mvlogic.transform import FinTransformation

PROPS = LanguageSpec(num_vars=2, reserve=1,
                     predicates=(("p", 0), ("q", 0), ("r", 0)))
P, Q, R = Atom("p", ()), Atom("q", ()), Atom("r", ())


class TestLeq:
    def test_zero_below_everything(self):
        chain = Chain(4)
        for b in chain.carrier:
            assert leq(F(0), b, chain)

    def test_reflexive(self):
        chain = Chain(4)
        for a in chain.carrier:
            assert leq(a, a, chain)

    def test_strict_example(self):
        assert not leq(F(1), F(1, 2), Chain(3))

    def test_agrees_with_numeric_order(self):
        chain = Chain(6)
        for a, b in itertools.product(chain.carrier, repeat=2):
            assert leq(a, b, chain) == (a <= b)


class TestInterpolantSearch:
    def test_common_atom_found(self):
        split = VocabSplit(frozenset({"p", "q"}), frozenset({"p", "r"}))
        out = interpolant_search(Odot(P, Q), Oplus(P, R), split, depth=4)
        assert out.found and out.interpolant == P

    def test_self_interpolation(self):
        split = VocabSplit(frozenset({"p"}), frozenset({"p"}))
        out = interpolant_search(P, P, split, depth=3)
        assert out.found and out.interpolant == P

    def test_premise_not_entailed(self):
        split = VocabSplit(frozenset({"p"}), frozenset({"q"}))
        with pytest.raises(PremiseNotEntailed):
            interpolant_search(P, Q, split, depth=3)

    def test_found_interpolants_independently_verified(self):
        # the search-side evaluator and the model-based one must agree on
        # every published witness, across a batch of boolean pairs
        rng = random.Random(6)
        from mvlogic.interlab import _candidate_formulas
        pool_a = list(_candidate_formulas(frozenset({"p", "q"}), 3))
        pool_b = list(_candidate_formulas(frozenset({"q", "r"}), 3))
        split = VocabSplit(frozenset({"p", "q"}), frozenset({"q", "r"}))
        checked = 0
        for _ in range(200):
            a = pool_a[rng.randrange(len(pool_a))]
            b = pool_b[rng.randrange(len(pool_b))]
            try:
                out = interpolant_search(a, b, split, depth=5)
            except PremiseNotEntailed:
                continue
            if out.found:
                checked += 1
                c = out.interpolant
                assert predicates_of(c) <= {"q"}
                assert not entails([], Implies(a, c), PROPS, 1, 2).refuted
                assert not entails([], Implies(c, b), PROPS, 1, 2).refuted
        assert checked > 20

    def test_not_found_is_bounded_verdict(self):
        # over the three-valued chain no size-1 candidate sits between
        # p(*)(q(*)q) and (q(*)q)(+)r, but q(*)q itself does at size 3
        split = VocabSplit(frozenset({"p", "q"}), frozenset({"q", "r"}))
        a = Odot(P, Odot(Q, Q))
        b = Oplus(Odot(Q, Q), R)
        shallow = interpolant_search(a, b, split, depth=1, chain_n=3)
        assert isinstance(shallow, NotFoundWithin) and shallow.depth == 1
        deeper = interpolant_search(a, b, split, depth=3, chain_n=3)
        assert deeper.found and deeper.interpolant == Odot(Q, Q)

    def test_bounded_model_scope(self):
        lang = LanguageSpec(num_vars=3, reserve=1,
                            predicates=(("p", 1), ("q", 1)))
        a = Atom("q", ("v0",))
        b = Oplus(Atom("q", ("v0",)), Atom("p", ("v0",)))
        split = VocabSplit(frozenset({"q"}), frozenset({"p", "q"}))
        out = interpolant_search(a, b, split, depth=2, chain_n=2,
                                 scope=("bounded-model", 2), language=lang)
        assert out.found


class TestHenkin:
    def test_demo_algebra_succeeds(self, henkin_demo_algebra):
        algebra, g = henkin_demo_algebra
        hf = henkin_filter_build(algebra, g)
        assert isinstance(hf, HenkinFilter)
        assert g in hf.members
        # every logged witness really is in the filter
        dom = tuple(sorted(algebra.index_set))
        for w in hf.witnesses:
            repl = FinTransformation.replacement(dom, w.index, w.chosen)
            assert algebra.subst_el(repl, w.element) in hf.members
            if w.spare:
                assert w.chosen not in dimension_set(algebra, w.element)

    def test_constants_algebra_vacuous(self):
        algebra = build_generated((0, 1), 2, Chain(2), [], "full",
                                  "powerset", cap=40)
        hf = henkin_filter_build(algebra, algebra.one)
        assert isinstance(hf, HenkinFilter)
        assert hf.members == frozenset({algebra.one})

    def test_single_index_exhausts(self):
        g = coordinate_generator(1, 2, 0)
        algebra = build_generated((0,), 2, Chain(2), [g], "full",
                                  "powerset", cap=40)
        out = henkin_filter_build(algebra, g)
        assert isinstance(out, Exhausted)
        assert out.examined >= 1

    def test_zero_element_rejected(self):
        algebra = build_generated((0, 1), 2, Chain(2), [], "full",
                                  "powerset", cap=40)
        with pytest.raises(ZeroElement):
            henkin_filter_build(algebra, algebra.zero)


class TestRepresentation:
    def test_demo_audit_passes(self, henkin_demo_algebra):
        algebra, g = henkin_demo_algebra
        hf = henkin_filter_build(algebra, g)
        psi, audit = representation_map(algebra, hf)
        assert audit.passed
        clauses = {c.clause for c in audit.results}
        assert {"unit-0", "unit-1", "neg", "oplus", "odot", "subst-action",
                "cyl-sup", "nonzero-at-identity"} <= clauses

    def test_constants_algebra_injective(self):
        chain = Chain(3)
        consts = [tuple(r for _ in range(4)) for r in chain.carrier]
        algebra = build_generated((0, 1), 2, chain, consts, "full",
                                  "powerset", cap=40)
        hf = henkin_filter_build(algebra, algebra.one)
        psi, audit = representation_map(algebra, hf)
        assert audit.passed
        images = {psi[p] for p in algebra.carrier}
        assert len(images) == len(algebra.carrier)

    def test_psi_of_one_is_one(self, henkin_demo_algebra):
        algebra, g = henkin_demo_algebra
        hf = henkin_filter_build(algebra, g)
        psi, _ = representation_map(algebra, hf)
        assert set(psi[algebra.one]) == {F(1)}
        assert set(psi[algebra.zero]) == {F(0)}


class TestEta:
    def test_variable_clause(self):
        assert eta_translate(TermVar(0), 2) == Atom("p0", ("v0", "v1"))

    def test_constant_clauses(self):
        assert eta_translate(TermZero(), 2) == BOTTOM
        assert eta_translate(TermOne(), 2) == TOP

    def test_cylinder_clause(self):
        phi = eta_translate(TermCyl(1, TermVar(0)), 2)
        assert phi == Exists(frozenset({"v1"}), Atom("p0", ("v0", "v1")))

    def test_random_agreement(self):
        lang = LanguageSpec(num_vars=4, reserve=1,
                            predicates=(("p0", 2), ("p1", 2)))
        chain = Chain(3)
        rng = random.Random(7)
        maps = [FinTransformation((0, 1), v)
                for v in itertools.product((0, 1), repeat=2)]

        def random_term(depth):
            if depth == 0 or rng.random() < 0.3:
                roll = rng.random()
                if roll < 0.1:
                    return TermZero()
                if roll < 0.2:
                    return TermOne()
                return TermVar(rng.randrange(2))
            kind = rng.randrange(5)
            if kind == 0:
                return TermNeg(random_term(depth - 1))
            if kind == 1:
                return TermOplus(random_term(depth - 1), random_term(depth - 1))
            if kind == 2:
                return TermOdot(random_term(depth - 1), random_term(depth - 1))
            if kind == 3:
                return TermCyl(rng.randrange(2), random_term(depth - 1))
            return TermSub(maps[rng.randrange(4)], random_term(depth - 1))

        for _ in range(150):
            model = random_model(rng, lang, 2, chain)
            assert eta_agreement_check(random_term(4), model)

    def test_capture_prone_substitution_agrees(self):
        # s_[0|1] over a cylinder is the case raw substitution mistranslates
        lang = LanguageSpec(num_vars=4, reserve=1, predicates=(("p0", 2),))
        chain = Chain(2)
        table = {(0, 0): F(0), (0, 1): F(1), (1, 0): F(1), (1, 1): F(0)}
        model = Model(lang, 2, chain, {"p0": table})
        repl = FinTransformation.from_dict({0: 1}, (0, 1))
        term = TermSub(repl, TermCyl(0, TermVar(0)))
        assert eta_agreement_check(term, model)
