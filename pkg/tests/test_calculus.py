import itertools
import random
from fractions import Fraction as F

import pytest

from mvlogic.calculus import (
    Accept, DEFAULT_AUDIT_LANGUAGE, MV_PROP_SCHEMAS, Proof, ProofStep, Reject,
    check_axiom_instance, check_proof, proof_from_json, proof_to_json,
    soundness_audit,
)
from mvlogic.mv_core import Chain
from mvlogic.semantics import Model, is_valid
from mvlogic.syntax import (
    Exists, Forall, Implies, LanguageSpec, Neg, Odot, Oplus, parse,
    random_formula, substitute, substitute_free,
)

LANG = LanguageSpec(num_vars=5, reserve=1,
                    predicates=(("p", 1), ("q", 1)))
CAPTURE = LanguageSpec(num_vars=5, reserve=1,
                       predicates=(("p", 1), ("s", 2)))


class TestAxiomInstances:
    def test_a5_accepted(self):
        body = parse("p(v0)", LANG)
        inst = Implies(Forall(frozenset({"v1"}), body), body)
        verdict = check_axiom_instance("A5", inst, LANG,
                                       data={"tau": {"v1": "v2"}})
        assert verdict.ok

    def test_a5_side_condition(self):
        body = Exists(frozenset({"v1"}), parse("s(v0,v1)", CAPTURE))
        inst = Implies(Forall(frozenset({"v0"}), body),
                       substitute_free({"v0": "v1"}, body))
        verdict = check_axiom_instance("A5", inst, CAPTURE,
                                       data={"tau": {"v0": "v1"}})
        assert not verdict.ok and "SideConditionViolated" in verdict.reason

    def test_a3_rejects_block_meeting_free_vars(self):
        a, b = parse("p(v0)", LANG), parse("q(v0)", LANG)
        inst = Implies(Forall(frozenset({"v0"}), Implies(a, b)),
                       Implies(a, Forall(frozenset({"v0"}), b)))
        verdict = check_axiom_instance("A3", inst, LANG)
        assert not verdict.ok and "SideConditionViolated" in verdict.reason

    def test_a3_accepted(self):
        a, b = parse("p(v0)", LANG), parse("q(v0)", LANG)
        inst = Implies(Forall(frozenset({"v1"}), Implies(a, b)),
                       Implies(a, Forall(frozenset({"v1"}), b)))
        assert check_axiom_instance("A3", inst, LANG).ok

    def test_a4_modes(self):
        a, b = parse("p(v0)", LANG), parse("q(v1)", LANG)
        inst = Implies(Forall(frozenset({"v1"}), Implies(a, b)),
                       Implies(Exists(frozenset({"v1"}), a), b))
        assert check_axiom_instance("A4", inst, LANG, mode="printed").ok
        strict = check_axiom_instance("A4", inst, LANG, mode="strict")
        assert not strict.ok  # v1 is free in the consequent

    def test_a2_accepted(self):
        a, b = parse("p(v0)", LANG), parse("q(v0)", LANG)
        core = Implies(a, b)
        bridge = Oplus(Neg(a), b)
        inst = Odot(Implies(core, bridge), Implies(bridge, core))
        assert check_axiom_instance("A2", inst, LANG).ok

    def test_mv_prop_schemas(self):
        a, b = parse("p(v0)", LANG), parse("q(v1)", LANG)
        l1 = Implies(a, Implies(b, a))
        verdict = check_axiom_instance("MV-PROP", l1, LANG)
        assert verdict.ok and verdict.schema == "L1"
        assert not check_axiom_instance("MV-PROP", Implies(a, b), LANG).ok

    def test_metavariable_consistency(self):
        a, b = parse("p(v0)", LANG), parse("q(v0)", LANG)
        broken = Implies(a, Implies(b, b))  # not A -> (B -> A)
        assert not check_axiom_instance("MV-PROP", broken, LANG).ok


def mp_proof():
    p, q = parse("p(v0)", LANG), parse("q(v0)", LANG)
    return Proof((p, Implies(p, q)), (
        ProofStep("Hyp", p, (0,)),
        ProofStep("Hyp", Implies(p, q), (1,)),
        ProofStep("MP", q, (0, 1)),
    ))


class TestProofChecking:
    def test_single_axiom_step(self):
        a, b = parse("p(v0)", LANG), parse("q(v0)", LANG)
        core = Implies(a, b)
        bridge = Oplus(Neg(a), b)
        inst = Odot(Implies(core, bridge), Implies(bridge, core))
        proof = Proof((), (ProofStep("Ax", inst, schema="A2"),))
        assert check_proof(proof, LANG).accepted

    def test_modus_ponens(self):
        assert check_proof(mp_proof(), LANG).accepted

    def test_shape_mismatch_rejected(self):
        p, q = parse("p(v0)", LANG), parse("q(v0)", LANG)
        proof = Proof((p,), (
            ProofStep("Hyp", p, (0,)),
            ProofStep("MP", q, (0, 0)),
        ))
        verdict = check_proof(proof, LANG)
        assert isinstance(verdict, Reject)
        assert verdict.step == 1 and "shape mismatch" in verdict.reason

    def test_forward_reference_rejected(self):
        p = parse("p(v0)", LANG)
        proof = Proof((p,), (ProofStep("MP", p, (0, 1)),))
        verdict = check_proof(proof, LANG)
        assert not verdict.accepted and "IndexError" in verdict.reason

    def test_generalization(self):
        p = parse("p(v0)", LANG)
        proof = Proof((p,), (
            ProofStep("Hyp", p, (0,)),
            ProofStep("Gen", Forall(frozenset({"v1"}), p), (0,),
                      block=frozenset({"v1"})),
        ))
        assert check_proof(proof, LANG).accepted

    def test_free_sub_inverse_rule(self):
        phi = parse("p(v0)", LANG)
        tau = {"v0": "v2"}
        proof = Proof((substitute_free(tau, phi),), (
            ProofStep("Hyp", substitute_free(tau, phi), (0,)),
            ProofStep("FreeSubInv", phi, (0,),
                      tau=tuple(sorted(tau.items()))),
        ))
        assert check_proof(proof, LANG).accepted

    def test_free_sub_inverse_requires_injectivity(self):
        phi = parse("p(v0) (+) q(v1)", LANG)
        tau = {"v0": "v2", "v1": "v2"}
        proof = Proof((substitute_free(tau, phi),), (
            ProofStep("Hyp", substitute_free(tau, phi), (0,)),
            ProofStep("FreeSubInv", phi, (0,),
                      tau=tuple(sorted(tau.items()))),
        ))
        verdict = check_proof(proof, LANG)
        assert not verdict.accepted and "one to one" in verdict.reason

    def test_sub_rule(self):
        phi = parse("E{v1} p(v1) (+) q(v0)", LANG)
        tau = {"v0": "v2", "v1": "v3"}
        image = substitute(tau, phi)
        proof = Proof((phi,), (
            ProofStep("Hyp", phi, (0,)),
            ProofStep("SubInv", image, (0,), tau=tuple(sorted(tau.items()))),
        ))
        assert check_proof(proof, LANG).accepted

    def test_monotone_under_hypothesis_extension(self):
        proof = mp_proof()
        extended = proof.hypotheses + (parse("q(v3)", LANG),)
        assert check_proof(proof, LANG, gamma=extended).accepted

    def test_acceptance_stable_under_renaming(self):
        # rename the whole proof through a permutation of the variables
        proof = mp_proof()
        perm = {"v0": "v1", "v1": "v0", "v2": "v3", "v3": "v2", "v4": "v4"}
        renamed = Proof(
            tuple(substitute(perm, h) for h in proof.hypotheses),
            tuple(ProofStep(s.rule, substitute(perm, s.formula), s.refs,
                            s.schema, frozenset(perm[v] for v in s.block),
                            tuple(sorted((perm[k], perm[v])
                                         for k, v in s.tau)), s.mode)
                  for s in proof.steps))
        assert check_proof(renamed, LANG).accepted

    def test_json_round_trip(self):
        proof = mp_proof()
        assert proof_from_json(proof_to_json(proof), LANG) == proof


class TestSoundness:
    def test_axiom_schemas_sound(self):
        for schema in ("MV-PROP", "A2", "A3", "A5", "A6"):
            report = soundness_audit(schema, 25, seed=0)
            assert report.passed, (schema, report.violations[:1])

    def test_a4_both_modes_sound(self):
        for mode in ("printed", "strict"):
            report = soundness_audit("A4", 25, seed=0, mode=mode)
            assert report.passed

    def test_rules_preserve_validity(self):
        for rule in ("MP", "Gen", "FreeSubInv", "SubInv"):
            report = soundness_audit(rule, 15, seed=0)
            assert report.passed, (rule, report.violations[:1])

    def test_mutated_a3_checker_is_caught(self):
        # with the side condition skipped the auditor must find violations
        report = soundness_audit("A3", 60, seed=0, skip_side_conditions=True)
        assert not report.passed

    def test_mutated_a5_checker_is_caught(self):
        report = soundness_audit("A5", 60, seed=4, skip_side_conditions=True,
                                 language=CAPTURE)
        assert not report.passed

    def test_capture_instance_semantically_invalid(self):
        # the concrete instance the A5 side condition exists to block
        body = Exists(frozenset({"v1"}), parse("s(v0,v1)", CAPTURE))
        inst = Implies(Forall(frozenset({"v0"}), body),
                       substitute_free({"v0": "v1"}, body))
        inequality = Model(CAPTURE, 2, Chain(2), {
            "s": {(0, 0): F(0), (0, 1): F(1), (1, 0): F(1), (1, 1): F(0)},
        })
        assert not is_valid(inst, inequality)
