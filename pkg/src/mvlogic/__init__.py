"""Exact-arithmetic many-valued predicate logic toolkit.

Submodules: mv_core (algebras, filters, quotients), transform (index-set
transformations and richness checks), syntax (the formal language),
semantics (finite fuzzy models), calculus (Hilbert checker), polyadic
(MV polyadic algebras), interlab (interpolation and Henkin machinery),
pavelka (graded truth constants), cli (command-line front end).
"""

from .mv_core import (
    Chain,
    Filter,
    StandardRationals,
    TableAlgebra,
    check_mv_axioms,
    eval_basic,
    extend_to_maximal,
    filter_generate,
    quotient,
    residuum_by_maximization,
    tnorm_eval,
)
from .transform import (
    FinTransformation,
    OmegaMap,
    PRED,
    SUC,
    SemigroupSpec,
    check_strongly_rich,
    compose,
    semigroup_closure,
    support,
)
from .syntax import LanguageSpec, parse, render
from .semantics import Model, entails, eval_formula, is_valid, truth_degree
from .calculus import Proof, ProofStep, check_proof, soundness_audit
from .polyadic import (
    FunctionalSetAlgebra,
    audit_axioms,
    build_generated,
    cyl,
    dimension_set,
    minimal_support,
    neat_reduct,
    q_forall,
    subst,
    term_substitution,
)
from .interlab import (
    VocabSplit,
    eta_agreement_check,
    eta_translate,
    henkin_filter_build,
    interpolant_search,
    leq,
    representation_map,
)
from .pavelka import (
    GradedContext,
    PavelkaAlgebra,
    degree,
    pavelka_lemma_check,
    pavelka_quantifier_check,
    pavelka_representation,
)

__version__ = "0.1.0"
