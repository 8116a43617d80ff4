"""Rational Pavelka extension: truth-constant-enriched algebras, the
constant compatibility laws, graded degrees of membership with their dual
forms, quantifier invariance of constants, and the graded representation
map built on a Henkin filter."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .mv_core import Chain, Filter, ONE, ZERO
from .interlab import HenkinFilter, ClauseResult, RepresentationAudit


@dataclass(frozen=True)
class PavelkaAlgebra:
    """An algebra together with truth constants indexed by a finite chain.

    base is any finite MV-ops carrier (a chain, or the MV view of a
    functional polyadic algebra); constants maps each chain value r to the
    carrier element playing r-bar. The compatibility laws are checked by
    constants_check, not at construction, so corrupted instances can be
    built for mutation tests.
    """

    base: object
    chain: Chain
    constants: tuple  # sorted ((r, element), ...)

    @classmethod
    def make(cls, base, chain, constants):
        return cls(base, chain, tuple(sorted(constants.items())))

    @classmethod
    def full_chain(cls, chain):
        """The chain over itself with every value its own constant."""
        return cls.make(chain, chain, {r: r for r in chain.carrier})

    def constant(self, r):
        table = dict(self.constants)
        if r not in table:
            raise KeyError(f"no constant for {r}")
        return table[r]

    @property
    def levels(self):
        return tuple(r for r, _ in self.constants)


@dataclass(frozen=True)
class GradedContext:
    algebra: PavelkaAlgebra
    filter: Filter

    def __post_init__(self):
        if not self.filter.is_proper:
            raise ValueError("graded degrees need a proper filter")


@dataclass(frozen=True)
class LawResult:
    law: str
    holds: bool
    witness: tuple | None = None


@dataclass(frozen=True)
class PavelkaReport:
    results: tuple

    @property
    def passed(self):
        return all(r.holds for r in self.results)

    def failures(self):
        return [r for r in self.results if not r.holds]


def constants_check(pav):
    """0-bar = 0, (r (+) s)-bar = r-bar (+) s-bar, (~r)-bar = ~(r-bar)."""
    base, chain = pav.base, pav.chain
    results = []
    zero_ok = pav.constant(ZERO) == base.zero
    results.append(LawResult("zero-constant", zero_ok,
                             None if zero_ok else (ZERO,)))
    witness = None
    for r, s in itertools.product(pav.levels, repeat=2):
        if base.oplus(pav.constant(r), pav.constant(s)) \
                != pav.constant(chain.oplus(r, s)):
            witness = (r, s)
            break
    results.append(LawResult("oplus-compatible", witness is None, witness))
    witness = None
    for r in pav.levels:
        if base.neg(pav.constant(r)) != pav.constant(chain.neg(r)):
            witness = (r,)
            break
    results.append(LawResult("neg-compatible", witness is None, witness))
    return PavelkaReport(tuple(results))


def degree(a, ctx):
    """[a]_H: the largest constant level r with r-bar -> a in the filter."""
    base = ctx.algebra.base
    members = ctx.filter.members
    best = ZERO
    for r in ctx.algebra.levels:
        if base.implies(ctx.algebra.constant(r), a) in members and r > best:
            best = r
    return best


def degree_dual(a, ctx):
    """The dual form: the least r with a -> r-bar in the filter."""
    base = ctx.algebra.base
    members = ctx.filter.members
    best = ONE
    for r in ctx.algebra.levels:
        if base.implies(a, ctx.algebra.constant(r)) in members and r < best:
            best = r
    return best


def degree_forms_check(pav, flt, elements=None):
    """Sup-form degree equals inf-form degree for every element."""
    ctx = GradedContext(pav, flt)
    els = elements if elements is not None else pav.base.carrier
    witness = None
    for a in els:
        if degree(a, ctx) != degree_dual(a, ctx):
            witness = (a, degree(a, ctx), degree_dual(a, ctx))
            break
    return PavelkaReport((LawResult("degree-sup-equals-inf",
                                    witness is None, witness),))


def pavelka_lemma_check(pav, flt):
    """r-bar in P iff r = 1, and r-bar/P <= s-bar/P iff r <= s."""
    base = pav.base
    members = flt.members
    results = []
    witness = None
    for r in pav.levels:
        if (pav.constant(r) in members) != (r == ONE):
            witness = (r,)
            break
    results.append(LawResult("membership-iff-one", witness is None, witness))
    witness = None
    for r, s in itertools.product(pav.levels, repeat=2):
        quotient_le = base.implies(pav.constant(r), pav.constant(s)) in members
        if quotient_le != (r <= s):
            witness = (r, s)
            break
    results.append(LawResult("quotient-order-matches", witness is None,
                             witness))
    return PavelkaReport(tuple(results))


def pavelka_quantifier_check(pav, algebra):
    """Existential invariance of constants: c_J r-bar = r-bar for all J."""
    witness = None
    checked = 0
    for r in pav.levels:
        rbar = pav.constant(r)
        for j in algebra.scopes:
            checked += 1
            if algebra.cyl_el(j, rbar) != rbar:
                witness = (r, sorted(j))
                break
        if witness:
            break
    return PavelkaReport((LawResult(f"exists-r-equals-r({checked} cases)",
                                    witness is None, witness),))


def constants_as_elements(algebra):
    """The chain constants realized as constant functions of the algebra."""
    size = len(algebra.assignments)
    table = {}
    for r in algebra.chain.carrier:
        el = tuple(r for _ in range(size))
        if algebra.contains(el):
            table[r] = el
    return table


def functional_pavelka(algebra, require_full=True):
    """View a functional set algebra as a Pavelka algebra.

    The constants are the chain values realized as constant functions in
    the carrier; with require_full every chain value must be realized.
    """
    table = constants_as_elements(algebra)
    if require_full and len(table) != algebra.chain.n:
        missing = [r for r in algebra.chain.carrier if r not in table]
        raise ValueError(f"carrier lacks constant functions for {missing}")
    return PavelkaAlgebra.make(algebra.mv_view(), algebra.chain, table)


def pavelka_representation(algebra, pav, hf, transformations=None):
    """psi(p)(x) = [s_x p] by graded degree; audited exhaustively.

    Clauses: preservation of (+), (*), ~; psi(r-bar) constant at r; the
    cylinder supremum [s_x c_i p] = sup over k-variants; and unit images.
    """
    if not isinstance(hf, HenkinFilter):
        raise TypeError("the graded representation is built on a HenkinFilter")
    view = algebra.mv_view()
    flt = Filter(view, hf.members)
    ctx = GradedContext(pav, flt)
    vs = tuple(transformations) if transformations is not None \
        else algebra.transformations
    chain = algebra.chain
    els = algebra.elements()

    psi = {p: tuple(degree(algebra.subst_el(x, p), ctx) for x in vs)
           for p in els}

    results = []

    def audit(clause, pairs):
        for lhs, rhs, witness in pairs:
            if lhs != rhs:
                results.append(ClauseResult(clause, False, witness))
                return
        results.append(ClauseResult(clause, True))

    audit("unit-0", [(psi[algebra.zero], tuple(ZERO for _ in vs), ("0",))])
    audit("unit-1", [(psi[algebra.one], tuple(ONE for _ in vs), ("1",))])
    audit("constants", ((psi[pav.constant(r)], tuple(r for _ in vs), (r,))
                        for r in pav.levels))
    audit("neg", ((psi[algebra.neg(p)],
                   tuple(chain.neg(v) for v in psi[p]), (p,)) for p in els))
    audit("oplus", ((psi[algebra.oplus(p, q)],
                     tuple(chain.oplus(u, v) for u, v in zip(psi[p], psi[q])),
                     (p, q)) for p, q in itertools.product(els, repeat=2)))
    audit("odot", ((psi[algebra.odot(p, q)],
                    tuple(chain.odot(u, v) for u, v in zip(psi[p], psi[q])),
                    (p, q)) for p, q in itertools.product(els, repeat=2)))

    singles = [next(iter(j)) for j in algebra.scopes if len(j) == 1]

    def cyl_pairs():
        for k in singles:
            neighbour_ids = []
            for x in vs:
                neighbour_ids.append([
                    yi for yi, y in enumerate(vs)
                    if all(y.apply(i) == x.apply(i)
                           for i in algebra.index_set if i != k)])
            for p in els:
                cp = psi[algebra.cyl_el(frozenset({k}), p)]
                for xi in range(len(vs)):
                    yield (cp[xi],
                           max(psi[p][yi] for yi in neighbour_ids[xi]),
                           (k, p, vs[xi]))

    audit("cyl-sup", cyl_pairs())
    return psi, RepresentationAudit(tuple(results))
