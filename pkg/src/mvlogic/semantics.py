"""Fuzzy structures and the Tarskian truth-value recursion.

Models carry a finite domain and a finite chain of truth values, so the
quantifier suprema and infima are exact lattice operations. Entailment is a
bounded semi-decision: an exhaustive search over all models up to a domain
size, never a claim about all structures.
"""

from __future__ import annotations

import itertools
import json
import random

from .mv_core import Chain, CarrierError, ONE, ZERO, parse_value, format_value
from . import syntax
from .syntax import (
    Atom, Top, Bottom, Oplus, Odot, Implies, Neg, Forall, Exists,
    free_vars, predicates_of,
)


class MissingTableError(KeyError):
    """The model has no table for a predicate the formula mentions."""


class SearchTooLarge(ValueError):
    """Model enumeration would exceed the configured cap."""


class Model:
    """Finite fuzzy structure: domain {0..k-1}, chain values, total tables."""

    def __init__(self, language, domain_size, chain, tables):
        if domain_size < 1:
            raise ValueError("domain must be nonempty")
        self.language = language
        self.domain_size = domain_size
        self.chain = chain
        self.tables = {}
        for pred, table in tables.items():
            arity = language.arity(pred)
            full = {}
            for point in itertools.product(range(domain_size), repeat=arity):
                if point not in table:
                    raise ValueError(f"table for {pred} misses {point}")
                value = table[point]
                if not chain.contains(value):
                    raise CarrierError(
                        f"{pred}{point} = {value} is not a {chain!r} value")
                full[point] = value
            self.tables[pred] = full

    @property
    def domain(self):
        return range(self.domain_size)

    def lookup(self, pred, point):
        if pred not in self.tables:
            raise MissingTableError(pred)
        return self.tables[pred][point]

    def to_json(self):
        return {
            "domain": self.domain_size,
            "chain": self.chain.n,
            "predicates": {
                pred: {
                    "arity": self.language.arity(pred),
                    "table": {
                        "(" + ",".join(map(str, pt)) + ")": format_value(v)
                        for pt, v in sorted(table.items())
                    },
                }
                for pred, table in sorted(self.tables.items())
            },
        }

    @classmethod
    def from_json(cls, data, language=None):
        preds = data["predicates"]
        if language is None:
            language = syntax.LanguageSpec(
                num_vars=max(4, max((p["arity"] for p in preds.values()),
                                    default=0) + 2),
                reserve=1,
                predicates=tuple((name, p["arity"])
                                 for name, p in sorted(preds.items())),
            )
        tables = {}
        for name, p in preds.items():
            table = {}
            for key, text in p["table"].items():
                stripped = key.strip().lstrip("(").rstrip(")")
                point = tuple(int(x) for x in stripped.split(",") if x != "")
                table[point] = parse_value(text)
            tables[name] = table
        return cls(language, data["domain"], Chain(data["chain"]), tables)


class Assignment:
    """Total valuation of variables, finitely represented via a default."""

    def __init__(self, mapping=None, default=0):
        self.mapping = dict(mapping or {})
        self.default = default

    def get(self, var):
        return self.mapping.get(var, self.default)

    def updated(self, pairs):
        new = dict(self.mapping)
        new.update(pairs)
        return Assignment(new, self.default)

    def agrees_off(self, other, block):
        keys = set(self.mapping) | set(other.mapping)
        return all(self.get(v) == other.get(v)
                   for v in keys if v not in block)


def eval_formula(phi, model, s):
    """The truth value of phi under the assignment, by structural recursion.

    Quantifiers enumerate variants of s on the block's free variables only,
    which keeps the sup/inf finite and exact.
    """
    chain = model.chain
    if isinstance(phi, Atom):
        point = tuple(s.get(v) for v in phi.args)
        return model.lookup(phi.pred, point)
    if isinstance(phi, Top):
        return ONE
    if isinstance(phi, Bottom):
        return ZERO
    if isinstance(phi, Neg):
        return chain.neg(eval_formula(phi.body, model, s))
    if isinstance(phi, Oplus):
        return chain.oplus(eval_formula(phi.left, model, s),
                           eval_formula(phi.right, model, s))
    if isinstance(phi, Odot):
        return chain.odot(eval_formula(phi.left, model, s),
                          eval_formula(phi.right, model, s))
    if isinstance(phi, Implies):
        return chain.implies(eval_formula(phi.left, model, s),
                             eval_formula(phi.right, model, s))
    if isinstance(phi, (Forall, Exists)):
        relevant = sorted(phi.block & free_vars(phi.body))
        pick = max if isinstance(phi, Exists) else min
        if not relevant:
            return eval_formula(phi.body, model, s)
        values = (
            eval_formula(phi.body, model, s.updated(zip(relevant, choice)))
            for choice in itertools.product(model.domain, repeat=len(relevant))
        )
        return pick(values)
    raise TypeError(f"not a formula: {phi!r}")


def _assignments_over(model, variables):
    variables = sorted(variables)
    for choice in itertools.product(model.domain, repeat=len(variables)):
        yield Assignment(dict(zip(variables, choice)))


def is_valid(phi, model):
    """True iff the formula takes value 1 under every assignment.

    Scanning assignments of the free variables suffices: the value depends
    on nothing else (the dependency property, pinned by the tests).
    """
    return all(eval_formula(phi, model, s) == ONE
               for s in _assignments_over(model, free_vars(phi)))


def truth_degree(phi, model):
    """Infimum of the value over assignments of the free variables."""
    return min(eval_formula(phi, model, s)
               for s in _assignments_over(model, free_vars(phi)))


class RefutedBy:
    def __init__(self, model):
        self.model = model

    refuted = True

    def __repr__(self):
        return f"RefutedBy({self.model.to_json()})"


class NoCounterexampleUpTo:
    def __init__(self, max_domain, chain_n):
        self.max_domain = max_domain
        self.chain_n = chain_n

    refuted = False

    def __repr__(self):
        return f"NoCounterexampleUpTo(domain={self.max_domain}, chain={self.chain_n})"


def enumerate_models(language, predicates, domain_size, chain):
    """All models over the named predicates, in canonical table order."""
    preds = sorted(predicates)
    point_lists = [
        sorted(itertools.product(range(domain_size), repeat=language.arity(p)))
        for p in preds
    ]
    value_choices = [
        itertools.product(chain.carrier, repeat=len(points))
        for points in point_lists
    ]
    for combo in itertools.product(*value_choices):
        tables = {
            pred: dict(zip(points, values))
            for pred, points, values in zip(preds, point_lists, combo)
        }
        yield Model(language, domain_size, chain, tables)


def _model_count(language, predicates, max_domain, chain_n):
    total = 0
    for size in range(1, max_domain + 1):
        per = 1
        for p in predicates:
            per *= chain_n ** (size ** language.arity(p))
        total += per
    return total


def entails(gamma, phi, language, max_domain, chain_n, cap=500000):
    """Bounded entailment search over all models with |M| <= max_domain.

    Returns the canonically first countermodel (every gamma member valid,
    phi not) or the bounded no-counterexample verdict.
    """
    chain = Chain(chain_n)
    predicates = set(predicates_of(phi))
    for g in gamma:
        predicates |= predicates_of(g)
    predicates = sorted(predicates)
    total = _model_count(language, predicates, max_domain, chain_n)
    if total > cap:
        raise SearchTooLarge(f"{total} models exceed the cap of {cap}")
    for size in range(1, max_domain + 1):
        for model in enumerate_models(language, predicates, size, chain):
            if all(is_valid(g, model) for g in gamma) and not is_valid(phi, model):
                return RefutedBy(model)
    return NoCounterexampleUpTo(max_domain, chain_n)


def random_model(rng, language, max_size, chain, predicates=None):
    """Seeded model with uniformly random tables."""
    size = rng.randint(1, max_size)
    names = predicates if predicates is not None else [n for n, _ in
                                                       language.predicates]
    tables = {}
    for name in names:
        arity = language.arity(name)
        tables[name] = {
            point: chain.carrier[rng.randrange(chain.n)]
            for point in itertools.product(range(size), repeat=arity)
        }
    return Model(language, size, chain, tables)


def load_model(path, language=None):
    with open(path, "r", encoding="utf-8") as fh:
        return Model.from_json(json.load(fh), language)
