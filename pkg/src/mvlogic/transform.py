"""Transformations of index sets.

Finite-table transformations, eventually-translational maps on the natural
numbers (the suc/pred family), composition, supports, point modification,
semigroup closure, and the strong-richness condition checks.
"""

from __future__ import annotations

from dataclasses import dataclass


class IndexSetMismatch(ValueError):
    """Composed or compared transformations live on different index sets."""


@dataclass(frozen=True)
class FinTransformation:
    """Total map on a finite ordered index set, stored as an aligned table."""

    domain: tuple
    values: tuple

    def __post_init__(self):
        if tuple(sorted(self.domain)) != self.domain:
            raise ValueError("domain must be sorted")
        if len(self.values) != len(self.domain):
            raise ValueError("value table must match the domain")
        dom = set(self.domain)
        for v in self.values:
            if v not in dom:
                raise ValueError(f"image point {v!r} escapes the index set")

    @classmethod
    def identity(cls, domain):
        dom = tuple(sorted(domain))
        return cls(dom, dom)

    @classmethod
    def from_dict(cls, mapping, domain=None):
        dom = tuple(sorted(domain if domain is not None
                           else set(mapping) | set(mapping.values())))
        return cls(dom, tuple(mapping.get(i, i) for i in dom))

    @classmethod
    def replacement(cls, domain, i, j):
        return cls.identity(domain).modify(i, j)

    @classmethod
    def transposition(cls, domain, i, j):
        t = cls.identity(domain)
        return FinTransformation(
            t.domain,
            tuple(j if x == i else i if x == j else x for x in t.domain),
        )

    def apply(self, i):
        return self.values[self.domain.index(i)]

    __call__ = apply

    def modify(self, i, j):
        if i not in self.domain or j not in self.domain:
            raise ValueError(f"{i!r} or {j!r} is outside the index set")
        pos = self.domain.index(i)
        vals = list(self.values)
        vals[pos] = j
        return FinTransformation(self.domain, tuple(vals))

    def as_dict(self):
        return dict(zip(self.domain, self.values))

    def is_injective(self):
        return len(set(self.values)) == len(self.values)

    def sort_key(self):
        return (0, self.domain, self.values)

    def __repr__(self):
        inside = ",".join(f"{i}->{v}" for i, v in zip(self.domain, self.values))
        return "{" + inside + "}"


@dataclass(frozen=True)
class OmegaMap:
    """Total map on the naturals: finite override plus a clamped shift tail.

    Outside the override the map is x -> max(x + shift, 0), so suc is
    shift +1, pred is shift -1, and the family is closed under composition.
    Normal form drops override entries the tail already produces, making
    structural equality canonical.
    """

    shift: int
    override: tuple

    def __post_init__(self):
        object.__setattr__(self, "_table", dict(self.override))

    @classmethod
    def make(cls, mapping, shift):
        norm = {}
        for k, v in mapping.items():
            if k < 0 or v < 0:
                raise ValueError("omega maps act on the naturals")
            if v != max(k + shift, 0):
                norm[k] = v
        return cls(shift, tuple(sorted(norm.items())))

    @classmethod
    def identity(cls):
        return cls(0, ())

    def apply(self, x):
        v = self._table.get(x)
        return v if v is not None else max(x + self.shift, 0)

    __call__ = apply

    def modify(self, i, j):
        table = dict(self.override)
        table[i] = j
        return OmegaMap.make(table, self.shift)

    def _max_key(self):
        return max((k for k, _ in self.override), default=-1)

    def in_range(self, m):
        """Exact membership of m in the image."""
        if any(v == m for _, v in self.override):
            return True
        overridden = self._table
        x = m - self.shift
        if x >= 0 and x not in overridden and max(x + self.shift, 0) == m:
            return True
        if m == 0 and self.shift < 0:
            for x in range(0, -self.shift + 1):
                if x not in overridden:
                    return True
        return False

    def co_range(self, upto):
        return [m for m in range(upto + 1) if not self.in_range(m)]

    def missing_values(self):
        """Finite complement of the range, exact.

        For shift >= 0 the tail covers everything from some point on; for
        shift < 0 it covers all of the naturals. Either way the complement
        is confined to a computable window.
        """
        window = self._max_key() + abs(self.shift) + 2
        window = max(window, max((v for _, v in self.override), default=0) + 1)
        return self.co_range(window)

    def sort_key(self):
        return (1, self.shift, self.override)

    def __repr__(self):
        if self == SUC:
            return "suc"
        if self == PRED:
            return "pred"
        if self.shift == 0 and not self.override:
            return "id"
        inside = ",".join(f"{k}->{v}" for k, v in self.override)
        return f"omega(shift={self.shift}" + (f", {{{inside}}})" if inside else ")")


IDENTITY_OMEGA = OmegaMap(0, ())
SUC = OmegaMap(1, ())
PRED = OmegaMap(-1, ())


def compose(f, g):
    """Pointwise f after g; results stay in normal form."""
    if isinstance(f, FinTransformation) and isinstance(g, FinTransformation):
        if f.domain != g.domain:
            raise IndexSetMismatch(f"{f.domain} vs {g.domain}")
        return FinTransformation(f.domain, tuple(f.apply(g.apply(i)) for i in f.domain))
    if isinstance(f, OmegaMap) and isinstance(g, OmegaMap):
        shift = f.shift + g.shift
        bound = max(
            g._max_key(),
            f._max_key() - g.shift,
            -g.shift,
            -f.shift - g.shift,
            0,
        ) + 2
        table = {x: f.apply(g.apply(x)) for x in range(bound + 1)}
        return OmegaMap.make(table, shift)
    raise IndexSetMismatch(
        f"cannot compose {type(f).__name__} with {type(g).__name__}")


def power(t, n):
    if n < 1:
        raise ValueError("powers start at 1")
    acc = t
    for _ in range(n - 1):
        acc = compose(acc, t)
    return acc


@dataclass(frozen=True)
class SupportInfo:
    """Finite support set, or the finite fixed set of an infinite support."""

    finite: bool
    points: frozenset

    def __repr__(self):
        kind = "moved" if self.finite else "infinite; fixed"
        return f"SupportInfo({kind}={sorted(self.points)})"


def support(t):
    if isinstance(t, FinTransformation):
        return SupportInfo(
            True, frozenset(i for i in t.domain if t.apply(i) != i))
    if isinstance(t, OmegaMap):
        if t.shift == 0:
            return SupportInfo(
                True, frozenset(k for k, v in t.override if v != k))
        fixed = {k for k, v in t.override if v == k}
        if t.shift < 0 and 0 not in dict(t.override):
            fixed.add(0)
        return SupportInfo(False, frozenset(fixed))
    raise TypeError(f"not a transformation: {t!r}")


def modify(t, i, j):
    """The point modification t[i|j]: agrees with t off i, sends i to j."""
    return t.modify(i, j)


@dataclass(frozen=True)
class SemigroupSpec:
    generators: tuple
    cap: int = 1000


@dataclass(frozen=True)
class ClosureResult:
    elements: tuple
    truncated: bool

    def __contains__(self, t):
        return t in set(self.elements)


def semigroup_closure(spec):
    """Least composition-closed superset of the generators.

    Breadth-first and deterministic; stops with truncated=True once the cap
    is reached, returning what was found so far in canonical order.
    """
    gens = []
    for g in spec.generators:
        if g not in gens:
            gens.append(g)
    if not gens:
        return ClosureResult((), False)
    kinds = {type(g) for g in gens}
    if len(kinds) > 1:
        raise IndexSetMismatch("generators mix transformation kinds")
    if kinds == {FinTransformation} and len({g.domain for g in gens}) > 1:
        raise IndexSetMismatch("generators live on different index sets")

    elements = list(gens)
    seen = set(gens)
    truncated = False
    i = 0
    while i < len(elements):
        t = elements[i]
        for u in list(elements):
            for cand in (compose(t, u), compose(u, t)):
                if cand not in seen:
                    if len(elements) >= spec.cap:
                        truncated = True
                        break
                    seen.add(cand)
                    elements.append(cand)
            if truncated:
                break
        if truncated:
            break
        i += 1
    ordered = tuple(sorted(seen, key=lambda t: t.sort_key()))
    return ClosureResult(ordered, truncated)


@dataclass(frozen=True)
class ConditionResult:
    name: str
    status: str  # "pass" | "fail" | "confirmed" | "unresolved" | "violated"
    detail: str = ""


@dataclass(frozen=True)
class RichnessReport:
    conditions: tuple
    supports: tuple  # per n: sorted list of supp(sigma^n o pi^n)
    closure_truncated: bool | None

    @property
    def passed(self):
        return all(c.status in ("pass", "confirmed", "unresolved")
                   for c in self.conditions)

    def failures(self):
        return [c for c in self.conditions if c.status in ("fail", "violated")]


def check_strongly_rich(sigma, pi, ambient=None, n_max=64, sample=8, ij_bound=3):
    """Check the section/retraction conditions for n = 1..n_max.

    Core conditions (retraction, non-surjectivity, finite supports inside
    the co-range of sigma^n) are exact on OmegaMaps. The two closure
    conditions quantify over a whole semigroup, so they are spot-checked on
    a capped closure sample when an ambient spec is supplied; a sample
    member missing from a truncated closure is reported as unresolved, not
    as a violation.
    """
    conditions = []

    missing = sigma.missing_values()
    conditions.append(ConditionResult(
        "range-not-everything",
        "pass" if missing else "fail",
        f"co-range sample {missing[:4]}" if missing else "sigma is surjective",
    ))

    supports = []
    sig_pow = sigma
    pi_pow = pi
    for n in range(1, n_max + 1):
        if n > 1:
            sig_pow = compose(sig_pow, sigma)
            pi_pow = compose(pi_pow, pi)
        retr = compose(pi_pow, sig_pow)
        conditions.append(ConditionResult(
            f"retraction-n{n}",
            "pass" if retr == IDENTITY_OMEGA else "fail",
            "" if retr == IDENTITY_OMEGA else f"pi^{n} o sigma^{n} = {retr!r}",
        ))
        comp = compose(sig_pow, pi_pow)
        info = support(comp)
        supports.append(tuple(sorted(info.points)) if info.finite else None)
        if not info.finite:
            conditions.append(ConditionResult(
                f"support-finite-n{n}", "fail", f"supp(sigma^{n} o pi^{n}) infinite"))
            continue
        conditions.append(ConditionResult(f"support-finite-n{n}", "pass"))
        stray = [m for m in info.points if sig_pow.in_range(m)]
        conditions.append(ConditionResult(
            f"support-outside-range-n{n}",
            "pass" if not stray else "fail",
            "" if not stray else f"{stray} lie inside Rg(sigma^{n})",
        ))

    truncated = None
    if ambient is not None:
        closure = semigroup_closure(ambient)
        truncated = closure.truncated
        in_closure = set(closure.elements)
        unresolved = "unresolved" if truncated else "violated"
        for name, t in (("sigma", sigma), ("pi", pi)):
            status = "confirmed" if t in in_closure else unresolved
            conditions.append(ConditionResult(f"closure-contains-{name}",
                                              status))
        for t in closure.elements[:sample]:
            for i in range(ij_bound):
                for j in range(ij_bound):
                    status = ("confirmed" if t.modify(i, j) in in_closure
                              else unresolved)
                    conditions.append(ConditionResult(
                        f"closure-modify[{i}|{j}]-{t!r}", status))
            conj = compose(sigma, compose(t, pi))
            fixed = conj
            for m in sigma.missing_values():
                fixed = fixed.modify(m, m)
            status = "confirmed" if fixed in in_closure else unresolved
            conditions.append(ConditionResult(f"closure-conjugate-{t!r}", status))

    return RichnessReport(tuple(conditions), tuple(supports), truncated)


def parse_transformation(text, domain=None):
    """Read the CLI literal syntax.

    id | suc | pred | [i|j] | [i,j] | {0->2,1->2} | f.g  (f after g).
    With a finite domain the named maps become finite tables; suc/pred are
    only meaningful on the naturals.
    """
    text = text.strip()
    parts = _split_compositions(text)
    if len(parts) > 1:
        result = parse_transformation(parts[-1], domain)
        for part in reversed(parts[:-1]):
            result = compose(parse_transformation(part, domain), result)
        return result

    if text == "id":
        return (FinTransformation.identity(domain) if domain is not None
                else IDENTITY_OMEGA)
    if text == "suc":
        if domain is not None:
            raise ValueError("suc is not a finite-set transformation")
        return SUC
    if text == "pred":
        if domain is not None:
            raise ValueError("pred is not a finite-set transformation")
        return PRED
    if text.startswith("[") and text.endswith("]"):
        body = text[1:-1]
        if "|" in body:
            i, j = (int(p) for p in body.split("|"))
            if domain is not None:
                return FinTransformation.replacement(domain, i, j)
            return OmegaMap.make({i: j}, 0)
        if "," in body:
            i, j = (int(p) for p in body.split(","))
            if domain is not None:
                return FinTransformation.transposition(domain, i, j)
            return OmegaMap.make({i: j, j: i}, 0)
        raise ValueError(f"bad bracket literal {text!r}")
    if text.startswith("{") and text.endswith("}"):
        mapping = {}
        body = text[1:-1].strip()
        if body:
            for chunk in body.split(","):
                src, _, dst = chunk.partition("->")
                mapping[int(src)] = int(dst)
        if domain is not None:
            return FinTransformation.from_dict(mapping, domain)
        return FinTransformation.from_dict(mapping)
    raise ValueError(f"cannot parse transformation literal {text!r}")


def _split_compositions(text):
    parts = []
    depth = 0
    start = 0
    for pos, ch in enumerate(text):
        if ch in "[{":
            depth += 1
        elif ch in "]}":
            depth -= 1
        elif ch == "." and depth == 0:
            parts.append(text[start:pos])
            start = pos + 1
    parts.append(text[start:])
    return [p.strip() for p in parts]
