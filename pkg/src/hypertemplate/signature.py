"""Signature functions for parameter types, and the agreement test.

A parameter type (an equality pattern plus k-1 leaf stems) is encoded as a
sequence of natural-number codes: position 0 codes the equality pattern,
position m >= 1 codes, as a bitmask over the variables, which of them sit
under the m-th predicate in a canonical enumeration.  Agreement of two
types on a prefix of these codes pins their leaf data down to a tree level,
which is what makes the consistency-preservation test meaningful.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import inf
from random import Random
from typing import Optional, Sequence, Union

from .errors import InputError
from .template import Template
from .tree import Stem, require_in_tree
from .typecheck import PositiveTypeSpec, decide_positive_type, m_star

# -- canonical enumerations ------------------------------------------------


def equality_patterns(variables: int) -> list[tuple[int, ...]]:
    """All equivalence relations on {0..variables-1} as restricted growth
    strings, discrete relation first, then by decreasing class count, ties
    broken lexicographically.

    Published table (k <= 4):
      1 var: (0,)
      2 vars: (0,1) (0,0)
      3 vars: (0,1,2) (0,0,1) (0,1,0) (0,1,1) (0,0,0)
    """
    if variables < 1:
        raise InputError("need at least one variable")

    out: list[tuple[int, ...]] = []

    def grow(prefix: list[int], top: int):
        if len(prefix) == variables:
            out.append(tuple(prefix))
            return
        for c in range(top + 2):
            grow(prefix + [c], max(top, c))

    grow([], -1)
    out.sort(key=lambda p: (-len(set(p)), p))
    return out


def pattern_index(pattern: Sequence[int]) -> int:
    pats = equality_patterns(len(pattern))
    try:
        return pats.index(tuple(pattern))
    except ValueError:
        raise InputError(f"{tuple(pattern)} is not a canonical restricted growth string")


def predicate_enumeration(t: Template, depth: int) -> list[Stem]:
    """All tree stems of length 1..depth, ordered by length then
    lexicographically: the canonical predicate order."""
    if depth < 1:
        raise InputError(f"depth must be >= 1, got {depth}")
    out: list[Stem] = []
    for n in range(1, depth + 1):
        out.extend(
            tuple(s) for s in product(*(range(t.level_size(l)) for l in range(n)))
        )
    return out


def predicate_count(t: Template, depth: int) -> int:
    """Number of enumerated predicates of length <= depth."""
    total = 0
    prod = 1
    for n in range(1, depth + 1):
        prod *= t.level_size(n - 1)
        total += prod
    return total


def coverage_level(t: Template, n: int) -> int:
    """Largest tree level L such that all predicates of length <= L have
    signature index < n (index 0 is the equality code)."""
    L = 0
    while predicate_count(t, L + 1) <= n - 1:
        L += 1
    return L


# -- signatures ------------------------------------------------------------


@dataclass(frozen=True)
class ParamType:
    """The empty-set type of one parameter tuple: k-1 leaf stems of a
    common length, plus the equality pattern among the variables.
    Variables declared equal must carry identical stems."""

    stems: tuple[Stem, ...]
    equality: tuple[int, ...] = ()

    def __post_init__(self):
        v = len(self.stems)
        eq = self.equality if self.equality else tuple(range(v))
        object.__setattr__(self, "equality", eq)
        if len(eq) != v:
            raise InputError("equality pattern length must match variable count")
        for i in range(v):
            for j in range(i + 1, v):
                if eq[i] == eq[j] and self.stems[i] != self.stems[j]:
                    raise InputError("equal variables must carry identical stems")

    @property
    def stem_length(self) -> int:
        return len(self.stems[0]) if self.stems else 0


@dataclass(frozen=True)
class SignatureFunction:
    values: tuple[int, ...]
    depth: int  # tree depth covered by the enumeration

    def restrict(self, n: int) -> tuple[int, ...]:
        return self.values[:n]


def f_signature(t: Template, ptype: ParamType, depth: int) -> SignatureFunction:
    """Code the type: value 0 is the equality-pattern index, value m >= 1
    is the bitmask of variables whose stem extends the m-th predicate."""
    if len(ptype.stems) != t.arity - 1:
        raise InputError(f"expected {t.arity - 1} stems, got {len(ptype.stems)}")
    stems = [require_in_tree(t, s, "parameter stem") for s in ptype.stems]
    if any(len(s) < depth for s in stems):
        raise InputError(f"stems must have length >= {depth} to answer all predicates")
    values = [pattern_index(ptype.equality)]
    for psi in predicate_enumeration(t, depth):
        mask = 0
        for j, s in enumerate(stems):
            if s[: len(psi)] == psi:
                mask |= 1 << j
        values.append(mask)
    return SignatureFunction(tuple(values), depth)


# -- the agreement test ----------------------------------------------------


@dataclass(frozen=True)
class SearchBudget:
    stem_depth: int = 3
    families: int = 300
    resamples: int = 50
    seed: int = 0


Family = tuple[ParamType, ...]


@dataclass(frozen=True)
class OplusCounterexample:
    consistent_family: Family
    inconsistent_family: Family
    agreement: int


@dataclass(frozen=True)
class OplusResult:
    s: int
    n: int
    holds_up_to_budget: bool
    counterexample: Optional[OplusCounterexample]
    families_tried: int
    analytic: bool = False  # True when holding is proved, not just unrefuted


def family_consistent(t: Template, family: Family) -> bool:
    """Whether the s positive instances over these parameter tuples form a
    joint type.  A tuple whose pattern merges two variables can never head
    a positive instance (the edge relation is irreflexive), so such types
    fall outside the admissible set and the family is rejected."""
    for pt in family:
        eq = pt.equality
        if len(set(eq)) < len(eq):
            return False
    params = tuple(pt.stems for pt in family)
    length = max((pt.stem_length for pt in family), default=1)
    spec = PositiveTypeSpec(params=params)
    depth = max(length, m_star(t, max(1, len(family))) + 1)
    return decide_positive_type(t, spec, depth).consistent


def _sample_type(t: Template, depth: int, rng: Random) -> ParamType:
    stem = lambda: tuple(rng.randrange(t.level_size(l)) for l in range(depth))
    stems = tuple(stem() for _ in range(t.arity - 1))
    return ParamType(stems=stems)


def _sample_matching(
    t: Template, base: ParamType, n: int, depth: int, rng: Random, tries: int
) -> Optional[ParamType]:
    """A type agreeing with base on signature indices < n, random beyond."""
    if n <= 0:
        return _sample_type(t, depth, rng)
    base_sig = f_signature(t, base, depth).restrict(n)
    lc = coverage_level(t, n)
    for _ in range(tries):
        stems = []
        for s in base.stems:
            tail = tuple(rng.randrange(t.level_size(l)) for l in range(lc, depth))
            stems.append(s[:lc] + tail)
        cand = ParamType(stems=tuple(stems), equality=base.equality)
        if f_signature(t, cand, depth).restrict(n) == base_sig:
            return cand
    return None


def oplus_test(t: Template, s: int, n: int, budget: SearchBudget) -> OplusResult:
    """Search for two families of s parameter types, signature-matched up
    to index n, where the first family's positive instances are jointly
    consistent and the second's are not.

    Finding one refutes the agreement property at (s, n) exactly; finding
    none is only "holds up to budget", except on templates where every
    family is consistent (complete everywhere) or where n already pins
    types past the stabilization level, which are proved analytically."""
    if s < 1 or n < 0:
        raise InputError("need s >= 1 and n >= 0")
    analytic = t.is_complete() or predicate_count(t, m_star(t, s)) + 1 <= n
    rng = Random(budget.seed)
    tried = 0
    for _ in range(budget.families):
        tried += 1
        fam_a = tuple(_sample_type(t, budget.stem_depth, rng) for _ in range(s))
        if not family_consistent(t, fam_a):
            continue
        fam_b = []
        for pt in fam_a:
            match = _sample_matching(t, pt, n, budget.stem_depth, rng, budget.resamples)
            if match is None:
                break
            fam_b.append(match)
        if len(fam_b) != s:
            continue
        fam_b = tuple(fam_b)
        if not family_consistent(t, fam_b):
            return OplusResult(s, n, False, OplusCounterexample(fam_a, fam_b, n), tried)
    return OplusResult(s, n, True, None, tried, analytic=analytic)


# -- F and G ---------------------------------------------------------------

INFINITE = inf


@dataclass(frozen=True)
class FEstimate:
    s: int
    lower_bound: int  # exact: counterexamples certify every smaller n fails
    upper_bound: int  # budget-relative unless exact
    exact: bool
    analytic_bound: int
    certificates: tuple[OplusCounterexample, ...]  # one per refuted n, ascending


def analytic_f_bound(t: Template, s: int) -> int:
    """Signature indices through the stabilization level for s instances
    suffice for agreement to preserve consistency."""
    return predicate_count(t, m_star(t, s)) + 1


def F_estimate(t: Template, s: int, budget: SearchBudget) -> FEstimate:
    """Least n at which no agreement counterexample is found, with exact
    lower-bound certificates for every smaller n."""
    if t.is_complete():
        return FEstimate(s, 0, 0, True, 0, ())
    bound = analytic_f_bound(t, s)
    certs = []
    for n in range(bound + 1):
        res = oplus_test(t, s, n, budget)
        if res.counterexample is None:
            return FEstimate(s, n, n, res.analytic, bound, tuple(certs))
        certs.append(res.counterexample)
    return FEstimate(s, bound, bound, True, bound, tuple(certs))


@dataclass(frozen=True)
class GEstimate:
    n: int
    value: Union[int, float]  # INFINITE on the analytic path
    exact: bool
    analytic_lower: int
    certificate: Optional[OplusCounterexample]  # refutes value + 1 when present


def analytic_g_lower(t: Template, n: int) -> int:
    """min f over levels from the coverage level of n on: that many
    instances survive any agreement-preserving replacement."""
    L = coverage_level(t, n)
    lo = t.f_value(t.prefix_len)  # tail arities are nondecreasing
    for l in range(L, t.prefix_len):
        lo = min(lo, t.f_value(l))
    return lo


def G_estimate(t: Template, n: int, budget: SearchBudget, s_cap: int = 8) -> GEstimate:
    """Largest s whose agreement test at n finds no counterexample, capped
    at s_cap; infinite on complete templates."""
    if t.is_complete():
        return GEstimate(n, INFINITE, True, s_cap, None)
    lower = analytic_g_lower(t, n)
    value = 0
    for s in range(1, s_cap + 1):
        res = oplus_test(t, s, n, budget)
        if res.counterexample is not None:
            return GEstimate(n, max(value, lower), value >= lower, lower, res.counterexample)
        value = s
    return GEstimate(n, max(value, lower), False, lower, None)


def analytic_g_table(t: Template, n_max: int) -> list[Union[int, float]]:
    """Analytic capacity table G(0..n_max), all-infinite for complete
    templates.  Sound: these counts are guaranteed, never optimistic."""
    if t.is_complete():
        return [INFINITE] * (n_max + 1)
    return [analytic_g_lower(t, n) for n in range(n_max + 1)]
