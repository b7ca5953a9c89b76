"""The tree of level-wise vertex choices and its leaf stems.

A leaf stem is a finite tuple of vertex indices, one per level; full leaves
are never materialized.  Completion extends a stem level by level with the
least extension witness, so every leaf-valued result is deterministic.
"""

from __future__ import annotations

from itertools import product
from typing import Optional, Sequence

from .errors import (
    BudgetExhausted,
    InputError,
    InternalConsistencyError,
    PreconditionError,
)
from .template import Template

Stem = tuple[int, ...]


def in_tree(t: Template, stem: Sequence[int]) -> bool:
    """True iff every coordinate is within its level's vertex range."""
    return all(0 <= v < t.level_size(n) for n, v in enumerate(stem))


def require_in_tree(t: Template, stem: Sequence[int], what: str = "stem") -> Stem:
    stem = tuple(stem)
    if not in_tree(t, stem):
        raise InputError(f"{what} {stem} leaves the tree")
    return stem


def einfty_prefix(t: Template, stems: Sequence[Sequence[int]]) -> bool:
    """Finite-depth edge test: the k stems form an edge at every level of
    their common length.  Permutation invariant in the stems."""
    if len(stems) != t.arity:
        raise InputError(f"expected {t.arity} stems, got {len(stems)}")
    stems = [tuple(s) for s in stems]
    length = len(stems[0])
    if any(len(s) != length for s in stems):
        raise InputError("stems must share a common length")
    for s in stems:
        require_in_tree(t, s)
    for n in range(length):
        if not t.level_hypergraph(n).is_edge(tuple(s[n] for s in stems)):
            return False
    return True


def complete_to_leaf(
    t: Template,
    nu: Sequence[int],
    constraints: Sequence[Sequence[Sequence[int]]],
    target_len: int,
) -> Stem:
    """Extend nu to target_len so that it keeps forming edges with every
    constraint tuple at every level.

    Each constraint is a (k-1)-tuple of stems of length >= target_len.  The
    hypothesis that nu already forms the edges on its own length is checked
    up front; with m >= 1 constraints nu must reach past the level where
    the template's arities stabilize at m.  Extension is deterministic:
    each appended coordinate is the least witness.
    """
    nu = require_in_tree(t, nu, "nu")
    if target_len < len(nu):
        raise InputError(f"target_len {target_len} shorter than nu ({len(nu)})")
    m = len(constraints)
    rows = []
    for i, tup in enumerate(constraints):
        if len(tup) != t.arity - 1:
            raise InputError(f"constraint {i} must hold {t.arity - 1} stems")
        stems = [require_in_tree(t, s, f"constraint {i} stem") for s in tup]
        if any(len(s) < target_len for s in stems):
            raise InputError(f"constraint {i} stems must have length >= {target_len}")
        rows.append(stems)
    if m >= 1 and len(nu) <= t.stabilization_level(m):
        raise PreconditionError(
            f"lgn(nu) = {len(nu)} must exceed the stabilization level "
            f"{t.stabilization_level(m)} for {m} constraints"
        )
    for n in range(len(nu)):
        h = t.level_hypergraph(n)
        for i, stems in enumerate(rows):
            if not h.is_edge((nu[n],) + tuple(s[n] for s in stems)):
                raise PreconditionError(
                    f"hypothesis fails at level {n} for constraint {i}"
                )
    out = list(nu)
    for n in range(len(nu), target_len):
        if not rows:
            out.append(0)
            continue
        h = t.level_hypergraph(n)
        w = h.extension_witness([tuple(s[n] for s in stems) for stems in rows])
        if w is None:
            raise InternalConsistencyError(
                f"no witness at level {n}: the template's declared arities do not hold"
            )
        out.append(w)
    return tuple(out)


def extend_canonically(t: Template, stem: Sequence[int], target_len: int) -> Stem:
    """Constraint-free canonical completion: pad with the least vertex."""
    stem = require_in_tree(t, stem, "stem")
    if len(stem) >= target_len:
        return stem
    return stem + (0,) * (target_len - len(stem))


def enumerate_edge_partners(
    t: Template,
    rho: Sequence[int],
    depth: int,
    budget: int = 1_000_000,
) -> int:
    """Exact count, by exhaustive enumeration, of (k-1)-tuples of stems of
    the given length that form an edge with rho at every level.

    The finite-depth surrogate of "each leaf lies in continuum many edges".
    Raises BudgetExhausted carrying the partial count when the enumeration
    space exceeds the budget."""
    rho = require_in_tree(t, rho, "rho")
    if depth < 0 or depth > len(rho):
        raise InputError(f"depth must lie in 0..{len(rho)}")
    stems = [tuple(s) for s in product(*(range(t.level_size(n)) for n in range(depth)))]
    total = len(stems) ** (t.arity - 1)
    count = 0
    examined = 0
    for partner in product(stems, repeat=t.arity - 1):
        examined += 1
        if examined > budget:
            raise BudgetExhausted(
                f"enumeration space {total} exceeds budget {budget}", partial=count
            )
        ok = True
        for n in range(depth):
            if not t.level_hypergraph(n).is_edge((rho[n],) + tuple(s[n] for s in partner)):
                ok = False
                break
        if ok:
            count += 1
    return count
