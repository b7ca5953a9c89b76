"""Templates: level sequences of k-full hypergraphs with extension arities.

An infinite template is represented by a finite stored prefix plus a tail
policy whose levels are complete hypergraphs of growing size.  Complete
levels satisfy the extension property for every t up to their size, and
their declared arities grow without bound, so the finite representation
keeps all the guarantees of the infinite object.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from random import Random
from typing import Optional, Sequence

from .errors import GenerationError, InputError
from .hypergraph import (
    DEFAULT_EXTENSION_BUDGET,
    Hypergraph,
    complete_hypergraph,
    random_hypergraph,
)

TAIL_KINDS = ("complete_growing", "repeat_last_complete")


@dataclass(frozen=True)
class TailPolicy:
    """Levels beyond the prefix: complete hypergraphs whose size grows by
    ``growth`` per level.  ``repeat_last_complete`` is the growth-1 alias."""

    kind: str = "complete_growing"
    growth: int = 1

    def __post_init__(self):
        if self.kind not in TAIL_KINDS:
            raise InputError(f"unknown tail kind {self.kind!r}")
        if self.kind == "repeat_last_complete" and self.growth != 1:
            raise InputError("repeat_last_complete fixes growth = 1")
        if self.growth < 1:
            raise InputError(f"tail growth must be >= 1, got {self.growth}")


@lru_cache(maxsize=256)
def _complete_cached(arity: int, size: int) -> Hypergraph:
    return complete_hypergraph(arity, size)


class Template:
    """Arity k, a stored prefix of (hypergraph, f) levels, and a tail policy.

    Construction checks only representation invariants (shared arity,
    1 <= f(n) <= H_n); the extension property is verified by validate().
    """

    __slots__ = ("arity", "levels", "tail")

    def __init__(
        self,
        arity: int,
        levels: Sequence[tuple[Hypergraph, int]],
        tail: TailPolicy = TailPolicy(),
    ):
        if not levels:
            raise InputError("a template needs at least one stored level")
        lv = []
        for n, (h, f) in enumerate(levels):
            if h.arity != arity:
                raise InputError(f"level {n} has arity {h.arity}, template has {arity}")
            if not (1 <= f <= h.size):
                raise InputError(f"level {n}: f must satisfy 1 <= f <= {h.size}, got {f}")
            lv.append((h, int(f)))
        object.__setattr__(self, "arity", arity)
        object.__setattr__(self, "levels", tuple(lv))
        object.__setattr__(self, "tail", tail)

    def __setattr__(self, name, value):
        raise AttributeError("Template is immutable")

    def __eq__(self, other):
        return (
            isinstance(other, Template)
            and self.arity == other.arity
            and self.levels == other.levels
            and self.tail == other.tail
        )

    def __hash__(self):
        return hash((self.arity, self.levels, self.tail))

    def __repr__(self):
        return f"Template(arity={self.arity}, prefix={len(self.levels)}, tail={self.tail.kind})"

    def __reduce__(self):  # __slots__ + immutability guard need explicit pickling
        return (Template, (self.arity, self.levels, self.tail))

    # -- level access ------------------------------------------------------

    @property
    def prefix_len(self) -> int:
        return len(self.levels)

    def level_size(self, n: int) -> int:
        if n < 0:
            raise InputError(f"level index must be >= 0, got {n}")
        if n < len(self.levels):
            return self.levels[n][0].size
        last = len(self.levels) - 1
        return self.levels[last][0].size + self.tail.growth * (n - last)

    def f_value(self, n: int) -> int:
        """Declared extension arity at level n; tail levels use f = H_n."""
        if n < 0:
            raise InputError(f"level index must be >= 0, got {n}")
        if n < len(self.levels):
            return self.levels[n][1]
        return self.level_size(n)

    def level(self, n: int) -> tuple[Hypergraph, int]:
        """(hypergraph, f) at level n; tail levels are complete."""
        if n < len(self.levels):
            return self.levels[n]
        return _complete_cached(self.arity, self.level_size(n)), self.f_value(n)

    def level_hypergraph(self, n: int) -> Hypergraph:
        return self.level(n)[0]

    # -- analysis ----------------------------------------------------------

    def stabilization_level(self, count: int) -> int:
        """Least n with f(n') >= count for all n' >= n.

        Exists for every count because tail arities are nondecreasing and
        unbounded.  Tail levels are handled analytically."""
        if count < 1:
            raise InputError(f"count must be >= 1, got {count}")
        p = len(self.levels)
        # least tail level whose size reaches count (tail f is its size)
        n = p
        if self.f_value(p) < count:
            deficit = count - self.f_value(p)
            n = p + -(-deficit // self.tail.growth)
        while n > 0 and self.f_value(n - 1) >= count:
            n -= 1
        return n

    def is_complete(self) -> bool:
        """True iff every level, stored or tail, is a complete hypergraph."""
        from math import comb

        for h, _f in self.levels:
            if len(h.uniform_edges) != comb(h.size, self.arity):
                return False
        return True


@dataclass(frozen=True)
class LevelProblem:
    level: int
    condition: str  # "representation" | "arity_bound" | "extension"
    message: str


@dataclass(frozen=True)
class ValidationReport:
    depth: int
    problems: tuple[LevelProblem, ...]
    exhaustive: bool

    @property
    def valid(self) -> bool:
        return not self.problems


def validate(
    t: Template,
    depth: int,
    budget: int = DEFAULT_EXTENSION_BUDGET,
    trials: int = 2000,
    seed: int = 0,
) -> ValidationReport:
    """Check levels n < depth: f(n) <= H_n and the extension property at
    t = f(n).  Tail levels are accepted analytically (complete hypergraphs
    satisfy extension for every t <= H_n).  First problem per level."""
    if depth < 1:
        raise InputError(f"depth must be >= 1, got {depth}")
    problems = []
    exhaustive = True
    for n in range(min(depth, len(t.levels))):
        h, f = t.levels[n]
        if f > h.size or f < 1:
            problems.append(LevelProblem(n, "arity_bound", f"f({n}) = {f} outside 1..{h.size}"))
            continue
        chk = h.check_extension_property(f, budget=budget, trials=trials, seed=seed)
        exhaustive = exhaustive and chk.exhaustive
        if not chk.holds:
            problems.append(
                LevelProblem(
                    n,
                    "extension",
                    f"no common witness for tuples {chk.counterexample} at t = {f}",
                )
            )
    return ValidationReport(depth, tuple(problems), exhaustive)


def max_extension_arity(h: Hypergraph, cap: int, budget: int = DEFAULT_EXTENSION_BUDGET) -> int:
    """Largest t <= cap with the extension property, or 0 if none.

    Monotone in t, so a linear scan from 1 stops at the first failure."""
    if cap < 1:
        raise InputError(f"cap must be >= 1, got {cap}")
    best = 0
    for t in range(1, cap + 1):
        if h.has_extension_property(t, budget=budget):
            best = t
        else:
            break
    return best


def complete_template(arity: int, prefix_depth: int = 1) -> Template:
    """The template with H_n = n + 1 and every tuple an edge."""
    if prefix_depth < 1:
        raise InputError(f"prefix_depth must be >= 1, got {prefix_depth}")
    levels = []
    for n in range(prefix_depth):
        h = complete_hypergraph(arity, n + 1)
        levels.append((h, n + 1))
    return Template(arity, levels, TailPolicy("complete_growing", 1))


def random_template(
    arity: int,
    level_sizes: Sequence[int],
    edge_prob: float,
    target_f: Sequence[int],
    seed: int,
    retry_budget: int = 20,
) -> Template:
    """Sample each level's uniform edges independently with edge_prob, then
    verify the extension property at target_f(n); resample on failure and,
    when retries run out, degrade f to the largest arity that does hold.

    Deterministic for a given seed.  Any smaller f satisfying the axioms
    still yields a template, which makes degradation sound."""
    if len(level_sizes) != len(target_f):
        raise InputError("level_sizes and target_f must have equal length")
    if not level_sizes:
        raise InputError("need at least one level")
    rng = Random(seed)
    levels = []
    for n, (size, tf) in enumerate(zip(level_sizes, target_f)):
        if size < arity:
            raise InputError(f"level {n}: size {size} below arity {arity}")
        if not (1 <= tf <= size):
            raise InputError(f"level {n}: target f {tf} outside 1..{size}")
        h = None
        for _ in range(retry_budget):
            cand = random_hypergraph(arity, size, edge_prob, rng)
            if cand.has_extension_property(tf):
                h, f = cand, tf
                break
        else:
            cand = random_hypergraph(arity, size, edge_prob, rng)
            f = max_extension_arity(cand, tf)
            if f == 0:
                raise GenerationError(f"level {n}: no extension arity achievable after retries")
            h = cand
        levels.append((h, f))
    return Template(arity, levels, TailPolicy("complete_growing", 1))


def corrupt_level(t: Template, n: int, keep_fraction: float = 0.0, seed: int = 0) -> Template:
    """Deliberately break a stored level by thinning its uniform edges while
    keeping the declared f.  Test harness for demonstrating detector power;
    the result is normally not a valid template."""
    if not (0 <= n < len(t.levels)):
        raise InputError(f"level {n} is not a stored level")
    rng = Random(seed)
    h, f = t.levels[n]
    kept = [e for e in sorted(map(sorted, h.uniform_edges)) if rng.random() < keep_fraction]
    broken = Hypergraph(t.arity, h.size, kept)
    levels = list(t.levels)
    levels[n] = (broken, f)
    return Template(t.arity, levels, t.tail)
