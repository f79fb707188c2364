"""Exhaustive enumeration of small free hypergraphs, canonical forms, exact
extremal numbers, and bound sweeps.

Two engines exist on purpose: the naive engine walks every labeled edge
subset (with monotone freeness pruning) and acts as the trusted oracle; the
orderly engine builds isomorphism classes level by level through canonical
deduplication. Canonicalization is in-house permutation search with color
refinement pruning, so it stays self-contained and testable.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional

from .bounds import TOLERANCE, cancellative_bound, expansion_bound, falling_binomial, solve_binomial_x
from .errors import ParameterError, ResourceBudgetError
from .forbidden import Family, IncrementalFreeChecker
from .hypercore import Hypergraph

NAIVE_EDGE_BUDGET = 24      # naive engine requires C(n, r) <= this
ORDERLY_VERTEX_BUDGET = 8   # orderly engine requires n <= this
PERMUTATION_BUDGET = 1_000_000
CANONICAL_VERTEX_CAP = 12


@dataclass(frozen=True)
class CanonicalForm:
    """A canonical byte string per isomorphism class: the minimum over
    admissible vertex orderings of the relabeled, sorted edge list."""

    key: bytes


@dataclass(frozen=True)
class EnumerationStats:
    engine: str
    visited: int
    max_edges: int
    counts_by_edges: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class ExtremalResult:
    n: int
    r: int
    family: str
    max_edges: int
    extremal_forms: tuple[bytes, ...]
    count_searched: int
    unique: bool
    example: Optional[Hypergraph] = field(default=None, compare=False)


@dataclass(frozen=True)
class SweepReport:
    n: int
    r: int
    family: str
    bound_kind: str
    visited: int
    violations: tuple[tuple[tuple[int, ...], ...], ...]
    min_slack: float
    argmin_edges: tuple[tuple[int, ...], ...]


def _refine_colors(h: Hypergraph) -> list[int]:
    """Iterated color refinement over the pair-coverage graph, seeded with
    degrees. Returns invariantly ordered class ids."""
    adj = h.pair_adjacency
    colors = list(h.degrees)
    nbrs = [
        [u for u in range(h.n) if adj[v] >> u & 1] for v in range(h.n)
    ]
    while True:
        keys = [
            (colors[v], tuple(sorted(colors[u] for u in nbrs[v])))
            for v in range(h.n)
        ]
        order = {k: i for i, k in enumerate(sorted(set(keys)))}
        new = [order[k] for k in keys]
        if new == colors:
            return new
        colors = new


def canonical_form(h: Hypergraph, cap: int = CANONICAL_VERTEX_CAP) -> CanonicalForm:
    """Permutation-minimal representation with color-refinement pruning."""
    if h.n > cap:
        raise ResourceBudgetError(f"canonical_form capped at n <= {cap}, got {h.n}")
    colors = _refine_colors(h)
    classes: dict[int, list[int]] = {}
    for v in range(h.n):
        classes.setdefault(colors[v], []).append(v)
    groups = [classes[c] for c in sorted(classes)]
    total = 1
    for g in groups:
        total *= math.factorial(len(g))
        if total > PERMUTATION_BUDGET:
            raise ResourceBudgetError(
                f"canonical_form permutation budget exceeded ({total} candidates)"
            )
    best: tuple[tuple[int, ...], ...] | None = None
    relabel = [0] * h.n
    for parts in itertools.product(*(itertools.permutations(g) for g in groups)):
        pos = 0
        for part in parts:
            for v in part:
                relabel[v] = pos
                pos += 1
        candidate = tuple(sorted(tuple(sorted(relabel[v] for v in e)) for e in h.edges))
        if best is None or candidate < best:
            best = candidate
    payload = ";".join(",".join(map(str, e)) for e in best or ())
    return CanonicalForm(f"{h.r}/{h.n}:{payload}".encode())


def are_isomorphic(a: Hypergraph, b: Hypergraph) -> bool:
    if a.r != b.r or a.n != b.n or len(a) != len(b):
        return False
    return canonical_form(a) == canonical_form(b)


def permutation_isomorphism_oracle(a: Hypergraph, b: Hypergraph) -> bool:
    """Brute-force isomorphism test over all vertex permutations."""
    if a.r != b.r or a.n != b.n or len(a) != len(b):
        return False
    target = set(a.edges)
    for perm in itertools.permutations(range(b.n)):
        if {tuple(sorted(perm[v] for v in e)) for e in b.edges} == target:
            return True
    return False


def _candidate_edges(n: int, r: int) -> list[tuple[int, ...]]:
    return list(itertools.combinations(range(n), r))


def _check_naive_budget(n: int, r: int) -> None:
    if math.comb(n, r) > NAIVE_EDGE_BUDGET:
        raise ResourceBudgetError(
            f"naive engine capped at C(n,r) <= {NAIVE_EDGE_BUDGET}, "
            f"got C({n},{r}) = {math.comb(n, r)}"
        )


def enumerate_free(
    n: int,
    r: int,
    family: Optional[Family],
    visitor: Optional[Callable[[Hypergraph], None]] = None,
    engine: str = "naive",
) -> EnumerationStats:
    """Visit every family-free r-graph on n vertices.

    The naive engine visits each labeled graph once; the orderly engine
    visits one canonical representative per isomorphism class.
    """
    if engine == "naive":
        _check_naive_budget(n, r)
        counts: dict[int, int] = {}
        for edges in _iter_free_edge_sets(n, r, family):
            counts[len(edges)] = counts.get(len(edges), 0) + 1
            if visitor is not None:
                visitor(Hypergraph(r, n, edges))
        return _stats("naive", counts)
    if engine == "orderly":
        if n > ORDERLY_VERTEX_BUDGET:
            raise ResourceBudgetError(
                f"orderly engine capped at n <= {ORDERLY_VERTEX_BUDGET}, got {n}"
            )
        counts = {}
        for rep in enumerate_free_classes(n, r, family):
            counts[len(rep)] = counts.get(len(rep), 0) + 1
            if visitor is not None:
                visitor(rep)
        return _stats("orderly", counts)
    raise ParameterError(f"unknown engine {engine!r}")


def _stats(engine: str, counts: dict[int, int]) -> EnumerationStats:
    return EnumerationStats(
        engine,
        sum(counts.values()),
        max(counts) if counts else 0,
        tuple(sorted(counts.items())),
    )


def _iter_free_edge_sets(
    n: int, r: int, family: Optional[Family]
) -> Iterable[tuple[tuple[int, ...], ...]]:
    """Labeled DFS: extend by candidate edges of larger index only, prune on
    violation (freeness is monotone under edge removal)."""
    candidates = _candidate_edges(n, r)
    checker = IncrementalFreeChecker(n, r, family) if family is not None else None
    masks = [sum(1 << v for v in e) for e in candidates]
    stack: list[tuple[int, ...]] = []

    def rec(pos: int):
        yield tuple(stack)
        for t in range(pos, len(candidates)):
            if checker is not None and checker.would_violate(masks[t]):
                continue
            if checker is not None:
                checker.push(masks[t])
            stack.append(candidates[t])
            yield from rec(t + 1)
            stack.pop()
            if checker is not None:
                checker.pop()

    yield from rec(0)


def enumerate_free_classes(
    n: int, r: int, family: Optional[Family]
) -> list[Hypergraph]:
    """Isomorph-free enumeration: grow class representatives one edge at a
    time, keeping only canonical extensions. Deterministic order
    (edge count, canonical key)."""
    empty = Hypergraph(r, n, ())
    out = [empty]
    level = {canonical_form(empty).key: empty}
    candidates = _candidate_edges(n, r)
    while level:
        next_level: dict[bytes, Hypergraph] = {}
        for rep in level.values():
            have = set(rep.edges)
            for e in candidates:
                if e in have:
                    continue
                child = Hypergraph(r, n, tuple(sorted(have | {e})))
                if family is not None and not _free_quick(child, family):
                    continue
                key = canonical_form(child).key
                if key not in next_level:
                    next_level[key] = child
        for key in sorted(next_level):
            out.append(next_level[key])
        level = next_level
    return out


def _free_quick(h: Hypergraph, family: Family) -> bool:
    checker = IncrementalFreeChecker(h.n, h.r, family)
    for m in h.edge_masks:
        if checker.would_violate(m):
            return False
        checker.push(m)
    return True


def extremal_search(n: int, r: int, family: Family) -> ExtremalResult:
    """Exact extremal number with all extremal isomorphism classes."""
    _check_naive_budget(n, r)
    best = 0
    best_sets: list[tuple[tuple[int, ...], ...]] = []
    visited = 0
    for edges in _iter_free_edge_sets(n, r, family):
        visited += 1
        if len(edges) > best:
            best = len(edges)
            best_sets = [edges]
        elif len(edges) == best:
            best_sets.append(edges)
    forms: dict[bytes, Hypergraph] = {}
    for edges in best_sets:
        h = Hypergraph(r, n, edges)
        forms.setdefault(canonical_form(h).key, h)
    keys = tuple(sorted(forms))
    return ExtremalResult(
        n, r, str(family), best, keys, visited, len(keys) == 1,
        forms[keys[0]] if keys else None,
    )


def verify_bound_over_enumeration(
    n: int,
    r: int,
    family: Optional[Family],
    bound_kind: str,
    ell: Optional[int] = None,
) -> SweepReport:
    """Evaluate the named bound on every family-free graph; report the worst
    slack and any violations (expected none). Mask-level sweep with an
    incrementally maintained shadow size for speed."""
    _check_naive_budget(n, r)
    candidates = _candidate_edges(n, r)
    subsets = [tuple(itertools.combinations(e, r - 1)) for e in candidates]
    masks = [sum(1 << v for v in e) for e in candidates]
    checker = IncrementalFreeChecker(n, r, family) if family is not None else None

    bound_cache: dict[int, float] = {}

    def bound_for(s: int) -> float:
        if s not in bound_cache:
            if bound_kind == "thm1":
                bound_cache[s] = falling_binomial(solve_binomial_x(s, r - 1), r)
            elif bound_kind == "thm3":
                bound_cache[s] = cancellative_bound(s, r)[1]
            elif bound_kind == "thm6":
                if ell is None:
                    raise ParameterError("thm6 sweep needs ell")
                bound_cache[s] = expansion_bound(s, ell, r)[1]
            else:
                raise ParameterError(f"unknown bound kind {bound_kind!r}")
        return bound_cache[s]

    coverage: dict[tuple[int, ...], int] = {}
    shadow_size = 0
    stack: list[int] = []
    visited = 0
    violations: list[tuple[tuple[int, ...], ...]] = []
    min_slack = math.inf
    argmin: tuple[tuple[int, ...], ...] = ()

    def visit():
        nonlocal visited, min_slack, argmin
        visited += 1
        if not stack:
            return
        slack = bound_for(shadow_size) - len(stack)
        if slack < -TOLERANCE:
            violations.append(tuple(candidates[i] for i in stack))
        if slack < min_slack:
            min_slack = slack
            argmin = tuple(candidates[i] for i in stack)

    def rec(pos: int):
        nonlocal shadow_size
        visit()
        for t in range(pos, len(candidates)):
            if checker is not None and checker.would_violate(masks[t]):
                continue
            if checker is not None:
                checker.push(masks[t])
            for sub in subsets[t]:
                c = coverage.get(sub, 0)
                coverage[sub] = c + 1
                if c == 0:
                    shadow_size += 1
            stack.append(t)
            rec(t + 1)
            stack.pop()
            for sub in subsets[t]:
                coverage[sub] -= 1
                if coverage[sub] == 0:
                    shadow_size -= 1
            if checker is not None:
                checker.pop()

    rec(0)
    return SweepReport(
        n, r, str(family) if family is not None else "none", bound_kind,
        visited, tuple(violations), min_slack, argmin,
    )


def random_free_graph(
    n: int,
    r: int,
    family: Family,
    seed: int,
    target_edges: Optional[int] = None,
) -> Hypergraph:
    """Seeded rejection sampler: walk a shuffled candidate list, keeping each
    edge that preserves freeness, until target_edges edges are placed."""
    rng = random.Random(seed)
    candidates = _candidate_edges(n, r)
    rng.shuffle(candidates)
    if target_edges is None:
        target_edges = len(candidates)
    checker = IncrementalFreeChecker(n, r, family)
    kept: list[tuple[int, ...]] = []
    for e in candidates:
        if len(kept) >= target_edges:
            break
        m = sum(1 << v for v in e)
        if not checker.would_violate(m):
            checker.push(m)
            kept.append(e)
    return Hypergraph(r, n, tuple(sorted(kept)))


def write_class_cache(path, forms: Iterable[bytes]) -> None:
    """Cache format: sorted canonical forms, one per line."""
    with open(path, "wb") as fh:
        for key in sorted(forms):
            fh.write(key + b"\n")


def read_class_cache(path) -> tuple[bytes, ...]:
    with open(path, "rb") as fh:
        return tuple(line.rstrip(b"\n") for line in fh if line.strip())


def cache_name(n: int, r: int, family: str, engine: str, version: int = 1) -> str:
    safe = family.replace("(", "_").replace(")", "")
    return f"classes_v{version}_{engine}_n{n}_r{r}_{safe}.txt"
