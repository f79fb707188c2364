"""Uniform hypergraphs and their shadow/link/degree/clique primitives.

Vertices are dense integers 0..n-1 so isolated vertices are representable.
Vertex sets are plain frozensets; edges are stored as sorted tuples in
lexicographic order, which makes equal hypergraphs serialize identically.
Bitmask forms of the edges are cached for the hot set-algebra paths
(Python ints give exact fixed-width behaviour for any n).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Iterator

from .errors import EmptyInputError, ParameterError


def _mask(edge: Iterable[int]) -> int:
    m = 0
    for v in edge:
        m |= 1 << v
    return m


def mask_to_tuple(mask: int) -> tuple[int, ...]:
    out = []
    v = 0
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return tuple(out)


@dataclass(frozen=True)
class Hypergraph:
    """An r-uniform hypergraph on vertex set {0..n-1}.

    Invariants: every edge has exactly r distinct vertices below n,
    there are no duplicate edges, and `edges` is sorted lexicographically.
    Instances are immutable; all operations on them are pure functions.
    """

    r: int
    n: int
    edges: tuple[tuple[int, ...], ...]

    @staticmethod
    def build(r: int, n: int, edges: Iterable[Iterable[int]]) -> "Hypergraph":
        if r < 1:
            raise ParameterError(f"uniformity must be >= 1, got {r}")
        if n < 0:
            raise ParameterError(f"vertex count must be >= 0, got {n}")
        normalized = []
        for e in edges:
            t = tuple(sorted(e))
            if len(t) != r or len(set(t)) != r:
                raise ParameterError(f"edge {t} is not a set of {r} distinct vertices")
            if t and (t[0] < 0 or t[-1] >= n):
                raise ParameterError(f"edge {t} has a vertex outside 0..{n - 1}")
            normalized.append(t)
        dedup = sorted(set(normalized))
        if len(dedup) != len(normalized):
            raise ParameterError("duplicate edges in input")
        return Hypergraph(r, n, tuple(dedup))

    def __len__(self) -> int:
        return len(self.edges)

    @cached_property
    def edge_masks(self) -> tuple[int, ...]:
        return tuple(_mask(e) for e in self.edges)

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        d = [0] * self.n
        for e in self.edges:
            for v in e:
                d[v] += 1
        return tuple(d)

    @cached_property
    def support(self) -> frozenset[int]:
        return frozenset(v for v in range(self.n) if self.degrees[v] > 0)

    @cached_property
    def pair_adjacency(self) -> tuple[int, ...]:
        """adjacency[u] = bitmask of vertices sharing an edge with u."""
        adj = [0] * self.n
        for m in self.edge_masks:
            for v in mask_to_tuple(m):
                adj[v] |= m & ~(1 << v)
        return tuple(adj)

    def induced(self, vertices: Iterable[int]) -> "Hypergraph":
        """Subgraph on the given vertices, keeping the original labels and n."""
        keep = _mask(vertices)
        kept = [e for e, m in zip(self.edges, self.edge_masks) if m & ~keep == 0]
        return Hypergraph(self.r, self.n, tuple(kept))


@dataclass(frozen=True)
class SigmaStats:
    """Per-vertex degrees plus the maximum degree sum over edges."""

    degrees: tuple[int, ...]
    sigma_hat: int
    argmax_edge: tuple[int, ...]


@dataclass(frozen=True)
class CliqueSet:
    """All 2-covered vertex sets of size 1..kmax, grouped by size.

    Singletons (every vertex, isolated ones included) count as 2-covered;
    the empty set is excluded.
    """

    kmax: int
    by_size: tuple[tuple[tuple[int, ...], ...], ...]  # by_size[k-1] = size-k sets

    def all(self) -> Iterator[tuple[int, ...]]:
        for group in self.by_size:
            yield from group

    def of_size(self, k: int) -> tuple[tuple[int, ...], ...]:
        if 1 <= k <= self.kmax:
            return self.by_size[k - 1]
        return ()


@dataclass(frozen=True)
class ZValue:
    """The largest z with sigma(R) <= (l-r+1)|shadow| - (l-|R|) z for all
    cliques R of size <= l-1, stored exactly as a rational."""

    z: Fraction
    witness: tuple[int, ...]
    ell: int
    clamped: bool = field(default=False)


def shadow_i(h: Hypergraph, i: int) -> Hypergraph:
    """The i-th shadow: all (r-i)-sets contained in some edge."""
    if not 1 <= i <= h.r - 1:
        raise ParameterError(f"shadow index must be in 1..{h.r - 1}, got {i}")
    sub = set()
    for e in h.edges:
        sub.update(itertools.combinations(e, h.r - i))
    return Hypergraph(h.r - i, h.n, tuple(sorted(sub)))


def shadow(h: Hypergraph) -> Hypergraph:
    return shadow_i(h, 1)


def link(h: Hypergraph, v: int) -> Hypergraph:
    """The (r-1)-graph { A : A + v in H }, on the same ground set."""
    if not 0 <= v < h.n:
        raise ParameterError(f"vertex {v} outside 0..{h.n - 1}")
    kept = tuple(
        tuple(u for u in e if u != v) for e in h.edges if v in e
    )
    return Hypergraph(h.r - 1, h.n, kept)


def neighborhood(h: Hypergraph, s: Iterable[int]) -> frozenset[int]:
    """Vertices outside S lying in a common edge with all of S."""
    sm = _mask(s)
    if bin(sm).count("1") >= h.r:
        raise ParameterError(
            f"neighborhood is defined for sets of size <= {h.r - 1}"
        )
    out = 0
    for m in h.edge_masks:
        if sm & ~m == 0:
            out |= m & ~sm
    return frozenset(mask_to_tuple(out))


def sigma(h: Hypergraph, s: Iterable[int]) -> int:
    """Degree sum over S."""
    return sum(h.degrees[v] for v in s)


def sigma_hat(h: Hypergraph) -> SigmaStats:
    """Degrees, the maximum edge degree sum, and its lexicographically
    smallest attaining edge."""
    if not h.edges:
        raise EmptyInputError("sigma_hat needs a nonempty hypergraph")
    best = max(sigma(h, e) for e in h.edges)
    arg = next(e for e in h.edges if sigma(h, e) == best)
    return SigmaStats(h.degrees, best, arg)


def is_two_covered(h: Hypergraph, s: Iterable[int]) -> bool:
    """True iff every pair of S lies in a common edge (vacuous for |S|<=1)."""
    sv = sorted(set(s))
    adj = h.pair_adjacency
    return all(adj[u] >> v & 1 for u, v in itertools.combinations(sv, 2))


def clique_set(h: Hypergraph, kmax: int) -> CliqueSet:
    """All 2-covered sets of size <= kmax, by ordered bitset extension of
    cliques in the pair-coverage graph."""
    if kmax < 1:
        raise ParameterError(f"kmax must be >= 1, got {kmax}")
    adj = h.pair_adjacency
    by_size: list[list[tuple[int, ...]]] = [[] for _ in range(kmax)]
    by_size[0] = [(v,) for v in range(h.n)]
    if kmax >= 2:
        above = [(~((1 << (v + 1)) - 1)) for v in range(h.n)]

        def extend(clique: tuple[int, ...], cand: int) -> None:
            c = cand
            while c:
                v = (c & -c).bit_length() - 1
                c &= c - 1
                grown = clique + (v,)
                by_size[len(grown) - 1].append(grown)
                if len(grown) < kmax:
                    extend(grown, cand & adj[v] & above[v])

        for v in range(h.n):
            extend((v,), adj[v] & above[v])
    return CliqueSet(kmax, tuple(tuple(g) for g in by_size))


def z_value(h: Hypergraph, ell: int) -> ZValue:
    """Largest z >= 0 with sigma(R) <= (l-r+1)|shadow| - (l-|R|) z for every
    nonempty 2-covered R of size <= l-1, as an exact rational.

    The witness is the binding clique, ties broken by (size, lexicographic).
    The empty set is excluded from the minimization.
    """
    if ell < h.r:
        raise ParameterError(f"ell must be >= r={h.r}, got {ell}")
    if not h.edges:
        raise EmptyInputError("z_value needs a nonempty hypergraph")
    shadow_size = len(shadow(h)) if h.r >= 2 else len(h)
    budget = (ell - h.r + 1) * shadow_size
    best: Fraction | None = None
    witness: tuple[int, ...] = ()
    for r_set in clique_set(h, ell - 1).all():
        ratio = Fraction(budget - sigma(h, r_set), ell - len(r_set))
        if best is None or ratio < best:
            best = ratio
            witness = r_set
    assert best is not None
    if best < 0:
        return ZValue(Fraction(0), witness, ell, clamped=True)
    return ZValue(best, witness, ell)
