"""Numeric bounds: real-binomial Kruskal-Katona inversion, the cancellative
and clique-expansion shadow bounds, and the inequality batteries used by the
stability arguments.

All bound arithmetic is double precision with a uniform 1e-9 tolerance for
tightness flags; the real binomial C(x, k) is evaluated as a falling
factorial, never through the Gamma function. Inequality checks recompute
every quantity from the hypergraph on each call.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError, EmptyInputError, PreconditionError
from .forbidden import find_cancellative_violation, find_clique_expansion
from .hypercore import Hypergraph, link, shadow, sigma, sigma_hat, z_value

TOLERANCE = 1e-9
_BISECT_TOL = 1e-12


def falling_binomial(x: float, k: int) -> float:
    """C(x, k) for real x via the falling factorial."""
    out = 1.0
    for i in range(k):
        out *= (x - i)
    return out / math.factorial(k)


def solve_binomial_x(s: float, k: int) -> float:
    """The unique x >= k with C(x, k) = s, by monotone bisection."""
    if s < 1:
        raise DomainError(f"need s >= 1, got {s}")
    if k < 1:
        raise DomainError(f"need k >= 1, got {k}")
    lo = float(k)
    hi = float(k + 1)
    while falling_binomial(hi, k) < s:
        hi *= 2
    while hi - lo > _BISECT_TOL:
        mid = (lo + hi) / 2
        if mid == lo or mid == hi:
            break  # float resolution reached before the absolute tolerance
        if falling_binomial(mid, k) < s:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2


@dataclass(frozen=True)
class BoundReport:
    """One bound evaluation: solved parameter, bound, actual size, slack."""

    shadow_size: int
    x: float
    bound: float
    actual: int
    slack: float
    tight: bool


@dataclass(frozen=True)
class Inequality:
    identifier: str
    lhs: float
    rhs: float
    holds: bool


@dataclass(frozen=True)
class InequalityReport:
    items: tuple[Inequality, ...]

    @property
    def all_hold(self) -> bool:
        return all(i.holds for i in self.items)

    def get(self, identifier: str) -> Inequality:
        return next(i for i in self.items if i.identifier == identifier)


def _ineq(identifier: str, lhs: float, rhs: float) -> Inequality:
    return Inequality(identifier, lhs, rhs, lhs <= rhs + TOLERANCE)


def kk_bound(h: Hypergraph) -> BoundReport:
    """Kruskal-Katona upper bound |H| <= C(x, r) with C(x, r-1) = |shadow|."""
    if not h.edges:
        raise EmptyInputError("kk_bound needs a nonempty shadow")
    s = len(shadow(h))
    x = solve_binomial_x(s, h.r - 1)
    bound = falling_binomial(x, h.r)
    slack = bound - len(h)
    return BoundReport(s, x, bound, len(h), slack, abs(slack) <= TOLERANCE)


def cancellative_bound(shadow_size: float, r: int) -> tuple[float, float]:
    """x and the bound (x/r)^r from |shadow| = x^(r-1) / r^(r-2)."""
    if shadow_size <= 0:
        raise DomainError(f"shadow size must be positive, got {shadow_size}")
    x = (r ** (r - 2) * shadow_size) ** (1.0 / (r - 1))
    return x, (x / r) ** r


def expansion_bound(shadow_size: float, ell: int, r: int) -> tuple[float, float]:
    """x and the bound C(l, r) (x/l)^r from |shadow| = C(l, r-1) (x/l)^(r-1)."""
    if shadow_size <= 0:
        raise DomainError(f"shadow size must be positive, got {shadow_size}")
    if ell < r:
        raise DomainError(f"need ell >= r, got ell={ell}, r={r}")
    x = ell * (shadow_size / math.comb(ell, r - 1)) ** (1.0 / (r - 1))
    return x, math.comb(ell, r) * (x / ell) ** r


def cancellative_report(h: Hypergraph) -> BoundReport:
    if not h.edges:
        raise EmptyInputError("cancellative bound needs a nonempty hypergraph")
    s = len(shadow(h))
    x, bound = cancellative_bound(s, h.r)
    slack = bound - len(h)
    return BoundReport(s, x, bound, len(h), slack, abs(slack) <= TOLERANCE)


def expansion_report(h: Hypergraph, ell: int) -> BoundReport:
    if not h.edges:
        raise EmptyInputError("expansion bound needs a nonempty hypergraph")
    s = len(shadow(h))
    x, bound = expansion_bound(s, ell, h.r)
    slack = bound - len(h)
    return BoundReport(s, x, bound, len(h), slack, abs(slack) <= TOLERANCE)


def _shadow_of_link_size(h: Hypergraph, v: int) -> int:
    lk = link(h, v)
    if lk.r >= 2:
        return len(shadow(lk))
    # Link of a 2-graph is 1-uniform; its shadow degenerates to {empty set}.
    return 1 if lk.edges else 0


def lemma9_check(h: Hypergraph) -> InequalityReport:
    """The four cancellative degree-sum inequalities, evaluated at the
    lexicographically smallest maximum-degree-sum edge."""
    witness = find_cancellative_violation(h)
    if witness is not None:
        raise PreconditionError("hypergraph is not cancellative", witness)
    if not h.edges:
        raise EmptyInputError("lemma9_check needs a nonempty hypergraph")
    r = h.r
    sh = shadow(h)
    p = len(sh)
    stats = sigma_hat(h)
    s_hat = stats.sigma_hat
    e = stats.argmax_edge
    size = len(h)
    prefix = p ** ((r - 2) / (r - 1)) / (r * (r - 1) ** (1.0 / (r - 1)))

    inner1 = (p - s_hat / r) * s_hat
    inner2 = sum(h.degrees[v] * (s_hat - h.degrees[v]) for v in e) + (p - s_hat) * s_hat

    link_sets = {v: set(link(h, v).edges) for v in e}
    union_links = set().union(*link_sets.values())
    inner3 = sum(sigma(h, s) for v in e for s in link_sets[v])
    inner3 += sum(sigma(h, s) for s in sh.edges if s not in union_links)

    lhs4 = sum(
        h.degrees[v] ** (1.0 / (r - 1)) * _shadow_of_link_size(h, v)
        for v in range(h.n)
        if h.degrees[v] > 0
    ) / (r * (r - 1))
    rhs4 = (p / r) ** (r / (r - 1))

    exp = 1.0 / (r - 1)
    return InequalityReport(
        (
            _ineq("L9.1", size, prefix * inner1 ** exp),
            _ineq("L9.2", size, prefix * inner2 ** exp),
            _ineq("L9.3", size, prefix * inner3 ** exp),
            _ineq("L9.4", lhs4, rhs4),
        )
    )


def lemma14_check(h: Hypergraph, ell: int) -> InequalityReport:
    """The two clique-expansion inequalities, with z and its binding clique
    recomputed from scratch."""
    witness = find_clique_expansion(h, ell)
    if witness is not None:
        raise PreconditionError(
            f"hypergraph contains a 2-covered {ell + 1}-set", witness
        )
    if not h.edges:
        raise EmptyInputError("lemma14_check needs a nonempty hypergraph")
    r = h.r
    sh = shadow(h)
    p = len(sh)
    zv = z_value(h, ell)
    z = float(zv.z)
    r0 = len(zv.witness)
    sum_sigma = sum(sigma(h, s) for s in sh.edges)

    prefix = (
        math.comb(ell - 1, r - 1) ** ((r - 2) / (r - 1))
        / (r * math.comb(ell - 1, r - 2))
        * (r - 1) ** ((r - 2) / (r - 1))
    )
    rhs1 = prefix * p ** ((r - 2) / (r - 1)) * sum_sigma ** (1.0 / (r - 1))
    rhs2 = (
        (ell - r + 1) * (p - 2 * z) * p
        + z * z * ell
        - ((ell - r + 1) * p - z * ell) ** 2 / r0
    )
    return InequalityReport(
        (
            _ineq("L14.1", float(len(h)), rhs1),
            _ineq("L14.2", float(sum_sigma), rhs2),
        )
    )


def concentration_bound(
    values: list[float], delta1: float, delta2: float
) -> tuple[float, int]:
    """Size of the low tail {v : f(v) <= mean - delta1} and its guaranteed
    cap delta2 |V| / (delta1 + delta2), valid when max f <= mean + delta2."""
    if delta1 <= 0 or delta2 <= 0:
        raise DomainError("delta1 and delta2 must be positive")
    if not values:
        raise EmptyInputError("concentration_bound needs at least one value")
    mean = sum(values) / len(values)
    if max(values) > mean + delta2 + _BISECT_TOL:
        raise PreconditionError(
            f"max value {max(values)} exceeds mean + delta2 = {mean + delta2}"
        )
    small = sum(1 for v in values if v <= mean - delta1)
    bound = delta2 / (delta1 + delta2) * len(values)
    assert small <= bound + TOLERANCE
    return bound, small


def bound_report_for(h: Hypergraph, kind: str, ell: int | None = None) -> BoundReport:
    """Dispatch helper used by the CLI and the enumeration sweeps."""
    if kind == "kk":
        return kk_bound(h)
    if kind == "cancellative":
        return cancellative_report(h)
    if kind == "expansion":
        if ell is None:
            raise DomainError("expansion bound needs ell")
        return expansion_report(h, ell)
    raise DomainError(f"unknown bound kind {kind!r}")
