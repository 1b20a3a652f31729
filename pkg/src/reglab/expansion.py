"""Exact robust out/in/di-expansion checkers with canonical violators.

RN+_nu(S) is the set of vertices with at least nu*n inneighbours in S; a
robust (nu,tau)-outexpander has |RN+(S)| >= |S| + nu*n for every S with
tau*n < |S| < (1-tau)*n.  The subset scan is exhaustive (cap-guarded) and
keeps per-vertex S-degree counters incrementally, visiting subsets in
sorted-member lexicographic order so the first violator found is the
canonical least one.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .graphs import (Digraph, GraphError, RationalLike, as_fraction, bits,
                     frac_ceil, frac_floor, popcount)
from .hamilton import Certificate, certify
from .regularity import CapExceeded

EXPANDER_CAP = 18


@dataclass(frozen=True)
class ExpansionSpec:
    nu: Fraction
    tau: Fraction
    mode: str  # out | in | di

    def __post_init__(self) -> None:
        object.__setattr__(self, "nu", as_fraction(self.nu))
        object.__setattr__(self, "tau", as_fraction(self.tau))
        if not 0 < self.nu <= self.tau < 1:
            raise GraphError("need 0 < nu <= tau < 1")
        if self.mode not in ("out", "in", "di"):
            raise GraphError("mode must be out, in or di")


@dataclass(frozen=True)
class ExpansionVerdict:
    holds: bool
    violator: Optional[int]
    checked_sets: int


def robust_neighbourhood(g: Digraph, s: int, nu: RationalLike,
                         direction: str = "out") -> int:
    """RN+ (direction out): vertices with >= nu*n inneighbours in S.
    RN- (direction in): vertices with >= nu*n outneighbours in S."""
    if s == 0:
        raise GraphError("S must be nonempty")
    nuf = as_fraction(nu)
    threshold = nuf * g.n
    rows = g.in_rows if direction == "out" else g.rows
    if direction not in ("out", "in"):
        raise GraphError("direction must be out or in")
    out = 0
    for x in range(g.n):
        if Fraction(popcount(rows[x] & s)) >= threshold:
            out |= 1 << x
    return out


def check_expander(g: Digraph, spec: ExpansionSpec,
                   cap: int = EXPANDER_CAP) -> ExpansionVerdict:
    """Exhaustive robust-expansion check over all qualifying S.

    Subsets are visited in sorted-member lexicographic order, so a failing
    verdict carries the canonical least violator (re-checkable with
    robust_neighbourhood).
    """
    n = g.n
    if n > cap:
        raise CapExceeded(f"n={n} exceeds expander cap {cap}; use sampling")
    # integer thresholds, exact: |S| > tau n iff |S| >= floor(tau n)+1, etc.
    size_lo = frac_floor(spec.tau * n) + 1
    size_hi = frac_ceil((1 - spec.tau) * n) - 1
    deg_thr = max(0, frac_ceil(spec.nu * n))       # count >= nu n
    nu_gain = frac_ceil(spec.nu * n)               # |RN|-|S| >= nu n
    need_out = spec.mode in ("out", "di")
    need_in = spec.mode in ("in", "di")
    out_rows, in_rows = g.rows, g.in_rows

    # incremental counters: in_from_s[x] = |N^-(x) & S|, out_into_s similarly
    in_from_s = [0] * n
    out_into_s = [0] * n
    checked = 0

    def expansion_ok(size: int) -> bool:
        if need_out:
            rn = sum(1 for c in in_from_s if c >= deg_thr)
            if rn - size < nu_gain:
                return False
        if need_in:
            rn = sum(1 for c in out_into_s if c >= deg_thr)
            if rn - size < nu_gain:
                return False
        return True

    def add(v: int, delta: int) -> None:
        for x in bits(out_rows[v]):
            in_from_s[x] += delta
        for x in bits(in_rows[v]):
            out_into_s[x] += delta

    def rec(s_mask: int, size: int, start: int) -> Optional[int]:
        nonlocal checked
        if size >= size_hi:
            return None  # supersets only grow
        for v in range(start, n):
            nm = s_mask | (1 << v)
            add(v, 1)
            if size + 1 >= size_lo:
                checked += 1
                if not expansion_ok(size + 1):
                    return nm
            hit = rec(nm, size + 1, v + 1)
            if hit is not None:
                return hit
            add(v, -1)
        return None

    violator = rec(0, 0, 0)
    return ExpansionVerdict(violator is None, violator, checked)


def robdegseq_condition(g: Digraph, eta: RationalLike) -> Certificate:
    """The degree-sequence hypothesis that forces robust outexpansion."""
    return certify(g, "robdegseq", eta=eta)
