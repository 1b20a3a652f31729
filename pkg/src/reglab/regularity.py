"""Exact epsilon-regularity and superregularity checkers with witnesses.

A bipartite pair (A,B) is eps-regular when every X in A, Y in B with
|X| >= eps|A|, |Y| >= eps|B| has |d(A,B) - d(X,Y)| < eps.  The checkers here
are exhaustive and exact: for a fixed X the extreme values of e(X,Y) over all
Y of a given size are the sums of the largest/smallest X-degrees on the B
side, so each X costs a sort instead of a 2^|B| scan, and every comparison is
integer cross-multiplication (never floats).

Witnesses are canonical: the lexicographically least violating (X,Y) under
the sorted-member-tuple order, so failing verdicts are reproducible.

A seeded sampled mode exists for sides beyond the exhaustive cap; it can only
report "no witness found" and never feeds acceptance tests.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Optional

from .graphs import (Digraph, Graph, GraphError, RationalLike, as_fraction,
                     bits, edges_between, full_mask, least_count_at_least,
                     mask_of, popcount)

DEFAULT_CAP = 14
DEFAULT_TRIALS = 2000


@dataclass(frozen=True)
class PairSpec:
    """A bipartite pair inside a host graph plus the (eps, d) parameters."""

    host: Graph | Digraph
    a: int
    b: int
    epsilon: Fraction
    d: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        object.__setattr__(self, "epsilon", as_fraction(self.epsilon))
        object.__setattr__(self, "d", as_fraction(self.d))
        if popcount(self.a) == 0 or popcount(self.b) == 0:
            raise GraphError("pair sides must be nonempty")
        if self.a & self.b:
            raise GraphError("pair sides must be disjoint")
        if (self.a | self.b) & ~full_mask(self.host.n):
            raise GraphError("pair sides outside host vertex range")
        if self.epsilon <= 0:
            raise GraphError("epsilon must be positive")


@dataclass(frozen=True)
class Witness:
    """A violating configuration; ``kind`` is density/degree/out_degree/in_degree."""

    x: int
    y: int
    deviation: Fraction
    kind: str = "density"


@dataclass(frozen=True)
class RegularityVerdict:
    holds: bool
    witness: Optional[Witness]
    checked_pairs: int
    mode: str = "exact"


class CapExceeded(GraphError):
    """Raised when an exhaustive scan would exceed the configured cap."""


# ---------------------------------------------------------------------------
# scan engine
# ---------------------------------------------------------------------------

def _columns(host: Graph | Digraph, a_members: tuple[int, ...],
             b_members: tuple[int, ...], directed_into_b: bool) -> list[int]:
    """For each b in B (positionally), the A-position bitmask of its partners.

    ``directed_into_b`` selects arcs A->B for digraphs; for graphs it is
    ignored (adjacency is symmetric).
    """
    rows = host.in_rows if (isinstance(host, Digraph) and directed_into_b) else host.rows
    cols = []
    for b in b_members:
        row = rows[b]
        cols.append(mask_of(i for i, v in enumerate(a_members) if row >> v & 1))
    return cols


def _prefix_sums(degs_sorted: list[int]) -> tuple[list[int], list[int]]:
    asc = [0]
    for d in degs_sorted:
        asc.append(asc[-1] + d)
    desc = [0]
    for d in reversed(degs_sorted):
        desc.append(desc[-1] + d)
    return asc, desc


def _x_has_violation(degs: list[int], x: int, smin_b: int,
                     num: int, den: int, p: int, q: int, mode: str) -> bool:
    """Does some qualifying Y violate, for the X whose B-degrees are ``degs``?

    mode "regular": violation iff |e/(x s) - num/den| >= p/q.
    mode "superdensity": violation iff e/(x s) <= num/den  (d(X,Y) > d fails).
    """
    degs_sorted = sorted(degs)
    asc, desc = _prefix_sums(degs_sorted)
    lb = len(degs)
    for s in range(smin_b, lb + 1):
        if mode == "regular":
            lhs_hi = (desc[s] * den - num * x * s) * q
            lhs_lo = (num * x * s - asc[s] * den) * q
            if lhs_hi >= p * x * s * den or lhs_lo >= p * x * s * den:
                return True
        else:
            if asc[s] * den <= num * x * s:
                return True
    return False


def _lex_subsets_with_violation_check(members: tuple[int, ...], smin: int, test):
    """DFS over subsets in sorted-member lex order; yield first mask with test(mask, size) truthy."""
    k = len(members)

    def rec(mask: int, size: int, start: int):
        for i in range(start, k):
            nm = mask | (1 << i)
            ns = size + 1
            if ns >= smin:
                hit = test(nm, ns)
                if hit is not None:
                    return hit
            hit = rec(nm, ns, i + 1)
            if hit is not None:
                return hit
        return None

    return rec(0, 0, 0)


def _positions_to_vertices(mask: int, members: tuple[int, ...]) -> int:
    return mask_of(members[i] for i in bits(mask))


def _scan_pair(host, a_mask: int, b_mask: int, eps: Fraction,
               target: Fraction, mode: str, cap: int,
               directed_into_b: bool = True,
               sampled: bool = False, seed: int = 0,
               trials: int = DEFAULT_TRIALS):
    """Core scan.  Returns (holds, witness, checked_pairs).

    target is the density to compare against (pair density for Definition-
    style regularity, the prescribed d for digraph regularity, or d itself in
    superdensity mode).
    """
    a_members = tuple(bits(a_mask))
    b_members = tuple(bits(b_mask))
    la, lb = len(a_members), len(b_members)
    smin_a = max(1, least_count_at_least(eps * la))
    smin_b = max(1, least_count_at_least(eps * lb))
    num, den = target.numerator, target.denominator
    p, q = eps.numerator, eps.denominator
    cols = _columns(host, a_members, b_members, directed_into_b)

    if sampled:
        rng = random.Random(seed)
        for t in range(trials):
            sx = smin_a if t % 2 == 0 else rng.randint(smin_a, la)
            xpos = rng.sample(range(la), sx)
            xmask = mask_of(xpos)
            degs = [popcount(c & xmask) for c in cols]
            if _x_has_violation(degs, sx, smin_b, num, den, p, q, mode):
                witness = _extract_extremal_y(cols, xmask, sx, smin_b, num, den,
                                              p, q, mode, a_members, b_members)
                return False, witness, t + 1
        return True, None, trials

    if la > cap or lb > cap:
        raise CapExceeded(
            f"sides {la}x{lb} exceed exhaustive cap {cap}; request sampled mode")

    checked = (sum(comb(la, s) for s in range(smin_a, la + 1))
               * sum(comb(lb, s) for s in range(smin_b, lb + 1)))

    violating_x = None
    for xmask in range(1, 1 << la):
        x = popcount(xmask)
        if x < smin_a:
            continue
        degs = [popcount(c & xmask) for c in cols]
        if _x_has_violation(degs, x, smin_b, num, den, p, q, mode):
            violating_x = xmask
            break
    if violating_x is None:
        return True, None, checked

    # A violation exists; recover the lexicographically least witness.
    def x_test(xmask: int, size: int):
        degs = [popcount(c & xmask) for c in cols]
        if not _x_has_violation(degs, size, smin_b, num, den, p, q, mode):
            return None
        return _least_y_witness(degs, xmask, size, smin_b, num, den, p, q,
                                mode, a_members, b_members)

    witness = _lex_subsets_with_violation_check(a_members, smin_a, x_test)
    assert witness is not None
    return False, witness, checked


def _violates(e: int, x: int, s: int, num: int, den: int, p: int, q: int,
              mode: str) -> bool:
    if mode == "regular":
        diff = e * den - num * x * s
        return abs(diff) * q >= p * x * s * den
    return e * den <= num * x * s


def _deviation(e: int, x: int, s: int, target: Fraction) -> Fraction:
    return abs(Fraction(e, x * s) - target)


def _least_y_witness(degs: list[int], xmask: int, x: int, smin_b: int,
                     num: int, den: int, p: int, q: int, mode: str,
                     a_members, b_members) -> Witness:
    """Lex-least violating Y for a fixed X known to admit one."""
    k = len(degs)

    def rec(ymask: int, size: int, e: int, start: int):
        for j in range(start, k):
            ne = e + degs[j]
            nm = ymask | (1 << j)
            ns = size + 1
            if ns >= smin_b and _violates(ne, x, ns, num, den, p, q, mode):
                return nm, ne, ns
            hit = rec(nm, ns, ne, j + 1)
            if hit is not None:
                return hit
        return None

    hit = rec(0, 0, 0, 0)
    assert hit is not None
    ymask, e, s = hit
    target = Fraction(num, den)
    dev = _deviation(e, x, s, target) if mode == "regular" else target - Fraction(e, x * s)
    return Witness(_positions_to_vertices(xmask, a_members),
                   _positions_to_vertices(ymask, b_members), dev)


def _extract_extremal_y(cols, xmask: int, x: int, smin_b: int, num: int,
                        den: int, p: int, q: int, mode: str,
                        a_members, b_members) -> Witness:
    """Some violating Y (an extremal one) for sampled-mode witnesses."""
    degs = [(popcount(c & xmask), j) for j, c in enumerate(cols)]
    lb = len(degs)
    by_asc = sorted(degs)
    for s in range(smin_b, lb + 1):
        for ordering in (by_asc, list(reversed(by_asc))):
            e = sum(d for d, _ in ordering[:s])
            if _violates(e, x, s, num, den, p, q, mode):
                ymask = mask_of(j for _, j in ordering[:s])
                target = Fraction(num, den)
                dev = (_deviation(e, x, s, target) if mode == "regular"
                       else target - Fraction(e, x * s))
                return Witness(_positions_to_vertices(xmask, a_members),
                               _positions_to_vertices(ymask, b_members), dev)
    raise AssertionError("violation vanished during extraction")


# ---------------------------------------------------------------------------
# public checkers
# ---------------------------------------------------------------------------

def check_pair_regular(spec: PairSpec, cap: int = DEFAULT_CAP,
                       sampled: bool = False, seed: int = 0,
                       trials: int = DEFAULT_TRIALS) -> RegularityVerdict:
    """Is the bipartite pair (A,B) eps-regular?  Exhaustive within ``cap``."""
    target = Fraction(edges_between(spec.host, spec.a, spec.b),
                      popcount(spec.a) * popcount(spec.b))
    holds, witness, checked = _scan_pair(spec.host, spec.a, spec.b,
                                         spec.epsilon, target, "regular", cap,
                                         sampled=sampled, seed=seed,
                                         trials=trials)
    return RegularityVerdict(holds, witness, checked,
                             "sampled" if sampled else "exact")


def check_pair_superregular(spec: PairSpec, cap: int = DEFAULT_CAP,
                            sampled: bool = False, seed: int = 0,
                            trials: int = DEFAULT_TRIALS) -> RegularityVerdict:
    """(eps,d)-superregularity: qualifying sub-densities > d and degrees > d * opposite side.

    Degree failures are reported first, as a singleton witness on the failing
    side with deviation d - deg/|other side|.
    """
    host, a, b, d = spec.host, spec.a, spec.b, spec.d
    ca, cb = popcount(a), popcount(b)
    directed = isinstance(host, Digraph)
    for v in bits(a):
        deg = popcount(host.rows[v] & b)
        if Fraction(deg) <= d * cb:
            return RegularityVerdict(
                False, Witness(1 << v, b, d - Fraction(deg, cb), "degree"), 0,
                "sampled" if sampled else "exact")
    back_rows = host.in_rows if directed else host.rows
    for v in bits(b):
        deg = popcount(back_rows[v] & a)
        if Fraction(deg) <= d * ca:
            return RegularityVerdict(
                False, Witness(a, 1 << v, d - Fraction(deg, ca), "degree"), 0,
                "sampled" if sampled else "exact")
    holds, witness, checked = _scan_pair(host, a, b, spec.epsilon, d,
                                         "superdensity", cap, sampled=sampled,
                                         seed=seed, trials=trials)
    return RegularityVerdict(holds, witness, checked,
                             "sampled" if sampled else "exact")


def check_digraph_regular(dg: Digraph, epsilon: RationalLike, d: RationalLike,
                          cap: int = DEFAULT_CAP, sampled: bool = False,
                          seed: int = 0,
                          trials: int = DEFAULT_TRIALS) -> RegularityVerdict:
    """Whole-digraph regularity: |d(X,Y) - d| < eps for all X,Y with |X|,|Y| >= eps n.

    X and Y range over arbitrary vertex subsets and may intersect (the
    definition quantifies over all subsets of V).
    """
    eps = as_fraction(epsilon)
    dd = as_fraction(d)
    if eps <= 0:
        raise GraphError("epsilon must be positive")
    if dg.n == 0:
        raise GraphError("empty digraph")
    fm = full_mask(dg.n)
    holds, witness, checked = _scan_pair(dg, fm, fm, eps, dd, "regular", cap,
                                         sampled=sampled, seed=seed,
                                         trials=trials)
    return RegularityVerdict(holds, witness, checked,
                             "sampled" if sampled else "exact")


def check_digraph_superregular(dg: Digraph, epsilon: RationalLike,
                               d: RationalLike, cap: int = DEFAULT_CAP,
                               sampled: bool = False, seed: int = 0,
                               trials: int = DEFAULT_TRIALS) -> RegularityVerdict:
    """[eps,d]-superregularity: eps-regular with density d and min semidegree >= d n."""
    eps = as_fraction(epsilon)
    dd = as_fraction(d)
    n = dg.n
    for v in range(n):
        if Fraction(dg.out_degree(v)) < dd * n:
            return RegularityVerdict(
                False, Witness(1 << v, 0, dd - Fraction(dg.out_degree(v), n),
                               "out_degree"), 0, "sampled" if sampled else "exact")
        if Fraction(dg.in_degree(v)) < dd * n:
            return RegularityVerdict(
                False, Witness(1 << v, 0, dd - Fraction(dg.in_degree(v), n),
                               "in_degree"), 0, "sampled" if sampled else "exact")
    return check_digraph_regular(dg, eps, dd, cap, sampled, seed, trials)


def low_degree_vertices(spec: PairSpec, y: int) -> int:
    """Vertices of A with at most (d - eps)|Y| neighbours in Y, as a bit-set.

    Boundary: the threshold (d - eps)|Y| may be negative, in which case no
    vertex qualifies; at threshold exactly 0 the degree-0 vertices qualify.
    """
    if y & ~spec.b:
        raise GraphError("Y must be a subset of B")
    sy = popcount(y)
    if Fraction(sy) < spec.epsilon * popcount(spec.b):
        raise GraphError("Y is undersized (|Y| < eps|B|)")
    threshold = (spec.d - spec.epsilon) * sy
    out = 0
    for v in bits(spec.a):
        if Fraction(popcount(spec.host.rows[v] & y)) <= threshold:
            out |= 1 << v
    return out
