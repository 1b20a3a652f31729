"""Isomorph-free exhaustive enumeration via canonical labellings.

The canonical form of a (di)graph is the lexicographically greatest column
encoding over all vertex orderings, computed by branch and bound: at each
level only candidates realising the maximal next column are branched, twin
vertices (interchangeable by a transposition automorphism) are branched once,
and prefixes that fall behind the incumbent are cut.

Enumeration is by vertex extension: every graph on k+1 vertices arises from a
graph on k vertices by attaching one vertex, so extending every canonical
k-vertex parent in all 2^k ways and deduplicating canonical forms yields an
isomorph-free list.  A hereditary predicate (closed under vertex deletion,
e.g. H-subgraph-freeness) may prune levels without losing completeness.
"""

from __future__ import annotations

from typing import Callable, Optional, Sequence

from .graphs import Digraph, Graph, full_mask

Canon = tuple[int, ...]


def _graph_columns(rows: Sequence[int], placed: list[int], cand: int) -> int:
    col = 0
    row = rows[cand]
    for p in placed:
        col = (col << 1) | (row >> p & 1)
    return col


def _digraph_columns(out_rows: Sequence[int], in_rows: Sequence[int],
                     placed: list[int], cand: int) -> int:
    col = 0
    out_row = out_rows[cand]
    in_row = in_rows[cand]
    for p in placed:
        col = (col << 2) | ((out_row >> p & 1) << 1) | (in_row >> p & 1)
    return col


def _twins_reduce(cands: list[int], is_twin: Callable[[int, int], bool]) -> list[int]:
    reps: list[int] = []
    for c in cands:
        if not any(is_twin(r, c) for r in reps):
            reps.append(c)
    return reps


def canonical_form(g: Graph | Digraph) -> Canon:
    """Canonical column encoding; equal iff the (di)graphs are isomorphic."""
    n = g.n
    if n == 0:
        return ()
    directed = isinstance(g, Digraph)
    rows = g.rows
    in_rows = g.in_rows if directed else rows

    def is_twin(u: int, v: int) -> bool:
        other = ~((1 << u) | (1 << v))
        if rows[u] & other != rows[v] & other:
            return False
        if directed:
            if in_rows[u] & other != in_rows[v] & other:
                return False
            if (rows[u] >> v & 1) != (rows[v] >> u & 1):
                return False
        return True

    column = (_digraph_columns if directed else _graph_columns)
    best: list[Optional[Canon]] = [None]

    def descend(placed: list[int], remaining: list[int], cols: Canon) -> None:
        if not remaining:
            if best[0] is None or cols > best[0]:
                best[0] = cols
            return
        if directed:
            scored = [(column(rows, in_rows, placed, c), c) for c in remaining]
        else:
            scored = [(column(rows, placed, c), c) for c in remaining]
        top = max(s for s, _ in scored)
        nxt = cols + (top,)
        incumbent = best[0]
        if incumbent is not None and nxt < incumbent[:len(nxt)]:
            return
        branch = _twins_reduce([c for s, c in scored if s == top], is_twin)
        for c in branch:
            descend(placed + [c], [r for r in remaining if r != c], nxt)

    for root in _twins_reduce(list(range(n)), is_twin):
        descend([root], [v for v in range(n) if v != root], ())
    assert best[0] is not None
    return best[0]


def isomorphic(g: Graph | Digraph, h: Graph | Digraph) -> bool:
    if type(g) is not type(h) or g.n != h.n or g.edge_count != h.edge_count:
        return False
    if isinstance(g, Graph) and g.degree_sequence() != h.degree_sequence():
        return False
    if isinstance(g, Digraph) and g.degree_sequences() != h.degree_sequences():
        return False
    return canonical_form(g) == canonical_form(h)


def enumerate_graphs(n: int,
                     hereditary: Optional[Callable[[Graph], bool]] = None) -> list[Graph]:
    """All graphs on n vertices up to isomorphism, one representative each.

    ``hereditary``, if given, must be closed under vertex deletion; levels
    are then pruned to graphs satisfying it.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    level = [Graph.empty(0)]
    for k in range(n):
        seen: dict[Canon, Graph] = {}
        for parent in level:
            for nbrs in range(1 << k):
                child = parent.add_vertex(nbrs)
                if hereditary is not None and not hereditary(child):
                    continue
                key = canonical_form(child)
                if key not in seen:
                    seen[key] = child
        level = list(seen.values())
    return level


def enumerate_tournaments(n: int) -> list[Digraph]:
    """All tournaments on n vertices up to isomorphism."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    level = [Digraph.empty(0)]
    for k in range(n):
        fm = full_mask(k)
        seen: dict[Canon, Digraph] = {}
        for parent in level:
            for out in range(1 << k):
                child = parent.add_vertex(out, fm ^ out)
                key = canonical_form(child)
                if key not in seen:
                    seen[key] = child
        level = list(seen.values())
    return level


def brute_force_graph_classes(n: int) -> int:
    """Count of isomorphism classes by labelled brute force (independent oracle).

    Deduplicates all 2^C(n,2) labelled graphs by minimising the edge bitmask
    over every vertex permutation.  Exponential twice over; intended for
    n <= 5 cross-checks only.
    """
    from itertools import combinations, permutations

    pairs = list(combinations(range(n), 2))
    index = {p: i for i, p in enumerate(pairs)}
    classes = set()
    perms = list(permutations(range(n)))
    for code in range(1 << len(pairs)):
        best = None
        for perm in perms:
            im = 0
            for i, (u, v) in enumerate(pairs):
                if code >> i & 1:
                    a, b = perm[u], perm[v]
                    if a > b:
                        a, b = b, a
                    im |= 1 << index[(a, b)]
            if best is None or im < best:
                best = im
        classes.add(best)
    return len(classes)


def brute_force_tournament_classes(n: int) -> int:
    """Labelled brute-force count of tournament classes (n <= 4 cross-checks)."""
    from itertools import combinations, permutations

    pairs = list(combinations(range(n), 2))
    index = {p: i for i, p in enumerate(pairs)}
    classes = set()
    perms = list(permutations(range(n)))
    for code in range(1 << len(pairs)):
        best = None
        for perm in perms:
            im = 0
            for i, (u, v) in enumerate(pairs):
                a, b = perm[u], perm[v]
                forward = code >> i & 1
                if a > b:
                    a, b = b, a
                    forward = not forward
                if forward:
                    im |= 1 << index[(a, b)]
            if best is None or im < best:
                best = im
        classes.add(best)
    return len(classes)
