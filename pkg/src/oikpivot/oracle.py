"""Brute-force ground truth: matching enumeration, signed sums, exact determinants.

Everything here is deliberately simple and slow; it exists to cross-check
the fast algorithms on small instances.  Arithmetic is arbitrary-precision
integer throughout.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .graph import Digraph, matching_sign, permutation_parity

DEFAULT_CAP = 16


class TooLarge(ValueError):
    """Instance exceeds the brute-force size cap."""


@dataclass(frozen=True)
class SkewMatrix:
    """Skew-symmetric integer matrix (zero diagonal, b_uv = -b_vu)."""

    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        entries = tuple(tuple(row) for row in self.entries)
        object.__setattr__(self, "entries", entries)
        n = len(entries)
        for row in entries:
            if len(row) != n:
                raise ValueError("matrix must be square")
        for i in range(n):
            if entries[i][i] != 0:
                raise ValueError("diagonal must be zero")
            for j in range(i + 1, n):
                if entries[i][j] != -entries[j][i]:
                    raise ValueError("matrix must be skew-symmetric")

    @property
    def m(self) -> int:
        return len(self.entries)


def enumerate_matchings(g: Digraph, cap: int = DEFAULT_CAP) -> list[frozenset]:
    """All perfect matchings, by backtracking on the lowest uncovered node.

    Returns a deterministic order (lexicographic in chosen edge indices).
    Odd node counts have no perfect matching and yield [].
    """
    if g.m > cap:
        raise TooLarge(f"m={g.m} exceeds cap {cap}")
    if g.m % 2:
        return []
    incident = [[] for _ in range(g.m + 1)]
    for i, e in enumerate(g.edges):
        incident[e.tail].append(i)
        incident[e.head].append(i)
    for lst in incident:
        lst.sort()
    covered = bytearray(g.m + 1)
    chosen: list[int] = []
    found: list[frozenset] = []

    def rec(lowest: int) -> None:
        u = lowest
        while u <= g.m and covered[u]:
            u += 1
        if u > g.m:
            found.append(frozenset(chosen))
            return
        covered[u] = 1
        for i in incident[u]:
            e = g.edges[i]
            v = e.head if e.tail == u else e.tail
            if covered[v]:
                continue
            covered[v] = 1
            chosen.append(i)
            rec(u + 1)
            chosen.pop()
            covered[v] = 0
        covered[u] = 0

    rec(1)
    return found


def matching_count(g: Digraph, cap: int = DEFAULT_CAP) -> int:
    """Independent count of perfect matchings by pairing recursion."""
    if g.m > cap:
        raise TooLarge(f"m={g.m} exceeds cap {cap}")
    if g.m % 2:
        return 0
    # multiplicity of {u,v} pairs, ignoring direction
    mult: dict[tuple[int, int], int] = {}
    for e in g.edges:
        key = (min(e.tail, e.head), max(e.tail, e.head))
        mult[key] = mult.get(key, 0) + 1

    def rec(nodes: tuple[int, ...]) -> int:
        if not nodes:
            return 1
        u = nodes[0]
        total = 0
        for k in range(1, len(nodes)):
            v = nodes[k]
            ways = mult.get((u, v), 0)
            if ways:
                total += ways * rec(nodes[1:k] + nodes[k + 1 :])
        return total

    return rec(tuple(range(1, g.m + 1)))


def skew_adjacency(g: Digraph) -> SkewMatrix:
    """b_uv = (#edges u->v) - (#edges v->u); oppositely oriented parallels cancel."""
    n = g.m
    b = [[0] * n for _ in range(n)]
    for e in g.edges:
        b[e.tail - 1][e.head - 1] += 1
        b[e.head - 1][e.tail - 1] -= 1
    return SkewMatrix(tuple(tuple(row) for row in b))


def signed_matching_sum(g: Digraph, cap: int = DEFAULT_CAP) -> int:
    """Sum of matching signs over all perfect matchings."""
    return sum(matching_sign(g, M) for M in enumerate_matchings(g, cap=cap))


def determinant_exact(B: SkewMatrix, cap: int = DEFAULT_CAP) -> int:
    """Exact integer determinant via fraction-free (Bareiss) elimination."""
    n = B.m
    if n > cap:
        raise TooLarge(f"m={n} exceeds cap {cap}")
    if n == 0:
        return 1
    a = [list(row) for row in B.entries]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * pivot - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = pivot
    return sign * a[n - 1][n - 1]


def determinant_expansion(B: SkewMatrix) -> int:
    """Determinant by the permutation-sum definition; oracle for small m."""
    n = B.m
    if n > 8:
        raise TooLarge("permutation expansion limited to m <= 8")
    if n == 0:
        return 1
    total = 0
    for perm in itertools.permutations(range(n)):
        term = 1
        for i in range(n):
            term *= B.entries[i][perm[i]]
            if term == 0:
                break
        if term:
            total += permutation_parity([p + 1 for p in perm]) * term
    return total
