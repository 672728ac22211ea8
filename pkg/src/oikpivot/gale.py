"""Gale strings: the cyclic evenness condition, derived Euler digraphs, and pivoting.

A Gale string is an n-bit string with m ones (m even) in which every
maximal cyclic run of ones has even length.  Strings are handled purely
combinatorially: the pivot that drops a 1 slides the odd half of its
broken run outward by one position.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .graph import Digraph
from .pivot import PathResult, PivotingSystem, follow_path


class BadParams(ValueError):
    pass


class OddRun(ValueError):
    pass


class LoopCreated(ValueError):
    pass


@dataclass(frozen=True)
class GaleLabeling:
    """Cyclic labeling of string positions by nodes 1..m."""

    m: int
    labels: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(self.labels))
        if any(not 1 <= l <= self.m for l in self.labels):
            raise ValueError(f"labels must lie in 1..{self.m}")

    @property
    def n(self) -> int:
        return len(self.labels)


def _runs(bits) -> list[tuple[int, int]]:
    """Maximal cyclic runs of ones as (start, length), 0-based starts."""
    n = len(bits)
    if all(bits):
        raise OddRun("no zero bounds any run")
    zero = bits.index(0)
    runs = []
    i = (zero + 1) % n
    start = None
    length = 0
    for _ in range(n):
        if bits[i]:
            if start is None:
                start = i
                length = 0
            length += 1
        elif start is not None:
            runs.append((start, length))
            start = None
        i = (i + 1) % n
    if start is not None:
        runs.append((start, length))
    return runs


def is_gale(bits) -> bool:
    """Cyclic evenness: every maximal run of ones bounded by zeros is even."""
    bits = tuple(bits)
    if not bits or all(bits):
        return False
    return all(length % 2 == 0 for _, length in _runs(bits))


def enumerate_gale(m: int, n: int) -> list[tuple[int, ...]]:
    """All n-bit strings with m ones satisfying cyclic evenness, lexicographic."""
    if m % 2 or m <= 0 or n <= m or n > 24:
        raise BadParams("need even m, 0 < m < n <= 24")
    out = []
    for ones in itertools.combinations(range(n), m):
        bits = [0] * n
        for j in ones:
            bits[j] = 1
        bits = tuple(bits)
        if is_gale(bits):
            out.append(bits)
    out.sort()
    return out


def derived_graph(lab: GaleLabeling) -> Digraph:
    """Euler digraph traced by the cyclic label sequence; edge j is (l(j), l(j+1))."""
    n = lab.n
    edges = []
    for j in range(n):
        a, b = lab.labels[j], lab.labels[(j + 1) % n]
        if a == b:
            raise LoopCreated(f"labels {j + 1} and {(j % n) + 2} coincide")
        edges.append((a, b))
    return Digraph(lab.m, tuple(edges))


def gale_to_matching(bits, lab: GaleLabeling) -> frozenset:
    """Read off the edges selected by the cyclically adjacent pairs of ones.

    The pair at positions (j, j+1) selects edge j of the derived graph
    (0-based).  The result is a perfect matching exactly when the labels of
    the one-positions cover 1..m.
    """
    bits = tuple(bits)
    if len(bits) != lab.n:
        raise ValueError("string length must match the labeling")
    chosen = []
    for start, length in _runs(bits):
        if length % 2:
            raise OddRun(f"run at position {start + 1} has odd length {length}")
        for k in range(0, length, 2):
            chosen.append((start + k) % lab.n)
    return frozenset(chosen)


def _pivot_bits(bits: tuple[int, ...], j: int) -> tuple[tuple[int, ...], int]:
    """Drop the one at 0-based position j; return (new string, entered position).

    The run containing j splits into an even and an odd part; the odd part
    is extended outward by one, which is where the new one appears.
    """
    n = len(bits)
    if not bits[j]:
        raise ValueError(f"position {j + 1} holds no one")
    a = j
    while bits[(a - 1) % n]:
        a = (a - 1) % n
    b = j
    while bits[(b + 1) % n]:
        b = (b + 1) % n
    right = (b - j) % n
    new = list(bits)
    new[j] = 0
    if right % 2 == 1:
        q = (b + 1) % n
    else:
        q = (a - 1) % n
    assert new[q] == 0
    new[q] = 1
    return tuple(new), q


class GaleSystem(PivotingSystem):
    """Gale strings as an (unoriented) pivoting system.

    Nodes are string positions 1..n, represented states are the ascending
    one-position tuples, and a position's label comes from the labeling.
    """

    def __init__(self, lab: GaleLabeling, ones: int):
        self.lab = lab
        self.ones = ones

    @property
    def m(self) -> int:
        return self.ones

    def representation(self, state) -> tuple:
        return tuple(j + 1 for j, b in enumerate(state) if b)

    def label(self, node) -> int:
        return self.lab.labels[node - 1]

    def state_count(self) -> int | None:
        return math.comb(self.lab.n, self.ones)

    def pivot(self, state, pos: int):
        ones = self.representation(state)
        j = ones[pos - 1] - 1
        new_bits, q = _pivot_bits(tuple(state), j)
        if not is_gale(new_bits):
            raise OddRun("pivot broke cyclic evenness")
        replaced = list(ones)
        replaced[pos - 1] = q + 1
        new_ones = self.representation(new_bits)
        pi = tuple(new_ones.index(v) + 1 for v in replaced)
        return new_bits, pi

    def state_label(self, state) -> str:
        return "".join(str(b) for b in state)


def gale_pivot_path(bits, lab: GaleLabeling, w: int, record_trace: bool = False) -> tuple[tuple[int, ...], PathResult]:
    """Complementary pivoting on strings from a completely labeled Gale string."""
    bits = tuple(bits)
    if not is_gale(bits):
        raise OddRun("input is not a Gale string")
    system = GaleSystem(lab, sum(bits))
    result = follow_path(system, bits, w, record_trace=record_trace)
    return result.end, result
