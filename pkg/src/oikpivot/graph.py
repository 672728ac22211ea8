"""Euler digraphs, perfect matchings, permutation parity, and edge pairings.

Nodes are the integers ``1..m``.  Edges are kept in a fixed order so that
parallel edges remain distinguishable; a matching is a set of edge indices
(0-based positions into ``Digraph.edges``).
"""

from __future__ import annotations

from dataclasses import dataclass


class DuplicateEntry(ValueError):
    """A sequence that should be a permutation contains a repeated entry."""


class NotPerfectMatching(ValueError):
    """The given edge set is not a perfect matching of the graph."""


class NotEulerian(ValueError):
    """The digraph does not have indegree = outdegree at every node."""


class NotAlternating(ValueError):
    """The given edge set is not an alternating cycle for the matching."""


@dataclass(frozen=True)
class Edge:
    """Directed edge from ``tail`` to ``head`` (both in 1..m)."""

    tail: int
    head: int


@dataclass(frozen=True)
class Digraph:
    """Directed multigraph on nodes ``1..m`` with optional matched edges.

    ``matched`` holds indices into ``edges``.  The constructor checks node
    ranges and rejects loops; whether ``matched`` actually is a perfect
    matching is reported by :func:`validate_instance`, not enforced here.
    Instances are immutable and safe to share.
    """

    m: int
    edges: tuple[Edge, ...]
    matched: frozenset[int] = frozenset()

    def __post_init__(self):
        edges = tuple(e if isinstance(e, Edge) else Edge(*e) for e in self.edges)
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "matched", frozenset(self.matched))
        if self.m < 0:
            raise ValueError("node count must be non-negative")
        for e in edges:
            if not (1 <= e.tail <= self.m and 1 <= e.head <= self.m):
                raise ValueError(f"edge {e} out of node range 1..{self.m}")
            if e.tail == e.head:
                raise ValueError(f"loop {e} not allowed")
        for i in self.matched:
            if not (0 <= i < len(edges)):
                raise ValueError(f"matched index {i} out of range")

    def degrees(self) -> tuple[list[int], list[int]]:
        """(indegree, outdegree) arrays indexed by node (entry 0 unused)."""
        indeg = [0] * (self.m + 1)
        outdeg = [0] * (self.m + 1)
        for e in self.edges:
            outdeg[e.tail] += 1
            indeg[e.head] += 1
        return indeg, outdeg

    def out_edge_indices(self) -> list[list[int]]:
        out = [[] for _ in range(self.m + 1)]
        for i, e in enumerate(self.edges):
            out[e.tail].append(i)
        return out

    def in_edge_indices(self) -> list[list[int]]:
        inc = [[] for _ in range(self.m + 1)]
        for i, e in enumerate(self.edges):
            inc[e.head].append(i)
        return inc

    def with_matching(self, matching) -> "Digraph":
        """Copy of the graph with a different matched edge set."""
        return Digraph(self.m, self.edges, frozenset(matching))


@dataclass(frozen=True)
class ValidationReport:
    eulerian: bool
    perfect_matching: bool
    m_even: bool


@dataclass(frozen=True)
class Pairing:
    """Per-node bijection between incoming and outgoing edges.

    ``successor[e]`` is the outgoing edge paired with incoming edge ``e``
    at ``e``'s head.  Following successors traverses each edge once per
    closed tour.
    """

    successor: dict[int, int]

    def predecessor(self) -> dict[int, int]:
        return {v: k for k, v in self.successor.items()}


def validate_instance(g: Digraph) -> ValidationReport:
    """Report whether the instance is Eulerian with a perfect matching."""
    indeg, outdeg = g.degrees()
    eulerian = all(indeg[u] == outdeg[u] for u in range(1, g.m + 1))
    covered = [0] * (g.m + 1)
    for i in g.matched:
        e = g.edges[i]
        covered[e.tail] += 1
        covered[e.head] += 1
    perfect = bool(g.matched) and all(covered[u] == 1 for u in range(1, g.m + 1))
    return ValidationReport(eulerian, perfect, g.m % 2 == 0)


def permutation_parity(seq) -> int:
    """Parity (+1 even, -1 odd) of a sequence of distinct integers.

    The parity is the sign of the number of inversions, computed in
    O(n log n) via cycle decomposition of the sorting permutation.
    """
    seq = list(seq)
    n = len(seq)
    order = sorted(range(n), key=seq.__getitem__)
    for a, b in zip(order, order[1:]):
        if seq[a] == seq[b]:
            raise DuplicateEntry(f"repeated entry {seq[a]!r}")
    seen = bytearray(n)
    parity = 1
    for start in range(n):
        if seen[start]:
            continue
        length = 0
        j = start
        while not seen[j]:
            seen[j] = 1
            j = order[j]
            length += 1
        if length % 2 == 0:
            parity = -parity
    return parity


def _require_perfect(g: Digraph, matching) -> frozenset:
    matching = frozenset(matching)
    covered = [0] * (g.m + 1)
    for i in matching:
        if not (0 <= i < len(g.edges)):
            raise NotPerfectMatching(f"edge index {i} out of range")
        e = g.edges[i]
        covered[e.tail] += 1
        covered[e.head] += 1
    if not all(covered[u] == 1 for u in range(1, g.m + 1)):
        raise NotPerfectMatching("matching does not cover every node exactly once")
    return matching


def matching_sign(g: Digraph, matching) -> int:
    """Sign of a perfect matching.

    List the matched edges in ascending edge-index order, write each as
    (tail, head), and take the parity of the resulting node sequence.  Any
    fixed listing order gives the same value; ascending is used for
    determinism.
    """
    matching = _require_perfect(g, matching)
    seq = []
    for i in sorted(matching):
        e = g.edges[i]
        seq.append(e.tail)
        seq.append(e.head)
    return permutation_parity(seq)


def euler_pairing(g: Digraph) -> Pairing:
    """Pair each edge with its tour successor at its head.

    Runs Hierholzer's algorithm once per connected component with edges;
    the resulting pairing is a bijection between incoming and outgoing
    edges at every node.
    """
    report = validate_instance(g)
    if not report.eulerian or not g.edges:
        raise NotEulerian("euler_pairing needs an Eulerian digraph with edges")
    out = g.out_edge_indices()
    ptr = [0] * (g.m + 1)
    successor: dict[int, int] = {}
    for s in range(1, g.m + 1):
        if ptr[s] >= len(out[s]):
            continue
        # Hierholzer: emit edges in postorder, reversed = Euler circuit.
        stack: list[tuple[int, int | None]] = [(s, None)]
        tour: list[int] = []
        while stack:
            v, ein = stack[-1]
            if ptr[v] < len(out[v]):
                ei = out[v][ptr[v]]
                ptr[v] += 1
                stack.append((g.edges[ei].head, ei))
            else:
                stack.pop()
                if ein is not None:
                    tour.append(ein)
        tour.reverse()
        for a, b in zip(tour, tour[1:] + tour[:1]):
            successor[a] = b
    if len(successor) != len(g.edges):
        raise NotEulerian("tour did not cover every edge")
    return Pairing(successor)


def symmetric_difference(g: Digraph, matching, cycle) -> frozenset:
    """Return ``matching xor cycle`` where the cycle alternates with the matching.

    Every node touched by the cycle must be incident to exactly one matched
    and one unmatched cycle edge; the result is again a perfect matching.
    """
    matching = _require_perfect(g, matching)
    cycle = frozenset(cycle)
    in_m = [0] * (g.m + 1)
    out_m = [0] * (g.m + 1)
    for i in cycle:
        e = g.edges[i]
        bucket = in_m if i in matching else out_m
        bucket[e.tail] += 1
        bucket[e.head] += 1
    for u in range(1, g.m + 1):
        if (in_m[u], out_m[u]) not in ((0, 0), (1, 1)):
            raise NotAlternating(f"node {u} breaks matched/unmatched alternation")
    result = matching ^ cycle
    covered = [0] * (g.m + 1)
    for i in result:
        e = g.edges[i]
        covered[e.tail] += 1
        covered[e.head] += 1
    if not all(covered[u] == 1 for u in range(1, g.m + 1)):
        raise NotAlternating("symmetric difference is not a perfect matching")
    return result
