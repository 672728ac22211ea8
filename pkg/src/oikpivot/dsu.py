"""Union-find over dense integer nodes, with rank heuristic and path compression.

``unite`` reports both the surviving and the retired representative so the
caller can move per-representative data (edge lists) in constant time.
"""

from __future__ import annotations


class AlreadyInitialized(ValueError):
    pass


class Uninitialized(ValueError):
    pass


class SameClass(ValueError):
    pass


class UnionFind:
    def __init__(self, capacity: int):
        # parent -1 marks a node makeset has not seen yet
        self._parent = [-1] * capacity
        self._rank = [0] * capacity
        self.find_count = 0
        self.unite_count = 0

    def makeset(self, x: int) -> None:
        if self._parent[x] != -1:
            raise AlreadyInitialized(f"node {x} already initialized")
        self._parent[x] = x
        self._rank[x] = 0

    def find(self, x: int) -> int:
        parent = self._parent
        if parent[x] == -1:
            raise Uninitialized(f"node {x} not initialized")
        self.find_count += 1
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def unite(self, x: int, y: int) -> tuple[int, int]:
        """Merge the classes of x and y; return (new_rep, old_rep).

        Equal ranks attach the first root under the second, so the second
        argument's root survives; this tie-break is relied on by callers
        that replay recorded runs.
        """
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            raise SameClass(f"{x} and {y} are already in the same class")
        self.unite_count += 1
        rank = self._rank
        if rank[rx] > rank[ry]:
            self._parent[ry] = rx
            return rx, ry
        self._parent[rx] = ry
        if rank[rx] == rank[ry]:
            rank[ry] += 1
        return ry, rx
