"""Find an oppositely signed perfect matching of an Euler digraph.

The solver contracts degree-one nodes and discards unmatched cycles until a
trivial sign-switching pair (an unmatched and a matched edge between the
same two classes, oppositely oriented) appears, then expands that pair back
into a sign-switching cycle of the original graph.  Symmetric difference
with the cycle flips the matching sign.

Data layout: edges live in a flat arena (index 0 is the null reference).
Unmatched edges sit in circular doubly-linked out/in lists per node, headed
by sentinel dummy edges that share the same four link fields; every list
append and remove is four pointer writes.  Matched edges are stored
directly on their endpoints and their otherwise unused in-list links thread
the roster of live matched edges.  Contracted classes are tracked by a
union-find; edge endpoints are never rewritten, so an edge always runs from
``find(tail)`` to ``find(head)`` in the reduced graph.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .dsu import UnionFind
from .graph import Digraph, NotEulerian, NotPerfectMatching, _require_perfect, symmetric_difference, validate_instance


class NotBipartite(ValueError):
    pass


class SourceOrSink(ValueError):
    """A node is missing an incoming or an outgoing edge."""


class InvariantViolation(AssertionError):
    """A debug-mode structural invariant failed; indicates a solver bug."""


@dataclass
class SolveStats:
    visits: int = 0
    follows: int = 0
    shrinks: int = 0
    drops: int = 0
    restarts: int = 0
    finds: int = 0
    unites: int = 0

    @property
    def ops(self) -> int:
        return self.visits + self.follows + self.shrinks + self.drops + self.restarts


@dataclass
class SwitchResult:
    """Oppositely signed matching plus the sign-switching cycle that produced it.

    ``cycle_pairs`` lists (unmatched, matched) edge-index pairs; both edges
    of a pair point in the same direction along the cycle.  All indices are
    0-based positions into the input graph's edge tuple.
    """

    matching: frozenset
    cycle_pairs: tuple[tuple[int, int], ...]
    cycle_edges: frozenset
    stats: SolveStats
    trace: tuple | None = None


@dataclass
class BipartiteResult:
    matching: frozenset
    cycle_edges: frozenset
    visited_count: int


class Solver:
    """Single-use mutable working state for one ``find_opposite_matching`` run."""

    def __init__(self, g: Digraph, matching, debug: bool = False, record_trace: bool = False):
        report = validate_instance(g)
        if not report.eulerian:
            raise NotEulerian("graph is not an Euler digraph")
        matching = _require_perfect(g, matching)
        self.g = g
        self.matching = matching
        self.debug = debug
        self.record = record_trace
        self.trace: list[tuple] = []
        self.stats = SolveStats()

        k = len(g.edges)
        m = g.m
        self.k = k
        self.roster = k + m + 1  # sentinel for the matched-edge roster
        size = k + m + 2
        self.nxo = [0] * size
        self.pvo = [0] * size
        self.nxi = [0] * size
        self.pvi = [0] * size
        self.tail = [0] * size
        self.head = [0] * size
        self.partner = [0] * size
        # per-node fields (index by original node id)
        self.matched_of = [0] * (m + 1)
        self.origmatched = [0] * (m + 1)
        self.visited = [0] * (m + 1)
        self.sleeptime = [0] * (m + 1)
        self.sleepcounter = 0
        self.vn = [0] * (m + 2)  # visitednode, 1-based
        self.ve = [0] * (m + 2 + k)  # visitededge, 1-based
        self.vc = 0

        for u in range(1, m + 1):
            s = k + u
            self.nxo[s] = self.pvo[s] = s
            self.nxi[s] = self.pvi[s] = s
        r = self.roster
        self.nxi[r] = self.pvi[r] = r

        for i, e in enumerate(g.edges):
            eid = i + 1
            self.tail[eid] = e.tail
            self.head[eid] = e.head
            if i in matching:
                self.matched_of[e.tail] = eid
                self.matched_of[e.head] = eid
                self._append(self.nxi, self.pvi, r, eid)
            else:
                self._append(self.nxo, self.pvo, k + e.tail, eid)
                self._append(self.nxi, self.pvi, k + e.head, eid)

        self.dsu = UnionFind(m + 1)
        for u in range(1, m + 1):
            self.dsu.makeset(u)
            self.origmatched[u] = self.matched_of[u]

    # -- intrusive list plumbing ------------------------------------------

    @staticmethod
    def _append(nx, pv, sent, e):
        last = pv[sent]
        nx[last] = e
        pv[e] = last
        nx[e] = sent
        pv[sent] = e

    @staticmethod
    def _remove(nx, pv, e):
        nx[pv[e]] = nx[e]
        pv[nx[e]] = pv[e]

    @staticmethod
    def _splice(nx, pv, dst_sent, src_sent):
        first = nx[src_sent]
        if first == src_sent:
            return
        last = pv[src_sent]
        dlast = pv[dst_sent]
        nx[dlast] = first
        pv[first] = dlast
        nx[last] = dst_sent
        pv[dst_sent] = last
        # the source sentinel belongs to a retired representative and is
        # never consulted again, so it may keep stale links

    def outlist(self, rep: int) -> list[int]:
        out = []
        s = self.k + rep
        e = self.nxo[s]
        while e != s:
            out.append(e)
            e = self.nxo[e]
        return out

    def inlist(self, rep: int) -> list[int]:
        inc = []
        s = self.k + rep
        e = self.nxi[s]
        while e != s:
            inc.append(e)
            e = self.nxi[e]
        return inc

    def live_matched_edges(self) -> list[int]:
        out = []
        r = self.roster
        e = self.nxi[r]
        while e != r:
            out.append(e)
            e = self.nxi[e]
        return out

    def find(self, x: int) -> int:
        return self.dsu.find(x)

    # -- the contraction and cycle-deletion steps -------------------------

    def shrink(self, e: int, me: int) -> tuple[int, int]:
        """Contract across unmatched edge e and matched edge me.

        e runs (in the reduced graph) from class U into the middle class V,
        whose only outgoing edge is the matched me into class W; removes e
        and me, merges U and W, and records e as me's partner for the later
        expansion.  Returns (new_rep, old_rep) of the merge.
        """
        u_rep = self.find(self.tail[e])
        w_rep = self.find(self.head[me])
        self._remove(self.nxo, self.pvo, e)
        if self.debug:
            v_rep = self.find(self.head[e])
            self.sleepcounter += 1
            self.sleeptime[v_rep] = self.sleepcounter
        self.partner[me] = e
        self._remove(self.nxi, self.pvi, me)  # off the roster
        x_rep, y_rep = self.dsu.unite(u_rep, w_rep)
        self._splice(self.nxo, self.pvo, self.k + x_rep, self.k + y_rep)
        self._splice(self.nxi, self.pvi, self.k + x_rep, self.k + y_rep)
        self.matched_of[x_rep] = self.matched_of[u_rep]
        self.stats.shrinks += 1
        if self.record:
            self.trace.append(("shrink", e - 1, me - 1, x_rep, y_rep, self.vc, self._vn_prefix(), self._ve_prefix()))
        return x_rep, y_rep

    def checkvisited(self, w: int) -> None:
        """If node w is on the current path, delete the cycle it closes."""
        wv = self.visited[w]
        if wv > 0:
            for i in range(wv, self.vc):
                ei = self.ve[i]
                self._remove(self.nxo, self.pvo, ei)
                self._remove(self.nxi, self.pvi, ei)
                self.visited[self.vn[i]] = 0
            self.stats.drops += self.vc - wv
            dropped = self.vc > wv
            self.vc = wv
            if dropped and self.record:
                self.trace.append(("drop", w, self.vc, self._vn_prefix(), self._ve_prefix()))

    def expand_cycle(self, e: int, me: int) -> SwitchResult:
        """Grow the trivial pair (e, me) into a cycle of the original graph.

        Work-stack version of the recursive reconnect: while the endpoints
        that should coincide differ, splice in the original matched edge of
        the unmatched endpoint together with its recorded partner.
        """
        pairs = [(e, me)]
        stack = [(self.head[e], self.tail[me]), (self.tail[e], self.head[me])]
        while stack:
            x, y = stack.pop()
            if x == y:
                continue
            mm = self.origmatched[x]
            ee = self.partner[mm]
            if mm == 0 or ee == 0:
                raise InvariantViolation(f"no recorded partner while reconnecting at node {x}")
            pairs.append((ee, mm))
            stack.append((self.head[ee], self.tail[mm]))
            stack.append((self.tail[ee], y))
        cycle_pairs = tuple((pe - 1, pm - 1) for pe, pm in pairs)
        cycle_edges = frozenset(i for pair in cycle_pairs for i in pair)
        new_matching = symmetric_difference(self.g, self.matching, cycle_edges)
        self.stats.finds = self.dsu.find_count
        self.stats.unites = self.dsu.unite_count
        if self.record:
            self.trace.append(("cycle", cycle_pairs))
        return SwitchResult(
            matching=new_matching,
            cycle_pairs=cycle_pairs,
            cycle_edges=cycle_edges,
            stats=self.stats,
            trace=tuple(self.trace) if self.record else None,
        )

    # -- main loop ---------------------------------------------------------

    def run(self, start: int | None = None) -> SwitchResult:
        if start is not None:
            if start not in self.matching:
                raise NotPerfectMatching(f"start edge {start} is not matched")
            start_edge = start + 1
        else:
            start_edge = None
        while True:
            # step A: pick a live matched edge and stand at its head class
            if start_edge is not None:
                me = start_edge
                start_edge = None
            else:
                me = self.nxi[self.roster]
                if me == self.roster:
                    raise InvariantViolation("matched-edge roster exhausted")
            self.stats.restarts += 1
            if self.debug:
                for u in range(1, self.g.m + 1):
                    if self.visited[u] and self.sleeptime[u] == 0 and self.find(u) == u:
                        raise InvariantViolation(f"live class {u} still marked visited at restart")
            v_rep = self.find(self.head[me])
            self.vc = 1
            if self.record:
                self.trace.append(("restart", me - 1, v_rep))
            while True:
                # step B: extend the unmatched path from v_rep
                self.vn[self.vc] = v_rep
                self.visited[v_rep] = self.vc
                self.stats.visits += 1
                if self.record:
                    self.trace.append(("visit", self.vc, self._vn_prefix(), self._ve_prefix()))
                if self.debug:
                    self._check_awake()
                s = self.k + v_rep
                e = self.nxo[s]
                if e != s:
                    w = self.find(self.head[e])
                    self.ve[self.vc] = e
                    self.vc += 1
                    self.stats.follows += 1
                    if self.record:
                        # vn[vc] is not assigned yet at this point
                        self.trace.append(("follow", e - 1, self.vc, tuple(self.vn[1 : self.vc]), self._ve_prefix()))
                    self.checkvisited(w)
                    v_rep = w
                    continue
                me = self.matched_of[v_rep]
                w = self.find(self.head[me])
                if self.vc < 2:
                    raise InvariantViolation("empty outlist at the start of a path")
                self.vc -= 1
                u_rep = self.vn[self.vc]
                e = self.ve[self.vc]
                if w == u_rep:
                    return self.expand_cycle(e, me)
                self.shrink(e, me)
                if self.debug:
                    self._check_awake()
                self.checkvisited(w)
                if self.debug:
                    self._check_awake()
                if self.vc > 1:
                    v_rep = self.find(w)
                    continue
                # The merged class may still carry the visited mark from its
                # stint on the abandoned path (the B-top re-mark that would
                # refresh it never happens on this branch); clear it so the
                # next phase cannot mistake it for a cycle.
                self.visited[self.find(w)] = 0
                break  # back to step A with a fresh matched edge

    def _vn_prefix(self) -> tuple[int, ...]:
        return tuple(self.vn[1 : self.vc + 1]) if self.vc >= 1 else ()

    def _ve_prefix(self) -> tuple[int, ...]:
        # 0-based edge indices of the path edges recorded so far
        return tuple(x - 1 for x in self.ve[1 : self.vc])

    # -- debug invariants ---------------------------------------------------

    def _check_awake(self) -> None:
        """Structural conditions on every class; violations abort the run.

        For a class with representative R and matched edge m' = matched_of[R]
        there is exactly one member node u and an outside node z with:
        awake R: z awake and {u,z} = {m'.tail, m'.head}; asleep R: u = m'.tail,
        z = m'.head, z awake or asleep later than R.  Every other member
        is the head of its original matched edge, whose tail fell asleep
        earlier and whose recorded partner leads back into the class.
        """
        m = self.g.m
        groups: dict[int, list[int]] = {}
        for u in range(1, m + 1):
            groups.setdefault(self.find(u), []).append(u)
        for rep, members in groups.items():
            mp = self.matched_of[rep]
            if mp == 0:
                raise InvariantViolation(f"class {rep} has no matched edge")
            asleep = self.sleeptime[rep] > 0
            t, h = self.tail[mp], self.head[mp]
            inside = [z for z in (t, h) if self.find(z) == rep]
            if len(inside) != 1:
                raise InvariantViolation(f"matched edge {mp} has {len(inside)} endpoints in class {rep}")
            u_node = inside[0]
            z_node = h if u_node == t else t
            z_rep = self.find(z_node)
            if not asleep:
                if self.sleeptime[z_rep] != 0:
                    raise InvariantViolation(f"awake class {rep} matched to asleep node {z_node}")
            else:
                if u_node != t:
                    raise InvariantViolation(f"asleep class {rep}: inside endpoint is not the matched tail")
                if self.sleeptime[z_rep] != 0 and self.sleeptime[z_rep] <= self.sleeptime[rep]:
                    raise InvariantViolation(f"asleep class {rep}: partner class slept earlier")
            for y in members:
                if y == u_node:
                    continue
                my = self.origmatched[y]
                if my == 0 or self.head[my] != y:
                    raise InvariantViolation(f"node {y} is not the head of its original matched edge")
                t_rep = self.find(self.tail[my])
                if self.sleeptime[t_rep] == 0:
                    raise InvariantViolation(f"matched tail class of node {y} is awake")
                if asleep and self.sleeptime[t_rep] >= self.sleeptime[rep]:
                    raise InvariantViolation(f"matched tail class of node {y} slept after class {rep}")
                ee = self.partner[my]
                if ee == 0:
                    raise InvariantViolation(f"matched edge of node {y} has no partner")
                if self.find(self.head[ee]) != t_rep:
                    raise InvariantViolation(f"partner head of node {y} left the matched tail class")
                x = self.tail[ee]
                if self.find(x) != rep or x == y:
                    raise InvariantViolation(f"partner tail of node {y} does not close inside class {rep}")


def find_opposite_matching(
    g: Digraph,
    matching=None,
    start: int | None = None,
    debug: bool = False,
    record_trace: bool = False,
) -> SwitchResult:
    """Return a perfect matching of opposite sign and its sign-switching cycle.

    ``matching`` defaults to the graph's matched edge set; ``start``
    optionally overrides the first matched edge picked (0-based edge
    index).  The run may leave parts of the graph unvisited; that is fine.
    """
    if matching is None:
        matching = g.matched
    solver = Solver(g, matching, debug=debug, record_trace=record_trace)
    return solver.run(start=start)


def _bipartition(g: Digraph) -> list[int]:
    color = [-1] * (g.m + 1)
    adj = [[] for _ in range(g.m + 1)]
    for e in g.edges:
        adj[e.tail].append(e.head)
        adj[e.head].append(e.tail)
    for s in range(1, g.m + 1):
        if color[s] != -1:
            continue
        color[s] = 0
        queue = [s]
        while queue:
            u = queue.pop()
            for v in adj[u]:
                if color[v] == -1:
                    color[v] = 1 - color[u]
                    queue.append(v)
                elif color[v] == color[u]:
                    raise NotBipartite(f"odd cycle through nodes {u} and {v}")
    return color


def bipartite_opposite_matching(g: Digraph, matching=None, start: int = 1) -> BipartiteResult:
    """Linear-time oppositely signed matching for bipartite source/sink-free graphs.

    Walks matched edge then co-directed unmatched edge from node to node;
    the first repeated even-position node closes a cycle with an even
    number of forward edges.  Each node is visited at most once.
    """
    if matching is None:
        matching = g.matched
    matching = _require_perfect(g, matching)
    _bipartition(g)
    indeg, outdeg = g.degrees()
    for u in range(1, g.m + 1):
        if indeg[u] == 0 or outdeg[u] == 0:
            raise SourceOrSink(f"node {u} lacks an incoming or outgoing edge")

    matched_edge = [0] * (g.m + 1)
    for i in matching:
        e = g.edges[i]
        matched_edge[e.tail] = i
        matched_edge[e.head] = i
    out_un = [[] for _ in range(g.m + 1)]
    in_un = [[] for _ in range(g.m + 1)]
    for i, e in enumerate(g.edges):
        if i in matching:
            continue
        out_un[e.tail].append(i)
        in_un[e.head].append(i)

    pos: dict[int, int] = {}
    path: list[tuple[int, int]] = []  # (matched edge, unmatched edge) per step
    u = start
    visited_count = 0
    while u not in pos:
        pos[u] = len(path)
        visited_count += 2  # u and its matched partner
        mi = matched_edge[u]
        me = g.edges[mi]
        if me.tail == u:
            w = me.head
            ui = out_un[w][0]  # all out-edges of w are unmatched here
            nxt = g.edges[ui].head
        else:
            w = me.tail
            ui = in_un[w][0]
            nxt = g.edges[ui].tail
        path.append((mi, ui))
        u = nxt
    cycle_edges = frozenset(i for step in path[pos[u] :] for i in step)
    new_matching = symmetric_difference(g, matching, cycle_edges)
    return BipartiteResult(new_matching, cycle_edges, visited_count)
