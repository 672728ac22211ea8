"""Euler complexes: orientation, wall pairings, sums, room partitions, exchange paths.

A d-oik is a multiset of d-element rooms over an ordered node universe in
which every (d-1)-set lies in an even number of rooms.  Rooms are stored as
ascending tuples and addressed by index, so duplicate rooms stay distinct.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .graph import permutation_parity
from .oracle import TooLarge
from .pivot import NotCL, PathResult, PivotingSystem, classify, follow_path


class NotOrientable(ValueError):
    pass


class NeedExplicitOrientation(ValueError):
    """Auto-orientation only covers 2-oiks and manifolds."""


class MixedUniverse(ValueError):
    pass


class NotAPartition(ValueError):
    pass


class NotAnOik(ValueError):
    pass


class NotSurjective(ValueError):
    pass


@dataclass(frozen=True)
class Oik:
    """d-oik over an ordered node universe.

    ``rooms`` is a multiset: tuples of d nodes, each sorted ascending in
    the order given by ``nodes``.
    """

    d: int
    nodes: tuple
    rooms: tuple[tuple, ...]

    def __post_init__(self):
        nodes = tuple(self.nodes)
        object.__setattr__(self, "nodes", nodes)
        if self.d < 2:
            raise ValueError("oik dimension must be at least 2")
        if len(set(nodes)) != len(nodes):
            raise ValueError("node universe has duplicates")
        ix = {v: i for i, v in enumerate(nodes)}
        rooms = []
        for room in self.rooms:
            room = tuple(room)
            if len(room) != self.d or len(set(room)) != self.d:
                raise ValueError(f"room {room} is not a {self.d}-set")
            for v in room:
                if v not in ix:
                    raise ValueError(f"room node {v!r} outside the universe")
            rooms.append(tuple(sorted(room, key=ix.__getitem__)))
        object.__setattr__(self, "rooms", tuple(rooms))

    def node_index(self, v) -> int:
        return self.nodes.index(v)

    def index_map(self) -> dict:
        return {v: i for i, v in enumerate(self.nodes)}

    def walls(self) -> dict[tuple, list[tuple[int, int]]]:
        """Map wall -> [(room index, 1-based removal position)]."""
        out: dict[tuple, list[tuple[int, int]]] = {}
        for r, room in enumerate(self.rooms):
            for i in range(self.d):
                wall = room[:i] + room[i + 1 :]
                out.setdefault(wall, []).append((r, i + 1))
        return out


@dataclass(frozen=True)
class OikReport:
    is_oik: bool
    is_manifold: bool
    offending_wall: tuple | None = None


def validate_oik(candidate: Oik) -> OikReport:
    """Check the even-wall-count condition and whether the oik is a manifold."""
    counts: dict[tuple, int] = {}
    for room in candidate.rooms:
        for i in range(candidate.d):
            wall = room[:i] + room[i + 1 :]
            counts[wall] = counts.get(wall, 0) + 1
    offending = None
    manifold = True
    for wall, c in sorted(counts.items()):
        if c % 2:
            return OikReport(False, False, wall)
        if c > 2:
            manifold = False
            if offending is None:
                offending = wall
    return OikReport(True, manifold, None if manifold else offending)


def induced_orientation(room: tuple, sigma: int, removal_pos: int) -> int:
    """Orientation a room induces on the wall missing its removal_pos-th node."""
    return sigma if removal_pos % 2 == 0 else -sigma


@dataclass(frozen=True)
class OrientedOik:
    """Oik with a coherent orientation and a per-wall pairing of incident rooms.

    Paired rooms induce opposite orientations on their shared wall, which
    is exactly what makes the room-exchange pivoting reversible and
    orientation-switching.
    """

    oik: Oik
    sigma: tuple[int, ...]
    partner: dict[tuple, dict[int, int]]

    @property
    def d(self) -> int:
        return self.oik.d

    @property
    def nodes(self) -> tuple:
        return self.oik.nodes

    @property
    def rooms(self) -> tuple[tuple, ...]:
        return self.oik.rooms

    def induced(self, room_idx: int, removal_pos: int) -> int:
        return induced_orientation(self.rooms[room_idx], self.sigma[room_idx], removal_pos)


def _check_coherent(oik: Oik, sigma) -> dict[tuple, list[tuple[int, int]]]:
    walls = oik.walls()
    for wall, incident in walls.items():
        plus = sum(1 for r, pos in incident if induced_orientation(oik.rooms[r], sigma[r], pos) == 1)
        if 2 * plus != len(incident):
            raise NotOrientable(f"wall {wall} has {plus} of {len(incident)} rooms inducing +1")
    return walls


def _pairing_from_sigma(oik: Oik, sigma) -> dict[tuple, dict[int, int]]:
    """Zip the +1-inducing and -1-inducing rooms at every wall, by room index."""
    walls = _check_coherent(oik, sigma)
    partner: dict[tuple, dict[int, int]] = {}
    for wall, incident in walls.items():
        plus = sorted(r for r, pos in incident if induced_orientation(oik.rooms[r], sigma[r], pos) == 1)
        minus = sorted(r for r, pos in incident if induced_orientation(oik.rooms[r], sigma[r], pos) == -1)
        mapping: dict[int, int] = {}
        for a, b in zip(plus, minus):
            mapping[a] = b
            mapping[b] = a
        partner[wall] = mapping
    return partner


def _euler_orientation(oik: Oik) -> list[int]:
    """Orient a 2-oik along Euler tours of its multigraph."""
    ix = oik.index_map()
    adj: list[list[tuple[int, int]]] = [[] for _ in oik.nodes]
    for r, room in enumerate(oik.rooms):
        a, b = ix[room[0]], ix[room[1]]
        adj[a].append((r, b))
        adj[b].append((r, a))
    used = [False] * len(oik.rooms)
    ptr = [0] * len(oik.nodes)
    sigma = [0] * len(oik.rooms)
    for start in range(len(oik.nodes)):
        if ptr[start] >= len(adj[start]):
            continue
        stack: list[tuple[int, int | None, int | None]] = [(start, None, None)]
        while stack:
            v, rin, frm = stack[-1]
            while ptr[v] < len(adj[v]) and used[adj[v][ptr[v]][0]]:
                ptr[v] += 1
            if ptr[v] >= len(adj[v]):
                stack.pop()
                if rin is not None:
                    # edge traversed frm -> v; ascending traversal is +1
                    sigma[rin] = 1 if frm < v else -1
            else:
                r, w = adj[v][ptr[v]]
                used[r] = True
                stack.append((w, r, v))
    return sigma


def _propagate_orientation(oik: Oik, walls) -> list[int]:
    """Fix +1 on one room per component and propagate across manifold walls."""
    sigma = [0] * len(oik.rooms)
    shared: dict[int, list[tuple[int, int, int, int]]] = {r: [] for r in range(len(oik.rooms))}
    for wall, incident in walls.items():
        if len(incident) == 2:
            (r1, p1), (r2, p2) = incident
            shared[r1].append((r2, p1, p2, 0))
            shared[r2].append((r1, p2, p1, 0))
    for start in range(len(oik.rooms)):
        if sigma[start]:
            continue
        sigma[start] = 1
        queue = [start]
        while queue:
            r = queue.pop()
            for r2, p1, p2, _ in shared[r]:
                # opposite induced orientations: (-1)^p1 s1 = -(-1)^p2 s2
                want = -sigma[r] * (1 if (p1 + p2) % 2 == 0 else -1)
                if sigma[r2] == 0:
                    sigma[r2] = want
                    queue.append(r2)
                elif sigma[r2] != want:
                    raise NotOrientable(f"orientation conflict at room {oik.rooms[r2]}")
    return sigma


def orient_and_pair(oik: Oik, sigma=None) -> OrientedOik:
    """Produce a coherently oriented oik with a wall pairing.

    A caller-supplied sigma is validated.  Without one, 2-oiks are
    oriented along an Euler tour and manifolds by propagation; other oiks
    need an explicit orientation.
    """
    report = validate_oik(oik)
    if not report.is_oik:
        raise NotAnOik(f"wall {report.offending_wall} lies in an odd number of rooms")
    if sigma is not None:
        sigma = tuple(sigma)
        if len(sigma) != len(oik.rooms) or any(s not in (-1, 1) for s in sigma):
            raise ValueError("sigma must assign +1/-1 to every room")
    elif oik.d == 2:
        sigma = tuple(_euler_orientation(oik))
    elif report.is_manifold:
        sigma = tuple(_propagate_orientation(oik, oik.walls()))
    else:
        raise NeedExplicitOrientation("supply sigma for a non-manifold oik of dimension > 2")
    partner = _pairing_from_sigma(oik, sigma)
    return OrientedOik(oik, sigma, partner)


def _common_universe(oiks) -> tuple:
    nodes = oiks[0].nodes
    for o in oiks[1:]:
        if o.nodes != nodes:
            raise MixedUniverse("all oiks must share one node universe")
    return nodes


def oik_sum(oiks: list[OrientedOik]) -> OrientedOik:
    """Materialised sum: rooms are tagged disjoint unions, orientation the product.

    Nodes are (p, v) pairs ordered lexicographically (factor first, then
    node order), so a sum room's ascending representation is simply the
    concatenation of its factors' ascending representations.
    """
    if not oiks:
        raise ValueError("empty oik family")
    base = _common_universe(oiks)
    h = len(oiks)
    nodes = tuple((p, v) for p in range(1, h + 1) for v in base)
    d = sum(o.d for o in oiks)
    rooms = []
    sigma = []
    for combo in itertools.product(*(range(len(o.rooms)) for o in oiks)):
        room = tuple((p + 1, v) for p, r in enumerate(combo) for v in oiks[p].rooms[r])
        rooms.append(room)
        sig = 1
        for p, r in enumerate(combo):
            sig *= oiks[p].sigma[r]
        sigma.append(sig)
    summed = Oik(d, nodes, tuple(rooms))
    partner = _pairing_from_sigma(summed, sigma)
    return OrientedOik(summed, tuple(sigma), partner)


def _partition_indices(oiks, partition) -> list[int]:
    base = _common_universe(oiks)
    partition = list(partition)
    if len(partition) != len(oiks):
        raise NotAPartition("one room index per oik required")
    ix = {v: i for i, v in enumerate(base)}
    seen = set()
    for p, r in enumerate(partition):
        if not 0 <= r < len(oiks[p].rooms):
            raise NotAPartition(f"room index {r} out of range for oik {p + 1}")
        for v in oiks[p].rooms[r]:
            if ix[v] in seen:
                raise NotAPartition(f"node {v!r} covered twice")
            seen.add(ix[v])
    if len(seen) != len(base):
        raise NotAPartition("rooms do not cover the node universe")
    return partition


def partition_orientation(oiks, partition) -> int:
    """Product of the room orientations of an ordered room partition."""
    partition = _partition_indices(oiks, partition)
    sig = 1
    for p, r in enumerate(partition):
        sig *= oiks[p].sigma[r]
    return sig


def partition_sign(oiks, partition) -> int:
    """Sign of an ordered room partition: orientation product times node parity.

    The node permutation lists each room ascending, rooms in partition
    order.  For families built from one oik of even dimension the value is
    independent of the room order.
    """
    partition = _partition_indices(oiks, partition)
    base = oiks[0].nodes
    ix = {v: i for i, v in enumerate(base)}
    seq = [ix[v] + 1 for p, r in enumerate(partition) for v in oiks[p].rooms[r]]
    return partition_orientation(oiks, partition) * permutation_parity(seq)


class OikSumSystem(PivotingSystem):
    """Ordered room partitions of an oik family, pivoted factor by factor."""

    def __init__(self, oiks: list[OrientedOik]):
        self.oiks = list(oiks)
        self.base = _common_universe(self.oiks)
        self._ix = {v: i for i, v in enumerate(self.base)}
        self.dims = [o.d for o in self.oiks]
        self.offsets = [0]
        for dp in self.dims:
            self.offsets.append(self.offsets[-1] + dp)
        self._m = self.offsets[-1]

    @property
    def m(self) -> int:
        return self._m

    def representation(self, state) -> tuple:
        return tuple((p + 1, v) for p, r in enumerate(state) for v in self.oiks[p].rooms[r])

    def label(self, node) -> int:
        return self._ix[node[1]] + 1

    @property
    def oriented(self) -> bool:
        return True

    def orientation(self, state) -> int:
        sig = 1
        for p, r in enumerate(state):
            sig *= self.oiks[p].sigma[r]
        return sig

    def state_count(self) -> int | None:
        count = 1
        for o in self.oiks:
            count *= len(o.rooms)
        return count

    def pivot(self, state, pos: int):
        p = 0
        while self.offsets[p + 1] < pos:
            p += 1
        within = pos - self.offsets[p] - 1  # 0-based inside the block
        ooik = self.oiks[p]
        ridx = state[p]
        room = ooik.rooms[ridx]
        wall = room[:within] + room[within + 1 :]
        new_ridx = ooik.partner[wall][ridx]
        new_room = ooik.rooms[new_ridx]
        diff = set(new_room) - set(wall)
        entering = diff.pop() if diff else room[within]
        new_state = tuple(new_ridx if q == p else r for q, r in enumerate(state))
        pi = list(range(1, self._m + 1))
        off = self.offsets[p]
        for q in range(ooik.d):
            node = entering if q == within else room[q]
            pi[off + q] = off + new_room.index(node) + 1
        return new_state, tuple(pi)

    def state_label(self, state) -> str:
        rooms = ["".join(str(v) for v in self.oiks[p].rooms[r]) for p, r in enumerate(state)]
        return "(" + ",".join(rooms) + ")"


class RoomPartitionSystem(PivotingSystem):
    """Unordered multisets of h rooms of one oik; blocks re-sorted after each pivot.

    Oriented only for even room dimension: then moving whole blocks past
    each other is an even permutation, so the sign survives re-sorting.
    """

    def __init__(self, ooik: OrientedOik, h: int):
        self.ooik = ooik
        self.h = h
        self._ix = {v: i for i, v in enumerate(ooik.nodes)}
        self._m = h * ooik.d

    def room_key(self, ridx: int):
        return (tuple(self._ix[v] for v in self.ooik.rooms[ridx]), ridx)

    def canonical(self, room_indices) -> tuple:
        state = tuple(sorted(room_indices, key=self.room_key))
        if len(state) != self.h:
            raise NotAPartition(f"expected {self.h} rooms")
        return state

    @property
    def m(self) -> int:
        return self._m

    def representation(self, state) -> tuple:
        return tuple(v for r in state for v in self.ooik.rooms[r])

    def label(self, node) -> int:
        return self._ix[node] + 1

    @property
    def oriented(self) -> bool:
        return self.ooik.d % 2 == 0

    def orientation(self, state) -> int:
        sig = 1
        for r in state:
            sig *= self.ooik.sigma[r]
        return sig

    def state_count(self) -> int | None:
        return math.comb(len(self.ooik.rooms), self.h)

    def pivot(self, state, pos: int):
        d = self.ooik.d
        block = (pos - 1) // d
        within = (pos - 1) % d
        ridx = state[block]
        room = self.ooik.rooms[ridx]
        wall = room[:within] + room[within + 1 :]
        new_ridx = self.ooik.partner[wall][ridx]
        new_room = self.ooik.rooms[new_ridx]
        diff = set(new_room) - set(wall)
        entering = diff.pop() if diff else room[within]
        indices = list(state)
        indices[block] = new_ridx
        new_state = tuple(sorted(indices, key=self.room_key))
        where = {r: b for b, r in enumerate(new_state)}
        if len(where) != self.h:
            raise NotAPartition("duplicate room index inside a state")
        pi = [0] * self._m
        for b, r in enumerate(state):
            if b == block:
                nb = where[new_ridx]
                for q in range(d):
                    node = entering if q == within else room[q]
                    pi[b * d + q] = nb * d + new_room.index(node) + 1
            else:
                nb = where[r]
                for q in range(d):
                    pi[b * d + q] = nb * d + q + 1
        return new_state, tuple(pi)

    def state_label(self, state) -> str:
        rooms = ["".join(str(v) for v in self.ooik.rooms[r]) for r in state]
        return "{" + ",".join(rooms) + "}"


def exchange_path(
    oiks,
    partition,
    w,
    ordered: bool = True,
    record_trace: bool = False,
) -> tuple[tuple, PathResult]:
    """Pivot a room partition to its partner by dropping node w.

    Builds the sum pivoting system with the identity labeling and follows
    the complementary path; the endpoint is the paired partition of
    opposite sign (when a sign is defined).
    """
    oiks = list(oiks)
    partition = _partition_indices(oiks, partition)
    base = oiks[0].nodes
    if w not in base:
        raise ValueError(f"node {w!r} not in the universe")
    missing = base.index(w) + 1
    if ordered:
        system = OikSumSystem(oiks)
        start = tuple(partition)
    else:
        first = oiks[0]
        if any(o is not first and o.rooms != first.rooms for o in oiks):
            raise MixedUniverse("unordered mode expects copies of one oik")
        system = RoomPartitionSystem(first, len(oiks))
        start = system.canonical(partition)
    if not classify(system, start).is_cl:
        raise NotCL("partition does not represent a CL state")
    result = follow_path(system, start, missing, record_trace=record_trace)
    return tuple(result.end), result


def sperner_oik(nodes, labels, m: int) -> Oik:
    """Manifold whose rooms are the complements of completely labeled sets."""
    nodes = tuple(nodes)
    labels = list(labels)
    if len(labels) != len(nodes):
        raise ValueError("one label per node required")
    if any(not 1 <= l <= m for l in labels):
        raise ValueError(f"labels must lie in 1..{m}")
    classes = [[] for _ in range(m + 1)]
    for v, l in zip(nodes, labels):
        classes[l].append(v)
    if any(not classes[l] for l in range(1, m + 1)):
        raise NotSurjective("every label in 1..m must be used")
    d = len(nodes) - m
    if d < 2:
        raise ValueError("complement dimension below 2")
    ix = {v: i for i, v in enumerate(nodes)}
    rooms = set()
    for pick in itertools.product(*(classes[l] for l in range(1, m + 1))):
        chosen = set(pick)
        room = tuple(v for v in nodes if v not in chosen)
        rooms.add(room)
    oik = Oik(d, nodes, tuple(sorted(rooms, key=lambda r: tuple(ix[v] for v in r))))
    report = validate_oik(oik)
    if not (report.is_oik and report.is_manifold):
        raise NotAnOik("complement construction failed to produce a manifold")
    return oik


def enumerate_partitions(oiks, ordered: bool = True, cap: int = 14) -> list[tuple]:
    """Exhaustive room partitions of an oik family (ordered) or one repeated oik."""
    oiks = [o.oik if isinstance(o, OrientedOik) else o for o in oiks]
    if not oiks:
        return []
    base = _common_universe(oiks)
    if len(base) > cap:
        raise TooLarge(f"|V|={len(base)} exceeds cap {cap}")
    ix = {v: i for i, v in enumerate(base)}
    full = (1 << len(base)) - 1
    masks = [[sum(1 << ix[v] for v in room) for room in o.rooms] for o in oiks]
    results: list[tuple] = []
    chosen: list[int] = []

    if ordered:
        def rec(p: int, used: int) -> None:
            if p == len(oiks):
                if used == full:
                    results.append(tuple(chosen))
                return
            for r, mask in enumerate(masks[p]):
                if used & mask:
                    continue
                chosen.append(r)
                rec(p + 1, used | mask)
                chosen.pop()

        rec(0, 0)
        return results

    first = oiks[0]
    if any(o is not first and o.rooms != first.rooms for o in oiks):
        raise MixedUniverse("unordered mode expects copies of one oik")
    h = len(oiks)

    def rec_unordered(p: int, used: int, lowest: int) -> None:
        if p == h:
            if used == full:
                results.append(tuple(chosen))
            return
        for r in range(lowest, len(masks[0])):
            mask = masks[0][r]
            if used & mask:
                continue
            chosen.append(r)
            rec_unordered(p + 1, used | mask, r + 1)
            chosen.pop()

    rec_unordered(0, 0, 0)
    return results
