"""Seeded instance generators.

Euler instances are planted: m/2 disjoint 2-cycles give Eulerian balance
and a perfect matching at the same time, and extra directed cycles add
bulk without disturbing either property.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .gale import BadParams, GaleLabeling
from .graph import Digraph
from .oik import OrientedOik, orient_and_pair
from .polytope import LabeledPolytope, build_unit_vector_polytope


def _planted(m: int, extra_cycles: int, rng: random.Random, parts=None) -> Digraph:
    if m < 2 or m % 2:
        raise ValueError("planted instances need even m >= 2")
    nodes = list(range(1, m + 1))
    if parts is None:
        rng.shuffle(nodes)
        pairs = [(nodes[2 * i], nodes[2 * i + 1]) for i in range(m // 2)]
    else:
        a, b = parts
        pairs = list(zip(a, b))
    edges: list[tuple[int, int, bool]] = []
    for u, v in pairs:
        edges.append((u, v, True))
        edges.append((v, u, False))
    for _ in range(extra_cycles):
        if parts is None:
            length = rng.randint(2, min(m, 8))
            cyc = rng.sample(range(1, m + 1), length)
        else:
            a, b = parts
            length = rng.randint(2, min(len(a), len(b), 4))
            ca = rng.sample(a, length)
            cb = rng.sample(b, length)
            cyc = [x for pair in zip(ca, cb) for x in pair]
        for i, u in enumerate(cyc):
            edges.append((u, cyc[(i + 1) % len(cyc)], False))
    rng.shuffle(edges)
    matched = frozenset(i for i, (_, _, flag) in enumerate(edges) if flag)
    return Digraph(m, tuple((u, v) for u, v, _ in edges), matched)


def gen_euler(m: int, extra_cycles: int, rng: random.Random) -> Digraph:
    """Euler digraph with a planted perfect matching."""
    return _planted(m, extra_cycles, rng)


def gen_bipartite(m: int, extra_cycles: int, rng: random.Random) -> Digraph:
    """Bipartite source/sink-free digraph with a planted perfect matching."""
    nodes = list(range(1, m + 1))
    rng.shuffle(nodes)
    half = m // 2
    return _planted(m, extra_cycles, rng, parts=(nodes[:half], nodes[half:]))


def gen_oriented_2oik(m: int, extra_cycles: int, rng: random.Random) -> OrientedOik:
    """Random oriented 2-oik (an Euler digraph read as rooms + orientations)."""
    g = gen_euler(m, extra_cycles, rng)
    rooms = []
    sigma = []
    for e in g.edges:
        rooms.append((min(e.tail, e.head), max(e.tail, e.head)))
        sigma.append(1 if e.tail < e.head else -1)
    from .oik import Oik

    return orient_and_pair(Oik(2, tuple(range(1, m + 1)), tuple(rooms)), sigma=sigma)


def gen_unit_vector_polytope(m: int, n: int, rng: random.Random) -> LabeledPolytope:
    """Bounded unit-vector polytope: nonnegative C with a positive entry per column."""
    if n <= m or m < 1:
        raise ValueError("need n > m >= 1")
    k = n - m
    C = [[Fraction(rng.randint(0, 3)) for _ in range(m)] for _ in range(k)]
    for col in range(m):
        C[rng.randrange(k)][col] = Fraction(rng.randint(1, 3))
    labels = [rng.randint(1, m) for _ in range(k)]
    return build_unit_vector_polytope([tuple(row) for row in C], labels)


def gen_gale_labeling(m: int, n: int, rng: random.Random) -> GaleLabeling:
    """Loop-free cyclic labeling of n positions by 1..m."""
    if m < 2 or n < 3:
        raise BadParams("need m >= 2 and n >= 3")
    if m == 2 and n % 2:
        raise BadParams("a loop-free 2-label cycle needs even n")
    for _ in range(10_000):
        labels = [rng.randint(1, m)]
        ok = True
        for j in range(1, n):
            choices = [l for l in range(1, m + 1) if l != labels[-1]]
            if j == n - 1:
                choices = [l for l in choices if l != labels[0]]
                if not choices:
                    ok = False
                    break
            labels.append(rng.choice(choices))
        if ok:
            return GaleLabeling(m, tuple(labels))
    raise BadParams("could not build a loop-free labeling")


def gen_bench_instance(target_edges: int, rng: random.Random) -> Digraph:
    """Euler instance with roughly target_edges edges, for the bench sweep.

    The backbone is one directed cycle through all nodes with every other
    edge matched, so the solver has to contract its way around the whole
    graph instead of stopping at a planted 2-cycle; extra random cycles add
    edges that can only be walked once and discarded.
    """
    m = max(2, (target_edges // 2) // 2 * 2)
    remaining = max(0, target_edges - m)
    cycle_len = min(8, m)
    extra = remaining // cycle_len
    nodes = list(range(1, m + 1))
    rng.shuffle(nodes)
    edges: list[tuple[int, int, bool]] = []
    for i, u in enumerate(nodes):
        edges.append((u, nodes[(i + 1) % m], i % 2 == 0))
    for _ in range(extra):
        cyc = rng.sample(range(1, m + 1), cycle_len)
        for i, u in enumerate(cyc):
            edges.append((u, cyc[(i + 1) % cycle_len], False))
    rng.shuffle(edges)
    matched = frozenset(i for i, (_, _, flag) in enumerate(edges) if flag)
    return Digraph(m, tuple((u, v) for u, v, _ in edges), matched)
