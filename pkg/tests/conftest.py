import pytest

from oikpivot import Digraph
from oikpivot.oik import Oik, orient_and_pair


@pytest.fixture
def four_cycle():
    """Directed 4-cycle with matched (1,2) and (3,4)."""
    return Digraph(4, [(1, 2), (2, 3), (3, 4), (4, 1)], {0, 2})


@pytest.fixture
def parallel_pair():
    """Oppositely oriented parallel edges, one matched."""
    return Digraph(2, [(1, 2), (2, 1)], {0})


@pytest.fixture
def eight_node_fixture():
    """Eight-node instance whose run exercises every solver branch.

    Unmatched edges occupy indices 0..7 in the order the solver follows
    them; matched edges are 8..11.  All expected intermediate states in the
    tests were derived by hand-tracing this instance.
    """
    edges = [
        (1, 2), (2, 3), (3, 4), (5, 6), (2, 7), (7, 3), (7, 3), (3, 8),
        (6, 1), (3, 2), (8, 7), (4, 5),
    ]
    return Digraph(8, edges, {8, 9, 10, 11})


OCTAHEDRON_ROOMS = [
    (1, 2, 3), (1, 4, 5), (1, 2, 4), (1, 3, 5),
    (4, 5, 6), (2, 3, 6), (3, 5, 6), (2, 4, 6),
]
OCTAHEDRON_SIGMA = (1, -1, -1, 1, 1, -1, -1, 1)


@pytest.fixture
def octahedron():
    return orient_and_pair(
        Oik(3, tuple(range(1, 7)), OCTAHEDRON_ROOMS), sigma=OCTAHEDRON_SIGMA
    )


def two_oik_from_digraph(g: Digraph):
    """Read an Euler digraph as an oriented 2-oik (edges as rooms)."""
    rooms = tuple((min(e.tail, e.head), max(e.tail, e.head)) for e in g.edges)
    sigma = tuple(1 if e.tail < e.head else -1 for e in g.edges)
    return orient_and_pair(Oik(2, tuple(range(1, g.m + 1)), rooms), sigma=sigma)
