"""Labeled simple polytopes over exact rationals: vertex bases, edge pivots, Lemke paths.

All arithmetic uses fractions.Fraction; there are no tolerances anywhere in
this module.  A vertex is identified with the ascending tuple of its m
tight constraint indices (1-based rows).  Degeneracy is an error, not a
case that gets perturbed away.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from .oracle import TooLarge
from .pivot import NotCL, PathResult, PivotingSystem, follow_path


class Singular(ValueError):
    pass


class NotAVertex(ValueError):
    pass


class Degenerate(ValueError):
    pass


class Unbounded(ValueError):
    pass


class NotBounded(ValueError):
    pass


class BadLabeling(ValueError):
    pass


class VerificationFailed(AssertionError):
    """An extracted equilibrium failed its exact checks; a bug, not bad data."""


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class LabeledPolytope:
    """Inequality system a_j^T x <= b_j with a label per row.

    ``label_range`` is the label alphabet size; it equals ``dim`` for
    systems meant for complementary pivoting, but may differ (the product
    of simplices built for labeling complements uses labels in a smaller
    range than its dimension).
    """

    dim: int
    rows: tuple[tuple[Fraction, ...], ...]
    rhs: tuple[Fraction, ...]
    labels: tuple[int, ...]
    label_range: int = 0

    def __post_init__(self):
        rows = tuple(tuple(_frac(a) for a in row) for row in self.rows)
        rhs = tuple(_frac(b) for b in self.rhs)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "rhs", rhs)
        object.__setattr__(self, "labels", tuple(self.labels))
        if self.label_range == 0:
            object.__setattr__(self, "label_range", self.dim)
        if not (len(rows) == len(rhs) == len(self.labels)):
            raise ValueError("rows, rhs and labels must have equal length")
        for row in rows:
            if len(row) != self.dim:
                raise ValueError("row width must equal the dimension")
        for l in self.labels:
            if not 1 <= l <= self.label_range:
                raise ValueError(f"label {l} outside 1..{self.label_range}")

    @property
    def n(self) -> int:
        return len(self.rows)

    def row_value(self, j: int, x) -> Fraction:
        return sum(a * xi for a, xi in zip(self.rows[j - 1], x))


def _solve_square(rows, rhs) -> tuple[list[Fraction], int]:
    """Solve the square system rows . x = rhs; also return sgn(det rows)."""
    n = len(rows)
    a = [list(row) + [b] for row, b in zip(rows, rhs)]
    sign = 1
    for k in range(n):
        pivot_row = next((r for r in range(k, n) if a[r][k] != 0), None)
        if pivot_row is None:
            raise Singular("basis rows are linearly dependent")
        if pivot_row != k:
            a[k], a[pivot_row] = a[pivot_row], a[k]
            sign = -sign
        piv = a[k][k]
        if piv < 0:
            sign = -sign
        for r in range(k + 1, n):
            if a[r][k] == 0:
                continue
            factor = a[r][k] / piv
            for c in range(k, n + 1):
                a[r][c] -= factor * a[k][c]
    x = [Fraction(0)] * n
    for k in range(n - 1, -1, -1):
        s = a[k][n] - sum(a[k][c] * x[c] for c in range(k + 1, n))
        x[k] = s / a[k][k]
    return x, sign


@dataclass(frozen=True)
class VertexInfo:
    basis: tuple[int, ...]
    x: tuple[Fraction, ...]
    sigma: int


def vertex_solve(P: LabeledPolytope, basis) -> VertexInfo:
    """Solve the basis system exactly and orient the vertex by the basis determinant.

    Errors: Singular (dependent normals), NotAVertex (some other constraint
    violated), Degenerate (some other constraint tight).
    """
    basis = tuple(sorted(basis))
    if len(basis) != P.dim or len(set(basis)) != P.dim:
        raise ValueError(f"basis must be {P.dim} distinct row indices")
    for j in basis:
        if not 1 <= j <= P.n:
            raise ValueError(f"row index {j} out of range")
    rows = [P.rows[j - 1] for j in basis]
    rhs = [P.rhs[j - 1] for j in basis]
    x, sigma = _solve_square(rows, rhs)
    basis_set = set(basis)
    for j in range(1, P.n + 1):
        if j in basis_set:
            continue
        value = P.row_value(j, x)
        if value > P.rhs[j - 1]:
            raise NotAVertex(f"constraint {j} violated")
        if value == P.rhs[j - 1]:
            raise Degenerate(f"constraint {j} is also tight")
    return VertexInfo(basis, tuple(x), sigma)


@dataclass(frozen=True)
class PivotInfo:
    basis: tuple[int, ...]
    pi: tuple[int, ...]
    x: tuple[Fraction, ...]
    sigma: int
    entering: int
    leaving: int


def pivot_edge(P: LabeledPolytope, basis, pos: int) -> PivotInfo:
    """Walk the edge that leaves the pos-th basis facet; exact ratio test.

    A ratio tie means the polytope is not simple: Degenerate.  No blocking
    constraint means the feasible set is unbounded: Unbounded.
    """
    info = vertex_solve(P, basis)
    basis = info.basis
    if not 1 <= pos <= P.dim:
        raise ValueError(f"position {pos} out of range")
    leaving = basis[pos - 1]
    rows = [P.rows[j - 1] for j in basis]
    target = [Fraction(0)] * P.dim
    target[pos - 1] = Fraction(-1)
    direction, _ = _solve_square(rows, target)
    best: Fraction | None = None
    entering = 0
    tie = False
    basis_set = set(basis)
    for j in range(1, P.n + 1):
        if j in basis_set:
            continue
        advance = sum(a * d for a, d in zip(P.rows[j - 1], direction))
        if advance <= 0:
            continue
        t = (P.rhs[j - 1] - P.row_value(j, info.x)) / advance
        if best is None or t < best:
            best, entering, tie = t, j, False
        elif t == best:
            tie = True
    if best is None:
        raise Unbounded("no constraint blocks the edge; not a polytope")
    if tie:
        raise Degenerate("ratio tie while leaving facet "
                         f"{leaving}; polytope is not simple")
    new_basis = tuple(sorted(set(basis) - {leaving} | {entering}))
    replaced = list(basis)
    replaced[pos - 1] = entering
    pi = tuple(new_basis.index(v) + 1 for v in replaced)
    new_info = vertex_solve(P, new_basis)
    return PivotInfo(new_basis, pi, new_info.x, new_info.sigma, entering, leaving)


class PolytopeSystem(PivotingSystem):
    """Vertices of a labeled simple polytope as an oriented pivoting system."""

    def __init__(self, P: LabeledPolytope, negate: bool = False):
        if P.label_range != P.dim:
            raise BadLabeling("pivoting needs labels in 1..dim")
        self.P = P
        self.negate = negate
        self._sigma_cache: dict[tuple[int, ...], int] = {}

    @property
    def m(self) -> int:
        return self.P.dim

    def representation(self, state) -> tuple:
        return state

    def label(self, node) -> int:
        return self.P.labels[node - 1]

    @property
    def oriented(self) -> bool:
        return True

    def orientation(self, state) -> int:
        sigma = self._sigma_cache.get(state)
        if sigma is None:
            sigma = vertex_solve(self.P, state).sigma
            self._sigma_cache[state] = sigma
        return -sigma if self.negate else sigma

    def state_count(self) -> int | None:
        return math.comb(self.P.n, self.P.dim)

    def pivot(self, state, pos: int):
        info = pivot_edge(self.P, state, pos)
        return info.basis, info.pi

    def state_label(self, state) -> str:
        return "{" + ",".join(str(j) for j in state) + "}"


@dataclass
class LemkeResult:
    basis: tuple[int, ...]
    x: tuple[Fraction, ...]
    steps: int
    start_sign: int
    end_sign: int
    trace: tuple | None = None


def lemke_path(
    P: LabeledPolytope,
    start_basis,
    w: int,
    negate_even: bool = False,
    record_trace: bool = False,
) -> LemkeResult:
    """Complementary pivoting from a CL vertex, dropping label w.

    ``negate_even`` applies the convention that flips every orientation
    when the dimension is even (making the all-slack start vertex count
    negatively).
    """
    negate = negate_even and P.dim % 2 == 0
    system = PolytopeSystem(P, negate=negate)
    start = tuple(sorted(start_basis))
    result: PathResult = follow_path(system, start, w, record_trace=record_trace)
    end = result.end
    info = vertex_solve(P, end)
    return LemkeResult(end, info.x, result.steps, result.start_sign, result.end_sign, result.trace)


def enumerate_vertices(P: LabeledPolytope, cap_dim: int = 6, cap_rows: int = 12) -> list[VertexInfo]:
    """All vertices by exhaustive basis search; Degenerate propagates."""
    if P.dim > cap_dim or P.n > cap_rows:
        raise TooLarge(f"enumeration capped at dim {cap_dim}, rows {cap_rows}")
    out = []
    for basis in itertools.combinations(range(1, P.n + 1), P.dim):
        try:
            out.append(vertex_solve(P, basis))
        except (Singular, NotAVertex):
            continue
    return out


def cl_vertices(P: LabeledPolytope, cap_dim: int = 6, cap_rows: int = 12) -> list[VertexInfo]:
    full = set(range(1, P.label_range + 1))
    return [
        v
        for v in enumerate_vertices(P, cap_dim, cap_rows)
        if {P.labels[j - 1] for j in v.basis} == full
    ]


def _recession_ray(C, m: int):
    """A direction d >= 0, d != 0 with Cd <= 0, or None if the cone is trivial.

    Searches the basic feasible solutions of {d >= 0, Cd <= 0, sum d = 1};
    that region is nonempty exactly when such a ray exists.
    """
    ineq_rows = []
    for i in range(m):
        row = [Fraction(0)] * m
        row[i] = Fraction(-1)
        ineq_rows.append(tuple(row))
    for row in C:
        ineq_rows.append(tuple(_frac(a) for a in row))
    ones = tuple(Fraction(1) for _ in range(m))
    for combo in itertools.combinations(range(len(ineq_rows)), m - 1):
        rows = [ineq_rows[r] for r in combo] + [ones]
        rhs = [Fraction(0)] * (m - 1) + [Fraction(1)]
        try:
            d, _ = _solve_square(rows, rhs)
        except Singular:
            continue
        if any(di < 0 for di in d):
            continue
        if all(sum(a * di for a, di in zip(row, d)) <= 0 for row in ineq_rows[m:]):
            return tuple(d)
    return None


def build_unit_vector_polytope(C, labels) -> LabeledPolytope:
    """{x >= 0, Cx <= 1} with labels i on the x_i >= 0 rows and given labels on C.

    The all-zero point is then a completely labeled vertex.  Raises
    NotBounded when the recession cone contains a ray.
    """
    C = [tuple(_frac(a) for a in row) for row in C]
    labels = list(labels)
    if not C:
        raise ValueError("C must have at least one row")
    m = len(C[0])
    if any(len(row) != m for row in C):
        raise ValueError("ragged C")
    if len(labels) != len(C):
        raise ValueError("one label per C row required")
    if any(not 1 <= l <= m for l in labels):
        raise BadLabeling(f"C-row labels must lie in 1..{m}")
    ray = _recession_ray(C, m)
    if ray is not None:
        raise NotBounded(f"unbounded along direction {ray}")
    rows = []
    rhs = []
    all_labels = []
    for i in range(m):
        row = [Fraction(0)] * m
        row[i] = Fraction(-1)
        rows.append(tuple(row))
        rhs.append(Fraction(0))
        all_labels.append(i + 1)
    for row, l in zip(C, labels):
        rows.append(row)
        rhs.append(Fraction(1))
        all_labels.append(l)
    return LabeledPolytope(m, tuple(rows), tuple(rhs), tuple(all_labels))


def _unit_vector_parts(P: LabeledPolytope):
    m = P.dim
    for i in range(m):
        expected = tuple(Fraction(-1) if c == i else Fraction(0) for c in range(m))
        if P.rows[i] != expected or P.rhs[i] != 0 or P.labels[i] != i + 1:
            raise ValueError("polytope is not in unit-vector form")
    C = P.rows[m:]
    if any(b != 1 for b in P.rhs[m:]):
        raise ValueError("polytope is not in unit-vector form")
    c_labels = P.labels[m:]
    return C, c_labels


@dataclass(frozen=True)
class Equilibrium:
    x: tuple[Fraction, ...]
    y: tuple[Fraction, ...]
    xhat: tuple[Fraction, ...]
    yhat: tuple[Fraction, ...]
    u: Fraction
    v: Fraction


def extract_equilibrium(P: LabeledPolytope, x) -> Equilibrium:
    """Turn a nonzero CL point of a unit-vector polytope into a verified equilibrium.

    Chooses y by setting 1 at the smallest tight C-row carrying each needed
    label, then checks the unnormalised and complementarity conditions
    exactly before normalising.
    """
    C, c_labels = _unit_vector_parts(P)
    m = P.dim
    x = tuple(_frac(xi) for xi in x)
    if all(xi == 0 for xi in x):
        raise ValueError("the zero vertex has no equilibrium")
    if any(xi < 0 for xi in x):
        raise ValueError("point outside the polytope")
    cx = [sum(a * xi for a, xi in zip(row, x)) for row in C]
    if any(v > 1 for v in cx):
        raise ValueError("point outside the polytope")
    tight_labels = {i + 1 for i in range(m) if x[i] == 0}
    tight_labels |= {c_labels[j] for j in range(len(C)) if cx[j] == 1}
    if tight_labels != set(range(1, m + 1)):
        raise NotCL("point is not completely labeled")
    y = [Fraction(0)] * len(C)
    for i in range(1, m + 1):
        if x[i - 1] > 0:
            j = next(jj for jj in range(len(C)) if cx[jj] == 1 and c_labels[jj] == i)
            y[j] = Fraction(1)
    ay = [sum(y[j] for j in range(len(C)) if c_labels[j] == i) for i in range(1, m + 1)]
    # unnormalised feasibility and complementarity, all exact
    if not any(y) or any(v > 1 for v in ay):
        raise VerificationFailed("constructed y is infeasible")
    for i in range(m):
        if x[i] > 0 and ay[i] != 1:
            raise VerificationFailed(f"best-response condition fails at row {i + 1}")
    for j in range(len(C)):
        if y[j] > 0 and cx[j] != 1:
            raise VerificationFailed(f"best-response condition fails at column {j + 1}")
    sx = sum(x)
    sy = sum(y)
    return Equilibrium(
        x=x,
        y=tuple(y),
        xhat=tuple(xi / sx for xi in x),
        yhat=tuple(yj / sy for yj in y),
        u=1 / sx,
        v=1 / sy,
    )


@dataclass(frozen=True)
class SpernerPolytope:
    polytope: LabeledPolytope
    vertices: tuple[tuple[Fraction, ...], ...]
    rooms: tuple[tuple, ...]
    label_classes: tuple[tuple[int, ...], ...]


def sperner_polytope(nodes, labels, m: int) -> SpernerPolytope:
    """Product-of-simplices polytope whose vertices realise the complement rooms.

    Nodes must be labeled so the first m carry labels 1..m in order.  The
    vertex on the tight rows indexed by a node set Q corresponds to the
    room Q of the matching complement manifold, and at every vertex the
    non-tight labels cover 1..m.
    """
    from .oik import sperner_oik

    nodes = tuple(nodes)
    labels = list(labels)
    n = len(nodes)
    if len(labels) != n:
        raise BadLabeling("one label per node required")
    if n <= m:
        raise BadLabeling("need more nodes than labels")
    for i in range(m):
        if labels[i] != i + 1:
            raise BadLabeling("node i must carry label i for i <= m")
    if any(not 1 <= l <= m for l in labels):
        raise BadLabeling(f"labels must lie in 1..{m}")
    k = n - m
    classes = tuple(tuple(j for j in range(k) if labels[m + j] == i) for i in range(1, m + 1))
    rows = []
    rhs = []
    row_labels = []
    for i in range(m):
        rows.append(tuple(Fraction(1) if j in classes[i] else Fraction(0) for j in range(k)))
        rhs.append(Fraction(1))
        row_labels.append(i + 1)
    for j in range(k):
        row = [Fraction(0)] * k
        row[j] = Fraction(-1)
        rows.append(tuple(row))
        rhs.append(Fraction(0))
        row_labels.append(labels[m + j])
    P0 = LabeledPolytope(k, tuple(rows), tuple(rhs), tuple(row_labels), label_range=m)

    # vertices: per label class, pick one coordinate at 1 or none
    choices_per_class = [list(cls) + [None] for cls in classes]
    vertices = []
    rooms = []
    for pick in itertools.product(*choices_per_class):
        y = [Fraction(0)] * k
        for j in pick:
            if j is not None:
                y[j] = Fraction(1)
        tight_nodes = []
        nontight = set()
        for i in range(m):
            if pick[i] is not None:
                tight_nodes.append(nodes[i])
            else:
                nontight.add(i + 1)
        for j in range(k):
            if y[j] == 0:
                tight_nodes.append(nodes[m + j])
            else:
                nontight.add(labels[m + j])
        if nontight != set(range(1, m + 1)):
            raise VerificationFailed("non-tight labels do not cover 1..m")
        vertices.append(tuple(y))
        rooms.append(tuple(sorted(tight_nodes, key=nodes.index)))

    expected = 1
    for cls in classes:
        expected *= len(cls) + 1
    if len(vertices) != expected:
        raise VerificationFailed("vertex count mismatch")
    oik_rooms = set(sperner_oik(nodes, labels, m).rooms)
    if set(rooms) != oik_rooms or len(rooms) != len(oik_rooms):
        raise VerificationFailed("vertices do not biject with complement rooms")
    return SpernerPolytope(P0, tuple(vertices), tuple(rooms), classes)
