"""Command-line front end: gen, solve, verify, bench, oik, polytope, gale.

Results go to stdout, diagnostics to stderr.  Exit codes: 0 ok, 1 parse
error, 2 precondition violation, 3 internal error.  All output except wall
times is a pure function of (input, flags, seed).
"""

from __future__ import annotations

import argparse
import random
import sys
import time
from fractions import Fraction

from . import fileio, gen
from .fileio import ParseError
from .gale import BadParams, GaleLabeling, LoopCreated, OddRun, derived_graph, enumerate_gale, gale_pivot_path, gale_to_matching, is_gale
from .graph import (
    Digraph,
    DuplicateEntry,
    NotAlternating,
    NotEulerian,
    NotPerfectMatching,
    matching_sign,
    validate_instance,
)
from .oik import (
    MixedUniverse,
    NeedExplicitOrientation,
    NotAPartition,
    NotAnOik,
    NotOrientable,
    NotSurjective,
    enumerate_partitions,
    exchange_path,
    orient_and_pair,
    partition_sign,
    validate_oik,
)
from .oracle import TooLarge, determinant_exact, enumerate_matchings, signed_matching_sum, skew_adjacency
from .pivot import BadPosition, NotCL, StepLimitExceeded, WrongClass
from .polytope import (
    BadLabeling,
    Degenerate,
    NotBounded,
    Singular,
    Unbounded,
    cl_vertices,
    extract_equilibrium,
    lemke_path,
    vertex_solve,
)
from .switchcycle import (
    InvariantViolation,
    NotBipartite,
    SourceOrSink,
    bipartite_opposite_matching,
    find_opposite_matching,
)

PRECONDITION_ERRORS = (
    BadLabeling,
    BadParams,
    BadPosition,
    Degenerate,
    DuplicateEntry,
    LoopCreated,
    MixedUniverse,
    NeedExplicitOrientation,
    NotAPartition,
    NotAlternating,
    NotAnOik,
    NotBipartite,
    NotBounded,
    NotCL,
    NotEulerian,
    NotOrientable,
    NotPerfectMatching,
    NotSurjective,
    OddRun,
    Singular,
    SourceOrSink,
    TooLarge,
    Unbounded,
    WrongClass,
)


def _sign(s: int) -> str:
    return "+1" if s == 1 else "-1"


def _print_matching(g: Digraph, matching) -> str:
    return " ".join(f"({g.edges[i].tail},{g.edges[i].head})" for i in sorted(matching))


def _emit(out, text: str) -> None:
    out.write(text + "\n")


def _parse_partition(spec: str) -> list[tuple[int, ...]]:
    rooms = []
    for part in spec.split("/"):
        nodes = tuple(int(t) for t in part.replace(",", " ").split())
        if not nodes:
            raise ValueError("empty room in partition spec")
        rooms.append(nodes)
    return rooms


def _room_indices(oriented, rooms_spec) -> list[int]:
    indices = []
    used = set()
    for nodes in rooms_spec:
        want = tuple(sorted(nodes))
        found = None
        for r, room in enumerate(oriented.rooms):
            if r not in used and tuple(sorted(room)) == want:
                found = r
                break
        if found is None:
            raise NotAPartition(f"no room {want} in the oik")
        used.add(found)
        indices.append(found)
    return indices


def cmd_gen(args, out) -> int:
    rng = random.Random(args.seed)
    kind = args.kind
    if kind == "euler":
        g = gen.gen_euler(args.m, args.extra, rng)
        text = fileio.to_dot(g) if args.format == "dot" else fileio.format_digraph(g)
    elif kind == "bipartite":
        g = gen.gen_bipartite(args.m, args.extra, rng)
        text = fileio.to_dot(g) if args.format == "dot" else fileio.format_digraph(g)
    elif kind == "oik":
        oriented = gen.gen_oriented_2oik(args.m, args.extra, rng)
        text = fileio.format_oik(oriented.oik, oriented.sigma)
    elif kind == "polytope":
        n = args.extra if args.extra else args.m + 2
        P = gen.gen_unit_vector_polytope(args.m, n, rng)
        text = fileio.format_polytope(P)
    elif kind == "gale":
        n = args.extra if args.extra else 2 * args.m
        lab = gen.gen_gale_labeling(args.m, n, rng)
        text = fileio.format_gale(lab)
    else:
        raise BadParams(f"unknown kind {kind!r}")
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        out.write(text)
    return 0


def _solve_switchcycle(args, g: Digraph, out) -> None:
    result = find_opposite_matching(
        g,
        start=args.start,
        debug=args.debug_invariants,
        record_trace=args.trace,
    )
    if args.trace:
        for event in result.trace:
            if event[0] == "visit":
                _, vc, vn, ve = event
                _emit(out, f"vc={vc} visitednode={list(vn)} visitededge={[f'e{i + 1}' for i in ve]}")
    _emit(out, f"matching: {_print_matching(g, result.matching)}")
    _emit(out, f"sign_in: {_sign(matching_sign(g, g.matched))}")
    _emit(out, f"sign_out: {_sign(matching_sign(g, result.matching))}")
    _emit(out, "cycle: " + " ".join(f"(e{e + 1},m{m + 1})" for e, m in result.cycle_pairs))
    if args.format == "dot":
        out.write(fileio.to_dot(g.with_matching(result.matching), cycle=result.cycle_edges))


def _solve_bipartite(args, g: Digraph, out) -> None:
    result = bipartite_opposite_matching(g)
    _emit(out, f"matching: {_print_matching(g, result.matching)}")
    _emit(out, f"sign_in: {_sign(matching_sign(g, g.matched))}")
    _emit(out, f"sign_out: {_sign(matching_sign(g, result.matching))}")
    _emit(out, "cycle: " + " ".join(f"e{i + 1}" for i in sorted(result.cycle_edges)))
    _emit(out, f"visited: {result.visited_count}")


def _solve_exchange_euler(args, g: Digraph, out) -> None:
    from .oik import Oik

    report = validate_instance(g)
    if not report.eulerian:
        raise NotEulerian("exchange on a digraph needs an Eulerian orientation")
    if not report.perfect_matching:
        raise NotPerfectMatching("exchange on a digraph needs matched edges")
    rooms = tuple((min(e.tail, e.head), max(e.tail, e.head)) for e in g.edges)
    sigma = tuple(1 if e.tail < e.head else -1 for e in g.edges)
    oriented = orient_and_pair(Oik(2, tuple(range(1, g.m + 1)), rooms), sigma=sigma)
    family = [oriented] * (g.m // 2)
    start = sorted(g.matched)
    w = args.drop if args.drop else 1
    end, path = exchange_path(family, start, w, ordered=False, record_trace=args.trace)
    if args.trace:
        for k, step in enumerate(path.trace, 1):
            sig = "" if step.sigma is None else f" sigma={_sign(step.sigma)}"
            _emit(out, f"step {k}: drop pos {step.drop_pos} -> state {step.state} pi={list(step.pi)}{sig}")
    new_matching = frozenset(end)
    _emit(out, f"matching: {_print_matching(g, new_matching)}")
    _emit(out, f"sign_in: {_sign(matching_sign(g, g.matched))}")
    _emit(out, f"sign_out: {_sign(matching_sign(g, new_matching))}")
    _emit(out, f"steps: {path.steps}")


def _solve_exchange_oik(args, parsed, out) -> None:
    oik, sigma = parsed
    oriented = orient_and_pair(oik, sigma=sigma)
    h = len(oik.nodes) // oik.d
    if h * oik.d != len(oik.nodes):
        raise NotAPartition("node count is not a multiple of the room dimension")
    family = [oriented] * h
    if args.partition:
        indices = _room_indices(oriented, _parse_partition(args.partition))
    else:
        partitions = enumerate_partitions(family, ordered=True)
        if not partitions:
            raise NotAPartition("the oik has no room partitions")
        indices = list(partitions[0])
    w = args.drop if args.drop else oik.nodes[0]
    end, path = exchange_path(family, indices, w, ordered=True, record_trace=args.trace)
    if args.trace:
        for k, step in enumerate(path.trace, 1):
            sig = "" if step.sigma is None else f" sigma={_sign(step.sigma)}"
            _emit(out, f"step {k}: drop pos {step.drop_pos} -> state {step.state} pi={list(step.pi)}{sig}")
    rooms = " / ".join(",".join(str(v) for v in oriented.rooms[r]) for r in end)
    _emit(out, f"partition: {rooms}")
    _emit(out, f"sign_in: {_sign(partition_sign(family, indices))}")
    _emit(out, f"sign_out: {_sign(partition_sign(family, end))}")
    _emit(out, f"steps: {path.steps}")


def _solve_lemke(args, P, out) -> None:
    if args.basis:
        basis = tuple(int(t) for t in args.basis.replace(",", " ").split())
    else:
        basis = tuple(range(1, P.dim + 1))
    w = args.label if args.label else 1
    result = lemke_path(P, basis, w, record_trace=args.trace)
    if args.trace:
        for k, step in enumerate(result.trace, 1):
            sig = "" if step.sigma is None else f" sigma={_sign(step.sigma)}"
            _emit(out, f"step {k}: drop pos {step.drop_pos} -> state {step.state} pi={list(step.pi)}{sig}")
    _emit(out, "basis: " + " ".join(str(j) for j in result.basis))
    _emit(out, "vertex: " + " ".join(fileio.format_rational(c) for c in result.x))
    _emit(out, f"sign_in: {_sign(result.start_sign)}")
    _emit(out, f"sign_out: {_sign(result.end_sign)}")
    _emit(out, f"steps: {result.steps}")


def cmd_solve(args, out) -> int:
    with open(args.file) as fh:
        text = fh.read()
    kind, parsed = fileio.load_instance(text)
    algorithm = args.algorithm
    if algorithm == "switchcycle":
        if kind != "euler":
            raise BadParams("switchcycle needs an euler instance")
        _solve_switchcycle(args, parsed, out)
    elif algorithm == "bipartite":
        if kind != "euler":
            raise BadParams("bipartite needs an euler instance")
        _solve_bipartite(args, parsed, out)
    elif algorithm == "exchange":
        if kind == "euler":
            _solve_exchange_euler(args, parsed, out)
        elif kind == "oik":
            _solve_exchange_oik(args, parsed, out)
        else:
            raise BadParams("exchange needs an euler or oik instance")
    elif algorithm == "lemke":
        if kind != "polytope":
            raise BadParams("lemke needs a polytope instance")
        _solve_lemke(args, parsed, out)
    else:
        raise BadParams(f"unknown algorithm {algorithm!r}")
    return 0


def cmd_verify(args, out) -> int:
    with open(args.file) as fh:
        text = fh.read()
    kind, parsed = fileio.load_instance(text)
    if kind != "euler":
        raise BadParams("verify needs an euler instance")
    g = parsed
    report = validate_instance(g)
    _emit(out, f"eulerian: {'PASS' if report.eulerian else 'FAIL'}")
    B = skew_adjacency(g)
    det = determinant_exact(B)
    if g.m % 2:
        _emit(out, f"det_zero_odd_m: {'PASS' if det == 0 else 'FAIL'}")
        return 0
    matchings = enumerate_matchings(g)
    total = signed_matching_sum(g)
    _emit(out, f"matchings: {len(matchings)}")
    _emit(out, f"det_eq_pf2: {'PASS' if det == total * total else 'FAIL'}")
    if report.eulerian and report.perfect_matching:
        _emit(out, f"signed_sum: {total} {'PASS' if total == 0 else 'FAIL'}")
    return 0


def cmd_bench(args, out) -> int:
    sizes = [int(t) for t in args.sizes.split(",") if t]
    rng = random.Random(args.seed)
    sep = "," if args.format == "csv" else "  "
    header = sep.join(["edges", "nodes", "time_s", "finds", "unites", "shrinks", "ops", "ops_per_edge"])
    _emit(out, header)
    for size in sizes:
        g = gen.gen_bench_instance(size, rng)
        t0 = time.perf_counter()
        result = find_opposite_matching(g)
        dt = time.perf_counter() - t0
        stats = result.stats
        if stats.unites > g.m - 1:
            raise InvariantViolation("more unite calls than nodes allow")
        ratio = stats.ops / len(g.edges)
        row = [
            str(len(g.edges)),
            str(g.m),
            f"{dt:.4f}",
            str(stats.finds),
            str(stats.unites),
            str(stats.shrinks),
            str(stats.ops),
            f"{ratio:.3f}",
        ]
        _emit(out, sep.join(row))
    return 0


def cmd_oik(args, out) -> int:
    with open(args.file) as fh:
        text = fh.read()
    kind, parsed = fileio.load_instance(text)
    if kind != "oik":
        raise BadParams("expected an oik instance")
    oik, sigma = parsed
    report = validate_oik(oik)
    _emit(out, f"is_oik: {str(report.is_oik).lower()}")
    _emit(out, f"is_manifold: {str(report.is_manifold).lower()}")
    if not report.is_oik:
        _emit(out, f"offending_wall: {' '.join(str(v) for v in report.offending_wall)}")
        return 0
    oriented = orient_and_pair(oik, sigma=sigma)
    _emit(out, "orientation: coherent")
    h, rem = divmod(len(oik.nodes), oik.d)
    if rem == 0 and len(oik.nodes) <= 14:
        family = [oriented] * h
        partitions = enumerate_partitions(family, ordered=False)
        _emit(out, f"partitions: {len(partitions)}")
        for p in partitions:
            rooms = " / ".join(",".join(str(v) for v in oriented.rooms[r]) for r in p)
            if oik.d % 2 == 0:
                _emit(out, f"partition {rooms} sign {_sign(partition_sign(family, p))}")
            else:
                _emit(out, f"partition {rooms}")
    return 0


def cmd_polytope(args, out) -> int:
    with open(args.file) as fh:
        text = fh.read()
    kind, parsed = fileio.load_instance(text)
    if kind != "polytope":
        raise BadParams("expected a polytope instance")
    P = parsed
    found = cl_vertices(P)
    _emit(out, f"cl_vertices: {len(found)}")
    for info in found:
        point = " ".join(fileio.format_rational(c) for c in info.x)
        sign = vertex_sign(P, info)
        _emit(out, f"vertex {point} basis {' '.join(str(j) for j in info.basis)} sign {_sign(sign)}")
        if any(info.x):
            try:
                eq = extract_equilibrium(P, info.x)
            except ValueError:
                continue
            xh = " ".join(fileio.format_rational(c) for c in eq.xhat)
            yh = " ".join(fileio.format_rational(c) for c in eq.yhat)
            _emit(out, f"equilibrium x {xh} y {yh}")
    return 0


def vertex_sign(P, info) -> int:
    from .graph import permutation_parity

    return info.sigma * permutation_parity([P.labels[j - 1] for j in info.basis])


def cmd_gale(args, out) -> int:
    with open(args.file) as fh:
        text = fh.read()
    kind, parsed = fileio.load_instance(text)
    if kind != "gale":
        raise BadParams("expected a gale instance")
    lab = parsed
    g = derived_graph(lab)
    strings = enumerate_gale(lab.m, lab.n)
    cl = []
    for bits in strings:
        labels = {lab.labels[j] for j, b in enumerate(bits) if b}
        if labels == set(range(1, lab.m + 1)):
            cl.append((bits, gale_to_matching(bits, lab)))
    _emit(out, f"gale_strings: {len(strings)}")
    _emit(out, f"cl_strings: {len(cl)}")
    for bits, matched in cl:
        word = "".join(str(b) for b in bits)
        sign = matching_sign(g, matched)
        _emit(out, f"string {word} matching {_print_matching(g, matched)} sign {_sign(sign)}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="RNG seed (64-bit)")
    common.add_argument("--trace", action="store_true", help="emit per-step traces")
    common.add_argument("--debug-invariants", action="store_true", help="check structural invariants after every step")
    common.add_argument("--start", type=int, default=None, help="0-based matched edge index to start from")
    common.add_argument("--format", choices=["text", "dot", "csv"], default="text")

    parser = argparse.ArgumentParser(prog="oikpivot", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_parser(name, **kwargs):
        return sub.add_parser(name, parents=[common], **kwargs)

    p = add_parser("gen", help="generate an instance file")
    p.add_argument("kind", choices=["euler", "bipartite", "oik", "polytope", "gale"])
    p.add_argument("m", type=int)
    p.add_argument("extra", type=int, nargs="?", default=0, help="extra cycles, or n for polytope/gale")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_gen)

    p = add_parser("solve", help="run an algorithm on an instance")
    p.add_argument("file")
    p.add_argument("--algorithm", required=True, choices=["switchcycle", "bipartite", "exchange", "lemke"])
    p.add_argument("--drop", type=int, default=None, help="node to drop (exchange)")
    p.add_argument("--partition", default=None, help="start partition, rooms '/'-separated")
    p.add_argument("--label", type=int, default=None, help="missing label (lemke)")
    p.add_argument("--basis", default=None, help="start basis rows (lemke)")
    p.set_defaults(func=cmd_solve)

    p = add_parser("verify", help="brute-force identity checks")
    p.add_argument("file")
    p.set_defaults(func=cmd_verify)

    p = add_parser("bench", help="operation-count sweep")
    p.add_argument("--sizes", default="1000,10000,100000,1000000")
    p.set_defaults(func=cmd_bench)

    p = add_parser("oik", help="validate and enumerate an oik instance")
    p.add_argument("file")
    p.set_defaults(func=cmd_oik)

    p = add_parser("polytope", help="report CL vertices and equilibria")
    p.add_argument("file")
    p.set_defaults(func=cmd_polytope)

    p = add_parser("gale", help="report Gale strings and matchings")
    p.add_argument("file")
    p.set_defaults(func=cmd_gale)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, sys.stdout)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 1
    except PRECONDITION_ERRORS as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except StepLimitExceeded as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 3
    except Exception as exc:  # pragma: no cover - defensive
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
