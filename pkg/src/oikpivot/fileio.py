"""Text formats for instances, plus DOT export.

All formats are line-oriented, whitespace-separated, with ``#`` comments
ignored.  Serialisers reproduce the record order of the parsed input, so a
parse/format round trip of a canonical file is byte-identical.
"""

from __future__ import annotations

from fractions import Fraction

from .gale import GaleLabeling
from .graph import Digraph
from .oik import Oik
from .polytope import LabeledPolytope


class ParseError(ValueError):
    pass


def _records(text: str) -> list[list[str]]:
    records = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            records.append(line.split())
    return records


def _ints(tokens, where: str) -> list[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError as exc:
        raise ParseError(f"bad integer in {where}: {exc}") from None


def parse_rational(token: str) -> Fraction:
    try:
        if "/" in token:
            num, den = token.split("/", 1)
            return Fraction(int(num), int(den))
        return Fraction(int(token))
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad rational {token!r}: {exc}") from None


def format_rational(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def instance_kind(text: str) -> str:
    records = _records(text)
    if not records:
        raise ParseError("empty instance")
    return records[0][0]


def parse_digraph(text: str) -> Digraph:
    records = _records(text)
    if not records or records[0][0] != "euler":
        raise ParseError("expected header 'euler <m> <k>'")
    if len(records[0]) != 3:
        raise ParseError("header must be 'euler <m> <k>'")
    m, k = _ints(records[0][1:], "header")
    if len(records) - 1 != k:
        raise ParseError(f"expected {k} edge lines, found {len(records) - 1}")
    edges = []
    matched = set()
    for i, rec in enumerate(records[1:]):
        if len(rec) != 3 or rec[2] not in ("M", "U"):
            raise ParseError(f"edge line {i + 1} must be '<tail> <head> <M|U>'")
        t, h = _ints(rec[:2], f"edge line {i + 1}")
        edges.append((t, h))
        if rec[2] == "M":
            matched.add(i)
    try:
        return Digraph(m, tuple(edges), frozenset(matched))
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def format_digraph(g: Digraph) -> str:
    lines = [f"euler {g.m} {len(g.edges)}"]
    for i, e in enumerate(g.edges):
        flag = "M" if i in g.matched else "U"
        lines.append(f"{e.tail} {e.head} {flag}")
    return "\n".join(lines) + "\n"


def parse_oik(text: str) -> tuple[Oik, tuple[int, ...] | None]:
    records = _records(text)
    if not records or records[0][0] != "oik" or len(records[0]) != 3:
        raise ParseError("expected header 'oik <d> <r>'")
    d, r = _ints(records[0][1:], "header")
    if len(records) - 1 != r:
        raise ParseError(f"expected {r} room lines, found {len(records) - 1}")
    rooms = []
    sigmas = []
    for i, rec in enumerate(records[1:]):
        if len(rec) == d + 1 and rec[d] in ("+1", "-1", "1"):
            sigmas.append(1 if rec[d] in ("+1", "1") else -1)
            rec = rec[:d]
        elif len(rec) != d:
            raise ParseError(f"room line {i + 1} must hold {d} nodes and an optional +1/-1")
        nodes = _ints(rec, f"room line {i + 1}")
        if nodes != sorted(nodes):
            raise ParseError(f"room line {i + 1} must list nodes ascending")
        rooms.append(tuple(nodes))
    if sigmas and len(sigmas) != len(rooms):
        raise ParseError("either all rooms carry an orientation or none")
    universe = tuple(sorted({v for room in rooms for v in room}))
    try:
        oik = Oik(d, universe, tuple(rooms))
    except ValueError as exc:
        raise ParseError(str(exc)) from None
    return oik, tuple(sigmas) if sigmas else None


def format_oik(oik: Oik, sigma=None) -> str:
    lines = [f"oik {oik.d} {len(oik.rooms)}"]
    for i, room in enumerate(oik.rooms):
        body = " ".join(str(v) for v in room)
        if sigma is not None:
            body += " +1" if sigma[i] == 1 else " -1"
        lines.append(body)
    return "\n".join(lines) + "\n"


def parse_polytope(text: str) -> LabeledPolytope:
    records = _records(text)
    if not records or records[0][0] != "polytope" or len(records[0]) != 3:
        raise ParseError("expected header 'polytope <m> <n>'")
    m, n = _ints(records[0][1:], "header")
    if len(records) - 1 != n:
        raise ParseError(f"expected {n} constraint lines, found {len(records) - 1}")
    rows, rhs, labels = [], [], []
    for i, rec in enumerate(records[1:]):
        if len(rec) != m + 2:
            raise ParseError(f"constraint line {i + 1} must be '<label> <b> <a_1> ... <a_m>'")
        labels.append(_ints(rec[:1], f"line {i + 1}")[0])
        rhs.append(parse_rational(rec[1]))
        rows.append(tuple(parse_rational(t) for t in rec[2:]))
    try:
        return LabeledPolytope(m, tuple(rows), tuple(rhs), tuple(labels))
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def format_polytope(P: LabeledPolytope) -> str:
    lines = [f"polytope {P.dim} {P.n}"]
    for label, b, row in zip(P.labels, P.rhs, P.rows):
        body = " ".join([str(label), format_rational(b)] + [format_rational(a) for a in row])
        lines.append(body)
    return "\n".join(lines) + "\n"


def parse_gale(text: str) -> GaleLabeling:
    records = _records(text)
    if not records or records[0][0] != "gale" or len(records[0]) != 3:
        raise ParseError("expected header 'gale <m> <n>'")
    m, n = _ints(records[0][1:], "header")
    labels = [t for rec in records[1:] for t in rec]
    if len(labels) != n:
        raise ParseError(f"expected {n} labels, found {len(labels)}")
    try:
        return GaleLabeling(m, tuple(_ints(labels, "labels")))
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def format_gale(lab: GaleLabeling) -> str:
    return f"gale {lab.m} {lab.n}\n" + " ".join(str(l) for l in lab.labels) + "\n"


def load_instance(text: str):
    """(kind, parsed object) for any of the four instance formats."""
    kind = instance_kind(text)
    if kind == "euler":
        return kind, parse_digraph(text)
    if kind == "oik":
        return kind, parse_oik(text)
    if kind == "polytope":
        return kind, parse_polytope(text)
    if kind == "gale":
        return kind, parse_gale(text)
    raise ParseError(f"unknown instance kind {kind!r}")


def to_dot(g: Digraph, matching=None, cycle=None) -> str:
    """Graphviz digraph; matched edges bold, cycle edges red."""
    matching = g.matched if matching is None else frozenset(matching)
    cycle = frozenset(cycle) if cycle is not None else frozenset()
    lines = ["digraph g {"]
    for u in range(1, g.m + 1):
        lines.append(f"  {u};")
    for i, e in enumerate(g.edges):
        attrs = []
        if i in matching:
            attrs.append("style=bold")
        if i in cycle:
            attrs.append("color=red")
        suffix = f" [{', '.join(attrs)}]" if attrs else ""
        lines.append(f"  {e.tail} -> {e.head}{suffix};")
    lines.append("}")
    return "\n".join(lines) + "\n"
