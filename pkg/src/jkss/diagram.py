"""Combinatorial model of twisted (and virtual) link diagrams.

A diagram is the 4-valent graph |D| of its real crossings.  Around crossing
``i`` the four short edges are the in-ports ``i.in0``, ``i.in1`` and the
out-ports ``i.out0``, ``i.out1``.  Drawing the crossing with both strands
pointing up, index 0 is the left end and index 1 the right end, at the
bottom (in) and at the top (out) alike.  So the strand entering at ``in e``
leaves at ``out 1-e``; for a positive crossing the over-strand is
``in0 -> out1``, for a negative one it is ``in1 -> out0``.

Each edge of |D| runs from an out-port to an in-port and carries a number of
bars.  Virtual crossings and the positions of bars along an edge are not
recorded, so virtual moves and twisted moves I-II act trivially on this
encoding.  Only the bar count mod 2 enters any computation.
"""
from __future__ import annotations

import enum
import random
from dataclasses import dataclass
from types import MappingProxyType
from typing import Iterable, Mapping, Union

__all__ = [
    "CrossingSign",
    "Polarity",
    "Port",
    "DiagramEdge",
    "TwistedDiagram",
    "braid_closure",
    "DiagramError",
    "DiagramSyntaxError",
    "DiagramValidationError",
    "validate",
    "writhe",
    "is_virtual",
    "mirror",
    "connected_sum",
    "components",
    "parse_diagram",
    "render_diagram",
    "random_diagram",
]


class CrossingSign(enum.IntEnum):
    POSITIVE = 1
    NEGATIVE = -1

    @classmethod
    def from_symbol(cls, s: str) -> "CrossingSign":
        if s == "+":
            return cls.POSITIVE
        if s == "-":
            return cls.NEGATIVE
        raise ValueError(f"crossing sign must be '+' or '-', got {s!r}")

    @property
    def symbol(self) -> str:
        return "+" if self is CrossingSign.POSITIVE else "-"

    def __neg__(self) -> "CrossingSign":
        return CrossingSign(-int(self))


class Polarity(enum.Enum):
    OUT = "+"
    IN = "-"


@dataclass(frozen=True, order=True)
class Port:
    crossing: int
    polarity: Polarity
    index: int

    def __str__(self) -> str:
        side = "out" if self.polarity is Polarity.OUT else "in"
        return f"{self.crossing}.{side}{self.index}"


@dataclass(frozen=True)
class DiagramEdge:
    """Edge of |D| from out-port ``source_index`` of ``source`` to in-port
    ``target_index`` of ``target``."""

    source: int
    source_index: int
    target: int
    target_index: int
    bars: int = 0

    @property
    def tail(self) -> Port:
        return Port(self.source, Polarity.OUT, self.source_index)

    @property
    def head(self) -> Port:
        return Port(self.target, Polarity.IN, self.target_index)

    @property
    def ref(self) -> tuple[int, int]:
        """The out-port ``(crossing, index)`` this edge leaves; identifies it."""
        return (self.source, self.source_index)

    @property
    def parity(self) -> int:
        return self.bars % 2

    def with_bars(self, bars: int) -> "DiagramEdge":
        return DiagramEdge(self.source, self.source_index, self.target, self.target_index, bars)

    def _key(self) -> tuple[int, int, int, int, int]:
        return (self.source, self.source_index, self.target, self.target_index, self.bars)


EdgeRef = Union[DiagramEdge, tuple[int, int]]


class TwistedDiagram:
    """Signed crossings, directed port-to-port edges with bar counts, and
    crossing-free loops (each given by its bar count).

    Instances are immutable.  Construction does not check the port
    invariants; use :func:`validate`.
    """

    __slots__ = ("_crossings", "_edges", "_free_loops", "_out", "_in")

    def __init__(
        self,
        crossings: Mapping[int, CrossingSign | int] | None = None,
        edges: Iterable[DiagramEdge] = (),
        free_loops: Iterable[int] = (),
    ):
        self._crossings = {
            int(k): CrossingSign(v) for k, v in sorted((crossings or {}).items())
        }
        self._edges = tuple(sorted(edges, key=DiagramEdge._key))
        self._free_loops = tuple(sorted(int(b) for b in free_loops))
        self._out: dict[tuple[int, int], DiagramEdge] | None = None
        self._in: dict[tuple[int, int], DiagramEdge] | None = None

    @property
    def crossings(self) -> Mapping[int, CrossingSign]:
        return MappingProxyType(self._crossings)

    @property
    def edges(self) -> tuple[DiagramEdge, ...]:
        return self._edges

    @property
    def free_loops(self) -> tuple[int, ...]:
        return self._free_loops

    def crossing_ids(self) -> list[int]:
        return list(self._crossings)

    def sign(self, crossing: int) -> CrossingSign:
        return self._crossings[crossing]

    def __len__(self) -> int:
        return len(self._crossings)

    def _index(self) -> None:
        if self._out is None:
            self._out = {e.ref: e for e in self._edges}
            self._in = {(e.target, e.target_index): e for e in self._edges}

    def out_edge(self, crossing: int, index: int) -> DiagramEdge:
        """The edge leaving out-port ``index`` of ``crossing``."""
        self._index()
        return self._out[(crossing, index)]

    def in_edge(self, crossing: int, index: int) -> DiagramEdge:
        """The edge arriving at in-port ``index`` of ``crossing``."""
        self._index()
        return self._in[(crossing, index)]

    def edge(self, ref: EdgeRef) -> DiagramEdge:
        if isinstance(ref, DiagramEdge):
            if ref not in self._edges:
                raise KeyError(f"edge {ref} is not in the diagram")
            return ref
        self._index()
        try:
            return self._out[tuple(ref)]
        except KeyError:
            raise KeyError(f"no edge leaves out-port {ref}") from None

    def replace(self, **changes) -> "TwistedDiagram":
        return TwistedDiagram(
            changes.get("crossings", self._crossings),
            changes.get("edges", self._edges),
            changes.get("free_loops", self._free_loops),
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TwistedDiagram):
            return NotImplemented
        return (
            self._crossings == other._crossings
            and self._edges == other._edges
            and self._free_loops == other._free_loops
        )

    def __hash__(self) -> int:
        return hash((tuple(self._crossings.items()), self._edges, self._free_loops))

    def __repr__(self) -> str:
        return (
            f"TwistedDiagram(crossings={len(self._crossings)}, "
            f"edges={len(self._edges)}, free_loops={list(self._free_loops)})"
        )


class DiagramError(ValueError):
    pass


class DiagramSyntaxError(DiagramError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class DiagramValidationError(DiagramError):
    def __init__(self, violations: list[str]):
        super().__init__("invalid diagram: " + "; ".join(violations))
        self.violations = violations


def validate(d: TwistedDiagram) -> list[str]:
    """List every violated port invariant; empty means the diagram is valid."""
    problems: list[str] = []
    for cid in d.crossings:
        if not isinstance(cid, int) or cid <= 0:
            problems.append(f"crossing id {cid!r} is not a positive integer")
    out_use: dict[tuple[int, int], int] = {}
    in_use: dict[tuple[int, int], int] = {}
    for e in d.edges:
        for cid, idx, side in ((e.source, e.source_index, "out"), (e.target, e.target_index, "in")):
            if cid not in d.crossings:
                problems.append(f"edge {_fmt_edge(e)} references undeclared crossing {cid}")
            if idx not in (0, 1):
                problems.append(f"edge {_fmt_edge(e)} uses {side}-port index {idx}")
        if e.bars < 0:
            problems.append(f"edge {_fmt_edge(e)} has negative bar count")
        out_use[e.ref] = out_use.get(e.ref, 0) + 1
        key = (e.target, e.target_index)
        in_use[key] = in_use.get(key, 0) + 1
    for cid in d.crossings:
        for idx in (0, 1):
            for side, use in (("out", out_use), ("in", in_use)):
                count = use.get((cid, idx), 0)
                if count == 0:
                    problems.append(f"port {cid}.{side}{idx} has no edge")
                elif count > 1:
                    problems.append(f"port {cid}.{side}{idx} has {count} edges")
    for b in d.free_loops:
        if b < 0:
            problems.append("free loop has negative bar count")
    return problems


def _fmt_edge(e: DiagramEdge) -> str:
    return f"{e.source}.{e.source_index}->{e.target}.{e.target_index}"


def writhe(d: TwistedDiagram) -> int:
    return sum(int(s) for s in d.crossings.values())


def is_virtual(d: TwistedDiagram, strict: bool = False) -> bool:
    """Whether ``d`` has no bars.

    By default bars are counted mod 2 (twisted move I cancels pairs); with
    ``strict=True`` every count must be exactly zero.
    """
    counts = [e.bars for e in d.edges] + list(d.free_loops)
    if strict:
        return all(b == 0 for b in counts)
    return all(b % 2 == 0 for b in counts)


def mirror(d: TwistedDiagram) -> TwistedDiagram:
    """The diagram s(D): reflect in a vertical line and switch every crossing.

    Signs survive (reflection and switching each negate them) while every
    port index flips, since left and right are exchanged.
    """
    edges = [
        DiagramEdge(e.source, 1 - e.source_index, e.target, 1 - e.target_index, e.bars)
        for e in d.edges
    ]
    return TwistedDiagram(d.crossings, edges, d.free_loops)


def relabel(d: TwistedDiagram, offset: int) -> TwistedDiagram:
    """Add ``offset`` to every crossing identifier."""
    return TwistedDiagram(
        {c + offset: s for c, s in d.crossings.items()},
        [
            DiagramEdge(e.source + offset, e.source_index, e.target + offset, e.target_index, e.bars)
            for e in d.edges
        ],
        d.free_loops,
    )


def disjoint_union(d1: TwistedDiagram, d2: TwistedDiagram) -> TwistedDiagram:
    """Place ``d2`` beside ``d1``, shifting its ids past those of ``d1``."""
    offset = max(d1.crossings, default=0)
    d2 = relabel(d2, offset)
    return TwistedDiagram(
        {**d1.crossings, **d2.crossings},
        d1.edges + d2.edges,
        d1.free_loops + d2.free_loops,
    )


def connected_sum(
    d1: TwistedDiagram, e1: EdgeRef, d2: TwistedDiagram, e2: EdgeRef
) -> TwistedDiagram:
    """Cut edge ``e1`` of ``d1`` and ``e2`` of ``d2`` and cross-reconnect.

    With ``e1 = a -> b`` and ``e2 = c -> d`` the result contains ``a -> d``
    and ``c -> b``.  Crossings of ``d2`` are renumbered after those of ``d1``.
    """
    if not d1.edges or not d2.edges:
        raise DiagramError("connected sum needs an edge in each diagram")
    edge1 = d1.edge(e1)
    edge2 = d2.edge(e2)
    if edge1.bars or edge2.bars:
        raise DiagramError("connected sum must cut bar-free edges")
    offset = max(d1.crossings, default=0)
    shifted = relabel(d2, offset)
    edge2 = DiagramEdge(
        edge2.source + offset, edge2.source_index, edge2.target + offset, edge2.target_index
    )
    edges = [e for e in d1.edges if e != edge1] + [e for e in shifted.edges if e != edge2]
    edges.append(DiagramEdge(edge1.source, edge1.source_index, edge2.target, edge2.target_index))
    edges.append(DiagramEdge(edge2.source, edge2.source_index, edge1.target, edge1.target_index))
    return TwistedDiagram(
        {**d1.crossings, **shifted.crossings}, edges, d1.free_loops + d2.free_loops
    )


def components(d: TwistedDiagram) -> list[list[DiagramEdge]]:
    """Edges of each closed component with crossings, in traversal order.

    Free loops are not included.  Requires a valid diagram.
    """
    seen: set[tuple[int, int]] = set()
    out: list[list[DiagramEdge]] = []
    for e in d.edges:
        if e.ref in seen:
            continue
        cycle = []
        cur = e
        while cur.ref not in seen:
            seen.add(cur.ref)
            cycle.append(cur)
            cur = d.out_edge(cur.target, 1 - cur.target_index)
        out.append(cycle)
    return out


# -- text format ----------------------------------------------------------


def render_diagram(d: TwistedDiagram) -> str:
    lines = [f"crossing {c} {s.symbol}" for c, s in d.crossings.items()]
    for e in d.edges:
        line = f"edge {e.source}.{e.source_index} {e.target}.{e.target_index}"
        if e.bars:
            line += f" bars={e.bars}"
        lines.append(line)
    lines.extend(f"loop bars={b}" for b in d.free_loops)
    return "".join(line + "\n" for line in lines)


def _parse_port(token: str, lineno: int) -> tuple[int, int]:
    head, dot, tail = token.partition(".")
    if not dot:
        raise DiagramSyntaxError(f"expected <crossing>.<index>, got {token!r}", lineno)
    try:
        crossing, index = int(head), int(tail)
    except ValueError:
        raise DiagramSyntaxError(f"expected <crossing>.<index>, got {token!r}", lineno) from None
    if index not in (0, 1):
        raise DiagramSyntaxError(f"port index must be 0 or 1, got {index}", lineno)
    return crossing, index


def _parse_bars(token: str, lineno: int) -> int:
    key, eq, value = token.partition("=")
    if key != "bars" or not eq:
        raise DiagramSyntaxError(f"expected bars=<k>, got {token!r}", lineno)
    try:
        bars = int(value)
    except ValueError:
        raise DiagramSyntaxError(f"bar count must be an integer, got {value!r}", lineno) from None
    if bars < 0:
        raise DiagramSyntaxError("bar count must be nonnegative", lineno)
    return bars


def parse_diagram(text: str) -> TwistedDiagram:
    """Parse the line-oriented diagram format and validate the result."""
    crossings: dict[int, CrossingSign] = {}
    edges: list[DiagramEdge] = []
    loops: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        tokens = line.split()
        if not tokens:
            continue
        keyword, args = tokens[0], tokens[1:]
        if keyword == "crossing":
            if len(args) != 2:
                raise DiagramSyntaxError("expected 'crossing <id> <+|->'", lineno)
            try:
                cid = int(args[0])
            except ValueError:
                raise DiagramSyntaxError(f"crossing id must be an integer, got {args[0]!r}", lineno) from None
            if cid <= 0:
                raise DiagramSyntaxError("crossing id must be positive", lineno)
            if cid in crossings:
                raise DiagramSyntaxError(f"crossing {cid} declared twice", lineno)
            try:
                crossings[cid] = CrossingSign.from_symbol(args[1])
            except ValueError as exc:
                raise DiagramSyntaxError(str(exc), lineno) from None
        elif keyword == "edge":
            if len(args) not in (2, 3):
                raise DiagramSyntaxError("expected 'edge <j>.<l> <i>.<e> [bars=<k>]'", lineno)
            j, lam = _parse_port(args[0], lineno)
            i, eps = _parse_port(args[1], lineno)
            bars = _parse_bars(args[2], lineno) if len(args) == 3 else 0
            edges.append(DiagramEdge(j, lam, i, eps, bars))
        elif keyword == "loop":
            if len(args) > 1:
                raise DiagramSyntaxError("expected 'loop [bars=<k>]'", lineno)
            loops.append(_parse_bars(args[0], lineno) if args else 0)
        else:
            raise DiagramSyntaxError(f"unknown keyword {keyword!r}", lineno)
    d = TwistedDiagram(crossings, edges, loops)
    problems = validate(d)
    if problems:
        raise DiagramValidationError(problems)
    return d


def braid_closure(word: Iterable[int], strands: int | None = None) -> TwistedDiagram:
    """Closure of a braid word; ``k`` stands for s_k and ``-k`` for its inverse.

    s_k crosses strands k and k+1 (1-based from the left) with a positive
    crossing.  Strands that no generator touches close to free loops.
    """
    word = list(word)
    if any(k == 0 for k in word):
        raise ValueError("braid generators are nonzero integers")
    width = max([abs(k) + 1 for k in word] + [strands or 1])
    first: list[tuple[int, int] | None] = [None] * width
    last: list[tuple[int, int] | None] = [None] * width
    signs = {}
    edges = []
    for c, k in enumerate(word, start=1):
        signs[c] = CrossingSign.POSITIVE if k > 0 else CrossingSign.NEGATIVE
        for eps, pos in enumerate((abs(k) - 1, abs(k))):
            if last[pos] is None:
                first[pos] = (c, eps)
            else:
                edges.append(DiagramEdge(*last[pos], c, eps))
            last[pos] = (c, eps)
    loops = []
    for pos in range(width):
        if last[pos] is None:
            loops.append(0)
        else:
            edges.append(DiagramEdge(*last[pos], *first[pos]))
    return TwistedDiagram(signs, edges, loops)


def random_diagram(crossings: int, bars: int = 0, seed: int | None = None) -> TwistedDiagram:
    """Random signs, a uniform pairing of out-ports with in-ports, and
    ``bars`` bars dropped on uniformly chosen edges."""
    if crossings < 0 or bars < 0:
        raise ValueError("crossings and bars must be nonnegative")
    if crossings == 0 and bars:
        raise ValueError("a diagram without crossings has no edge to carry bars")
    rng = random.Random(seed)
    ids = range(1, crossings + 1)
    signs = {c: rng.choice((CrossingSign.POSITIVE, CrossingSign.NEGATIVE)) for c in ids}
    targets = [(c, k) for c in ids for k in (0, 1)]
    rng.shuffle(targets)
    counts = [0] * len(targets)
    for _ in range(bars):
        counts[rng.randrange(len(targets))] += 1
    sources = [(c, k) for c in ids for k in (0, 1)]
    edges = [
        DiagramEdge(j, lam, i, eps, k)
        for (j, lam), (i, eps), k in zip(sources, targets, counts)
    ]
    return TwistedDiagram(signs, edges)
