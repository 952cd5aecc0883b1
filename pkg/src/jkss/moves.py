"""Reidemeister moves I-III and twisted move III as rewrites of a diagram.

Virtual moves I-IV and twisted moves I-II need no rewrite: the encoding does
not record virtual crossings, and bars are only ever read mod 2.

Port roles follow the convention in :mod:`jkss.diagram`: the over-strand of
a positive crossing is ``in0 -> out1`` and of a negative one ``in1 -> out0``.
Removing crossings (R1-, R2-) lets the strands pass straight through, which
is deletion of chords in the Gauss diagram.
"""
from __future__ import annotations

import random
from dataclasses import dataclass

from .diagram import CrossingSign, DiagramEdge, TwistedDiagram

__all__ = [
    "KINDS",
    "MoveSite",
    "InvalidSiteError",
    "enumerate_sites",
    "apply",
    "random_walk",
]

KINDS = ("R1+", "R1-", "R2+", "R2-", "R3", "T3")


class InvalidSiteError(ValueError):
    pass


@dataclass(frozen=True)
class MoveSite:
    """``location`` holds the crossing ids or edge refs the rewrite touches;
    ``parameters`` the variant (signs, strand side, orientation)."""

    kind: str
    location: tuple
    parameters: tuple = ()


def _over(sign: CrossingSign) -> tuple[int, int]:
    """(in-index, out-index) of the over-strand."""
    return (0, 1) if sign is CrossingSign.POSITIVE else (1, 0)


def _under(sign: CrossingSign) -> tuple[int, int]:
    return (1, 0) if sign is CrossingSign.POSITIVE else (0, 1)


def _next_id(d: TwistedDiagram) -> int:
    return max(d.crossings, default=0) + 1


def delete_crossings(d: TwistedDiagram, removed: set[int]) -> TwistedDiagram:
    """Drop ``removed`` crossings, joining each strand straight through.

    Bars along a joined strand add up.  A component that loses all its
    crossings becomes a free loop.
    """
    edges = []
    used: set[tuple[int, int]] = set()
    for e in d.edges:
        if e.source in removed:
            continue
        bars = e.bars
        cur = e
        while cur.target in removed:
            cur = d.out_edge(cur.target, 1 - cur.target_index)
            used.add(cur.ref)
            bars += cur.bars
        edges.append(DiagramEdge(e.source, e.source_index, cur.target, cur.target_index, bars))
    loops = list(d.free_loops)
    for e in d.edges:
        if e.source not in removed or e.ref in used:
            continue
        bars = 0
        cur = e
        while cur.ref not in used:
            used.add(cur.ref)
            bars += cur.bars
            cur = d.out_edge(cur.target, 1 - cur.target_index)
        loops.append(bars)
    crossings = {c: s for c, s in d.crossings.items() if c not in removed}
    return TwistedDiagram(crossings, edges, loops)


# -- R1 -------------------------------------------------------------------


def _r1_minus_sites(d: TwistedDiagram) -> list[MoveSite]:
    sites = []
    for c in d.crossings:
        curls = [
            k for k in (0, 1)
            if d.out_edge(c, k).target == c and d.out_edge(c, k).target_index == k
        ]
        if len(curls) == 2 and not any(d.out_edge(c, k).bars for k in curls):
            # an isolated kink: removing either curl gives the same circle
            curls = [0]
        for k in curls:
            if d.out_edge(c, k).bars == 0:
                sites.append(MoveSite("R1-", (c, k)))
    return sites


def _r1_plus_sites(d: TwistedDiagram) -> list[MoveSite]:
    return [
        MoveSite("R1+", (e.ref,), (int(sign), side))
        for e in d.edges
        for sign in (CrossingSign.POSITIVE, CrossingSign.NEGATIVE)
        for side in (0, 1)
    ]


def _apply_r1_plus(d: TwistedDiagram, site: MoveSite) -> TwistedDiagram:
    (ref,) = site.location
    sign, side = site.parameters
    e = d.edge(ref)
    c = _next_id(d)
    # strand enters at in[side], leaves at out[1-side], curls back into
    # in[1-side] and continues from out[side]
    edges = [f for f in d.edges if f != e]
    edges += [
        DiagramEdge(e.source, e.source_index, c, side, e.bars),
        DiagramEdge(c, 1 - side, c, 1 - side),
        DiagramEdge(c, side, e.target, e.target_index),
    ]
    return d.replace(crossings={**d.crossings, c: CrossingSign(sign)}, edges=edges)


# -- R2 -------------------------------------------------------------------


def _r2_minus_sites(d: TwistedDiagram) -> list[MoveSite]:
    sites = []
    for c1, s1 in d.crossings.items():
        o_in, o_out = _over(s1)
        a = d.out_edge(c1, o_out)
        c2 = a.target
        if c2 == c1 or a.bars or d.sign(c2) == s1 or a.target_index != _over(d.sign(c2))[0]:
            continue
        u1_in, u1_out = _under(s1)
        u2_in, u2_out = _under(d.sign(c2))
        b = d.out_edge(c1, u1_out)
        if b.target == c2 and b.target_index == u2_in and b.bars == 0:
            sites.append(MoveSite("R2-", (c1, c2), ("parallel",)))
        b = d.out_edge(c2, u2_out)
        if b.target == c1 and b.target_index == u1_in and b.bars == 0:
            sites.append(MoveSite("R2-", (c1, c2), ("antiparallel",)))
    return sites


def _r2_plus_sites(d: TwistedDiagram) -> list[MoveSite]:
    sites = []
    for e1 in d.edges:
        for e2 in d.edges:
            if e1 == e2:
                continue
            for sign in (1, -1):
                for orient in ("parallel", "antiparallel"):
                    sites.append(MoveSite("R2+", (e1.ref, e2.ref), (sign, orient)))
    return sites


def _apply_r2_plus(d: TwistedDiagram, site: MoveSite) -> TwistedDiagram:
    ref1, ref2 = site.location
    sign, orient = site.parameters
    over_edge, under_edge = d.edge(ref1), d.edge(ref2)
    if over_edge == under_edge:
        raise InvalidSiteError("R2+ needs two distinct edges")
    c1 = _next_id(d)
    c2 = c1 + 1
    s1 = CrossingSign(sign)
    s2 = -s1
    o1, o2 = _over(s1), _over(s2)
    u1, u2 = _under(s1), _under(s2)
    edges = [f for f in d.edges if f != over_edge and f != under_edge]
    a = over_edge
    edges += [
        DiagramEdge(a.source, a.source_index, c1, o1[0], a.bars),
        DiagramEdge(c1, o1[1], c2, o2[0]),
        DiagramEdge(c2, o2[1], a.target, a.target_index),
    ]
    b = under_edge
    if orient == "parallel":
        first, second = (c1, u1), (c2, u2)
    elif orient == "antiparallel":
        first, second = (c2, u2), (c1, u1)
    else:
        raise InvalidSiteError(f"unknown R2 orientation {orient!r}")
    edges += [
        DiagramEdge(b.source, b.source_index, first[0], first[1][0], b.bars),
        DiagramEdge(first[0], first[1][1], second[0], second[1][0]),
        DiagramEdge(second[0], second[1][1], b.target, b.target_index),
    ]
    return d.replace(crossings={**d.crossings, c1: s1, c2: s2}, edges=edges)


# -- R3 -------------------------------------------------------------------
#
# One orientation class: three crossings of one sign arranged as the braid
# word s1 s2 s1 (the "left" triangle) or s2 s1 s2 (the "right" triangle),
# strands numbered 1..3 from the left and all pointing up.  The move swaps
# the two.  Roles are (bottom, middle, top); each crossing's ports 0/1 are
# its left/right strand positions.

# internal edges as (role, out-index, role, in-index)
_R3_INTERNAL = {
    "left": ((0, 0, 2, 0), (0, 1, 1, 0), (1, 0, 2, 1)),
    "right": ((0, 0, 1, 1), (0, 1, 2, 1), (1, 1, 2, 0)),
}
# boundary ports in strand order: bottom ends 1..3, then top ends 1..3
_R3_BOUNDARY = {
    "left": (((0, 0), (0, 1), (1, 1)), ((2, 0), (2, 1), (1, 1))),
    "right": (((1, 0), (0, 0), (0, 1)), ((1, 0), (2, 0), (2, 1))),
}
_R3_OTHER = {"left": "right", "right": "left"}


def _r3_sites(d: TwistedDiagram) -> list[MoveSite]:
    sites = []
    for shape, internal in _R3_INTERNAL.items():
        for bottom, sign in d.crossings.items():
            roles = [bottom, None, None]
            ok = True
            for r_src, out_idx, r_dst, in_idx in internal:
                src = roles[r_src]
                if src is None:
                    ok = False
                    break
                e = d.out_edge(src, out_idx)
                if e.bars or e.target_index != in_idx:
                    ok = False
                    break
                if roles[r_dst] is None:
                    roles[r_dst] = e.target
                elif roles[r_dst] != e.target:
                    ok = False
                    break
            if not ok or len(set(roles)) != 3:
                continue
            if any(d.sign(c) != sign for c in roles):
                continue
            sites.append(MoveSite("R3", tuple(roles), (shape,)))
    return sites


def _apply_r3(d: TwistedDiagram, site: MoveSite) -> TwistedDiagram:
    roles = site.location
    (shape,) = site.parameters
    target = _R3_OTHER[shape]
    internal_old = {
        (roles[rs], oi, roles[rd], ii) for rs, oi, rd, ii in _R3_INTERNAL[shape]
    }
    in_map = {}
    out_map = {}
    old_in, old_out = _R3_BOUNDARY[shape]
    new_in, new_out = _R3_BOUNDARY[target]
    for (ro, po), (rn, pn) in zip(old_in, new_in):
        in_map[(roles[ro], po)] = (roles[rn], pn)
    for (ro, po), (rn, pn) in zip(old_out, new_out):
        out_map[(roles[ro], po)] = (roles[rn], pn)
    edges = []
    for e in d.edges:
        if (e.source, e.source_index, e.target, e.target_index) in internal_old:
            continue
        src = out_map.get((e.source, e.source_index), (e.source, e.source_index))
        dst = in_map.get((e.target, e.target_index), (e.target, e.target_index))
        edges.append(DiagramEdge(src[0], src[1], dst[0], dst[1], e.bars))
    for rs, oi, rd, ii in _R3_INTERNAL[target]:
        edges.append(DiagramEdge(roles[rs], oi, roles[rd], ii))
    return d.replace(edges=edges)


# -- twisted move III -----------------------------------------------------


def _t3_sites(d: TwistedDiagram) -> list[MoveSite]:
    sites = []
    for c in d.crossings:
        if all(d.in_edge(c, k).parity for k in (0, 1)):
            sites.append(MoveSite("T3", (c,), ("in",)))
        if all(d.out_edge(c, k).parity for k in (0, 1)):
            sites.append(MoveSite("T3", (c,), ("out",)))
    return sites


def _apply_t3(d: TwistedDiagram, site: MoveSite) -> TwistedDiagram:
    """Push one bar from each edge on ``side`` through the crossing.

    The crossing keeps its sign, but its over/under information is switched
    and left/right exchanged: every port index at ``c`` flips.
    """
    (c,) = site.location
    (side,) = site.parameters
    step = 1 if side == "in" else -1
    edges = []
    for e in d.edges:
        bars = e.bars
        src_idx, dst_idx = e.source_index, e.target_index
        if e.target == c:
            bars -= step
            dst_idx = 1 - dst_idx
        if e.source == c:
            bars += step
            src_idx = 1 - src_idx
        edges.append(DiagramEdge(e.source, src_idx, e.target, dst_idx, bars))
    return d.replace(edges=edges)


# -- dispatch -------------------------------------------------------------

_ENUMERATORS = {
    "R1+": _r1_plus_sites,
    "R1-": _r1_minus_sites,
    "R2+": _r2_plus_sites,
    "R2-": _r2_minus_sites,
    "R3": _r3_sites,
    "T3": _t3_sites,
}


def enumerate_sites(d: TwistedDiagram, kind: str | None = None) -> list[MoveSite]:
    """All sites of ``kind`` in ``d`` (every kind when ``kind`` is None)."""
    if kind is None:
        return [s for k in KINDS for s in _ENUMERATORS[k](d)]
    try:
        return _ENUMERATORS[kind](d)
    except KeyError:
        raise ValueError(f"unknown move kind {kind!r}") from None


def apply(d: TwistedDiagram, site: MoveSite) -> TwistedDiagram:
    """Rewrite ``d`` at ``site``; raises InvalidSiteError if it does not match."""
    if site.kind in ("R1+", "R2+"):
        try:
            if site.kind == "R1+":
                return _apply_r1_plus(d, site)
            return _apply_r2_plus(d, site)
        except KeyError as exc:
            raise InvalidSiteError(f"{site} does not match the diagram: {exc}") from None
    if site not in _ENUMERATORS.get(site.kind, lambda _: [])(d):
        raise InvalidSiteError(f"{site} does not match the diagram")
    if site.kind == "R1-":
        return delete_crossings(d, {site.location[0]})
    if site.kind == "R2-":
        return delete_crossings(d, set(site.location))
    if site.kind == "R3":
        return _apply_r3(d, site)
    return _apply_t3(d, site)


def random_walk(
    d: TwistedDiagram,
    steps: int,
    seed: int | None = None,
    kinds: tuple[str, ...] = KINDS,
    max_crossings: int | None = None,
    keep_components: bool = True,
    trace: list[MoveSite] | None = None,
) -> TwistedDiagram:
    """Apply ``steps`` random moves.

    Each step picks a move kind uniformly among those with an applicable
    site, then a site of that kind uniformly.  Creation moves are skipped
    once the diagram has ``max_crossings`` crossings (default: start + 6).
    With ``keep_components`` the walk never turns a component into a
    crossing-free loop, which the determinant formula cannot see.
    Applied sites are appended to ``trace`` when it is given.
    """
    rng = random.Random(seed)
    cap = max_crossings if max_crossings is not None else len(d) + 6
    for _ in range(steps):
        options = {}
        for kind in kinds:
            if kind in ("R1+", "R2+") and len(d) + (1 if kind == "R1+" else 2) > cap:
                continue
            sites = enumerate_sites(d, kind)
            if keep_components and kind in ("R1-", "R2-"):
                sites = [s for s in sites if not _frees_a_loop(d, s)]
            if sites:
                options[kind] = sites
        if not options:
            break
        kind = rng.choice(sorted(options))
        site = rng.choice(options[kind])
        if trace is not None:
            trace.append(site)
        d = apply(d, site)
    return d


def _frees_a_loop(d: TwistedDiagram, site: MoveSite) -> bool:
    return len(apply(d, site).free_loops) > len(d.free_loops)
