"""Double covering diagrams of twisted link diagrams.

Crossing ``c`` of D lifts to ``2c-1`` (first sheet, a copy of c) and ``2c``
(second sheet, its image in s(D)), both with the sign of ``c``.  An edge
with an even number of bars lifts within each sheet; an odd number makes
both lifts change sheet.  The second sheet sees every port index flipped.
"""
from __future__ import annotations

from .diagram import (
    DiagramEdge,
    DiagramValidationError,
    EdgeRef,
    TwistedDiagram,
    connected_sum,
    is_virtual,
    mirror,
    validate,
)

__all__ = ["double_cover", "prop2_witness", "sheet_crossings"]


def sheet_crossings(crossing: int) -> tuple[int, int]:
    """Identifiers of the two lifts of ``crossing`` in the cover."""
    return 2 * crossing - 1, 2 * crossing


def double_cover(d: TwistedDiagram) -> TwistedDiagram:
    problems = validate(d)
    if problems:
        raise DiagramValidationError(problems)
    crossings = {}
    for c, s in d.crossings.items():
        first, second = sheet_crossings(c)
        crossings[first] = s
        crossings[second] = s
    edges = []
    for e in d.edges:
        j1, j2 = sheet_crossings(e.source)
        i1, i2 = sheet_crossings(e.target)
        lam, eps = e.source_index, e.target_index
        if e.parity == 0:
            edges.append(DiagramEdge(j1, lam, i1, eps))
            edges.append(DiagramEdge(j2, 1 - lam, i2, 1 - eps))
        else:
            edges.append(DiagramEdge(j1, lam, i2, 1 - eps))
            edges.append(DiagramEdge(j2, 1 - lam, i1, eps))
    loops = []
    for bars in d.free_loops:
        # an odd loop's two lifts join into one circle
        loops.extend((0, 0) if bars % 2 == 0 else (0,))
    return TwistedDiagram(crossings, edges, loops)


def prop2_witness(d0: TwistedDiagram, edge: EdgeRef) -> tuple[TwistedDiagram, TwistedDiagram]:
    """Cover of ``d0`` with one bar put on ``edge``, and the connected sum of
    ``d0`` with s(d0) along that edge and its mirror image.

    The two diagrams represent the same virtual link, so their JKSS
    invariants agree up to a power of x.
    """
    if not is_virtual(d0, strict=True):
        raise ValueError("d0 must be bar-free")
    problems = validate(d0)
    if problems:
        raise DiagramValidationError(problems)
    e = d0.edge(edge)
    barred = d0.replace(edges=[f.with_bars(1) if f == e else f for f in d0.edges])
    cover = double_cover(barred)
    mirrored = mirror(d0)
    csum = connected_sum(d0, e.ref, mirrored, (e.source, 1 - e.source_index))
    return cover, csum
