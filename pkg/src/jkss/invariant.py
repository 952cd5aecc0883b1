"""The JKSS invariant of virtual links and the twisted JKSS invariant.

Rows of every matrix are indexed by in-ports and columns by out-ports, with
crossings taken in ascending identifier order.  For the virtual invariant
crossing ``c`` of rank ``r`` owns rows/columns ``2r, 2r+1``; for the twisted
one it owns ``4r .. 4r+3``, the last two describing the second sheet of the
double cover.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field

from .diagram import CrossingSign, DiagramError, TwistedDiagram, is_virtual, writhe
from .laurent import (
    LaurentPoly,
    ONE,
    PolyMatrix,
    X,
    Y,
    ZERO,
    determinant,
    equal_up_to_x_power,
    normalize_x,
)

__all__ = [
    "InvariantValue",
    "BarredDiagramError",
    "FreeLoopWarning",
    "M_PLUS",
    "M_MINUS",
    "build_M",
    "build_P",
    "build_Mtilde",
    "build_Ptilde",
    "jkss",
    "twisted_jkss",
]

_XI = X ** -1
_YI = Y ** -1

M_PLUS = ((ONE - X, -Y), (-(X * _YI), ZERO))
M_MINUS = ((ZERO, -(_XI * Y)), (-_YI, ONE - _XI))


class BarredDiagramError(DiagramError):
    pass


class FreeLoopWarning(UserWarning):
    """A crossing-free component was ignored by an invariant computation."""


@dataclass(frozen=True)
class InvariantValue:
    raw: LaurentPoly
    canonical: LaurentPoly = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "canonical", normalize_x(self.raw))

    def equivalent(self, other: "InvariantValue") -> bool:
        return equal_up_to_x_power(self.raw, other.raw)


def _block(sign: CrossingSign):
    return M_PLUS if sign is CrossingSign.POSITIVE else M_MINUS


def _ranks(d: TwistedDiagram) -> dict[int, int]:
    return {c: r for r, c in enumerate(d.crossing_ids())}


def build_M(d: TwistedDiagram) -> PolyMatrix:
    entries = {}
    for r, c in enumerate(d.crossing_ids()):
        block = _block(d.sign(c))
        for a in range(2):
            for b in range(2):
                entries[(2 * r + a, 2 * r + b)] = block[a][b]
    return PolyMatrix.from_entries(2 * len(d), entries)


def build_P(d: TwistedDiagram) -> PolyMatrix:
    """Entry (2i+e, 2j+l) is 1 when an edge runs from j.out l to i.in e."""
    if not is_virtual(d):
        raise BarredDiagramError("diagram has bars; use twisted invariant")
    rank = _ranks(d)
    entries = {}
    for e in d.edges:
        entries[(2 * rank[e.target] + e.target_index, 2 * rank[e.source] + e.source_index)] = ONE
    return PolyMatrix.from_entries(2 * len(d), entries)


def build_Mtilde(d: TwistedDiagram) -> PolyMatrix:
    entries = {}
    for r, c in enumerate(d.crossing_ids()):
        block = _block(d.sign(c))
        for offset in (0, 2):
            for a in range(2):
                for b in range(2):
                    entries[(4 * r + offset + a, 4 * r + offset + b)] = block[a][b]
    return PolyMatrix.from_entries(4 * len(d), entries)


def build_Ptilde(d: TwistedDiagram) -> PolyMatrix:
    """Two entries per edge j.out l -> i.in e.

    Even bar parity keeps each sheet on itself: (i_e, j_l) and
    (i_{3-e}, j_{3-l}).  Odd parity swaps sheets: (i_e, j_{3-l}) and
    (i_{3-e}, j_l).  Here ``i_a`` is row ``4 rank(i) + a``.
    """
    rank = _ranks(d)
    entries = {}
    for e in d.edges:
        row = 4 * rank[e.target]
        col = 4 * rank[e.source]
        eps, lam = e.target_index, e.source_index
        if e.parity == 0:
            cells = ((row + eps, col + lam), (row + 3 - eps, col + 3 - lam))
        else:
            cells = ((row + eps, col + 3 - lam), (row + 3 - eps, col + lam))
        for cell in cells:
            entries[cell] = ONE
    return PolyMatrix.from_entries(4 * len(d), entries)


def _warn_free_loops(d: TwistedDiagram) -> None:
    if d.free_loops:
        warnings.warn(
            f"{len(d.free_loops)} crossing-free component(s) ignored by the invariant",
            FreeLoopWarning,
            stacklevel=3,
        )


def jkss(d: TwistedDiagram) -> InvariantValue:
    """Z_D = (-1)^w(D) det(M - P) for a diagram without (odd) bars."""
    p = build_P(d)
    _warn_free_loops(d)
    det = determinant(build_M(d) - p)
    return InvariantValue(-det if writhe(d) % 2 else det)


def twisted_jkss(d: TwistedDiagram) -> InvariantValue:
    """det(M~ - P~); no writhe sign, matching the twisted definition."""
    _warn_free_loops(d)
    return InvariantValue(determinant(build_Mtilde(d) - build_Ptilde(d)))
