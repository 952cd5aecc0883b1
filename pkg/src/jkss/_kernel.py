"""Backend selection for the determinant kernel.

The compiled ``_bareiss_ext`` module is used when it was built; otherwise,
or when ``JKSS_PURE_PYTHON=1`` is set, the pure-Python ``_bareiss`` runs.
Both implement ``bareiss_det(rows) -> dict``.  The compiled kernel works in
int64 and raises OverflowError when a coefficient would leave that range, in
which case the computation is redone in Python.
"""
from __future__ import annotations

import logging
import os

from . import _bareiss
from .laurent import LaurentPoly, ONE, PolyMatrix, ZERO

log = logging.getLogger(__name__)

try:
    if os.environ.get("JKSS_PURE_PYTHON", "") not in ("", "0"):
        raise ImportError("pure-Python backend requested")
    from . import _bareiss_ext as _compiled
except ImportError:
    _compiled = None

BACKEND = "cython" if _compiled is not None else "python"


def clear_rows(m: PolyMatrix) -> tuple[list[list[dict]], int, int] | None:
    """Shift each row by a monomial so every exponent is nonnegative.

    Returns the shifted rows as dicts and the total (x, y) exponent that was
    divided out, or None if some row is identically zero.
    """
    rows = []
    total_a = total_b = 0
    for row in m.rows():
        nonzero = [p for p in row if p]
        if not nonzero:
            return None
        a = min(p.min_x_degree() for p in nonzero)
        b = min(p.min_y_degree() for p in nonzero)
        total_a += a
        total_b += b
        rows.append([
            {(i - a, j - b): c for (i, j), c in p.terms.items()} if p else {}
            for p in row
        ])
    return rows, total_a, total_b


def bareiss_det(rows: list[list[dict]], backend: str | None = None) -> dict:
    backend = backend or BACKEND
    if backend == "cython":
        if _compiled is None:
            raise RuntimeError("compiled kernel is not available")
        try:
            return _compiled.bareiss_det(rows)
        except OverflowError:
            log.debug("int64 overflow in compiled kernel; retrying in Python")
    return _bareiss.bareiss_det([list(r) for r in rows])


def polynomial_determinant(m: PolyMatrix, backend: str | None = None) -> LaurentPoly:
    if m.size == 0:
        return ONE
    cleared = clear_rows(m)
    if cleared is None:
        return ZERO
    rows, a, b = cleared
    det = bareiss_det(rows, backend)
    return LaurentPoly(det).shift(a, b)
