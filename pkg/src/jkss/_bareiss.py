"""Pure-Python fraction-free elimination over Z[x, y].

Polynomials here are plain dicts ``{(a, b): c}`` with ``a, b >= 0`` and no
zero coefficients.  The compiled kernel in ``_bareiss_ext`` implements the
same contract; ``jkss._kernel`` picks one at import time.
"""
from __future__ import annotations

import heapq

Poly = dict[tuple[int, int], int]


def poly_mul(p: Poly, q: Poly) -> Poly:
    if not p or not q:
        return {}
    if len(p) < len(q):
        p, q = q, p
    out: Poly = {}
    get = out.get
    for (a1, b1), c1 in q.items():
        for (a2, b2), c2 in p.items():
            key = (a1 + a2, b1 + b2)
            out[key] = get(key, 0) + c1 * c2
    return {k: c for k, c in out.items() if c}


def poly_sub(p: Poly, q: Poly) -> Poly:
    out = dict(p)
    for key, c in q.items():
        v = out.get(key, 0) - c
        if v:
            out[key] = v
        else:
            out.pop(key, None)
    return out


def poly_exact_div(p: Poly, q: Poly) -> Poly:
    """Quotient of ``p`` by ``q``; raises ArithmeticError unless ``q`` divides ``p``.

    Division by leading terms in lex order (x before y).  Every term generated
    while reducing is lex-smaller than the current leading term, so a max-heap
    of candidate exponents suffices.
    """
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    if len(q) == 1:
        ((qa, qb), qc), = q.items()
        out = {}
        for (a, b), c in p.items():
            quo, rem = divmod(c, qc)
            if rem or a < qa or b < qb:
                raise ArithmeticError("inexact division in fraction-free elimination")
            out[(a - qa, b - qb)] = quo
        return out
    rem = dict(p)
    lq = max(q)
    lc = q[lq]
    tail = [(k, c) for k, c in q.items() if k != lq]
    heap = [(-a, -b) for a, b in rem]
    heapq.heapify(heap)
    quotient: Poly = {}
    while rem:
        na, nb = heapq.heappop(heap)
        lead = (-na, -nb)
        c = rem.get(lead)
        if c is None:
            continue
        qc, r = divmod(c, lc)
        da, db = lead[0] - lq[0], lead[1] - lq[1]
        if r or da < 0 or db < 0:
            raise ArithmeticError("inexact division in fraction-free elimination")
        quotient[(da, db)] = qc
        del rem[lead]
        for (a, b), d in tail:
            key = (a + da, b + db)
            old = rem.get(key)
            if old is None:
                rem[key] = -qc * d
                heapq.heappush(heap, (-key[0], -key[1]))
            else:
                v = old - qc * d
                if v:
                    rem[key] = v
                else:
                    del rem[key]
    return quotient


def bareiss_det(rows: list[list[Poly]]) -> Poly:
    """Determinant of a square matrix over Z[x, y] by Bareiss elimination.

    ``rows`` is consumed (rows are reordered and overwritten).
    """
    n = len(rows)
    if n == 0:
        return {(0, 0): 1}
    a = rows
    prev: Poly = {(0, 0): 1}
    sign = 1
    for k in range(n - 1):
        # sparsest nonzero pivot keeps intermediate minors small
        best = -1
        best_len = 0
        for i in range(k, n):
            entry = a[i][k]
            if entry and (best < 0 or len(entry) < best_len):
                best, best_len = i, len(entry)
        if best < 0:
            return {}
        if best != k:
            a[k], a[best] = a[best], a[k]
            sign = -sign
        pivot_row = a[k]
        pivot = pivot_row[k]
        unit_prev = prev == {(0, 0): 1}
        for i in range(k + 1, n):
            row = a[i]
            factor = row[k]
            for j in range(k + 1, n):
                t = poly_mul(pivot, row[j])
                if factor and pivot_row[j]:
                    t = poly_sub(t, poly_mul(factor, pivot_row[j]))
                if t and not unit_prev:
                    t = poly_exact_div(t, prev)
                row[j] = t
            row[k] = {}
        prev = pivot
    det = a[n - 1][n - 1]
    if sign < 0:
        det = {key: -c for key, c in det.items()}
    return det
