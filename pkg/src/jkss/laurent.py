"""Exact arithmetic in Z[x, x^-1, y, y^-1] and determinants over that ring.

Polynomials are immutable and hashable.  Terms live in a dict keyed by the
exponent pair ``(a, b)`` of ``x^a y^b``; zero coefficients are never stored.
"""
from __future__ import annotations

import re
from typing import Iterable, Iterator, Mapping, Sequence, Union

__all__ = [
    "LaurentPoly",
    "PolyMatrix",
    "PolySyntaxError",
    "ZERO",
    "ONE",
    "X",
    "Y",
    "add",
    "mul",
    "determinant",
    "normalize_x",
    "equal_up_to_x_power",
    "parse_poly",
    "render_poly",
]

Exponent = tuple[int, int]
Coercible = Union["LaurentPoly", int]


class LaurentPoly:
    """A Laurent polynomial in ``x`` and ``y`` with integer coefficients."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Exponent, int] | Iterable[tuple[Exponent, int]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: dict[Exponent, int] = {}
        for (a, b), c in items:
            key = (int(a), int(b))
            c = clean.get(key, 0) + int(c)
            if c:
                clean[key] = c
            else:
                clean.pop(key, None)
        self._terms = clean
        self._hash: int | None = None

    @classmethod
    def _wrap(cls, terms: dict[Exponent, int]) -> "LaurentPoly":
        # caller guarantees: no zero coefficients
        p = object.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def monomial(cls, a: int = 0, b: int = 0, coeff: int = 1) -> "LaurentPoly":
        return cls._wrap({(a, b): coeff} if coeff else {})

    @classmethod
    def constant(cls, c: int) -> "LaurentPoly":
        return cls.monomial(0, 0, c)

    @classmethod
    def coerce(cls, value: Coercible) -> "LaurentPoly":
        if isinstance(value, LaurentPoly):
            return value
        if isinstance(value, int):
            return cls.constant(value)
        raise TypeError(f"cannot convert {type(value).__name__} to LaurentPoly")

    # -- inspection -----------------------------------------------------

    @property
    def terms(self) -> Mapping[Exponent, int]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[Exponent, int]]:
        """Terms in canonical order: ascending x-exponent, then y-exponent."""
        for key in sorted(self._terms):
            yield key, self._terms[key]

    def coeff(self, a: int, b: int) -> int:
        return self._terms.get((a, b), 0)

    def is_zero(self) -> bool:
        return not self._terms

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def min_x_degree(self) -> int:
        if not self._terms:
            raise ValueError("zero polynomial has no degree")
        return min(a for a, _ in self._terms)

    def min_y_degree(self) -> int:
        if not self._terms:
            raise ValueError("zero polynomial has no degree")
        return min(b for _, b in self._terms)

    def max_x_degree(self) -> int:
        if not self._terms:
            raise ValueError("zero polynomial has no degree")
        return max(a for a, _ in self._terms)

    def max_y_degree(self) -> int:
        if not self._terms:
            raise ValueError("zero polynomial has no degree")
        return max(b for _, b in self._terms)

    def l1_norm(self) -> int:
        return sum(abs(c) for c in self._terms.values())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    # -- arithmetic -----------------------------------------------------

    def __add__(self, other: Coercible) -> "LaurentPoly":
        try:
            other = LaurentPoly.coerce(other)
        except TypeError:
            return NotImplemented
        if len(other._terms) > len(self._terms):
            big, small = other._terms, self._terms
        else:
            big, small = self._terms, other._terms
        out = dict(big)
        for key, c in small.items():
            c += out.get(key, 0)
            if c:
                out[key] = c
            else:
                del out[key]
        return LaurentPoly._wrap(out)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly._wrap({k: -c for k, c in self._terms.items()})

    def __sub__(self, other: Coercible) -> "LaurentPoly":
        try:
            other = LaurentPoly.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Coercible) -> "LaurentPoly":
        try:
            other = LaurentPoly.coerce(other)
        except TypeError:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other: Coercible) -> "LaurentPoly":
        try:
            other = LaurentPoly.coerce(other)
        except TypeError:
            return NotImplemented
        out: dict[Exponent, int] = {}
        get = out.get
        for (a1, b1), c1 in self._terms.items():
            for (a2, b2), c2 in other._terms.items():
                key = (a1 + a2, b1 + b2)
                out[key] = get(key, 0) + c1 * c2
        return LaurentPoly._wrap({k: c for k, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            if not self.is_monomial():
                raise ValueError("only monomials have negative powers")
            ((a, b), c), = self._terms.items()
            if c not in (1, -1):
                raise ValueError("monomial is not a unit")
            return LaurentPoly.monomial(a * n, b * n, c ** (-n))
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, a: int, b: int = 0) -> "LaurentPoly":
        """Multiply by the monomial ``x^a y^b``."""
        return LaurentPoly._wrap({(p + a, q + b): c for (p, q), c in self._terms.items()})

    def substitute_inverse(self) -> "LaurentPoly":
        """The image under x -> 1/x, y -> 1/y."""
        return LaurentPoly._wrap({(-a, -b): c for (a, b), c in self._terms.items()})

    # -- comparison -----------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = LaurentPoly.constant(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self) -> str:
        return f"LaurentPoly({render_poly(self)!r})"

    def __str__(self) -> str:
        return render_poly(self)


ZERO = LaurentPoly()
ONE = LaurentPoly.constant(1)
X = LaurentPoly.monomial(1, 0)
Y = LaurentPoly.monomial(0, 1)


def add(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    return p + q


def mul(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    return p * q


def normalize_x(p: LaurentPoly) -> LaurentPoly:
    """Canonical representative of ``p`` modulo multiplication by powers of x.

    The result has minimal x-exponent 0; the zero polynomial maps to itself.
    """
    if p.is_zero():
        return p
    return p.shift(-p.min_x_degree(), 0)


def equal_up_to_x_power(p: LaurentPoly, q: LaurentPoly) -> bool:
    return normalize_x(p) == normalize_x(q)


# -- text format ----------------------------------------------------------


class PolySyntaxError(ValueError):
    """Malformed polynomial text; ``position`` is the 0-based offset."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


_TERM = re.compile(r"(-?\d+)\*x\^(-?\d+)\*y\^(-?\d+)")
_SEP = " + "


def parse_poly(text: str) -> LaurentPoly:
    """Parse ``0`` or ``c*x^a*y^b`` terms joined by ``' + '``.

    Term order is not enforced on input; repeated exponents are summed.
    """
    if text == "0":
        return ZERO
    terms: dict[Exponent, int] = {}
    pos = 0
    n = len(text)
    if n == 0:
        raise PolySyntaxError("empty input", 0)
    while True:
        m = _TERM.match(text, pos)
        if m is None:
            raise PolySyntaxError("expected term '<coeff>*x^<a>*y^<b>'", pos)
        c, a, b = (int(g) for g in m.groups())
        if c == 0:
            raise PolySyntaxError("zero coefficient", m.start(1))
        key = (a, b)
        terms[key] = terms.get(key, 0) + c
        pos = m.end()
        if pos == n:
            break
        if not text.startswith(_SEP, pos):
            raise PolySyntaxError("expected ' + ' between terms", pos)
        pos += len(_SEP)
    return LaurentPoly(terms)


def render_poly(p: LaurentPoly) -> str:
    if p.is_zero():
        return "0"
    return _SEP.join(f"{c}*x^{a}*y^{b}" for (a, b), c in p.items())


# -- matrices -------------------------------------------------------------


class PolyMatrix:
    """Square matrix of Laurent polynomials; every entry is present."""

    __slots__ = ("_rows",)

    def __init__(self, rows: Sequence[Sequence[Coercible]]):
        n = len(rows)
        built = []
        for i, row in enumerate(rows):
            if len(row) != n:
                raise ValueError(f"row {i} has length {len(row)}, expected {n}")
            built.append(tuple(LaurentPoly.coerce(e) for e in row))
        self._rows = tuple(built)

    @classmethod
    def zeros(cls, n: int) -> "PolyMatrix":
        return cls([[ZERO] * n for _ in range(n)])

    @classmethod
    def identity(cls, n: int) -> "PolyMatrix":
        return cls([[ONE if i == j else ZERO for j in range(n)] for i in range(n)])

    @classmethod
    def from_entries(cls, n: int, entries: Mapping[tuple[int, int], Coercible]) -> "PolyMatrix":
        """Build an n-by-n matrix from a sparse ``{(row, col): value}`` map (0-based)."""
        rows = [[ZERO] * n for _ in range(n)]
        for (i, j), v in entries.items():
            rows[i][j] = rows[i][j] + LaurentPoly.coerce(v)
        return cls(rows)

    @property
    def size(self) -> int:
        return len(self._rows)

    def rows(self) -> tuple[tuple[LaurentPoly, ...], ...]:
        return self._rows

    def __getitem__(self, ij: tuple[int, int]) -> LaurentPoly:
        i, j = ij
        return self._rows[i][j]

    def __add__(self, other: "PolyMatrix") -> "PolyMatrix":
        self._check_same_size(other)
        return PolyMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self._rows, other._rows)])

    def __sub__(self, other: "PolyMatrix") -> "PolyMatrix":
        self._check_same_size(other)
        return PolyMatrix([[a - b for a, b in zip(r, s)] for r, s in zip(self._rows, other._rows)])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return self._rows == other._rows

    def __hash__(self) -> int:
        return hash(self._rows)

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix([list(col) for col in zip(*self._rows)]) if self._rows else self

    def permute(self, row_perm: Sequence[int], col_perm: Sequence[int]) -> "PolyMatrix":
        """Entry (i, j) of the result is entry (row_perm[i], col_perm[j]) of self."""
        return PolyMatrix([[self._rows[r][c] for c in col_perm] for r in row_perm])

    def row_sums_are_one(self) -> bool:
        """True when every row and column sums to the constant 1."""
        n = self.size
        for i in range(n):
            if sum(self._rows[i], ZERO) != ONE:
                return False
        for j in range(n):
            if sum((self._rows[i][j] for i in range(n)), ZERO) != ONE:
                return False
        return True

    def _check_same_size(self, other: "PolyMatrix") -> None:
        if self.size != other.size:
            raise ValueError(f"size mismatch: {self.size} vs {other.size}")

    def __repr__(self) -> str:
        return f"PolyMatrix(size={self.size})"


def determinant(m: PolyMatrix) -> LaurentPoly:
    """Exact determinant over Z[x^+-1, y^+-1].

    Each row is first multiplied by a monomial that clears its negative
    exponents; the resulting matrix over Z[x, y] goes through fraction-free
    elimination and the accumulated monomial is divided back out.
    """
    from ._kernel import polynomial_determinant

    return polynomial_determinant(m)
