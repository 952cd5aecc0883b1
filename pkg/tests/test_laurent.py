import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from jkss import _kernel
from jkss.laurent import (
    LaurentPoly,
    ONE,
    PolyMatrix,
    PolySyntaxError,
    X,
    Y,
    ZERO,
    determinant,
    equal_up_to_x_power,
    normalize_x,
    parse_poly,
    render_poly,
)

from conftest import leibniz_det, random_matrix

XI, YI = X ** -1, Y ** -1

exponents = st.tuples(st.integers(-4, 4), st.integers(-4, 4))
polys = st.dictionaries(exponents, st.integers(-20, 20), max_size=6).map(LaurentPoly)


def fig6b_value():
    return YI ** 2 * (X ** 2 - 1) * (Y ** 2 - 1) * (X ** 2 - Y ** 2)


class TestArithmetic:
    def test_cancellation(self):
        assert (X - 1) + 1 == X

    def test_zero_is_additive_identity(self):
        p = X * YI + 3
        assert ZERO + p == p

    def test_doubling(self):
        assert X * YI + X * YI == LaurentPoly.monomial(1, -1, 2)

    def test_monomial_shift(self):
        assert (X - 1) * XI == 1 - XI

    def test_zero_absorbs(self):
        assert (X + Y) * ZERO == ZERO

    def test_figure5_product(self):
        p = (X - 1) * (Y + 1) * (X + Y) * YI
        # hand expansion: x^2 + x^2/y - x/y + xy - y - 1
        assert p.terms == {(2, 0): 1, (2, -1): 1, (1, -1): -1, (1, 1): 1, (0, 1): -1, (0, 0): -1}

    def test_no_zero_coefficients_stored(self):
        p = LaurentPoly({(1, 0): 2, (0, 0): 0}) + LaurentPoly({(1, 0): -2})
        assert p.is_zero() and p.terms == {}

    def test_inverse_power_of_non_monomial_rejected(self):
        with pytest.raises(ValueError):
            (X + 1) ** -1

    @settings(max_examples=60, deadline=None)
    @given(polys, polys, polys)
    def test_ring_axioms(self, p, q, r):
        assert p + q == q + p
        assert p * q == q * p
        assert (p + q) + r == p + (q + r)
        assert (p * q) * r == p * (q * r)
        assert p * (q + r) == p * q + p * r
        assert p - p == ZERO
        assert hash(p * ONE) == hash(p)

    @given(polys)
    def test_stored_terms_are_clean(self, p):
        assert all(c != 0 for c in p.terms.values())


class TestNormalize:
    def test_zero(self):
        assert normalize_x(ZERO) == ZERO

    def test_shift(self):
        assert normalize_x(X ** -2 * Y + X) == Y + X ** 3

    def test_figure5_already_normal(self):
        p = (X - 1) * (Y + 1) * (X + Y) * YI
        assert normalize_x(p) == p

    @given(polys, st.integers(-5, 5))
    def test_idempotent_and_shift_blind(self, p, k):
        n = normalize_x(p)
        assert normalize_x(n) == n
        assert normalize_x(p * X ** k) == n
        assert equal_up_to_x_power(p, p.shift(k, 0))

    def test_equal_up_to_x_power(self):
        assert equal_up_to_x_power(ZERO, ZERO)
        assert not equal_up_to_x_power(fig6b_value(), ZERO)
        assert not equal_up_to_x_power(X + Y, X + Y ** 2)


class TestText:
    def test_zero(self):
        assert parse_poly("0") == ZERO
        assert render_poly(ZERO) == "0"

    def test_two_terms(self):
        assert parse_poly("1*x^0*y^-1 + 1*x^1*y^0") == YI + X
        assert render_poly(YI + X) == "1*x^0*y^-1 + 1*x^1*y^0"

    def test_figure6b_render(self):
        assert render_poly(fig6b_value()) == (
            "-1*x^0*y^0 + 1*x^0*y^2 + 1*x^2*y^-2 + -1*x^2*y^2 + -1*x^4*y^-2 + 1*x^4*y^0"
        )

    def test_any_term_order_accepted(self):
        assert parse_poly("1*x^1*y^0 + 1*x^0*y^-1") == X + YI

    @pytest.mark.parametrize(
        "text, position",
        [
            ("", 0),
            ("x", 0),
            ("1*x^0*y^0 +", 9),
            ("1*x^0*y^0+1*x^1*y^0", 9),
            ("0*x^1*y^0", 0),
            ("1*x^0*y^0 + 2*y^1", 12),
        ],
    )
    def test_errors_report_position(self, text, position):
        with pytest.raises(PolySyntaxError) as info:
            parse_poly(text)
        assert info.value.position == position

    @given(polys)
    def test_round_trip(self, p):
        assert parse_poly(render_poly(p)) == p


class TestDeterminant:
    def test_empty(self):
        assert determinant(PolyMatrix([])) == ONE

    def test_identity(self):
        assert determinant(PolyMatrix.identity(2)) == ONE

    def test_inverse_pairs_cancel(self):
        assert determinant(PolyMatrix([[X, Y], [YI, XI]])) == ZERO

    def test_monomial_5x5_against_oracle(self):
        rng = random.Random(11)
        for _ in range(20):
            rows = [
                [LaurentPoly.monomial(rng.randint(-2, 2), rng.randint(-2, 2), rng.randint(-3, 3))
                 for _ in range(5)]
                for _ in range(5)
            ]
            m = PolyMatrix(rows)
            assert determinant(m) == leibniz_det(m)

    def test_row_swap_negates_and_repeat_vanishes(self):
        rng = random.Random(12)
        for _ in range(20):
            m = random_matrix(rng, 4)
            swapped = m.permute([1, 0, 2, 3], range(4))
            assert determinant(swapped) == -determinant(m)
            repeated = m.permute([0, 0, 2, 3], range(4))
            assert determinant(repeated) == ZERO

    def test_transpose(self):
        rng = random.Random(13)
        for _ in range(20):
            m = random_matrix(rng, 4)
            assert determinant(m.transpose()) == determinant(m)

    def test_large_coefficients_stay_exact(self):
        big = 10 ** 12
        m = PolyMatrix([[big * X + 1, big], [big, big * YI - 3]])
        expected = (big * X + 1) * (big * YI - 3) - big * big
        assert determinant(m) == expected

    @pytest.mark.skipif(_kernel.BACKEND != "cython", reason="compiled kernel not built")
    def test_backends_agree(self):
        rng = random.Random(14)
        for n in range(0, 9):
            m = random_matrix(rng, n, density=0.4)
            assert (
                _kernel.polynomial_determinant(m, "cython")
                == _kernel.polynomial_determinant(m, "python")
            )

    @pytest.mark.skipif(_kernel.BACKEND != "cython", reason="compiled kernel not built")
    def test_overflow_falls_back(self):
        big = 2 ** 40
        m = PolyMatrix([[big * X, big], [big, big * Y]])
        assert _kernel.polynomial_determinant(m, "cython") == big * big * (X * Y - 1)


class TestMatrix:
    def test_row_sums(self):
        assert PolyMatrix.identity(3).row_sums_are_one()
        assert not PolyMatrix.zeros(2).row_sums_are_one()

    def test_ragged_rejected(self):
        with pytest.raises(ValueError):
            PolyMatrix([[ONE, ZERO], [ONE]])


def test_pure_python_switch():
    import os
    import subprocess
    import sys

    env = dict(os.environ, JKSS_PURE_PYTHON="1")
    out = subprocess.run(
        [sys.executable, "-c", "from jkss import _kernel; print(_kernel.BACKEND)"],
        env=env, capture_output=True, text=True, check=True,
    ).stdout
    assert out.strip() == "python"
