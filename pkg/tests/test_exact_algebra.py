"""Exact linear algebra and sparse polynomials, checked against sympy
and against their own ring axioms.
"""

import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from splinedim.errors import NonSquare, SizeGuard
from splinedim.exact_algebra import (
    DET_POLY_MAX,
    MultiPoly,
    Quadratic,
    all_distinct,
    det,
    det_poly,
    divides,
    expand_label,
    format_rational,
    kernel_basis,
    rank,
    rational,
    vandermonde_rows,
)

# ---------------------------------------------------------------------------
# rational / format_rational


def test_rational_accepts_ints_strings_fractions():
    assert rational(3) == Fraction(3)
    assert rational("2/3") == Fraction(2, 3)
    assert rational("-7") == Fraction(-7)
    assert rational(Fraction(5, 4)) == Fraction(5, 4)


def test_rational_rejects_floats():
    with pytest.raises(TypeError):
        rational(0.5)


def test_format_round_trip():
    for s in ("0", "3", "-2/7", "100000000000/3"):
        assert format_rational(rational(s)) == s


# ---------------------------------------------------------------------------
# rank / det / kernel against sympy

def _random_matrix(rng, nrows, ncols, lowrank=False):
    if lowrank and nrows > 1:
        base = [
            [Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(ncols)]
            for _ in range(max(1, nrows - 2))
        ]
        rows = list(base)
        while len(rows) < nrows:
            coeffs = [Fraction(rng.randint(-3, 3)) for _ in base]
            rows.append(
                [sum(c * r[j] for c, r in zip(coeffs, base)) for j in range(ncols)]
            )
        rng.shuffle(rows)
        return rows
    return [
        [Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(ncols)]
        for _ in range(nrows)
    ]


def test_rank_matches_sympy():
    rng = random.Random(11)
    for trial in range(30):
        nrows = rng.randint(1, 6)
        ncols = rng.randint(1, 6)
        m = _random_matrix(rng, nrows, ncols, lowrank=trial % 2 == 0)
        expected = sympy.Matrix(m).rank()
        assert rank(m) == expected


def test_det_matches_sympy():
    rng = random.Random(12)
    for _ in range(30):
        n = rng.randint(1, 5)
        m = _random_matrix(rng, n, n)
        expected = Fraction(sympy.Rational(sympy.Matrix(m).det()))
        assert det(m) == expected


def test_det_rejects_nonsquare():
    with pytest.raises(NonSquare):
        det([[1, 2, 3], [4, 5, 6]])


def test_kernel_annihilates_and_spans():
    rng = random.Random(13)
    for trial in range(25):
        nrows = rng.randint(1, 5)
        ncols = rng.randint(1, 6)
        m = _random_matrix(rng, nrows, ncols, lowrank=trial % 3 == 0)
        basis = kernel_basis(m)
        assert len(basis) == ncols - rank(m)
        for vec in basis:
            for row in m:
                assert sum(a * x for a, x in zip(row, vec)) == 0
        if basis:
            assert rank(basis) == len(basis)


def test_rank_invariant_under_row_and_column_shuffles():
    # elimination must not depend on pivot encounter order
    rng = random.Random(14)
    for _ in range(20):
        m = _random_matrix(rng, rng.randint(2, 5), rng.randint(2, 5), lowrank=True)
        r = rank(m)
        rows = list(m)
        rng.shuffle(rows)
        cols = list(range(len(m[0])))
        rng.shuffle(cols)
        shuffled = [[row[c] for c in cols] for row in rows]
        assert rank(shuffled) == r


# ---------------------------------------------------------------------------
# MultiPoly ring behavior

_small_fraction = st.fractions(
    min_value=-4, max_value=4, max_denominator=3
)


def _poly_strategy(nvars=3, max_terms=4, max_exp=2):
    term = st.tuples(
        st.tuples(*[st.integers(min_value=0, max_value=max_exp)] * nvars),
        _small_fraction,
    )
    return st.lists(term, max_size=max_terms).map(
        lambda items: MultiPoly(
            nvars, {expo: coeff for expo, coeff in items if coeff}
        )
    )


@given(_poly_strategy(), _poly_strategy(), _poly_strategy())
@settings(max_examples=60, deadline=None)
def test_multipoly_distributivity(p, q, r):
    left = p * (q + r)
    right = p * q + p * r
    assert left.equals(right)


@given(_poly_strategy(), _poly_strategy())
@settings(max_examples=60, deadline=None)
def test_multipoly_commutativity(p, q):
    assert (p * q).equals(q * p)
    assert (p + q).equals(q + p)


@given(_poly_strategy(), _poly_strategy())
@settings(max_examples=60, deadline=None)
def test_multipoly_evaluation_is_a_homomorphism(p, q):
    point = {0: Fraction(2), 1: Fraction(-1, 2), 2: Fraction(3)}
    assert (p * q).evaluate(point) == p.evaluate(point) * q.evaluate(point)
    assert (p + q).evaluate(point) == p.evaluate(point) + q.evaluate(point)


def test_multipoly_display_and_sorting():
    x0 = MultiPoly.variable(2, 0)
    x1 = MultiPoly.variable(2, 1)
    p = x0 * x0 * x1 - x0 * (x1 * x1)
    assert p.display(["a1", "a2"]) == "+1*a1^2*a2 -1*a1*a2^2"
    assert MultiPoly.zero(2).display() == "0"


def test_substitute_variables_renames():
    p = MultiPoly.variable(2, 0) - MultiPoly.variable(2, 1)
    q = p.substitute_variables([3, 1], 5)
    point = {1: Fraction(7), 3: Fraction(10)}
    assert q.evaluate(point) == 3


# ---------------------------------------------------------------------------
# det_poly against sympy on symbolic matrices


def test_det_poly_matches_sympy():
    rng = random.Random(15)
    syms = sympy.symbols("t0 t1 t2")
    for _ in range(10):
        n = rng.randint(1, 4)
        rows_mine = []
        rows_sympy = []
        for _r in range(n):
            row_m, row_s = [], []
            for _c in range(n):
                choice = rng.randint(0, 3)
                if choice == 3:
                    c = Fraction(rng.randint(-3, 3))
                    row_m.append(MultiPoly.const(3, c))
                    row_s.append(sympy.Rational(c.numerator, c.denominator))
                else:
                    row_m.append(MultiPoly.variable(3, choice))
                    row_s.append(syms[choice])
            rows_mine.append(row_m)
            rows_sympy.append(row_s)
        mine = det_poly(rows_mine)
        ref = sympy.expand(sympy.Matrix(rows_sympy).det())
        point = {0: Fraction(2), 1: Fraction(3), 2: Fraction(5)}
        ref_val = ref.subs({syms[i]: point[i] for i in range(3)})
        assert mine.evaluate(point) == Fraction(sympy.Rational(ref_val))


def test_det_poly_size_guard():
    n = DET_POLY_MAX + 1
    rows = [[MultiPoly.const(1, 1)] * n for _ in range(n)]
    with pytest.raises(SizeGuard):
        det_poly(rows)


# ---------------------------------------------------------------------------
# Quadratic and divisibility


def test_expand_label_matches_sympy():
    x, y = sympy.symbols("x y")
    for a, b in ((Fraction(2), Fraction(-1)), (Fraction(-1, 3), Fraction(2, 5))):
        q = expand_label(type("L", (), {"a": a, "b": b})())
        ref = sympy.expand((x + sympy.Rational(a.numerator, a.denominator) * y
                            + sympy.Rational(b.numerator, b.denominator)) ** 2)
        mine = (
            sympy.Rational(str(q.c_xx)) * x ** 2
            + sympy.Rational(str(q.c_xy)) * x * y
            + sympy.Rational(str(q.c_yy)) * y ** 2
            + sympy.Rational(str(q.c_x)) * x
            + sympy.Rational(str(q.c_y)) * y
            + sympy.Rational(str(q.c1))
        )
        assert sympy.simplify(mine - ref) == 0


def test_divides_difference_of_squares():
    # (x+y)^2 - (x-y)^2 = 4xy
    p = Quadratic.of(0, 4, 0)
    g = Quadratic.of(0, 1, 0)
    ok, cof = divides(g, p)
    assert ok
    assert cof.equals(MultiPoly.const(2, 4))


def test_divides_spline_edge_case():
    # x^2+y^2 minus x^2 leaves y^2, divisible by y^2 with cofactor 1
    diff = Quadratic.of(1, 0, 1) - Quadratic.of(1)
    g = Quadratic.of(0, 0, 1)
    ok, cof = divides(g, diff)
    assert ok
    assert cof.equals(MultiPoly.const(2, 1))


def test_divides_negative_case():
    ok, cof = divides(Quadratic.of(0, 0, 1), Quadratic.of(1))
    assert not ok and cof is None


def test_vandermonde_and_distinct():
    rows = vandermonde_rows([1, 2, 4])
    assert rows == ((1, 1, 1), (1, 2, 4), (1, 4, 16))
    assert det(rows) == (2 - 1) * (4 - 1) * (4 - 2)
    assert all_distinct([1, 2, 3]) and not all_distinct([1, 2, 1])
