from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from filiform_lsa.exact_linalg import (
    LinalgError,
    Matrix,
    QuadraticNumber,
    SubspaceBasis,
    as_scalar,
    determinant,
    echelon_of,
    format_scalar,
    image_sparse,
    inverse,
    kernel_sparse,
    parse_scalar,
    quotient_sparse,
    rank,
    rref,
    solve,
)

fractions = st.fractions(min_value=-20, max_value=20, max_denominator=12)


def matrices(max_rows=5, max_cols=5):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(fractions, min_size=c, max_size=c), min_size=r, max_size=r)
        )
    )


def to_sp(rows):
    return sp.Matrix([[sp.Rational(x.numerator, x.denominator) for x in r] for r in rows])


@pytest.mark.parametrize("text,value", [
    ("3", Fraction(3)), ("-4/6", Fraction(-2, 3)), (" 7/1 ", Fraction(7)), ("0", Fraction(0)),
])
def test_parse_rational(text, value):
    assert parse_scalar(text) == value


@pytest.mark.parametrize("text", ["", "1.5", "1/0", "abc", "2//3", "sqrt(4)x"])
def test_parse_rejects(text):
    with pytest.raises(LinalgError):
        parse_scalar(text)


def test_floats_rejected():
    with pytest.raises(LinalgError):
        as_scalar(0.5)


def test_surd_roundtrip():
    x = parse_scalar("-1/2+3/5*sqrt(10)")
    assert isinstance(x, QuadraticNumber)
    assert (x.a, x.b, x.d) == (Fraction(-1, 2), Fraction(3, 5), 10)
    assert parse_scalar(format_scalar(x)) == x
    assert format_scalar(parse_scalar("-sqrt(3)")) == "-sqrt(3)"


def test_surd_arithmetic_collapses_to_rational():
    r = QuadraticNumber.sqrt(12)
    assert r == 2 * QuadraticNumber.sqrt(3)
    assert r * r == 12 and isinstance(r * r, Fraction)
    assert QuadraticNumber.sqrt(Fraction(9, 4)) == Fraction(3, 2)
    x = 1 + QuadraticNumber.sqrt(2)
    assert x * x.conjugate() == -1
    assert (x / x) == 1
    assert 1 / x == -1 + QuadraticNumber.sqrt(2)


def test_mixed_surds_error():
    with pytest.raises(LinalgError):
        QuadraticNumber.sqrt(2) + QuadraticNumber.sqrt(3)


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rank_matches_sympy(rows):
    assert rank(Matrix.from_dense(rows)) == to_sp(rows).rank()


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_kernel_and_image(rows):
    m = Matrix.from_dense(rows)
    ker = kernel_sparse(m)
    assert len(ker) + rank(m) == m.cols
    for v in ker:
        assert not m.apply_sparse(v)
    assert len(image_sparse(m)) == rank(m)


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rref_matches_sympy(rows):
    m = Matrix.from_dense(rows)
    got_rows, pivots = rref(m)
    want, want_piv = to_sp(rows).rref()
    assert tuple(pivots) == tuple(want_piv)
    for r, row in enumerate(got_rows):
        assert [row.get(c, 0) for c in range(m.cols)] == [Fraction(int(x.p), int(x.q)) for x in want.row(r)]


@settings(max_examples=60, deadline=None)
@given(matrices(4, 4), st.lists(fractions, min_size=4, max_size=4))
def test_solve(rows, rhs):
    m = Matrix.from_dense(rows)
    b = rhs[: m.rows]
    x = solve(m, b)
    consistent = to_sp(rows).rank() == to_sp([r + [c] for r, c in zip(rows, b)]).rank()
    assert (x is not None) == consistent
    if x is not None:
        assert list(m.apply(x)) == list(b)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(fractions, min_size=n, max_size=n), min_size=n, max_size=n)))
def test_determinant_and_inverse(rows):
    m = Matrix.from_dense(rows)
    d = determinant(m)
    assert d == Fraction(str(to_sp(rows).det()))
    if d:
        assert m @ inverse(m) == Matrix.identity(m.rows)
    else:
        with pytest.raises(LinalgError):
            inverse(m)


def test_quotient_and_subspace():
    big = [{0: Fraction(1)}, {1: Fraction(1)}, {2: Fraction(1)}]
    small = [{0: Fraction(1), 1: Fraction(1)}]
    q = quotient_sparse(big, small)
    assert len(q) == 2
    ech = echelon_of(small + q)
    assert ech.rank == 3
    S = SubspaceBasis.span(3, [(1, 1, 0)])
    assert S.dim == 1 and S.contains((2, 2, 0)) and not S.contains((1, 0, 0))


def test_echelon_rejects_dependent():
    ech = echelon_of([{0: Fraction(1), 1: Fraction(2)}])
    assert not ech.add({0: Fraction(2), 1: Fraction(4)})
    assert ech.add({1: Fraction(1)})
    assert ech.contains({0: Fraction(5)})


def test_surd_entries_in_elimination():
    r = QuadraticNumber.sqrt(10)
    m = Matrix.from_dense([[1, r], [r, 10]])
    assert rank(m) == 1
    assert len(kernel_sparse(m)) == 1
