import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from conftest import random_invertible
from thinhess.errors import DimensionError, FieldMismatchError, SingularMatrixError, UnsupportedFieldError
from thinhess.field import GF, QQ
from thinhess.linalg import (
    Matrix,
    Polynomial,
    Subspace,
    char_poly,
    mat_inverse,
    mat_mul,
    min_poly,
    roots_in_field,
    shape_predicates,
    span,
    subspace_ops,
)

H = Matrix(QQ, [[1, -1, 0], ["-1/2", 1, "-1/2"], [0, -1, 1]])
CUBIC = Polynomial(QQ, [0, 2, -3, 1])  # x^3 - 3x^2 + 2x


def schoolbook(a, b):
    return [[sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0]))] for i in range(len(a))]


# products and inverses


def test_identity_product():
    rng = random.Random(0)
    m = Matrix(QQ, [[Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(3)] for _ in range(3)])
    assert mat_mul(Matrix.identity(QQ, 3), m) == m
    assert m @ Matrix.identity(QQ, 3) == m


def test_antidiagonal_square():
    Z = Matrix(QQ, [[0, 0, 2], [0, 2, 0], [2, 0, 0]])
    expected = schoolbook(Z.rows, Z.rows)
    assert (Z @ Z).rows == tuple(map(tuple, expected))
    assert Z @ Z == Matrix.identity(QQ, 3).scale(4)


def test_product_errors():
    a = Matrix.zeros(QQ, 2, 3)
    with pytest.raises(DimensionError):
        a @ a
    with pytest.raises(FieldMismatchError):
        Matrix.identity(QQ, 2) @ Matrix.identity(GF(5), 2)


def test_inverse_examples():
    assert mat_inverse(Matrix.identity(QQ, 4)) == Matrix.identity(QQ, 4)
    T = Matrix(QQ, [[2, -2, 1], [0, -1, 1], [0, 0, 1]])
    Ti = Matrix(QQ, [["1/2", -1, "1/2"], [0, -1, 1], [0, 0, 1]])
    assert T.inverse() == Ti
    assert T @ Ti == Matrix.identity(QQ, 3)
    with pytest.raises(SingularMatrixError):
        Matrix(QQ, [[1, 2, 3], [2, 4, 6], [0, 1, 1]]).inverse()
    with pytest.raises(DimensionError):
        Matrix.zeros(QQ, 2, 3).inverse()


@pytest.mark.parametrize("field", [QQ, GF(10007), GF(3)])
def test_inverse_property(field):
    rng = random.Random(7)
    for n in range(1, 10):
        a = random_invertible(field, n, rng, -9, 9)
        assert a @ a.inverse() == Matrix.identity(field, n)
        assert a.inverse() @ a == Matrix.identity(field, n)


def test_matrix_basics():
    m = Matrix(QQ, [[1, 2], [3, 4]])
    assert m.transpose() == Matrix(QQ, [[1, 3], [2, 4]])
    assert m.trace() == 5
    assert m.shift(1) == Matrix(QQ, [[0, 2], [3, 3]])
    assert m.power(3) == m @ m @ m
    assert m.apply((1, 1)) == (3, 7)
    assert Matrix.from_columns(QQ, [(1, 3), (2, 4)]) == m
    assert m.rank() == 2
    assert hash(m) == hash(Matrix(QQ, [[1, 2], [3, 4]]))
    with pytest.raises(DimensionError):
        Matrix(QQ, [[1, 2], [3]])


# polynomials


def test_char_poly_examples():
    assert char_poly(Matrix.diagonal(QQ, [0, 1, 2])) == CUBIC
    assert char_poly(Matrix.zeros(QQ, 2)) == Polynomial(QQ, [0, 0, 1])
    assert char_poly(H) == CUBIC
    assert str(CUBIC) == "x^3 - 3x^2 + 2x"


def test_min_poly_examples():
    for n in (1, 2, 5):
        assert min_poly(Matrix.identity(QQ, n)) == Polynomial(QQ, [-1, 1])
    assert min_poly(Matrix.diagonal(QQ, [0, 0, 1])) == Polynomial(QQ, [0, -1, 1])
    mp = min_poly(H)
    assert mp == CUBIC
    assert (char_poly(H) % mp).is_zero()


def _random_matrix(field, n, rng):
    return Matrix(field, [[rng.randint(-4, 4) for _ in range(n)] for _ in range(n)])


@pytest.mark.parametrize("field", [QQ, GF(10007), GF(2)])
def test_cayley_hamilton_and_min_poly_divides(field):
    rng = random.Random(11)
    for _ in range(10):
        a = _random_matrix(field, 5, rng)
        cp = char_poly(a)
        assert cp.eval_matrix(a).is_zero()
        mp = min_poly(a)
        assert mp.eval_matrix(a).is_zero()
        assert (cp % mp).is_zero()
        assert mp.is_monic()


def test_min_poly_of_low_rank_structure():
    # diag(1,1,2) conjugated: minimal polynomial (x-1)(x-2), characteristic (x-1)^2(x-2)
    g = Matrix(QQ, [[1, 2, 0], [0, 1, 1], [1, 0, 1]])
    a = g @ Matrix.diagonal(QQ, [1, 1, 2]) @ g.inverse()
    assert min_poly(a) == Polynomial.from_roots(QQ, [1, 2])
    assert char_poly(a) == Polynomial.from_roots(QQ, [1, 1, 2])


def test_roots_examples():
    r = roots_in_field(CUBIC)
    assert r.roots == ((0, 1), (1, 1), (2, 1)) and r.splits
    r = roots_in_field(Polynomial(QQ, [1, 0, 1]))
    assert r.roots == () and not r.splits
    r = roots_in_field(Polynomial(GF(5), [1, 0, 1]))
    assert [int(x) for x in r.values] == [2, 3] and r.splits


def test_roots_with_multiplicity_and_fractions():
    roots = [Fraction(3, 7)] * 3 + [Fraction(-5, 2), Fraction(0), Fraction(0), Fraction(11)]
    p = Polynomial.from_roots(QQ, roots)
    r = roots_in_field(p)
    assert r.splits
    assert dict(r.roots) == {Fraction(3, 7): 3, Fraction(-5, 2): 1, Fraction(0): 2, Fraction(11): 1}
    assert not r.squarefree
    q = p * Polynomial(QQ, [-2, 0, 1])  # x^2 - 2 has no rational root
    r = roots_in_field(q)
    assert not r.splits and dict(r.roots) == dict(roots_in_field(p).roots)


def test_roots_large_prime_unsupported():
    with pytest.raises(UnsupportedFieldError):
        roots_in_field(Polynomial(GF(1000003), [1, 0, 1]))
    # linear polynomials never need a scan
    r = roots_in_field(Polynomial(GF(2147483647), [3, 1]))
    assert int(r.values[0]) == 2147483647 - 3


@settings(max_examples=40, deadline=None)
@given(st.lists(st.builds(Fraction, st.integers(-20, 20), st.integers(1, 6)), min_size=1, max_size=8))
def test_roots_recover_random_splitting_polynomials(roots):
    p = Polynomial.from_roots(QQ, roots).monic()
    r = roots_in_field(p)
    assert r.splits
    expected = {}
    for x in roots:
        expected[x] = expected.get(x, 0) + 1
    assert dict(r.roots) == expected


def test_polynomial_division():
    a = Polynomial.from_roots(QQ, [1, 2, 3])
    b = Polynomial.from_roots(QQ, [2])
    q, rem = divmod(a, b)
    assert rem.is_zero() and q == Polynomial.from_roots(QQ, [1, 3])


# subspaces


def e(i, n=3):
    return [1 if k == i else 0 for k in range(n)]


def test_subspace_examples():
    s = subspace_ops(span(QQ, [e(0)]), span(QQ, [e(1)]), "sum")
    assert s.dim == 2 and s == span(QQ, [e(0), e(1)])
    x = subspace_ops(span(QQ, [e(0), e(1)]), span(QQ, [e(1), e(2)]), "intersect")
    assert x == span(QQ, [e(1)])
    assert subspace_ops(span(QQ, [e(0), e(1)]), span(QQ, [[1, 1, 0], [1, -1, 0]]), "equal")
    with pytest.raises(DimensionError):
        span(QQ, [e(0)]) + span(QQ, [e(0, 4)])


def test_subspace_canonical_form():
    a = span(QQ, [[2, 4, 6], [1, 1, 1]])
    b = span(QQ, [[0, 2, 4], [3, 5, 7]])
    assert a == b and a.basis == b.basis and hash(a) == hash(b)
    assert a.contains((1, 2, 3)) and not a.contains((0, 0, 1))


@pytest.mark.parametrize("field", [QQ, GF(5)])
def test_dimension_formula(field):
    rng = random.Random(5)
    for _ in range(40):
        n = rng.randint(1, 6)
        X = Subspace(field, n, [[rng.randint(-2, 2) for _ in range(n)] for _ in range(rng.randint(0, n))])
        Y = Subspace(field, n, [[rng.randint(-2, 2) for _ in range(n)] for _ in range(rng.randint(0, n))])
        assert X.dim + Y.dim == (X + Y).dim + (X & Y).dim
        assert (X & Y).issubset(X) and (X & Y).issubset(Y)


def test_kernel_and_image():
    m = Matrix(QQ, [[1, 1, 0], [0, 0, 0], [0, 0, 1]])
    k = Subspace.kernel(m)
    assert k == span(QQ, [[1, -1, 0]])
    assert Subspace.whole(QQ, 3).image(m) == Subspace.column_space(m)


# shape predicates


def test_shape_examples():
    sh = shape_predicates(Matrix(QQ, [[2, 0, 0], [1, 1, 0], [0, 1, 0]]))
    assert sh.lower_bidiagonal and sh.hessenberg and not sh.upper_bidiagonal and not sh.diagonal
    sh = shape_predicates(Matrix.diagonal(QQ, [1, 2]))
    assert sh.diagonal and sh.upper_triangular and not sh.lower_bidiagonal and not sh.hessenberg
    sh = shape_predicates(Matrix(QQ, [[1, 1], [0, 1]]).submatrix([0], [0]))
    assert all(vars(sh).values())


def test_shape_predicates_on_H():
    sh = shape_predicates(H)
    assert sh.hessenberg and not sh.lower_bidiagonal and not sh.upper_triangular
    assert shape_predicates(Matrix(QQ, [[0, 1, 0], [0, 1, 1], [0, 0, 2]])).upper_bidiagonal
    with pytest.raises(DimensionError):
        shape_predicates(Matrix.zeros(QQ, 2, 3))
