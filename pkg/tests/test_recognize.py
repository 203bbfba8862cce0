import random
from collections import Counter

import pytest

from conftest import random_invertible
from thinhess.bases import BasisKind, closed_form_representation
from thinhess.errors import DimensionError, FieldMismatchError, PreconditionError, UnsupportedFieldError
from thinhess.field import GF, QQ
from thinhess.linalg import Matrix
from thinhess.randomgen import random_parameter_array
from thinhess.recognize import (
    NO_ORDERING,
    NOT_DIAGONALIZABLE,
    NOT_SPLIT,
    REPEATED_EIGENVALUE,
    MatrixPair,
    dual_eigenvalues_from_triangular,
    extract_parameter_array,
    is_multiplicity_free,
    isomorphic,
    recognize_th_pair,
    th_orderings,
)
from thinhess.thcore import (
    ParameterArray,
    build_canonical_system,
    conjugate_system,
    dual_parameter_array,
    dual_system,
)

FIELDS = [QQ, GF(10007), GF(11)]


def sample(field, count=8, dmax=6):
    return [random_parameter_array(i % (dmax + 1), field, 3000 + i) for i in range(count)]


def pair_of(s):
    return MatrixPair(s.A, s.A_star)


def key(p):
    return tuple(map(tuple, p.to_json().values()))


# multiplicity freeness


def test_multiplicity_free_examples():
    mf = is_multiplicity_free(Matrix.diagonal(QQ, [0, 1, 2]))
    assert mf and set(mf.eigenvalues) == {0, 1, 2}
    mf = is_multiplicity_free(Matrix.diagonal(QQ, [0, 0, 1]))
    assert not mf and mf.code == REPEATED_EIGENVALUE
    mf = is_multiplicity_free(Matrix(QQ, [[0, -1], [1, 0]]))
    assert not mf and mf.code == NOT_SPLIT
    mf = is_multiplicity_free(Matrix(QQ, [[1, 1], [0, 1]]))
    assert not mf and mf.code == NOT_DIAGONALIZABLE


def test_multiplicity_free_over_small_field():
    # x^2 + 1 splits mod 5
    mf = is_multiplicity_free(Matrix(GF(5), [[0, -1], [1, 0]]))
    assert mf and sorted(int(x) for x in mf.eigenvalues) == [2, 3]


def test_huge_field_unsupported():
    with pytest.raises(UnsupportedFieldError):
        is_multiplicity_free(Matrix(GF(1000003), [[0, -1], [1, 0]]))


# orderings


def test_orderings_examples(R):
    s = build_canonical_system(R)
    assert (0, 1, 2) in th_orderings(pair_of(s))
    assert th_orderings(MatrixPair(Matrix.diagonal(QQ, [0, 1]), Matrix.diagonal(QQ, [2, 3]))) == []
    assert th_orderings(MatrixPair(Matrix(QQ, [[7]]), Matrix(QQ, [[3]]))) == [(7,)]


def test_orderings_require_multiplicity_free():
    with pytest.raises(PreconditionError):
        th_orderings(MatrixPair(Matrix.diagonal(QQ, [0, 0]), Matrix.identity(QQ, 2)))


@pytest.mark.parametrize("field", FIELDS)
def test_flag_rigidity(field):
    for p in sample(field):
        s = build_canonical_system(p)
        found = th_orderings(pair_of(s))
        starting = [o for o in found if o[0] == p.theta[0]]
        assert starting == [p.theta]
        assert len({o[0] for o in found}) == len(found)


# recognition


def test_recognize_running_example(R):
    rep = recognize_th_pair(pair_of(build_canonical_system(R)))
    assert rep.is_th_pair and R in rep.parameter_arrays
    assert len(rep.systems) == 4
    thetas = [(p.theta, p.theta_star) for p in rep.parameter_arrays]
    assert thetas == sorted(thetas)


def test_recognize_rejects_diagonal_pair():
    D = Matrix.diagonal(QQ, [0, 1, 2])
    rep = recognize_th_pair(MatrixPair(D, D))
    assert not rep.is_th_pair and rep.systems == ()
    assert rep.failure_reason.code == NO_ORDERING and rep.failure_reason.matrix == "A"


def test_recognize_names_failing_matrix():
    good = Matrix.diagonal(QQ, [0, 1])
    rep = recognize_th_pair(MatrixPair(good, Matrix(QQ, [[0, -1], [1, 0]])))
    assert rep.failure_reason.code == NOT_SPLIT and rep.failure_reason.matrix == "A_star"
    rep = recognize_th_pair(MatrixPair(Matrix.identity(QQ, 2), good))
    assert rep.failure_reason.code == REPEATED_EIGENVALUE and rep.failure_reason.matrix == "A"


@pytest.mark.parametrize("a,b", [(7, 3), (0, 0), (-1, 5)])
def test_recognize_one_dimensional(a, b):
    rep = recognize_th_pair(MatrixPair(Matrix(QQ, [[a]]), Matrix(QQ, [[b]])))
    assert rep.is_th_pair and rep.parameter_arrays == [ParameterArray(QQ, (a,), (b,), ())]


def test_pair_shape_checks():
    with pytest.raises(DimensionError):
        MatrixPair(Matrix.identity(QQ, 2), Matrix.identity(QQ, 3))
    with pytest.raises(FieldMismatchError):
        MatrixPair(Matrix.identity(QQ, 2), Matrix.identity(GF(5), 2))


@pytest.mark.parametrize("field", FIELDS)
def test_round_trip(field):
    for p in sample(field):
        rep = recognize_th_pair(pair_of(build_canonical_system(p)))
        assert rep.is_th_pair and p in rep.parameter_arrays


@pytest.mark.parametrize("field", [QQ, GF(10007)])
def test_conjugation_invariance(field):
    rng = random.Random(21)
    for p in sample(field, 6, dmax=4):
        s = build_canonical_system(p)
        g = random_invertible(field, p.d + 1, rng)
        t = conjugate_system(s, g)
        before = Counter(key(q) for q in recognize_th_pair(pair_of(s)).parameter_arrays)
        after = Counter(key(q) for q in recognize_th_pair(pair_of(t)).parameter_arrays)
        assert before == after


def test_equal_arrays_in_a_report_are_isomorphic():
    for p in sample(QQ, 6, dmax=4):
        rep = recognize_th_pair(pair_of(build_canonical_system(p)))
        for s1, p1 in rep.systems:
            for s2, p2 in rep.systems:
                if p1 == p2:
                    assert isomorphic(s1, s2) is not None


# extraction and dual eigenvalues


def test_extract_examples(R):
    s = build_canonical_system(R)
    assert extract_parameter_array(s) == R
    assert extract_parameter_array(dual_system(s)) == dual_parameter_array(R)
    one = build_canonical_system(ParameterArray(QQ, (7,), (3,), ()))
    assert extract_parameter_array(one) == ParameterArray(QQ, (7,), (3,), ())


def test_dual_eigenvalues_examples(R):
    std = closed_form_representation(R, BasisKind.PHI_STANDARD)
    assert dual_eigenvalues_from_triangular(MatrixPair(std.B, std.B_star)) == (0, 1, 2)
    split = closed_form_representation(R, BasisKind.PHI_SPLIT)
    assert dual_eigenvalues_from_triangular(MatrixPair(split.B, split.B_star)) == (0, 1, 2)
    with pytest.raises(PreconditionError):
        dual_eigenvalues_from_triangular(MatrixPair(split.B_star, split.B_star))


@pytest.mark.parametrize("field", [QQ, GF(10007)])
def test_dual_eigenvalues_for_random_arrays(field):
    for p in sample(field, 6, dmax=5):
        # lower bidiagonal with nonzero subdiagonal counts as Hessenberg
        split = closed_form_representation(p, BasisKind.PHI_SPLIT)
        std = closed_form_representation(p, BasisKind.PHI_STANDARD)
        assert dual_eigenvalues_from_triangular(MatrixPair(std.B, std.B_star)) == p.theta_star
        assert dual_eigenvalues_from_triangular(MatrixPair(split.B, split.B_star)) == p.theta_star


# isomorphism


def test_isomorphic_examples(R):
    s = build_canonical_system(R)
    g = Matrix(QQ, [[1, 2, 0], [0, 1, 3], [1, 0, 1]])
    w = isomorphic(s, conjugate_system(s, g))
    assert w is not None
    other = build_canonical_system(ParameterArray(QQ, (0, 1, 2), (0, 1, 2), (1, 2)))
    assert isomorphic(s, other) is None
    w = isomorphic(s, s)
    assert w.gamma == Matrix.identity(QQ, 3).scale(w.gamma[0, 0])


def test_isomorphic_rejects_mismatched_inputs(R):
    s = build_canonical_system(R)
    with pytest.raises(DimensionError):
        isomorphic(s, build_canonical_system(ParameterArray(QQ, (7,), (3,), ())))
    with pytest.raises(FieldMismatchError):
        isomorphic(s, build_canonical_system(ParameterArray(GF(5), (0, 1, 2), (0, 1, 2), (1, 1))))
