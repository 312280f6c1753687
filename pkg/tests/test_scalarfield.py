import random

import pytest

from modend.scalarfield import (
    DimensionMismatch, DivisionByZero, FieldSpec, Matrix, ZeroDivisorDetected,
    field_arith, span_contains, subspace_equal,
)

Q = FieldSpec([0, 1])                 # Q[x]/(x): plain rationals
SQRT5 = FieldSpec([-5, 0, 1])         # Q[x]/(x^2 - 5)
QUART = FieldSpec([-1, 0, 1, 0, 1])   # Q[x]/(x^4 + x^2 - 1)


def rand_elem(field, rng, span=6):
    return field.element([rng.randint(-span, span) for _ in range(field.degree)])


def test_sqrt5_inverse_of_generator():
    theta = SQRT5.gen()
    # theta * theta = 5 forces 1/theta = theta/5
    assert field_arith("div", SQRT5.one, theta) == SQRT5.element([0, "1/5"])


def test_quartic_inverse_of_generator():
    # derived oracle: theta * (theta^3 + theta) = theta^4 + theta^2 = 1
    theta = QUART.gen()
    cand = QUART.element([0, 1, 0, 1])
    assert theta * cand == QUART.one
    assert QUART.one / theta == cand


def test_add_zero_identity():
    rng = random.Random(0)
    for field in (Q, SQRT5, QUART):
        a = rand_elem(field, rng)
        assert field_arith("add", a, field.zero) == a


@pytest.mark.parametrize("field", [Q, SQRT5, QUART])
def test_field_axioms_random(field):
    rng = random.Random(17)
    for _ in range(40):
        a, b, c = (rand_elem(field, rng) for _ in range(3))
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        if b:
            assert (a * b) / b == a


def test_division_by_zero():
    with pytest.raises(DivisionByZero):
        field_arith("div", SQRT5.one, SQRT5.zero)


def test_zero_divisor_detected():
    reducible = FieldSpec([-1, 0, 1])  # x^2 - 1 = (x-1)(x+1)
    theta = reducible.gen()
    with pytest.raises(ZeroDivisorDetected):
        (theta - reducible.one).inverse()


def test_rejects_degree_zero_and_nonmonic():
    with pytest.raises(ValueError):
        FieldSpec([1])
    with pytest.raises(ValueError):
        FieldSpec([0, 2])


def mat(field, rows):
    return Matrix.from_rows(field, [[field.rational(v) for v in row] for row in rows])


def test_nullspace_rank_one():
    m = mat(Q, [[1, 1], [2, 2]])
    basis = m.nullspace()
    assert len(basis) == 1
    # documented convention: free coordinate = 1
    assert basis[0].entries == [Q.rational(-1), Q.rational(1)]


def test_nullspace_identity_empty():
    assert Matrix.identity(Q, 3).nullspace() == []


def test_nullspace_no_constraints():
    m = Matrix.zeros(Q, 0, 4)
    basis = m.nullspace()
    assert len(basis) == 4
    for j, v in enumerate(basis):
        assert v[j, 0] == Q.one


def test_rank_nullity():
    rng = random.Random(3)
    for _ in range(25):
        rows = rng.randint(0, 5)
        cols = rng.randint(1, 5)
        m = mat(Q, [[rng.randint(-3, 3) for _ in range(cols)] for _ in range(rows)]) \
            if rows else Matrix.zeros(Q, 0, cols)
        basis = m.nullspace()
        assert m.rank() + len(basis) == cols
        for v in basis:
            assert (m * v).is_zero()


def test_subspace_equal_basics():
    e1 = Matrix.column(Q, [Q.one, Q.zero])
    e1_scaled = Matrix.column(Q, [Q.rational(2), Q.zero])
    e2 = Matrix.column(Q, [Q.zero, Q.one])
    assert subspace_equal([e1], [e1_scaled])
    assert not subspace_equal([e1], [e2])
    assert subspace_equal([], [])


def test_subspace_equal_dimension_mismatch():
    v2 = Matrix.column(Q, [Q.one, Q.zero])
    v3 = Matrix.column(Q, [Q.one, Q.zero, Q.zero])
    with pytest.raises(DimensionMismatch):
        subspace_equal([v2], [v3])


def test_subspace_equal_equivalence_relation():
    rng = random.Random(11)
    ambient = 4

    def rand_basis():
        k = rng.randint(0, 3)
        return [Matrix.column(Q, [Q.rational(rng.randint(-2, 2)) for _ in range(ambient)])
                for _ in range(k)]

    for _ in range(20):
        a, b, c = rand_basis(), rand_basis(), rand_basis()
        assert subspace_equal(a, a)
        assert subspace_equal(a, b) == subspace_equal(b, a)
        if subspace_equal(a, b) and subspace_equal(b, c):
            assert subspace_equal(a, c)


def test_span_contains():
    e1 = Matrix.column(Q, [Q.one, Q.zero])
    inside = Matrix.column(Q, [Q.rational(7), Q.zero])
    outside = Matrix.column(Q, [Q.one, Q.one])
    assert span_contains([e1], inside)
    assert not span_contains([e1], outside)
    assert span_contains([], Matrix.column(Q, [Q.zero]))


def test_matrix_inverse():
    m = mat(SQRT5, [[1, 1], [0, 1]])
    inv = m.inverse()
    assert m * inv == Matrix.identity(SQRT5, 2)
    with pytest.raises(DivisionByZero):
        mat(Q, [[1, 1], [2, 2]]).inverse()
