import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from blomkit.field import (
    DimensionError,
    FieldMatrix,
    PrimeField,
    columns_linearly_independent,
    fe_add,
    fe_mul,
    fe_pow,
    find_primitive_element,
    is_symmetric,
    largest_prime_leq,
    mat_mul,
    null_space,
    rank_mod,
    transpose,
)

from oracles import (
    largest_prime_brute,
    order_by_enumeration,
    pow_by_repeated_mult,
    rank_by_minors,
    smallest_generator_brute,
)

PAPER_G = [
    [28, 1, 1, 28, 28, 28],
    [1, 28, 28, 1, 28, 28],
    [1, 28, 28, 28, 1, 28],
    [28, 1, 28, 28, 28, 28],
]


@pytest.mark.parametrize("q", [1, 2, 4, 9, 91])
def test_prime_field_rejects_bad_modulus(q):
    with pytest.raises(ValueError):
        PrimeField(q)


@pytest.mark.parametrize(
    "a, b, expected",
    [(0, 7, 7), (28, 1, 0), (20, 24, 44 % 29)],
)
def test_fe_add(a, b, expected, f29):
    assert fe_add(a, b, f29) == expected


@pytest.mark.parametrize(
    "a, b, expected",
    [(1, 17, 17), (28, 28, 1), (20, 28, 560 % 29)],
)
def test_fe_mul(a, b, expected, f29):
    assert fe_mul(a, b, f29) == expected


def test_fe_mul_oracle_value():
    assert 560 % 29 == 9
    assert fe_mul(20, 28, PrimeField(29)) == 9
    assert fe_add(20, 24, PrimeField(29)) == 15


@pytest.mark.parametrize("base, exp", [(5, 0), (2, 14), (2, 28)])
def test_fe_pow_matches_repeated_multiplication(base, exp, f29):
    assert fe_pow(base, exp, f29) == pow_by_repeated_mult(base, exp, 29)


def test_fe_pow_frozen_values(f29):
    assert fe_pow(5, 0, f29) == 1
    assert fe_pow(2, 14, f29) == 28
    assert fe_pow(2, 28, f29) == 1


@pytest.mark.parametrize("q", [29, 47, 97, 347])
def test_add_mul_agree_with_wide_integers(q):
    f = PrimeField(q)
    rng = random.Random(q)
    for _ in range(10_000):
        a, b = rng.randrange(q), rng.randrange(q)
        s, p = fe_add(a, b, f), fe_mul(a, b, f)
        assert 0 <= s < q and 0 <= p < q
        assert s == (a + b) % q
        assert p == (a * b) % q


@pytest.mark.parametrize("q", [p for p in range(3, 98) if largest_prime_brute(p) == p])
def test_fermat_exhaustive(q):
    f = PrimeField(q)
    assert all(fe_pow(a, q - 1, f) == 1 for a in range(1, q))


@pytest.mark.parametrize("q", [3, 5, 7, 11, 13, 29, 31, 37, 41, 43, 47])
def test_primitive_powers_distinct(q):
    f = PrimeField(q)
    g = find_primitive_element(f)
    powers = [fe_pow(g, i, f) for i in range(q - 1)]
    assert len(set(powers)) == q - 1


@pytest.mark.parametrize("bound, expected", [(50, 47), (29, 29), (1, None)])
def test_largest_prime_leq(bound, expected):
    assert largest_prime_brute(bound) == expected
    assert largest_prime_leq(bound) == expected


@pytest.mark.parametrize("bound", range(0, 400, 7))
def test_largest_prime_leq_against_trial_division(bound):
    assert largest_prime_leq(bound) == largest_prime_brute(bound)


@pytest.mark.parametrize("q, expected", [(29, 2), (3, 2), (7, 3)])
def test_find_primitive_element(q, expected):
    assert smallest_generator_brute(q) == expected
    assert find_primitive_element(PrimeField(q)) == expected
    assert order_by_enumeration(expected, q) == q - 1


@pytest.mark.parametrize("q", [5, 11, 13, 17, 19, 23, 29, 31, 47, 97, 349])
def test_find_primitive_element_matches_brute_force(q):
    assert find_primitive_element(PrimeField(q)) == smallest_generator_brute(q)


def test_mat_mul_reproduces_paper_share_matrix(golden, f29):
    d = FieldMatrix.from_rows(golden["secret_matrix"])
    g = FieldMatrix.from_rows(PAPER_G)
    a = transpose(mat_mul(d, g, f29))
    assert a.to_lists() == golden["share_matrix"]
    assert a.row(0) == (26, 9, 5, 24)


def test_mat_mul_identity_and_shape_error(f29):
    m = FieldMatrix.from_rows([[1, 2, 3], [4, 5, 6], [7, 8, 9]])
    assert mat_mul(FieldMatrix.identity(3), m, f29) == m
    x = FieldMatrix.from_rows([[1, 2, 3], [4, 5, 6]])
    with pytest.raises(DimensionError):
        mat_mul(x, x, f29)


def test_transpose(golden):
    row = FieldMatrix.from_rows([[1, 2, 3]])
    assert transpose(row).to_lists() == [[1], [2], [3]]
    m = FieldMatrix.from_rows([[1, 2], [3, 4], [5, 6]])
    assert transpose(transpose(m)) == m
    d = FieldMatrix.from_rows(golden["secret_matrix"])
    assert transpose(d) == d


def test_is_symmetric(golden):
    assert is_symmetric(FieldMatrix.from_rows(golden["secret_matrix"]))
    assert is_symmetric(FieldMatrix.identity(5))
    assert not is_symmetric(FieldMatrix.from_rows([[0, 1], [2, 0]]))
    assert not is_symmetric(FieldMatrix.from_rows([[1, 1, 1], [1, 1, 1]]))


def test_ragged_rows_rejected():
    with pytest.raises(DimensionError):
        FieldMatrix.from_rows([[1, 2], [3]])


def test_rank_examples(f29):
    assert rank_mod(FieldMatrix.identity(4), f29) == 4
    assert rank_mod(FieldMatrix.zeros(3, 3), f29) == 0
    assert rank_by_minors(PAPER_G, 29) == 4
    assert rank_mod(FieldMatrix.from_rows(PAPER_G), f29) == 4


def test_columns_linearly_independent_examples(f29):
    g = FieldMatrix.from_rows(PAPER_G)
    # column 2 is the negation of column 1
    assert rank_by_minors([[r[0], r[1]] for r in PAPER_G], 29) == 1
    assert not columns_linearly_independent(g, [0, 1], f29)
    assert columns_linearly_independent(FieldMatrix.identity(4), [1, 3], f29)
    vdm = FieldMatrix.from_rows([[1, 1, 1], [2, 4, 8]])
    assert (1 * 4 - 1 * 2) % 29 != 0
    assert columns_linearly_independent(vdm, [0, 1], f29)


def test_columns_linearly_independent_errors(f29):
    m = FieldMatrix.identity(3)
    with pytest.raises(IndexError):
        columns_linearly_independent(m, [0, 3], f29)
    with pytest.raises(ValueError):
        columns_linearly_independent(m, [1, 1], f29)


def test_null_space_annihilates(f29):
    g = FieldMatrix.from_rows(PAPER_G)
    basis = null_space(g, f29)
    assert len(basis) == 6 - 4
    for vec in basis:
        assert all(sum(x * y for x, y in zip(row, vec)) % 29 == 0 for row in g.entries)


def matrices(q, max_rows=4, max_cols=4):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(
                st.lists(st.integers(0, q - 1), min_size=c, max_size=c), min_size=r, max_size=r
            )
        )
    )


def square(q, n):
    return st.lists(st.lists(st.integers(0, q - 1), min_size=n, max_size=n), min_size=n, max_size=n)


@settings(max_examples=100, deadline=None)
@given(square(29, 4), square(29, 4), square(29, 4))
def test_mat_mul_associative(a, b, c):
    f = PrimeField(29)
    a, b, c = (FieldMatrix.from_rows(x) for x in (a, b, c))
    assert mat_mul(mat_mul(a, b, f), c, f) == mat_mul(a, mat_mul(b, c, f), f)
    assert transpose(mat_mul(a, b, f)) == mat_mul(transpose(b), transpose(a), f)


@settings(max_examples=150, deadline=None)
@given(matrices(7), st.sampled_from([5, 7]))
def test_rank_matches_minor_oracle_and_transpose(rows, q):
    f = PrimeField(q)
    m = FieldMatrix.from_rows(rows, f)
    r = rank_mod(m, f)
    assert r == rank_by_minors(m.to_lists(), q)
    assert r == rank_mod(transpose(m), f)


@settings(max_examples=150, deadline=None)
@given(matrices(29, 4, 5), st.data())
def test_column_independence_matches_submatrix_rank(rows, data):
    f = PrimeField(29)
    m = FieldMatrix.from_rows(rows)
    cols = data.draw(st.lists(st.integers(0, m.cols - 1), unique=True, min_size=1))
    expected = rank_by_minors(m.columns(cols).to_lists(), 29) == len(cols)
    assert columns_linearly_independent(m, cols, f) == expected
