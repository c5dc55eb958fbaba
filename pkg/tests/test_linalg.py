from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from frobcob import (LinearMap, Permutation, Scalar, ShapeError,
                     SingularMatrixError, kron, kron_all, matmul,
                     permute_factors)
from frobcob.linalg import index_to_tuple, invert, tuple_to_index

small_scalars = st.builds(Scalar, st.integers(-4, 4), st.integers(-2, 2))


def dense_matmul(f, g):
    # Triple-loop reference product, independent of the sparse routine.
    rows = [[Scalar(0)] * g.cols for _ in range(f.rows)]
    for r in range(f.rows):
        for c in range(g.cols):
            acc = Scalar(0)
            for k in range(f.cols):
                acc = acc + f.entry(r, k) * g.entry(k, c)
            rows[r][c] = acc
    return LinearMap.from_rows(f.dim, f.arity_out, g.arity_in, rows)


def maps(dim, arity_out, arity_in):
    n, m = dim ** arity_out, dim ** arity_in
    return st.lists(
        st.lists(small_scalars, min_size=m, max_size=m),
        min_size=n, max_size=n,
    ).map(lambda rows: LinearMap.from_rows(dim, arity_out, arity_in, rows))


def test_index_round_trip():
    for d, k in ((2, 3), (3, 2), (4, 1), (5, 0)):
        for i in range(d ** k):
            t = index_to_tuple(i, d, k)
            assert len(t) == k
            assert tuple_to_index(t, d) == i
    assert tuple_to_index((1, 0, 1), 2) == 5
    assert index_to_tuple(5, 2, 3) == (1, 0, 1)


def test_leftmost_factor_most_significant():
    assert tuple_to_index((2, 1), 3) == 7
    assert tuple_to_index((1, 2), 3) == 5


def test_construction_drops_zeros_and_checks_bounds():
    f = LinearMap(2, 1, 1, {(0, 0): 1, (1, 1): 0})
    assert f.nnz() == 1
    assert f.entry(1, 1) == Scalar(0)
    with pytest.raises(IndexError):
        LinearMap(2, 1, 1, {(2, 0): 1})
    with pytest.raises(IndexError):
        f.entry(0, 5)
    with pytest.raises(ValueError):
        LinearMap(0, 1, 1)


def test_known_complex_product():
    half = Fraction(1, 2)
    a = LinearMap.from_rows(2, 1, 1, [
        [Scalar(half), Scalar(1, 1)],
        [Scalar(-2), Scalar(Fraction(1, 3))],
    ])
    b = LinearMap.from_rows(2, 1, 1, [
        [Scalar(3), Scalar(0, 1)],
        [Scalar(half, -1), Scalar(0)],
    ])
    expected = LinearMap.from_rows(2, 1, 1, [
        [Scalar(3, Fraction(-1, 2)), Scalar(0, half)],
        [Scalar(Fraction(-35, 6), Fraction(-1, 3)), Scalar(0, -2)],
    ])
    assert a @ b == expected
    assert matmul(a, b) == expected


def test_matmul_shape_mismatch_names_both_shapes():
    f = LinearMap.identity(2, 1)
    g = LinearMap.identity(2, 2)
    with pytest.raises(ShapeError, match="2x2.*4x4"):
        f @ g
    with pytest.raises(ShapeError, match="dimension mismatch"):
        f @ LinearMap.identity(3, 1)


def test_text_form():
    f = LinearMap.from_rows(2, 1, 1, [[Scalar(2), Scalar(0)],
                                      [Scalar(0, 1), Scalar(Fraction(1, 2))]])
    assert f.to_text() == "2,0;i,1/2"


def test_scalar_map_and_kron_all_empty():
    s = LinearMap.scalar_map(3, Fraction(5, 2))
    assert s.shape == (1, 1)
    assert kron_all([], 3) == LinearMap.scalar_map(3, 1)
    assert kron_all([s], 3) == s


def test_kron_block_layout():
    a = LinearMap.from_rows(2, 1, 1, [[1, 2], [3, 4]])
    b = LinearMap.identity(2, 1)
    k = a.kron(b)
    assert k.shape == (4, 4)
    # Left operand is most significant: entry at block (r1,c1), offset (r2,c2).
    assert k.entry(0, 0) == Scalar(1)
    assert k.entry(0, 2) == Scalar(2)
    assert k.entry(2, 0) == Scalar(3)
    assert k.entry(3, 3) == Scalar(4)
    assert k.entry(0, 1) == Scalar(0)


@given(maps(2, 1, 1), maps(2, 1, 2))
def test_matmul_matches_dense_reference(f, g):
    assert f @ g == dense_matmul(f, g)


@given(maps(2, 1, 1), maps(2, 1, 1), maps(2, 1, 2))
def test_matmul_associative(f, g, h):
    assert (f @ g) @ h == f @ (g @ h)


@settings(max_examples=25)
@given(maps(2, 1, 1), maps(2, 1, 1), maps(2, 1, 1), maps(2, 1, 1))
def test_kron_interchange(f, g, fp, gp):
    lhs = f.kron(g) @ fp.kron(gp)
    rhs = (f @ fp).kron(g @ gp)
    assert lhs == rhs


@given(maps(2, 1, 1), maps(2, 1, 1))
def test_addition_is_entrywise(f, g):
    s = f + g
    for r in range(2):
        for c in range(2):
            assert s.entry(r, c) == f.entry(r, c) + g.entry(r, c)
    assert f - f == LinearMap.zero(2, 1, 1)


def test_invert_known_matrix():
    f = LinearMap.from_rows(2, 1, 1, [[1, 2], [3, 4]])
    g = invert(f)
    expected = LinearMap.from_rows(2, 1, 1, [
        [Scalar(-2), Scalar(1)],
        [Scalar(Fraction(3, 2)), Scalar(Fraction(-1, 2))],
    ])
    assert g == expected


def test_invert_complex_matrix():
    f = LinearMap.from_rows(2, 1, 1, [[Scalar(0, 1), Scalar(0)],
                                      [Scalar(1), Scalar(2)]])
    g = invert(f)
    assert g @ f == LinearMap.identity(2, 1)
    assert f @ g == LinearMap.identity(2, 1)


def test_invert_requires_square():
    with pytest.raises(ShapeError):
        invert(LinearMap.zero(2, 2, 1))


def test_singular_matrix_reports_stage():
    f = LinearMap.from_rows(2, 1, 1, [[1, 2], [2, 4]])
    with pytest.raises(SingularMatrixError) as exc:
        invert(f)
    assert exc.value.stage == 1
    assert "elimination stage 1" in str(exc.value)
    with pytest.raises(SingularMatrixError) as exc:
        invert(LinearMap.zero(2, 1, 1))
    assert exc.value.stage == 0


@given(maps(2, 1, 1).filter(
    lambda f: f.entry(0, 0) * f.entry(1, 1) != f.entry(0, 1) * f.entry(1, 0)))
def test_invert_round_trip(f):
    g = invert(f)
    assert f @ g == LinearMap.identity(2, 1)
    assert g @ f == LinearMap.identity(2, 1)


def test_permutation_basics():
    p = Permutation((1, 2, 0))
    q = Permutation((0, 2, 1))
    assert p(0) == 1
    assert (p * q).images == tuple(p(q(j)) for j in range(3))
    assert (p * p.inverse()).images == (0, 1, 2)
    with pytest.raises(ValueError):
        Permutation((0, 0, 1))


def test_permute_factors_swaps_factors():
    m = permute_factors(Permutation((1, 0)), 2)
    # Basis vector e_1 (x) e_0 (index 2) must map to e_0 (x) e_1 (index 1).
    assert m.entry(1, 2) == Scalar(1)
    assert m.entry(2, 1) == Scalar(1)
    assert m.entry(0, 0) == Scalar(1)
    assert m.entry(3, 3) == Scalar(1)
    assert m.nnz() == 4


perm3 = st.permutations(range(3)).map(lambda xs: Permutation(tuple(xs)))


@given(perm3, perm3)
def test_permute_factors_is_a_homomorphism(p, q):
    assert permute_factors(p, 2) @ permute_factors(q, 2) == permute_factors(p * q, 2)


@given(perm3)
def test_permute_factors_inverse(p):
    m = permute_factors(p, 2)
    assert m @ permute_factors(p.inverse(), 2) == LinearMap.identity(2, 3)


@given(maps(2, 1, 1), maps(2, 1, 1))
def test_kron_vs_permuted_kron(f, g):
    # Conjugating by the factor swap exchanges the tensor order.
    s = permute_factors(Permutation((1, 0)), 2)
    assert s @ f.kron(g) @ s == g.kron(f)
