import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hallforge.arith import (
    Scalar,
    complete_basis,
    gaussian_binomial,
    gl_order,
    is_prime,
    mat_inverse,
    mat_rank,
    primitive_root,
    rref,
    solve_linear_space,
    subspaces,
)

PRIMES = st.sampled_from([2, 3, 5])


def matrices(q, max_rows=4, max_cols=4):
    return st.tuples(st.integers(1, max_rows), st.integers(1, max_cols)).flatmap(
        lambda s: st.lists(
            st.lists(st.integers(0, q - 1), min_size=s[1], max_size=s[1]), min_size=s[0], max_size=s[0]
        )
    )


def _kernel_size_brute(M, q):
    m = M.shape[1]
    return sum(1 for x in itertools.product(range(q), repeat=m) if not ((M @ np.array(x)) % q).any())


def _span(rows, q):
    rows = np.asarray(rows, dtype=np.int64)
    if rows.shape[0] == 0:
        return frozenset([(0,) * rows.shape[1]])
    return frozenset(
        tuple((np.array(c) @ rows) % q) for c in itertools.product(range(q), repeat=rows.shape[0])
    )


def test_is_prime_and_primitive_root():
    assert [n for n in range(20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]
    for q in (2, 3, 5, 7):
        g = primitive_root(q)
        assert {pow(g, i, q) for i in range(1, q)} == set(range(1, q))


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_rank_nullity_against_brute_kernel(data):
    q = data.draw(PRIMES)
    M = np.array(data.draw(matrices(q, 3, 4)), dtype=np.int64)
    r = mat_rank(M, q)
    assert q ** (M.shape[1] - r) == _kernel_size_brute(M, q)
    K = solve_linear_space(M, M.shape[1], q)
    assert K.shape[0] == M.shape[1] - r
    assert not ((M @ K.T) % q).any()


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_rref_is_reduced_and_row_equivalent(data):
    q = data.draw(PRIMES)
    M = np.array(data.draw(matrices(q, 3, 3)), dtype=np.int64)
    R, pivots = rref(M, q)
    nz = R[: len(pivots)]
    for i, p in enumerate(pivots):
        assert nz[i, p] == 1
        assert all(R[j, p] == 0 for j in range(R.shape[0]) if j != i)
    assert not R[len(pivots):].any()
    assert _span(nz, q) == _span(M, q)


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_inverse_and_basis_completion(data):
    q = data.draw(PRIMES)
    n = data.draw(st.integers(1, 3))
    M = np.array(data.draw(st.lists(st.lists(st.integers(0, q - 1), min_size=n, max_size=n),
                                    min_size=n, max_size=n)), dtype=np.int64)
    if mat_rank(M, q) < n:
        with pytest.raises(ValueError):
            mat_inverse(M, q)
    else:
        assert np.array_equal((M @ mat_inverse(M, q)) % q, np.eye(n, dtype=np.int64))
    cols = M[:, : mat_rank(M, q)]
    if mat_rank(cols, q) == cols.shape[1]:
        full = complete_basis(cols, q)
        assert mat_rank(full, q) == n
        assert np.array_equal(full[:, : cols.shape[1]], cols % q)


@pytest.mark.parametrize("n,q", [(1, 2), (2, 2), (2, 3), (3, 2)])
def test_gl_order_by_enumeration(n, q):
    count = sum(
        1 for entries in itertools.product(range(q), repeat=n * n)
        if mat_rank(np.array(entries, dtype=np.int64).reshape(n, n), q) == n
    )
    assert gl_order(n, q) == count


@pytest.mark.parametrize("n,q", [(3, 2), (4, 2), (3, 3), (2, 5)])
def test_subspaces_are_distinct_and_counted(n, q):
    for k in range(n + 1):
        spans = [_span(S, q) for S in subspaces(n, k, q)]
        assert len(spans) == len(set(spans)) == gaussian_binomial(n, k, q)
        assert all(len(s) == q**k for s in spans)


def test_gaussian_binomial_small_values():
    assert gaussian_binomial(2, 1, 2) == 3
    assert gaussian_binomial(4, 2, 2) == 35
    assert gaussian_binomial(3, 1, 3) == 13
    assert gaussian_binomial(3, 4, 2) == 0


scalars = st.builds(
    lambda a, b: (Fraction(a), Fraction(b)),
    st.fractions(max_denominator=20).filter(lambda x: abs(x) < 50),
    st.fractions(max_denominator=20).filter(lambda x: abs(x) < 50),
)


@settings(max_examples=100)
@given(PRIMES, scalars, scalars, scalars)
def test_scalar_field_axioms(q, x, y, z):
    a, b, c = Scalar(*x, q), Scalar(*y, q), Scalar(*z, q)
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a - a == 0
    if a:
        assert a * a.inverse() == 1
        assert (b / a) * a == b


@pytest.mark.parametrize("q", [2, 3, 5])
def test_v_squares_to_q(q):
    v = Scalar.v_power(1, q)
    assert v * v == q
    assert Scalar.v_power(-3, q) * v**3 == 1
    assert Scalar.v_power(4, q) == q * q
    assert v + v.inverse() == Scalar(0, Fraction(q + 1, q), q)


def test_scalar_json_round_trip_and_mixing():
    s = Scalar(Fraction(-3, 4), Fraction(5, 2), 3)
    assert s.to_json() == {"a": "-3/4", "b": "5/2"}
    assert Scalar.from_json(s.to_json(), 3) == s
    with pytest.raises(ValueError):
        Scalar(1, 0, 2) + Scalar(1, 0, 3)
    with pytest.raises(ZeroDivisionError):
        Scalar(0, 0, 2).inverse()
