import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from stabmod.dvr import ring_make
from stabmod.linalg import Mat, invariant_factors, kernel_basis, smith, solve

from conftest import RING_CONFIGS


def diag_of(ring, d, r, c):
    D = ring.zeros((r, c))
    for i, x in enumerate(d):
        D[:, i, i] = ring.pi_pow(x)
    return D


@st.composite
def matrices(draw, ring, max_dim=4):
    r = draw(st.integers(1, max_dim))
    c = draw(st.integers(1, max_dim))
    coeffs = draw(st.lists(st.integers(0, ring.p ** ring.m - 1), min_size=ring.e * r * c, max_size=ring.e * r * c))
    shifts = draw(st.lists(st.integers(0, 2), min_size=r * c, max_size=r * c))
    a = np.array(coeffs, dtype=np.int64).reshape(ring.e, r, c) * (ring.p ** np.array(shifts)).reshape(1, r, c)
    return Mat(ring, ring.canon(a))


def check_smith(A):
    ring = A.ring
    sf = smith(A)
    D = ring.matmul(ring.matmul(sf.U.a, A.a), sf.V.a)
    assert (D == diag_of(ring, sf.d, A.rows, A.cols)).all()
    assert list(sf.d) == sorted(sf.d)
    assert smith(sf.U).d == (0,) * A.rows
    assert smith(sf.V).d == (0,) * A.cols
    return sf


def test_smith_example_from_cokernel():
    r = ring_make(2, 1, 6)
    sf = check_smith(Mat.from_ints(r, [[1, 3], [3, 1]]))
    assert sf.d == (0, 3)


def test_smith_identity_and_zero():
    r = ring_make(3, 2, 3)
    assert smith(Mat.eye(r, 3)).d == (0, 0, 0)
    assert smith(Mat.zeros(r, 2, 3)).d == (r.N, r.N)


@pytest.mark.parametrize("cfg", RING_CONFIGS)
@given(data=st.data())
def test_smith_reconstruction(cfg, data):
    check_smith(data.draw(matrices(ring_make(*cfg))))


@pytest.mark.parametrize("cfg", RING_CONFIGS)
@given(data=st.data())
def test_smith_exponents_are_invariant(cfg, data):
    r = ring_make(*cfg)
    A = data.draw(matrices(r))
    P = smith(data.draw(matrices(r, 4).filter(lambda M: M.rows == A.rows))).U
    Q = smith(data.draw(matrices(r, 4).filter(lambda M: M.rows == A.cols))).U
    assert smith(P @ A @ Q).d == smith(A).d


@pytest.mark.parametrize("cfg", RING_CONFIGS)
@given(data=st.data())
def test_solve_constructed_systems(cfg, data):
    r = ring_make(*cfg)
    A = data.draw(matrices(r))
    x = data.draw(matrices(r, 4).filter(lambda M: M.rows == A.cols))
    b = A @ x
    y = solve(A, b)
    assert y is not None
    assert ((A @ y).a == b.a).all()


def test_solve_examples():
    r = ring_make(3, 1, 4)
    b = Mat.from_ints(r, [[2], [7]])
    assert (solve(Mat.eye(r, 2), b).a == b.a).all()
    r = ring_make(2, 2, 2)
    assert solve(Mat(r, r.pi_pow(1).reshape(r.e, 1, 1)), Mat.from_ints(r, [[1]])) is None


def test_kernel_examples():
    r = ring_make(2, 1, 6)
    K = kernel_basis(Mat.zeros(r, 2, 2))
    assert smith(K).d == (0, 0)
    K = kernel_basis(Mat.from_ints(r, [[4]]))
    assert K.rows == 1 and int(r.valuation(K.a)[0, 0]) == 4
    K = kernel_basis(Mat.from_ints(r, [[1, 3], [3, 1]]))
    assert K.rows == 1
    assert int(r.valuation(K.a).min()) == 3
    assert (K @ Mat.from_ints(r, [[1, 3], [3, 1]])).is_zero()


def test_kernel_brute_force():
    """Every solution of x A = 0 over a tiny ring lies in the span of kernel_basis."""
    rng = np.random.default_rng(3)
    for cfg in [(2, 1, 3), (2, 3, 1), (2, 1, 2)]:
        r = ring_make(*cfg)
        elems = list(itertools.product(*[range(int(m)) for m in r.mods]))
        for _ in range(6):
            rows, cols = rng.integers(1, 3, 2)
            A = Mat(r, r.canon(rng.integers(0, 8, (r.e, rows, cols)) * rng.integers(0, 2, (1, rows, cols))))
            K = kernel_basis(A)
            assert (K @ A).is_zero()
            for xs in itertools.product(elems, repeat=int(rows)):
                x = Mat(r, np.array(xs, dtype=np.int64).T.reshape(r.e, 1, int(rows)))
                if not (x @ A).is_zero():
                    continue
                sol = solve(K.T, x.T)
                assert sol is not None


def test_invariant_factors_examples():
    r = ring_make(2, 1, 6)
    rels = Mat(r, diag_of(r, [1, 3], 2, 2))
    assert invariant_factors(Mat.eye(r, 2), rels) == [1, 3]
    assert invariant_factors(Mat.eye(r, 2), Mat.eye(r, 2)) == []


def test_invariant_factors_by_counting():
    """The quotient's order equals p^(sum of exponents) for e = 1 by element enumeration."""
    r = ring_make(2, 1, 3)
    rng = np.random.default_rng(5)
    for _ in range(10):
        R = Mat(r, r.canon(rng.integers(0, 8, (1, 2, 2))))
        elems = {tuple(int(c) % 8 for c in (a * R.a[0, 0] + b * R.a[0, 1]))
                 for a in range(8) for b in range(8)}
        order = 64 // len(elems)
        assert 2 ** sum(invariant_factors(Mat.eye(r, 2), R)) == order
