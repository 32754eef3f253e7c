import itertools

import numpy as np
import pytest

from stabmod.fdalg import MatAlgebra, nullspace, rank_mod, solve_mod
from stabmod.groups import group_from_spec


def regular_rep(G, p):
    mats = []
    for g in range(G.n):
        M = np.zeros((G.n, G.n), dtype=np.int64)
        for h in range(G.n):
            M[G.mul[g, h], h] = 1
        mats.append(M)
    return MatAlgebra(mats, p)


def brute_radical_dim(A):
    """x lies in J(A) iff x a is nilpotent for every a; count such x."""
    p, d, n = A.p, A.dim, A.n
    elems = [A.elem(c) for c in itertools.product(range(p), repeat=d)]

    def nilpotent(x):
        return not _pow(x, n, p).any()

    count = sum(1 for x in elems if all(nilpotent((x @ a) % p) for a in elems))
    return round(np.log(count) / np.log(p))


def _pow(x, k, p):
    out = np.eye(x.shape[0], dtype=np.int64)
    for _ in range(k):
        out = (out @ x) % p
    return out


@pytest.mark.parametrize("name,p", [("C2", 2), ("C3", 3), ("C2xC2", 2), ("S3", 2), ("C4", 2)])
def test_radical_matches_brute_force(name, p):
    A = regular_rep(group_from_spec(name), p)
    assert len(A.radical()) == brute_radical_dim(A)


@pytest.mark.parametrize("name,p,local", [("C4", 2, True), ("C2xC2", 2, True), ("S3", 2, False), ("S3", 3, False), ("C6", 3, False)])
def test_locality(name, p, local):
    assert regular_rep(group_from_spec(name), p).is_local() == local


@pytest.mark.parametrize("name,p,count", [("S3", 2, 3), ("S3", 3, 2), ("C6", 3, 2), ("C6", 2, 2), ("C3", 3, 1)])
def test_primitive_idempotents(name, p, count):
    A = regular_rep(group_from_spec(name), p)
    es = A.primitive_idempotents()
    assert len(es) == count
    total = sum(es) % p
    assert (total == A.one).all()
    for e, f in itertools.product(es, repeat=2):
        prod = (e @ f) % p
        assert (prod == (e if e is f else 0)).all()


def test_mod_p_linear_algebra():
    rng = np.random.default_rng(0)
    for _ in range(50):
        M = rng.integers(0, 3, (4, 5))
        N = nullspace(M, 3)
        assert rank_mod(M, 3) + len(N) == 5
        assert not ((M @ N.T) % 3).any()
        x = rng.integers(0, 3, 5)
        b = (M @ x) % 3
        y = solve_mod(M, b, 3)
        assert y is not None and not ((M @ y - b) % 3).any()
