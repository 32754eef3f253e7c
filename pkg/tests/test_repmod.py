import numpy as np
import pytest

from stabmod.dvr import ring_make
from stabmod.errors import PrecisionError
from stabmod.groups import group_from_spec, sylow_subgroup
from stabmod.linalg import Mat
from stabmod.repmod import (
    GMap,
    cosyzygy,
    direct_sum,
    dual,
    hom_space,
    jordan_block,
    module_regular,
    module_trivial,
    pim_modules,
    projective_cover,
    reduce,
    restrict,
    simple_modules,
    syzygy,
)
from stabmod.stable import decompose, is_isomorphic, is_weakly_injective

C2 = group_from_spec("C2")
C3 = group_from_spec("C3")
S3 = group_from_spec("S3")


def test_regular_module():
    r = ring_make(2, 1, 6)
    P = module_regular(r, C2, 6)
    assert P.rank == 2 and P.trust == 6
    assert P.rho[0].to_coeffs() == [[0, 1], [1, 0]]
    P3 = module_regular(ring_make(3, 1, 4), C3)
    assert int(P3.rho[0].a[0].trace()) == 0


def test_trivial_module_and_reduction():
    r = ring_make(3, 2, 3)
    O = module_trivial(r, C3)
    assert O.rank == 1 and O.is_lattice
    k = reduce(O, 1)
    assert k.b == 1 and k.trust == 1
    assert is_isomorphic(dual(O), O)[0] is True
    assert reduce(O, r.N) == O
    with pytest.raises(PrecisionError):
        reduce(k, 2)


def test_dual_of_regular_and_double_dual():
    r = ring_make(3, 1, 4)
    for G in (C3, S3):
        P = module_regular(r, G)
        assert is_isomorphic(dual(P), P)[0] is True
        A = syzygy(module_trivial(r, G))
        assert is_isomorphic(dual(dual(A)), A)[0] is True


def test_restriction():
    r = ring_make(3, 1, 4)
    P = module_regular(r, S3)
    assert restrict(P, list(range(S3.n))).group.n == S3.n
    H = sylow_subgroup(S3, 3)
    parts = decompose(restrict(P, H))
    assert [X.rank for X in parts] == [3, 3]
    PH = module_regular(r, parts[0].group)
    assert all(is_isomorphic(X, PH)[0] is True for X in parts)


def test_hom_space_examples():
    r = ring_make(3, 1, 4)
    k = module_trivial(r, C3, 2)
    H = hom_space(k, k)
    assert len(H.basis) == 1 and H.factor_exponents == [2]
    O = module_trivial(r, C3)
    A = syzygy(O)
    assert hom_space(O, A).basis == []
    kk = module_trivial(r, C3, 1)
    assert len(hom_space(kk, module_regular(r, C3, 1)).basis) == 1


def test_hom_basis_intertwines():
    r = ring_make(2, 2, 3)
    G = group_from_spec("C2xC2")
    M = syzygy(module_trivial(r, G))
    for f in hom_space(M, M).basis:
        assert f.intertwines()


def test_projective_cover():
    r = ring_make(3, 1, 4)
    k = module_trivial(r, C3, 1)
    P, C = projective_cover(k)
    assert P.rank == 3
    assert is_isomorphic(P, module_regular(r, C3, 1))[0] is True
    Q = module_regular(r, S3)
    P, C = projective_cover(Q)
    assert P.rank == Q.rank


def test_pims_sum_to_regular():
    for p, G in [(2, S3), (3, S3), (2, group_from_spec("C6"))]:
        r = ring_make(p, 1, 3)
        pims = pim_modules(r, G, 1)
        simples = simple_modules(r, G)
        assert len(pims) == len(simples)
        total = 0
        for P, S in zip(pims, simples):
            mult = S.rank // len(hom_space(S, S).basis)
            total += P.rank * mult
        assert total == G.n


def test_syzygy_examples():
    r = ring_make(3, 1, 8)
    O = module_trivial(r, C3)
    A = syzygy(O)
    assert A.rank == 2
    L = syzygy(module_trivial(r, C3, 1))
    assert sorted(X.rank for X in decompose(L)) == [1, 2]
    assert is_isomorphic(L, direct_sum(O, A))[0] is True
    assert syzygy(module_regular(r, C3)).rank == 0


def test_cosyzygy_examples():
    r = ring_make(3, 1, 6)
    O = module_trivial(r, C3)
    assert is_isomorphic(cosyzygy(syzygy(O)), O)[0] is True
    B = cosyzygy(O)
    assert B.rank == 2
    assert is_isomorphic(syzygy(B), O)[0] is True
    assert cosyzygy(module_regular(r, C3)).rank == 0
    with pytest.raises(ValueError):
        cosyzygy(module_trivial(r, C3, 1))


@pytest.mark.parametrize("name,p,e", [("C2xC2", 2, 1), ("C4", 2, 2), ("S3", 3, 1), ("C3", 3, 2)])
def test_syzygy_cosyzygy_inverse(name, p, e):
    G = group_from_spec(name)
    r = ring_make(p, e, -(-(4 * e * (1 if p == 3 else 2) + 2) // e))
    O = module_trivial(r, G)
    for M in (O, syzygy(O)):
        assert is_isomorphic(cosyzygy(syzygy(M)), M)[0] is True
        assert is_isomorphic(syzygy(cosyzygy(M)), M)[0] is True


def test_regular_not_split_over_k():
    r = ring_make(2, 1, 2)
    P = module_regular(r, C2, 1)
    kk = module_trivial(r, C2, 1)
    assert is_isomorphic(P, direct_sum(kk, kk))[0] is False


def test_jordan_blocks():
    r = ring_make(3, 2, 3)
    J2 = jordan_block(r, C3, 2)
    assert J2.rank == 2 and not is_weakly_injective(J2)
    assert is_weakly_injective(jordan_block(r, C3, 3))


def test_rank_relations():
    r = ring_make(2, 1, 8)
    G = group_from_spec("C2xC2")
    k = module_trivial(r, G, 1)
    P, _ = projective_cover(k)
    assert syzygy(k, strip=False).rank == P.rank
    O = module_trivial(r, G)
    P, _ = projective_cover(O)
    assert syzygy(O, strip=False).rank == P.rank - O.rank
