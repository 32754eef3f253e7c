import numpy as np
import pytest

from stabmod import arlab
from stabmod.arlab import (
    CONFIRMED,
    REFUTED,
    counit_is_surjective,
    example_cokernel,
    functor_R,
    heller_lattice,
    in_kernel_of_R,
    is_knorr,
    pullback_lattice,
    rk_witness,
    trivial_extension_report,
)
from stabmod.dvr import ring_make
from stabmod.groups import group_from_spec
from stabmod.linalg import smith
from stabmod.repmod import (
    cosyzygy,
    cosyzygy_b,
    direct_sum,
    jordan_block,
    module_regular,
    module_trivial,
    projective_cover,
    reduce,
    simple_modules,
    syzygy,
)
from stabmod.stable import decompose, exponent, is_indecomposable, is_isomorphic

C3 = group_from_spec("C3")
V4 = group_from_spec("C2xC2")
R_HR = ring_make(3, 1, 8)
R_RAM = ring_make(3, 2, 4)


def test_example_cokernel():
    P, alpha, X = example_cokernel(6)
    assert smith(alpha).d == (0, 3)
    assert X.rank == 1 and X.b == 3
    assert X.rho[0].to_coeffs() == [[5]]
    assert in_kernel_of_R(X)


def test_R_on_projectives_is_zero():
    P = module_regular(R_HR, C3, 1)
    assert functor_R(P).module.rank == 0
    assert in_kernel_of_R(P)


def test_R_of_trivial_c3():
    k = module_trivial(R_HR, C3, 1)
    res = functor_R(k)
    assert counit_is_surjective(res)
    assert res.counit.intertwines()
    P, _ = projective_cover(res.module)
    Pk, _ = projective_cover(k)
    assert is_isomorphic(reduce(P, 1), direct_sum(Pk, Pk))[0] is True


def test_heller_reiner_split():
    L = heller_lattice(module_trivial(R_HR, C3, 1))
    parts = decompose(L)
    assert sorted(X.rank for X in parts) == [1, 2]
    for X in parts:
        kr = is_knorr(X)
        assert kr.is_knorr and kr.a == 1


def test_knorr_of_trivial():
    r = ring_make(2, 1, 10)
    kr = is_knorr(module_trivial(r, V4))
    assert kr.is_knorr and kr.a == 2


def test_pullback_lattice_reduction_splits():
    r = ring_make(2, 1, 10)
    O = module_trivial(r, V4)
    B = pullback_lattice(O, 1)
    assert B.rank == O.rank + syzygy(O).rank
    assert is_isomorphic(reduce(B, 1), direct_sum(reduce(O, 1), reduce(syzygy(O), 1)))[0] is True


@pytest.mark.parametrize("length", [1, 2])
def test_ramified_rk_and_trivial_extension(length):
    M = jordan_block(R_RAM, C3, length)
    wit = rk_witness(M)
    assert wit is not None
    p = M.ring.p
    for key in ("M", "cosyzygy"):
        pi = wit[key]["proj"] @ wit[key]["iota"]
        n = wit[key]["module"].rank
        assert (pi.a[0] % p == np.eye(n, dtype=int)).all()
    assert wit["cosyzygy"]["module"].rank == cosyzygy_b(M).rank
    rep = trivial_extension_report(M, wit)
    assert rep.ok and rep.dims == (2, 1)


@pytest.mark.parametrize("length", [1, 2])
def test_ramified_verifiers(length):
    M = jordan_block(R_RAM, C3, length)
    for fn in (arlab.verify_heller_indecomposable, arlab.verify_rk, arlab.verify_trivial_extension,
               arlab.verify_reduced_ar, arlab.record_offdiagonal_blocks):
        assert fn(M).verdict == CONFIRMED, fn.__name__


def test_unramified_contrast_c5():
    r = ring_make(5, 1, 4)
    M = jordan_block(r, group_from_spec("C5"), 2)
    rep = arlab.verify_unramified_contrast(M)
    assert rep.verdict == CONFIRMED
    assert rep.computed_values["reduction_is_M_plus_cosyzygy"] is False


def test_rk_fails_unramified():
    r = ring_make(5, 1, 4)
    M = jordan_block(r, group_from_spec("C5"), 2)
    assert rk_witness(M) is None
    assert arlab.verify_rk(M).verdict == REFUTED


@pytest.mark.parametrize("group,p,e,m", [("C2xC2", 2, 1, 10), ("C4", 2, 1, 10), ("C3", 3, 2, 5), ("C3", 3, 1, 8)])
def test_knorr_middle_term(group, p, e, m):
    O = module_trivial(ring_make(p, e, m), group_from_spec(group))
    assert arlab.ar_middle_term_knorr(O).verdict == CONFIRMED


def test_adjunction_pairs():
    O = module_trivial(R_RAM, C3)
    for M in (O, syzygy(O), cosyzygy(O)):
        for X in (jordan_block(R_RAM, C3, 1), jordan_block(R_RAM, C3, 2), reduce(O, 2)):
            assert arlab.verify_adjunction(M, X).verdict == CONFIRMED


def test_structural_verifiers():
    r = ring_make(2, 1, 10)
    O = module_trivial(r, V4)
    A = syzygy(O)
    a = exponent(O)
    for j in range(1, a + 2):
        assert arlab.verify_pullback_ladder(O, j).verdict == CONFIRMED
    assert arlab.verify_reduction_injective(O, A).verdict == CONFIRMED
    assert arlab.verify_reduction_at_exponent(O).verdict == CONFIRMED
    assert arlab.verify_aindec(O, 1).verdict == CONFIRMED
    assert arlab.verify_vertex_exponent(O).verdict == CONFIRMED
    kg = [S for S in simple_modules(r, V4)]
    assert arlab.verify_exponent_one(O, kg).verdict == CONFIRMED


def test_simple_heads_cross_simples():
    rep = arlab.verify_simple_heads(ring_make(3, 1, 4), group_from_spec("S3"))
    assert rep.verdict == CONFIRMED
    dims = rep.computed_values["stable_hom_dims"]
    assert sorted(dims.values()) == [0, 0, 2, 2]


def test_simple_heads_non_split_simple():
    rep = arlab.verify_simple_heads(ring_make(2, 1, 6), group_from_spec("C6"))
    assert rep.verdict == CONFIRMED
    assert sorted(rep.computed_values["end_dims"].values()) == [1, 2]


def test_kg_module_verifiers_skip_projectives():
    r = ring_make(2, 1, 6)
    S = [X for X in simple_modules(r, group_from_spec("S3")) if X.rank == 2][0]
    assert arlab.verify_heller_projective_free(S) is None
    assert arlab.verify_counit_surjective(S) is None
    k = module_trivial(R_RAM, C3, 1)
    assert arlab.verify_heller_projective_free(k).verdict == CONFIRMED
    assert arlab.verify_counit_surjective(k).verdict == CONFIRMED
    assert arlab.verify_not_in_kernel(k).verdict == CONFIRMED


def test_heller_lattice_is_indecomposable_when_ramified():
    for length in (1, 2):
        assert is_indecomposable(heller_lattice(jordan_block(R_RAM, C3, length)))
