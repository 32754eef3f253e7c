import numpy as np
import pytest

from stabmod.arlab import cokernel_module, functor_R, heller_lattice, pullback_lattice
from stabmod.dvr import ring_make
from stabmod.groups import group_from_spec
from stabmod.linalg import Mat
from stabmod.repmod import (
    GMap,
    direct_sum,
    hom_space,
    jordan_block,
    module_regular,
    module_trivial,
    reduce,
    syzygy,
)
from stabmod.stable import (
    ar_sequence,
    decompose,
    end_algebra,
    exponent,
    is_indecomposable,
    is_isomorphic,
    is_weakly_injective,
    projective_homs,
    stable_hom,
    trace_map,
)

C2 = group_from_spec("C2")
C3 = group_from_spec("C3")
R8 = ring_make(3, 1, 8)


def test_trace_map_examples():
    r = ring_make(2, 1, 6)
    O = module_trivial(r, C2)
    T = trace_map(Mat.from_ints(r, [[1]]), O, O)
    assert T.F.to_coeffs() == [[2]]
    A = syzygy(module_trivial(R8, C3))
    for f in hom_space(A, A).basis:
        assert (trace_map(f.F, A, A).F.a == f.F.scale(R8.scalar(3)).a).all()


def test_trace_map_intertwines():
    r = ring_make(2, 2, 3)
    M = syzygy(module_trivial(r, group_from_spec("C4")))
    rng = np.random.default_rng(0)
    w = r
    F = Mat(w, w.canon(rng.integers(0, 50, (w.e, M.rank, M.rank))))
    assert trace_map(F, M, M).intertwines()


def test_projective_homs_examples():
    P = module_regular(R8, C3)
    assert sorted(projective_homs(P, P).factor_exponents) == sorted(hom_space(P, P).factor_exponents)
    O = module_trivial(R8, C3)
    ph = projective_homs(O, O)
    assert len(ph.basis) == 1
    assert int(R8.valuation(ph.basis[0].F.a)[0, 0]) == 1


def test_stable_hom_examples():
    O = module_trivial(R8, C3)
    A = syzygy(O)
    assert stable_hom(O, O).factor_exponents == [1]
    assert stable_hom(O, A).factor_exponents == []
    S = module_trivial(R8, C3, 1)
    RS = functor_R(S).module
    assert stable_hom(RS, RS).length == 2


def test_exponents():
    assert exponent(module_regular(R8, C3)) == 0
    assert exponent(module_trivial(R8, C3)) == 1
    r = ring_make(3, 2, 4)
    assert exponent(module_trivial(r, C3)) == 2
    for length in (1, 2):
        assert exponent(heller_lattice(jordan_block(r, C3, length))) == 1


def test_weak_injectivity():
    assert is_weakly_injective(module_regular(R8, C3))
    assert not is_weakly_injective(module_trivial(R8, C3, 1))
    r = ring_make(2, 1, 6)
    P = module_regular(r, C2)
    X = cokernel_module(P, Mat.from_ints(r, [[1, 3], [3, 1]]))
    assert not is_weakly_injective(X)


def test_end_algebras():
    assert end_algebra(module_trivial(R8, C3, 2)).is_local
    E = end_algebra(module_regular(R8, C3, 1))
    assert E.is_local and len(E.jacobson_basis) == 2
    O = module_trivial(R8, C3)
    assert not end_algebra(direct_sum(O, syzygy(O))).is_local


def test_indecomposability():
    assert is_indecomposable(module_trivial(R8, C3))
    assert not is_indecomposable(heller_lattice(module_trivial(R8, C3, 1)))
    r = ring_make(3, 2, 4)
    for length in (1, 2):
        assert is_indecomposable(heller_lattice(jordan_block(r, C3, length)))


def test_decompose_examples():
    parts = decompose(heller_lattice(module_trivial(R8, C3, 1)))
    assert sorted(X.rank for X in parts) == [1, 2]
    assert len(decompose(module_regular(R8, C3, 1))) == 1
    r = ring_make(2, 1, 10)
    V = group_from_spec("C2xC2")
    O = module_trivial(r, V)
    a = exponent(O)
    assert len(decompose(reduce(O, a))) <= 2


def test_decompose_is_seed_independent():
    r = ring_make(2, 1, 8)
    G = group_from_spec("C2xC2")
    O = module_trivial(r, G)
    M = direct_sum(O, syzygy(O), module_regular(r, G))
    a = decompose(M, seed=1)
    b = decompose(M, seed=7)
    assert sorted(X.rank for X in a) == sorted(X.rank for X in b)
    for X in a:
        assert any(X.rank == Y.rank and is_isomorphic(X, Y)[0] is True for Y in b)


def test_stable_hom_invariant_under_projective_summands():
    O = module_trivial(R8, C3)
    A = syzygy(O)
    P = module_regular(R8, C3)
    base = sorted(stable_hom(O, direct_sum(O, A)).factor_exponents)
    assert sorted(stable_hom(direct_sum(O, P), direct_sum(O, A)).factor_exponents) == base


def test_syzygy_preserves_exponent():
    r = ring_make(2, 2, 8)
    G = group_from_spec("C4")
    O = module_trivial(r, G)
    assert exponent(syzygy(O)) == exponent(O)


def test_trace_image_is_ideal():
    O = module_trivial(R8, C3)
    L = heller_lattice(module_trivial(R8, C3, 1))
    S = stable_hom(L, L)
    ph = projective_homs(L, L)
    H = hom_space(L, L)
    for p in ph.basis:
        for f in H.basis:
            w = S.hom.ring
            assert S.is_zero(f.F.reduce(w.N) @ p.F.reduce(w.N))
            assert S.is_zero(p.F.reduce(w.N) @ f.F.reduce(w.N))


def test_ar_sequence_knorr():
    r = ring_make(2, 1, 10)
    G = group_from_spec("C2xC2")
    O = module_trivial(r, G)
    a = exponent(O)
    w = hom_space(O, O).ring
    soc = GMap(O, O, Mat(w, w.pi_pow(a - 1).reshape(w.e, 1, 1)))
    ar = ar_sequence(O, soc)
    assert is_isomorphic(ar.middle, pullback_lattice(O, a - 1))[0] is True
    assert is_isomorphic(ar.middle, direct_sum(ar.left, O))[0] is False
    with pytest.raises(ValueError):
        ar_sequence(O, GMap(O, O, Mat(w, w.pi_pow(a).reshape(w.e, 1, 1))))
