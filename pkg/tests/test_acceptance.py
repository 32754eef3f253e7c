"""One test per acceptance criterion; each records a pass/fail line for the summary."""
import time
from contextlib import contextmanager

from conftest import ACCEPTANCE
from stabmod import arlab
from stabmod.arlab import CONFIRMED, REFUTED
from stabmod.cli import run_sweep
from stabmod.dvr import ring_make
from stabmod.groups import group_from_spec
from stabmod.linalg import smith
from stabmod.repmod import jordan_block, module_trivial
from stabmod.stable import decompose, stable_end_algebra
from stabmod.sweep import SweepConfig, build_catalog, default_precision, suite_adjunction


@contextmanager
def criterion(num, title, limit):
    t0 = time.perf_counter()
    ok = False
    try:
        yield
        secs = time.perf_counter() - t0
        ok = secs < limit
        assert ok, f"took {secs:.1f} s, limit {limit} s"
    finally:
        ACCEPTANCE.append((num, title, ok, time.perf_counter() - t0))


def test_c1_example_cokernel():
    with criterion(1, "example cokernel over C2, p=2, m=6", 1.0):
        P, alpha, X = arlab.example_cokernel(6)
        assert list(smith(alpha).d) == [0, 3]
        assert (X.rank, X.b) == (1, 3)
        assert int(X.rho[0].a[0, 0, 0]) % 8 == 5
        assert arlab.in_kernel_of_R(X) is True
        assert arlab.is_weakly_injective(X) is False
        assert arlab.verify_example_cokernel(6).verdict == CONFIRMED


def test_c2_heller_reiner():
    with criterion(2, "Heller-Reiner for C3, e=1, m=8", 10.0):
        r, G = ring_make(3, 1, 8), group_from_spec("C3")
        k = module_trivial(r, G, 1)
        parts = decompose(arlab.heller_lattice(k))
        assert sorted(X.rank for X in parts) == [1, 2]
        for X in parts:
            kr = arlab.is_knorr(X)
            assert kr.is_knorr and kr.a == 1
            assert stable_end_algebra(X).dim == 1
        rep = arlab.verify_heller_reiner(r, G)
        assert rep.verdict == CONFIRMED and rep.computed_values["stable_end_RS_dim"] == 2
        # cross-simple needs two simples in one block: S3 at p = 3 has trivial and sign
        S3 = group_from_spec("S3")
        rep = arlab.verify_simple_heads(ring_make(3, 1, 8), S3)
        dims = rep.computed_values["stable_hom_dims"]
        assert rep.verdict == CONFIRMED
        assert sorted(dims.values()) == [0, 0, 2, 2]


def test_c3_ramified_c3():
    with criterion(3, "ramified C3, p=3, e=2, m=4", 60.0):
        r, G = ring_make(3, 2, 4), group_from_spec("C3")
        for length in (1, 2):
            M = jordan_block(r, G, length)
            assert arlab.verify_heller_indecomposable(M).verdict == CONFIRMED
            rk = arlab.verify_rk(M)
            assert rk.verdict == CONFIRMED
            assert arlab.rk_witness(M) is not None
            te = arlab.trivial_extension_report(M)
            assert te.dims[0] == 2 * te.dims[1]
            assert arlab.verify_trivial_extension(M).verdict == CONFIRMED
            assert arlab.verify_reduced_ar(M).verdict == CONFIRMED


def test_c4_unramified_contrast():
    with criterion(4, "unramified contrast for C5, length-2 module", 60.0):
        r, G = default_precision(5, 1, group_from_spec("C5")), group_from_spec("C5")
        rep = arlab.verify_unramified_contrast(jordan_block(r, G, 2))
        assert rep.computed_values["RM_is_trivial_plus_augmentation"] is True
        assert rep.computed_values["reduction_is_M_plus_cosyzygy"] is False
        assert rep.verdict == CONFIRMED


def test_c5_knorr_middle_term():
    with criterion(5, "AR middle term of Knorr trivial lattices", 120.0):
        for name, p, e, a in [("C2xC2", 2, 1, 2), ("C4", 2, 1, 2), ("C3", 3, 2, 2), ("C3", 3, 1, 1)]:
            G = group_from_spec(name)
            O = module_trivial(default_precision(p, e, G), G)
            rep = arlab.ar_middle_term_knorr(O)
            assert rep.computed_values["exponent"] == a, name
            assert rep.verdict == CONFIRMED, (name, e)
            if a == 1:
                assert rep.computed_values["middle_indecomposable"] is True
                assert rep.computed_values["middle_projective"] is True


def test_c6_adjunction_pairs():
    with criterion(6, "adjunction over at least 20 catalog pairs", 600.0):
        reports = []
        cfg = SweepConfig()
        for name, p, e in [("C2", 2, 1), ("C2", 2, 2), ("C3", 3, 1), ("C3", 3, 2), ("C4", 2, 1)]:
            G = group_from_spec(name)
            cat = build_catalog(default_precision(p, e, G), G)
            reports += [rep for rep in suite_adjunction(cat, cfg) if rep is not None]
        assert len(reports) >= 20
        assert all(rep.verdict == CONFIRMED for rep in reports)
        assert all(rep.computed_values["factors_MX"] == rep.computed_values["factors_MRX"] for rep in reports)


def test_c7_default_sweep():
    with criterion(7, "structural suites over the default sweep", 900.0):
        cfg = SweepConfig()
        doc = run_sweep(cfg)
        assert len(doc["cells"]) == len(cfg.cells()) == 30
        errors = [c["cell"] for c in doc["cells"] if "error" in c]
        refuted = [(c["cell"], s, r["claim"]) for c in doc["cells"] for s, reps in c["suites"].items()
                   for r in reps if r["verdict"] == REFUTED]
        assert not errors and not refuted, (errors, refuted)
