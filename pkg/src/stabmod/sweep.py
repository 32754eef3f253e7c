"""Catalogs of small modules and the property suites run over them.

A *cell* is one choice of (p, e, group).  Its catalog holds the
non-projective indecomposable kG-modules and lattices that the suites
range over; every suite returns a list of reports.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from . import arlab
from .arlab import INDETERMINATE, Report
from .dvr import RingSpec, ring_make
from .errors import Indeterminate, PrecisionError
from .groups import GroupTable, group_from_spec
from .repmod import (
    GModule,
    cosyzygy,
    cosyzygy_b,
    jordan_block,
    module_trivial,
    nu_group,
    reduce,
    simple_modules,
    syzygy,
    syzygy_b,
)
from .stable import _indec_iso, decompose, exponent, is_weakly_injective

__all__ = [
    "SweepConfig",
    "Cell",
    "default_precision",
    "build_catalog",
    "run_cell",
    "SUITES",
    "DEFAULT_GROUPS",
]

# all groups of order <= 9 whose order is divisible by 2 or 3
DEFAULT_GROUPS = [
    "C2", "C3", "C4", "C2xC2", "S3", "C6", "C8", "C2xC4", "C2xC2xC2", "D8", "Q8", "C9", "C3xC3",
]


MAX_RANK = 32  # largest module rank any sweep check may construct


@dataclass
class SweepConfig:
    primes: list = field(default_factory=lambda: [2, 3])
    ramification: list = field(default_factory=lambda: [1, 2])
    max_order: int = 9
    groups: list | None = None  # None means DEFAULT_GROUPS
    suites: list | None = None  # None means every suite
    precision_bump: int = 0
    seed: int = 0
    workers: int = 0  # 0: one per CPU
    max_lattices: int = 6
    max_pairs: int = 12
    max_lattice_rank: int | None = None  # None means |G|

    @classmethod
    def from_json(cls, d: dict) -> "SweepConfig":
        known = set(cls.__dataclass_fields__)
        bad = set(d) - known
        if bad:
            raise ValueError(f"unknown sweep keys: {sorted(bad)}")
        return cls(**d)

    def cells(self) -> list:
        names = DEFAULT_GROUPS if self.groups is None else self.groups
        out = []
        for name in names:
            G = group_from_spec(name)
            if G.n > self.max_order:
                continue
            for p in self.primes:
                if G.n % p:
                    continue
                for e in self.ramification:
                    out.append(Cell(p, e, name))
        return out


@dataclass(frozen=True)
class Cell:
    p: int
    e: int
    group: str

    @property
    def name(self) -> str:
        return f"{self.group}/p={self.p}/e={self.e}"


def default_precision(p: int, e: int, G: GroupTable, bump: int = 0) -> RingSpec:
    """Enough digits for Heller lattices, their summands and one more syzygy."""
    n = nu_group(ring_make(p, e, 1), G)
    N = 4 * n + 2
    return ring_make(p, e, -(-N // e) + bump)


@dataclass
class Catalog:
    ring: RingSpec
    group: GroupTable
    kg: list
    lattices: list
    torsion: list

    def summary(self) -> dict:
        return {
            "ring": self.ring.to_json(),
            "group": self.group.name,
            "kg_modules": [[X.name, X.rank] for X in self.kg],
            "lattices": [[X.name, X.rank] for X in self.lattices],
            "torsion_modules": [[X.name, X.b, X.rank] for X in self.torsion],
        }


def _add_new(found: list, X: GModule, cap: int | None = None) -> None:
    if X.rank == 0 or (cap is not None and len(found) >= cap):
        return
    for Y in found:
        if Y.rank == X.rank and Y.b == X.b and _indec_iso(X, Y) is not None:
            return
    found.append(X)


def kg_catalog(ring: RingSpec, G: GroupTable) -> list:
    simples = [S for S in simple_modules(ring, G) if not is_weakly_injective(S)]
    found: list = []
    for S in simples:
        _add_new(found, S)
    for S in simples:
        _add_new(found, syzygy_b(S).with_name(f"Omega_k({S.name})"))
        _add_new(found, cosyzygy_b(S).with_name(f"Omega_k^-1({S.name})"))
    if len(G.gens) == 1 and G.p_part(ring.p) == G.n:
        for length in range(2, G.n):
            _add_new(found, jordan_block(ring, G, length))
    return found


def lattice_catalog(ring: RingSpec, G: GroupTable, kg: list, cap: int, max_rank: int | None = None) -> list:
    max_rank = G.n if max_rank is None else max_rank
    found: list = []
    O = module_trivial(ring, G).with_name("O")
    if not is_weakly_injective(O):
        _add_new(found, O, cap)
        _add_new(found, syzygy(O).with_name("Omega(O)"), cap)
        _add_new(found, cosyzygy(O).with_name("Omega^-1(O)"), cap)
    for S in kg:
        for i, X in enumerate(decompose(arlab.heller_lattice(S))):
            if X.rank > max_rank:
                continue
            _add_new(found, X.with_name(f"Omega({S.name})[{i}]"), cap)
    return found


def build_catalog(ring: RingSpec, G: GroupTable, max_lattices: int = 6, max_rank: int | None = None) -> Catalog:
    kg = kg_catalog(ring, G)
    lat = lattice_catalog(ring, G, kg, max_lattices, max_rank)
    torsion = list(kg)
    for L in lat:
        if exponent(L) >= 2:
            torsion.append(reduce(L, 2).with_name(f"{L.name}/pi^2"))
    return Catalog(ring, G, kg, lat, torsion)


# -- suites -------------------------------------------------------------------------------------

def _guard(fn, *args) -> Report | None:
    """Run a verifier, turning precision or search give-ups into INDETERMINATE reports."""
    try:
        return fn(*args)
    except (PrecisionError, Indeterminate) as exc:
        name = getattr(fn, "__name__", "check")
        return Report(name, "give-up", {"args": [getattr(a, "name", repr(a)) for a in args]},
                      {"error": f"{type(exc).__name__}: {exc}"}, INDETERMINATE)


def suite_adjunction(cat: Catalog, cfg: SweepConfig) -> list:
    pairs = list(itertools.product(cat.lattices, cat.torsion))
    out = []
    for M, X in pairs[: max(cfg.max_pairs, 0) * 4]:
        out.append(_guard(arlab.verify_adjunction, M, X))
    return out


def suite_pullback_ladder(cat: Catalog, cfg: SweepConfig) -> list:
    out = []
    for M in cat.lattices:
        a = exponent(M)
        for j in range(1, a + 2):
            out.append(_guard(arlab.verify_pullback_ladder, M, j))
    return out


def suite_reduction(cat: Catalog, cfg: SweepConfig) -> list:
    pairs = list(itertools.product(cat.lattices, repeat=2))[: cfg.max_pairs]
    return [_guard(arlab.verify_reduction_injective, M, N) for M, N in pairs]


def suite_reduction_at_exponent(cat: Catalog, cfg: SweepConfig) -> list:
    return [_guard(arlab.verify_reduction_at_exponent, M) for M in cat.lattices]


def suite_exponent_one(cat: Catalog, cfg: SweepConfig) -> list:
    try:
        summands = arlab.summands_of_R(cat.kg)
    except (PrecisionError, Indeterminate):
        summands = None
    return [_guard(arlab.verify_exponent_one, M, cat.kg, summands) for M in cat.lattices]


def suite_split_mod_pi(cat: Catalog, cfg: SweepConfig) -> list:
    return [_guard(arlab.verify_split_mod_pi, M) for M in cat.lattices]


def suite_heads(cat: Catalog, cfg: SweepConfig) -> list:
    return [_guard(arlab.verify_simple_heads, cat.ring, cat.group)]


def suite_vertex(cat: Catalog, cfg: SweepConfig) -> list:
    return [_guard(arlab.verify_vertex_exponent, M) for M in cat.lattices]


def suite_precision(cat: Catalog, cfg: SweepConfig) -> list:
    r = cat.ring

    def build(ring):
        kg = kg_catalog(ring, cat.group)
        return lattice_catalog(ring, cat.group, kg, cfg.max_lattices)

    hi = ring_make(r.p, r.e, r.m + 1)
    return [_guard(arlab.verify_precision_stability, build, r, hi)]


def suite_kg(cat: Catalog, cfg: SweepConfig) -> list:
    out = []
    for M in cat.kg:
        out.append(_guard(arlab.verify_heller_projective_free, M))
        out.append(_guard(arlab.verify_counit_surjective, M))
        out.append(_guard(arlab.verify_not_in_kernel, M))
    return out


def suite_ramified(cat: Catalog, cfg: SweepConfig) -> list:
    if cat.ring.e < 2:
        return []
    out = []
    for M in cat.kg:
        out.append(_guard(arlab.verify_heller_indecomposable, M))
        # the reduced almost split middle term has three times the Heller rank
        if 3 * arlab.heller_lattice(M).rank > MAX_RANK:
            continue
        out.append(_guard(arlab.verify_rk, M))
        out.append(_guard(arlab.verify_trivial_extension, M))
        out.append(_guard(arlab.verify_reduced_ar, M))
        out.append(_guard(arlab.record_offdiagonal_blocks, M))
    return out


def suite_aindec(cat: Catalog, cfg: SweepConfig) -> list:
    out = []
    for M in cat.lattices:
        a = exponent(M)
        for b in range(1, a):
            out.append(_guard(arlab.verify_aindec, M, b))
    return out


def suite_knorr(cat: Catalog, cfg: SweepConfig) -> list:
    out = []
    for M in cat.lattices:
        try:
            kr = arlab.is_knorr(M)
        except (PrecisionError, Indeterminate):
            continue
        if kr.is_knorr:
            out.append(_guard(arlab.ar_middle_term_knorr, M))
    return out


def suite_cyclic_prime(cat: Catalog, cfg: SweepConfig) -> list:
    G, r = cat.group, cat.ring
    if r.e != 1 or G.n != r.p or len(G.gens) != 1:
        return []
    return [_guard(arlab.verify_heller_reiner, r, G)]


SUITES = {
    "adjunction": suite_adjunction,
    "pullback-ladder": suite_pullback_ladder,
    "reduction-injective": suite_reduction,
    "reduction-at-exponent": suite_reduction_at_exponent,
    "exponent-one": suite_exponent_one,
    "split-mod-pi": suite_split_mod_pi,
    "simple-heads": suite_heads,
    "sylow-exponent": suite_vertex,
    "precision-stability": suite_precision,
    "kg-modules": suite_kg,
    "ramified": suite_ramified,
    "aindec": suite_aindec,
    "knorr-middle-term": suite_knorr,
    "cyclic-prime-order": suite_cyclic_prime,
}


def run_cell(cell: Cell, cfg: SweepConfig) -> dict:
    """Build the catalog of one cell and run the selected suites on it."""
    from .stable import SEED

    SEED.set(cfg.seed)
    G = group_from_spec(cell.group)
    ring = default_precision(cell.p, cell.e, G, cfg.precision_bump)
    try:
        cat = build_catalog(ring, G, cfg.max_lattices, cfg.max_lattice_rank)
    except (PrecisionError, Indeterminate) as exc:
        return {"cell": cell.name, "error": f"{type(exc).__name__}: {exc}", "suites": {}}
    names = list(SUITES) if cfg.suites is None else cfg.suites
    suites = {}
    for name in names:
        if name not in SUITES:
            raise ValueError(f"unknown suite {name!r}")
        reports = [r for r in SUITES[name](cat, cfg) if r is not None]
        suites[name] = [r.to_json() for r in reports]
    return {"cell": cell.name, "catalog": cat.summary(), "suites": suites}
