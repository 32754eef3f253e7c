"""Declarative scenarios: a ring, a group, named module constructions and checks.

A scenario is a JSON object::

    {"name": ..., "ring": {"p": 3, "e": 2, "m": 4}, "group": "C3", "seed": 0,
     "modules": {"k": {"op": "trivial", "b": 1}, "L": {"op": "heller_lattice", "of": "k"}},
     "checks": [{"verify": "rk", "module": "k"}, {"compute": "decompose", "module": "L", "expect": [3]}]}

Modules may refer to each other by name in any order as long as the
references form no cycle.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources

from . import arlab
from .arlab import CONFIRMED, INDETERMINATE, REFUTED, Report
from .dvr import ring_make
from .groups import group_from_spec, sylow_subgroup
from .linalg import Mat
from .repmod import (
    cosyzygy,
    cosyzygy_b,
    direct_sum,
    dual,
    jordan_block,
    module_from_mats,
    module_regular,
    module_trivial,
    pim_modules,
    reduce,
    restrict,
    simple_modules,
    syzygy,
    syzygy_b,
)
from .stable import decompose, exponent, is_indecomposable, is_isomorphic, is_weakly_injective, stable_hom

__all__ = ["ScenarioError", "Scenario", "load_scenario", "builtin_names", "load_builtin", "run_scenario"]


class ScenarioError(ValueError):
    """Malformed scenario document."""


@dataclass
class Scenario:
    name: str
    ring: dict
    group: object
    modules: dict = field(default_factory=dict)
    checks: list = field(default_factory=list)
    seed: int = 0

    @classmethod
    def from_json(cls, d: dict) -> "Scenario":
        if not isinstance(d, dict):
            raise ScenarioError("scenario must be a JSON object")
        for key in ("name", "ring", "group"):
            if key not in d:
                raise ScenarioError(f"scenario lacks {key!r}")
        extra = set(d) - {"name", "ring", "group", "modules", "checks", "seed"}
        if extra:
            raise ScenarioError(f"unknown scenario keys {sorted(extra)}")
        sc = cls(d["name"], d["ring"], d["group"], d.get("modules", {}), d.get("checks", []), d.get("seed", 0))
        sc.order()  # validates references and acyclicity
        return sc

    def order(self) -> list:
        """Module names in dependency order (raises on unknown names or cycles)."""
        deps = {}
        for name, spec in self.modules.items():
            if not isinstance(spec, dict) or "op" not in spec:
                raise ScenarioError(f"module {name!r} needs an 'op'")
            if spec["op"] not in OPS:
                raise ScenarioError(f"module {name!r}: unknown op {spec['op']!r}")
            refs = _refs(spec)
            for r in refs:
                if r not in self.modules:
                    raise ScenarioError(f"module {name!r} refers to unknown module {r!r}")
            deps[name] = refs
        out, state = [], {}

        def visit(n):
            if state.get(n) == 1:
                raise ScenarioError(f"cyclic module definitions through {n!r}")
            if state.get(n) == 2:
                return
            state[n] = 1
            for r in deps[n]:
                visit(r)
            state[n] = 2
            out.append(n)

        for n in self.modules:
            visit(n)
        return out


def _refs(spec: dict) -> list:
    refs = []
    if "of" in spec:
        refs.append(spec["of"])
    refs.extend(spec.get("terms", []))
    return refs


def load_scenario(path) -> Scenario:
    try:
        with open(path) as fh:
            d = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ScenarioError(f"{path}: {exc}") from exc
    return Scenario.from_json(d)


def builtin_names() -> list:
    files = resources.files("stabmod").joinpath("scenarios").iterdir()
    return sorted(f.name[:-5] for f in files if f.name.endswith(".json"))


def load_builtin(name: str) -> Scenario:
    if name not in builtin_names():
        raise ScenarioError(f"unknown builtin scenario {name!r}; choose from {builtin_names()}")
    text = resources.files("stabmod").joinpath("scenarios", f"{name}.json").read_text()
    return Scenario.from_json(json.loads(text))


# -- module construction -------------------------------------------------------------------

def _op_trivial(ctx, spec):
    return module_trivial(ctx.ring, ctx.group, spec.get("b"))


def _op_regular(ctx, spec):
    return module_regular(ctx.ring, ctx.group, spec.get("b"))


def _op_jordan(ctx, spec):
    return jordan_block(ctx.ring, ctx.group, int(spec["length"]), int(spec.get("b", 1)))


def _op_simple(ctx, spec):
    return simple_modules(ctx.ring, ctx.group)[int(spec["index"])]


def _op_pim(ctx, spec):
    return pim_modules(ctx.ring, ctx.group, spec.get("b"))[int(spec["index"])]


def _op_matrices(ctx, spec):
    b = spec.get("b", ctx.ring.N)
    return module_from_mats(ctx.ring, ctx.group, int(b), spec["gens"])


def _op_cokernel(ctx, spec):
    P = ctx.get(spec["of"])
    alpha = Mat.from_coeffs(P.wring, spec["matrix"])
    return arlab.cokernel_module(P, alpha)


def _op_summand(ctx, spec):
    parts = decompose(ctx.get(spec["of"]))
    return parts[int(spec["index"])]


def _op_sum(ctx, spec):
    return direct_sum(*[ctx.get(t) for t in spec["terms"]])


OPS = {
    "trivial": _op_trivial,
    "regular": _op_regular,
    "jordan": _op_jordan,
    "simple": _op_simple,
    "pim": _op_pim,
    "matrices": _op_matrices,
    "cokernel": _op_cokernel,
    "summand": _op_summand,
    "sum": _op_sum,
    "reduce": lambda ctx, s: reduce(ctx.get(s["of"]), int(s["b"])),
    "dual": lambda ctx, s: dual(ctx.get(s["of"])),
    "syzygy": lambda ctx, s: syzygy(ctx.get(s["of"])),
    "cosyzygy": lambda ctx, s: cosyzygy(ctx.get(s["of"])),
    "syzygy_b": lambda ctx, s: syzygy_b(ctx.get(s["of"])),
    "cosyzygy_b": lambda ctx, s: cosyzygy_b(ctx.get(s["of"])),
    "heller_lattice": lambda ctx, s: arlab.heller_lattice(ctx.get(s["of"])),
    "R": lambda ctx, s: arlab.functor_R(ctx.get(s["of"])).module,
    "pullback_lattice": lambda ctx, s: arlab.pullback_lattice(ctx.get(s["of"]), int(s["j"])),
    "restrict_sylow": lambda ctx, s: restrict(ctx.get(s["of"]), sylow_subgroup(ctx.group, ctx.ring.p)),
}


class _Context:
    def __init__(self, sc: Scenario, bump: int):
        r = sc.ring
        try:
            self.ring = ring_make(int(r["p"]), int(r.get("e", 1)), int(r["m"]) + bump)
            self.group = group_from_spec(sc.group)
        except (KeyError, TypeError, ValueError) as exc:
            raise ScenarioError(f"bad ring or group: {exc}") from exc
        self.sc = sc
        self.built = {}

    def get(self, name):
        if name not in self.built:
            spec = self.sc.modules[name]
            self.built[name] = OPS[spec["op"]](self, spec).with_name(name)
        return self.built[name]


# -- checks ------------------------------------------------------------------------------------

VERIFIERS = {
    "example_cokernel": lambda ctx, c: arlab.verify_example_cokernel(ctx.ring.m),
    "heller_reiner": lambda ctx, c: arlab.verify_heller_reiner(ctx.ring, ctx.group),
    "simple_heads": lambda ctx, c: arlab.verify_simple_heads(ctx.ring, ctx.group),
    "rk": lambda ctx, c: arlab.verify_rk(ctx.get(c["module"])),
    "trivial_extension": lambda ctx, c: arlab.verify_trivial_extension(ctx.get(c["module"])),
    "offdiagonal_blocks": lambda ctx, c: arlab.record_offdiagonal_blocks(ctx.get(c["module"])),
    "reduced_ar": lambda ctx, c: arlab.verify_reduced_ar(ctx.get(c["module"])),
    "heller_indecomposable": lambda ctx, c: arlab.verify_heller_indecomposable(ctx.get(c["module"])),
    "unramified_contrast": lambda ctx, c: arlab.verify_unramified_contrast(ctx.get(c["module"])),
    "knorr_middle_term": lambda ctx, c: arlab.ar_middle_term_knorr(ctx.get(c["module"])),
    "aindec": lambda ctx, c: arlab.verify_aindec(ctx.get(c["module"]), int(c["b"])),
    "adjunction": lambda ctx, c: arlab.verify_adjunction(ctx.get(c["lattice"]), ctx.get(c["module"])),
    "pullback_ladder": lambda ctx, c: arlab.verify_pullback_ladder(ctx.get(c["module"]), int(c["j"])),
    "reduction_injective": lambda ctx, c: arlab.verify_reduction_injective(ctx.get(c["source"]), ctx.get(c["target"])),
    "reduction_at_exponent": lambda ctx, c: arlab.verify_reduction_at_exponent(ctx.get(c["module"])),
    "sylow_exponent": lambda ctx, c: arlab.verify_vertex_exponent(ctx.get(c["module"])),
    "heller_projective_free": lambda ctx, c: arlab.verify_heller_projective_free(ctx.get(c["module"])),
    "counit_surjective": lambda ctx, c: arlab.verify_counit_surjective(ctx.get(c["module"])),
}


def _compute(ctx, c) -> tuple:
    """Plain computations; returns a JSON-able value."""
    kind = c["compute"]
    if kind == "decompose":
        v = [X.rank for X in decompose(ctx.get(c["module"]))]
    elif kind == "rank":
        v = ctx.get(c["module"]).rank
    elif kind == "exponent":
        v = exponent(ctx.get(c["module"]))
    elif kind == "is_indecomposable":
        v = is_indecomposable(ctx.get(c["module"]))
    elif kind == "is_weakly_injective":
        v = is_weakly_injective(ctx.get(c["module"]))
    elif kind == "in_kernel_of_R":
        v = arlab.in_kernel_of_R(ctx.get(c["module"]))
    elif kind == "stable_hom":
        v = sorted(stable_hom(ctx.get(c["source"]), ctx.get(c["target"])).factor_exponents)
    elif kind == "isomorphic":
        v = is_isomorphic(ctx.get(c["left"]), ctx.get(c["right"]))[0]
    elif kind == "knorr":
        v = arlab.is_knorr(ctx.get(c["module"])).is_knorr
    else:
        raise ScenarioError(f"unknown computation {kind!r}")
    return v


def run_check(ctx, c: dict) -> Report:
    if "verify" in c:
        name = c["verify"]
        if name not in VERIFIERS:
            raise ScenarioError(f"unknown verifier {name!r}")
        rep = VERIFIERS[name](ctx, c)
        if rep is None:
            return Report(name, "not-applicable", {k: v for k, v in c.items()}, {}, CONFIRMED)
        return rep
    if "compute" in c:
        v = _compute(ctx, c)
        values = {"value": v}
        if "expect" in c:
            verdict = INDETERMINATE if v == INDETERMINATE else (CONFIRMED if v == c["expect"] else REFUTED)
        else:
            verdict = CONFIRMED
            values["note"] = "no expectation given"
        return Report(f"compute {c['compute']}", c.get("anchor", "computation"),
                      {k: v for k, v in c.items() if k not in ("compute", "expect", "anchor")},
                      values | ({"expected": c["expect"]} if "expect" in c else {}), verdict)
    raise ScenarioError(f"check needs 'verify' or 'compute': {c}")


def run_scenario(sc: Scenario, seed: int | None = None, bump: int = 0) -> dict:
    """Build every module, run every check; returns the JSON report."""
    from .stable import SEED

    seed = sc.seed if seed is None else seed
    SEED.set(seed)
    ctx = _Context(sc, bump)
    for name in sc.order():
        ctx.get(name)
    reports = [run_check(ctx, c).to_json() for c in sc.checks]
    return {
        "scenario": sc.name,
        "ring": ctx.ring.to_json(),
        "group": ctx.group.name,
        "seed": seed,
        "modules": {n: {"rank": M.rank, "b": "lattice" if M.is_lattice else M.b, "trust": M.trust}
                    for n, M in ctx.built.items()},
        "reports": reports,
    }
