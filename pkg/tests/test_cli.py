import json
from pathlib import Path

import pytest

from stabmod.cli import EXIT_INDETERMINATE, EXIT_OK, EXIT_PARSE, EXIT_REFUTED, exit_code, main

GOLDEN = Path(__file__).parent / "golden"
BUILTINS = ["example-gtytg", "heller-reiner-c3", "ramified-c3-e2"]


@pytest.mark.parametrize("name", BUILTINS)
@pytest.mark.parametrize("fmt", ["json", "text"])
def test_builtin_matches_golden(name, fmt, tmp_path):
    out = tmp_path / f"{name}.{fmt}"
    assert main(["--builtin", name, "--format", fmt, "--out", str(out)]) == EXIT_OK
    assert out.read_bytes() == (GOLDEN / f"{name}.{fmt}").read_bytes()


def test_seed_determinism(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for path in (a, b):
        assert main(["--builtin", "heller-reiner-c3", "--seed", "11", "--format", "json", "--out", str(path)]) == EXIT_OK
    assert a.read_bytes() == b.read_bytes()
    assert json.loads(a.read_text())["seed"] == 11


def test_list(capsys):
    assert main(["--list"]) == EXIT_OK
    assert capsys.readouterr().out.split() == BUILTINS


def test_parse_errors(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["--scenario", str(bad)]) == EXIT_PARSE
    assert main(["--scenario", str(tmp_path / "missing.json")]) == EXIT_PARSE
    assert main(["--builtin", "nope"]) == EXIT_PARSE
    assert main([]) == EXIT_PARSE
    assert main(["--builtin", "example-gtytg", "--format", "xml"]) == EXIT_PARSE


def test_refuted_scenario_exit_code(tmp_path):
    sc = {"name": "r", "ring": {"p": 2, "m": 4}, "group": "C2", "modules": {"O": {"op": "trivial"}},
          "checks": [{"compute": "exponent", "module": "O", "expect": 3}]}
    path = tmp_path / "r.json"
    path.write_text(json.dumps(sc))
    assert main(["--scenario", str(path), "--out", str(tmp_path / "o.txt")]) == EXIT_REFUTED


def test_exit_code_taxonomy():
    rep = lambda v: {"verdict": v}
    assert exit_code({"reports": [rep("CONFIRMED")]}) == EXIT_OK
    assert exit_code({"reports": [rep("INDETERMINATE"), rep("CONFIRMED")]}) == EXIT_INDETERMINATE
    assert exit_code({"reports": [rep("INDETERMINATE"), rep("REFUTED")]}) == EXIT_REFUTED
    assert exit_code({"cells": [{"cell": "x", "error": "e", "suites": {}}]}) == EXIT_INDETERMINATE


def test_empty_sweep(tmp_path):
    cfg = tmp_path / "empty.json"
    cfg.write_text(json.dumps({"groups": []}))
    out = tmp_path / "o.json"
    assert main(["--sweep", str(cfg), "--format", "json", "--out", str(out)]) == EXIT_OK
    assert json.loads(out.read_text())["cells"] == []


def test_small_sweep_is_deterministic(tmp_path):
    cfg = tmp_path / "small.json"
    cfg.write_text(json.dumps({"groups": ["C2", "C3"], "ramification": [1], "workers": 1}))
    outs = []
    for i in range(2):
        out = tmp_path / f"o{i}.json"
        assert main(["--sweep", str(cfg), "--format", "json", "--out", str(out)]) == EXIT_OK
        outs.append(out.read_bytes())
    assert outs[0] == outs[1]
    doc = json.loads(outs[0])
    assert [c["cell"] for c in doc["cells"]] == ["C2/p=2/e=1", "C3/p=3/e=1"]


def test_bad_sweep_config(tmp_path):
    cfg = tmp_path / "bad.json"
    cfg.write_text(json.dumps({"bogus": 1}))
    assert main(["--sweep", str(cfg)]) == EXIT_PARSE
