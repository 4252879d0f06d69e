"""CLI golden-file tests.

Regenerate the golden files with ``python3 tests/test_cli.py`` after an
intentional output change, and review the diff.
"""
import io
import json
import math
import os
import subprocess
import sys
from pathlib import Path

import pytest

from qembed.cli import RunConfig, build_parser, main, run

HERE = Path(__file__).parent
DATA = HERE / "data"
GOLDEN = HERE / "golden"

# name -> argv (paths relative to tests/data)
CASES = {
    "embed_spin4": ["embed", "spin4.json", "--json"],
    "embed_spin4_text": ["embed", "spin4.json"],
    "decide_gbit": ["decide", "gbit.json", "--json"],
    "decide_pentagon": ["decide", "pentagon.json", "--json"],
    "decide_classical3": ["decide", "classical3.json", "--json"],
    "classify_real2": ["classify", "real2.json", "--json"],
    "classify_mixed": ["classify", "mixed.json", "--json", "--trials", "20"],
    "choi_real2": ["choi", "real2.json", "--json"],
    "choi_real2_text": ["choi", "real2.json"],
    "reduce_padded": ["reduce", "padded_bit.json", "--json", "--trials", "50"],
    "reduce_corrupted": ["reduce", "corrupted_bit.json", "--json", "--trials", "20"],
    "verify_real2": ["verify", "real2.json", "--json", "--trials", "30"],
    "verify_corrupted": ["verify", "corrupted_bit.json", "--json", "--trials", "20"],
    "demo": ["demo", "--json", "--trials", "50"],
    "error_missing_field": ["embed", "missing_n.json"],
    "error_nested_missing": ["verify", "nested_missing.json"],
    "error_broken_json": ["embed", "broken.json"],
    "error_not_pointed": ["decide", "not_pointed.json"],
    "error_decide_spin": ["decide", "spin4.json"],
    "error_embed_polyhedral": ["embed", "gbit.json"],
}


def invoke(argv):
    """Run the CLI in-process from tests/data; returns (code, stdout, stderr)."""
    cwd = os.getcwd()
    out, err = io.StringIO(), io.StringIO()
    os.chdir(DATA)
    try:
        args = build_parser().parse_args(argv)
        cfg = RunConfig(args.command, args.model, args.tol, args.trials, args.seed, args.json, args.out)
        code = run(cfg, out, err)
    finally:
        os.chdir(cwd)
    return code, out.getvalue(), err.getvalue()


def _close(a, b, tol=1e-9):
    if isinstance(a, dict) and isinstance(b, dict):
        return a.keys() == b.keys() and all(_close(a[k], b[k], tol) for k in a)
    if isinstance(a, list) and isinstance(b, list):
        return len(a) == len(b) and all(_close(x, y, tol) for x, y in zip(a, b))
    if isinstance(a, bool) or isinstance(b, bool):
        return a == b
    if isinstance(a, (int, float)) and isinstance(b, (int, float)):
        return math.isclose(a, b, rel_tol=tol, abs_tol=tol)
    return a == b


def _record(code, out, err):
    try:
        parsed = json.loads(out)
    except ValueError:
        parsed = out
    return {"exit": code, "stdout": parsed, "stderr": err}


@pytest.mark.parametrize("name", sorted(CASES))
def test_golden(name):
    expected = json.loads((GOLDEN / f"{name}.json").read_text())
    got = _record(*invoke(CASES[name]))
    assert got["exit"] == expected["exit"]
    assert got["stderr"] == expected["stderr"]
    assert _close(got["stdout"], expected["stdout"]), name


@pytest.mark.parametrize("name, code", [
    ("embed_spin4", 0), ("decide_gbit", 1), ("decide_pentagon", 1), ("decide_classical3", 0),
    ("classify_real2", 0), ("reduce_padded", 0), ("reduce_corrupted", 1), ("verify_real2", 0),
    ("verify_corrupted", 1), ("demo", 0), ("error_missing_field", 2), ("error_broken_json", 2),
    ("error_not_pointed", 2), ("error_decide_spin", 2), ("error_embed_polyhedral", 2),
])
def test_exit_code_contract(name, code):
    assert invoke(CASES[name])[0] == code


def test_key_outputs():
    assert json.loads(invoke(CASES["embed_spin4"])[1])["n"] == 4
    assert json.loads(invoke(CASES["decide_gbit"])[1])["verdict"] == "NotQuantumEmbeddable"
    rec = json.loads(invoke(CASES["classify_real2"])[1])
    assert rec["kind"] == "NotPhysical" and abs(rec["min_choi_eigenvalue"] + 0.5) < 1e-9
    rec = json.loads(invoke(CASES["reduce_padded"])[1])
    assert (rec["n_before"], rec["n_after"], rec["verified"]) == (3, 2, True)


def test_error_messages_carry_line_numbers():
    assert invoke(CASES["error_missing_field"])[2].startswith("error: missing_n.json:2:")
    assert invoke(CASES["error_nested_missing"])[2].startswith("error: nested_missing.json:3:")
    assert invoke(CASES["error_broken_json"])[2].startswith("error: broken.json:")


@pytest.mark.parametrize("name", ["verify_real2", "choi_real2", "demo", "classify_mixed"])
def test_deterministic(name):
    assert invoke(CASES[name]) == invoke(CASES[name])


def test_seed_changes_sampling_but_not_verdict():
    a = json.loads(invoke(["verify", "real2.json", "--json", "--trials", "10", "--seed", "1"])[1])
    b = json.loads(invoke(["verify", "real2.json", "--json", "--trials", "10", "--seed", "2"])[1])
    assert a["passed"] and b["passed"]
    assert a != b


def test_out_writes_embedding(tmp_path):
    out = tmp_path / "e.json"
    code, _, _ = invoke(["embed", "spin4.json", "--out", str(out)])
    assert code == 0
    d = json.loads(out.read_text())
    assert d["n"] == 4 and len(d["phi"]) == 16 and len(d["phi"][0]) == 5
    # the written embedding is itself valid CLI input
    code, stdout, _ = invoke(["reduce", str(out), "--json", "--trials", "20"])
    assert code == 0 and json.loads(stdout)["n_after"] == 4


def test_out_writes_choi(tmp_path):
    out = tmp_path / "c.json"
    invoke(["choi", "classical3.json", "--out", str(out)])
    d = json.loads(out.read_text())
    assert d["n"] == 3 and len(d["choi"]) == 9 and d["choi"][0][0] == [1.0, 0.0]


@pytest.mark.parametrize("kwargs", [{"tol": 0}, {"trials": 0}, {"seed": -1}, {"command": "frobnicate"}])
def test_run_config_validation(kwargs):
    base = {"command": "embed", "model_path": "x.json"}
    with pytest.raises(ValueError):
        RunConfig(**{**base, **kwargs})


def test_main_usage_errors(capsys):
    assert main([]) == 2
    assert main(["embed"]) == 2
    assert main(["embed", "x.json", "--trials", "0"]) == 2
    assert main(["--help"]) == 0


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "qembed", "embed", str(DATA / "spin4.json")],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.strip() == "quantum dimension n = 4"


if __name__ == "__main__":
    GOLDEN.mkdir(exist_ok=True)
    for name, argv in sorted(CASES.items()):
        rec = _record(*invoke(argv))
        (GOLDEN / f"{name}.json").write_text(json.dumps(rec, indent=2, sort_keys=True) + "\n")
        print(f"{name}: exit {rec['exit']}")
