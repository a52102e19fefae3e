import csv
import json
import os
import shutil
import subprocess
import sys

import pytest

from trollfarm import cli
from trollfarm.config import apply_override, load_config, type_grid
from trollfarm.errors import ConfigError

from conftest import EXAMPLES

GOLDEN = EXAMPLES / "golden"
REGEN = os.environ.get("TROLLFARM_REGEN_GOLDEN") == "1"

CASES = [
    ("baseline", "strategy", "strategy.csv"),
    ("baseline", "shares", "shares.csv"),
    ("baseline", "sweep", "sweep.csv"),
    ("baseline", "twosided", "twosided.csv"),
    ("baseline", "polarize", "polarize.csv"),
    ("regimes", "regimes", "regimes.csv"),
    ("capped", "strategy", "strategy.csv"),
    ("capped", "shares", "shares.csv"),
    ("conservative", "shares", "shares.csv"),
    ("conservative", "distort", "distort.csv"),
    ("gennorm", "shares", "shares.csv"),
]


def read_rows(path):
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))


@pytest.mark.parametrize("name,command,artifact", CASES, ids=lambda v: str(v))
def test_golden_outputs(tmp_path, name, command, artifact):
    code = cli.run(command, EXAMPLES / f"{name}.toml", out=tmp_path)
    assert code == cli.EXIT_OK
    produced = tmp_path / artifact
    golden = GOLDEN / name / f"{command}.csv"
    if REGEN:
        golden.parent.mkdir(parents=True, exist_ok=True)
        shutil.copy(produced, golden)
    # golden outputs reproduce bit for bit; the row diff only makes failures readable
    if produced.read_bytes() != golden.read_bytes():
        got, want = read_rows(produced), read_rows(golden)
        assert len(got) == len(want) and list(got[0]) == list(want[0])
        diffs = [(i, k, g[k], w[k]) for i, (g, w) in enumerate(zip(got, want)) for k in w if g[k] != w[k]]
        pytest.fail(f"{name}/{command} differs from golden: {diffs[:5]}")


def test_summary_contents(tmp_path):
    assert cli.run("shares", None, ["signal.mu=2.0"], out=tmp_path) == 0
    summary = json.loads((tmp_path / "summary.json").read_text())
    assert summary["command"] == "shares" and summary["status"] == 0
    assert summary["config"]["signal"]["mu"] == 2.0
    assert summary["wall_time_s"] >= 0 and summary["threads"] >= 1


@pytest.mark.parametrize("override,key", [
    ("signal.muu=1", "signal.muu"),
    ("bogus.x=1", "bogus"),
    ("variant.kind=bribery", "variant.kind"),
    ("signal.mu=-1", "signal"),
])
def test_config_errors_exit_2(tmp_path, capsys, override, key):
    assert cli.main(["shares", "--set", override, "--out", str(tmp_path)]) == cli.EXIT_CONFIG
    assert key in capsys.readouterr().err


def test_missing_config_file(tmp_path):
    assert cli.main(["shares", "--config", str(tmp_path / "none.toml"), "--out", str(tmp_path)]) == 2


def test_overrides_parse_literals():
    cfg = load_config(None, ["variant.kind=\"constrained\"", "variant.cap=0.4", "strategy.types=[0.2, 0.8]"])
    assert cfg["variant"] == {"kind": "constrained", "cap": 0.4}
    assert type_grid(cfg["strategy"], "strategy") == [0.2, 0.8]
    with pytest.raises(ConfigError):
        apply_override(cfg, "nokey")
    with pytest.raises(ConfigError):
        apply_override(cfg, "signal.mu.x=1")


def test_type_grid_inclusive():
    assert type_grid({"start": 0.1, "stop": 0.3, "step": 0.1}, "g") == [0.1, 0.2, 0.3]
    with pytest.raises(ConfigError):
        type_grid({"start": 0.1, "stop": 0.3, "step": 0}, "g")


def test_constrained_needs_one_cap():
    from trollfarm.config import build_variant
    with pytest.raises(ConfigError):
        build_variant({"variant": {"kind": "constrained", "cap": 0.2, "cap_relative": 0.5}})
    v = build_variant({"variant": {"kind": "constrained", "cap_table": {"x": [0.0, 1.0], "cap": [0.1, 0.3]}}})
    assert v.cap(0.5) == pytest.approx(0.2)


def test_strategy_capped_columns(tmp_path):
    cli.run("strategy", EXAMPLES / "capped.toml", out=tmp_path)
    row = read_rows(tmp_path / "strategy.csv")[0]
    assert {"cap", "s_hat"} <= set(row)


def verify_cmd(out, threads):
    env = dict(os.environ, TROLLFARM_THREADS=str(threads))
    args = [sys.executable, "-m", "trollfarm.cli", "verify", "--config", str(EXAMPLES / "baseline.toml"),
            "--set", "verify.n_voters=20000", "--set", "verify.n_alternatives=500", "--set", "verify.bins=6",
            "--out", str(out)]
    return subprocess.run(args, env=env, capture_output=True, text=True)


def test_verify_report_byte_identical_across_threads(tmp_path):
    a, b = verify_cmd(tmp_path / "a", 1), verify_cmd(tmp_path / "b", 4)
    assert a.returncode == 0, a.stderr
    assert b.returncode == 0, b.stderr
    assert (tmp_path / "a" / "verify_report.json").read_bytes() == (tmp_path / "b" / "verify_report.json").read_bytes()
