import json
import os

import pytest

from ukklattice import ConfigError, LatticeVector, load_config, parse_norm_spec
from ukklattice.cli import main


def write(tmp_path, name, doc):
    path = tmp_path / name
    path.write_text(json.dumps(doc), encoding="utf-8")
    return str(path)


BASE_CFG = {
    "seed": 11,
    "space": {"kind": "Lq", "q": 2, "dim": 12},
    "audit": {"samples": 200, "tol": 1e-9},
    "estimate": {"budget": 40, "verify_trials": 30},
    "renorm": {"p": 2, "vectors": [[1.0, -2.0] + [0.0] * 10, [0.0] * 12]},
    "ukk": {"p": 2, "trials": 3, "horizon": 8},
}


# -- norm spec grammar --------------------------------------------------


def test_parse_round_trip_all_kinds():
    specs = [
        {"kind": "Lq", "q": 2, "dim": 4},
        {"kind": "Lq", "q": "inf", "dim": 4},
        {"kind": "WeightedLq", "q": 1, "weights": [1.0, 2.0, 0.5], "dim": 3},
        {
            "kind": "Block",
            "blocks": [[0, 1], [2, 3]],
            "inner": [{"kind": "Lq", "q": 1, "dim": 2}, {"kind": "Lq", "q": 1, "dim": 2}],
            "outer": {"kind": "Lq", "q": "inf", "dim": 2},
            "dim": 4,
        },
        {"kind": "PosNegMax", "base": {"kind": "Lq", "q": 2, "dim": 3}, "dim": 3},
    ]
    for spec in specs:
        N = parse_norm_spec(spec)
        again = parse_norm_spec(N.describe())
        assert again.describe() == N.describe()


def test_parse_block_inner_template():
    spec = {
        "kind": "Block",
        "blocks": [[0, 1], [2, 3], [4, 5]],
        "inner": {"kind": "Lq", "q": 1},
        "outer": {"kind": "Lq", "q": "inf", "dim": 3},
    }
    N = parse_norm_spec(spec)
    assert N.dim == 6
    assert N(LatticeVector([1.0, -1.0, 0.0, 0.0, 0.5, 0.0])) == 2.0


def test_parse_errors_carry_paths():
    cases = [
        ({"kind": "Lq", "q": 0.5, "dim": 3}, "q"),
        ({"kind": "Lq", "q": 2}, "dim"),
        ({"kind": "Lq", "q": 2, "dim": 3, "bogus": 1}, "bogus"),
        ({"kind": "Mystery", "dim": 3}, "kind"),
        ({"kind": "WeightedLq", "q": 2, "weights": [1.0, -1.0]}, "weights"),
        ({"kind": "Block", "blocks": [[0], [0]], "inner": {"kind": "Lq", "q": 1},
          "outer": {"kind": "Lq", "q": 1, "dim": 2}}, "block"),
    ]
    for spec, fragment in cases:
        with pytest.raises(ConfigError) as exc:
            parse_norm_spec(spec)
        assert fragment in str(exc.value)


def test_parse_dim_cross_check():
    with pytest.raises(ConfigError):
        parse_norm_spec(
            {"kind": "PosNegMax", "base": {"kind": "Lq", "q": 2, "dim": 3}, "dim": 4}
        )


def test_load_config_errors(tmp_path):
    with pytest.raises(ConfigError):
        load_config(str(tmp_path / "missing.json"))
    bad = tmp_path / "bad.json"
    bad.write_text("{not json", encoding="utf-8")
    with pytest.raises(ConfigError) as exc:
        load_config(str(bad))
    assert "line" in str(exc.value)
    arr = tmp_path / "arr.json"
    arr.write_text("[1,2]", encoding="utf-8")
    with pytest.raises(ConfigError):
        load_config(str(arr))


# -- CLI ----------------------------------------------------------------


def test_space_check_ok(tmp_path, capsys):
    cfg = write(tmp_path, "cfg.json", BASE_CFG)
    assert main(["space-check", "--config", cfg]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["passed"] is True
    assert doc["schema_version"] == 1


def test_missing_seed_is_usage_error(tmp_path, capsys):
    cfg_doc = dict(BASE_CFG)
    del cfg_doc["seed"]
    cfg = write(tmp_path, "cfg.json", cfg_doc)
    assert main(["space-check", "--config", cfg]) == 2
    assert "seed" in capsys.readouterr().err


def test_seed_flag_overrides(tmp_path, capsys):
    cfg = write(tmp_path, "cfg.json", BASE_CFG)
    assert main(["space-check", "--config", cfg, "--seed", "99"]) == 0
    assert json.loads(capsys.readouterr().out)["seed"] == 99


def test_bad_config_is_exit_2(tmp_path, capsys):
    cfg = write(tmp_path, "cfg.json", {"seed": 1, "space": {"kind": "Lq", "q": 0, "dim": 2}})
    assert main(["space-check", "--config", cfg]) == 2
    assert "error" in capsys.readouterr().err


def test_estimate_writes_report(tmp_path):
    cfg = write(tmp_path, "cfg.json", BASE_CFG)
    out = str(tmp_path / "out")
    assert main(["estimate", "--config", cfg, "--out", out]) == 0
    doc = json.loads((tmp_path / "out" / "estimate.json").read_text())
    assert doc["hypothesis_satisfied"] is True
    assert doc["verify"]["violations"] == 0


def test_renorm_config_mode(tmp_path, capsys):
    cfg = write(tmp_path, "cfg.json", BASE_CFG)
    assert main(["renorm", "--config", cfg]) == 0
    lines = [json.loads(l) for l in capsys.readouterr().out.splitlines()]
    assert len(lines) == 2
    assert lines[0]["value"] == pytest.approx(5 ** 0.5)
    assert lines[1]["value"] == 0.0


def test_renorm_direct_mode(tmp_path, capsys):
    space = write(tmp_path, "space.json", {"kind": "Lq", "q": "inf", "dim": 4})
    vec = write(tmp_path, "vec.json", [3.0, -4.0, 0.0, 1.0])
    assert main(["renorm", "--space", space, "--p", "2", "--vector", vec, "--exact"]) == 0
    rec = json.loads(capsys.readouterr().out)
    assert rec["method"] == "exact"
    assert rec["value"] == pytest.approx((9 + 16 + 1) ** 0.5)


def test_renorm_direct_mode_needs_all_flags(tmp_path, capsys):
    space = write(tmp_path, "space.json", {"kind": "Lq", "q": 2, "dim": 4})
    assert main(["renorm", "--space", space]) == 2


def test_renorm_oversized_support_reported_in_record(tmp_path, capsys):
    space = write(tmp_path, "space.json", {"kind": "Lq", "q": 2, "dim": 16})
    vec = write(tmp_path, "vec.json", [1.0] * 16)
    assert main(["renorm", "--space", space, "--p", "2", "--vector", vec, "--exact"]) == 0
    rec = json.loads(capsys.readouterr().out)
    assert "error" in rec


def test_ukk_outputs(tmp_path):
    cfg = write(tmp_path, "cfg.json", BASE_CFG)
    out = str(tmp_path / "ukk_out")
    assert main(["ukk", "--config", cfg, "--out", out]) == 0
    summary = json.loads((tmp_path / "ukk_out" / "ukk_summary.json").read_text())
    assert summary["failed"] == 0
    lines = (tmp_path / "ukk_out" / "ukk_trials.jsonl").read_text().splitlines()
    assert len(lines) == 3
    csv_lines = (tmp_path / "ukk_out" / "ukk_summary.csv").read_text().splitlines()
    assert csv_lines[0].startswith("index,seed,valid")
    assert len(csv_lines) == 4  # header + one row per trial


def test_threads_flag_validated(tmp_path, capsys):
    cfg = write(tmp_path, "cfg.json", BASE_CFG)
    with pytest.raises(SystemExit) as exc:
        main(["space-check", "--config", cfg, "--threads", "0"])
    assert exc.value.code == 2
    assert main(["space-check", "--config", cfg, "--threads", "4"]) == 0


def test_unknown_subcommand_exits_2():
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


def test_determinism_across_runs(tmp_path):
    cfg = write(tmp_path, "cfg.json", BASE_CFG)
    outs = []
    for name in ("a", "b"):
        out = tmp_path / name
        assert main(["estimate", "--config", cfg, "--out", str(out)]) == 0
        assert main(["ukk", "--config", cfg, "--out", str(out)]) == 0
        blob = {}
        for fn in sorted(os.listdir(out)):
            blob[fn] = (out / fn).read_bytes()
        outs.append(blob)
    assert outs[0] == outs[1]
