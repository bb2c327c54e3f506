import glob
import json
import os

import pytest

from emapalg.cli import main

CONFIG_DIR = os.path.join(os.path.dirname(__file__), "..", "configs")
GOLDEN_DIR = os.path.join(os.path.dirname(__file__), "golden")


def run_cli(args, tmp_path, name="out.json"):
    out = tmp_path / name
    code = main(args + ["--out", str(out)])
    text = out.read_text() if out.exists() else ""
    return code, text


def config_path(name):
    return os.path.join(CONFIG_DIR, name + ".toml")


GOLDEN_CASES = [
    ("classify_" + name, ["classify", "--config", config_path(name),
                          "--format", "records"])
    for name in ("onsager_sl2", "onsager_a2", "untwisted_loop_sl2",
                 "twisted_loop_sl3", "multiloop_2d", "s3_so8",
                 "nodal_cubic", "plane_involution")
] + [
    ("derived_nodal_cubic", ["derived", "--config",
                             config_path("nodal_cubic"),
                             "--format", "records"]),
    ("stabilizer_s3_so8_m1", ["stabilizer", "--config",
                              config_path("s3_so8"), "--point=-1",
                              "--format", "records"]),
    ("drinfeld_untwisted_loop_sl2", ["drinfeld", "--config",
                                     config_path("untwisted_loop_sl2"),
                                     "--format", "records"]),
    ("orbit_s3_so8_m1", ["orbit", "--config", config_path("s3_so8"),
                         "--point=-1", "--format", "records"]),
]


@pytest.mark.parametrize("name,args", GOLDEN_CASES,
                         ids=[c[0] for c in GOLDEN_CASES])
def test_golden_reports_byte_identical(name, args, tmp_path):
    code, text = run_cli(args, tmp_path)
    assert code == 0
    golden = open(os.path.join(GOLDEN_DIR, name + ".json"),
                  encoding="utf-8").read()
    assert text == golden


def test_determinism_across_runs(tmp_path):
    args = ["classify", "--config", config_path("onsager_sl2"),
            "--format", "records"]
    _, first = run_cli(args, tmp_path, "a.json")
    _, second = run_cli(args, tmp_path, "b.json")
    assert first == second


def test_text_format(tmp_path):
    code, text = run_cli(["classify", "--config", config_path("onsager_sl2")],
                         tmp_path)
    assert code == 0
    assert "FINITE-TILDE" in text and "gamma" in text


def test_missing_config_file(tmp_path, capsys):
    code = main(["classify", "--config", str(tmp_path / "nope.toml")])
    assert code == 2


def test_malformed_config(tmp_path):
    bad = tmp_path / "bad.toml"
    bad.write_text("[lie\n")
    code, _ = run_cli(["classify", "--config", str(bad),
                       "--format", "records"], tmp_path)
    assert code == 2


def test_semantic_error_point_removed(tmp_path):
    code, _ = run_cli(["stabilizer", "--config", config_path("s3_so8"),
                       "--point=1", "--format", "records"], tmp_path)
    assert code == 3


def test_not_applicable_window_on_p1(tmp_path):
    code, _ = run_cli(["derived", "--config", config_path("s3_so8"),
                       "--format", "records"], tmp_path)
    assert code == 4


def test_eval_rep_same_orbit_rejected(tmp_path):
    assign1 = json.dumps({"point": ["2"], "label": {"kind": "sl2", "d": 1}})
    assign2 = json.dumps({"point": ["1/2"],
                          "label": {"kind": "sl2", "d": 2}})
    code, _ = run_cli(["eval-rep", "--config", config_path("onsager_sl2"),
                       "--assign", assign1, "--assign", assign2,
                       "--format", "records"], tmp_path)
    assert code == 3


def test_eval_rep_wrong_dimension_label(tmp_path):
    assign = json.dumps({"point": ["1"], "label": {"kind": "sl2", "d": 1}})
    code, _ = run_cli(["eval-rep", "--config", config_path("onsager_sl2"),
                       "--assign", assign, "--format", "records"], tmp_path)
    assert code == 3


def test_eval_rep_from_config_assignments(tmp_path):
    code, text = run_cli(["eval-rep", "--config", config_path("onsager_sl2"),
                          "--format", "records"], tmp_path)
    assert code == 0
    report = json.loads(text)
    assert report["result"]["dim"] == 2
    assert report["result"]["irreducible"] is True


def test_irreducible_command(tmp_path):
    assign = json.dumps({"point": ["2"], "label": {"kind": "sl2", "d": 1}})
    code, text = run_cli(["irreducible", "--config",
                          config_path("untwisted_loop_sl2"),
                          "--assign", assign, "--format", "records"],
                         tmp_path)
    assert code == 0
    result = json.loads(text)["result"]
    assert result["irreducible"] and result["closure_dim"] == 4


def test_intertwine_command(tmp_path):
    a1 = json.dumps({"point": ["2"], "label": {"kind": "sl2", "d": 1}})
    a2 = json.dumps({"point": ["3"], "label": {"kind": "sl2", "d": 1}})
    code, text = run_cli(["intertwine", "--config",
                          config_path("onsager_sl2"),
                          "--assign", a1, "--assign2", a2,
                          "--format", "records"], tmp_path)
    assert code == 0
    assert json.loads(text)["result"]["intertwiner_dim"] == 0


def test_gamma_command(tmp_path):
    code, text = run_cli(["gamma", "--config", config_path("nodal_cubic"),
                          "--format", "records"], tmp_path)
    assert code == 0
    result = json.loads(text)["result"]
    assert result["gamma"]["kernel_dim"] == 2
    assert result["md_quotient"] == 2


def test_tilde_command(tmp_path):
    code, text = run_cli(["tilde", "--config",
                          config_path("plane_involution"),
                          "--format", "records"], tmp_path)
    assert code == 0
    assert json.loads(text)["result"]["verdict"] == "infinite"


def test_fixed_subalgebra_command(tmp_path):
    code, text = run_cli(["fixed-subalgebra", "--config",
                          config_path("s3_so8"), "--format", "records"],
                         tmp_path)
    assert code == 0
    result = json.loads(text)["result"]
    assert result["dim"] == 14 and result["structure"]["type"] == "G2"


def test_injectivity_command_small(tmp_path):
    cfg = tmp_path / "loop.toml"
    base = open(config_path("untwisted_loop_sl2"), encoding="utf-8").read()
    base = base.replace('pool = ["2", "3", "5"]', 'pool = ["2", "3"]')
    base = base.replace('  { kind = "sl2", d = 2 },\n', "")
    cfg.write_text(base)
    code, text = run_cli(["injectivity", "--config", str(cfg),
                          "--format", "records"], tmp_path)
    assert code == 0
    result = json.loads(text)["result"]
    assert result["injective"] and result["classes"] == 4


def test_window_override_flag(tmp_path):
    assign = json.dumps({"point": ["2"], "label": {"kind": "sl2", "d": 1}})
    code, text = run_cli(["eval-rep", "--config",
                          config_path("untwisted_loop_sl2"),
                          "--assign", assign, "--window=-1..1",
                          "--format", "records"], tmp_path)
    assert code == 0
    assert json.loads(text)["result"]["window_dim"] == 9


def test_bad_assignment_json(tmp_path, capsys):
    code = main(["eval-rep", "--config", config_path("onsager_sl2"),
                 "--assign", "{not json"])
    assert code == 2
