import glob
import os

import pytest

from emapalg.errors import ConfigError
from emapalg.config import load_config, parse_label_spec, parse_assignment
from emapalg.session import Session

CONFIG_DIR = os.path.join(os.path.dirname(__file__), "..", "configs")


def config_text(name):
    with open(os.path.join(CONFIG_DIR, name), encoding="utf-8") as fh:
        return fh.read()


def test_all_bundled_configs_load_and_build():
    names = sorted(os.path.basename(p)
                   for p in glob.glob(os.path.join(CONFIG_DIR, "*.toml")))
    assert len(names) == 8
    for name in names:
        cfg = load_config(config_text(name))
        Session(cfg)   # cross-validation happens here


def test_digest_stable():
    cfg1 = load_config(config_text("onsager_sl2.toml"))
    cfg2 = load_config(config_text("onsager_sl2.toml"))
    assert cfg1.digest == cfg2.digest


def test_conductor_inferred_from_literals():
    cfg = load_config("""
conductor_unused = 1
[lie]
kind = "cartan"
type = "A1"
[group]
generators = ["s"]
relations = ["ss"]
[scheme]
family = "torus"
n = 1
[lie_action]
s = { kind = "trivial" }
[point_action]
s = { kind = "monomial", exponents = [[1]], scalars = ["cyc(4)[0,1]"] }
""")
    assert cfg.conductor == 4


def test_conductor_mismatch_rejected():
    with pytest.raises(ConfigError):
        load_config("""
conductor = 2
[lie]
kind = "cartan"
type = "A1"
[group]
generators = ["s"]
relations = ["ss"]
[scheme]
family = "torus"
n = 1
[point_action]
s = { kind = "monomial", exponents = [[1]], scalars = ["cyc(3)[0,1]"] }
""")


def test_malformed_toml_rejected():
    with pytest.raises(ConfigError) as err:
        load_config("[lie\nkind=")
    assert "parse error" in str(err.value)


def test_missing_sections_rejected():
    with pytest.raises(ConfigError):
        load_config("[lie]\nkind = \"cartan\"\ntype = \"A1\"\n")


def test_window_sanity():
    with pytest.raises(ConfigError):
        load_config(config_text("onsager_sl2.toml")
                    .replace("lo = -2", "lo = 5"))


def test_parse_label_specs():
    assert parse_label_spec({"kind": "sl2", "d": 2}, 1) == ("sl2_weight", 2)
    lab = parse_label_spec({"kind": "one_dim", "value": "3/2"}, 1)
    assert lab[0] == "one_dim" and lab[1].text() == "3/2"
    w = parse_label_spec({"kind": "weight", "type": "B3",
                          "coords": [1, 0, 0]}, 1)
    assert w == ("weight", "B3", (1, 0, 0))
    with pytest.raises(ConfigError):
        parse_label_spec({"kind": "nope"}, 1)


def test_parse_assignment():
    point, label = parse_assignment(
        {"point": ["2"], "label": {"kind": "sl2", "d": 1}}, 1)
    assert point[0].text() == "2" and label == ("sl2_weight", 1)
    with pytest.raises(ConfigError):
        parse_assignment({"point": ["2"]}, 1)


def test_missing_action_for_generator():
    text = config_text("onsager_sl2.toml").replace("[point_action]",
                                                   "[point_action_typo]")
    with pytest.raises(ConfigError):
        Session(load_config(text))


def test_group_bound_respected():
    text = """
[lie]
kind = "cartan"
type = "A1"
[group]
generators = ["a", "b"]
relations = ["aaa"]
bound = 30
[scheme]
family = "torus"
n = 1
[lie_action]
a = { kind = "trivial" }
b = { kind = "trivial" }
[point_action]
a = { kind = "trivial" }
b = { kind = "trivial" }
"""
    with pytest.raises(ConfigError):
        Session(load_config(text))
