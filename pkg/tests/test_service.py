import os
import warnings

import pytest

with warnings.catch_warnings():
    warnings.simplefilter("ignore")
    from fastapi.testclient import TestClient

from emapalg.service import app

CONFIG_DIR = os.path.join(os.path.dirname(__file__), "..", "configs")


@pytest.fixture(scope="module")
def client():
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return TestClient(app)


def config_text(name):
    with open(os.path.join(CONFIG_DIR, name + ".toml"),
              encoding="utf-8") as fh:
        return fh.read()


def test_health(client):
    r = client.get("/v1/health")
    assert r.status_code == 200
    assert r.json()["status"] == "ok"


def test_commands_listing(client):
    r = client.get("/v1/commands")
    assert r.status_code == 200
    cmds = r.json()["commands"]
    assert "classify" in cmds and "stabilizer" in cmds


def test_run_classify(client):
    r = client.post("/v1/run", json={
        "command": "classify",
        "config": config_text("twisted_loop_sl3"),
        "params": {},
    })
    assert r.status_code == 200
    body = r.json()
    assert body["ok"]
    assert body["report"]["result"]["verdict"] == "PERFECT"
    assert body["report"]["result"]["certificate"] == "PerfectBy(3)"


def test_run_with_params(client):
    r = client.post("/v1/run", json={
        "command": "stabilizer",
        "config": config_text("s3_so8"),
        "params": {"point": "2"},
    })
    body = r.json()
    assert body["ok"]
    assert body["report"]["result"]["gx_type"] == "B3"
    assert body["report"]["result"]["stabilizer_order"] == 2


def test_run_error_record(client):
    r = client.post("/v1/run", json={
        "command": "classify",
        "config": "[broken",
        "params": {},
    })
    assert r.status_code == 200
    body = r.json()
    assert not body["ok"]
    assert body["error"]["code"] == "config"


def test_unknown_command(client):
    r = client.post("/v1/run", json={
        "command": "transmogrify",
        "config": config_text("onsager_sl2"),
        "params": {},
    })
    body = r.json()
    assert not body["ok"] and body["error"]["code"] == "config"


def test_validation_error_shape(client):
    r = client.post("/v1/run", json={"command": "classify"})
    assert r.status_code == 422
