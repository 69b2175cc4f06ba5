import json
import os
import subprocess

import pytest

WG = os.environ.get("WG_CLI", "wg")


def run(*args, env=None):
    p = subprocess.run([WG, *args], capture_output=True, text=True, env=env)
    return p.returncode, p.stdout


def report(*args):
    code, out = run(*args)
    return code, json.loads(out)


@pytest.fixture
def k2(tmp_path):
    path = tmp_path / "k2.json"
    path.write_text('{"v":[0,1],"e":[[0,1]]}')
    return str(path)


def test_decide_found(k2):
    code, r = report("decide", "--pattern", k2, "--host", "egr:c3", "--mode", "s", "--fuel", "50")
    assert code == 0
    assert r["result"]["verdict"] == "Found"


def test_decide_unknown_exits_2():
    code, r = report("decide", "--pattern", "k3", "--host", "egr:ray", "--fuel", "100")
    assert code == 2
    assert r["result"]["verdict"] == "Unknown"


def test_gadget_output_feeds_decide(k2, tmp_path):
    code, out = run("gadget", "--name", "sigma1", "--in", "ec:[0];0", "--pattern", k2)
    assert code == 0
    saved = tmp_path / "g.json"
    saved.write_text(out)
    code, r = report("decide", "--pattern", k2, "--host", str(saved), "--fuel", "50")
    assert code == 0
    assert r["result"]["verdict"] == "Refuted"


def test_rayfollow_two_way_ray():
    code, r = report("search", "--solver", "rayfollow:L", "--host", "egr:L", "--fuel", "100")
    assert code == 0
    vs = r["result"]["vertices"]
    assert len(vs) == 10
    assert len(set(vs)) == 10


def test_suite_unknown_and_pass():
    code, _ = run("suite", "nosuch")
    assert code == 1
    code, r = report("suite", "f-convert")
    assert code == 0
    assert r["result"]["suites"][0]["pass"]


def test_export(tmp_path):
    code, out = run("export", "json", "--graph", "k3")
    assert code == 0
    assert out.strip() == '{"v":[0,1,2],"e":[[0,1],[0,2],[1,2]]}'
    dot = tmp_path / "l2.dot"
    code, _ = run("export", "dot", "--graph", "l2(path(ec:[0];0), ray)", "--fuel", "20", "--out", str(dot))
    assert code == 0
    edges = [line.strip() for line in dot.read_text().splitlines() if "--" in line]
    keys = [tuple(int(x) for x in e.rstrip(";").split(" -- ")) for e in edges]
    assert keys == sorted(keys)
    code, _ = run("export", "json", "--graph", "nosuch(")
    assert code == 1


def test_reports_are_deterministic():
    args = ("gadget", "--name", "sigma2", "--in", "per:[];[0,1]", "--pattern", "r3")
    assert run(*args) == run(*args)


def test_convert_round_trips():
    code, out = run("convert", "--host", "gr:c4", "--n", "30")
    assert code == 0
    code, r = report("truncate", "--host", out, "--fuel", "40")
    assert code == 0
    assert r["result"]["graph"] == {"v": [0, 1, 2, 3], "e": [[0, 1], [0, 3], [1, 2], [2, 3]]}


def test_fuel_default_from_env():
    env = dict(os.environ, WG_FUEL_DEFAULT="7")
    code, out = run("truncate", "--host", "egr:ray", env=env)
    assert json.loads(out)["fuel"] == 7
