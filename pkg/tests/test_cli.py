import json
from pathlib import Path

import pytest

from conftest import data_path
from qpcohom.cli import main

GOLDEN = Path(__file__).parent / "golden"

CASES = [
    ("nw", "e8_tilted.qp", []),
    ("extend", "twin_w2.qp", []),
    ("hh1", "kronecker.qp", ["--oracle"]),
    ("hh1", "c_t2.qp", ["--oracle", "--field", "fp:7"]),
    ("theorem-a", "e8_tilted.qp", []),
    ("theorem-a", "d4_tilted.qp", []),
    ("verify", "e8_tilted.qp", []),
    ("verify", "corrupted_potential.qp", []),
    ("geom", "once_punctured_square.qp", ["--oracle"]),
    ("geom", "twice_punctured_type_v.qp", ["--reduce"]),
    ("cuts", "once_punctured_iv_block.qp", []),
    ("cuts", "three_cycle_qp.qp", []),
    ("verify", "twice_punctured_config_c.qp", []),
]


def golden_name(cmd, fixture, extra):
    tag = "".join(x.strip("-").replace(":", "") for x in extra)
    return f"{cmd}_{fixture[:-3]}{'_' + tag if tag else ''}.txt"


def run(capsys, argv):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.mark.parametrize("cmd,fixture,extra", CASES)
def test_golden_output(capsys, cmd, fixture, extra, monkeypatch):
    monkeypatch.delenv("QP_FIELD", raising=False)
    code, out, _ = run(capsys, [cmd, data_path(fixture)] + extra)
    expected = (GOLDEN / golden_name(cmd, fixture, extra)).read_text(encoding="utf-8")
    assert out == expected
    assert code == (1 if fixture == "corrupted_potential.qp" else 0)


def test_verify_e8_shows_common_value(capsys):
    code, out, _ = run(capsys, ["verify", data_path("e8_tilted.qp")])
    assert code == 0
    assert "HH^1(B) = N_W = dim End(E): 2 = 2 = 2" in out


def test_geom_oracle_square(capsys):
    code, out, _ = run(capsys, ["geom", "--oracle", data_path("once_punctured_square.qp")])
    assert code == 0
    assert "predicted dim HH^1 = 1" in out and "= 1 (agrees)" in out


@pytest.mark.parametrize("cmd", ["nw", "extend", "hh1", "theorem-a", "verify"])
def test_json_round_trip(capsys, cmd):
    code, out, _ = run(capsys, [cmd, "--json", data_path("c_t2.qp")])
    assert code == 0
    payload = json.loads(out)
    assert payload["command"] == cmd and payload["ok"] is True
    again = json.dumps(payload, indent=2, sort_keys=True)
    assert json.loads(again) == payload
    assert again == out.rstrip("\n")


def test_json_geometry_report(capsys):
    code, out, _ = run(capsys, ["geom", "--json", "--oracle", data_path("twice_punctured_type_v.qp")])
    payload = json.loads(out)
    assert code == 0
    assert payload["relatedness"]["m"] == {"p": 1, "q": 1}
    assert payload["relatedness"]["m_pq"] == 1
    assert payload["oracle_hh1"] == payload["relatedness"]["theorem_b_dim"]


def test_exit_codes(capsys, tmp_path):
    assert run(capsys, ["verify", str(tmp_path / "missing.qp")])[0] == 2
    assert run(capsys, ["hh1", "--field", "reals", data_path("c_t1.qp")])[0] == 2
    assert run(capsys, ["nw", "--max-len", "0", data_path("c_t1.qp")])[0] == 2
    assert run(capsys, ["bogus", data_path("c_t1.qp")])[0] == 2
    cyclic = tmp_path / "cyclic.qp"
    cyclic.write_text(
        "[quiver]\nvertices = 1..4\narrow a : 1 -> 2\narrow b : 2 -> 3\narrow x : 3 -> 1 new\n"
        "arrow c : 3 -> 4\narrow d : 4 -> 3 new\n[potential]\nW = x.a.b\n"
    )
    assert run(capsys, ["hh1", str(cyclic)])[0] == 3
    assert run(capsys, ["verify", data_path("corrupted_potential.qp")])[0] == 1


def test_env_field(capsys, monkeypatch):
    monkeypatch.setenv("QP_FIELD", "fp:101")
    code, out, _ = run(capsys, ["hh1", "--json", data_path("kronecker.qp")])
    assert code == 0
    payload = json.loads(out)
    assert payload["config"]["field"] == "fp:101" and payload["hh1"] == 3
