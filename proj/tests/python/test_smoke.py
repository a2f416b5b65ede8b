"""Smoke tests for the Python module."""
import json
import pathlib

import pytest

import vpcforge

DATA = pathlib.Path(__file__).resolve().parents[2] / "data"
TOY = DATA / "instances" / "toy-k.json"


def test_load_and_solve():
    inst = vpcforge.load(TOY)
    assert inst.num_vars == 2
    assert inst.integer_vars == [0, 1]
    sol = vpcforge.solve(inst, ip=True)
    assert sol["status"] == "optimal"
    assert sol["lp_value"] == pytest.approx(-1.5, abs=1e-9)
    assert sol["ip_value"] == pytest.approx(-1.0, abs=1e-9)


def test_parse_roundtrip():
    inst = vpcforge.load(TOY)
    again = vpcforge.Instance.parse(inst.to_json(), "json")
    assert again.var_names == inst.var_names
    assert again.standardize().standardized


def test_cuts_certify_strengthen():
    doc = vpcforge.cuts(TOY, leaves=2)
    assert doc["format"] == "vpc-forge-cuts"
    assert doc["cuts"]
    cert = vpcforge.certify(TOY, doc)
    for entry in cert["cuts"]:
        assert entry["verdict"]["certified"]
        assert entry["verdict"]["valid_pd"]
        assert entry["verdict"]["valid_pi"]
    st = vpcforge.strengthen(TOY, json.dumps(doc))
    assert st["summary"]["cuts"] == len(doc["cuts"])


def test_deterministic_output():
    assert vpcforge.cuts(TOY, leaves=4) == vpcforge.cuts(TOY, leaves=4)


def test_solve_monoid():
    z, m = vpcforge.solve_monoid([1.0, 1.0], [0.5, 0.25])
    assert sum(m) >= 0
    assert z == pytest.approx(max(-s + d * k for d, s, k in zip([1.0, 1.0], [0.5, 0.25], m)))
    with pytest.raises(ValueError):
        vpcforge.solve_monoid([1.0], [])


def test_gmi_coefficients():
    gamma = vpcforge.gmi_coefficients(0.5, [0.25, -0.5], [True, False])
    assert gamma[0] == pytest.approx(0.5)
    assert gamma[1] == pytest.approx(1.0)


def test_evaluate_report():
    report = vpcforge.evaluate([TOY, DATA / "instances" / "missing.json"], leaves=[2, 4])
    body = json.loads(report.json())
    assert body["format"] == "vpc-forge-report"
    assert [r["status"] for r in body["instances"]][0] == "ok"
    assert body["instances"][1]["status"] != "ok"
    assert "Wins" in report.table()
    assert report.csv().startswith("set,instance,row")


def test_errors():
    with pytest.raises(vpcforge.VpcForgeError):
        vpcforge.Instance.parse("{not json", "json")
    with pytest.raises(ValueError):
        vpcforge.Instance.parse("", "lp")
