#!/usr/bin/env python

"""Tests for `wrtkernel.cli`."""
import pytest

from wrtkernel import cli
from wrtkernel.cyclo import Group, RootSpec
from wrtkernel.errors import FalsificationError
from wrtkernel.jones import hopf_pair
from wrtkernel.misc import SCHEMA, json_dump, json_load


@pytest.fixture
def out(tmp_path):
    """Report path inside a per-test directory."""
    return str(tmp_path / "report.json")


def _run(argv, out):
    status = cli.main(argv + ["-o", out])
    return status, json_load(out)


def test_tau_sphere(out):
    status, report = _run(["tau", "--group", "so3", "--r", "5"], out)
    assert status == 0
    assert report["schema"] == SCHEMA
    assert report["pass"]
    (instance,) = report["instances"]
    assert instance["result"]["value"] == RootSpec(5, group=Group.SO3).one().to_json()
    assert instance["digest"]


def test_tau_malformed_pres(tmp_path, out):
    pres = tmp_path / "bad.json"
    pres.write_text("{ not json")
    status, report = _run(["tau", "--r", "5", "--pres", str(pres)], out)
    assert status == 2
    assert report["instances"][0]["error"].startswith("SchemaError")


def test_tau_degenerate_root(out):
    status, report = _run(["tau", "--r", "3", "--u", "4"], out)
    assert status == 2
    assert not report["pass"]


def test_rejects_nonpositive_r():
    assert cli.main(["tau", "--r", "0"]) == 2


def test_verify_s3(out):
    status, report = _run(["verify", "s3", "--rmax", "4"], out)
    assert status == 0
    keys = [item["key"] for item in report["instances"]]
    assert keys == sorted(keys)
    assert all(item["digest"] for item in report["instances"])


def test_pairing_trading(out):
    status, report = _run(["pairing", "verify-trading", "--k", "2"], out)
    assert status == 0
    assert len(report["instances"][0]["result"]["witness"]) == 3


def test_pairing_diagonalize(tmp_path, out):
    data = tmp_path / "pairing.json"
    json_dump({"phi": [3], "e0": [1]}, str(data))
    status, report = _run(["pairing", "diagonalize", "--in", str(data)], out)
    assert status == 0
    assert report["instances"][0]["result"]["entries"] == [3, -2, 2, -2]


def test_lens_gauss_certificate(out):
    status, report = _run(["lens", "--r", "5", "--b", "2", "--group", "so3"], out)
    assert status == 0
    assert "gauss-sum" in report["instances"][0]["result"]["certificates"]


def test_gauss(out):
    status, report = _run(["gauss", "--r", "4"], out)
    assert status == 0
    assert len(report["instances"]) == 16


def test_blocks(tmp_path, out):
    pres = tmp_path / "pres.json"
    json_dump(hopf_pair(1, 2).to_json(), str(pres))
    status, report = _run(["blocks", "--pres", str(pres), "--depth", "2"], out)
    assert status == 0
    assert report["instances"][0]["result"]["depth"] == 2


def test_falsification_exit(monkeypatch, out):
    def falsify(config):
        raise FalsificationError("1 != 2")

    monkeypatch.setitem(cli.RUNNERS, "tau", falsify)
    status, report = _run(["tau", "--r", "5"], out)
    assert status == 1
    assert report["instances"][0]["falsified"] == "1 != 2"


@pytest.mark.parametrize("action", ["verify-e339", "verify-trading"])
def test_pairing_trading_names(action, out):
    status, report = _run(["pairing", action, "--k", "1"], out)
    assert status == 0
    assert report["instances"][0]["key"] == "pairing:k=1"


@pytest.mark.parametrize("suite,flag,bound", [("thm2", "--rmax", "1"), ("prop32", "--rmax", "3"),
                                              ("lemma12", "--rmax", "4"), ("appendix", "--nmax", "2")])
def test_verify_suite_names(suite, flag, bound, out):
    status, report = _run(["verify", suite, flag, bound], out)
    assert status == 0
    assert report["instances"]
