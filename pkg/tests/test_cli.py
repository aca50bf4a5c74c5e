import hashlib
import json

import pytest

from enrichcat.cli import main

CAPPED = """\
scenario capped
modulus 2
cosmos finvect
category D dual-numbers
check generators D generators=representables
"""


def run(tmp_path, *args):
    return main(["run", *args, "--out", str(tmp_path)])


def test_unit_cosmos_passes(tmp_path, capsys):
    assert run(tmp_path, "unit-cosmos") == 0
    out = capsys.readouterr().out
    assert "RESULT: PASS" in out
    report = json.loads((tmp_path / "report.json").read_text())
    assert report["ok"] and report["summary"]["unexpected"] == 0
    assert (tmp_path / "report.txt").read_text().endswith("RESULT: PASS\n")


def test_gp_dual_numbers_passes(tmp_path):
    assert run(tmp_path, "gp-dual-numbers") == 0
    report = json.loads((tmp_path / "report.json").read_text())
    kinds = {c["kind"] for c in report["checks"]}
    assert {"gabriel-popescu", "filtered", "generators"} <= kinds
    # the declared negative controls fail, as expected
    expected_fail = [c for c in report["checks"] if c["expected"] == "fail"]
    assert expected_fail and all(c["verdict"]["verdict"] == "fail" for c in expected_fail)


def test_corrupted_composition_names_the_triple(tmp_path):
    assert run(tmp_path, "corrupted-composition") == 1
    report = json.loads((tmp_path / "report.json").read_text())
    ce = report["checks"][0]["verdict"]["counterexample"]
    assert ce["basis_triple"] == [1, 0, 1]
    assert "associativity" in json.dumps(ce)
    assert "RESULT: FAIL" in (tmp_path / "report.txt").read_text()


def test_reports_are_byte_identical(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    assert run(a, "gp-quiver", "--seed", "3") == 0
    assert run(b, "gp-quiver", "--seed", "3") == 0
    for name in ("report.json", "report.txt"):
        assert (a / name).read_bytes() == (b / name).read_bytes()


def test_json_flag_places_both_reports(tmp_path):
    target = tmp_path / "sub" / "r.json"
    assert main(["run", "unit-cosmos", "--json", str(target)]) == 0
    assert target.exists() and (tmp_path / "sub" / "report.txt").exists()


def test_verbose_prints_full_text(tmp_path, capsys):
    run(tmp_path, "unit-cosmos", "--verbose")
    out = capsys.readouterr().out
    assert out == (tmp_path / "report.txt").read_text()
    assert "anchor:" in out and "certificates:" in out


def test_recheck_and_tamper(tmp_path, capsys):
    run(tmp_path, "unit-cosmos")
    path = tmp_path / "report.json"
    capsys.readouterr()
    assert main(["recheck", str(path)]) == 0
    assert "certificates hold" in capsys.readouterr().out
    report = json.loads(path.read_text())
    digest = next(d for d, c in sorted(report["certificates"].items())
                  if c["kind"] == "inverse" and c["matrices"][0]["shape"][0] >= 2)
    payload = report["certificates"][digest]
    payload["matrices"][1]["entries"][0][0] ^= 1
    path.write_text(json.dumps(report))
    assert main(["recheck", str(path)]) == 1
    assert "digest does not match" in capsys.readouterr().out
    # re-signing the edited payload does not help: the matrices no longer invert each other
    fresh = hashlib.sha256(json.dumps(payload, sort_keys=True).encode()).hexdigest()
    report["certificates"] = {fresh: payload}
    for c in report["checks"]:
        for v in c.get("subchecks") or [c["verdict"]]:
            v["certificates"] = [fresh]
    path.write_text(json.dumps(report))
    assert main(["recheck", str(path)]) == 1
    assert "does not hold" in capsys.readouterr().out


def test_parse_error_exit_code(tmp_path, capsys):
    bad = tmp_path / "bad.scn"
    bad.write_text("modulus 2\ncategory A algebra mult=[[1]\n")
    assert main(["run", str(bad), "--out", str(tmp_path)]) == 2
    assert f"{bad}:2:" in capsys.readouterr().err
    assert not (tmp_path / "report.json").exists()


def test_missing_scenario_and_bad_max_dim(tmp_path, capsys):
    assert run(tmp_path, "nope") == 2
    assert run(tmp_path, "unit-cosmos", "--max-dim", "-1") == 2


def test_resource_cap_is_named(tmp_path):
    scn = tmp_path / "capped.scn"
    scn.write_text(CAPPED)
    assert main(["run", str(scn), "--out", str(tmp_path), "--max-dim", "0"]) == 1
    report = json.loads((tmp_path / "report.json").read_text())
    ce = report["checks"][0]["verdict"]["counterexample"]
    assert ce == {"resource_cap": "max-dim", "limit": 0}
    assert main(["run", str(scn), "--out", str(tmp_path)]) == 0


def test_list(capsys):
    assert main(["list"]) == 0
    assert "gp-dual-numbers" in capsys.readouterr().out.split()


def test_unknown_command():
    with pytest.raises(SystemExit):
        main(["frob"])
