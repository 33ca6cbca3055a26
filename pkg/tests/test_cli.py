import csv
import io
import json
import subprocess
import sys

import pytest

from cremona_auts import serialize
from cremona_auts.cli import CSV_HEADER, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_charpoly_output(capsys):
    code, out, _ = run(capsys, "charpoly", "4,4,4:(132)")
    assert code == 0
    obj = json.loads(out)
    assert obj["coeffs"] == [-1, 2, 0, 0, -3, 3, 0, 0, -3, 3, 0, 0, -2, 1]
    assert obj["lambda1"] == pytest.approx(1.72208380573904, abs=1e-14)
    assert obj["obstructions"] == []


def test_charpoly_bad_input(capsys):
    code, _, err = run(capsys, "charpoly", "4,4:(12)")
    assert code == 2 and "error" in err


def test_realize_exit_codes(capsys):
    assert run(capsys, "realize", "cusp", "1,1,8:(123)")[0] == 0
    assert run(capsys, "realize", "cusp", "5,5,5:(12)")[0] == 2
    assert run(capsys, "realize", "cusp", "2,3,4:id")[0] == 2
    assert run(capsys, "realize", "cusp", "2,3,4:id", "--allow-roots-of-unity")[0] == 0
    assert run(capsys, "realize", "node", "4,4,4:(132)")[0] == 2
    assert run(capsys, "realize", "triangle", "7,7,2:id", "--search")[0] == 0


def test_realize_output_is_deterministic(capsys):
    _, a, _ = run(capsys, "realize", "cusp", "1,1,8:(123)")
    _, b, _ = run(capsys, "realize", "--kind", "cusp", "--data", "1,1,8:(123)")
    assert a == b
    obj = json.loads(a)
    assert obj["status"] == "Realized"
    assert all("/" in c for c in obj["multiplier"]["residue"])


def test_presets(capsys):
    code, out, _ = run(capsys, "realize", "paper:square-444")
    assert code == 0
    obj = json.loads(out)
    assert obj["translations"] == [["5/9", "0/1"]]
    assert [p["val"] for p in obj["plus"]] == [["0/1", f"{k}/9"] for k in (1, 4, 7)]
    assert run(capsys, "realize", "paper:conicline-A")[0] == 0
    code, out, _ = run(capsys, "realize", "paper:conicline-B")
    assert code == 2
    assert json.loads(out)["params"]["simulated_data"] == "4,5,7:(12)"


def test_certificate_roundtrip_and_verify(capsys, tmp_path):
    path = tmp_path / "cert.json"
    assert run(capsys, "realize", "cusp", "1,1,8:(123)", "--out", str(path))[0] == 0
    cert = serialize.load_certificate(json.loads(path.read_text()))
    assert serialize.dumps(serialize.certificate_json(cert)) == path.read_text()

    code, out, _ = run(capsys, "verify-map", str(path))
    assert code == 0
    rep = json.loads(out)
    assert rep["passed"] and rep["form_rank"] == 3
    assert rep["map"]["monomials"] == ["x^2", "xy", "xz", "y^2", "yz", "z^2"]

    mpath = tmp_path / "map.json"
    assert run(capsys, "export", str(path), "--out", str(mpath))[0] == 0
    assert run(capsys, "verify-map", str(path), "--map", str(mpath))[0] == 0

    bad = json.loads(mpath.read_text())
    bad["coefficients"][1][3][0] += 1e-3
    mpath.write_text(json.dumps(bad))
    assert run(capsys, "verify-map", str(path), "--map", str(mpath))[0] == 1


def test_verify_map_refusals(capsys):
    assert run(capsys, "verify-map", "--kind", "torus-square", "--data", "4,4,4:(132)")[0] == 2
    assert run(capsys, "verify-map", "--kind", "cusp", "--data", "5,5,5:id")[0] == 2


def test_scan_csv(capsys):
    code, out, _ = run(capsys, "scan", "--kind", "cusp", "--n-min", "1", "--n-max", "3", "--sigmas", "id,(123)")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == list(CSV_HEADER) == ["kind", "data", "lambda1", "entropy", "verdict", "reason"]
    assert len(rows) == 1 + 2 * 27
    _, again, _ = run(capsys, "scan", "--kind", "cusp", "--n-min", "1", "--n-max", "3", "--sigmas", "id,(123)")
    assert again == out


def test_scan_json(capsys):
    code, out, _ = run(capsys, "scan", "--kind", "node", "--n-max", "2", "--format", "json", "--sorted")
    assert code == 0
    rows = json.loads(out)
    assert {r["verdict"] for r in rows} <= {"ZeroEntropy", "Impossible"}


def test_console_entry_point():
    res = subprocess.run([sys.executable, "-m", "cremona_auts.cli", "charpoly", "1,1,8:(123)"],
                         capture_output=True, text=True, check=False)
    assert res.returncode == 0
    assert json.loads(res.stdout)["lambda1"] == pytest.approx(1.17628081825992, abs=1e-13)
