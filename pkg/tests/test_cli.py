from __future__ import annotations

import json

import pytest

from hedgehog.cli import main, run


def _json(capsys, argv):
    code = main(argv + ["--json"])
    out = capsys.readouterr().out
    return code, json.loads(out)


def test_verify_theorem13(capsys):
    code, doc = _json(capsys, ["verify", "theorem13"])
    assert code == 0
    assert doc["status"] == "pass" and doc["det"] == "5" and doc["normalized_det"] == "1"
    assert doc["seed"] == 0


def test_verify_theorem12(capsys):
    code, doc = _json(capsys, ["verify", "theorem12"])
    assert code == 0 and doc["sign"] in (1, -1)


@pytest.mark.parametrize("target", ["sos", "parametrization"])
def test_verify_identities(target):
    assert run(["verify", target]).status == "pass"


def test_construct(capsys):
    code, doc = _json(capsys, ["construct", "--ring", "Q(sqrt:-1)", "--witness", "i,0,0,0"])
    assert code == 0
    assert doc["rows"][0] == ["X", "Y", "Z"]
    # the unsigned closed form is 2; the matrix determinant carries the verified sign
    assert doc["det_value"] in ("2", "-2") and doc["swapped"] is False


def test_construct_swap_and_errors(capsys):
    code, doc = _json(capsys, ["construct", "--witness", "1+i,1-i,i,0"])
    assert code == 0 and doc["swapped"] is True
    assert main(["construct", "--witness", "i,i,0,1"]) == 2
    assert main(["construct", "--witness", "1,0,0,0"]) == 2
    assert main(["construct", "--ring", "Fp:4", "--witness", "1,0,0,1"]) == 2
    assert main(["construct"]) == 2


def test_unknown_subcommand():
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["verify", "theorem99"])
    assert exc.value.code == 2


def test_enumerate_f2(capsys):
    code, doc = _json(capsys, ["enumerate-f2"])
    assert code == 0 and doc["f2_count"] == 80 and len(doc["solutions"]) == 80


def test_lift_single(tmp_path, capsys):
    f2 = tmp_path / "f2.json"
    assert main(["enumerate-f2", "--output", str(f2)]) == 0
    capsys.readouterr()
    code, doc = _json(capsys, ["lift", "--input", str(f2), "--index", "0", "--k", "8"])
    assert code == 0
    assert doc["summary"]["f2_count"] == 1
    assert main(["lift", "--input", str(f2), "--index", "99"]) == 2
    assert main(["lift", "--input", str(f2)]) == 2


def test_sample_and_relations(tmp_path, capsys):
    path = tmp_path / "samples.json"
    assert main(["sample", "--samples", "120", "--seed", "4", "--output", str(path)]) == 0
    capsys.readouterr()
    doc = json.loads(path.read_text())
    assert len(doc["samples"]) == 120 and doc["on_system"] and doc["seed"] == 4
    code, rel = _json(capsys, ["relations", "--input", str(path), "--degree", "1"])
    assert code == 0 and rel["dimension"] == 0 and rel["consensus"]
    code, rel = _json(capsys, ["relations", "--input", str(path), "--degree", "2"])
    assert code == 0 and rel["dimension"] == 4


def test_tangent(capsys):
    code, doc = _json(capsys, ["tangent", "--witness", "i,0,0,0", "--samples", "100"])
    assert code == 0 and doc["zeros"] == [] and doc["checked"] == 100


def test_complete(capsys):
    code, doc = _json(capsys, ["complete", "--row", "1,i,0"])
    assert code == 0 and doc["feasible"]
    assert main(["complete", "--ring", "Q", "--row", "X,Y,Z"]) == 1
    assert main(["complete", "--ring", "Q", "--row", "X,Y"]) == 2


def test_stufe(capsys):
    code, doc = _json(capsys, ["stufe", "--ring", "Fp:5"])
    assert code == 0 and doc["stufe"] == 1 and doc["witness"] == ["2"]
    assert main(["stufe", "--ring", "Q"]) == 2


def test_human_output_prints_seed(capsys):
    main(["verify", "theorem13", "--seed", "7"])
    out = capsys.readouterr().out
    assert "seed 7" in out


def test_byte_identical_reruns(capsys):
    argv = ["sample", "--samples", "5", "--seed", "3", "--json"]
    main(argv)
    first = capsys.readouterr().out
    main(argv)
    assert capsys.readouterr().out == first


def test_missing_input_file():
    assert main(["relations", "--input", "/nonexistent/samples.json"]) == 2
