import json
import os

import pytest

from linkwitt.cli import main, load_input, SchemaError

DATA = os.path.join(os.path.dirname(__file__), "data")


def _path(name: str) -> str:
    return os.path.join(DATA, name)


def _run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_worked_example_invariants(capsys):
    code, out, err = _run(capsys, "invariants", _path("worked_example.json"),
                          "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["verdict"] == "nontrivial"
    assert len(doc["pieces"]) == 1
    piece = doc["pieces"][0]
    assert piece["signatures"] == [["rational place", 1]]
    assert piece["end_minpoly"] == "1 + -1 x + x^2"
    assert piece["discriminant"]["trivial"] is True


def test_schema_error_exit_code(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{\"mu\": 0}", encoding="utf-8")
    code, out, err = _run(capsys, "invariants", str(bad))
    assert code == 2
    assert "schema" in err


def test_invalid_projections_exit_code(capsys):
    code, out, err = _run(capsys, "invariants",
                          _path("corrupt_projections.json"))
    assert code == 3
    assert "orthogonality" in err


def test_metabolic_file_is_witt_trivial(capsys, tmp_path):
    with open(_path("worked_example.json"), encoding="utf-8") as fh:
        doc = json.load(fh)
    # assemble f (+) -f as a block-diagonal 12-dimensional input
    n = doc["dim"]
    zero = ["0"] * n

    def block(a, b):
        out = []
        for i in range(n):
            out.append(list(a[i]) + zero)
        for i in range(n):
            out.append(zero + list(b[i]))
        return out

    neg_phi = [[str(-int(x)) for x in row] for row in doc["form"]["phi"]]
    double = {
        "mu": 2, "ring": "Z", "dim": 2 * n,
        "s": block(doc["s"], doc["s"]),
        "projections": {"type": "matrices", "pi": [
            _block_proj(doc, 0, n), _block_proj(doc, 1, n)]},
        "form": {"zeta": -1, "phi": block(doc["form"]["phi"], neg_phi)},
    }
    path = tmp_path / "double.json"
    path.write_text(json.dumps(double), encoding="utf-8")
    code, out, err = _run(capsys, "invariants", str(path),
                          "--format", "json")
    assert code == 0
    assert json.loads(out)["verdict"] == "witt-trivial"


def _block_proj(doc, which, n):
    sizes = doc["projections"]["sizes"]
    start = sum(sizes[:which])
    end = start + sizes[which]
    out = []
    for i in range(2 * n):
        row = []
        for j in range(2 * n):
            base_i, base_j = i % n, j % n
            same_copy = (i < n) == (j < n)
            inside = start <= base_i < end
            row.append("1" if (same_copy and i == j and inside) else "0")
        out.append(row)
    return out


def test_cobordant_with_itself(capsys):
    code, out, err = _run(capsys, "cobordant", _path("worked_example.json"),
                          _path("worked_example.json"), "--format", "json")
    assert code == 0
    assert json.loads(out)["verdict"] == "cobordant-by-these-invariants"


def test_cobordant_against_different_class(capsys):
    code, out, err = _run(capsys, "cobordant", _path("worked_example.json"),
                          _path("worked_example_simple.json"),
                          "--format", "json")
    assert code == 0
    doc = json.loads(out)
    # the worked example equals its own reduction in the Witt group
    assert doc["verdict"] == "cobordant-by-these-invariants"


def test_cobordant_zeta_mismatch(capsys, tmp_path):
    with open(_path("worked_example_simple.json"), encoding="utf-8") as fh:
        doc = json.load(fh)
    doc["form"]["zeta"] = 1
    doc["form"]["phi"] = [["1", "0", "0", "0"], ["0", "1", "0", "0"],
                          ["0", "0", "1", "0"], ["0", "0", "0", "1"]]
    other = tmp_path / "other.json"
    other.write_text(json.dumps(doc), encoding="utf-8")
    code, out, err = _run(capsys, "cobordant", _path("worked_example.json"),
                          str(other))
    assert code == 3


def test_cover_s1_line(capsys):
    code, out, err = _run(capsys, "cover", _path("s1_dim1.json"),
                          "--format", "json", "--degree", "4")
    assert code == 0
    doc = json.loads(out)
    assert doc["sigma"] == [[[["z1", "1"]]]]
    inv = doc["sigma_inverse_truncated"][0][0]
    assert inv[0] == ["1", "1"] and inv[1] == ["x1", "-1"]


def test_cover_degree_zero(capsys):
    code, out, err = _run(capsys, "cover", _path("worked_example.json"),
                          "--format", "json", "--degree", "0")
    assert code == 0
    doc = json.loads(out)
    for row in doc["sigma_inverse_truncated"]:
        for entry in row:
            assert all(name == "1" for name, _ in entry)


def test_cover_worked_example_witness(capsys):
    code, out, err = _run(capsys, "cover", _path("worked_example.json"),
                          "--format", "json", "--degree", "8")
    assert code == 0
    doc = json.loads(out)
    assert doc["symmetry_witness"] == "found"


def test_primitive_fixtures(capsys):
    code, out, err = _run(capsys, "primitive", _path("s0_dim2.json"),
                          "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["primitive"] is True
    assert len(doc["filtration"]) == 1

    code, out, err = _run(capsys, "primitive", _path("extension.json"),
                          "--format", "json")
    doc = json.loads(out)
    assert doc["primitive"] is True

    code, out, err = _run(capsys, "primitive",
                          _path("worked_example_simple.json"),
                          "--format", "json")
    doc = json.loads(out)
    assert doc["primitive"] is False
    assert doc["max_primitive_dim"] == 0


def test_byte_identical_reruns(capsys):
    results = []
    for _ in range(2):
        code, out, err = _run(capsys, "invariants",
                              _path("worked_example.json"),
                              "--format", "json", "--seed", "7")
        assert code == 0
        results.append(out)
    assert results[0] == results[1]


def test_seed_equality_of_reports(capsys):
    docs = []
    for seed in ("0", "1"):
        code, out, err = _run(capsys, "invariants",
                              _path("worked_example.json"),
                              "--format", "json", "--seed", seed)
        doc = json.loads(out)
        doc.pop("seed")
        doc["log"] = doc["log"][1:]
        docs.append(doc)
    assert docs[0] == docs[1]


def test_json_roundtrip(capsys):
    code, out, err = _run(capsys, "invariants", _path("worked_example.json"),
                          "--format", "json")
    doc = json.loads(out)
    assert json.loads(json.dumps(doc)) == doc


def test_load_input_rejects_bad_zeta(tmp_path):
    with open(_path("worked_example_simple.json"), encoding="utf-8") as fh:
        doc = json.load(fh)
    doc["form"]["zeta"] = 2
    path = tmp_path / "badzeta.json"
    path.write_text(json.dumps(doc), encoding="utf-8")
    with pytest.raises(SchemaError):
        load_input(str(path))


def test_text_format_is_rendered_from_json(capsys):
    code, out, err = _run(capsys, "invariants", _path("worked_example.json"),
                          "--format", "text")
    assert code == 0
    assert "verdict" in out and "nontrivial" in out


def test_quaternionic_exit_code_with_partial_report(capsys):
    code, out, err = _run(capsys, "invariants", _path("quaternionic.json"),
                          "--format", "json")
    assert code == 4
    doc = json.loads(out)
    assert doc["verdict"] == "undetermined (quaternionic)"
    assert doc["pieces"][0]["status"].startswith("unsupported")


def test_cobordant_worked_example_vs_zero_form(capsys):
    code, out, err = _run(capsys, "cobordant", _path("worked_example.json"),
                          _path("zero_form.json"), "--format", "json")
    assert code == 0
    assert json.loads(out)["verdict"] == "not-cobordant"
