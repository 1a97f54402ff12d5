# tests/test_commands.py
import pytest
import yaml

from main import main


def run(capsys, *argv):
    code = main(list(argv))
    return code, yaml.safe_load(capsys.readouterr().out)


def test_root_data(capsys):
    code, data = run(capsys, "root-data", "--catalog", "sl3-outer")
    assert code == 0
    assert data["marks"] == ["1/2", "0"]
    assert data["cartan_matrix"] == [["2", "-4"], ["-1", "2"]]


def test_decompose(capsys):
    code, data = run(capsys, "decompose", "--catalog", "sl2-gl1")
    assert code == 0
    kernel = data["kernel"]
    assert kernel["power"] == 0
    assert all(e["dirac_square"] == "0" and e["dominant"] for e in kernel["entries"])


def test_decompose_orthogonal_only(capsys):
    code, data = run(capsys, "decompose", "--catalog", "so8-reflection")
    assert code == 0
    assert data["orthogonal"]["case"] == "even-det-1"
    assert "kernel" not in data


@pytest.mark.parametrize("name", ["so5-identity", "sl3-so3", "diag-sl2"])
def test_clifford(capsys, name):
    code, data = run(capsys, "clifford", "--catalog", name, "--cutoff", "3/2")
    assert code == 0
    assert all(c["holds"] for c in data["checks"])


def test_asdim(capsys):
    code, data = run(capsys, "asdim", "--catalog", "sl2-gl1", "--level", "1", "--list-level", "1")
    assert code == 0
    assert data["central_charge"]["value"] == "1"
    assert data["center_lattice"]["index"] == "4"
    assert len(data["dominant_weights"]) == 2


def test_verify_passes(capsys):
    code, data = run(capsys, "verify", "--catalog", "sl2-gl1")
    assert code == 0
    assert data["passed"]


def test_output_file(tmp_path, capsys):
    path = tmp_path / "reports" / "sl2.yaml"
    assert main(["decompose", "--catalog", "sl2-gl1", "--output", str(path)]) == 0
    assert capsys.readouterr().out == ""
    assert yaml.safe_load(path.read_text(encoding="utf-8"))["kernel"]["entries"]


def test_golden_mismatch_fails(tmp_path, capsys):
    golden = tmp_path / "golden.yaml"
    assert main(["decompose", "--catalog", "sl2-gl1", "--output", str(golden)]) == 0
    assert main(["verify", "--catalog", "sl2-gl1", "--golden", str(golden)]) == 0
    data = yaml.safe_load(golden.read_text(encoding="utf-8"))
    data["kernel"]["entries"][0]["weight"]["a1"] = "7"
    golden.write_text(yaml.safe_dump(data), encoding="utf-8")
    capsys.readouterr()
    code, report = run(capsys, "verify", "--catalog", "sl2-gl1", "--golden", str(golden))
    assert code == 1
    failed = [c for c in report["checks"] if c.get("holds") is False]
    assert [c["identity"] for c in failed] == ["golden-report"]


def test_bad_input_exits_2(tmp_path):
    bad = tmp_path / "bad.yaml"
    bad.write_text("algebra: [B1]\n", encoding="utf-8")
    assert main(["decompose", "--config", str(bad)]) == 2
    assert main(["root-data", "--catalog", "sl9-nowhere"]) == 2
    assert main(["clifford", "--catalog", "sl2-gl1", "--cutoff", "-1"]) == 2


def test_no_command():
    assert main([]) == 2
