import json
from pathlib import Path

import pytest

import fusion_weights
from fusion_weights.cli import main

DATA = Path(fusion_weights.__file__).parent / "data" / "groups"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_rv_report(capsys):
    code, out, _ = run(capsys, "rv", "--system", "RV1", "--prime", "7")
    rep = json.loads(out)
    assert code == 0
    assert (rep["w"], rep["m"], rep["k"]) == (35, 41, 41)
    assert "findings" not in rep


def test_rv_he_defects(capsys):
    code, out, _ = run(capsys, "rv", "--system", "He", "--prime", "7")
    assert json.loads(out)["m_by_defect"] == {"0": 0, "1": 0, "2": 3, "3": 20}


def test_rv_unknown(capsys):
    code, _, err = run(capsys, "rv", "--system", "RV1", "--prime", "5")
    assert code == 3 and "does not exist" in err


def test_table_single_prime(capsys):
    code, out, _ = run(capsys, "rv-table", "--prime", "3", "--format", "csv")
    assert code == 0
    assert [line.split(",")[1] for line in out.splitlines()[1:]] == ["2F4(2)'", "J4"]


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["rv-table", "--format", "xml"])
    assert exc.value.code == 3
    with pytest.raises(SystemExit) as exc:
        main(["group", str(DATA / "s4.json"), "--prime", "4"])
    assert exc.value.code == 3
    with pytest.raises(SystemExit) as exc:
        main(["group", str(DATA / "s4.json"), "--prime", "2", "--checks", "everything"])
    assert exc.value.code == 3


def test_group_checks(capsys):
    code, out, _ = run(capsys, "group", str(DATA / "gl2_3.json"), "--prime", "3",
                       "--checks", "main2,section5,appendix,reindex,conjectures,m-vs-mstar")
    rep = json.loads(out)
    assert code == 0
    assert all(c["pass"] for c in rep["checks"].values())
    assert set(rep["checks"]["section5"]["sums"].values()) == {rep["k"]}


def test_group_caps(capsys):
    code, _, err = run(capsys, "group", str(DATA / "s4.json"), "--prime", "2", "--cap-group-order", "10")
    assert code == 3
    code, _, err = run(capsys, "group", str(DATA / "s4.json"), "--prime", "2", "--cap-chain-sylow", "4")
    assert code == 3 and "cap" in err


def test_missing_file(capsys, tmp_path):
    code, _, _ = run(capsys, "group", str(tmp_path / "none.json"), "--prime", "2")
    assert code == 3


def test_system_files(capsys, tmp_path):
    (tmp_path / "rv.json").write_text(json.dumps({"kind": "rv", "name": "RV2", "prime": 7}))
    (tmp_path / "g.json").write_text(json.dumps({"kind": "group", "group_file": str(DATA / "d8.json"), "prime": 2}))
    code, out, _ = run(capsys, "system", str(tmp_path / "rv.json"))
    assert code == 0 and (json.loads(out)["m"], json.loads(out)["w"]) == (33, 25)
    code, out, _ = run(capsys, "system", str(tmp_path / "g.json"), "--checks", "main2")
    rep = json.loads(out)
    assert code == 0 and rep["k"] == rep["m_star"] == 5


def test_byte_stable_output(capsys, tmp_path):
    a, b = tmp_path / "a.md", tmp_path / "b.md"
    main(["group", str(DATA / "s4.json"), "--prime", "2", "--format", "md", "--out", str(a)])
    main(["group", str(DATA / "s4.json"), "--prime", "2", "--format", "md", "--out", str(b)])
    assert a.read_bytes() == b.read_bytes()


def test_failed_table_exits_2(capsys, tmp_path, monkeypatch):
    from fusion_weights.catalog.tables import load_golden

    data = load_golden("weights_table.json")
    data["rows"][7]["m2"] = "4"
    (tmp_path / "weights_table.json").write_text(json.dumps(data))
    (tmp_path / "stabilizers_table.json").write_text(json.dumps(load_golden("stabilizers_table.json")))
    monkeypatch.setenv("FW_GOLDEN_DIR", str(tmp_path))
    code, _, err = run(capsys, "rv-table", "--prime", "3")
    assert code == 2 and "J4" in err
