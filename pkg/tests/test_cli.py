import json

import pytest

import pylie.config as config
from pylie.cli import main, parse_partition, TEXT_COLUMNS
from pylie.utils import records_to_df
from pylie.errors import InputError


def run(capsys, *argv):
    code = main([*argv, "--no-log"])
    return code, capsys.readouterr().out


def records(out):
    return [json.loads(line) for line in out.splitlines() if line.startswith("{")]


def test_build_jsonl(capsys):
    code, out = run(capsys, "build", "--type", "A", "--rank", "1", "--format", "jsonl")
    assert code == 0
    (record,) = records(out)
    assert record["dim"] == 3 and record["positive_roots"] == 1
    assert record["jacobi"] == "exhaustive" and record["jacobi_triples"] == 1
    assert record["v"] == 1 and record["seed"] == 0 and record["trials"] == 5
    assert "timing_ms" not in record


def test_build_invalid_type(capsys):
    code, out = run(capsys, "build", "--type", "F", "--rank", "5")
    assert code == 2
    assert out.startswith("❌ build:")


def test_orbit_info_by_alias(capsys):
    code, out = run(capsys, "orbit-info", "subregular", "--format", "jsonl")
    assert code == 0
    (record,) = records(out)
    assert record["key"] == "E6:1"
    assert record["dims"] == {"gxi": 8, "z": 5, "n": 13}


def test_orbit_info_text_has_header(capsys):
    code, out = run(capsys, "orbit-info", "G2:1")
    assert code == 0
    header = out.splitlines()[0]
    assert "key" in header and "dims.gxi" in header and "time_s" in header
    assert "G2:1: pass" in out


def test_unknown_orbit(capsys):
    code, _ = run(capsys, "orbit-info", "E8:11")
    assert code == 2


def test_verify_g2(capsys):
    code, out = run(capsys, "verify", "--orbit", "G2:1", "--format", "jsonl", "--timing")
    assert code == 0
    (record,) = records(out)
    assert record["ok"]
    assert record["ind_n"] == record["ind_n_gxi"] == record["target"] == 0
    assert record["propP"]["status"] == "exact-pass"
    assert isinstance(record["timing_ms"], int)


@pytest.mark.parametrize("command, argv", [
    ("orbit-info", ["orbit-info", "G2:1"]),
    ("verify", ["verify", "--orbit", "G2:1"]),
])
def test_text_and_jsonl_agree(capsys, command, argv):
    _, text = run(capsys, *argv)
    _, jsonl = run(capsys, *argv, "--format", "jsonl")
    header, row = text.splitlines()[:2]
    table = dict(zip(header.split(), row.split()))
    flat = records_to_df(records(jsonl)).iloc[0]
    shown = [c for c in TEXT_COLUMNS[command] if c in table]
    assert "dims.gxi" in shown and "key" in shown
    for column in shown:
        assert table[column] == str(flat[column]), column


def test_verify_output_is_reproducible(capsys, tmp_path):
    first, second = tmp_path / "first.jsonl", tmp_path / "second.jsonl"
    for path in (first, second):
        code, _ = run(capsys, "verify", "--orbit", "E6:1", "--format", "jsonl", "--output", str(path))
        assert code == 0
    text = first.read_text(encoding="utf-8")
    assert text == second.read_text(encoding="utf-8")
    record = json.loads(text)
    assert record["v"] == 1 and "timing_ms" not in record


def test_output_appends(capsys, tmp_path):
    path = tmp_path / "out.jsonl"
    for _ in range(2):
        run(capsys, "build", "--type", "A", "--rank", "2", "--format", "jsonl", "--output", str(path))
    lines = path.read_text(encoding="utf-8").splitlines()
    assert len(lines) == 2 and lines[0] == lines[1]


def test_classical_invalid_partition(capsys):
    code, _ = run(capsys, "classical", "--family", "sp", "--partition", "3,1")
    assert code == 2


def test_classical_regular_sl4(capsys):
    code, out = run(capsys, "classical", "--family", "sl", "--partition", "4", "--format", "jsonl")
    assert code == 0
    (record,) = records(out)
    assert record["theorems"]["ind_n_z"] == 0
    assert record["partition"] == [4]


@pytest.mark.parametrize("flag", [["--trials", "0"], ["--bound", "0"], ["--seed", "-1"], ["--workers", "0"]])
def test_invalid_settings(capsys, flag):
    code, _ = run(capsys, "verify", "--orbit", "G2:1", *flag)
    assert code == 2


def test_settings_come_from_config(capsys):
    config_path = config.CONFIG_PATH
    with open(config_path, "w", encoding="utf-8") as f:
        json.dump({"RANK_CONFIG": {"trials": 2, "seed": 9}}, f)
    code, out = run(capsys, "build", "--type", "A", "--rank", "1", "--format", "jsonl", "--bound", "50")
    assert code == 0
    (record,) = records(out)
    assert (record["trials"], record["bound"], record["seed"]) == (2, 50, 9)


def test_init_config(capsys, isolated_config):
    assert main(["init-config"]) == 0
    assert isolated_config.exists()
    assert json.loads(isolated_config.read_text(encoding="utf-8"))["RANK_CONFIG"]["trials"] == 5
    capsys.readouterr()
    main(["init-config"])
    assert "already exists" in capsys.readouterr().out


def test_parse_partition():
    assert parse_partition("5, 3") == [5, 3]
    with pytest.raises(InputError):
        parse_partition("5,x")
    with pytest.raises(InputError):
        parse_partition(",")
