import json
import os

from superfit.cli import EXIT_FAILED, EXIT_OK, EXIT_USAGE, main, parse_range
from superfit.core.records import RecordLog

if "SCRATCH" in os.environ:
    tmpdir = os.environ["SCRATCH"]
else:
    tmpdir = "/tmp/"


def test_ann_square_1111(capsys):
    assert main(["ann", "1", "1", "1", "1"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "4 minimal generators" in out
    assert out.count("[3]") == 4


def test_ann_json_is_deterministic(capsys):
    assert main(["ann", "0", "2", "2", "0", "--json"]) == EXIT_OK
    first = capsys.readouterr().out
    assert main(["ann", "0", "2", "2", "0", "--json"]) == EXIT_OK
    assert capsys.readouterr().out == first
    data = json.loads(first)
    assert data["annihilator"]["degrees"] == [2, 2, 2]


def test_ann_characteristic_two(capsys):
    assert main(["ann", "1", "1", "1", "1", "--char", "2", "--json"]) == EXIT_OK
    data = json.loads(capsys.readouterr().out)
    assert 2 in data["annihilator"]["degrees"]


def test_usage_errors(capsys):
    assert main(["ann", "1", "1", "1", "1", "--char", "4"]) == EXIT_USAGE
    assert "error" in capsys.readouterr().err
    assert main(["verify", "thm1a"]) == EXIT_USAGE
    assert main(["z", "0", "1", "0", "0"]) == EXIT_USAGE


def test_verify_passes():
    assert main(["verify", "thm1a", "0", "2", "2", "0"]) == EXIT_OK
    assert main(["verify", "lie", "1", "1", "1", "1"]) == EXIT_OK
    assert main(["verify", "cauchy", "--tmax", "4", "--dims", "2", "2", "2", "2"]) == EXIT_OK


def test_verify_mismatch_fails(capsys):
    assert main(["verify", "thm1a", "1", "1", "1", "1", "--char", "2"]) == EXIT_FAILED
    assert "mismatch" in capsys.readouterr().out


def test_conjecture_never_fails():
    assert main(["verify", "conj41", "0", "1", "1", "0", "--imax", "2",
                 "--reading", "literal"]) == EXIT_OK


def test_resolve(capsys):
    assert main(["resolve", "2", "0", "3", "0", "--imax", "2", "--jmax", "4"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "3|0" in out
    assert "F_2: match" in out


def test_z(capsys):
    assert main(["z", "1", "1", "2", "0", "--json"]) == EXIT_OK
    data = json.loads(capsys.readouterr().out)
    assert data["z"] == "x1_1*b1_1*b1_2"
    assert data["degree"] == 3


def test_parse_range():
    assert parse_range("0-2") == [0, 1, 2]
    assert parse_range("0,3") == [0, 3]
    assert parse_range("1-0") == []


def test_sweep_is_resumable(tmp_path, capsys):
    out = str(tmp_path / "thm1a.jsonl")
    args = ["sweep", "thm1a", "--d", "1-2", "--e", "0", "--m", "1", "--n", "0", "--out", out]
    assert main(args) == EXIT_OK
    records = RecordLog(out).read()
    assert [r.instance["d"] for r in records] == [1, 2]
    assert all(r.summary["status"] == "pass" for r in records)
    assert main(args) == EXIT_OK
    assert len(RecordLog(out).read()) == 2
    assert "0 new records" in capsys.readouterr().out


def test_empty_sweep(tmp_path):
    out = str(tmp_path / "empty.jsonl")
    assert main(["sweep", "ann", "--d", "1-0", "--out", out]) == EXIT_OK
    assert os.path.exists(out)
    assert RecordLog(out).read() == []


def test_sweep_default_location(monkeypatch, capsys):
    monkeypatch.setenv("SUPERFIT_LOG_DIR", tmpdir)
    path = os.path.join(tmpdir, "superfit_shift.jsonl")
    if os.path.exists(path):
        os.remove(path)
    assert main(["sweep", "shift", "--d", "1", "--e", "0", "--m", "1", "--n", "0"]) == EXIT_OK
    assert len(RecordLog(path).read()) == 1
    os.remove(path)


def test_errors_fail_exploratory_sweeps(tmp_path, capsys):
    for claim in ("ann", "conj41"):
        out = str(tmp_path / ("%s.jsonl" % claim))
        assert main(["sweep", claim, "--d", "1", "--e", "0", "--m", "1", "--n", "0",
                     "--char", "6", "--out", out]) == EXIT_FAILED
        (record,) = RecordLog(out).read()
        assert record.summary["status"] == "error"
    assert "error" in capsys.readouterr().out


def test_conjecture_sweep_records_reading(tmp_path):
    out = str(tmp_path / "conj41.jsonl")
    assert main(["sweep", "conj41", "--d", "0", "--e", "1", "--m", "1", "--n", "0",
                 "--imax", "2", "--reading", "literal", "--out", out]) == EXIT_OK
    (record,) = RecordLog(out).read()
    assert record.params == {"claim": "conj41", "seed": 0, "reading": "literal"}
