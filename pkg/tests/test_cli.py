import csv
import io as stdio
import json

import pytest

from wvgdesign import cli
from wvgdesign.games import Game, WeightVector
from wvgdesign.io import game_from_json


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def jsonl(text):
    return [json.loads(line) for line in text.splitlines() if line.strip()]


def test_enumerate_n3(capsys):
    code, out, _ = run(capsys, "enumerate", "-n", "3")
    recs = jsonl(out)
    assert code == 0
    assert len(recs) == 11
    summary = recs[-1]
    assert summary["summary"] and summary["total"] == 10 and summary["complete"]
    assert sum(summary["histogram"].values()) == 10
    for r in recs[:-1]:
        wv = WeightVector(r["weights"]["q"], tuple(r["weights"]["w"]))
        g = Game(3, "weights", weights=wv)
        assert [format(S, "03b") for S in g.minimal_winning()] == r["wmin"]


def test_enumerate_n6_summary(capsys, tmp_path):
    out_file = tmp_path / "games.jsonl"
    code, _, _ = run(capsys, "enumerate", "-n", "6", "-o", str(out_file))
    assert code == 0
    recs = jsonl(out_file.read_text())
    assert recs[-1]["total"] == 1113 and len(recs) == 1114


def test_enumerate_usage_errors(capsys):
    for argv in (["enumerate", "-n", "0"], ["enumerate", "-n", "8"],
                 ["enumerate", "-n", "3", "--resume"], ["count"]):
        with pytest.raises(SystemExit) as exc:
            cli.main(argv)
        assert exc.value.code == 2
    capsys.readouterr()


def test_enumerate_checkpoint_and_resume(capsys, tmp_path):
    ck = tmp_path / "ck"
    code, out, _ = run(capsys, "enumerate", "-n", "4", "--checkpoint", str(ck), "--summary-only")
    assert code == 0 and jsonl(out)[-1]["total"] == 27
    code, out, _ = run(capsys, "enumerate", "-n", "4", "--checkpoint", str(ck), "--resume")
    recs = jsonl(out)
    assert code == 0 and len(recs) == 1 and recs[0]["total"] == 27
    assert (ck / "state.json").exists()


def test_count(capsys):
    code, out, _ = run(capsys, "count", "-n", "5", "--order", "depth_first")
    assert code == 0 and json.loads(out)["total"] == 119


def test_banzhaf(capsys):
    assert run(capsys, "banzhaf", "--weights", "2;1,1,1")[1].strip() == "1/3,1/3,1/3"
    code, out, _ = run(capsys, "banzhaf", "--weights", "1000;997,1,1,1", "--format", "json")
    data = json.loads(out)
    assert data["normalized"] == ["1/4"] * 4 and not data["degenerate"]
    assert run(capsys, "banzhaf", "--weights", "3/2;1,1/2")[1].strip() == "1/2,1/2"


def test_banzhaf_bad_weights(capsys):
    code, _, err = run(capsys, "banzhaf", "--weights", "2;1,x")
    assert code == 2 and "error" in err


def test_convert_round_trip(capsys, tmp_path):
    wv = WeightVector.parse("4;3,2,2,1")
    src = Game(4, "weights", weights=wv)
    path = tmp_path / "g.json"
    path.write_text(json.dumps({"n": 4, "tag": "wmin",
                                "coalitions": [format(S, "04b") for S in src.minimal_winning()]}))
    code, out, _ = run(capsys, "convert", "-i", str(path), "--to", "weights")
    data = json.loads(out)
    assert code == 0 and data["result"] == "ok"
    assert game_from_json(data["game"]).table == src.table


def test_convert_not_weighted(capsys, tmp_path):
    path = tmp_path / "g.json"
    path.write_text(json.dumps({"n": 4, "tag": "wmin", "coalitions": ["1100", "0011"]}))
    code, out, _ = run(capsys, "convert", "-i", str(path), "--to", "weights")
    assert code == 1 and json.loads(out)["result"] == "not_weighted"


def test_convert_refuses_exponential(capsys, tmp_path, monkeypatch):
    path = tmp_path / "r.json"
    path.write_text(json.dumps({"n": 4, "tag": "roof", "coalitions": ["1100"]}))
    code, out, _ = run(capsys, "convert", "-i", str(path), "--to", "ceil")
    data = json.loads(out)
    assert code == 1 and data["result"] == "refused" and "EXP" in data["reason"]
    code, out, _ = run(capsys, "convert", "-i", str(path), "--to", "ceil", "--allow-exponential")
    assert code == 0 and json.loads(out)["game"]["coalitions"] == ["1011"]
    monkeypatch.setattr("sys.stdin", stdio.StringIO(path.read_text()))
    code, out, _ = run(capsys, "convert", "-i", "-", "--to", "wmin")
    assert code == 1 and json.loads(out)["result"] == "refused"


def test_convert_malformed_input(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    assert run(capsys, "convert", "-i", str(path), "--to", "wmin")[0] == 2
    assert run(capsys, "convert", "-i", str(tmp_path / "missing.json"), "--to", "wmin")[0] == 2


def test_solve_attainable(capsys, tmp_path):
    report = tmp_path / "report.json"
    code, out, _ = run(capsys, "solve", "--target", "0.6,0.2,0.2", "--report", str(report))
    recs = jsonl(out)
    assert code == 0
    final = recs[-1]["final"]
    assert final["exhausted"] and final["best"]["error"] == 0
    assert json.loads(report.read_text()) == final
    errs = [r["improvement"]["error"] for r in recs[:-1]]
    assert errs == sorted(errs, reverse=True) and len(set(errs)) == len(errs)


def test_solve_target_file_and_sorting(capsys, tmp_path):
    tf = tmp_path / "t.json"
    tf.write_text("[0.2, 0.2, 0.6]")
    code, out, _ = run(capsys, "solve", "--target-file", str(tf), "--sort-target")
    final = jsonl(out)[-1]["final"]
    assert code == 0 and final["target"] == [0.6, 0.2, 0.2]
    assert final["player_order"] == [2, 0, 1]
    with pytest.raises(SystemExit):
        cli.main(["solve", "--target-file", str(tf)])
    with pytest.raises(SystemExit):
        cli.main(["solve", "--target", "0.5,abc"])
    capsys.readouterr()


def test_solve_budgeted_n8(capsys):
    code, out, _ = run(capsys, "solve", "--target", ",".join(["0.125"] * 8),
                       "--games-budget", "1000")
    final = jsonl(out)[-1]["final"]
    assert code == 0 and final["exhausted"] is False and final["games_scored"] == 1000


def test_solve_interrupt_flushes_partial_report(capsys, monkeypatch, tmp_path):
    real = cli._improvement_record
    calls = []

    def record(imp, n):
        calls.append(imp)
        if len(calls) == 2:     # Ctrl-C while streaming the second improvement
            raise KeyboardInterrupt
        return real(imp, n)

    monkeypatch.setattr(cli, "_improvement_record", record)
    report = tmp_path / "r.json"
    code, out, _ = run(capsys, "solve", "--target", "0.3,0.25,0.2,0.15,0.1", "--report", str(report))
    final = jsonl(out)[-1]["final"]
    assert code == 130
    assert final["interrupted"] and not final["exhausted"] and final["best"] is not None
    assert json.loads(report.read_text())["interrupted"]


def test_sample_is_deterministic(capsys):
    a = run(capsys, "sample", "-n", "4", "--seed", "7")[1]
    b = run(capsys, "sample", "-n", "4", "--seed", "7")[1]
    assert a == b
    vals = [float(x) for x in a.strip().split(",")]
    assert len(vals) == 4 and abs(sum(vals) - 1) < 1e-12
    many = run(capsys, "sample", "-n", "3", "--count", "5")[1].splitlines()
    assert len(many) == 5 and len(set(many)) == 5


def test_experiments_histogram_csv(capsys):
    code, out, _ = run(capsys, "experiments", "--exp", "2", "-n", "4")
    rows = list(csv.DictReader(stdio.StringIO(out)))
    assert code == 0 and sum(int(r["games"]) for r in rows) == 27
    code, out, _ = run(capsys, "experiments", "--exp", "3", "-n", "3",
                       "--instances", "5", "--format", "jsonl")
    assert code == 0 and jsonl(out)[0]["instances"] == 5
