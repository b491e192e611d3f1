import json
import subprocess
import sys

import pytest

from longcf.cli import main
from longcf.families import FamilyId
from longcf.verify import SweepConfig, summarize, sweep, sweep_tasks, verify_instance


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_expand(capsys):
    assert run(capsys, "expand", "--d", "22")[:2] == (0, "[4; 1,2,4,2,1,8] l=6\n")
    code, out, _ = run(capsys, "expand", "--d", "41", "--json")
    assert code == 0 and json.loads(out) == {"a0": 6, "period": [2, 2, 12], "len": 3}


@pytest.mark.parametrize("argv,code", [
    (["expand", "--d", "4"], 2),
    (["expand", "--d", "94", "--max-period", "5"], 3),
    (["expand", "--d", "abc"], 1),
    (["expand"], 1),
    (["expand", "--d", "1"], 1),
    (["bogus"], 1),
    (["unit", "--d", "49"], 2),
    (["verify", "--family", "t1a", "--params", "a=1,m=1,s=1,k=1"], 4),
    (["verify", "--family", "t9", "--params", "a=1"], 1),
    (["verify", "--family", "t1", "--params", "a=1,m=1"], 1),
    (["verify", "--family", "t1", "--params", "a1"], 1),
    (["sweep", "--param-bound", "0"], 1),
    (["sweep", "--families", "t2", "--param-bound", "1", "--k-bound", "1",
      "--out", "/nonexistent-dir/x.jsonl"], 5),
    (["normalize", "--word", "1,x"], 1),
    (["normalize", "--word", "1,0,0,0,0,0,0,1", "--budget", "1"], 6),
])
def test_exit_codes(capsys, argv, code):
    assert run(capsys, *argv)[0] == code


def test_unit(capsys):
    code, out, _ = run(capsys, "unit", "--d", "22")
    assert code == 0 and out.startswith("197 + 42*sqrt(22)\nnorm +1")
    code, out, _ = run(capsys, "unit", "--d", "2", "--json")
    rec = json.loads(out)
    assert (rec["P"], rec["Q"], rec["norm"]) == ("1", "1", -1)
    code, out, _ = run(capsys, "unit", "--d", "19001864330")
    assert out.startswith("2682318982172034563 + 19458632525153*sqrt(19001864330)")


def test_unit_warns_mod8(capsys):
    code, _, err = run(capsys, "unit", "--d", "5")
    assert code == 0 and "5 (mod 8)" in err
    assert "warning" not in run(capsys, "unit", "--d", "22")[2]


def test_predict(capsys):
    code, out, _ = run(capsys, "predict", "--family", "t2", "--params", "b=1,s=1,k=1", "--json")
    rec = json.loads(out)
    assert code == 0 and rec["d"] == "41" and rec["predicted_period"] == ["2", "2", "12"]
    assert rec["unit"] == ["32", "5"]


def test_verify(capsys, tmp_path):
    out_file = tmp_path / "r.json"
    code, out, _ = run(capsys, "verify", "--family", "t1", "--params", "a=1,m=1,s=1,k=1",
                       "--out", str(out_file))
    assert code == 0 and out.rstrip().endswith("PASS")
    rec = json.loads(out_file.read_text())
    assert rec["word_match"] and rec["len_match"] and rec["unit_match"] is True
    code, out, _ = run(capsys, "verify", "--family", "t2", "--params", "b=5,s=3,k=4", "--json")
    rec = json.loads(out)
    assert code == 0 and rec["unit_match"] is True and rec["d"] == "4792683254153105"


def test_report_schema():
    rep = verify_instance("t1a", dict(a=2, m=1, s=1, k=2))
    rec = rep.to_json()
    assert list(rec) == ["family", "params", "d", "a0", "predicted_period", "oracle_period",
                         "word_match", "len_match", "unit_match", "pell_sign", "d_mod8",
                         "square_free", "notes"]
    assert isinstance(rec["d"], str) and all(isinstance(x, str) for x in rec["oracle_period"])
    assert any(n.startswith("display-mismatch") for n in rec["notes"])
    assert "signflip: agrees" in rec["notes"]
    assert rep.passed
    assert rec["pell_sign"] == (-1) ** len(rec["oracle_period"])


def test_report_invariants_over_grid():
    for line in sweep(SweepConfig(param_bound=2, k_bound=3)):
        rec = json.loads(line)
        assert not rec["word_match"] or rec["len_match"]
        assert rec["pell_sign"] == (-1) ** len(rec["oracle_period"])
        assert rec["d_mod8"] == int(rec["d"]) % 8


def test_unit_comparison_guarded_for_5_mod_8():
    tasks = sweep_tasks(SweepConfig(param_bound=3, k_bound=4))
    hits = 0
    for fid, params in tasks:
        rep = verify_instance(fid, params)
        if rep.d_mod8 == 5 and rep.instance.predicted_unit is not None:
            hits += 1
            assert rep.unit_match is None
            assert any(n.startswith("unit: not asserted") for n in rep.notes)
    assert hits > 0


def test_sweep_t2_single(capsys, tmp_path):
    out_file = tmp_path / "s.jsonl"
    code, out, _ = run(capsys, "sweep", "--families", "t2", "--param-bound", "1",
                       "--k-bound", "1", "--out", str(out_file))
    assert code == 0 and out.strip() == "instances=1 pass=1 fail=0"
    (line,) = out_file.read_text().splitlines()
    assert json.loads(line)["d"] == "41"


def test_sweep_order_is_canonical():
    tasks = sweep_tasks(SweepConfig(families=(FamilyId.T2, FamilyId.T1), param_bound=2, k_bound=2))
    keys = [(f.value, tuple(p.values())) for f, p in tasks]
    assert keys == sorted(keys)


def test_sweep_deterministic_across_jobs(tmp_path):
    paths = []
    for jobs in (1, 8):
        path = tmp_path / f"j{jobs}.jsonl"
        subprocess.run([sys.executable, "-m", "longcf", "sweep", "--families", "all",
                        "--param-bound", "2", "--k-bound", "3", "--jobs", str(jobs),
                        "--out", str(path)], check=True, capture_output=True)
        paths.append(path.read_bytes())
    assert paths[0] == paths[1] and paths[0]


def test_normalize(capsys):
    code, out, _ = run(capsys, "normalize", "--word", "1,2,0,3,4")
    assert code == 0 and out.splitlines()[0] == "1,5,4 (value 25/21)"
    assert run(capsys, "normalize", "--word", "3,-2")[1].splitlines()[0] == "2,1,1 (value 5/2)"
    assert run(capsys, "normalize", "--word", "5")[1].splitlines()[0] == "5 (value 5)"
    code, out, _ = run(capsys, "normalize", "--word", "1,0,0", "--json")
    assert json.loads(out)["value_before"] == "undefined"


def test_summarize_counts_failures():
    good = verify_instance("t1", dict(a=1, m=1, s=1, k=1)).to_json()
    bad = dict(good, word_match=False)
    assert summarize([json.dumps(good), json.dumps(bad)]) == (1, 1)
