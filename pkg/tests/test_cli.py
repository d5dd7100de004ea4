import json

import pytest

from dgk.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out.strip(), out.err.strip()


def test_compute_d(capsys):
    code, out, _ = run(capsys, "compute", "d", "[3,2]")
    assert (code, out) == (0, "5")
    code, out, _ = run(capsys, "compute", "d", "[]")
    assert (code, out) == (0, "1")


def test_compute_fractions_exact(capsys):
    code, out, _ = run(capsys, "compute", "e", "[2,3]")
    assert (code, out) == (0, "3/5")
    code, out, _ = run(capsys, "compute", "etilde", "[2,3]")
    assert (code, out) == (0, "2/5")
    code, out, _ = run(capsys, "compute", "delta", "[2,3]")
    assert (code, out) == (0, "1/5")


def test_compute_bark_json_roundtrip(capsys):
    code, out, _ = run(capsys, "--json", "compute", "bark", "[2,3]")
    assert code == 0
    payload = json.loads(out)
    assert payload["bk_square"] == "-7/5"
    assert json.dumps(json.loads(out), indent=2, sort_keys=True) == out


def test_enumerate_chains(capsys):
    code, out, _ = run(capsys, "enumerate", "chains", "--d", "7")
    assert code == 0
    assert out.splitlines() == ["[(6)]", "[(2),3]", "[2,4]", "[7]"]


def test_pairs_roundtrip(capsys):
    code, out, _ = run(capsys, "pairs", "reconstruct", "14", "3")
    assert code == 0
    assert out == "[5:1,3:5,1*:14,2:9,3:4,2:3,2:2,2:1]"
    code, out2, _ = run(capsys, "pairs", "extract", out)
    assert (code, out2) == (0, "(14,3)")
    code, out3, _ = run(capsys, "pairs", "extract", "[5,3,1,2,3,(3)]")
    assert (code, out3) == (0, "(14,3)")


def test_domain_error_exit_code(capsys):
    code, _, err = run(capsys, "compute", "d", "[3,0]")
    assert code == 1
    assert "error" in err
    code, _, err = run(capsys, "compute", "e", "[1,1]")
    assert code == 1


def test_usage_error_exit_code(capsys):
    assert main(["compute", "nonsense", "[2]"]) == 2


def test_group_order_fork(capsys):
    code, out, _ = run(
        capsys, "compute", "group", '{"b":2,"twigs":["[2]","[2]","[3]"]}'
    )
    assert (code, out) == (0, "24")


def test_solve_twofiber_json(capsys):
    code, out, _ = run(
        capsys, "--json", "solve", "twofiber",
        "--t1", "[2]", "--t2", "[4]", "--e", "[4]",
    )
    assert code == 0
    payload = json.loads(out)
    assert len(payload) == 1
    assert payload[0]["t3"] == "[(8),4]"
    assert payload[0]["rejected_by_square_gcd"] is True


def test_json_and_text_encode_same_values(capsys):
    code, text, _ = run(capsys, "compute", "e", "[3,2]")
    code2, js, _ = run(capsys, "--json", "compute", "e", "[3,2]")
    assert json.loads(js)["e"] == text


def test_verify_golden_dir_override_and_mismatch(capsys, tmp_path, monkeypatch):
    import shutil
    from pathlib import Path

    src = Path(__file__).resolve().parent.parent / "golden"
    for f in src.glob("*.json"):
        shutil.copy(f, tmp_path / f.name)
    # a tampered golden must be detected and flip the exit code to 3
    target = tmp_path / "search_xy.json"
    target.write_text(json.dumps([]))
    monkeypatch.setenv("DGK_GOLDEN_DIR", str(tmp_path))
    code, out, _ = run(capsys, "verify", "--suite", "paper")
    assert code == 3
    assert "mismatch" in out
    # restoring the real file brings it back to 0
    shutil.copy(src / "search_xy.json", target)
    code, out, _ = run(capsys, "verify", "--suite", "paper")
    assert code == 0
    assert "all searches match" in out
