import json
import subprocess
import sys

import pytest

from wordlab.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, [json.loads(l) for l in out.splitlines() if l.startswith("{")], out


def test_gen(capsys):
    assert main(["gen", "--word", "thue-morse", "--len", "21"]) == 0
    assert capsys.readouterr().out.strip() == "011010011001011010010"
    assert main(["gen", "--word", "periodic:ab", "--len", "5"]) == 0
    assert capsys.readouterr().out.strip() == "ababa"


def test_verify_sequential_violation(capsys):
    code, (rec,), _ = run(capsys, "verify", "--word", "thue-morse", "--coloring", "prefix-of:thue-morse",
                          "--cuts", "0,1,3,6", "--notion", "sequential")
    assert code == 1 and rec["verdict"] == "Violated"
    assert rec["witness"]["word"] == "11"


def test_output_is_deterministic(capsys):
    argv = ["search", "--notion", "mono", "--word", "thue-morse", "--coloring", "prefix-of:thue-morse",
            "--horizon", "48", "--block-cap", "24"]
    first = run(capsys, *argv)
    second = run(capsys, *argv)
    assert first == second and first[0] == 0


def test_certificate_round_trip(capsys, tmp_path):
    out = tmp_path / "c.jsonl"
    assert main(["hindman", "--coloring", "mod:2", "--len", "3", "--sum-max", "100", "--out", str(out)]) == 0
    assert capsys.readouterr().out == ""
    rec = json.loads(out.read_text())
    assert rec["witness"]["sequence"] == [2, 4, 6]
    code, (check,), _ = run(capsys, "verify", "--certificate", str(out))
    assert code == 0 and check["details"]["reason"] == "reproduced"


def test_tampered_certificate(capsys, tmp_path):
    out = tmp_path / "c.jsonl"
    main(["hindman", "--coloring", "mod:2", "--len", "3", "--sum-max", "100", "--out", str(out)])
    out.write_text(out.read_text().replace("[2,4,6]", "[2,4,8]"))
    code, (check,), _ = run(capsys, "verify", "--certificate", str(out))
    assert code == 1 and check["verdict"] == "Violated"


def test_exhausted_exit_code(capsys):
    code, (rec,), _ = run(capsys, "hindman", "--coloring", "mod:2", "--len", "4", "--sum-max", "10")
    assert code == 2 and rec["verdict"] == "Exhausted"


@pytest.mark.parametrize("argv", [
    [],
    ["gen", "--word", "nope", "--len", "3"],
    ["gen", "--word", "thue-morse", "--len", "-1"],
    ["verify", "--word", "thue-morse", "--coloring", "bogus:1", "--cuts", "0,1"],
    ["props", "--word", "fibonacci", "--horizon", "10", "--complexity", "9"],
    ["search", "--notion", "ultra", "--word", "fibonacci", "--coloring", "len-mod:2", "--horizon", "9"],
])
def test_usage_errors(capsys, argv):
    assert main(argv) == 3


def test_props_and_sturmian_commands(capsys):
    code, recs, _ = run(capsys, "props", "--word", "fibonacci", "--horizon", "2000", "--power-free", "4",
                        "--balanced", "30", "--complexity", "10")
    assert code == 0 and len(recs) == 3
    code, (rec,), _ = run(capsys, "sturmian-witness", "--word", "fibonacci", "--power-free", "2",
                          "--cuts", "0,1,3,6,7,9,12")
    assert code == 0 and rec["verdict"] == "WitnessFound"
    code, (rec,), _ = run(capsys, "refute", "--word", "fibonacci", "--power-free", "2", "--offset", "5",
                          "--cuts", "0,1,3,6,7,9,12")
    assert code == 1 and rec["verdict"] == "Violated"


def test_sif_and_milliken(capsys):
    code, (rec,), _ = run(capsys, "sif", "--period", "ab", "--coloring", "len-mod:2", "--len", "3")
    assert code == 0 and rec["claim"] == "sif"
    code, (rec,), _ = run(capsys, "milliken", "--arity", "2", "--coloring", "mod:2", "--coloring", "mod:3",
                          "--len", "3", "--sum-max", "400")
    assert code == 0


def test_module_entry_point():
    p = subprocess.run([sys.executable, "-m", "wordlab.cli", "gen", "--word", "fibonacci", "--len", "8"],
                       capture_output=True, text=True)
    assert p.returncode == 0 and p.stdout.strip() == "01001010"
