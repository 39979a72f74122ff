import io
import json
from pathlib import Path

import pytest

from electscore.cli import main

DATA = Path(__file__).resolve().parent.parent / "data"


def run(*argv):
    out = io.StringIO()
    code = main([str(a) for a in argv], out=out)
    return code, out.getvalue()


def test_score_single_crossing_exact():
    code, out = run("score", "--rule", "dodgson", "--candidate", "p", "--domain", "single-crossing",
                    "--method", "exact", DATA / "sc4.elx")
    assert code == 0
    assert out.splitlines()[0] == "rule=dodgson candidate=p score=6 method=exact"
    assert out.splitlines()[1].startswith("certificate=moves[swap]:(")


def test_score_single_peaked_fast():
    code, out = run("score", "--rule", "dodgson", "--candidate", "p", "--domain", "single-peaked",
                    "--method", "fast", DATA / "sp101.elx")
    assert code == 0 and out.splitlines()[0] == "rule=dodgson candidate=p score=70 method=fast"


def test_fast_and_exact_agree_in_json():
    args = ["score", "--rule", "slater-2k", "--k", "3", "--candidate", "p", "--domain",
            "dichotomous", "--format", "json", DATA / "approval.elx"]
    _, fast = run(*args, "--method", "fast")
    _, exact = run(*args, "--method", "exact")
    f, x = json.loads(fast), json.loads(exact)
    assert f["score"] == x["score"] and f["method"] == "fast" and x["method"] == "exact"


def test_winner_nonempty():
    code, out = run("winner", "--rule", "young", "--domain", "dichotomous", DATA / "approval.elx")
    assert code == 0 and out.startswith("rule=young winners=") and out.split("=")[2].split()


def test_winner_fast_matches_exact():
    base = ["winner", "--rule", "young", "--domain", "dichotomous", DATA / "approval.elx"]
    assert run(*base, "--method", "fast")[1].split()[1] == run(*base, "--method", "exact")[1].split()[1]


def test_check_outputs_witness():
    code, out = run("check", "--domain", "single-crossing", DATA / "temperature.elx")
    assert code == 1 and "verdict=violated" in out and "witness=pair:" in out
    code, out = run("check", "--domain", "single-peaked", DATA / "temperature.elx")
    assert code == 0 and out.strip() == "domain=single-peaked verdict=holds"


def test_domain_violation_exit_code():
    code, _ = run("score", "--rule", "young", "--candidate", "16", "--domain", "single-crossing",
                  DATA / "temperature.elx")
    assert code == 1


def test_parse_error_exit_code(tmp_path):
    bad = tmp_path / "bad.elx"
    bad.write_text("candidates: a b\nvote: a | a\n")
    assert run("score", "--rule", "young", "--candidate", "a", bad)[0] == 2


def test_fast_without_domain_is_usage_error():
    assert run("score", "--rule", "young", "--candidate", "p", "--method", "fast",
               DATA / "approval.elx")[0] == 2


def test_budget_exit_code():
    assert run("score", "--rule", "young", "--candidate", "p", DATA / "sp101.elx")[0] == 3


def test_forge_and_verify(tmp_path):
    prefix = tmp_path / "tri"
    code, _ = run("forge", "--kind", "trichotomous-youngwinner", "--graph", DATA / "edge.graph",
                  "--graph2", DATA / "edge.graph", "--out", prefix)
    assert code == 0
    elx, claims = f"{prefix}.elx", f"{prefix}.claims.json"
    code, out = run("verify-forge", "--mode", "witness-only", elx, claims)
    assert code == 0 and out.splitlines()[-1].endswith("verdict=ok")
    assert run("verify-forge", "--mode", "full", elx, claims)[0] == 3


def test_verify_flags_corruption(tmp_path):
    prefix = tmp_path / "ys"
    run("forge", "--kind", "youngscore", "--graph", DATA / "triangle.graph", "--out", prefix)
    elx = Path(f"{prefix}.elx")
    lines = elx.read_text().splitlines(keepends=True)
    elx.write_text("".join(lines[:-1]))
    code, out = run("verify-forge", elx, f"{prefix}.claims.json")
    assert code == 4 and "mismatch" in out


def test_output_is_deterministic():
    args = ("score", "--rule", "kemeny", "--candidate", "p", "--domain", "single-peaked",
            DATA / "sp101.elx")
    assert run(*args) == run(*args)


@pytest.mark.parametrize("rule", ["young", "strongyoung", "dodgson", "weakdodgson", "kemeny",
                                  "kemeny-2m", "kemeny-22", "slater"])
def test_every_rule_runs_exact(rule):
    code, out = run("score", "--rule", rule, "--candidate", "p", "--method", "exact",
                    DATA / "approval.elx")
    assert code == 0 and out.startswith(f"rule={rule} candidate=p score=")
