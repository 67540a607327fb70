from __future__ import annotations

import io
import json
import math
import subprocess
import sys
from pathlib import Path

import pytest

from bellgame import cli
from bellgame.errors import ConsistencyFailure
from bellgame.game_core import GameParams, PAPPA_PARAMS
from bellgame.specfile import GameSpecDocument, dump_game_spec, load_game_spec

REPO = Path(__file__).resolve().parents[1]


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.main(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def write_spec(tmp_path, params: GameParams, name="game.json"):
    path = tmp_path / name
    path.write_text(dump_game_spec(GameSpecDocument(name, params)))
    return str(path)


@pytest.fixture
def zero_spec(tmp_path):
    return write_spec(tmp_path, GameParams.zero(), "zero.json")


@pytest.fixture
def unfair_spec(tmp_path):
    return write_spec(tmp_path, GameParams(**{**PAPPA_PARAMS.as_dict(), "s6": 2}), "unfair.json")


def test_validate_pappa():
    code, out, _ = run("--format", "json", "validate", "--pappa")
    assert code == 0
    doc = json.loads(out)
    assert doc["constraints"]["all_pass"]
    assert doc["constraints"]["fairness_residual"] == "0"


def test_validate_zero(zero_spec):
    code, out, _ = run("validate", zero_spec)
    assert code == 1
    assert "FAIL boundary" in out


def test_validate_missing_key(tmp_path):
    data = json.loads(dump_game_spec(GameSpecDocument("x", PAPPA_PARAMS)))
    del data["params"]["s14"]
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(data))
    code, _, err = run("validate", str(path))
    assert code == 2
    assert "s14" in err


def test_no_game_is_parse_error():
    assert run("validate")[0] == 2
    assert run("bogus")[0] == 2


def test_classical_pappa():
    code, out, _ = run("--format", "json", "classical", "--pappa")
    assert code == 0
    section = json.loads(out)["classical"]
    payoffs = {tuple(e["payoffs"]) for e in section["equilibria"] if not e["fair"]}
    assert payoffs == {("11/16", "7/16"), ("7/16", "11/16")}
    assert section["bound"] == "9/8"
    assert section["affine"] == {"alpha": "-3/16", "beta": "3/4"}


def test_classical_zero_warns_and_refuses(zero_spec):
    code, out, _ = run("classical", zero_spec)
    assert code == 1
    assert "degenerate" in out
    assert "not a conflicting-interest game" in out


def test_quantum_pappa():
    code, out, _ = run("--format", "json", "quantum", "--pappa")
    assert code == 0
    q = json.loads(out)["quantum"]
    assert abs(q["fair_payoff"] - 0.6401650429) < 1e-10
    assert abs(q["total"] - 1.2803300858) < 1e-10
    assert abs(abs(q["chsh"]) - 2 * math.sqrt(2)) < 1e-9
    assert q["fair_payoff_exact"] == "(6 + 3√2)/16"


def test_quantum_unfair_spec(unfair_spec):
    code, _, err = run("quantum", unfair_spec)
    assert code == 1
    assert "ConstraintViolated" in err


def test_quantum_internal_failure(monkeypatch):
    import bellgame.report as report

    def broken(params, grid_step, tolerance):
        raise ConsistencyFailure("optimizer payoff off")

    monkeypatch.setattr(cli, "quantum_section", broken)
    assert run("quantum", "--pappa")[0] == 3
    real = report.quantum_section

    def negative_tolerance(params, grid_step, tolerance):
        # No mismatch can be within a negative tolerance.
        return real(params, grid_step, -1.0)

    monkeypatch.setattr(cli, "quantum_section", negative_tolerance)
    assert run("quantum", "--pappa")[0] == 3


def test_compare_pappa():
    code, out, _ = run("--format", "json", "compare", "--pappa")
    assert code == 0
    doc = json.loads(out)
    assert abs(doc["quantum"]["advantage_over_classical"] - 3 * (math.sqrt(2) - 1) / 8) < 1e-9
    assert doc["verdicts"] == {"is_conflicting_interest": True, "quantum_restores_fairness": True}


def test_compare_unfair_spec_omits_quantum(unfair_spec):
    code, out, _ = run("--format", "json", "compare", unfair_spec)
    doc = json.loads(out)
    assert doc["quantum"] is None
    assert any("fairness" in n for n in doc["notes"])
    assert not doc["verdicts"]["quantum_restores_fairness"]
    assert code == 0


def test_compare_text_output():
    code, out, _ = run("compare", "--pappa")
    assert code == 0
    assert "classical bound     9/8" in out
    assert "(6 + 3√2)/16" in out


def test_sample_then_validate(tmp_path):
    code, out, _ = run("--format", "json", "sample", "--count", "1", "--seed", "42")
    assert code == 0
    (game,) = json.loads(out)["games"]
    path = tmp_path / "s.json"
    path.write_text(json.dumps(game))
    assert run("validate", str(path))[0] == 0


def test_sample_exhausted():
    code, _, err = run("sample", "--min-num", "0", "--max-num", "0", "--attempts", "100")
    assert code == 1
    assert "SamplingExhausted" in err


def test_sampled_games_compare_with_positive_advantage(tmp_path):
    code, out, _ = run("--format", "json", "sample", "--count", "100", "--seed", "5")
    assert code == 0
    for i, game in enumerate(json.loads(out)["games"]):
        path = tmp_path / f"g{i}.json"
        path.write_text(json.dumps(game))
        code, rep, _ = run("--format", "json", "compare", str(path))
        assert code == 0
        doc = json.loads(rep)
        assert doc["quantum"]["advantage_over_classical"] > 0


def test_reports_are_byte_identical():
    first = run("--format", "json", "compare", "--pappa")[1]
    second = run("--format", "json", "compare", "--pappa")[1]
    assert first == second
    assert run("sample", "--count", "4", "--seed", "3")[1] == run("sample", "--count", "4", "--seed", "3")[1]


def test_grid_step_and_tolerance_flags():
    code, out, _ = run("--format", "json", "quantum", "--pappa", "--grid-step", "pi/16", "--tolerance", "1e-8")
    assert code == 0
    tol = json.loads(out)["quantum"]["tolerances"]
    assert tol["optimum"] == 1e-8
    assert abs(tol["grid_step"] - math.pi / 16) < 1e-14


def test_pappa_flag_equals_shipped_file():
    shipped = REPO / "specs" / "pappa.json"
    assert load_game_spec(shipped).params == PAPPA_PARAMS
    assert run("--format", "json", "compare", str(shipped))[1] == run("--format", "json", "compare", "--pappa")[1]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "bellgame", "validate", "--pappa"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert "conflict            ok" in proc.stdout
