"""CLI behavior through real subprocesses: output bytes and exit codes."""

import subprocess
import sys

import pytest

TUTORIAL_DIMACS = (
    "p cnf 4 7\n"
    "1 2 -3 0\n"
    "-1 2 -3 0\n"
    "1 -2 -3 0\n"
    "-1 -2 -3 0\n"
    "3 4 0\n"
    "1 -4 0\n"
    "2 -4 0\n"
)
CONTRADICTION = "p cnf 1 2\n1 0\n-1 0\n"


def run_cli(*args, **kwargs):
    return subprocess.run(
        [sys.executable, "-m", "tokensat", *args],
        capture_output=True,
        text=True,
        **kwargs,
    )


@pytest.fixture
def tutorial_file(tmp_path):
    path = tmp_path / "tutorial.cnf"
    path.write_text(TUTORIAL_DIMACS)
    return str(path)


@pytest.fixture
def unsat_file(tmp_path):
    path = tmp_path / "unsat.cnf"
    path.write_text(CONTRADICTION)
    return str(path)


class TestSolve:
    def test_dpll_on_tutorial(self, tutorial_file):
        proc = run_cli("solve", tutorial_file, "--engine", "dpll")
        assert proc.returncode == 10
        assert proc.stdout == "s SATISFIABLE\nv 1 2 -3 4 0\n"

    def test_brute_on_contradiction(self, unsat_file):
        proc = run_cli("solve", unsat_file, "--engine", "brute")
        assert proc.returncode == 20
        assert proc.stdout == "s UNSATISFIABLE\n"

    def test_local_reports_unknown(self, unsat_file):
        proc = run_cli(
            "solve", unsat_file, "--engine", "local",
            "--seed", "1", "--max-flips", "200", "--restarts", "2",
        )
        assert proc.returncode == 0
        assert proc.stdout == "s UNKNOWN\n"

    def test_local_finds_tutorial_model(self, tutorial_file):
        proc = run_cli("solve", tutorial_file, "--engine", "local", "--seed", "5")
        assert proc.returncode == 10
        assert proc.stdout.splitlines()[1] == "v 1 2 -3 4 0"

    def test_unreadable_file(self):
        proc = run_cli("solve", "no-such-file.cnf")
        assert proc.returncode == 1
        assert "error:" in proc.stderr

    def test_invalid_dimacs(self, tmp_path):
        bad = tmp_path / "bad.cnf"
        bad.write_text("p cnf 1 1\n2 0\n")
        proc = run_cli("solve", str(bad))
        assert proc.returncode == 1
        assert "line 2" in proc.stderr

    def test_byte_identical_repeat_runs(self, tutorial_file, unsat_file):
        for args in (
            ("solve", tutorial_file, "--engine", "dpll"),
            ("solve", unsat_file, "--engine", "local", "--seed", "3",
             "--max-flips", "100", "--restarts", "2"),
        ):
            first = run_cli(*args)
            second = run_cli(*args)
            assert first.stdout == second.stdout
            assert first.returncode == second.returncode


class TestConvert:
    def test_cnf_to_game_and_back(self, tutorial_file, tmp_path):
        game = tmp_path / "board.json"
        proc = run_cli("convert", tutorial_file, "--direction", "cnf2game", "-o", str(game))
        assert proc.returncode == 0
        text = game.read_text()
        assert text.count('"color"') == 18
        assert '"numColors":4' in text
        back = run_cli("convert", str(game), "--direction", "game2cnf")
        assert back.stdout == TUTORIAL_DIMACS

    def test_empty_formula(self, tmp_path):
        empty = tmp_path / "empty.cnf"
        empty.write_text("p cnf 0 0\n")
        proc = run_cli("convert", str(empty), "--direction", "cnf2game")
        assert proc.stdout == '{"numColors":0,"boxes":[]}\n'

    def test_random_round_trips(self, tmp_path, capsys):
        """100 generated instances survive cnf2game + game2cnf byte-for-byte.
        Runs the command entry point in-process; spawning 300 interpreters
        would test the same code path at 50x the cost."""
        from tokensat.cli import main

        def run_main(*args):
            code = main(args)
            assert code == 0
            return capsys.readouterr().out

        for seed in range(100):
            dimacs = run_main("gen", "-n", "6", "-m", "12", "-k", "3", "--seed", str(seed))
            cnf = tmp_path / "f.cnf"
            cnf.write_text(dimacs)
            board = tmp_path / "f.json"
            board.write_text(run_main("convert", str(cnf), "--direction", "cnf2game"))
            assert run_main("convert", str(board), "--direction", "game2cnf") == dimacs

    def test_bad_format_exits_one(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{not json")
        proc = run_cli("convert", str(bad), "--direction", "game2cnf")
        assert proc.returncode == 1


class TestGen:
    def test_deterministic(self):
        a = run_cli("gen", "-n", "8", "-m", "20", "-k", "3", "--seed", "11")
        b = run_cli("gen", "-n", "8", "-m", "20", "-k", "3", "--seed", "11")
        assert a.stdout == b.stdout and a.returncode == 0

    def test_planted_comment_model_satisfies(self, tmp_path):
        proc = run_cli("gen", "-n", "10", "-m", "30", "--planted", "--seed", "4")
        lines = proc.stdout.splitlines()
        assert lines[0].startswith("c planted: ")
        from tokensat import evaluate, parse_dimacs

        model = {abs(x): x > 0 for x in map(int, lines[0].removeprefix("c planted: ").split())}
        formula = parse_dimacs(proc.stdout)
        assert evaluate(formula, model)

    def test_width_exceeding_vars_exits_one(self):
        proc = run_cli("gen", "-n", "2", "-m", "1", "-k", "5")
        assert proc.returncode == 1

    def test_env_seed_fallback(self, tmp_path):
        import os

        env = dict(os.environ, TOKENSAT_SEED="123")
        a = run_cli("gen", "-n", "5", "-m", "8", "-k", "2", env=env)
        b = run_cli("gen", "-n", "5", "-m", "8", "-k", "2", "--seed", "123")
        assert a.stdout == b.stdout


class TestCheckEquivalence:
    def test_small_battery_passes(self):
        proc = run_cli(
            "check-equivalence",
            "--max-colors", "2", "--max-boxes", "2", "--max-tokens", "2",
            "--samples", "25", "--seed", "1",
        )
        assert proc.returncode == 0
        assert "discrepancies:             0" in proc.stdout
        assert "oracle" in proc.stdout  # per-oracle timing is reported


class TestUsage:
    def test_unknown_command_exits_one(self):
        assert run_cli("frobnicate").returncode == 1

    def test_help_exits_zero(self):
        assert run_cli("--help").returncode == 0
