"""CLI subcommands, formats, config parsing, and exit codes."""
import json

import pytest

from truecount.cli import main, parse_config, run_simulation
from truecount.errors import ConfigError


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestSystems:
    def test_table(self, capsys):
        code, out, _ = run_cli(capsys, "systems")
        assert code == 0
        assert "hi-lo" in out and "0.877" in out
        assert "hi-opt-ii" in out and "1.468" in out

    def test_json(self, capsys):
        code, out, _ = run_cli(capsys, "systems", "--format", "json")
        data = json.loads(out)
        rows = {r["label"]: r["cells"][0] for r in data["rows"]}
        assert rows["uston-ace-five"] == pytest.approx(0.392, abs=5e-4)


class TestSigmaTable:
    def test_values_at_half_penetration(self, capsys):
        code, out, _ = run_cli(capsys, "sigma-table", "--penetration", "0.5")
        assert code == 0
        for cell in ("0.877", "0.925", "0.971", "0.449", "0.340", "0.170*"):
            assert cell in out

    def test_footnote_only_on_last_seat(self, capsys):
        _, out, _ = run_cli(
            capsys, "sigma-table", "--penetration", "0.5", "--positions", "1,4"
        )
        assert "*" not in out.replace("**", "")

    def test_csv_format(self, capsys):
        code, out, _ = run_cli(
            capsys, "sigma-table", "--penetration", "0.5", "--format", "csv"
        )
        assert code == 0
        assert "\r\n" in out and "sigma_bet" in out

    def test_bad_penetration_exit_2(self, capsys):
        code, _, err = run_cli(capsys, "sigma-table", "--penetration", "1.5")
        assert code == 2
        assert "error:" in err

    def test_bad_position_exit_2(self, capsys):
        code, _, err = run_cli(
            capsys, "sigma-table", "--penetration", "0.5", "--positions", "9"
        )
        assert code == 2

    def test_custom_system_file(self, capsys, tmp_path):
        path = tmp_path / "sys.txt"
        path.write_text(
            "A -1\n2 1\n3 1\n4 1\n5 1\n6 1\n7 0\n8 0\n9 0\nT -1\n"
        )
        code, out, _ = run_cli(
            capsys, "sigma-table", "--penetration", "0.5",
            "--system-file", str(path),
        )
        assert code == 0
        assert "0.877" in out


class TestExact:
    def test_worked_example(self, capsys):
        code, out, _ = run_cli(
            capsys, "exact", "-c", "+1:5,-1:5,0:3", "-n", "1"
        )
        assert code == 0
        assert "3.80" in out  # 52 sqrt(5/936)

    def test_json_atoms_are_exact(self, capsys):
        code, out, _ = run_cli(
            capsys, "exact", "-c", "+1:2,-1:2", "-n", "2", "--units", "card",
            "--format", "json",
        )
        assert code == 0
        assert "2/3" in out

    def test_bad_n_exit_2(self, capsys):
        code, _, err = run_cli(capsys, "exact", "-c", "+1:2,-1:2", "-n", "4")
        assert code == 2

    def test_bad_composition_exit_2(self, capsys):
        code, _, err = run_cli(capsys, "exact", "-c", "nope", "-n", "1")
        assert code == 2


class TestVerify:
    def test_kelly_scope_passes(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "kelly")
        assert code == 0
        assert "kelly: PASS" in out


class TestKelly:
    def test_output(self, capsys):
        code, out, _ = run_cli(capsys, "kelly", "--p0", "0.52", "--hands", "100")
        assert code == 0
        assert "0.04" in out  # kelly fraction 2p - 1

    def test_subfair_probability(self, capsys):
        code, out, _ = run_cli(capsys, "kelly", "--p0", "0.4")
        assert code == 0
        assert "0.00000000" in out


class TestLongrun:
    def test_reference_case(self, capsys):
        code, out, _ = run_cli(
            capsys, "longrun", "--eps", "0.01", "--sigma-bet-a", "0",
            "--sigma-bet-b", "0.1414213562373095",
        )
        assert code == 0
        assert "40000.0" in out
        assert "800.0" in out


class TestConfigParsing:
    def test_parse(self):
        config = parse_config(
            "# run\nmode = seat-sigma\nseed = 7\ntrials = 10\n"
        )
        assert config == {"mode": "seat-sigma", "seed": "7", "trials": "10"}

    def test_unknown_key_reports_line(self):
        with pytest.raises(ConfigError, match="line 2"):
            parse_config("seed = 1\nbogus = 2\n")

    def test_missing_equals_reports_line(self):
        with pytest.raises(ConfigError, match="line 1"):
            parse_config("seed 1\n")

    def test_duplicate_key(self):
        with pytest.raises(ConfigError, match="duplicate"):
            parse_config("seed = 1\nseed = 2\n")

    def test_missing_required_key(self):
        with pytest.raises(ConfigError, match="seed"):
            run_simulation({"mode": "bankroll", "trials": "5"})


class TestSimulateCommand:
    def test_config_file_run(self, capsys, tmp_path):
        path = tmp_path / "run.cfg"
        path.write_text(
            "mode = seat-sigma\nsystem = hi-lo\ndecks = 8\n"
            "penetration = 0.5\nseats = 7\nposition = 7\n"
            "trials = 50\nseed = 3\n"
        )
        code, out, _ = run_cli(capsys, "simulate", "--config", str(path))
        assert code == 0
        assert "sigma_bet" in out
        assert "predicted sigma_bet" in out

    def test_flags_override_config(self, capsys, tmp_path):
        path = tmp_path / "run.cfg"
        path.write_text("mode = bankroll\np = 0.52\nhands = 50\ntrials = 5\nseed = 1\n")
        code, out, _ = run_cli(
            capsys, "simulate", "--config", str(path), "--format", "json",
            "--seed", "9",
        )
        assert code == 0
        assert json.loads(out)["seed"] == 9

    def test_unknown_config_key_exit_2(self, capsys, tmp_path):
        path = tmp_path / "run.cfg"
        path.write_text("bogus = 1\n")
        code, _, err = run_cli(capsys, "simulate", "--config", str(path))
        assert code == 2
        assert "line 1" in err

    def test_missing_config_file_exit_2(self, capsys, tmp_path):
        code, _, err = run_cli(
            capsys, "simulate", "--config", str(tmp_path / "absent.cfg")
        )
        assert code == 2

    def test_csv_determinism(self, capsys):
        args = (
            "simulate", "--mode", "tc-increment", "--system", "hi-lo",
            "--decks", "8", "--penetration", "0.5", "--n-cards", "1,4",
            "--trials", "60", "--seed", "12", "--format", "csv",
        )
        code_a, out_a, _ = run_cli(capsys, *args)
        code_b, out_b, _ = run_cli(capsys, *args)
        assert code_a == code_b == 0
        assert out_a == out_b
        assert "\r\n" in out_a
