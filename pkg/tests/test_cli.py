import csv
import json

import pytest

from vat_game import cli
from vat_game.config import (
    ConfigError,
    build_parameters,
    parse_config_file,
    parse_overrides,
)


def run(capsys, argv):
    code = cli.main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def read_csv(text):
    return list(csv.DictReader(text.splitlines()))


class TestConfig:
    def test_preset_plus_override_precedence(self):
        policy, te = build_parameters("appendix", None, ["v=0.10", "x_i=0"])
        assert policy.v == 0.10
        assert te.x_i == 0.0
        assert policy.t_s == 0.24  # untouched preset value

    def test_unknown_key_rejected(self):
        with pytest.raises(ConfigError, match="unknown parameter"):
            parse_overrides(["vat=0.22"])

    def test_missing_parameter_rejected(self):
        with pytest.raises(ConfigError, match="missing parameters"):
            build_parameters(None, None, ["v=0.22"])

    def test_config_file_parsing(self, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("v = 0.20  # VAT\n\nt_s=0.30\n")
        assert parse_config_file(cfg) == {"v": 0.20, "t_s": 0.30}

    def test_config_file_bad_line(self, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("just nonsense\n")
        with pytest.raises(ConfigError, match="key=value"):
            parse_config_file(cfg)


class TestPayoffsCommand:
    def test_appendix_compliance_row(self, capsys):
        code, out, _ = run(
            capsys,
            ["payoffs", "--preset", "appendix", "--scenario", "tax", "--precision", "2"],
        )
        assert code == 0
        rows = {r["event"]: r for r in read_csv(out)}
        comply = rows["comply"]
        assert comply["y_buyer"] == "1200.00"
        assert comply["y_seller"] == "11400.00"
        assert comply["y_gov"] == "12400.00"
        assert comply["total"] == "25000.00"
        assert comply["residual"] == "0.00"
        assert "evade-lt-appendix" in rows

    def test_no_taxes_column(self, capsys):
        code, out, _ = run(
            capsys,
            [
                "payoffs", "--preset", "appendix", "--scenario", "no-taxes",
                "--event", "comply", "--precision", "0",
            ],
        )
        assert code == 0
        (row,) = read_csv(out)
        assert (row["y_buyer"], row["y_seller"], row["y_gov"]) == (
            "10000", "15000", "0",
        )

    def test_degenerate_transaction(self, capsys):
        code, out, _ = run(
            capsys,
            [
                "payoffs", "--preset", "appendix", "--set", "x_o=0", "--set", "x_i=0",
                "--scenario", "tax", "--event", "comply", "--precision", "2",
            ],
        )
        assert code == 0
        (row,) = read_csv(out)
        assert row["y_buyer"] == "13400.00"  # incomes taxed only
        assert row["y_seller"] == "7600.00"

    def test_bayesian_requires_gamma(self, capsys):
        code, _, err = run(
            capsys, ["payoffs", "--preset", "appendix", "--regime", "bayesian"]
        )
        assert code == 1
        assert "gamma" in err

    def test_json_format(self, capsys):
        code, out, _ = run(
            capsys,
            [
                "payoffs", "--preset", "appendix", "--scenario", "tax",
                "--event", "comply", "--format", "json", "--precision", "2",
            ],
        )
        assert code == 0
        (row,) = json.loads(out)
        assert row["y_buyer"] == 1200.0
        assert row["event"] == "comply"


class TestThresholdsCommand:
    def test_section6_frontier_rows(self, capsys):
        code, out, _ = run(
            capsys,
            ["thresholds", "--preset", "section6", "--mode", "paper-literal"],
        )
        assert code == 0
        rows = {r["name"]: r for r in read_csv(out)}
        assert float(rows["theta1"]["value"]) == pytest.approx(0.18213, abs=5e-5)
        assert float(rows["theta1"]["slope"]) == pytest.approx(-0.25808, abs=5e-5)
        assert float(rows["theta3"]["value"]) == pytest.approx(0.27869, abs=5e-5)
        assert float(rows["gamma_at_theta0_lt1"]["value"]) == pytest.approx(
            0.70572, abs=1e-4
        )

    def test_degenerate_input_sentinels(self, capsys):
        code, out, _ = run(
            capsys, ["thresholds", "--preset", "section6", "--set", "x_i=0"]
        )
        assert code == 0
        rows = {r["name"]: r for r in read_csv(out)}
        assert float(rows["seller_tax_threshold"]["value"]) == 0.0
        assert rows["vat_rate_threshold"]["value"] == "always-satisfied"


class TestRegionCommand:
    def test_tiny_grid_files_and_determinism(self, capsys, tmp_path):
        out_path = tmp_path / "region.csv"
        argv = [
            "region", "--preset", "section6",
            "--theta-min", "0", "--theta-max", "0.4", "--theta-step", "0.2",
            "--gamma-min", "0", "--gamma-max", "1", "--gamma-step", "0.5",
            "--out", str(out_path),
        ]
        assert cli.main(argv) == 0
        first = out_path.read_bytes()
        companion = tmp_path / "region.frontiers.csv"
        assert companion.exists()
        first_frontiers = companion.read_bytes()

        assert cli.main(argv) == 0
        assert out_path.read_bytes() == first
        assert companion.read_bytes() == first_frontiers

        rows = read_csv(first.decode())
        assert len(rows) == 3 * 3  # theta outer, gamma inner
        assert [r["theta"] for r in rows[:3]] == ["0.000000"] * 3
        assert [r["gamma"] for r in rows[:3]] == ["0.000000", "0.500000", "1.000000"]
        for row in rows:
            assert (row["best_event"] == "comply") == (row["complies"] == "true")

    def test_single_cell_matches_best_event(self, capsys, tmp_path):
        out_path = tmp_path / "cell.csv"
        code = cli.main(
            [
                "region", "--preset", "section6", "--set", "theta=0",
                "--theta-min", "0", "--theta-max", "0", "--theta-step", "1",
                "--gamma-min", "0", "--gamma-max", "0", "--gamma-step", "1",
                "--out", str(out_path),
            ]
        )
        assert code == 0
        (row,) = read_csv(out_path.read_text())
        assert row["best_event"] == "evade-lt1"
        assert row["complies"] == "false"

    def test_classification_agrees_with_frontier_lines(self, capsys, tmp_path):
        out_path = tmp_path / "region.csv"
        assert cli.main(
            [
                "region", "--preset", "section6", "--mode", "corrected",
                "--theta-step", "0.1", "--gamma-step", "0.1",
                "--precision", "9", "--out", str(out_path),
            ]
        ) == 0
        lines = read_csv((tmp_path / "region.frontiers.csv").read_text())
        boundary = {r["variant"]: r for r in lines}
        for row in read_csv(out_path.read_text()):
            theta, gamma = float(row["theta"]), float(row["gamma"])
            above_all = all(
                theta > float(b["intercept"]) + float(b["slope"]) * gamma + 1e-6
                for b in boundary.values()
            )
            if above_all:
                assert row["complies"] == "true", (theta, gamma)

    def test_bad_grid_rejected(self, capsys):
        code, _, err = run(
            capsys,
            ["region", "--preset", "section6", "--theta-step", "0"],
        )
        assert code == 1
        assert "step" in err


class TestAppendixCommand:
    def test_default_reproduction_succeeds(self, capsys):
        code, out, err = run(capsys, ["appendix", "--precision", "0"])
        assert code == 0
        assert "all cells match" in err
        rows = {r["row"]: r for r in read_csv(out)}
        assert rows["yb_net"]["compliance_with_deductions"] == "2420"
        assert rows["yf_net"]["evasion_last_transaction"] == "12700"
        assert all(v == "25000" for k, v in rows["ysoc"].items() if k != "row")

    def test_perturbed_parameters_exit_two(self, capsys):
        code, _, err = run(capsys, ["appendix", "--preset", "appendix", "--set", "v=0.10"])
        assert code == 2
        assert "MISMATCH" in err


class TestValidateCommand:
    def test_single_draw(self, capsys):
        code, out, _ = run(capsys, ["validate", "--draws", "1"])
        assert code == 0
        assert "draws=1" in out
        assert "failures: 0" in out

    def test_draw_count_validated(self, capsys):
        code, _, err = run(capsys, ["validate", "--draws", "0"])
        assert code == 1


class TestUsage:
    def test_unknown_preset_exits_one(self, capsys):
        code, _, _ = run(capsys, ["payoffs", "--preset", "bogus"])
        assert code == 1

    def test_missing_subcommand_exits_one(self, capsys):
        assert cli.main([]) == 1

    def test_roundtrip_emitted_csv(self, capsys, tmp_path):
        # re-parsing an emitted payoff file and recomputing reproduces the
        # numbers at the configured precision
        out_path = tmp_path / "payoffs.csv"
        assert cli.main(
            [
                "payoffs", "--preset", "appendix", "--scenario", "tax",
                "--precision", "6", "--out", str(out_path),
            ]
        ) == 0
        from vat_game.model import AuditRegime, Event, Scenario, expected_payoff
        from vat_game.config import build_parameters

        policy, te = build_parameters("appendix", None, None)
        for row in read_csv(out_path.read_text()):
            pv = expected_payoff(
                Scenario(row["scenario"]),
                AuditRegime(float(row["gamma"])),
                Event(row["event"]),
                policy,
                te,
            )
            assert float(row["y_buyer"]) == pytest.approx(pv.buyer, abs=1e-6)
            assert float(row["y_seller"]) == pytest.approx(pv.seller, abs=1e-6)
            assert float(row["y_gov"]) == pytest.approx(pv.government, abs=1e-6)
