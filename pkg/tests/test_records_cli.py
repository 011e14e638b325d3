from __future__ import annotations

import json
from fractions import Fraction

import pytest

from machinpi import cli
from machinpi.cli import generate_record
from machinpi.errors import DigitCountMismatch, RecordParseError
from machinpi.records import (
    SIDECAR_THRESHOLD_DIGITS,
    build_record,
    check_record,
    load_record,
    write_record,
)


def run_cli(*argv: str) -> int:
    return cli.main(list(argv))


@pytest.fixture()
def k3_record_path(tmp_path):
    record, _ = generate_record(3, 1, "nearest")
    return write_record(record, tmp_path / "k3.json")


class TestRecords:
    def test_round_trip_bit_identical(self, tmp_path):
        record, _ = generate_record(3, 1, "nearest")
        p1 = write_record(record, tmp_path / "a.json")
        p2 = write_record(load_record(p1), tmp_path / "b.json")
        assert p1.read_bytes() == p2.read_bytes()

    def test_generated_record_contents(self, tmp_path):
        record, selection = generate_record(3, 1, "nearest")
        assert record.u1 == 5
        assert record.u2 == -239
        assert record.verified is True
        assert record.epsilon_decimal == "-0.02733949212584810451"
        assert record.u2_digit_counts == (3, 1)
        assert selection.denominator_policy == 1
        check_record(record)

    def test_sidecar_written_and_verified(self, tmp_path):
        huge = Fraction(10 ** SIDECAR_THRESHOLD_DIGITS + 7, 3)
        record = build_record(
            k=2,
            denominator_policy=1,
            rounding="nearest",
            u1=Fraction(12, 5),
            epsilon_decimal="-0.01421356237309504880",
            u2=huge,
            verified=False,
            predicted_rate=1.0,
        )
        path = write_record(record, tmp_path / "big.json")
        sidecar = tmp_path / "big.u2num.txt"
        assert sidecar.exists()
        assert sidecar.read_text().endswith("\n")
        loaded = load_record(path)
        assert loaded.u2 == huge

    def test_sidecar_tamper_detected(self, tmp_path):
        huge = Fraction(10 ** SIDECAR_THRESHOLD_DIGITS + 7, 3)
        record = build_record(
            k=2, denominator_policy=1, rounding="nearest",
            u1=Fraction(12, 5), epsilon_decimal="0", u2=huge,
            verified=False, predicted_rate=1.0,
        )
        path = write_record(record, tmp_path / "big.json")
        sidecar = tmp_path / "big.u2num.txt"
        sidecar.write_text(sidecar.read_text().replace("7", "8", 1))
        with pytest.raises(RecordParseError):
            load_record(path)

    def test_digit_count_mismatch_detected(self, tmp_path, k3_record_path):
        payload = json.loads(k3_record_path.read_text())
        payload["u2_digit_counts"]["num_digits"] = 4
        k3_record_path.write_text(json.dumps(payload))
        with pytest.raises(DigitCountMismatch):
            check_record(load_record(k3_record_path))

    def test_truncated_file_is_parse_error(self, tmp_path):
        bad = tmp_path / "cut.json"
        bad.write_text('{"schema_version": 1, "k": 3')
        with pytest.raises(RecordParseError):
            load_record(bad)

    def test_missing_file_is_parse_error(self, tmp_path):
        with pytest.raises(RecordParseError):
            load_record(tmp_path / "absent.json")


class TestGenerateCommand:
    def test_generate_classic(self, tmp_path, capsys):
        out = tmp_path / "k3.json"
        assert run_cli("generate", "3", "--out", str(out)) == 0
        record = load_record(out)
        assert record.u1 == 5 and record.u2 == -239 and record.verified
        printed = capsys.readouterr().out
        assert "u1 = 5" in printed and "-239" in printed

    def test_generate_depth_two_needs_finer_grid(self, tmp_path):
        assert run_cli(
            "generate", "2", "--out", str(tmp_path / "x.json")
        ) == cli.EXIT_EPSILON
        assert run_cli(
            "generate", "2", "--den", "10", "--out", str(tmp_path / "k2.json")
        ) == 0
        record = load_record(tmp_path / "k2.json")
        assert record.u1 == Fraction(24, 10) and record.u2 == -239

    def test_generate_deterministic_bytes(self, tmp_path):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        assert run_cli("generate", "5", "--out", str(a)) == 0
        assert run_cli("generate", "5", "--out", str(b)) == 0
        assert a.read_bytes() == b.read_bytes()

    def test_generate_depth_five_record_fields(self, tmp_path):
        out = tmp_path / "k5.json"
        assert run_cli("generate", "5", "--out", str(out)) == 0
        record = load_record(out)
        assert record.u2_digit_counts == (21, 20)
        assert record.u2_decimal_head == "-71.75109034353024503462"
        assert record.verified

    def test_generate_respects_workdir_env(self, tmp_path, monkeypatch, capsys):
        monkeypatch.setenv("MACHINPI_DIR", str(tmp_path))
        assert run_cli("generate", "3") == 0
        assert (tmp_path / "formula_k3.json").exists()


class TestVerifyCommand:
    def test_verify_ok(self, k3_record_path):
        assert run_cli("verify", str(k3_record_path)) == 0

    def test_verify_detects_perturbed_value(self, k3_record_path):
        payload = json.loads(k3_record_path.read_text())
        payload["u2"]["num"]["value"] = "-240"
        payload["u2_digit_counts"]["num_digits"] = 3
        k3_record_path.write_text(json.dumps(payload))
        assert run_cli("verify", str(k3_record_path)) == cli.EXIT_VERIFICATION

    def test_verify_detects_digit_count_drift(self, k3_record_path):
        payload = json.loads(k3_record_path.read_text())
        payload["u2_digit_counts"]["den_digits"] = 2
        k3_record_path.write_text(json.dumps(payload))
        assert run_cli("verify", str(k3_record_path)) == cli.EXIT_DIGIT_COUNT

    def test_verify_parse_failure(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("not json")
        assert run_cli("verify", str(bad)) == cli.EXIT_PARSE


class TestComputePiCommand:
    def test_digits_from_record(self, k3_record_path, capsys, pi_text_300):
        assert run_cli(
            "compute-pi", "--formula", str(k3_record_path), "--digits", "100"
        ) == 0
        out = capsys.readouterr().out.strip()
        assert out == pi_text_300[:102]

    def test_terms_budget_reports_rate(self, k3_record_path, capsys, pi_text_300):
        assert run_cli(
            "compute-pi", "--formula", str(k3_record_path), "--terms", "30"
        ) == 0
        captured = capsys.readouterr()
        digits = captured.out.strip()
        assert pi_text_300.startswith(digits)
        assert len(digits) > 50
        assert "measured digits/term" in captured.err

    def test_tower_source(self, capsys, pi_text_300):
        assert run_cli("compute-pi", "--k", "6", "--digits", "40") == 0
        assert capsys.readouterr().out.strip() == pi_text_300[:42]

    def test_tower_terms_budget_deep(self, capsys, pi_text_300):
        assert run_cli("compute-pi", "--k", "40", "--terms", "6") == 0
        digits = capsys.readouterr().out.strip()
        assert pi_text_300.startswith(digits)
        assert len(digits) >= 142  # "3." plus at least 140 digits

    def test_writes_output_file(self, k3_record_path, tmp_path, pi_text_300):
        target = tmp_path / "pi.txt"
        assert run_cli(
            "compute-pi", "--formula", str(k3_record_path),
            "--digits", "30", "--out", str(target),
        ) == 0
        assert target.read_text().strip() == pi_text_300[:32]

    def test_usage_violations(self, k3_record_path):
        assert run_cli("compute-pi", "--digits", "10") == cli.EXIT_USAGE
        assert run_cli(
            "compute-pi", "--formula", str(k3_record_path), "--k", "3",
            "--digits", "10",
        ) == cli.EXIT_USAGE
        assert run_cli(
            "compute-pi", "--formula", str(k3_record_path)
        ) == cli.EXIT_USAGE
        assert run_cli(
            "compute-pi", "--formula", str(k3_record_path), "--digits", "0"
        ) == cli.EXIT_USAGE


class TestBenchCommand:
    def test_small_bench(self, tmp_path, capsys):
        assert run_cli(
            "bench", "--k", "2,3", "--max-terms", "8", "--out", str(tmp_path)
        ) == 0
        report = json.loads((tmp_path / "bench_report.json").read_text())
        assert [r["k"] for r in report["reports"]] == [2, 3]
        slopes = {r["k"]: r["measured_digits_per_term"] for r in report["reports"]}
        assert slopes[2] == pytest.approx(1.38, abs=0.45)
        assert slopes[3] == pytest.approx(2.0, abs=0.45)
        table = (tmp_path / "bench_report.txt").read_text()
        assert "measured" in table and "published" in table
        # wall-clock timing goes to stderr, never into the report files
        assert "ms/term" in capsys.readouterr().err
        assert "wall" not in (tmp_path / "bench_report.json").read_text()

    def test_bench_primary_outputs_deterministic(self, tmp_path):
        d1, d2 = tmp_path / "r1", tmp_path / "r2"
        for d in (d1, d2):
            assert run_cli(
                "bench", "--k", "3", "--max-terms", "6", "--out", str(d)
            ) == 0
        assert (d1 / "bench_report.json").read_bytes() == (
            d2 / "bench_report.json"
        ).read_bytes()

    def test_single_sample_flagged_undefined(self, tmp_path, capsys):
        assert run_cli(
            "bench", "--k", "3", "--max-terms", "1", "--out", str(tmp_path)
        ) == 0
        report = json.loads((tmp_path / "bench_report.json").read_text())
        slope = report["reports"][0]["measured_digits_per_term"]
        assert slope is None or slope != slope  # undefined: one sample


class TestSolveSecondCommand:
    def test_published_counterexample(self, capsys):
        assert run_cli("solve-second", "--alpha1", "7", "--beta1", "1000000000") == 0
        out = capsys.readouterr().out
        assert (
            "1000000006999999978999999965000000035000000020999999992999999999" in out
        )
        assert "1.00000001400000009800" in out

    def test_hand_checked_pair(self, capsys):
        assert run_cli("solve-second", "--alpha1", "2", "--beta1", "2") == 0
        assert "beta2 = -7/1" in capsys.readouterr().out

    def test_degenerate_exit_code(self):
        assert run_cli(
            "solve-second", "--alpha1", "1", "--beta1", "1"
        ) == cli.EXIT_DEGENERATE
