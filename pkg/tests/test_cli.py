"""CLI behavior: golden reports, determinism, exit codes, fault injection."""

import io
import json
from fractions import Fraction

import pytest

from conftest import GOLDEN_DIR
from nordenlie.cli import (
    EXIT_CHECK_FAILED,
    EXIT_OK,
    EXIT_VALIDATION,
    ConfigError,
    main,
    parse_config,
    parse_rational,
)
from nordenlie.report import FAULT_FLIP_F

GOLDEN_PAIRS = [
    ("config_n1_1111.json", "report_n1_1111.json"),
    ("config_n1_1234.json", "report_n1_1234.json"),
    ("config_n1_zero.json", "report_n1_zero.json"),
    ("config_n1_1000_text.json", "report_n1_1000.txt"),
]


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


@pytest.mark.parametrize("config_name,report_name", GOLDEN_PAIRS)
def test_characterize_reproduces_golden_reports(capsys, config_name, report_name):
    code, out, err = run_cli(
        capsys, "characterize", "--input", str(GOLDEN_DIR / config_name)
    )
    assert code == EXIT_OK
    assert err == ""
    assert out == (GOLDEN_DIR / report_name).read_text(encoding="utf-8")


def test_characterize_output_is_deterministic(capsys):
    cfg = str(GOLDEN_DIR / "config_n1_1234.json")
    _, first, _ = run_cli(capsys, "characterize", "--input", cfg)
    _, second, _ = run_cli(capsys, "characterize", "--input", cfg)
    assert first == second


def test_characterize_writes_output_file(capsys, tmp_path):
    cfg = str(GOLDEN_DIR / "config_n1_1234.json")
    out_path = tmp_path / "report.json"
    code, out, _ = run_cli(
        capsys, "characterize", "--input", cfg, "--output", str(out_path)
    )
    assert code == EXIT_OK
    assert out == ""
    assert out_path.read_text(encoding="utf-8") == (
        GOLDEN_DIR / "report_n1_1234.json"
    ).read_text(encoding="utf-8")


def test_characterize_reads_stdin(capsys, monkeypatch):
    config = (GOLDEN_DIR / "config_n1_1234.json").read_text(encoding="utf-8")
    monkeypatch.setattr("sys.stdin", io.StringIO(config))
    code, out, _ = run_cli(capsys, "characterize", "--input", "-")
    assert code == EXIT_OK
    assert out == (GOLDEN_DIR / "report_n1_1234.json").read_text(encoding="utf-8")


def test_format_flag_overrides_config_format(capsys):
    # the config asks for json; the flag wins
    cfg = str(GOLDEN_DIR / "config_n1_1234.json")
    code, out, _ = run_cli(capsys, "characterize", "--input", cfg, "--format", "text")
    assert code == EXIT_OK
    assert out.startswith("norden-report/1\n")
    assert "F[1,2,2]" in out


def test_json_report_round_trips_and_carries_frozen_invariants(capsys):
    cfg = str(GOLDEN_DIR / "config_n1_1234.json")
    _, out, _ = run_cli(capsys, "characterize", "--input", cfg)
    doc = json.loads(out)
    assert doc["schema"] == "norden-report/1"
    assert doc["input"] == {"n": 1, "dimension": 4, "lambda": ["1", "2", "3", "4"]}
    assert doc["structural"] == {
        "jacobi": "pass",
        "killing": "pass",
        "orthogonality": "pass",
    }
    assert doc["invariants"] == {
        "isotropic_kahler": False,
        "nabla_J_norm_sq": "-80",
        "nijenhuis_norm_sq": "640",
        "parameter_norm_sq": "-20",
        "scalar_curvature": "30",
    }
    assert doc["classification"]["member_of"] == ["W3"]
    assert doc["classification"]["lee_form_zero"] is True
    assert all(v == "pass" for v in doc["oracle_agreement"].values())
    assert doc["theorems"]["locally_symmetric"] == "pass"
    # every rational in the document is parseable back to a Fraction
    assert Fraction(doc["invariants"]["scalar_curvature"]) == 30


def test_zero_member_report_lies_in_all_classes(capsys):
    cfg = str(GOLDEN_DIR / "config_n1_zero.json")
    _, out, _ = run_cli(capsys, "characterize", "--input", cfg)
    doc = json.loads(out)
    assert doc["classification"]["member_of"] == ["W0", "W1", "W2", "W3"]
    assert doc["classification"]["F_nonzero"] is False
    assert doc["tensors"]["F"]["components"] == []
    assert doc["theorems"]["constant_curvature"]["holomorphic"] is True
    assert doc["theorems"]["constant_curvature"]["totally_real"] is True


def test_fault_injection_fails_oracle_agreement(capsys):
    cfg = str(GOLDEN_DIR / "config_n1_1234.json")
    code, out, _ = run_cli(
        capsys, "characterize", "--input", cfg, "--inject-fault", FAULT_FLIP_F
    )
    assert code == EXIT_CHECK_FAILED
    doc = json.loads(out)
    # the corruption hits the computed tensor, not the structural layer
    assert all(v == "pass" for v in doc["structural"].values())
    assert "fail" in doc["oracle_agreement"].values()


@pytest.mark.parametrize(
    "config,message",
    [
        ("{", "not valid JSON"),
        ("[]", "must be a JSON object"),
        ('{"lambda": ["1","2","3","4"]}', "n must be a positive integer"),
        ('{"n": true, "lambda": ["0","0","0","0"]}', "n must be a positive integer"),
        ('{"n": 0, "lambda": []}', "n must be a positive integer"),
        (
            '{"n": 1, "mode": "explore", "lambda": ["0","0","0","0"]}',
            "mode must be 'characterize'",
        ),
        ('{"n": 1}', "lambda must be an array"),
        ('{"n": 1, "lambda": ["1","2","3"]}', "expected 4 parameters, got 3"),
        ('{"n": 2, "lambda": ["1","2","3","4"]}', "expected 8 parameters, got 4"),
        ('{"n": 1, "lambda": ["1","2","3",true]}', "lambda[3]"),
        ('{"n": 1, "lambda": ["1","2","3",1.5]}', "lambda[3]"),
        ('{"n": 1, "lambda": ["1","2","3","4/0"]}', "lambda[3]"),
        ('{"n": 1, "lambda": ["0","0","0","0"], "format": "xml"}', "format must be"),
    ],
)
def test_characterize_rejects_bad_configs(capsys, tmp_path, config, message):
    path = tmp_path / "config.json"
    path.write_text(config, encoding="utf-8")
    code, out, err = run_cli(capsys, "characterize", "--input", str(path))
    assert code == EXIT_VALIDATION
    assert out == ""
    assert err.startswith("error:")
    assert message in err


def test_characterize_reports_unreadable_input(capsys, tmp_path):
    code, _, err = run_cli(
        capsys, "characterize", "--input", str(tmp_path / "missing.json")
    )
    assert code == EXIT_VALIDATION
    assert err.startswith("error: cannot read")


def test_characterize_reports_unwritable_output(capsys, tmp_path):
    cfg = str(GOLDEN_DIR / "config_n1_1234.json")
    bad = str(tmp_path / "no-such-dir" / "report.json")
    code, _, err = run_cli(capsys, "characterize", "--input", cfg, "--output", bad)
    assert code == EXIT_VALIDATION
    assert err.startswith("error: cannot write")


def test_verify_small_run_passes(capsys):
    code, out, _ = run_cli(capsys, "verify", "--n", "1", "--trials", "5", "--seed", "7")
    assert code == EXIT_OK
    assert out.startswith("verify: n=1 trials=5 seed=7\n")
    assert "  weyl_zero: 5/5\n" in out
    assert out.rstrip().endswith("all checks passed")


def test_verify_skips_weyl_above_dimension_four(capsys):
    code, out, _ = run_cli(capsys, "verify", "--n", "2", "--trials", "2", "--seed", "1")
    assert code == EXIT_OK
    assert "weyl_zero: skipped (vanishing is specific to dimension 4)" in out


def test_verify_is_deterministic_for_a_seed(capsys):
    args = ("verify", "--n", "1", "--trials", "4", "--seed", "3")
    _, first, _ = run_cli(capsys, *args)
    _, second, _ = run_cli(capsys, *args)
    assert first == second


def test_verify_fault_injection_fails(capsys):
    code, out, _ = run_cli(
        capsys,
        "verify",
        "--n",
        "1",
        "--trials",
        "3",
        "--seed",
        "0",
        "--inject-fault",
        FAULT_FLIP_F,
    )
    assert code == EXIT_CHECK_FAILED
    assert "FAIL" in out
    assert "check(s) failed" in out


@pytest.mark.parametrize(
    "argv",
    [
        ("verify", "--n", "0", "--trials", "5"),
        ("verify", "--n", "1", "--trials", "0"),
        ("verify", "--n", "1", "--seed", "-1"),
    ],
)
def test_verify_rejects_bad_arguments(capsys, argv):
    code, _, err = run_cli(capsys, *argv)
    assert code == EXIT_VALIDATION
    assert err.startswith("error:")


def test_unknown_fault_name_is_a_usage_error():
    with pytest.raises(SystemExit) as exc:
        main(["characterize", "--input", "x", "--inject-fault", "no-such-fault"])
    assert exc.value.code == 2


def test_missing_subcommand_is_a_usage_error():
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == 2


def test_parse_rational_accepts_ints_and_fraction_strings():
    assert parse_rational(3, 0) == Fraction(3)
    assert parse_rational("-7/2", 1) == Fraction(-7, 2)
    assert parse_rational("0.25", 2) == Fraction(1, 4)


@pytest.mark.parametrize("value", [True, 1.5, None, [1], "three"])
def test_parse_rational_rejects_non_rationals(value):
    with pytest.raises(ConfigError, match=r"lambda\[4\]"):
        parse_rational(value, 4)


def test_parse_config_accepts_mixed_integer_and_string_entries():
    n, lam, fmt = parse_config('{"n": 1, "lambda": [1, "1/2", "-3", 0]}')
    assert n == 1
    assert lam == [Fraction(1), Fraction(1, 2), Fraction(-3), Fraction(0)]
    assert fmt is None
