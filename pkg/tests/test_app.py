import pytest
import sys
import json

# Import standardized test utilities
from tests.test_utils import get_test_logger, create_test_results

# Initialize standardized test logger
logger = get_test_logger(__name__)

from app import main, run, build_parser


F2_SMALL = {"ring": {"kind": "prime_field", "p": 2}, "involution": "identity", "lambda": 1, "mu": 0, "delta": "max", "n": 1}


def _write(tmp_path, name, payload):
    path = tmp_path / name
    path.write_text(json.dumps(payload))
    return str(path)


def _report(capsys):
    return json.loads(capsys.readouterr().out)


class TestEnumerateCommand:
    """oddform enumerate"""

    def test_relative_parameters(self, capsys):
        logger.start_test("enumerate --what relative on the M2(F2) instance")

        code = main(["enumerate", "--config", "m2f2", "--what", "relative"])
        report = _report(capsys)

        assert code == 0
        assert report["command"] == "enumerate"
        assert report["data"]["count"] == 5
        assert [e["size"] for e in report["data"]["entries"]] == [1, 4, 4, 4, 16]

        logger.pass_test("Five relative form parameters")

    def test_form_parameters(self, capsys):
        code = main(["enumerate", "--config", "f2"])
        report = _report(capsys)
        assert code == 0
        assert report["data"]["count"] == 5
        assert report["data"]["endpoints_present"]

    def test_overflow_exit_code(self, capsys):
        code = main(["enumerate", "--config", "f2", "--cap", "2"])
        report = _report(capsys)
        assert code == 4
        assert report["error"]["exit_code"] == 4


class TestConfigErrors:
    """Config problems end with exit code 2"""

    def test_mu_constraint(self, tmp_path, capsys):
        logger.start_test("mu != bar(mu) lambda is refused")

        config = _write(tmp_path, "bad.json", {"ring": {"kind": "prime_field", "p": 3}, "lambda": 2, "mu": 1})
        code = main(["enumerate", "--config", config])
        report = _report(capsys)

        assert code == 2
        assert report["error"] is not None

        logger.pass_test(f"Error code {report['error']['code']}")

    def test_schema_violation(self, tmp_path, capsys):
        config = _write(tmp_path, "schema.json", {"ring": {"kind": "prime_field", "p": 2}, "colour": "red"})
        assert main(["enumerate", "--config", config]) == 2
        assert _report(capsys)["error"]["code"] == "config-invalid"

    def test_missing_file(self, tmp_path, capsys):
        assert main(["enumerate", "--config", str(tmp_path / "nope.json")]) == 2
        capsys.readouterr()


class TestCommands:
    """verify, orbits, sandwich and repro-m2f2"""

    def test_verify_quasimodule(self, tmp_path, capsys):
        logger.start_test("verify --suite quasimodule")

        config = _write(tmp_path, "f2.json", F2_SMALL)
        out = tmp_path / "report.json"
        code = main(["verify", "--config", config, "--suite", "quasimodule", "--seed", "5", "--out", str(out)])

        assert code == 0
        report = json.loads(out.read_text())
        assert report["seed"] == 5
        assert report["checks"]
        assert all(c["verdict"] == "pass" for c in report["checks"])
        # --out without --pretty keeps stdout free of the report
        assert capsys.readouterr().out == ""

        logger.pass_test(f"{len(report['checks'])} checks written to {out.name}")

    def test_orbits(self, capsys):
        code = main(["orbits", "--config", "m2f2", "--ideal", '["zero"]'])
        report = _report(capsys)
        assert code == 0
        assert sum(len(b) for b in report["data"]["block_indices"]) == 5

    def test_sandwich_builtin(self, capsys):
        logger.start_test("sandwich on the built-in block subgroup")

        code = main(["sandwich"])
        report = _report(capsys)
        assert code == 0
        assert report["data"]["containments"] == {"lower": "pass", "upper": "pass"}

        logger.pass_test("Both containments hold")

    def test_repro(self, capsys):
        logger.start_test("repro-m2f2")

        code = main(["repro-m2f2", "--n", "3"])
        report = _report(capsys)
        assert code == 0
        assert report["data"]["failed"] == []

        logger.pass_test(f"{len(report['checks'])} expectations")

    def test_repro_alias(self, capsys):
        code = main(["repro-example174"])
        report = _report(capsys)
        assert code == 0
        assert report["command"] == "repro-example174"
        assert report["data"]["failed"] == []

    def test_repro_needs_rank_three(self, capsys):
        assert main(["repro-m2f2", "--n", "2"]) == 2
        capsys.readouterr()

    def test_pretty_output(self, capsys):
        main(["enumerate", "--config", "f2", "--pretty"])
        assert capsys.readouterr().out.startswith("enumerate")

    def test_run_keeps_errors_in_report(self):
        args = build_parser().parse_args(["repro-m2f2", "--n", "1"])
        report = run(args)
        assert report.error["code"]
        assert report.exit_code() == 2

    def test_unknown_command(self):
        with pytest.raises(SystemExit):
            build_parser().parse_args(["bogus"])


if __name__ == "__main__":
    """Direct execution for non-pytest testing"""
    logger.section("CLI Tests")

    results = create_test_results(logger)

    commands = TestCommands()
    results.run_test("run_keeps_errors_in_report", commands.test_run_keeps_errors_in_report)
    results.run_test("unknown_command", commands.test_unknown_command)

    sys.exit(0 if results.summary() else 1)
