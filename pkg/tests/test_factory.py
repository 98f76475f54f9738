import pytest
import sys

import pandas as pd
from pydantic import ValidationError

# Import standardized test utilities
from tests.test_utils import get_test_logger, create_test_results

# Initialize standardized test logger
logger = get_test_logger(__name__)

from domain import CheckResult, InstanceConfig, Report
from factory.data import (
    DEMO_INSTANCES,
    WordParameters,
    load_config,
    load_json,
    build_instance,
    resolve_ideal,
    resolve_involution,
    generate_words,
    generate_elements,
    witnesses_from_document,
    subgroup_from_document,
    checks_to_dataframe,
    parameters_to_dataframe,
    orbits_to_dataframe,
    report_to_text,
)
from action import orbits
from formparam import enumerate_form_parameters
from unitary import is_unitary
from unitary.words import short_token, permutation_token
from utils.errors import SpecInvalidError


class TestConfigLoading:
    """Instance configs from demo names, dicts and files"""

    def test_default_is_f2(self):
        config = load_config()
        assert config == InstanceConfig.model_validate(DEMO_INSTANCES["f2"])
        assert config.n == 3

    def test_lambda_alias(self):
        config = load_config({"ring": {"kind": "integers_mod", "m": 4}, "lambda": 1, "mu": 2})
        assert config.lambda_ == 1
        assert config.model_dump(by_alias=True)["lambda"] == 1

    def test_config_file(self, tmp_path):
        logger.start_test("Loading a config file")

        path = tmp_path / "z4.json"
        path.write_text('{"ring": {"kind": "integers_mod", "m": 4}, "mu": 2, "n": 2}')
        config = load_config(path)
        assert config.n == 2
        assert config.digest() == load_config(str(path)).digest()

        logger.pass_test(f"Digest {config.digest()}")

    def test_bad_sources(self, tmp_path):
        with pytest.raises(SpecInvalidError):
            load_config(tmp_path / "missing.json")

        broken = tmp_path / "broken.json"
        broken.write_text("{ring")
        with pytest.raises(SpecInvalidError):
            load_config(broken)
        with pytest.raises(SpecInvalidError):
            load_json(broken)

        with pytest.raises(ValidationError):
            load_config({"ring": {"kind": "prime_field", "p": 2}, "delta": "odd"})
        with pytest.raises(ValidationError):
            load_config({"ring": {"kind": "prime_field", "p": 2}, "n": 0})

    def test_digest_ignores_key_order(self):
        a = load_config({"ring": {"kind": "prime_field", "p": 2}, "n": 2, "mu": 0})
        b = load_config({"mu": 0, "n": 2, "ring": {"kind": "prime_field", "p": 2}})
        assert a.digest() == b.digest()


class TestInstanceBuilding:
    """Forms contexts built from configs"""

    def test_demo_instances(self):
        logger.start_test("Every demo instance builds")

        for name in DEMO_INSTANCES:
            instance = build_instance(name)
            assert instance.ctx.n == instance.config.n
            assert instance.describe()["digest"] == instance.digest

        logger.pass_test(f"{len(DEMO_INSTANCES)} demo instances")

    def test_m2f2_instance(self):
        instance = build_instance("m2f2")
        assert instance.ctx.n == 3
        assert len(instance.ctx.delta) == 128
        assert instance.ideal == frozenset({instance.ctx.ring.zero})
        assert instance.describe()["ideal"] == [instance.ctx.ring.zero]

    def test_explicit_delta(self):
        instance = build_instance({"ring": {"kind": "prime_field", "p": 2}, "delta": [[0, 0], [1, 1]]})
        assert len(instance.ctx.delta) == 2
        assert instance.ideal is None

    def test_resolved_ideal(self):
        ctx = build_instance("z4").ctx
        assert resolve_ideal(ctx, [2]) == frozenset({0, 2})
        assert resolve_ideal(ctx, [1]) == frozenset(range(4))
        assert resolve_ideal(ctx, None) is None

    def test_involution_table(self):
        ring = build_instance("f2").ctx.ring
        bar = resolve_involution(ring, [0, 1])
        assert all(bar(x) == x for x in ring.elements)


class TestWordGeneration:
    """Random generator words and subgroup documents"""

    def setup_method(self):
        self.instance = build_instance("f2")
        self.parameters = WordParameters(count=12, min_length=2, max_length=5, include_permutations=True, random_seed=3)

    def test_words_are_deterministic(self):
        logger.start_test("Words depend only on the seed")

        words = generate_words(self.instance.factory, self.parameters)
        assert words == generate_words(self.instance.factory, self.parameters)
        assert len(words) == 12
        assert all(2 <= len(w) <= 5 for w in words)
        assert {t["T"] for w in words for t in w} <= {"short", "extra", "P"}

        logger.pass_test(f"{sum(len(w) for w in words)} tokens")

    def test_elements_are_unitary(self):
        elements = generate_elements(self.instance.factory, self.parameters)
        assert all(is_unitary(self.instance.ctx, g) for g in elements)

    def test_witness_documents(self):
        factory = self.instance.factory
        bare = witnesses_from_document(self.instance.ctx, [short_token(1, 2, 1)])
        assert bare == [factory.short(1, 2, 1)]

        words = witnesses_from_document(self.instance.ctx, {"witnesses": [[permutation_token(1, 2), permutation_token(1, 2)]]})
        assert words[0].is_identity()

        with pytest.raises(SpecInvalidError):
            witnesses_from_document(self.instance.ctx, {"witnesses": 3})
        with pytest.raises(SpecInvalidError):
            witnesses_from_document(self.instance.ctx, [{"T": "nope"}])

    def test_subgroup_documents(self):
        logger.start_test("Subgroups from documents")

        handle = subgroup_from_document(self.instance.ctx, {"name": "T12", "generators": [short_token(1, 2, 1)]})
        assert handle.name == "T12"
        assert self.instance.factory.short(1, 2, 1) in handle

        builtin = subgroup_from_document(build_instance("m2f2").ctx, "m2f2_block_H")
        assert builtin.name == "m2f2_block_H"

        with pytest.raises(SpecInvalidError):
            subgroup_from_document(self.instance.ctx, {"builtin": "nope"})

        logger.pass_test("Generator words and built-ins")


class TestFormatters:
    """DataFrame and text rendering"""

    def test_checks_table(self):
        passing = CheckResult(name="a")
        passing.record(True)
        failing = CheckResult(name="b", exhaustive=False)
        failing.record(False, {"x": 1})

        df = checks_to_dataframe([passing, failing])
        assert list(df.columns) == ["Check", "Verdict", "Cases", "Failures", "Exhaustive"]
        assert df["Verdict"].tolist() == ["pass", "fail"]

        report = Report(command="verify", checks=[passing, failing], seed=1, warnings=["careful"])
        text = report_to_text(report)
        assert text.startswith("verify")
        assert "warning: careful" in text

    def test_parameters_table(self):
        ctx = build_instance("f2").ctx
        df = parameters_to_dataframe(enumerate_form_parameters(ctx.quad))
        assert len(df) == 5
        assert df["Size"].tolist() == sorted(df["Size"].tolist())

    def test_orbits_table(self):
        instance = build_instance("m2f2")
        partition = orbits(instance.ctx, instance.ideal)
        df = orbits_to_dataframe(partition)
        assert isinstance(df, pd.DataFrame)
        assert sorted(df["Index"].tolist()) == list(range(5))


if __name__ == "__main__":
    """Direct execution for non-pytest testing"""
    logger.section("Factory Tests")

    results = create_test_results(logger)

    config = TestConfigLoading()
    results.run_test("default_is_f2", config.test_default_is_f2)
    results.run_test("digest_ignores_key_order", config.test_digest_ignores_key_order)

    building = TestInstanceBuilding()
    results.run_test("demo_instances", building.test_demo_instances)
    results.run_test("m2f2_instance", building.test_m2f2_instance)

    words = TestWordGeneration()
    words.setup_method()
    results.run_test("words_are_deterministic", words.test_words_are_deterministic)
    results.run_test("subgroup_documents", words.test_subgroup_documents)

    sys.exit(0 if results.summary() else 1)
