import pytest

from checks.reports import TestReport
from cli.config import RunConfig
from errors import ConvergenceError, UnsupportedEnsembleError
from harness.executor import SuiteExecutor, get_executor
from harness.parallel import first_accepted, map_substreams
from harness.planner import ALL_SUITES, DEFAULT_SIZES, VerificationPlanner, get_planner
from harness.verifier import EXIT_FAILED, EXIT_OK, EXIT_UNSUPPORTED, ReportVerifier


def make_config(**overrides) -> RunConfig:
    values = {
        "subcommand": "verify",
        "ensemble": {"kind": "gaussian", "beta": 2.0, "n": 3},
        "seed": 99,
    }
    values.update(overrides)
    return RunConfig(**values)


def passing(name="ok"):
    return TestReport(name=name, samples=1, statistic=0.0, max_residual=0.0, threshold=1.0, passed=True, seed=0)


def failing(name="bad"):
    return TestReport(name=name, samples=1, statistic=2.0, max_residual=2.0, threshold=1.0, passed=False, seed=0)


class TestParallel:

    def test_results_independent_of_threads(self):
        draw = lambda rng: float(rng.normal())
        assert map_substreams(draw, 5, 20, threads=1) == map_substreams(draw, 5, 20, threads=4)

    def test_key_separates_streams(self):
        draw = lambda rng: float(rng.normal())
        assert map_substreams(draw, 5, 3, key=1) != map_substreams(draw, 5, 3, key=2)

    def test_zero_count(self):
        assert map_substreams(lambda rng: 1, 5, 0) == []

    def test_first_accepted(self, rng):
        def draw(stream):
            u = float(stream.uniform())
            return u if u > 0.5 else None

        assert first_accepted(draw, rng) > 0.5

    def test_first_accepted_gives_up(self, rng):
        with pytest.raises(ConvergenceError):
            first_accepted(lambda r: None, rng, attempts=3)


class TestPlanner:

    def test_all_expands_every_suite(self):
        plan = VerificationPlanner().create_plan(make_config())
        assert [step["suite"] for step in plan["steps"]] == ALL_SUITES
        assert [step["step_id"] for step in plan["steps"]] == list(range(1, len(ALL_SUITES) + 1))

    def test_all_skips_cross_dense_for_unsupported_beta(self):
        plan = VerificationPlanner().create_plan(make_config(ensemble={"kind": "gaussian", "beta": 4.0, "n": 3}))
        assert "cross-dense" not in [step["suite"] for step in plan["steps"]]

    def test_explicit_cross_dense_kept(self):
        config = make_config(ensemble={"kind": "gaussian", "beta": 4.0, "n": 3}, suite=["cross-dense"])
        plan = VerificationPlanner().create_plan(config)
        assert [step["suite"] for step in plan["steps"]] == ["cross-dense"]

    def test_default_and_override_sizes(self):
        plan = VerificationPlanner().create_plan(make_config(suite=["roundtrip"]))
        assert plan["steps"][0]["parameters"]["samples"] == DEFAULT_SIZES["roundtrip"]
        plan = VerificationPlanner().create_plan(make_config(suite=["roundtrip"], samples=7))
        assert plan["steps"][0]["parameters"]["samples"] == 7

    def test_jacobian_case_follows_rank(self):
        config = make_config(ensemble={"kind": "laguerre", "beta": 2.0, "n": 5, "m": 2}, suite=["jacobians"])
        params = VerificationPlanner().create_plan(config)["steps"][0]["parameters"]
        assert params["case"] == "laguerre_semidef" and params["m"] == 2

    def test_unknown_suite_dropped(self):
        planner = VerificationPlanner(registry={"roundtrip": {"functions": {"roundtrip_check": {}}}})
        plan = planner.create_plan(make_config(suite=["identities", "roundtrip"]))
        assert [(s["step_id"], s["suite"]) for s in plan["steps"]] == [(1, "roundtrip")]

    def test_singleton(self):
        assert get_planner() is get_planner()


class TestExecutor:

    def registry(self, handler, parameters=("seed", "samples")):
        return {"demo": {"functions": {"run_demo": {"parameters": list(parameters), "handler": handler}}}}

    def step(self, **parameters):
        return {"step_id": 1, "suite": "demo", "function": "run_demo", "parameters": parameters}

    def test_success_wraps_single_report(self):
        executor = SuiteExecutor(self.registry(lambda seed, samples: passing()))
        results = executor.execute_plan({"steps": [self.step(seed=1, samples=3)]})
        assert results["successful_steps"] == 1
        assert results["step_results"][0]["data"][0].name == "ok"

    def test_parameters_cleaned_and_cast(self):
        seen = {}

        def handler(seed, samples):
            seen.update(seed=seed, samples=samples)
            return [passing()]

        executor = SuiteExecutor(self.registry(handler))
        executor.execute_plan({"steps": [self.step(seed=4.0, samples="12", extra="dropped")]})
        assert seen == {"seed": 4, "samples": 12}

    def test_exception_recorded(self):
        def handler(seed, samples):
            raise UnsupportedEnsembleError("beta=4")

        results = SuiteExecutor(self.registry(handler)).execute_plan({"steps": [self.step(seed=1, samples=1)]})
        step = results["step_results"][0]
        assert not step["success"]
        assert step["error_type"] == "UnsupportedEnsembleError"
        assert results["failed_steps"] == 1

    def test_unknown_function(self):
        executor = SuiteExecutor(self.registry(lambda: None))
        result = executor._execute_step({"step_id": 1, "suite": "demo", "function": "missing"})
        assert not result["success"] and "No handler" in result["error"]

    def test_singleton(self):
        assert get_executor() is get_executor()


class TestVerifier:

    def results(self, *steps):
        return {"step_results": list(steps)}

    def ok_step(self, *reports):
        return {"suite": "demo", "seed": 1, "success": True, "data": list(reports)}

    def error_step(self, error_type):
        return {"suite": "cross-dense", "seed": 1, "success": False, "error": "boom", "error_type": error_type}

    @pytest.mark.parametrize(
        "steps,expected",
        [
            ((), EXIT_OK),
            (("pass",), EXIT_OK),
            (("pass", "fail"), EXIT_FAILED),
            (("RootFindingError",), EXIT_FAILED),
            (("fail", "UnsupportedEnsembleError"), EXIT_UNSUPPORTED),
        ],
    )
    def test_exit_codes(self, steps, expected):
        built = []
        for kind in steps:
            if kind == "pass":
                built.append(self.ok_step(passing()))
            elif kind == "fail":
                built.append(self.ok_step(failing()))
            else:
                built.append(self.error_step(kind))
        assert ReportVerifier().verify(self.results(*built))["exit_code"] == expected

    def test_error_becomes_failed_report(self):
        verdict = ReportVerifier().verify(self.results(self.error_step("RootFindingError")))
        (report,) = verdict["reports"]
        assert report.name == "cross-dense" and not report.passed
        assert '"pass": false' in verdict["lines"][0]
