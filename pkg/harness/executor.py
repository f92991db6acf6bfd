"""
Suite Executor - Executes plan steps by calling the registered verification suites
Every step yields a result record; exceptions never escape a step
"""

import logging
import time
from typing import Any, Dict, List, Optional

from checks import CHECKS_REGISTRY
from checks.reports import TestReport

logger = logging.getLogger(__name__)


class SuiteExecutor:
    """
    The executor runs the steps of a verification plan.

    Suites are deterministic given their seed, so a failing step is recorded
    once and never retried.
    """

    def __init__(self, registry: Optional[Dict[str, Any]] = None):
        self.registry = registry if registry is not None else CHECKS_REGISTRY

    def execute_plan(self, plan: Dict[str, Any]) -> Dict[str, Any]:
        """
        Execute all steps in a plan.

        Args:
            plan: The plan from the planner

        Returns:
            Execution results with every step result and counters
        """
        logger.info(f"Executing plan for {plan.get('task', 'unknown ensemble')}")

        results = {
            "plan": plan,
            "step_results": [],
            "total_steps": len(plan.get("steps", [])),
            "successful_steps": 0,
            "failed_steps": 0,
            "execution_start": time.time(),
        }

        for step in plan.get("steps", []):
            step_result = self._execute_step(step)
            results["step_results"].append(step_result)
            if step_result["success"]:
                results["successful_steps"] += 1
            else:
                results["failed_steps"] += 1

        results["execution_time"] = round(time.time() - results["execution_start"], 2)
        logger.info(
            f"Plan execution completed: {results['successful_steps']}/{results['total_steps']} steps ran "
            f"in {results['execution_time']}s"
        )
        return results

    def _execute_step(self, step: Dict[str, Any]) -> Dict[str, Any]:
        """
        Execute a single step.

        Args:
            step: The step to execute

        Returns:
            Step result; ``data`` holds a list of TestReport on success,
            ``error`` and ``error_type`` describe a raised exception
        """
        step_id = step.get("step_id", "unknown")
        suite = step.get("suite", "")
        function_name = step.get("function", "")

        logger.info(f"Executing step {step_id}: {step.get('action', suite)}")

        result = {
            "step_id": step_id,
            "suite": suite,
            "function": function_name,
            "seed": step.get("parameters", {}).get("seed"),
            "success": False,
            "data": None,
            "error": None,
            "error_type": None,
        }

        suite_info = self.registry.get(suite)
        if suite_info is None:
            result["error"] = f"Unknown suite: {suite}"
            result["error_type"] = "ParameterError"
            logger.error(f"Step {step_id} failed: {result['error']}")
            return result

        function_info = suite_info.get("functions", {}).get(function_name)
        if function_info is None or function_info.get("handler") is None:
            result["error"] = f"No handler found for {suite}.{function_name}"
            result["error_type"] = "ParameterError"
            logger.error(f"Step {step_id} failed: {result['error']}")
            return result

        try:
            params = self._clean_parameters(step.get("parameters", {}), function_info.get("parameters", []))
            logger.debug(f"Calling {suite}.{function_name} with {sorted(params)}")
            response = function_info["handler"](**params)
            result["data"] = [response] if isinstance(response, TestReport) else list(response)
            result["success"] = True
            logger.info(f"Step {step_id} completed: pass={all(r.passed for r in result['data'])}")
        except Exception as e:
            result["error"] = str(e)
            result["error_type"] = type(e).__name__
            logger.error(f"Step {step_id} raised {type(e).__name__}: {e}")

        return result

    def _clean_parameters(self, parameters: Dict[str, Any], expected_params: List[str]) -> Dict[str, Any]:
        """
        Keep only the parameters the suite function expects.

        Args:
            parameters: Raw parameters from the plan
            expected_params: Names the function accepts

        Returns:
            Cleaned parameters dictionary
        """
        if not expected_params:
            return parameters

        cleaned = {}
        for param in expected_params:
            if param in parameters and parameters[param] is not None:
                value = parameters[param]
                if param in ("samples", "trials", "seed", "threads", "n", "m"):
                    value = int(value)
                cleaned[param] = value
        return cleaned


# Singleton instance
_executor_instance: Optional[SuiteExecutor] = None


def get_executor() -> SuiteExecutor:
    """Get or create the singleton executor instance."""
    global _executor_instance
    if _executor_instance is None:
        _executor_instance = SuiteExecutor()
    return _executor_instance
