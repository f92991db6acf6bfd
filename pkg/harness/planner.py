"""
Verification Planner - Turns a run configuration into a structured plan of
suite steps with concrete parameters
"""

import logging
from typing import Any, Dict, List, Optional

from checks import CHECKS_REGISTRY
from cli.config import RunConfig

logger = logging.getLogger(__name__)

# Draw counts per suite when the run does not set --samples
DEFAULT_SIZES = {
    "sampler-laws": 100000,
    "ks-calibration": 10000,
    "cross-dense": 5000,
    "jacobians": 100,
    "change-of-variables": 1000,
    "normalization": 100000,
    "stockmann-seba": 100,
    "identities": 1000,
    "roundtrip": 1000,
    "configuration": 10000,
}

ALL_SUITES = list(DEFAULT_SIZES)


class VerificationPlanner:
    """
    The planner decides which suites run and with what parameters.

    It:
    1. Expands "all" into every registered suite
    2. Drops suites the ensemble cannot support when "all" was requested
    3. Fills in draw counts, seeds and thread caps from the configuration
    """

    def __init__(self, registry: Optional[Dict[str, Any]] = None):
        self.registry = registry if registry is not None else CHECKS_REGISTRY

    def create_plan(self, config: RunConfig) -> Dict[str, Any]:
        """
        Create a verification plan.

        Args:
            config: Validated run configuration

        Returns:
            A plan dictionary containing:
            - task: Label of the ensemble under test
            - steps: One step per suite with function and parameters
        """
        requested = self._expand_suites(config)
        logger.info(f"Planning suites {requested} for {config.ensemble.label}")

        steps = []
        for name in requested:
            steps.append(
                {
                    "step_id": len(steps) + 1,
                    "suite": name,
                    "function": next(iter(self.registry.get(name, {}).get("functions", {})), ""),
                    "action": f"Run {name} on {config.ensemble.label}",
                    "parameters": self._parameters(name, config),
                }
            )
        plan = {"task": config.ensemble.label, "seed": config.seed, "steps": steps}
        return self._validate_plan(plan)

    def _expand_suites(self, config: RunConfig) -> List[str]:
        if "all" not in config.suite:
            return list(dict.fromkeys(config.suite))
        suites = list(ALL_SUITES)
        if config.ensemble.beta not in (1, 2):
            logger.info(f"Skipping cross-dense for beta={config.ensemble.beta:g}; dense models need beta in {{1, 2}}")
            suites.remove("cross-dense")
        return suites

    def _parameters(self, name: str, config: RunConfig) -> Dict[str, Any]:
        spec, law = config.ensemble, config.coupling
        samples = config.samples if config.samples is not None else DEFAULT_SIZES.get(name, 0)
        common = {"spec": spec, "law": law, "samples": samples, "seed": config.seed, "threads": config.threads}

        if name == "sampler-laws":
            return {"seed": config.seed, "samples": samples}
        if name == "ks-calibration":
            return {"seed": config.seed, "samples": samples}
        if name == "jacobians":
            if spec.is_semidefinite:
                return {
                    "case": "laguerre_semidef", "trials": samples, "seed": config.seed,
                    "beta": spec.beta, "n": spec.n, "m": spec.m, "law": law, "threads": config.threads,
                }
            # full-rank chart; the formula does not depend on which ensemble produced mu
            return {
                "case": "gaussian", "trials": samples, "seed": config.seed,
                "beta": spec.beta, "n": spec.n, "law": law, "threads": config.threads,
            }
        if name == "normalization":
            return {**common, "method": config.method}
        if name == "stockmann-seba":
            return {"sigma": law.sigma, "n": spec.n, "samples": samples, "seed": config.seed, "beta": spec.beta}
        return common

    def _validate_plan(self, plan: Dict[str, Any]) -> Dict[str, Any]:
        """
        Drop steps naming an unknown suite and renumber the rest.

        Args:
            plan: The generated plan

        Returns:
            Validated plan
        """
        validated_steps = []
        for step in plan.get("steps", []):
            suite = step.get("suite", "")
            if suite not in self.registry:
                logger.warning(f"Unknown suite '{suite}', skipping")
                continue
            step["step_id"] = len(validated_steps) + 1
            validated_steps.append(step)
        plan["steps"] = validated_steps
        return plan


# Singleton instance
_planner_instance: Optional[VerificationPlanner] = None


def get_planner() -> VerificationPlanner:
    """Get or create the singleton planner instance."""
    global _planner_instance
    if _planner_instance is None:
        _planner_instance = VerificationPlanner()
    return _planner_instance
