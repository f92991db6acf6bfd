"""
Report Verifier - Collects suite reports from execution results, writes them
as JSON lines and decides the exit code
"""

import logging
from typing import Any, Dict, List, Optional

from checks.reports import TestReport

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_UNSUPPORTED = 3


class ReportVerifier:
    """
    The verifier turns execution results into a flat list of reports.

    A step that raised becomes a single failed report carrying the error, so
    every requested suite shows up in the output.
    """

    def collect_reports(self, execution_results: Dict[str, Any]) -> List[TestReport]:
        """
        Flatten step results into reports, in plan order.

        Args:
            execution_results: Results from the executor

        Returns:
            List of TestReport
        """
        reports: List[TestReport] = []
        for step in execution_results.get("step_results", []):
            if step.get("success"):
                reports.extend(step["data"])
                continue
            reports.append(
                TestReport.failure(
                    name=step.get("suite") or "unknown",
                    seed=step.get("seed") or 0,
                    error=step.get("error") or "unknown error",
                    error_type=step.get("error_type") or "RMTError",
                )
            )
        return reports

    def exit_code(self, execution_results: Dict[str, Any], reports: List[TestReport]) -> int:
        """
        3 when a requested suite is unsupported for the ensemble, 1 when any
        report failed, 0 otherwise.
        """
        unsupported = [
            step for step in execution_results.get("step_results", [])
            if step.get("error_type") == "UnsupportedEnsembleError"
        ]
        if unsupported:
            for step in unsupported:
                logger.error(f"Suite {step['suite']} unsupported: {step['error']}")
            return EXIT_UNSUPPORTED
        failed = [r.name for r in reports if not r.passed]
        if failed:
            logger.warning(f"{len(failed)} of {len(reports)} reports failed: {failed}")
            return EXIT_FAILED
        logger.info(f"All {len(reports)} reports passed")
        return EXIT_OK

    def verify(self, execution_results: Dict[str, Any]) -> Dict[str, Any]:
        """
        Reports, their JSON lines and the exit code.

        Returns:
            Dictionary with "reports", "lines" and "exit_code"
        """
        reports = self.collect_reports(execution_results)
        return {
            "reports": reports,
            "lines": [r.to_json_line() for r in reports],
            "exit_code": self.exit_code(execution_results, reports),
        }


# Singleton instance
_verifier_instance: Optional[ReportVerifier] = None


def get_verifier() -> ReportVerifier:
    """Get or create the singleton verifier instance."""
    global _verifier_instance
    if _verifier_instance is None:
        _verifier_instance = ReportVerifier()
    return _verifier_instance
