# -*- coding: utf-8 -*-

"""
Runs the acceptance suite on a group and fails when any check fails.
"""

# **** IMPORTS ****
import logging
from typing import Any, Dict, Tuple

from treewalk.processes.app_process import ExperimentProcess, RunContext, artifact_header
from treewalk.util import atomic_write_text
from treewalk.verification import results_to_csv, run_suite
from treewalk.exceptions import InvariantViolationError

# **** LOGGING ****
logger = logging.getLogger(__name__)

# **** CLASSES ****
class Verify(ExperimentProcess):
    """
    Writes `verify.csv` with one row per check before reporting failures.
    """
    name: str = "verify"
    description: str = "Acceptance suite: algebra laws, activity, resistance, traces and entropy bounds"

    @classmethod
    def run(cls, context: RunContext) -> Tuple[Dict[str, Any], Dict[str, str]]:
        results = run_suite(context.group, context.measure, context.levels)
        failed = [result for result in results if result.passed is False]
        text = results_to_csv(results)
        if failed:
            atomic_write_text(context.out_dir / "verify.csv", artifact_header(context.document) + text)
            raise InvariantViolationError(
                f"{len(failed)} checks failed, first {failed[0].name}: {failed[0].detail}",
                failed=[result.name for result in failed],
            )
        summary = {
            "group": context.group.name,
            "checks": {result.name: ("skipped" if result.skipped else "passed") for result in results},
            "passed": sum(1 for result in results if result.passed),
            "skipped": sum(1 for result in results if result.skipped),
        }
        logger.info(f"{context.group.name}: {summary['passed']} checks passed, {summary['skipped']} skipped")
        return summary, {"verify.csv": text}


# ****
if __name__ == "__main__":
    raise Exception("This script is not meant to be run directly.")
