# -*- coding: utf-8 -*-

"""
Entropy of the convolution powers next to the resistance bound.
"""

# **** IMPORTS ****
import logging
from typing import Any, Dict, Tuple

from treewalk.processes.app_process import ExperimentProcess, RunContext
from treewalk.rwidf.bounds import check_entropy_invariants, entropy_bound
from treewalk.util import format_float
from treewalk.exceptions import InvariantViolationError

# **** LOGGING ****
logger = logging.getLogger(__name__)

# **** CLASSES ****
class Entropy(ExperimentProcess):
    name: str = "entropy"
    description: str = "H(μ^{*k}) against V_n(k) + k/R_n(k), with the edge probability statistic"

    @classmethod
    def run(cls, context: RunContext) -> Tuple[Dict[str, Any], Dict[str, str]]:
        report = entropy_bound(
            context.measure,
            context.ks,
            context.group,
            context.levels,
            edge_levels=context.levels,
            budget=context.document["budgets"]["support"],
            samples=context.samples,
            seed=context.seed,
        )
        violations = check_entropy_invariants(report)
        if violations:
            raise InvariantViolationError(violations[0], violations=violations)

        results = {
            "group": report.name,
            "alpha": format_float(report.alpha),
            "constant": format_float(report.constant),
            "slope": format_float(report.slope),
            "exact_k": max((row.k for row in report.rows if row.entropy is not None), default=None),
            "seed": report.seed,
            "samples": report.samples,
        }
        if report.slope is not None and report.slope > report.alpha:
            logger.warning(f"Bound slope {report.slope:.4f} exceeds α = {report.alpha:.4f}")
        artifacts = {"entropy.csv": report.to_csv(), "edges.csv": report.edges_to_csv()}
        return results, artifacts


# ****
if __name__ == "__main__":
    raise Exception("This script is not meant to be run directly.")
