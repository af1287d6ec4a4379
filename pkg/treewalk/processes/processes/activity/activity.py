# -*- coding: utf-8 -*-

"""
Activity degree of an automaton group, with its Moore diagram.
"""

# **** IMPORTS ****
import logging
from typing import Any, Dict, Tuple

from treewalk.automata.automaton import moore_diagram
from treewalk.automata.activity import activity_degree, cross_validate_activity, validate_witness
from treewalk.processes.app_process import ExperimentProcess, RunContext
from treewalk.exceptions import InvariantViolationError, UnsupportedError

# **** LOGGING ****
logger = logging.getLogger(__name__)

# **** CLASSES ****
class Activity(ExperimentProcess):
    """
    Reports d_a for every state, the automaton degree and its witness cycles.
    """
    name: str = "activity"
    description: str = "Activity degree of an automaton group (Moore diagram exported)"

    @classmethod
    def run(cls, context: RunContext) -> Tuple[Dict[str, Any], Dict[str, str]]:
        aut = context.group.automaton
        if aut is None:
            raise UnsupportedError(f"{context.group.name} is not given by an automaton; activity needs an automaton source")

        report = activity_degree(aut)
        if not validate_witness(aut, report):
            raise InvariantViolationError(f"The activity witness of {aut.name} is not a chain of Moore-diagram cycles")
        check = cross_validate_activity(aut, report)
        if not check.passed:
            raise InvariantViolationError(f"Activity degree of {aut.name} disagrees with growth: {check.messages[0]}")

        lines = ["state,degree,representative,recursion"]
        for state in aut.states:
            lines.append(",".join((
                state,
                report.degree_label(state),
                report.state_map.get(state, state),
                aut.recursion(state),
            )))
        artifacts = {
            "activity.csv": "\n".join(lines) + "\n",
            "moore.txt": moore_diagram(aut).edge_list() + "\n",
        }
        results = {
            "automaton": aut.name,
            "degree": report.degree_label(),
            "witness_state": report.witness_state,
            "witness": [" ".join(f"{u}->{v}" for u, v, _ in cycle) for cycle in report.witness],
            "cross_validated": check.passed,
        }
        logger.info(f"{aut.name}: activity degree {report.degree_label()}")
        return results, artifacts


# ****
if __name__ == "__main__":
    raise Exception("This script is not meant to be run directly.")
