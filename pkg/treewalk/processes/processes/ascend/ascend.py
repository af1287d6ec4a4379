# -*- coding: utf-8 -*-

"""
Ascension diagrams on the orbit of 0ⁿ and their traces on the watched vertices.
"""

# **** IMPORTS ****
import logging
from typing import Any, Dict, Tuple

from treewalk.algebra.vertex import Vertex
from treewalk.directed.sections import SectionTracker
from treewalk.networks.network import orbit
from treewalk.processes.app_process import ExperimentProcess, RunContext
from treewalk.rwidf.bounds import watched_sets
from treewalk.rwidf.diagram import build_ascension, restricted_stationary, stationary, trace
from treewalk.rwidf.simulation import monte_carlo_trace
from treewalk.util import format_fraction
from treewalk.exceptions import InvariantViolationError, TracePreconditionError

# **** LOGGING ****
logger = logging.getLogger(__name__)

# **** CONSTANTS ****
DEFAULT_EXCURSIONS = 10000

# **** CLASSES ****
class Ascend(ExperimentProcess):
    """
    Builds the ascension diagram at each level and traces it on 𝕎_n.

    The exact trace is used whenever edges out of unwatched states carry δ_e;
    otherwise the trace is estimated from seeded excursions.
    """
    name: str = "ascend"
    description: str = "Ascension diagram per level and its trace on the watched vertices"

    @classmethod
    def run(cls, context: RunContext) -> Tuple[Dict[str, Any], Dict[str, str]]:
        mu = context.measure
        tracker = SectionTracker(context.group.generators, context.group.groups)
        artifacts: Dict[str, str] = {}
        levels = []
        for n in context.levels:
            O = orbit(list(mu.support), Vertex.root(n))
            d = build_ascension(mu, O)
            members = set(O)
            _, _, W = watched_sets(context.group, n, tracker)
            W = tuple(v for v in W if v in members) or (Vertex.root(n),)
            artifacts[f"ascension_n{n}.txt"] = d.to_text()

            try:
                traced = trace(d, W)
                method = "exact"
            except TracePreconditionError as e:
                logger.warning(f"Level {n}: {e.message}")
                excursions = context.samples or DEFAULT_EXCURSIONS
                traced = monte_carlo_trace(d, W, excursions, seed=context.seed).as_diagram(mu.valency)
                method = "monte_carlo"
            artifacts[f"trace_n{n}.txt"] = traced.to_text()

            record = {
                "level": n,
                "orbit": len(O),
                "watched": [str(v) for v in traced.states],
                "method": method,
                "reflection_symmetric": traced.is_reflection_symmetric(),
                "transitions": {
                    f"{v} {w}": format_fraction(traced.p(v, w)) for v, w in traced.edges()
                },
            }
            if method == "exact":
                expected = restricted_stationary(stationary(d), traced.states)
                if stationary(traced) != expected:
                    raise InvariantViolationError(
                        f"Level {n}: stationary vector of the trace is not ν restricted to 𝕎_n", level=n
                    )
                record["stationary"] = {str(v): format_fraction(p) for v, p in expected.items()}
            levels.append(record)
            logger.info(f"Level {n}: {len(O)} orbit vertices traced onto {len(traced)} ({method})")
        return {"group": context.group.name, "seed": context.seed, "levels": levels}, artifacts


# ****
if __name__ == "__main__":
    raise Exception("This script is not meant to be run directly.")
