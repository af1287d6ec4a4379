# -*- coding: utf-8 -*-

"""
Effective resistance between the collapsed section sets, level by level.
"""

# **** IMPORTS ****
import logging
from typing import Any, Dict, Tuple

from treewalk.networks.profile import resistance_profile
from treewalk.processes.app_process import ExperimentProcess, RunContext
from treewalk.util import format_float, format_fraction

# **** LOGGING ****
logger = logging.getLogger(__name__)

# **** CONSTANTS ****
DEFAULT_TRAVERSE_STEPS = 20_000

# **** CLASSES ****
class Resistance(ExperimentProcess):
    """
    Writes `resistance.csv` with R_n, R_n^μ, V_n and the traverse rate per level.

    `--samples` sets the length of the simulated walk whose direct 𝔸 → 𝔹 steps
    are reported next to their stationary rate.
    """
    name: str = "resistance"
    description: str = "Resistance profile R_n between the collapsed section sets"

    @classmethod
    def run(cls, context: RunContext) -> Tuple[Dict[str, Any], Dict[str, str]]:
        steps = context.samples or DEFAULT_TRAVERSE_STEPS
        profile = resistance_profile(context.group, context.levels, context.measure, traverse_steps=steps, seed=context.seed)
        ratios = profile.ratios()
        results = {
            "group": profile.name,
            "m_star": profile.m_star,
            "resistance": {str(row.level): format_fraction(row.resistance) or format_float(row.resistance) for row in profile.rows},
            "collapse": {str(row.level): row.collapse for row in profile.rows},
            "ratios": [format_float(ratio) if ratio is not None else None for ratio in ratios],
            "increasing": profile.is_increasing(),
            "traverses": {
                str(row.level): {
                    "steps": row.traverses.steps,
                    "count": row.traverses.traverses,
                    "rate": format_float(row.traverses.rate),
                    "edge_flow": format_fraction(row.traverses.edge_flow),
                }
                for row in profile.rows if row.traverses is not None
            },
            "seed": context.seed,
        }
        if not profile.is_increasing():
            logger.warning(f"R_n of {profile.name} is not increasing over levels {list(context.levels)}")
        return results, {"resistance.csv": profile.to_csv()}


# ****
if __name__ == "__main__":
    raise Exception("This script is not meant to be run directly.")
