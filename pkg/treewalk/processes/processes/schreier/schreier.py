# -*- coding: utf-8 -*-

"""
Schreier graphs on the levels of the tree, with their {0,*} projections.
"""

# **** IMPORTS ****
import logging
from typing import Any, Dict, Tuple

from treewalk.algebra.vertex import level_vertices
from treewalk.networks.network import (
    export_edge_list,
    level_orbits,
    path_order,
    schreier_graph,
    star_projection,
)
from treewalk.processes.app_process import ExperimentProcess, RunContext

# **** LOGGING ****
logger = logging.getLogger(__name__)

# **** CLASSES ****
class Schreier(ExperimentProcess):
    name: str = "schreier"
    description: str = "Schreier graph of the step measure on each level, with its star projection"

    @classmethod
    def run(cls, context: RunContext) -> Tuple[Dict[str, Any], Dict[str, str]]:
        measure = context.measure
        support = list(measure.support)
        artifacts: Dict[str, str] = {}
        levels = []
        for n in context.levels:
            net = schreier_graph(measure, tuple(level_vertices(measure.valency, n)))
            star = star_projection(net)
            order = path_order(star)
            orbits = level_orbits(support, measure.valency, n)
            artifacts[f"schreier_n{n}.txt"] = export_edge_list(net)
            artifacts[f"star_n{n}.txt"] = export_edge_list(star)
            levels.append({
                "level": n,
                "vertices": net.size,
                "edges": len(net.edges),
                "orbits": len(orbits),
                "star_classes": star.size,
                "star_is_path": order is not None,
                "star_path": [str(vertex) for vertex in order] if order is not None else None,
            })
            logger.info(f"Level {n}: {net.size} vertices, {len(orbits)} orbits, star path {order is not None}")
        return {"group": context.group.name, "levels": levels}, artifacts


# ****
if __name__ == "__main__":
    raise Exception("This script is not meant to be run directly.")
