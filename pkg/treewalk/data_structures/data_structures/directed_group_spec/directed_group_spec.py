# -*- coding: utf-8 -*-

"""
Document shape of a parsed directed-group file.
"""

# **** IMPORTS ****
import logging
from pathlib import Path

from treewalk.exceptions import DirectedSpecError
from treewalk.data_structures.data_structure import DataStructure

# **** LOGGING ****
logger = logging.getLogger(__name__)

# **** CLASSES ****
class DirectedGroupSpec(DataStructure):
    """
    Valency head/period, directed generators given by per-level (rho, tau) tables
    split into head and period, and rooted generators given by first-level images.
    """
    name: str = "directed_group_spec"
    error_class = DirectedSpecError

DirectedGroupSpec.load_json_schema(Path(__file__).with_name("directed_group_spec.schema.json"))

# ****
if __name__ == "__main__":
    raise Exception("This script is not meant to be run directly.")
