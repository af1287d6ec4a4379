# -*- coding: utf-8 -*-

"""
Document shape of a parsed automaton file.
"""

# **** IMPORTS ****
import logging
from pathlib import Path

from treewalk.exceptions import SpecSyntaxError
from treewalk.data_structures.data_structure import DataStructure

# **** LOGGING ****
logger = logging.getLogger(__name__)

# **** CLASSES ****
class AutomatonSpec(DataStructure):
    """{"alphabet": m, "states": [{"name", "perm", "to"}], "trivial"?}"""
    name: str = "automaton_spec"
    error_class = SpecSyntaxError

AutomatonSpec.load_json_schema(Path(__file__).with_name("automaton_spec.schema.json"))

# ****
if __name__ == "__main__":
    raise Exception("This script is not meant to be run directly.")
