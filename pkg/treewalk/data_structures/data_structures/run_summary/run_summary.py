# -*- coding: utf-8 -*-

"""
Summary record written by every command.
"""

# **** IMPORTS ****
import logging
from typing import Any, Dict

from treewalk.exceptions import InvariantViolationError
from treewalk.data_structures.data_structure import DataStructure

# **** LOGGING ****
logger = logging.getLogger(__name__)

# **** CLASSES ****
class RunSummary(DataStructure):
    name: str = "run_summary"
    error_class = InvariantViolationError
    json_schema: Dict[str, Any] = {
        "$schema": "http://json-schema.org/draft-07/schema#",
        "type": "object",
        "required": ["command", "status", "version", "config_digest", "artifacts", "results"],
        "additionalProperties": False,
        "properties": {
            "command": {"type": "string"},
            "status": {"enum": ["ok", "failed"]},
            "version": {"type": "string"},
            "config_digest": {"type": "string"},
            "artifacts": {"type": "array", "items": {"type": "string"}},
            "results": {"type": "object"},
        },
    }

# ****
if __name__ == "__main__":
    raise Exception("This script is not meant to be run directly.")
