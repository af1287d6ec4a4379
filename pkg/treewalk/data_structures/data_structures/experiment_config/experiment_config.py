# -*- coding: utf-8 -*-

"""
Experiment configuration documents.

A configuration is assembled from command-line flags over environment
defaults, validated here, and embedded verbatim in every artifact.
"""

# **** IMPORTS ****
import logging
from typing import Any, Dict, Optional, Tuple

from treewalk import config
from treewalk.exceptions import ConfigError
from treewalk.util import canonical_json, digest
from treewalk.data_structures.data_structure import DataStructure

# **** LOGGING ****
logger = logging.getLogger(__name__)

# **** CONSTANTS ****
RANGE_SCHEMA = {
    "type": "array",
    "items": {"type": "integer", "minimum": 0},
    "minItems": 2,
    "maxItems": 2,
}

# **** CLASSES ****
class ExperimentConfig(DataStructure):
    """Group source, measure, ranges, budgets and seed of one command run."""
    name: str = "experiment_config"
    error_class = ConfigError
    json_schema: Dict[str, Any] = {
        "$schema": "http://json-schema.org/draft-07/schema#",
        "type": "object",
        "required": ["command", "source", "measure", "levels", "k", "budgets", "seed", "samples"],
        "additionalProperties": False,
        "properties": {
            "command": {"type": "string"},
            "source": {
                "oneOf": [
                    {
                        "type": "object",
                        "required": ["fixture"],
                        "additionalProperties": False,
                        "properties": {"fixture": {"type": "string"}},
                    },
                    {
                        "type": "object",
                        "required": ["file", "kind"],
                        "additionalProperties": False,
                        "properties": {
                            "file": {"type": "string"},
                            "kind": {"enum": ["automaton", "directed"]},
                        },
                    },
                ]
            },
            "measure": {
                "type": "object",
                "required": ["kind", "symmetric"],
                "additionalProperties": False,
                "properties": {
                    "kind": {"enum": ["uniform", "table"]},
                    "weights": {
                        "type": "object",
                        "additionalProperties": {"type": "string", "pattern": "^\\d+(/\\d+)?$"},
                    },
                    "symmetric": {"type": "boolean"},
                },
            },
            "levels": RANGE_SCHEMA,
            "k": RANGE_SCHEMA,
            "budgets": {
                "type": "object",
                "additionalProperties": False,
                "required": ["triviality", "support", "vertices", "closure", "exact_vertices"],
                "properties": {
                    "triviality": {"type": "integer", "minimum": 1},
                    "support": {"type": "integer", "minimum": 1},
                    "vertices": {"type": "integer", "minimum": 1},
                    "closure": {"type": "integer", "minimum": 1},
                    "exact_vertices": {"type": "integer", "minimum": 0},
                },
            },
            "seed": {"type": "integer", "minimum": 0},
            "samples": {"type": "integer", "minimum": 0},
        },
    }

    # **** CLASS METHODS ****
    @classmethod
    def build(
        cls,
        command: str,
        fixture: Optional[str] = None,
        file: Optional[str] = None,
        kind: str = "automaton",
        weights: Optional[Dict[str, str]] = None,
        symmetric: bool = False,
        levels: Tuple[int, int] = (2, 7),
        k: Tuple[int, int] = (1, 10),
        budget_keys: Optional[int] = None,
        seed: Optional[int] = None,
        samples: int = 0,
    ) -> Dict[str, Any]:
        """
        Assembles and validates a configuration document.

        Raises:
            ConfigError: If the document is invalid or names both a fixture and a file.
        """
        if (fixture is None) == (file is None):
            raise ConfigError("Exactly one of --fixture and --file must be given")
        source = {"fixture": fixture} if fixture is not None else {"file": str(file), "kind": kind}
        measure: Dict[str, Any] = {"kind": "table" if weights else "uniform", "symmetric": bool(symmetric)}
        if weights:
            measure["weights"] = dict(weights)
        budgets = {
            "triviality": budget_keys or config.TRIVIALITY_BUDGET,
            "support": budget_keys or config.SUPPORT_BUDGET,
            "vertices": config.VERTEX_BUDGET,
            "closure": config.CLOSURE_BUDGET,
            "exact_vertices": config.EXACT_VERTEX_LIMIT,
        }
        document = {
            "command": command,
            "source": source,
            "measure": measure,
            "levels": list(levels),
            "k": list(k),
            "budgets": budgets,
            "seed": config.DEFAULT_SEED if seed is None else int(seed),
            "samples": int(samples),
        }
        cls.verify_structure(document)
        if document["levels"][0] > document["levels"][1] or document["k"][0] > document["k"][1]:
            raise ConfigError("Ranges must be non-empty")
        return document

    @classmethod
    def canonical_text(cls, document: Dict[str, Any]) -> str:
        return canonical_json(document)

    @classmethod
    def digest(cls, document: Dict[str, Any]) -> str:
        """blake3 digest of the canonical JSON form."""
        return digest(cls.canonical_text(document))

# ****
if __name__ == "__main__":
    raise Exception("This script is not meant to be run directly.")
