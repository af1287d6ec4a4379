# -*- coding: utf-8 -*-

"""
This module holds variables used by other modules.
Budgets can be overridden through the environment (or a `.env` file), just be careful.
"""

# **** IMPORTS ****
import os
import logging
from dotenv import load_dotenv
from pathlib import Path

# **** LOGGING ****
logger = logging.getLogger(__name__)

# ------------------------------------------------------------------------------------------
# Budgets and paths; override through TREEWALK_* variables
# ------------------------------------------------------------------------------------------

# **** DOTENV ****
load_dotenv()

# **** VERSION ****
VERSION = "0.1.0"
TOOLKIT_NAME = "treewalk"

# **** PATHS ****
BASE_DIR = Path(__file__).resolve().parent.parent
DATA_DIR = BASE_DIR / "data"
OUTPUT_DIR = Path(os.getenv("TREEWALK_OUTPUT_DIR", (DATA_DIR / "out").as_posix()))

# **** BUDGETS ****
def _env_int(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        return int(raw)
    except ValueError:
        logger.warning(f"Ignoring non-integer value {raw!r} for {name}; using {default}")
        return default

def _env_float(name: str, default: float) -> float:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        return float(raw)
    except ValueError:
        logger.warning(f"Ignoring non-numeric value {raw!r} for {name}; using {default}")
        return default

TRIVIALITY_BUDGET = _env_int("TREEWALK_TRIVIALITY_BUDGET", 1_000_000)  # word keys per triviality query
SUPPORT_BUDGET = _env_int("TREEWALK_SUPPORT_BUDGET", 2_000_000)  # keys in a convolution power
VERTEX_BUDGET = _env_int("TREEWALK_VERTEX_BUDGET", 1_000_000)  # vertices per level or orbit
CLOSURE_BUDGET = _env_int("TREEWALK_CLOSURE_BUDGET", 100_000)  # elements in a closed group
EXACT_VERTEX_LIMIT = _env_int("TREEWALK_EXACT_VERTEX_LIMIT", 2000)  # rational solves up to this size
SIGNATURE_VERTICES = _env_int("TREEWALK_SIGNATURE_VERTICES", 81)  # minimum level size for signatures
MAX_STABLE_LEVEL = _env_int("TREEWALK_MAX_STABLE_LEVEL", 20)
RESIDUAL_TOLERANCE = _env_float("TREEWALK_RESIDUAL_TOLERANCE", 1e-10)
DEFAULT_SEED = _env_int("TREEWALK_SEED", 7)

# **** LOGGING CONFIGURATION ****
LOG_FILE_PATH = Path(os.getenv("TREEWALK_LOG_FILE", (BASE_DIR / "program_log.txt").as_posix()))
CONSOLE_LOG_LEVEL = os.getenv("TREEWALK_LOG_LEVEL", "INFO").upper()

LOGGER_CONFIG = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "detailed": {
            "format": "%(asctime)s %(levelname)-8s %(name)s.%(funcName)s: %(message)s",
        },
        "brief": {
            "format": "[%(levelname)s] %(name)s: %(message)s",
        },
    },
    "handlers": {
        "runlog": {
            "class": "logging.FileHandler",
            "formatter": "detailed",
            "level": "WARNING",
            "filename": LOG_FILE_PATH.as_posix(),
            "mode": "a",
            "encoding": "utf-8",
            "delay": True,  # no file unless something is written
        },
        "stderr": {
            "class": "logging.StreamHandler",
            "formatter": "brief",
            "level": CONSOLE_LOG_LEVEL,
            "stream": "ext://sys.stderr",  # stdout carries command output
        },
    },
    "loggers": {
        TOOLKIT_NAME: {"level": "DEBUG", "handlers": ["runlog", "stderr"], "propagate": False},
        "__main__": {"level": "DEBUG", "handlers": ["runlog", "stderr"], "propagate": False},
    },
    "root": {"level": "WARNING", "handlers": ["stderr"]},
}


# ****
if __name__ == "__main__":
    raise Exception("This file is not meant to run on its own.")
