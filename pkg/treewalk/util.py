# -*- coding: utf-8 -*-

"""
Utilities for the toolkit.
"""

# **** IMPORTS ****
import os
import re
import json
import inspect
import logging
import tempfile
import importlib.util
from pathlib import Path
from fractions import Fraction
from typing import Any, List, Tuple, Type, Union

from blake3 import blake3

from treewalk.exceptions import ConfigError

# **** LOGGER ****
logger = logging.getLogger(__name__)

# **** CONSTANTS ****
RANGE_PATTERN = re.compile(r"^\s*(\d+)\s*(?:\.\.\s*(\d+))?\s*$")

# **** FUNCTIONS ****
def create_divider(name: str, total_width: int = 50) -> str:
    """
    Creates a divider line with the given name centered among dashes.

    Args:
        name (str): The text to place in the divider.
        total_width (int): The total width of the divider line.

    Returns:
        str: The formatted divider line.
    """
    prefix = "# "
    name_len = len(name)
    max_name_space = total_width - len(prefix)
    if name_len >= max_name_space:
        return f"# {name}"
    space_for_dashes = max_name_space - name_len
    left = space_for_dashes // 2
    right = space_for_dashes - left
    return prefix + ("-" * left) + name + ("-" * right)


def discover_classes(directory: Path, base_class: Type) -> List:
    """
    Recursively discovers any subclasses of a given base class within all .py files in the given directory.

    Args:
        directory (Path): Path to the directory containing potential class modules.
        base_class (Type): The base class to search for subclasses.

    Returns:
        List: Subclasses of the specified base class, sorted by name.
    """
    discovered_classes = []

    for module_path in sorted(directory.rglob("*.py")):
        if module_path.name.startswith("__init__"):
            continue

        module_name = (
            module_path.relative_to(directory)
            .with_suffix("")
            .as_posix()
            .replace("/", ".")
        )

        spec = importlib.util.spec_from_file_location(module_name, module_path)
        if spec and spec.loader:
            module = importlib.util.module_from_spec(spec)
            spec.loader.exec_module(module)

            for _, obj in inspect.getmembers(module, inspect.isclass):
                if issubclass(obj, base_class) and obj is not base_class and obj.__module__ == module_name:
                    logger.debug(f"Discovered {obj.__name__}")
                    discovered_classes.append(obj)

    return sorted(discovered_classes, key=lambda cls: cls.name or cls.__name__)


def parse_range(text: Union[str, Tuple[int, int]]) -> Tuple[int, int]:
    """
    Parses an inclusive integer range written `a..b` (or a single integer).

    Raises:
        ConfigError: If the text is not a range or the range is empty.
    """
    if isinstance(text, tuple):
        low, high = text
    else:
        match = RANGE_PATTERN.match(text)
        if not match:
            raise ConfigError(f"Expected a range 'a..b', got {text!r}")
        low = int(match.group(1))
        high = int(match.group(2)) if match.group(2) is not None else low
    if low > high:
        raise ConfigError(f"Empty range {low}..{high}")
    return low, high


def format_fraction(value: Any) -> str:
    """Exact `p/q` form of a rational (integers print without a denominator)."""
    if isinstance(value, Fraction):
        if value.denominator == 1:
            return str(value.numerator)
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, int):
        return str(value)
    return ""


def format_float(value: Any) -> str:
    """Stable float text used in every CSV artifact."""
    if value is None:
        return ""
    as_float = float(value)
    if as_float == float("inf"):
        return "inf"
    return f"{as_float:.12g}"


def parse_fraction(text: str) -> Fraction:
    """
    Parses an explicit rational weight `p/q` or integer.

    Raises:
        ConfigError: If the text is a float or otherwise not a rational literal.
    """
    cleaned = text.strip()
    if not re.fullmatch(r"-?\d+(?:/\d+)?", cleaned):
        raise ConfigError(f"Weights must be exact rationals p/q, got {text!r}")
    return Fraction(cleaned)


def canonical_json(data: Any) -> str:
    """JSON with sorted keys and no whitespace variance."""
    return json.dumps(data, sort_keys=True, separators=(",", ":"), default=str)


def digest(data: Union[str, bytes], length: int = 16) -> str:
    """Short blake3 hex digest."""
    if isinstance(data, str):
        data = data.encode("utf-8")
    return blake3(data).hexdigest()[: length * 2]


def atomic_write_text(path: Path, text: str) -> Path:
    """
    Writes `text` to `path` through a temporary file in the same directory followed by a rename.

    Returns:
        Path: The written path.
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    handle, temp_name = tempfile.mkstemp(prefix=f".{path.name}.", dir=path.parent)
    try:
        with os.fdopen(handle, "w", encoding="utf-8", newline="") as file:
            file.write(text)
        os.replace(temp_name, path)
    except BaseException:
        if os.path.exists(temp_name):
            os.remove(temp_name)
        raise
    logger.debug(f"Wrote {path}")
    return path

# ****
if __name__ == "__main__":
    raise Exception("This script is not meant to be run directly.")
