# -*- coding: utf-8 -*-

"""
Directed-group definition files.

    # mother group over the ternary tree, one directed and one rooted generator
    name: example
    head:
    period: 3
    directed a
      period:
      level 0 2 1 | 1 0 2 | 0 1 2
    rooted b: 1 0 2

`head:`/`period:` at the top give the valency sequence.  Inside a
`directed` block each `level` line lists ρ_n and then τ_{n,1}, …,
τ_{n,m_n−1} as image lists separated by `|`; levels before the `period:`
marker form the head, the ones after it repeat forever.
"""

# **** IMPORTS ****
import logging
from pathlib import Path
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Tuple, Union

from treewalk.algebra.atoms import RootedPermutation
from treewalk.algebra.valency import ValencySequence
from treewalk.directed.directed import DirectedElement
from treewalk.data_structures.data_structures.directed_group_spec.directed_group_spec import DirectedGroupSpec
from treewalk.exceptions import DirectedSpecError, ValidationError

# **** LOGGING ****
logger = logging.getLogger(__name__)

# **** CLASSES ****
@dataclass(frozen=True)
class DirectedGroupDefinition:
    """
    Attributes:
        name (str): Display name.
        tree (ValencySequence): Valency sequence.
        directed (Tuple[DirectedElement, ...]): Generators of A.
        rooted (Tuple[RootedPermutation, ...]): Generators of B.
        rooted_names (Tuple[str, ...]): Names of the rooted generators, in order.
    """
    name: str
    tree: ValencySequence
    directed: Tuple[DirectedElement, ...]
    rooted: Tuple[RootedPermutation, ...]
    rooted_names: Tuple[str, ...]


# **** FUNCTIONS ****
def _integers(text: str, line_number: int) -> List[int]:
    tokens = text.replace(",", " ").replace("[", " ").replace("]", " ").split()
    try:
        return [int(token) for token in tokens]
    except ValueError as exc:
        raise DirectedSpecError(f"Line {line_number}: expected integers, got {text!r}", line=line_number) from exc


def parse_directed_text(text: str, name: str = "directed") -> Dict[str, Any]:
    """
    Reads the text format into a `DirectedGroupSpec` document.

    Raises:
        DirectedSpecError: If a line cannot be read or the document is incomplete.
    """
    document: Dict[str, Any] = {"name": name, "head": [], "directed": [], "rooted": []}
    current: Optional[Dict[str, Any]] = None
    in_period = False
    for line_number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        lowered = line.lower()
        if lowered.startswith("directed"):
            element_name = line[len("directed"):].strip()
            if not element_name:
                raise DirectedSpecError(f"Line {line_number}: directed element needs a name", line=line_number)
            current = {"name": element_name, "head": [], "period": []}
            document["directed"].append(current)
            in_period = False
            continue
        if lowered.startswith("rooted"):
            element_name, _, images = line[len("rooted"):].partition(":")
            if not element_name.strip() or not images.strip():
                raise DirectedSpecError(f"Line {line_number}: expected 'rooted <name>: <images>'", line=line_number)
            document["rooted"].append({"name": element_name.strip(), "perm": _integers(images, line_number)})
            current = None
            continue
        if lowered.startswith("level"):
            if current is None:
                raise DirectedSpecError(f"Line {line_number}: level outside a directed block", line=line_number)
            groups = [_integers(part, line_number) for part in line[len("level"):].split("|")]
            if not groups[0]:
                raise DirectedSpecError(f"Line {line_number}: level needs ρ", line=line_number)
            level = {"rho": groups[0], "tau": groups[1:]}
            current["period" if in_period else "head"].append(level)
            continue

        key, separator, rest = line.partition(":")
        key = key.strip().lower()
        if not separator:
            raise DirectedSpecError(f"Line {line_number}: cannot read {raw.strip()!r}", line=line_number)
        if key == "period" and current is not None:
            if rest.strip():
                raise DirectedSpecError(f"Line {line_number}: the element period marker takes no values", line=line_number)
            in_period = True
        elif key in ("head", "period"):
            document[key] = _integers(rest, line_number)
        elif key == "name":
            document["name"] = rest.strip()
        else:
            raise DirectedSpecError(f"Line {line_number}: unknown field {key!r}", line=line_number)

    if "period" not in document:
        raise DirectedSpecError("Directed-group definition has no valency period")
    for element in document["directed"]:
        if not element["period"]:
            raise DirectedSpecError(f"Directed element {element['name']} has no period levels")
    DirectedGroupSpec.verify_structure(document)
    return document


def directed_group_from_document(document: Dict[str, Any]) -> DirectedGroupDefinition:
    """
    Raises:
        DirectedSpecError: If the document or any element data is invalid.
    """
    DirectedGroupSpec.verify_structure(document)
    try:
        tree = ValencySequence.of(document["head"], document["period"])
        directed = tuple(
            DirectedElement.from_levels(
                tree,
                [(level["rho"], level["tau"]) for level in element["head"]],
                [(level["rho"], level["tau"]) for level in element["period"]],
                name=element["name"],
            )
            for element in document["directed"]
        )
        rooted = tuple(RootedPermutation(tuple(element["perm"]), tree) for element in document["rooted"])
    except ValidationError as exc:
        raise DirectedSpecError(exc.message, **exc.details) from exc
    rooted_names = tuple(element["name"] for element in document["rooted"])
    return DirectedGroupDefinition(document.get("name", "directed"), tree, directed, rooted, rooted_names)


def load_directed_group(source: Union[str, Path], name: str = "directed") -> DirectedGroupDefinition:
    """Parses definition text (or a path to a definition file) into a valency sequence with A and B generators."""
    if isinstance(source, Path):
        name = source.stem
        source = source.read_text(encoding="utf-8")
    definition = directed_group_from_document(parse_directed_text(source, name=name))
    logger.debug(
        f"Loaded directed group {definition.name}: {len(definition.directed)} directed and "
        f"{len(definition.rooted)} rooted generators over {definition.tree}"
    )
    return definition


# ****
if __name__ == "__main__":
    raise Exception("This file is not meant to run on its own.")
