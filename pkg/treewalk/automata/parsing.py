# -*- coding: utf-8 -*-

"""
Automaton definition files.

    # Hanoi towers group
    alphabet: 3
    trivial: e
    state a; perm 0 2 1; to a e e
    state b; perm 2 1 0; to e b e
    state c; perm 1 0 2; to e e c
    state e; perm 0 1 2; to e e e

Blank lines and `#` comments are ignored.  `perm` lists the images of the
letters 0..m−1 and `to` the target state for each letter.
"""

# **** IMPORTS ****
import logging
from pathlib import Path
from typing import Any, Dict, List, Union

from treewalk.automata.automaton import FiniteAutomaton, make_automaton
from treewalk.data_structures.data_structures.automaton_spec.automaton_spec import AutomatonSpec
from treewalk.exceptions import SpecSyntaxError

# **** LOGGING ****
logger = logging.getLogger(__name__)

# **** FUNCTIONS ****
def _integers(text: str, line_number: int) -> List[int]:
    tokens = text.replace(",", " ").replace("[", " ").replace("]", " ").split()
    try:
        return [int(token) for token in tokens]
    except ValueError as exc:
        raise SpecSyntaxError(f"Line {line_number}: expected integers, got {text!r}", line=line_number) from exc


def parse_automaton_text(text: str, name: str = "automaton") -> Dict[str, Any]:
    """
    Reads the text format into an `AutomatonSpec` document.

    Raises:
        SpecSyntaxError: If a line cannot be read or the document is incomplete.
    """
    document: Dict[str, Any] = {"name": name, "states": []}
    seen = set()
    for line_number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(":")
        keyword = head.strip().lower()
        if keyword == "alphabet" and rest:
            values = _integers(rest, line_number)
            if len(values) != 1:
                raise SpecSyntaxError(f"Line {line_number}: alphabet takes one integer", line=line_number)
            document["alphabet"] = values[0]
            continue
        if keyword == "trivial" and rest:
            document["trivial"] = rest.strip()
            continue
        if keyword == "name" and rest:
            document["name"] = rest.strip()
            continue
        if not line.lower().startswith("state"):
            raise SpecSyntaxError(f"Line {line_number}: cannot read {raw.strip()!r}", line=line_number)

        state: Dict[str, Any] = {}
        for part in line.split(";"):
            part = part.strip()
            if not part:
                continue
            field_name, _, value = part.replace(":", " ", 1).partition(" ")
            field_name = field_name.strip().lower()
            value = value.strip()
            if field_name == "state":
                state["name"] = value
            elif field_name == "perm":
                state["perm"] = _integers(value, line_number)
            elif field_name == "to":
                state["to"] = value.replace(",", " ").replace("[", " ").replace("]", " ").split()
            else:
                raise SpecSyntaxError(f"Line {line_number}: unknown field {field_name!r}", line=line_number)
        missing = {"name", "perm", "to"} - set(state)
        if missing:
            raise SpecSyntaxError(f"Line {line_number}: state is missing {sorted(missing)}", line=line_number)
        if state["name"] in seen:
            raise SpecSyntaxError(f"Line {line_number}: state {state['name']} declared twice", line=line_number)
        seen.add(state["name"])
        document["states"].append(state)
    AutomatonSpec.verify_structure(document)
    return document


def automaton_from_document(document: Dict[str, Any]) -> FiniteAutomaton:
    """
    Builds and validates the automaton a definition document describes.

    Raises:
        NonBijectivePermutationError: If some σ_a is not a bijection.
        DanglingTransitionError: If a transition names an unknown state.
        AlphabetMismatchError: If a perm or target list has the wrong length.
    """
    AutomatonSpec.verify_structure(document)
    table = {state["name"]: (state["perm"], state["to"]) for state in document["states"]}
    return make_automaton(
        alphabet_size=document["alphabet"],
        table=table,
        trivial_state=document.get("trivial"),
        name=document.get("name", "automaton"),
    )


def load_automaton(source: Union[str, Path], name: str = "automaton") -> FiniteAutomaton:
    """Parses definition text (or a path to a definition file) into a validated automaton."""
    if isinstance(source, Path):
        name = source.stem
        source = source.read_text(encoding="utf-8")
    automaton = automaton_from_document(parse_automaton_text(source, name=name))
    logger.debug(f"Loaded automaton {automaton.name} with {len(automaton.states)} states over {automaton.alphabet_size} letters")
    return automaton

# ****
if __name__ == "__main__":
    raise Exception("This file is not meant to run on its own.")
