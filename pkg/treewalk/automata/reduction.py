# -*- coding: utf-8 -*-

"""
State reduction of invertible automata by partition refinement.
"""

# **** IMPORTS ****
import logging
from dataclasses import dataclass
from typing import Dict, List, Tuple

from treewalk.automata.automaton import FiniteAutomaton
from treewalk.algebra.automorphism import equals
from treewalk.exceptions import InvariantViolationError

# **** LOGGING ****
logger = logging.getLogger(__name__)

# **** CLASSES ****
@dataclass(frozen=True)
class Reduction:
    """
    Attributes:
        automaton (FiniteAutomaton): Reduced automaton.
        state_map (Dict[str, str]): Original state ↦ representative state.
    """
    automaton: FiniteAutomaton
    state_map: Dict[str, str]

    @property
    def merged(self) -> Dict[str, Tuple[str, ...]]:
        """Representative ↦ every original state merged into it, for classes of size > 1."""
        classes: Dict[str, List[str]] = {}
        for state, representative in self.state_map.items():
            classes.setdefault(representative, []).append(state)
        return {rep: tuple(states) for rep, states in classes.items() if len(states) > 1}


# **** FUNCTIONS ****
def state_partition(aut: FiniteAutomaton) -> Dict[str, int]:
    """Coarsest partition compatible with σ and transitions, as state ↦ block index."""
    m = aut.alphabet_size
    signatures = {state: aut.root_perm[state] for state in aut.states}
    block = _renumber(aut.states, signatures)
    while True:
        refined_signatures = {
            state: (block[state],) + tuple(block[aut.transition[(state, x)]] for x in range(m))
            for state in aut.states
        }
        refined = _renumber(aut.states, refined_signatures)
        if len(set(refined.values())) == len(set(block.values())):
            return refined
        block = refined


def _renumber(states, signatures) -> Dict[str, int]:
    numbering: Dict[object, int] = {}
    block = {}
    for state in states:
        block[state] = numbering.setdefault(signatures[state], len(numbering))
    return block


def reduce_with_mapping(aut: FiniteAutomaton) -> Reduction:
    """
    Minimizes the automaton and reports which states were merged.

    Raises:
        InvariantViolationError: If a merged pair fails the triviality certificate.
    """
    block = state_partition(aut)
    representative: Dict[int, str] = {}
    for state in aut.states:
        representative.setdefault(block[state], state)
    state_map = {state: representative[block[state]] for state in aut.states}

    for state, rep in state_map.items():
        if state != rep and not equals(aut.element(state), aut.element(rep)):
            raise InvariantViolationError(f"Reduction merged {state} into {rep} but they act differently")

    kept = tuple(representative[index] for index in sorted(representative))
    trivial = None
    for state in kept:
        if state in aut.structurally_trivial:
            trivial = state
            break
    if trivial is None and aut.trivial_state is not None:
        trivial = state_map[aut.trivial_state]
    reduced = FiniteAutomaton(
        alphabet_size=aut.alphabet_size,
        states=kept,
        root_perm={state: aut.root_perm[state] for state in kept},
        transition={
            (state, x): state_map[aut.transition[(state, x)]]
            for state in kept
            for x in range(aut.alphabet_size)
        },
        trivial_state=trivial,
        name=aut.name,
    )
    if len(kept) < len(aut.states):
        logger.info(f"Reduced {aut.name} from {len(aut.states)} to {len(kept)} states")
    return Reduction(automaton=reduced, state_map=state_map)


def reduce(aut: FiniteAutomaton) -> FiniteAutomaton:
    """Partition-refinement minimization; merged states act identically to their originals."""
    return reduce_with_mapping(aut).automaton


# ****
if __name__ == "__main__":
    raise Exception("This file is not meant to run on its own.")
