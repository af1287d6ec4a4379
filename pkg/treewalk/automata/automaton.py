# -*- coding: utf-8 -*-

"""
Finite invertible automata and their states as tree automorphisms.
"""

# **** IMPORTS ****
import logging
from functools import cached_property
from dataclasses import dataclass, field
from typing import Dict, Mapping, Optional, Sequence, Tuple

import networkx as nx

from treewalk.algebra.atoms import Atom
from treewalk.algebra.valency import ValencySequence
from treewalk.algebra.automorphism import TreeAutomorphism
from treewalk.algebra.permutation import Images, format_permutation, invert_images, is_identity_images
from treewalk.util import digest
from treewalk.exceptions import (
    AlphabetMismatchError,
    DanglingTransitionError,
    NonBijectivePermutationError,
    ValidationError,
)

# **** LOGGING ****
logger = logging.getLogger(__name__)

# **** CLASSES ****
@dataclass(frozen=True, eq=False)
class FiniteAutomaton:
    """
    Invertible automaton over the alphabet {0, …, m−1}.

    Attributes:
        alphabet_size (int): m.
        states (Tuple[str, ...]): State names in declaration order.
        root_perm (Mapping[str, Images]): σ_a for every state.
        transition (Mapping[Tuple[str, int], str]): (a, x) ↦ a_x.
        trivial_state (str | None): Designated sink acting as the identity.
        name (str): Display name.
    """
    alphabet_size: int
    states: Tuple[str, ...]
    root_perm: Mapping[str, Images]
    transition: Mapping[Tuple[str, int], str]
    trivial_state: Optional[str] = None
    name: str = "automaton"
    uid: str = field(init=False)

    # **** DUNDER METHODS ****
    def __post_init__(self):
        m = self.alphabet_size
        if m < 1:
            raise AlphabetMismatchError(f"Alphabet size must be at least 1, got {m}")
        if len(set(self.states)) != len(self.states):
            raise ValidationError(f"Duplicate state names in {self.name}")
        known = set(self.states)
        for state in self.states:
            images = self.root_perm.get(state)
            if images is None:
                raise ValidationError(f"State {state} has no root permutation")
            if len(images) != m:
                raise AlphabetMismatchError(
                    f"State {state} permutes {len(images)} letters, alphabet has {m}", state=state
                )
            if sorted(images) != list(range(m)):
                raise NonBijectivePermutationError(f"σ_{state} = {list(images)} is not a bijection", state=state)
            for x in range(m):
                target = self.transition.get((state, x))
                if target is None:
                    raise DanglingTransitionError(f"State {state} has no transition on letter {x}", state=state)
                if target not in known:
                    raise DanglingTransitionError(
                        f"State {state} on letter {x} goes to unknown state {target}", state=state, target=target
                    )
        extra = [key for key in self.transition if key[1] >= m or key[1] < 0]
        if extra:
            raise AlphabetMismatchError(f"Transitions on letters outside 0..{m - 1}: {extra}")
        if self.trivial_state is not None:
            state = self.trivial_state
            if state not in known:
                raise ValidationError(f"Trivial state {state} is not a state")
            if not is_identity_images(self.root_perm[state]) or any(
                self.transition[(state, x)] != state for x in range(m)
            ):
                raise ValidationError(f"Designated trivial state {state} does not act as the identity")
        object.__setattr__(self, "root_perm", {state: tuple(self.root_perm[state]) for state in self.states})
        object.__setattr__(self, "transition", dict(self.transition))
        object.__setattr__(self, "uid", digest(self.describe()))

    def __eq__(self, other) -> bool:
        return isinstance(other, FiniteAutomaton) and self.uid == other.uid

    def __hash__(self) -> int:
        return hash(self.uid)

    # **** PROPERTIES ****
    @cached_property
    def valency(self) -> ValencySequence:
        return ValencySequence.constant(self.alphabet_size)

    @cached_property
    def structurally_trivial(self) -> frozenset:
        """States whose whole reachable part has identity root permutations."""
        graph = nx.DiGraph()
        graph.add_nodes_from(self.states)
        for (state, _), target in self.transition.items():
            graph.add_edge(state, target)
        moving = {state for state in self.states if not is_identity_images(self.root_perm[state])}
        trivial = set()
        for state in self.states:
            reachable = nx.descendants(graph, state) | {state}
            if not reachable & moving:
                trivial.add(state)
        return frozenset(trivial)

    # **** METHODS ****
    def describe(self) -> str:
        """Canonical text form of the automaton."""
        lines = [f"alphabet: {self.alphabet_size}"]
        for state in self.states:
            perm = " ".join(str(x) for x in self.root_perm[state])
            to = " ".join(self.transition[(state, x)] for x in range(self.alphabet_size))
            lines.append(f"state {state}; perm {perm}; to {to}")
        return "\n".join(lines)

    def state(self, name: str) -> "AutomatonState":
        if name not in self.root_perm:
            raise ValidationError(f"Unknown state {name} in {self.name}")
        return AutomatonState(self, name)

    def element(self, name: str) -> TreeAutomorphism:
        """The automorphism defined by a state."""
        atom = self.state(name)
        return TreeAutomorphism.of(atom, name=name)

    def generators(self, include_trivial: bool = False) -> Tuple[TreeAutomorphism, ...]:
        """Elements of every state (the structurally trivial ones only on request)."""
        return tuple(
            self.element(state)
            for state in self.states
            if include_trivial or state not in self.structurally_trivial
        )

    def recursion(self, state: str) -> str:
        """Wreath recursion text such as "a=(a,e,e)(12)"."""
        sections = []
        for x in range(self.alphabet_size):
            target = self.transition[(state, x)]
            sections.append("e" if target in self.structurally_trivial else target)
        root = format_permutation(self.root_perm[state])
        return f"{state}=(" + ",".join(sections) + ")" + ("" if root == "e" else root)


@dataclass(frozen=True, eq=False)
class AutomatonState(Atom):
    """
    A state of an automaton, or its inverse, as an atom.

    Attributes:
        automaton (FiniteAutomaton): Owning automaton.
        state (str): State name.
        inverted (bool): Whether the atom is the inverse automorphism.
    """
    automaton: FiniteAutomaton
    state: str
    inverted: bool = False
    _key: Tuple = field(init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "_key", (self.automaton.uid, self.state, self.inverted))

    def __eq__(self, other) -> bool:
        return isinstance(other, AutomatonState) and self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __str__(self) -> str:
        return f"{self.state}⁻¹" if self.inverted else self.state

    @property
    def valency(self) -> ValencySequence:
        return self.automaton.valency

    @cached_property
    def _images(self) -> Images:
        images = self.automaton.root_perm[self.state]
        return invert_images(images) if self.inverted else images

    @cached_property
    def _sections(self) -> Tuple[Optional["AutomatonState"], ...]:
        automaton = self.automaton
        out = []
        for x in range(automaton.alphabet_size):
            source = invert_images(automaton.root_perm[self.state])[x] if self.inverted else x
            target = automaton.transition[(self.state, source)]
            if target in automaton.structurally_trivial:
                out.append(None)
            else:
                out.append(AutomatonState(automaton, target, self.inverted))
        return tuple(out)

    @property
    def is_identity(self) -> bool:
        return self.state in self.automaton.structurally_trivial

    def act_letter(self, x: int) -> int:
        return self._images[x]

    def first_section(self, x: int) -> Optional[Atom]:
        return self._sections[x]

    def inverse(self) -> "AutomatonState":
        return AutomatonState(self.automaton, self.state, not self.inverted)

    def sort_key(self) -> Tuple:
        return ("AutomatonState", self.automaton.states.index(self.state), self.inverted)


@dataclass(frozen=True)
class MooreDiagram:
    """
    Moore diagram of an automaton.

    Attributes:
        graph (nx.MultiDiGraph): Edge a → a_x per letter x with attribute `label` = (x, x·σ_a).
    """
    graph: nx.MultiDiGraph

    def out_degree(self, state: str) -> int:
        return self.graph.out_degree(state)

    def edge_list(self) -> str:
        """One `source target x y` line per edge."""
        lines = []
        for source, target, data in sorted(self.graph.edges(data=True), key=lambda edge: (edge[0], edge[2]["label"])):
            x, y = data["label"]
            lines.append(f"{source} {target} {x} {y}")
        return "\n".join(lines)


# **** FUNCTIONS ****
def make_automaton(
    alphabet_size: int,
    table: Mapping[str, Tuple[Sequence[int], Sequence[str]]],
    trivial_state: Optional[str] = None,
    name: str = "automaton",
) -> FiniteAutomaton:
    """Builds an automaton from {state: (perm images, targets per letter)}."""
    root_perm: Dict[str, Images] = {}
    transition: Dict[Tuple[str, int], str] = {}
    for state, (images, targets) in table.items():
        root_perm[state] = tuple(int(value) for value in images)
        if len(targets) != alphabet_size:
            raise AlphabetMismatchError(
                f"State {state} lists {len(targets)} targets, alphabet has {alphabet_size}", state=state
            )
        for x, target in enumerate(targets):
            transition[(state, x)] = target
    return FiniteAutomaton(
        alphabet_size=alphabet_size,
        states=tuple(table),
        root_perm=root_perm,
        transition=transition,
        trivial_state=trivial_state,
        name=name,
    )


def moore_diagram(aut: FiniteAutomaton) -> MooreDiagram:
    graph = nx.MultiDiGraph()
    graph.add_nodes_from(aut.states)
    for state in aut.states:
        images = aut.root_perm[state]
        for x in range(aut.alphabet_size):
            graph.add_edge(state, aut.transition[(state, x)], key=x, label=(x, images[x]))
    return MooreDiagram(graph)


# ****
if __name__ == "__main__":
    raise Exception("This file is not meant to run on its own.")
