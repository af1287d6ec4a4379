# -*- coding: utf-8 -*-

"""
Activity growth of automaton states.

Γ_a(n) counts the level-n vertices where the section of a is nontrivial.
It grows polynomially of degree d_a, read off the cycle structure of the
Moore diagram restricted to nontrivial states, or exponentially when one
strongly connected component holds two distinct cycles.
"""

# **** IMPORTS ****
import math
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
import networkx as nx

from treewalk.automata.automaton import FiniteAutomaton, moore_diagram
from treewalk.automata.reduction import reduce_with_mapping
from treewalk.algebra.automorphism import TreeAutomorphism, is_trivial
from treewalk.networks.network import LabeledNetwork, level_network
from treewalk.exceptions import InvariantViolationError, ValidationError

# **** LOGGING ****
logger = logging.getLogger(__name__)

# **** TYPES ****
Degree = Union[int, float]
Cycle = Tuple[Tuple[str, str, int], ...]

# **** CLASSES ****
@dataclass(frozen=True)
class ActivityReport:
    """
    Attributes:
        automaton (str): Automaton name.
        degrees (Dict[str, int | float]): d_a per original state (math.inf when unbounded).
        degree (int | float): d = max_a d_a.
        witness_state (str | None): State realizing d.
        witness (Tuple[Cycle, ...]): Chain of cycles c_d → … → c_0 when d is finite, or two distinct
            cycles inside one strongly connected component when d is infinite.
        state_map (Dict[str, str]): Reduction mapping, original state ↦ representative.
        nontrivial (Tuple[str, ...]): Reduced states that do not act trivially.
    """
    automaton: str
    degrees: Dict[str, Degree]
    degree: Degree
    witness_state: Optional[str]
    witness: Tuple[Cycle, ...]
    state_map: Dict[str, str] = field(default_factory=dict)
    nontrivial: Tuple[str, ...] = ()

    @property
    def infinite(self) -> bool:
        return math.isinf(self.degree)

    @property
    def bounded(self) -> bool:
        return self.degree == 0

    def degree_label(self, state: Optional[str] = None) -> str:
        value = self.degree if state is None else self.degrees[state]
        return "inf" if math.isinf(value) else str(int(value))


@dataclass(frozen=True)
class ActivityCheck:
    """
    Attributes:
        passed (bool): Whether the growth of Γ agrees with the report.
        values (Dict[str, Tuple[int, ...]]): Γ_a(0..n_max) for every reduced nontrivial state.
        messages (Tuple[str, ...]): Failures, empty when passed.
    """
    passed: bool
    values: Dict[str, Tuple[int, ...]]
    messages: Tuple[str, ...]


# **** FUNCTIONS ****
def nontrivial_states(aut: FiniteAutomaton) -> Tuple[str, ...]:
    """States whose automorphism is not the identity, decided by the triviality oracle."""
    return tuple(
        state
        for state in aut.states
        if state not in aut.structurally_trivial and not is_trivial(aut.element(state))
    )


def _active_graph(aut: FiniteAutomaton, active: Sequence[str]) -> nx.MultiDiGraph:
    """Moore diagram restricted to nontrivial states."""
    members = set(active)
    graph = moore_diagram(aut).graph
    restricted = nx.MultiDiGraph()
    restricted.add_nodes_from(active)
    for source, target, key in graph.edges(keys=True):
        if source in members and target in members:
            restricted.add_edge(source, target, key=key)
    return restricted


def _cycle_of(subgraph: nx.MultiDiGraph) -> Cycle:
    return tuple((u, v, key) for u, v, key in nx.find_cycle(subgraph))


def _second_cycle(subgraph: nx.MultiDiGraph, first: Cycle) -> Cycle:
    used = set(first)
    for u, v, key in sorted(subgraph.edges(keys=True)):
        if (u, v, key) in used:
            continue
        if u == v:
            return ((u, v, key),)
        path = nx.shortest_path(subgraph, v, u)
        back = []
        for a, b in zip(path, path[1:]):
            back.append((a, b, min(subgraph[a][b])))
        return ((u, v, key),) + tuple(back)
    raise InvariantViolationError("Component has more edges than vertices but no second cycle")


def _component_cycles(graph: nx.MultiDiGraph) -> Tuple[Dict[int, Optional[Cycle]], Dict[int, Tuple[Cycle, Cycle]], nx.DiGraph]:
    """
    One cycle per cyclic component, a pair of distinct cycles per component holding more
    than one, and the condensation DAG.
    """
    condensation = nx.condensation(graph)
    cycles: Dict[int, Optional[Cycle]] = {}
    infinite: Dict[int, Tuple[Cycle, Cycle]] = {}
    for component in sorted(condensation.nodes):
        members = condensation.nodes[component]["members"]
        subgraph = graph.subgraph(members)
        edges, vertices = subgraph.number_of_edges(), len(members)
        if edges == 0:
            cycles[component] = None
        elif edges == vertices:
            cycles[component] = _cycle_of(subgraph)
        else:
            first = _cycle_of(subgraph)
            cycles[component] = first
            infinite[component] = (first, _second_cycle(subgraph, first))
    return cycles, infinite, condensation


def _chains(condensation: nx.DiGraph, cycles: Dict[int, Optional[Cycle]]) -> Dict[int, Tuple[int, ...]]:
    """Longest chain of cyclic components reachable from each component."""
    best: Dict[int, Tuple[int, ...]] = {}
    for component in reversed(list(nx.topological_sort(condensation))):
        chain: Tuple[int, ...] = ()
        for successor in sorted(condensation.successors(component)):
            if len(best[successor]) > len(chain):
                chain = best[successor]
        if cycles[component] is not None:
            chain = (component,) + chain
        best[component] = chain
    return best


def activity_degree(aut: FiniteAutomaton) -> ActivityReport:
    """
    Activity degree of every state and of the automaton.

    Unreduced automata are reduced first; degrees are reported for the original
    state names through the reduction mapping.  States acting trivially get 0,
    as do finitary states that reach no cycle.
    """
    reduction = reduce_with_mapping(aut)
    reduced = reduction.automaton
    active = nontrivial_states(reduced)
    graph = _active_graph(reduced, active)
    cycles, infinite, condensation = _component_cycles(graph)
    mapping = condensation.graph["mapping"] if active else {}

    reduced_degrees: Dict[str, Degree] = {state: 0 for state in reduced.states}
    witness: Tuple[Cycle, ...] = ()
    witness_state: Optional[str] = None
    chains = _chains(condensation, cycles) if active else {}
    longest: Tuple[int, ...] = ()
    for state in active:
        chain = chains[mapping[state]]
        reduced_degrees[state] = max(len(chain) - 1, 0)
        if len(chain) > len(longest) or (len(chain) == len(longest) and witness_state is None):
            longest, witness_state = chain, state
    witness = tuple(cycles[component] for component in longest)

    if infinite:
        component = min(infinite)
        for bad in infinite:
            reaching = nx.ancestors(condensation, bad) | {bad}
            for state in active:
                if mapping[state] in reaching:
                    reduced_degrees[state] = math.inf
        witness = infinite[component]
        witness_state = sorted(condensation.nodes[component]["members"])[0]

    degrees = {state: reduced_degrees[reduction.state_map[state]] for state in aut.states}
    degree = max(degrees.values(), default=0)
    if witness_state is not None and reduced_degrees[witness_state] != degree:
        raise InvariantViolationError(f"Witness state {witness_state} does not realize degree {degree}")
    logger.info(f"Activity degree of {aut.name}: {'inf' if math.isinf(degree) else degree}")
    return ActivityReport(
        automaton=aut.name,
        degrees=degrees,
        degree=degree,
        witness_state=witness_state,
        witness=witness,
        state_map=dict(reduction.state_map),
        nontrivial=active,
    )


def validate_witness(aut: FiniteAutomaton, report: ActivityReport) -> bool:
    """Every witness edge is a Moore-diagram edge and every witness cycle closes."""
    reduced = reduce_with_mapping(aut).automaton
    graph = moore_diagram(reduced).graph
    for cycle in report.witness:
        if not cycle or cycle[0][0] != cycle[-1][1]:
            return False
        for (u, v, key), following in zip(cycle, cycle[1:] + cycle[:1]):
            if not graph.has_edge(u, v, key=key) or v != following[0]:
                return False
    return True


def _transition_counts(aut: FiniteAutomaton, active: Sequence[str]) -> np.ndarray:
    index = {state: position for position, state in enumerate(active)}
    matrix = np.zeros((len(active), len(active)), dtype=object)
    for state in active:
        for x in range(aut.alphabet_size):
            target = aut.transition[(state, x)]
            if target in index:
                matrix[index[state], index[target]] += 1
    return matrix


def activity_profile(aut: FiniteAutomaton, n_max: int) -> Dict[str, Tuple[int, ...]]:
    """Γ_a(0..n_max) for every state, by iterating the count vector through the transitions."""
    if n_max < 0:
        raise ValidationError(f"Level must be non-negative, got {n_max}")
    active = nontrivial_states(aut)
    profile: Dict[str, List[int]] = {state: [] for state in aut.states}
    if not active:
        return {state: (0,) * (n_max + 1) for state in aut.states}
    matrix = _transition_counts(aut, active)
    counts = np.ones(len(active), dtype=object)
    for _ in range(n_max + 1):
        for position, state in enumerate(active):
            profile[state].append(int(counts[position]))
        counts = matrix.dot(counts)
    for state in aut.states:
        if not profile[state]:
            profile[state] = [0] * (n_max + 1)
    return {state: tuple(values) for state, values in profile.items()}


def activity_function(aut: FiniteAutomaton, a: str, n: int) -> int:
    """
    Γ_a(n) = #{w at level n : a|_w ≠ e}.

    Raises:
        ValidationError: If a is not a state or n is negative.
    """
    if a not in aut.root_perm:
        raise ValidationError(f"Unknown state {a} in {aut.name}")
    return activity_profile(aut, n)[a][n]


def cross_validate_activity(aut: FiniteAutomaton, report: Optional[ActivityReport] = None, n_max: int = 12) -> ActivityCheck:
    """
    Checks a report against the growth of Γ up to n_max.

    Degree 0 must give an eventually constant Γ; an infinite degree must make Γ of the
    witnessing state grow by a factor of at least 1.1 per level over [6, n_max]; a finite
    degree d must keep Γ_a(n) ≤ (m·|A|)^{d+1}·(n+1)^d.
    """
    report = report or activity_degree(aut)
    reduced = reduce_with_mapping(aut).automaton
    values = activity_profile(reduced, n_max)
    messages: List[str] = []
    if report.infinite:
        state = report.state_map.get(report.witness_state, report.witness_state)
        series = values[state]
        for n in range(min(6, n_max), n_max):
            if series[n] == 0 or series[n + 1] < 1.1 * series[n]:
                messages.append(f"Γ_{state} grows from {series[n]} to {series[n + 1]} at level {n}")
                break
    else:
        for state in report.nontrivial:
            series = values[state]
            d = int(report.degrees[state])
            if d == 0:
                if n_max >= 2 and not (series[-1] == series[-2] == series[-3]):
                    messages.append(f"Γ_{state} is not eventually constant: {series[-3:]}")
            else:
                bound = (reduced.alphabet_size * len(reduced.states)) ** (d + 1)
                for n, value in enumerate(series):
                    if value > bound * (n + 1) ** d:
                        messages.append(f"Γ_{state}({n}) = {value} exceeds the degree-{d} bound")
                        break
    if messages:
        logger.warning(f"Activity cross-validation failed for {aut.name}: {messages[0]}")
    return ActivityCheck(not messages, values, tuple(messages))


def dual_moore_level(source: Union[FiniteAutomaton, Sequence[TreeAutomorphism]], n: int) -> LabeledNetwork:
    """
    The n-th iterate of the dual Moore diagram: vertices T^n, one edge w → w·a labeled (a, a|_w) per state.

    Raises:
        ValidationError: If n < 1.
        ResourceError: If level n exceeds the vertex budget.
    """
    if n < 1:
        raise ValidationError(f"Dual Moore levels start at 1, got {n}")
    if isinstance(source, FiniteAutomaton):
        generators = source.generators(include_trivial=True)
        valency = source.valency
    else:
        generators = tuple(source)
        if not generators:
            raise ValidationError("Dual Moore diagram needs at least one generator")
        valency = generators[0].valency
    return level_network(generators, n, with_sections=True, valency=valency)


# ****
if __name__ == "__main__":
    raise Exception("This file is not meant to run on its own.")
