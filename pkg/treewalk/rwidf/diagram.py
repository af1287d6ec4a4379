# -*- coding: utf-8 -*-

"""
Random walks with internal degrees of freedom.

A `Diagram` is a finite Markov chain on states Y whose edges carry
probability measures on the group.  The walk on G × Y moves from (h, x)
to (h·g, y) with probability p_xy·μ_xy(g).
"""

# **** IMPORTS ****
import logging
from fractions import Fraction
from dataclasses import dataclass, field
from typing import Dict, Hashable, Iterable, List, Optional, Sequence, Tuple

import networkx as nx

from treewalk.algebra.vertex import Vertex
from treewalk.algebra.valency import ValencySequence
from treewalk.algebra.automorphism import apply, section
from treewalk.algebra.elements import table_for
from treewalk.networks.linear import solve_exact
from treewalk.rwidf.measure import FiniteMeasure
from treewalk.util import format_fraction
from treewalk.exceptions import (
    PreconditionError,
    ReducibleChainError,
    TracePreconditionError,
    ValidationError,
)

# **** LOGGING ****
logger = logging.getLogger(__name__)

# **** TYPES ****
Edge = Tuple[Hashable, Hashable]

# **** CLASSES ****
@dataclass(frozen=True, eq=False)
class Diagram:
    """
    Attributes:
        states (Tuple[Hashable, ...]): State set Y, in a fixed order.
        transitions (Dict[Hashable, Dict[Hashable, Fraction]]): p_xy, positive entries only.
        measures (Dict[Edge, FiniteMeasure]): μ_xy for every edge with p_xy > 0.
        valency (ValencySequence): Tree the edge measures act on.
    """
    states: Tuple[Hashable, ...]
    transitions: Dict[Hashable, Dict[Hashable, Fraction]]
    measures: Dict[Edge, FiniteMeasure]
    valency: ValencySequence
    _index: Dict[Hashable, int] = field(init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "_index", {state: i for i, state in enumerate(self.states)})
        if len(self._index) != len(self.states):
            raise ValidationError("Diagram states must be distinct")
        if not self.states:
            raise ValidationError("A diagram needs at least one state")
        for x in self.states:
            row = self.transitions.get(x, {})
            total = sum(row.values(), Fraction(0))
            if total != 1:
                raise ValidationError(f"Transition row of {x} sums to {total}, not 1", state=str(x))
            for y, p in row.items():
                if y not in self._index:
                    raise ValidationError(f"Edge {x} → {y} leaves the state set", state=str(x))
                if p <= 0:
                    raise ValidationError(f"p({x}, {y}) = {p} must be positive", state=str(x))
                if (x, y) not in self.measures:
                    raise ValidationError(f"Edge {x} → {y} has no measure", state=str(x))
        if not nx.is_strongly_connected(self.graph()):
            raise ReducibleChainError("The transition matrix is not irreducible on its states")

    # **** DUNDER METHODS ****
    def __len__(self) -> int:
        return len(self.states)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Diagram)
            and set(self.states) == set(other.states)
            and self.transitions == other.transitions
            and self.measures == other.measures
        )

    # **** METHODS ****
    def p(self, x: Hashable, y: Hashable) -> Fraction:
        return self.transitions.get(x, {}).get(y, Fraction(0))

    def edges(self) -> List[Edge]:
        return [(x, y) for x in self.states for y in self._ordered(self.transitions[x])]

    def _ordered(self, row: Dict[Hashable, Fraction]) -> List[Hashable]:
        return sorted(row, key=self._index.__getitem__)

    def graph(self) -> nx.DiGraph:
        graph = nx.DiGraph()
        graph.add_nodes_from(self.states)
        for x, row in self.transitions.items():
            graph.add_edges_from((x, y) for y in row)
        return graph

    def is_reflection_symmetric(self) -> bool:
        """Whether μ_vw = μ̂_wv on every edge (p_wv > 0 required whenever p_vw > 0)."""
        for v, w in self.edges():
            back = self.measures.get((w, v))
            if back is None or self.measures[(v, w)] != back.reflected():
                return False
        return True

    def to_text(self) -> str:
        """States, the P matrix and one measure table per edge."""
        names = [str(state) for state in self.states]
        lines = [f"states: {' '.join(names)}", "P:"]
        for x in self.states:
            lines.append(" ".join(format_fraction(self.p(x, y)) for y in self.states))
        lines.append("edges:")
        for x, y in self.edges():
            lines.append(f"edge {x} {y} {format_fraction(self.p(x, y))}")
            for g, weight in self.measures[(x, y)].items():
                lines.append(f"  {g} {format_fraction(weight)}")
        return "\n".join(lines) + "\n"


# **** FUNCTIONS ****
def build_ascension(mu: FiniteMeasure, O: Sequence[Vertex]) -> Diagram:
    """
    Ascension diagram of μ on the orbit O: p_vw = μ{g : v·g = w} and μ_vw the law of g|_v given v·g = w.

    Raises:
        PreconditionError: If O is empty or some element moves a vertex out of O.
    """
    states = tuple(O)
    if not states:
        raise PreconditionError("The ascension diagram needs a nonempty orbit")
    members = set(states)
    level = states[0].level
    shifted = mu.valency.shift(level)
    table = table_for(shifted)
    transitions: Dict[Hashable, Dict[Hashable, Fraction]] = {}
    raw: Dict[Edge, Dict] = {}
    for v in states:
        row: Dict[Hashable, Fraction] = {}
        for g, weight in mu.items():
            w = apply(g, v)
            if w not in members:
                raise PreconditionError(f"{g} moves {v} to {w}, outside the orbit", vertex=str(v))
            h = table.key(section(g, v))
            row[w] = row.get(w, Fraction(0)) + weight
            sections = raw.setdefault((v, w), {})
            sections[h] = sections.get(h, Fraction(0)) + weight
        transitions[v] = row
    measures = {
        edge: FiniteMeasure.from_weights({h: weight / transitions[edge[0]][edge[1]] for h, weight in sections.items()}, shifted)
        for edge, sections in raw.items()
    }
    logger.debug(f"Ascension diagram on {len(states)} level-{level} vertices, {len(measures)} edges")
    return Diagram(states, transitions, measures, shifted)


def hitting_distribution(d: Diagram, W: Iterable[Hashable]) -> Dict[Hashable, Dict[Hashable, Fraction]]:
    """
    h_u(w): probability, from u, that the first state of W reached (at time ≥ 0) is w.

    Raises:
        PreconditionError: If W is empty or not a subset of the states.
    """
    watched = _watched(d, W)
    outside = [state for state in d.states if state not in watched]
    index = {state: i for i, state in enumerate(outside)}
    matrix: Dict[int, Dict[int, Fraction]] = {}
    rhs: Dict[int, Dict[Hashable, Fraction]] = {}
    for u in outside:
        i = index[u]
        row = {i: Fraction(1)}
        targets: Dict[Hashable, Fraction] = {}
        for y, p in d.transitions[u].items():
            if y in watched:
                targets[y] = targets.get(y, Fraction(0)) + p
            else:
                row[index[y]] = row.get(index[y], Fraction(0)) - p
        matrix[i] = row
        rhs[i] = targets
    solution = solve_exact(matrix, rhs) if matrix else {}
    hitting = {u: dict(solution.get(index[u], {})) for u in outside}
    for w in watched:
        hitting[w] = {w: Fraction(1)}
    return hitting


def _watched(d: Diagram, W: Iterable[Hashable]) -> Tuple[Hashable, ...]:
    watched = tuple(state for state in d.states if state in set(W))
    if not watched:
        raise PreconditionError("The trace needs a nonempty watched set inside the diagram")
    missing = set(W) - set(d.states)
    if missing:
        raise PreconditionError(f"Watched states {sorted(map(str, missing))} are not in the diagram")
    return watched


def check_trace_precondition(d: Diagram, W: Iterable[Hashable]) -> None:
    """
    Raises:
        TracePreconditionError: Naming the first edge leaving a state outside W with a non-identity measure.
    """
    watched = set(W)
    for x, y in d.edges():
        if x in watched:
            continue
        measure = d.measures[(x, y)]
        if not measure.is_delta_identity:
            raise TracePreconditionError(
                f"Edge {x} → {y} leaves an unwatched state but carries {measure}; use the Monte-Carlo trace",
                source=str(x),
                target=str(y),
            )


def trace(d: Diagram, W: Iterable[Hashable]) -> Diagram:
    """
    Diagram of the successive visits to W.

    p̄_vw = Σ_u p_vu·h_u(w) and μ̄_vw = Σ_u p_vu·μ_vu·h_u(w) / p̄_vw: once the walk leaves W every label is
    the identity until it returns, so the increment of an excursion is the label of its first step.

    Raises:
        PreconditionError: If W is empty or not a subset of the states.
        TracePreconditionError: If an edge out of an unwatched state carries a non-identity measure.
    """
    watched = _watched(d, W)
    check_trace_precondition(d, watched)
    hitting = hitting_distribution(d, watched)
    transitions: Dict[Hashable, Dict[Hashable, Fraction]] = {}
    raw: Dict[Edge, Dict] = {}
    for v in watched:
        row: Dict[Hashable, Fraction] = {}
        for u in d._ordered(d.transitions[v]):
            p = d.transitions[v][u]
            for w, h in hitting[u].items():
                mass = p * h
                if not mass:
                    continue
                row[w] = row.get(w, Fraction(0)) + mass
                weights = raw.setdefault((v, w), {})
                for g, q in d.measures[(v, u)].items():
                    weights[g] = weights.get(g, Fraction(0)) + mass * q
        transitions[v] = row
    measures = {
        edge: FiniteMeasure.from_weights({g: q / transitions[edge[0]][edge[1]] for g, q in weights.items()}, d.valency)
        for edge, weights in raw.items()
    }
    logger.debug(f"Traced {len(d)} states onto {len(watched)}")
    return Diagram(watched, transitions, measures, d.valency)


def stationary(d: Diagram) -> Dict[Hashable, Fraction]:
    """
    The stationary probability vector ν of P, solved exactly.

    Raises:
        ReducibleChainError: If P is not irreducible (checked when the diagram is built).
    """
    first, rest = d.states[0], d.states[1:]
    index = {state: i for i, state in enumerate(rest)}
    matrix: Dict[int, Dict[int, Fraction]] = {index[y]: {index[y]: Fraction(1)} for y in rest}
    rhs: Dict[int, Dict[str, Fraction]] = {index[y]: {} for y in rest}
    for x in d.states:
        for y, p in d.transitions[x].items():
            if y == first:
                continue
            i = index[y]
            if x == first:
                rhs[i]["nu"] = rhs[i].get("nu", Fraction(0)) + p
            else:
                matrix[i][index[x]] = matrix[i].get(index[x], Fraction(0)) - p
    solution = solve_exact(matrix, rhs) if matrix else {}
    unnormalized = {first: Fraction(1)}
    for y in rest:
        unnormalized[y] = solution[index[y]].get("nu", Fraction(0))
    total = sum(unnormalized.values(), Fraction(0))
    return {state: unnormalized[state] / total for state in d.states}


def restricted_stationary(nu: Dict[Hashable, Fraction], W: Iterable[Hashable]) -> Dict[Hashable, Fraction]:
    """ν(w)/ν(W) on W."""
    watched = list(W)
    mass = sum((nu[w] for w in watched), Fraction(0))
    return {w: nu[w] / mass for w in watched}


def edge_supremum(d: Diagram, sources: Iterable[Hashable], targets: Iterable[Hashable]) -> Fraction:
    """sup p_vw over v in sources and w in targets, v ≠ w (0 when there are no such edges)."""
    best = Fraction(0)
    target_set = set(targets)
    for v in sources:
        for w, p in d.transitions.get(v, {}).items():
            if w in target_set and w != v and p > best:
                best = p
    return best


# ****
if __name__ == "__main__":
    raise Exception("This file is not meant to run on its own.")
