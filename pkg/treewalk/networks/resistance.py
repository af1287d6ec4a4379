# -*- coding: utf-8 -*-

"""
Effective resistance between vertex sets and the escape-probability identity.

Sets are collapsed to single super-vertices before solving; self-loops
(including those created by the collapse) never enter the Laplacian.
"""

# **** IMPORTS ****
import math
import logging
from fractions import Fraction
from dataclasses import dataclass
from typing import Dict, FrozenSet, Hashable, Iterable, Optional, Tuple, Union

import numpy as np
import networkx as nx
from scipy import sparse
from scipy.sparse import linalg as sparse_linalg

from treewalk import config
from treewalk.networks.network import LabeledNetwork
from treewalk.networks.linear import solve_exact, solve_float
from treewalk.exceptions import PreconditionError

# **** LOGGING ****
logger = logging.getLogger(__name__)

# **** TYPES ****
Number = Union[Fraction, float]

# **** CONSTANTS ****
COLLAPSED_A = ("collapsed", "A")
COLLAPSED_B = ("collapsed", "B")

# **** CLASSES ****
@dataclass(frozen=True)
class ResistanceResult:
    """
    Attributes:
        value (Fraction | float): Effective resistance; math.inf when the sets are disconnected.
        method (str): "exact", "iterative" or "direct".
        residual (float | None): Relative residual of a floating-point solve.
        A (FrozenSet): First collapsed set.
        B (FrozenSet): Second collapsed set.
    """
    value: Number
    method: str
    residual: Optional[float]
    A: FrozenSet[Hashable]
    B: FrozenSet[Hashable]

    @property
    def infinite(self) -> bool:
        return isinstance(self.value, float) and math.isinf(self.value)

    @property
    def is_exact(self) -> bool:
        return self.method == "exact"

    def __float__(self) -> float:
        return float(self.value)


@dataclass(frozen=True)
class EscapeResult:
    """
    P(X₀ ∈ A, T_B < T_A) for the stationary network walk, computed twice.

    Attributes:
        hitting (Fraction | float): Absorbing-chain solve weighted by the stationary measure.
        formula (Fraction | float): 1 / (2·Q·Res(A, B)).
        discrepancy (float): |hitting − formula|.
        exact (bool): Whether both sides are exact rationals.
        resistance (ResistanceResult): The resistance used by the formula.
        total_weight (Fraction): Q.
    """
    hitting: Number
    formula: Number
    discrepancy: float
    exact: bool
    resistance: ResistanceResult
    total_weight: Fraction


# **** FUNCTIONS ****
def _as_set(values: Iterable[Hashable]) -> FrozenSet[Hashable]:
    return frozenset(values)


def _check_sets(net: LabeledNetwork, A: FrozenSet, B: FrozenSet) -> None:
    if not A or not B:
        raise PreconditionError("Both vertex sets must be non-empty")
    if A & B:
        raise PreconditionError(f"Vertex sets overlap in {len(A & B)} vertices")
    for vertex in A | B:
        if not net.contains(vertex):
            raise PreconditionError(f"Vertex {vertex} is not in the network")


def collapsed_conductances(net: LabeledNetwork, A: FrozenSet, B: FrozenSet) -> Dict[Tuple[Hashable, Hashable], Fraction]:
    """Conductances after merging A and B into two super-vertices (loops dropped)."""
    def image(vertex):
        if vertex in A:
            return COLLAPSED_A
        if vertex in B:
            return COLLAPSED_B
        return vertex

    conductance, _ = net.conductances()
    merged: Dict[Tuple[Hashable, Hashable], Fraction] = {}
    for (u, v), c in conductance.items():
        u, v = image(u), image(v)
        if u == v or c == 0:
            continue
        key = (u, v) if repr(u) <= repr(v) else (v, u)
        merged[key] = merged.get(key, Fraction(0)) + c
    return merged


def effective_resistance(
    net: LabeledNetwork,
    A: Iterable[Hashable],
    B: Iterable[Hashable],
    exact: Optional[bool] = None,
) -> ResistanceResult:
    """
    Resistance between the collapsed sets A and B.

    Args:
        exact (bool | None): Force rational or floating-point solving; by default rational
            up to the configured exact vertex limit.

    Raises:
        PreconditionError: If A, B are empty, overlap or leave the network.
    """
    A, B = _as_set(A), _as_set(B)
    _check_sets(net, A, B)
    merged = collapsed_conductances(net, A, B)

    graph = nx.Graph()
    graph.add_nodes_from([COLLAPSED_A, COLLAPSED_B])
    graph.add_edges_from(merged)
    component = nx.node_connected_component(graph, COLLAPSED_A)
    if COLLAPSED_B not in component:
        return ResistanceResult(math.inf, "exact", None, A, B)

    nodes = sorted(component, key=repr)
    index = {node: position for position, node in enumerate(nodes)}
    ground = index[COLLAPSED_B]
    laplacian: Dict[int, Dict[int, Fraction]] = {i: {} for i in range(len(nodes)) if i != ground}
    for (u, v), c in merged.items():
        if u not in index:
            continue
        i, j = index[u], index[v]
        for a, b in ((i, j), (j, i)):
            if a == ground:
                continue
            row = laplacian[a]
            row[a] = row.get(a, Fraction(0)) + c
            if b != ground:
                row[b] = row.get(b, Fraction(0)) - c
    source = index[COLLAPSED_A]

    use_exact = exact if exact is not None else len(nodes) <= config.EXACT_VERTEX_LIMIT
    if use_exact:
        solution = solve_exact(laplacian, {source: {"current": Fraction(1)}})
        value = solution[source].get("current", Fraction(0))
        return ResistanceResult(value, "exact", None, A, B)

    potentials, residual, method = solve_float(laplacian, {source: 1.0})
    return ResistanceResult(potentials[source], method, residual, A, B)


def hitting_escape(net: LabeledNetwork, A: FrozenSet, B: FrozenSet, exact: bool = True) -> Number:
    """
    Σ_{a∈A} π(a) Σ_y p(a, y)·h(y) with h the probability of reaching B before A.
    """
    conductance, loops = net.conductances()
    weights = net.stationary_weights()
    total = sum(weights.values(), Fraction(0))
    neighbours: Dict[Hashable, Dict[Hashable, Fraction]] = {vertex: {} for vertex in net.vertices}
    for (u, v), c in conductance.items():
        neighbours[u][v] = neighbours[u].get(v, Fraction(0)) + c
        neighbours[v][u] = neighbours[v].get(u, Fraction(0)) + c

    graph = net.graph()
    reaches_b = set()
    for component in nx.connected_components(graph):
        if component & B:
            reaches_b |= component
    unknown = [vertex for vertex in net.vertices if vertex in reaches_b and vertex not in A and vertex not in B]
    index = {vertex: position for position, vertex in enumerate(unknown)}

    matrix: Dict[int, Dict[int, Fraction]] = {}
    rhs: Dict[int, Dict[str, Fraction]] = {}
    for vertex in unknown:
        i = index[vertex]
        w = weights[vertex]
        row = {i: Fraction(1) - loops.get(vertex, Fraction(0)) / w}
        to_b = Fraction(0)
        for other, c in neighbours[vertex].items():
            if other in B:
                to_b += c / w
            elif other in index:
                row[index[other]] = row.get(index[other], Fraction(0)) - c / w
        matrix[i] = row
        if to_b:
            rhs[i] = {"h": to_b}

    if exact:
        solution = solve_exact(matrix, rhs) if matrix else {}
        h = {vertex: solution[index[vertex]].get("h", Fraction(0)) for vertex in unknown}
        zero, one = Fraction(0), Fraction(1)
    else:
        h = _float_hitting(matrix, rhs, unknown, index)
        zero, one = 0.0, 1.0

    escape = zero
    for a in A:
        for other, c in neighbours[a].items():
            if other in B:
                value = one
            elif other in A:
                value = zero
            else:
                value = h.get(other, zero)
            escape += (c / total) * value if exact else float(c / total) * value
    return escape


def _float_hitting(matrix, rhs, unknown, index) -> Dict[Hashable, float]:
    size = len(unknown)
    if size == 0:
        return {}
    rows, cols, data = [], [], []
    for i, row in matrix.items():
        for j, v in row.items():
            rows.append(i)
            cols.append(j)
            data.append(float(v))
    system = sparse.csc_matrix((data, (rows, cols)), shape=(size, size))
    b = np.zeros(size)
    for i, values in rhs.items():
        b[i] = float(values["h"])
    x = sparse_linalg.spsolve(system, b)
    x = np.atleast_1d(x)
    return {vertex: float(x[index[vertex]]) for vertex in unknown}


def escape_probability(
    net: LabeledNetwork,
    A: Iterable[Hashable],
    B: Iterable[Hashable],
    exact: Optional[bool] = None,
) -> EscapeResult:
    """
    P(X₀ ∈ A, T_B < T_A) for the stationary walk, by an absorbing-chain solve and by 1/(2Q·Res(A,B)).

    Raises:
        PreconditionError: If A, B are empty, overlap or leave the network.
    """
    A, B = _as_set(A), _as_set(B)
    _check_sets(net, A, B)
    use_exact = exact if exact is not None else net.size <= config.EXACT_VERTEX_LIMIT
    resistance = effective_resistance(net, A, B, exact=use_exact)
    total_weight = net.total_weight()
    hitting = hitting_escape(net, A, B, exact=use_exact)

    if resistance.infinite or resistance.value == 0:
        formula: Number = Fraction(0) if use_exact else 0.0
    elif use_exact:
        formula = 1 / (2 * total_weight * resistance.value)
    else:
        formula = 1.0 / (2.0 * float(total_weight) * float(resistance.value))
    discrepancy = abs(float(hitting) - float(formula)) if not use_exact else float(abs(hitting - formula))
    return EscapeResult(hitting, formula, discrepancy, use_exact, resistance, total_weight)


# ****
if __name__ == "__main__":
    raise Exception("This file is not meant to run on its own.")
