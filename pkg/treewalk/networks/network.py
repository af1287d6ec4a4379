# -*- coding: utf-8 -*-

"""
Labeled networks on tree levels: orbits, Schreier graphs, level networks
and the {0,*} star projection.
"""

# **** IMPORTS ****
import logging
from collections import deque
from fractions import Fraction
from dataclasses import dataclass, field
from typing import Dict, Hashable, Iterable, List, Mapping, Optional, Sequence, Tuple

import networkx as nx

from treewalk import config
from treewalk.algebra.valency import ValencySequence
from treewalk.algebra.vertex import Vertex, level_vertices
from treewalk.algebra.automorphism import TreeAutomorphism, apply, section
from treewalk.algebra.elements import table_for
from treewalk.util import format_fraction
from treewalk.exceptions import InconsistencyError, ResourceError, ValidationError

# **** LOGGING ****
logger = logging.getLogger(__name__)

# **** CONSTANTS ****
STAR = "*"

# **** CLASSES ****
@dataclass(frozen=True, slots=True)
class NetworkEdge:
    """
    Directed edge with a weight and a (generator, section) label.

    Attributes:
        source (Hashable): Tail vertex.
        target (Hashable): Head vertex.
        weight (Fraction): Non-negative weight.
        generator (str): Name of the generator moving source to target.
        section (TreeAutomorphism | None): Section of the generator at the source (None if not computed).
    """
    source: Hashable
    target: Hashable
    weight: Fraction
    generator: str = ""
    section: Optional[TreeAutomorphism] = None

    @property
    def is_loop(self) -> bool:
        return self.source == self.target

    @property
    def section_label(self) -> str:
        if self.section is None:
            return "-"
        return str(self.section) if self.section.word else "e"


@dataclass(frozen=True)
class LabeledNetwork:
    """
    Weighted multigraph with labeled directed edges, read as an undirected
    electric network by symmetrizing weights.

    Attributes:
        vertices (Tuple[Hashable, ...]): Vertex set in a fixed order.
        edges (Tuple[NetworkEdge, ...]): Multi-edge list.
        level (int | None): Tree level the network lives on.
    """
    vertices: Tuple[Hashable, ...]
    edges: Tuple[NetworkEdge, ...]
    level: Optional[int] = None
    _index: Dict[Hashable, int] = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        index = {vertex: position for position, vertex in enumerate(self.vertices)}
        if len(index) != len(self.vertices):
            raise ValidationError("Duplicate vertices in network")
        for edge in self.edges:
            if edge.weight < 0:
                raise ValidationError(f"Negative weight on edge {edge.source} → {edge.target}")
            if edge.source not in index or edge.target not in index:
                raise ValidationError(f"Edge {edge.source} → {edge.target} leaves the vertex set")
        object.__setattr__(self, "_index", index)

    # **** CLASS METHODS ****
    @classmethod
    def from_undirected(cls, vertices: Iterable[Hashable], edges: Iterable[Tuple[Hashable, Hashable, object]]) -> "LabeledNetwork":
        """Network with both orientations of every (u, v, weight) edge (loops once)."""
        directed = []
        for u, v, weight in edges:
            weight = Fraction(weight)
            directed.append(NetworkEdge(u, v, weight))
            if u != v:
                directed.append(NetworkEdge(v, u, weight))
        return cls(tuple(vertices), tuple(directed))

    # **** PROPERTIES ****
    @property
    def size(self) -> int:
        return len(self.vertices)

    # **** METHODS ****
    def contains(self, vertex: Hashable) -> bool:
        return vertex in self._index

    def out_weights(self) -> Dict[Hashable, Fraction]:
        """Total weight leaving each vertex (loops counted once)."""
        totals: Dict[Hashable, Fraction] = {vertex: Fraction(0) for vertex in self.vertices}
        for edge in self.edges:
            totals[edge.source] += edge.weight
        return totals

    def conductances(self) -> Tuple[Dict[Tuple[Hashable, Hashable], Fraction], Dict[Hashable, Fraction]]:
        """
        Symmetrized conductances c(u, v) = (Σ w(u→v) + Σ w(v→u)) / 2 keyed by ordered pairs in vertex order,
        and the loop weight at each vertex.
        """
        conductance: Dict[Tuple[Hashable, Hashable], Fraction] = {}
        loops: Dict[Hashable, Fraction] = {}
        index = self._index
        half = Fraction(1, 2)
        for edge in self.edges:
            if edge.source == edge.target:
                loops[edge.source] = loops.get(edge.source, Fraction(0)) + edge.weight
                continue
            u, v = edge.source, edge.target
            if index[u] > index[v]:
                u, v = v, u
            conductance[(u, v)] = conductance.get((u, v), Fraction(0)) + edge.weight * half
        return conductance, loops

    def stationary_weights(self) -> Dict[Hashable, Fraction]:
        """w_x = Σ_y c(x, y) + loop(x), the unnormalized stationary measure of the network walk."""
        conductance, loops = self.conductances()
        weights = {vertex: loops.get(vertex, Fraction(0)) for vertex in self.vertices}
        for (u, v), c in conductance.items():
            weights[u] += c
            weights[v] += c
        return weights

    def total_weight(self) -> Fraction:
        """Q = ½ Σ_x w_x (a loop of weight ℓ adds ℓ to its endpoint's w_x)."""
        return sum(self.stationary_weights().values(), Fraction(0)) / 2

    def graph(self) -> nx.Graph:
        """Simple undirected graph of the positive-conductance pairs."""
        graph = nx.Graph()
        graph.add_nodes_from(self.vertices)
        conductance, _ = self.conductances()
        for (u, v), c in conductance.items():
            if c > 0:
                graph.add_edge(u, v, weight=c)
        return graph

    def without_edge(self, position: int) -> "LabeledNetwork":
        return LabeledNetwork(self.vertices, self.edges[:position] + self.edges[position + 1:], self.level)


# **** FUNCTIONS ****
def _check_budget(size: int, what: str) -> None:
    if size > config.VERTEX_BUDGET:
        raise ResourceError(f"{what} has {size} vertices, above the vertex budget {config.VERTEX_BUDGET}", size=size)


def orbit(S: Sequence[TreeAutomorphism], v: "Vertex | str") -> Tuple[Vertex, ...]:
    """
    The ⟨S⟩-orbit of v by breadth-first closure, in lexicographic order.

    Raises:
        ResourceError: If the orbit outgrows the vertex budget.
    """
    start = v if isinstance(v, Vertex) else Vertex.parse(v)
    seen = {start}
    queue = deque([start])
    while queue:
        current = queue.popleft()
        for g in S:
            image = apply(g, current)
            if image not in seen:
                seen.add(image)
                _check_budget(len(seen), f"Orbit of {start}")
                queue.append(image)
    return tuple(sorted(seen, key=lambda vertex: str(vertex)))


def level_orbits(S: Sequence[TreeAutomorphism], valency: ValencySequence, n: int) -> List[Tuple[Vertex, ...]]:
    """Partition of level n into ⟨S⟩-orbits, ordered by their least vertex."""
    _check_budget(valency.volume(n), f"Level {n}")
    remaining = set(level_vertices(valency, n))
    orbits = []
    for vertex in level_vertices(valency, n):
        if vertex in remaining:
            current = orbit(S, vertex)
            remaining.difference_update(current)
            orbits.append(current)
    return orbits


def _edges_from(
    vertex: Vertex,
    elements: Sequence[Tuple[str, TreeAutomorphism, Fraction]],
    with_sections: bool,
) -> List[NetworkEdge]:
    edges = []
    for name, g, weight in elements:
        target = apply(g, vertex)
        label = None
        if with_sections:
            label = table_for(g.valency.shift(vertex.level)).key(section(g, vertex))
        edges.append(NetworkEdge(vertex, target, weight, name, label))
    return edges


def schreier_graph(mu, O: Sequence[Vertex], with_sections: bool = True) -> LabeledNetwork:
    """
    Schreier graph of the support of μ acting on the orbit O, weighted by μ.

    Args:
        mu (FiniteMeasure): Probability measure over canonical elements.
        O (Sequence[Vertex]): Vertex set, closed under the support of μ.

    Raises:
        InconsistencyError: If an element of the support moves a vertex out of O.
    """
    vertices = tuple(O)
    members = set(vertices)
    elements = [(str(g), g, weight) for g, weight in mu.items()]
    edges: List[NetworkEdge] = []
    for vertex in vertices:
        for edge in _edges_from(vertex, elements, with_sections):
            if edge.target not in members:
                raise InconsistencyError(
                    f"{edge.generator} moves {vertex} to {edge.target}, outside the given vertex set",
                    vertex=str(vertex),
                )
            edges.append(edge)
    level = vertices[0].level if vertices else None
    return LabeledNetwork(vertices, tuple(edges), level)


def level_network(
    S: Sequence[TreeAutomorphism],
    n: int,
    weights: Optional[Mapping[TreeAutomorphism, Fraction]] = None,
    with_sections: bool = True,
    valency: Optional[ValencySequence] = None,
) -> LabeledNetwork:
    """
    Network Γ_n on the whole level n: one edge v → v·s per vertex and generator.

    Args:
        S (Sequence[TreeAutomorphism]): Generators (their names label the edges).
        n (int): Level.
        weights (Mapping | None): Weight per generator; unit weights when omitted.
        with_sections (bool): Whether to compute section labels.
    """
    valency = valency or S[0].valency
    _check_budget(valency.volume(n), f"Level {n}")
    one = Fraction(1)
    elements = [(str(g), g, Fraction(weights[g]) if weights is not None else one) for g in S]
    vertices = tuple(level_vertices(valency, n))
    edges: List[NetworkEdge] = []
    for vertex in vertices:
        edges.extend(_edges_from(vertex, elements, with_sections))
    logger.debug(f"Level {n} network: {len(vertices)} vertices, {len(edges)} edges")
    return LabeledNetwork(vertices, tuple(edges), n)


def star_class(vertex: Vertex) -> str:
    """Textual {0,*} word of a vertex (non-zero letters become '*')."""
    return "".join("0" if letter == 0 else STAR for letter in reversed(vertex.letters))


def star_projection(net: LabeledNetwork) -> LabeledNetwork:
    """Quotient by replacing every non-zero letter with '*'; parallel edges and loops are kept."""
    classes = sorted({star_class(vertex) for vertex in net.vertices})
    edges = tuple(
        NetworkEdge(star_class(edge.source), star_class(edge.target), edge.weight, edge.generator, edge.section)
        for edge in net.edges
    )
    return LabeledNetwork(tuple(classes), edges, net.level)


def path_order(net: LabeledNetwork) -> Optional[List[Hashable]]:
    """
    Vertices of the network in path order when, after discarding loops, it is a path.

    Returns:
        List | None: The path from one end to the other, or None if the graph is not a path.
    """
    graph = net.graph()
    if graph.number_of_nodes() == 1:
        return list(graph.nodes)
    if not nx.is_connected(graph) or not nx.is_tree(graph):
        return None
    if max(degree for _, degree in graph.degree) > 2:
        return None
    ends = sorted((node for node, degree in graph.degree if degree == 1), key=str)
    return nx.shortest_path(graph, ends[0], ends[1])


def is_path_with_loops(net: LabeledNetwork) -> bool:
    return path_order(net) is not None


def export_edge_list(net: LabeledNetwork) -> str:
    """`src dst weight gen section`, one edge per line."""
    lines = []
    for edge in net.edges:
        lines.append(f"{edge.source} {edge.target} {format_fraction(edge.weight)} {edge.generator or '-'} {edge.section_label}")
    return "\n".join(lines) + ("\n" if lines else "")


# ****
if __name__ == "__main__":
    raise Exception("This file is not meant to run on its own.")
