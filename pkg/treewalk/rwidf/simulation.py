# -*- coding: utf-8 -*-

"""
Seeded simulation of diagram walks and Monte-Carlo traces.
"""

# **** IMPORTS ****
import logging
from fractions import Fraction
from collections import Counter
from dataclasses import dataclass
from typing import Dict, Hashable, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from treewalk import config
from treewalk.algebra.vertex import Vertex, as_vertex
from treewalk.algebra.automorphism import TreeAutomorphism, apply
from treewalk.algebra.elements import table_for
from treewalk.networks.network import orbit
from treewalk.rwidf.diagram import Diagram, Edge, build_ascension
from treewalk.rwidf.measure import FiniteMeasure
from treewalk.exceptions import PreconditionError, ValidationError

# **** LOGGING ****
logger = logging.getLogger(__name__)

# **** CLASSES ****
class SeededRNG:
    """
    Named, reproducible random stream on numpy's default generator.

    Attributes:
        seed (int): Root seed, recorded in every report.
        name (str): Stream label.
    """

    def __init__(self, seed: Optional[int] = None, name: str = "main", spawn_key: Tuple[int, ...] = ()):
        self.seed = config.DEFAULT_SEED if seed is None else int(seed)
        self.name = name
        self._sequence = np.random.SeedSequence(self.seed, spawn_key=spawn_key)
        self.generator = np.random.default_rng(self._sequence)

    def __repr__(self) -> str:
        return f"SeededRNG(seed={self.seed}, name={self.name!r})"

    def fork(self, index: int, name: Optional[str] = None) -> "SeededRNG":
        """Independent child stream, deterministic in (seed, index)."""
        return SeededRNG(self.seed, name or f"{self.name}/{index}", self._sequence.spawn_key + (index,))

    def choice(self, cumulative: np.ndarray) -> int:
        return int(np.searchsorted(cumulative, self.generator.random(), side="right"))


@dataclass(frozen=True)
class Trajectory:
    """
    Attributes:
        states (Tuple[Hashable, ...]): y_0, …, y_k.
        elements (Tuple[TreeAutomorphism, ...] | None): g_0, …, g_k as canonical keys (None when not tracked).
        visit_times (Tuple[int, ...]): Times t with y_t in the watched set.
        traverses (int): Steps moving from the first collapsed set into the second.
        seed (int): Seed of the stream that produced the trajectory.
    """
    states: Tuple[Hashable, ...]
    elements: Optional[Tuple[TreeAutomorphism, ...]]
    visit_times: Tuple[int, ...]
    traverses: int
    seed: int

    @property
    def steps(self) -> int:
        return len(self.states) - 1

    def visit_frequencies(self) -> Dict[Hashable, float]:
        counts = Counter(self.states)
        total = len(self.states)
        return {state: count / total for state, count in counts.items()}

    def traverse_rate(self) -> float:
        """Empirical E[ℓ]/k."""
        return self.traverses / self.steps if self.steps else 0.0


@dataclass(frozen=True)
class TraceEstimate:
    """
    Empirical trace of a diagram on a watched set.

    Attributes:
        transitions (Dict[Hashable, Dict[Hashable, Fraction]]): Empirical p̄_vw.
        measures (Dict[Edge, FiniteMeasure]): Empirical μ̄_vw.
        excursions (int): Number of recorded excursions.
        seed (int): Seed of the simulation.
    """
    watched: Tuple[Hashable, ...]
    transitions: Dict[Hashable, Dict[Hashable, Fraction]]
    measures: Dict[Edge, FiniteMeasure]
    excursions: int
    seed: int

    def as_diagram(self, valency) -> Diagram:
        return Diagram(self.watched, self.transitions, self.measures, valency)


@dataclass(frozen=True)
class AscensionEstimate:
    """
    Monte-Carlo view of the single-vertex trace T_w(μ).

    Attributes:
        vertex (Vertex): The watched vertex w.
        samples (int): Number of returns to w recorded.
        measure (FiniteMeasure): Empirical law of the increment between returns.
        support_lower_bound (int): Distinct increments seen, a lower bound on |supp T_w(μ)|.
        seed (int): Seed of the simulation.
    """
    vertex: Vertex
    samples: int
    measure: FiniteMeasure
    support_lower_bound: int
    seed: int


@dataclass(frozen=True)
class TraverseStatistics:
    """
    Direct 𝔸 → 𝔹 steps of a simulated level walk next to their stationary rate.

    Attributes:
        steps (int): k.
        traverses (int): ℓ, steps from a vertex of 𝔸 to a vertex of 𝔹.
        edge_flow (Fraction): Σ ν(a)·p(a, b) over a ∈ 𝔸, b ∈ 𝔹, the stationary value of E[ℓ]/k.
        seed (int): Seed of the simulation.
    """
    steps: int
    traverses: int
    edge_flow: Fraction
    seed: int

    @property
    def rate(self) -> float:
        """Empirical E[ℓ]/k."""
        return self.traverses / self.steps if self.steps else 0.0


class _Sampler:
    """Cumulative tables for drawing next states and edge labels."""

    def __init__(self, d: Diagram):
        self.next_states: Dict[Hashable, List[Hashable]] = {}
        self.next_cumulative: Dict[Hashable, np.ndarray] = {}
        self.labels: Dict[Edge, List[TreeAutomorphism]] = {}
        self.label_cumulative: Dict[Edge, np.ndarray] = {}
        for x in d.states:
            targets = d._ordered(d.transitions[x])
            self.next_states[x] = targets
            self.next_cumulative[x] = np.cumsum([float(d.transitions[x][y]) for y in targets])
            for y in targets:
                measure = d.measures[(x, y)]
                self.labels[(x, y)] = list(measure.support)
                self.label_cumulative[(x, y)] = np.cumsum(measure.as_floats())

    def step(self, x: Hashable, rng: SeededRNG) -> Tuple[Hashable, TreeAutomorphism]:
        targets = self.next_states[x]
        y = targets[min(rng.choice(self.next_cumulative[x]), len(targets) - 1)]
        labels = self.labels[(x, y)]
        label = labels[min(rng.choice(self.label_cumulative[(x, y)]), len(labels) - 1)]
        return y, label


# **** FUNCTIONS ****
def simulate(
    d: Diagram,
    start: Tuple[Optional[TreeAutomorphism], Hashable],
    k: int,
    seed: Optional[int] = None,
    watched: Optional[Iterable[Hashable]] = None,
    traverse_sets: Optional[Tuple[Iterable[Hashable], Iterable[Hashable]]] = None,
    track_elements: bool = True,
) -> Trajectory:
    """
    Runs k steps of the walk on G × Y from (g₀, y₀).

    Args:
        start: (g₀, y₀); g₀ = None starts at the identity.
        watched: States whose visit times are recorded.
        traverse_sets: (𝔸, 𝔹); steps from 𝔸 into 𝔹 are counted as traverses.
        track_elements (bool): Whether to multiply out g_k (state-only runs are much faster).

    Raises:
        PreconditionError: If the start state is not in the diagram or k is negative.
    """
    g0, y0 = start
    if y0 not in set(d.states):
        raise PreconditionError(f"Start state {y0} is not in the diagram")
    if k < 0:
        raise PreconditionError(f"Number of steps must be non-negative, got {k}")
    rng = SeededRNG(seed, name="simulate")
    sampler = _Sampler(d)
    table = table_for(d.valency)
    watched_set = set(watched) if watched is not None else set()
    source_set, target_set = (set(traverse_sets[0]), set(traverse_sets[1])) if traverse_sets else (set(), set())

    g = table.identity if g0 is None else table.key(g0)
    states = [y0]
    elements = [g] if track_elements else None
    visits = [0] if y0 in watched_set else []
    traverses = 0
    y = y0
    for t in range(1, k + 1):
        following, label = sampler.step(y, rng)
        if y in source_set and following in target_set:
            traverses += 1
        y = following
        states.append(y)
        if track_elements:
            if label.word:
                g = table.product(g, label)
            elements.append(g)
        if y in watched_set:
            visits.append(t)
    logger.debug(f"Simulated {k} steps from {y0} (seed {rng.seed}), {len(visits)} watched visits")
    return Trajectory(tuple(states), tuple(elements) if elements is not None else None, tuple(visits), traverses, rng.seed)


def _empirical(counts: Counter, valency) -> FiniteMeasure:
    total = sum(counts.values())
    return FiniteMeasure.from_weights({g: Fraction(c, total) for g, c in counts.items()}, valency)


def monte_carlo_trace(
    d: Diagram,
    W: Iterable[Hashable],
    excursions: int,
    seed: Optional[int] = None,
    max_steps: Optional[int] = None,
) -> TraceEstimate:
    """
    Estimates the trace on W from simulated excursions, for diagrams where the exact trace is refused.

    Each watched state is used as a starting point in turn; an excursion ends at the next visit to W and
    contributes its total increment to the empirical edge measure.

    Raises:
        PreconditionError: If W is empty or an excursion does not return within max_steps.
    """
    watched = tuple(state for state in d.states if state in set(W))
    if not watched:
        raise PreconditionError("The trace needs a nonempty watched set inside the diagram")
    if excursions < 1:
        raise ValidationError(f"Need at least one excursion, got {excursions}")
    limit = max_steps if max_steps is not None else 1000 * len(d)
    watched_set = set(watched)
    rng = SeededRNG(seed, name="trace")
    sampler = _Sampler(d)
    table = table_for(d.valency)
    transition_counts: Dict[Hashable, Counter] = {v: Counter() for v in watched}
    label_counts: Dict[Edge, Counter] = {}
    for index in range(excursions):
        v = watched[index % len(watched)]
        g = table.identity
        y = v
        for _ in range(limit):
            y, label = sampler.step(y, rng)
            if label.word:
                g = table.product(g, label)
            if y in watched_set:
                break
        else:
            raise PreconditionError(f"An excursion from {v} did not return to the watched set in {limit} steps")
        transition_counts[v][y] += 1
        label_counts.setdefault((v, y), Counter())[g] += 1

    transitions = {}
    for v, counts in transition_counts.items():
        total = sum(counts.values())
        transitions[v] = {w: Fraction(c, total) for w, c in counts.items()} if total else {}
    measures = {edge: _empirical(counts, d.valency) for edge, counts in label_counts.items()}
    return TraceEstimate(watched, transitions, measures, excursions, rng.seed)


def ascension_operator(
    mu: FiniteMeasure,
    w: "Vertex | str",
    samples: int,
    seed: Optional[int] = None,
    max_steps: Optional[int] = None,
) -> AscensionEstimate:
    """
    Monte-Carlo estimate of T_w(μ), the law of the section increment between successive returns to w.

    The exact single-vertex trace is infinitely supported in general, so only the empirical measure and the
    number of distinct increments are reported.
    """
    vertex = as_vertex(w)
    O = orbit(list(mu.support), vertex)
    d = build_ascension(mu, O)
    estimate = monte_carlo_trace(d, [vertex], samples, seed=seed, max_steps=max_steps)
    measure = estimate.measures[(vertex, vertex)]
    logger.debug(f"T_{vertex}(μ): {len(measure)} distinct increments in {samples} returns")
    return AscensionEstimate(vertex, samples, measure, len(measure), estimate.seed)


def projected_diagram(mu: FiniteMeasure, O: Sequence[Vertex]) -> Diagram:
    """
    The walk of μ on the orbit O with every edge labelled δ_e.

    Used where only the states matter, since no sections are computed.

    Raises:
        PreconditionError: If O is empty or some element moves a vertex out of O.
    """
    states = tuple(O)
    if not states:
        raise PreconditionError("The projected walk needs a nonempty orbit")
    members = set(states)
    valency = mu.valency.shift(states[0].level)
    identity = FiniteMeasure.delta(valency)
    transitions: Dict[Hashable, Dict[Hashable, Fraction]] = {}
    measures: Dict[Edge, FiniteMeasure] = {}
    for v in states:
        row: Dict[Hashable, Fraction] = {}
        for g, weight in mu.items():
            w = apply(g, v)
            if w not in members:
                raise PreconditionError(f"{g} moves {v} to {w}, outside the orbit", vertex=str(v))
            row[w] = row.get(w, Fraction(0)) + weight
            measures[(v, w)] = identity
        transitions[v] = row
    return Diagram(states, transitions, measures, valency)


def traverse_statistics(
    mu: FiniteMeasure,
    A: Sequence[Vertex],
    B: Sequence[Vertex],
    steps: int,
    seed: Optional[int] = None,
) -> TraverseStatistics:
    """
    Counts ℓ along a k-step level walk started in 𝔸.

    Every element of the support permutes the level, so the walk is doubly
    stochastic and its stationary law on the orbit is uniform.

    Raises:
        PreconditionError: If 𝔸 is empty or 𝔹 misses the orbit of 𝔸.
    """
    if not A:
        raise PreconditionError("Traverse statistics need a nonempty first set")
    O = orbit(list(mu.support), A[0])
    members = set(O)
    sources = [a for a in A if a in members]
    targets = [b for b in B if b in members]
    if not targets:
        raise PreconditionError(f"No vertex of the second set lies in the orbit of {A[0]}")
    d = projected_diagram(mu, O)
    flow = sum((d.p(a, b) for a in sources for b in targets), Fraction(0)) / len(O)
    trajectory = simulate(d, (None, sources[0]), steps, seed=seed, traverse_sets=(sources, targets), track_elements=False)
    logger.debug(f"{trajectory.traverses} traverses in {steps} steps on {len(O)} vertices, stationary rate {float(flow):.6g}")
    return TraverseStatistics(steps, trajectory.traverses, flow, trajectory.seed)


def total_variation(p: Dict[Hashable, object], q: Dict[Hashable, object]) -> float:
    """½ Σ |p(x) − q(x)| over the union of the supports."""
    keys = set(p) | set(q)
    return 0.5 * sum(abs(float(p.get(key, 0)) - float(q.get(key, 0))) for key in keys)


def empirical_law(values: Sequence[Hashable]) -> Dict[Hashable, float]:
    counts = Counter(values)
    total = len(values)
    return {value: count / total for value, count in counts.items()}


def support_lower_bound(mu: FiniteMeasure, k: int, samples: int, seed: Optional[int] = None) -> int:
    """Distinct values of g_k among independent samples: a lower bound on |supp μ^{*k}|."""
    rng = SeededRNG(seed, name=f"support/{k}")
    table = table_for(mu.valency)
    keys = list(mu.support)
    cumulative = np.cumsum(mu.as_floats())
    seen = set()
    for _ in range(samples):
        g = table.identity
        for _ in range(k):
            label = keys[min(rng.choice(cumulative), len(keys) - 1)]
            if label.word:
                g = table.product(g, label)
        seen.add(g)
    return len(seen)


# ****
if __name__ == "__main__":
    raise Exception("This file is not meant to run on its own.")
