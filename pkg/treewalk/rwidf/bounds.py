# -*- coding: utf-8 -*-

"""
Entropy of convolution powers and the bounds that control it.

All entropies are in nats; reports carry a bits column next to them.
"""

# **** IMPORTS ****
import math
import logging
from collections import deque
from fractions import Fraction
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from treewalk import config
from treewalk.algebra.vertex import Vertex, level_vertices
from treewalk.algebra.automorphism import TreeAutomorphism, apply, section
from treewalk.algebra.elements import table_for
from treewalk.directed.sections import SectionClassification, SectionTracker, classify_element
from treewalk.networks.network import orbit
from treewalk.networks.profile import ResistanceProfile, resistance_profile
from treewalk.rwidf.diagram import Diagram, build_ascension, edge_supremum, trace
from treewalk.rwidf.measure import FiniteMeasure, distribution_entropy
from treewalk.rwidf.simulation import support_lower_bound
from treewalk.util import format_float, format_fraction
from treewalk.exceptions import (
    InvariantViolationError,
    PreconditionError,
    ResourceError,
    TracePreconditionError,
)

# **** LOGGING ****
logger = logging.getLogger(__name__)

# **** CONSTANTS ****
ENTROPY_SLACK = 1e-12

ENTROPY_COLUMNS = (
    "k", "H_exact", "H_bits", "supp", "supp_lower_bound", "n_k", "V_n", "R_n", "bound", "alpha",
)
EDGE_COLUMNS = ("n", "sup_p", "sup_p_float", "reference")

# **** CLASSES ****
@dataclass(frozen=True)
class AscensionRow:
    """
    Attributes:
        k (int): Number of steps.
        entropy (float): H(g_k).
        section_entropy (float): Σ_v H(g_k|_v, v·g_k) over the level.
    """
    k: int
    entropy: float
    section_entropy: float

    @property
    def holds(self) -> bool:
        return self.entropy <= self.section_entropy + ENTROPY_SLACK


@dataclass(frozen=True)
class AscensionReport:
    level: int
    rows: Tuple[AscensionRow, ...]

    @property
    def holds(self) -> bool:
        return all(row.holds for row in self.rows)


@dataclass(frozen=True)
class EntropyRow:
    """
    Attributes:
        k (int): Number of steps.
        entropy (float | None): H(μ^{*k}) when computed exactly within budget.
        support (int | None): |supp μ^{*k}| when computed exactly.
        support_lower_bound (int | None): Distinct sampled values, beyond the exact budget.
        level (int | None): n(k), the least profiled level with k ≤ V_n·R_n.
        volume (int | None): V_{n(k)}.
        resistance (float | None): R_{n(k)}.
        bound (float | None): V_{n(k)} + k/R_{n(k)}.
        alpha (float): log m_*/log(m_*²/(m_*−1)).
    """
    k: int
    entropy: Optional[float]
    support: Optional[int]
    support_lower_bound: Optional[int]
    level: Optional[int]
    volume: Optional[int]
    resistance: Optional[float]
    bound: Optional[float]
    alpha: float

    def csv_fields(self) -> Tuple[str, ...]:
        def text(value):
            return "" if value is None else str(value)

        return (
            str(self.k),
            format_float(self.entropy),
            format_float(self.entropy / math.log(2)) if self.entropy is not None else "",
            text(self.support),
            text(self.support_lower_bound),
            text(self.level),
            text(self.volume),
            format_float(self.resistance),
            format_float(self.bound),
            format_float(self.alpha),
        )


@dataclass(frozen=True)
class EdgeStatistic:
    """
    sup p̄_vw over v ∈ 𝔸_n, w ∈ 𝔹_n in the traced ascension diagram, next to ((m_*−1)/m_*)ⁿ.

    Attributes:
        level (int): n.
        supremum (Fraction): The supremum (over distinct watched vertices when 𝔹_n is empty).
        reference (float): ((m_*−1)/m_*)ⁿ.
    """
    level: int
    supremum: Fraction
    reference: float


@dataclass(frozen=True)
class EntropyReport:
    """
    Attributes:
        name (str): Group name.
        alpha (float): Reference exponent.
        rows (Tuple[EntropyRow, ...]): One row per k.
        constant (float | None): Empirical C fitted at the smallest k with both H and the bound available.
        slope (float | None): Slope of log bound against log k over the largest decade of k.
        edges (Tuple[EdgeStatistic, ...]): Edge probability statistic per level.
        seed (int): Seed used for sampled support bounds.
        samples (int): Samples per sampled support bound.
    """
    name: str
    alpha: float
    rows: Tuple[EntropyRow, ...]
    constant: Optional[float]
    slope: Optional[float]
    edges: Tuple[EdgeStatistic, ...]
    seed: int
    samples: int
    profile: Optional[ResistanceProfile] = field(default=None, repr=False)

    def row(self, k: int) -> EntropyRow:
        for row in self.rows:
            if row.k == k:
                return row
        raise KeyError(k)

    def to_csv(self) -> str:
        lines = [",".join(ENTROPY_COLUMNS)]
        lines.extend(",".join(row.csv_fields()) for row in self.rows)
        return "\n".join(lines) + "\n"

    def edges_to_csv(self) -> str:
        lines = [",".join(EDGE_COLUMNS)]
        for edge in self.edges:
            lines.append(",".join((
                str(edge.level), format_fraction(edge.supremum), format_float(edge.supremum), format_float(edge.reference)
            )))
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class LengthBoundRow:
    k: int
    entropy: float
    mean_length: Fraction
    constant: float

    @property
    def holds(self) -> bool:
        return self.entropy <= self.constant * float(self.mean_length) + ENTROPY_SLACK


# **** FUNCTIONS ****
def alpha(m_star: int) -> float:
    """log m_* / log(m_*²/(m_*−1))."""
    if m_star < 2:
        raise PreconditionError(f"The exponent needs m_* ≥ 2, got {m_star}")
    return math.log(m_star) / math.log(m_star ** 2 / (m_star - 1))


def section_entropy(nu: FiniteMeasure, n: int) -> float:
    """Σ_v H(g|_v, v·g) over the level-n vertices, for g ~ ν."""
    shifted = table_for(nu.valency.shift(n))
    total = 0.0
    for v in level_vertices(nu.valency, n):
        joint = nu.pushforward(lambda g, v=v: (shifted.key(section(g, v)), apply(g, v)))
        total += distribution_entropy(joint.values())
    return total


def ascension_inequality_check(mu: FiniteMeasure, n: int, k: int, budget: Optional[int] = None) -> AscensionReport:
    """
    Checks H(g_j) ≤ Σ_v H(g_j|_v, v·g_j) over level n for j = 0..k, exactly.

    Raises:
        InvariantViolationError: If the inequality fails at some j.
        ResourceError: If a power outgrows the support budget.
    """
    rows = []
    for j, nu in enumerate(mu.powers(k, budget)):
        row = AscensionRow(j, nu.entropy(), section_entropy(nu, n))
        if not row.holds:
            raise InvariantViolationError(
                f"H(g_{j}) = {row.entropy} exceeds the level-{n} section entropy {row.section_entropy}", k=j, level=n
            )
        rows.append(row)
    return AscensionReport(n, tuple(rows))


def watched_sets(group, n: int, tracker: Optional[SectionTracker] = None):
    """(𝔸_n, 𝔹_n, 𝕎_n) of a group configuration."""
    tracker = tracker or SectionTracker(group.generators, group.groups)
    return tracker.vertex_sets(n)


def traced_level_diagram(
    mu: FiniteMeasure, n: int, group, tracker: Optional[SectionTracker] = None
) -> Tuple[Diagram, Diagram, Tuple[Vertex, ...], Tuple[Vertex, ...]]:
    """
    Ascension diagram on the orbit of 0ⁿ and its exact trace on the watched vertices of that orbit.

    Returns:
        (ascension, traced, 𝔸_n, 𝔹_n) restricted to the orbit.
    """
    O = orbit(list(mu.support), Vertex.root(n))
    d = build_ascension(mu, O)
    A, B, W = watched_sets(group, n, tracker)
    members = set(O)
    A = tuple(v for v in A if v in members)
    B = tuple(v for v in B if v in members)
    W = tuple(v for v in W if v in members) or (Vertex.root(n),)
    return d, trace(d, W), A, B


def edge_statistic(mu: FiniteMeasure, n: int, group, tracker: Optional[SectionTracker] = None) -> EdgeStatistic:
    _, traced, A, B = traced_level_diagram(mu, n, group, tracker)
    if A and B:
        supremum = edge_supremum(traced, A, B)
    else:
        supremum = edge_supremum(traced, traced.states, traced.states)
    m_star = group.valency.m_star
    return EdgeStatistic(n, supremum, ((m_star - 1) / m_star) ** n)


def bound_slope(rows: Sequence[EntropyRow]) -> Optional[float]:
    """Least-squares slope of log bound against log k over the largest decade of k."""
    fitted = [(row.k, row.bound) for row in rows if row.k >= 1 and row.bound]
    if not fitted:
        return None
    top = max(k for k, _ in fitted)
    fitted = [(k, bound) for k, bound in fitted if k * 10 >= top]
    if len(fitted) < 2:
        return None
    x = np.log([k for k, _ in fitted])
    y = np.log([bound for _, bound in fitted])
    return float(np.polyfit(x, y, 1)[0])


def _level_for(k: int, profile: ResistanceProfile, warned: set):
    for row in profile.rows:
        if row.infinite:
            if row.level not in warned:
                logger.warning(f"Skipping level {row.level}: infinite resistance")
                warned.add(row.level)
            continue
        if k <= row.volume * float(row.resistance):
            return row
    return None


def entropy_bound(
    mu: FiniteMeasure,
    k_range: Iterable[int],
    group,
    levels: Iterable[int],
    edge_levels: Optional[Iterable[int]] = None,
    budget: Optional[int] = None,
    samples: int = 0,
    seed: Optional[int] = None,
    profile: Optional[ResistanceProfile] = None,
    exact_k: Optional[int] = None,
) -> EntropyReport:
    """
    Exact entropies H(μ^{*k}) next to the bound curve V_{n(k)} + k/R_{n(k)}.

    Args:
        mu (FiniteMeasure): Step measure.
        k_range (Iterable[int]): Values of k to report.
        group (GroupConfig): Group the measure lives on.
        levels (Iterable[int]): Levels profiled for n(k).
        edge_levels (Iterable[int] | None): Levels for the edge probability statistic (none by default).
        budget (int | None): Support budget for exact powers.
        samples (int): Samples for support lower bounds beyond the exact budget (0 disables them).
        seed (int | None): Seed for the sampled bounds.
        exact_k (int | None): Largest k for exact powers (all of k_range by default).
    """
    ks = sorted(set(k_range))
    m_star = group.valency.m_star
    exponent = alpha(m_star)
    profile = profile or resistance_profile(group, levels, mu)

    exact: Dict[int, FiniteMeasure] = {}
    k_max = ks[-1] if ks else 0
    if exact_k is not None:
        k_max = min(k_max, exact_k)
    try:
        wanted = set(ks)
        for k, nu in enumerate(mu.powers(k_max, budget)):
            if k in wanted:
                exact[k] = nu
    except ResourceError as exc:
        logger.warning(f"Exact powers stopped after k = {exc.details.get('k')}: {exc.message}")

    used_seed = config.DEFAULT_SEED if seed is None else seed
    warned: set = set()
    rows = []
    for k in ks:
        nu = exact.get(k)
        lower = None
        if nu is None and samples > 0:
            lower = support_lower_bound(mu, k, samples, seed=used_seed)
        level_row = _level_for(k, profile, warned)
        bound = None
        if level_row is not None:
            bound = level_row.volume + k / float(level_row.resistance)
        rows.append(EntropyRow(
            k=k,
            entropy=nu.entropy() if nu is not None else None,
            support=len(nu) if nu is not None else None,
            support_lower_bound=lower,
            level=level_row.level if level_row else None,
            volume=level_row.volume if level_row else None,
            resistance=float(level_row.resistance) if level_row else None,
            bound=bound,
            alpha=exponent,
        ))

    constant = None
    for row in rows:
        if row.k >= 1 and row.entropy is not None and row.bound:
            constant = row.entropy / row.bound
            break
    slope = bound_slope(rows)

    tracker = SectionTracker(group.generators, group.groups)
    edges = []
    for n in edge_levels or ():
        try:
            edges.append(edge_statistic(mu, n, group, tracker))
        except TracePreconditionError as exc:
            logger.warning(f"Level {n}: exact trace refused ({exc.message})")
    return EntropyReport(group.name, exponent, tuple(rows), constant, slope, tuple(edges), used_seed, samples, profile)


def check_entropy_invariants(report: EntropyReport) -> List[str]:
    """Violations of H ≥ 0, H ≤ log|supp| and subadditivity among the exact rows."""
    messages = []
    exact = {row.k: row for row in report.rows if row.entropy is not None}
    for k, row in exact.items():
        if row.entropy < -ENTROPY_SLACK:
            messages.append(f"H(μ^{k}) = {row.entropy} is negative")
        if row.entropy > math.log(row.support) + ENTROPY_SLACK:
            messages.append(f"H(μ^{k}) = {row.entropy} exceeds log |supp| = {math.log(row.support)}")
    for k in exact:
        for l in exact:
            if k <= l and k + l in exact:
                if exact[k + l].entropy > exact[k].entropy + exact[l].entropy + ENTROPY_SLACK:
                    messages.append(f"H(μ^{k + l}) exceeds H(μ^{k}) + H(μ^{l})")
    return messages


def word_length_distribution(generators: Sequence[TreeAutomorphism], radius: int, budget: Optional[int] = None) -> Dict[TreeAutomorphism, int]:
    """
    Word length |g| over S ∪ S⁻¹ for every element of the ball of the given radius, keyed canonically.

    Raises:
        ResourceError: If the ball outgrows the support budget.
    """
    budget = budget if budget is not None else config.SUPPORT_BUDGET
    valency = generators[0].valency
    table = table_for(valency)
    steps = []
    for g in generators:
        for key in (table.key(g), table.inverse(table.key(g))):
            if key.word and key not in steps:
                steps.append(key)
    lengths = {table.identity: 0}
    queue = deque([table.identity])
    while queue:
        g = queue.popleft()
        if lengths[g] >= radius:
            continue
        for s in steps:
            h = table.product(g, s)
            if h not in lengths:
                lengths[h] = lengths[g] + 1
                if len(lengths) > budget:
                    raise ResourceError(f"The ball of radius {radius} passed {budget} elements", budget=budget)
                queue.append(h)
    return lengths


def length_bound_check(mu: FiniteMeasure, generators: Sequence[TreeAutomorphism], k_max: int) -> Tuple[LengthBoundRow, ...]:
    """
    H(g_k) against C·E|g_k| with C = log(1 + |S ∪ S⁻¹|), for k = 1..k_max.

    Raises:
        PreconditionError: If the support of μ leaves the ball of radius 1.
    """
    table = table_for(mu.valency)
    symmetric = {table.key(g) for g in generators} | {table.inverse(table.key(g)) for g in generators}
    symmetric.discard(table.identity)
    constant = math.log(1 + len(symmetric))
    lengths = word_length_distribution(generators, k_max)
    for g in mu.support:
        if lengths.get(g, 2) > 1:
            raise PreconditionError(f"{g} in the support of μ is not a generator or its inverse")
    rows = []
    for k, nu in enumerate(mu.powers(k_max)):
        if k == 0:
            continue
        mean = sum((p * lengths[g] for g, p in nu.items()), Fraction(0))
        rows.append(LengthBoundRow(k, nu.entropy(), mean, constant))
    return tuple(rows)


def check_edge_conditions(
    d: Diagram,
    classification: SectionClassification,
    groups=None,
) -> List[str]:
    """
    Violations of the edge conditions at a stable level: measures on edges inside 𝔸_n lie in A_n,
    inside 𝔹_n in B_n, and every other edge carries δ_e.
    """
    A = set(classification.A_vertices)
    B = set(classification.B_vertices)
    messages = []
    for v, w in d.edges():
        measure = d.measures[(v, w)]
        if v in A and w in A:
            expected = "A"
        elif v in B and w in B:
            expected = "B"
        else:
            expected = None
        for g in measure.support:
            if not g.word:
                continue
            if expected is None:
                messages.append(f"Edge {v} → {w} should carry δ_e but charges {g}")
            elif classify_element(g, groups) != expected:
                messages.append(f"Edge {v} → {w} charges {g}, outside the {expected} section group")
    return messages


# ****
if __name__ == "__main__":
    raise Exception("This file is not meant to run on its own.")
