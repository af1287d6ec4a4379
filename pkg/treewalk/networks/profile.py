# -*- coding: utf-8 -*-

"""
Resistance growth along the levels of a group action.

For each level n the profile collapses the A-class and B-class section
vertices and reports the resistance between them twice: once with unit
conductances and once with the step measure as conductances.
"""

# **** IMPORTS ****
import math
import logging
import itertools
from fractions import Fraction
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

from treewalk.algebra.vertex import Vertex
from treewalk.directed.sections import SectionTracker
from treewalk.networks.network import LabeledNetwork, level_network
from treewalk.networks.resistance import Number, ResistanceResult, effective_resistance, escape_probability
from treewalk.rwidf.simulation import TraverseStatistics, traverse_statistics
from treewalk.util import format_float, format_fraction
from treewalk.exceptions import InvariantViolationError, PreconditionError

# **** LOGGING ****
logger = logging.getLogger(__name__)

# **** CONSTANTS ****
SECTIONS = "sections"
WATCHED = "watched"
COMPARISON_SLACK = 1e-9

CSV_COLUMNS = (
    "n", "V_n", "R_n", "R_n_float", "R_mu_n", "R_mu_n_float",
    "reference", "traverse_rate", "traverse_rate_float", "method", "collapse",
    "edge_flow", "traverse_sim", "traverse_steps",
)

# **** CLASSES ****
@dataclass(frozen=True)
class ResistanceRow:
    """
    Attributes:
        level (int): n.
        volume (int): V_n = m₁⋯m_n.
        resistance (Fraction | float): R_n, unit conductances.
        weighted_resistance (Fraction | float): R_n^μ, conductance μ(g) per edge.
        reference (float): (m_*/(m_*−1))ⁿ.
        traverse_rate (Fraction | float): Stationary probability that a step starts a traverse between the collapsed sets.
        method (str): Solver used for R_n.
        collapse (str): "sections" when 𝔸_n and 𝔹_n were collapsed, "watched" for the watched-pair fallback.
        A (Tuple[Vertex, ...]): First collapsed set.
        B (Tuple[Vertex, ...]): Second collapsed set.
        traverses (TraverseStatistics | None): Simulated 𝔸 → 𝔹 steps, when requested.
    """
    level: int
    volume: int
    resistance: Number
    weighted_resistance: Number
    reference: float
    traverse_rate: Number
    method: str
    collapse: str
    A: Tuple[Vertex, ...]
    B: Tuple[Vertex, ...]
    traverses: Optional[TraverseStatistics] = None

    @property
    def infinite(self) -> bool:
        return isinstance(self.resistance, float) and math.isinf(self.resistance)

    def csv_fields(self) -> Tuple[str, ...]:
        return (
            str(self.level),
            str(self.volume),
            format_fraction(self.resistance),
            format_float(self.resistance),
            format_fraction(self.weighted_resistance),
            format_float(self.weighted_resistance),
            format_float(self.reference),
            format_fraction(self.traverse_rate),
            format_float(self.traverse_rate),
            self.method,
            self.collapse,
            format_fraction(self.traverses.edge_flow) if self.traverses else "",
            format_float(self.traverses.rate) if self.traverses else "",
            str(self.traverses.steps) if self.traverses else "",
        )


@dataclass(frozen=True)
class ResistanceProfile:
    name: str
    m_star: int
    rows: Tuple[ResistanceRow, ...]

    def row(self, n: int) -> ResistanceRow:
        for row in self.rows:
            if row.level == n:
                return row
        raise KeyError(n)

    def ratios(self) -> List[Optional[float]]:
        """Successive ratios R_{n+1}/R_n (None where a value is infinite or zero)."""
        out = []
        for previous, current in zip(self.rows, self.rows[1:]):
            low, high = float(previous.resistance), float(current.resistance)
            out.append(high / low if low and math.isfinite(low) and math.isfinite(high) else None)
        return out

    def is_increasing(self) -> bool:
        values = [float(row.resistance) for row in self.rows]
        return all(a < b for a, b in zip(values, values[1:]))

    def to_csv(self) -> str:
        lines = [",".join(CSV_COLUMNS)]
        lines.extend(",".join(row.csv_fields()) for row in self.rows)
        return "\n".join(lines) + "\n"


# **** FUNCTIONS ****
def reference_growth(m_star: int, n: int) -> float:
    """(m_*/(m_*−1))ⁿ, the growth rate of the root to anti-root resistance."""
    return (m_star / (m_star - 1)) ** n


def _watched_pair(
    net: LabeledNetwork, watched: Sequence[Vertex]
) -> Tuple[Optional[ResistanceResult], Tuple[Vertex, ...], Tuple[Vertex, ...]]:
    best: Optional[ResistanceResult] = None
    pair: Tuple[Tuple[Vertex, ...], Tuple[Vertex, ...]] = ((), ())
    for v, w in itertools.combinations(watched, 2):
        result = effective_resistance(net, [v], [w])
        if result.infinite:
            continue
        if best is None or float(result.value) < float(best.value):
            best, pair = result, ((v,), (w,))
    return best, pair[0], pair[1]


def _at_least(high: Number, low: Number) -> bool:
    if isinstance(high, Fraction) and isinstance(low, Fraction):
        return high >= low
    high, low = float(high), float(low)
    if math.isinf(low):
        return math.isinf(high)
    return high >= low * (1 - COMPARISON_SLACK)


def resistance_profile(
    group, levels: Iterable[int], measure=None, traverse_steps: int = 0, seed: Optional[int] = None
) -> ResistanceProfile:
    """
    Computes (n, V_n, R_n, R_n^μ, reference, traverse_rate) for every level.

    Args:
        group (GroupConfig): Generators, valency and (for directed groups) the finite groups (A, B).
        levels (Iterable[int]): Levels to compute.
        measure (FiniteMeasure | None): Step measure; the group's default measure when omitted.
        traverse_steps (int): Length of the simulated walk counting 𝔸 → 𝔹 steps (0 skips it).
        seed (int | None): Seed of that walk.

    Raises:
        InvariantViolationError: If R_n^μ < R_n at some level.
    """
    mu = measure if measure is not None else group.measure
    support = list(mu.support)
    weights = dict(mu.items())
    tracker = SectionTracker(group.generators, group.groups)
    m_star = group.valency.m_star
    rows = []
    for n in levels:
        unit_net = level_network(support, n, with_sections=False, valency=group.valency)
        weighted_net = level_network(support, n, weights=weights, with_sections=False, valency=group.valency)
        A, B, W = tracker.vertex_sets(n)

        if A and B:
            collapse = SECTIONS
            unit = effective_resistance(unit_net, A, B)
        else:
            collapse = WATCHED
            unit, A, B = _watched_pair(unit_net, W)
            if unit is None:
                logger.warning(f"Level {n}: no connected pair of collapsed sets; resistance is infinite")
                rows.append(ResistanceRow(
                    n, group.valency.volume(n), math.inf, math.inf, reference_growth(m_star, n),
                    0.0, "exact", collapse, A, B,
                ))
                continue

        weighted = effective_resistance(weighted_net, A, B, exact=unit.is_exact)
        if not _at_least(weighted.value, unit.value):
            raise InvariantViolationError(
                f"Level {n}: R_n^μ = {weighted.value} is below R_n = {unit.value}", level=n
            )
        escape = escape_probability(weighted_net, A, B, exact=unit.is_exact)
        traverses = None
        if traverse_steps > 0:
            try:
                traverses = traverse_statistics(mu, A, B, traverse_steps, seed=seed)
            except PreconditionError as exc:
                logger.warning(f"Level {n}: no traverse statistics ({exc})")
        if unit.infinite:
            logger.warning(f"Level {n}: collapsed sets are disconnected; resistance is infinite")
        row = ResistanceRow(
            level=n,
            volume=group.valency.volume(n),
            resistance=unit.value,
            weighted_resistance=weighted.value,
            reference=reference_growth(m_star, n),
            traverse_rate=escape.hitting,
            method=unit.method,
            collapse=collapse,
            A=tuple(A),
            B=tuple(B),
            traverses=traverses,
        )
        logger.debug(f"Level {n}: R_n = {format_float(row.resistance)}, R_n^μ = {format_float(row.weighted_resistance)}")
        rows.append(row)
    return ResistanceProfile(group.name, m_star, tuple(rows))


# ****
if __name__ == "__main__":
    raise Exception("This file is not meant to run on its own.")
