# -*- coding: utf-8 -*-

"""
Acceptance suite run by the `verify` command.

Each check returns a `CheckResult`; a check that cannot run on the given
group (for example the activity checks on a directed group) is skipped.
"""

# **** IMPORTS ****
import math
import logging
import itertools
from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence, Tuple

from treewalk.algebra.vertex import Vertex, level_vertices
from treewalk.algebra.portrait import portrait
from treewalk.algebra.automorphism import TreeAutomorphism, apply, equals, inverse, multiply, section
from treewalk.automata.activity import activity_degree, cross_validate_activity, validate_witness
from treewalk.automata.reduction import reduce_with_mapping
from treewalk.directed.sections import SectionTracker, check_section_lemma, classify_sections
from treewalk.networks.network import is_path_with_loops, level_network, orbit, star_projection
from treewalk.networks.profile import resistance_profile
from treewalk.networks.resistance import escape_probability
from treewalk.rwidf.bounds import (
    ascension_inequality_check,
    bound_slope,
    check_edge_conditions,
    check_entropy_invariants,
    entropy_bound,
    length_bound_check,
    traced_level_diagram,
)
from treewalk.rwidf.diagram import build_ascension
from treewalk.util import format_float
from treewalk.exceptions import BudgetError, PreconditionError, TracePreconditionError, TreewalkError

# **** LOGGING ****
logger = logging.getLogger(__name__)

# **** CONSTANTS ****
ALGEBRA_LEVELS = range(1, 5)
ENTROPY_K = range(1, 11)
ASCENSION_LEVEL = 2
ASCENSION_K = 6
LENGTH_K = 6
SLOPE_K = range(1, 1001)
SLOPE_SLACK = 0.1
MIN_RESISTANCE_RATIO = 1.35

VERIFY_COLUMNS = ("check", "passed", "detail")

# **** CLASSES ****
@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: Optional[bool]
    detail: str = ""

    @property
    def skipped(self) -> bool:
        return self.passed is None

    def csv_fields(self) -> Tuple[str, ...]:
        status = "skipped" if self.skipped else str(self.passed).lower()
        return (self.name, status, self.detail.replace(",", ";"))


# **** FUNCTIONS ****
def results_to_csv(results: Sequence[CheckResult]) -> str:
    lines = [",".join(VERIFY_COLUMNS)]
    lines.extend(",".join(result.csv_fields()) for result in results)
    return "\n".join(lines) + "\n"


def _guarded(name: str, check: Callable[[], Tuple[Optional[bool], str]]) -> CheckResult:
    """Runs one check; unmet preconditions and exhausted budgets skip it, other toolkit errors fail it."""
    try:
        passed, detail = check()
    except (PreconditionError, BudgetError) as e:
        logger.info(f"{name}: skipped ({e.message})")
        return CheckResult(name, None, e.message)
    except TreewalkError as e:
        logger.error(f"{name}: {e.message}")
        return CheckResult(name, False, e.message)
    if passed is False:
        logger.error(f"{name}: {detail}")
    return CheckResult(name, passed, detail)


# Measure and network checks
def check_symmetric(group, mu) -> Tuple[bool, str]:
    return mu.is_symmetric(), f"{len(mu)} support elements"


def check_commute_identity(group, mu, n: int) -> Tuple[Optional[bool], str]:
    """Both sides of the escape-probability identity on the μ-weighted level network."""
    profile = resistance_profile(group, [n], mu)
    row = profile.row(n)
    if not row.A or not row.B:
        raise PreconditionError(f"Level {n} has no pair of collapsed sets")
    net = level_network(list(mu.support), n, weights=dict(mu.items()), with_sections=False, valency=group.valency)
    escape = escape_probability(net, row.A, row.B, exact=True)
    return escape.discrepancy == 0, f"hitting {escape.hitting} formula {escape.formula}"


def check_resistance_dominance(group, mu, levels: range) -> Tuple[bool, str]:
    # raises when R_n^μ < R_n
    resistance_profile(group, levels, mu)
    return True, f"levels {levels.start}..{levels.stop - 1}"


# Entropy checks
def check_entropy(group, mu, levels: range) -> Tuple[bool, str]:
    report = entropy_bound(mu, ENTROPY_K, group, levels)
    violations = check_entropy_invariants(report)
    values = [row.entropy for row in report.rows if row.entropy is not None]
    ratios = [report.row(k).entropy / k for k in ENTROPY_K if k >= 2 and report.row(k).entropy is not None]
    decreasing = all(b <= a + 1e-12 for a, b in zip(ratios, ratios[1:]))
    if not decreasing:
        violations.append("H(μ^k)/k increases somewhere on k = 2..10")
    if violations:
        return False, violations[0]
    return True, f"{len(values)} exact entropies"


def check_ascension_inequality(group, mu) -> Tuple[bool, str]:
    report = ascension_inequality_check(mu, ASCENSION_LEVEL, ASCENSION_K)
    return report.holds, f"level {ASCENSION_LEVEL}, k ≤ {ASCENSION_K}"


def check_length_bound(group, mu) -> Tuple[bool, str]:
    rows = length_bound_check(mu, group.generators, LENGTH_K)
    failed = [row.k for row in rows if not row.holds]
    if failed:
        return False, f"H(g_k) > C·E|g_k| at k = {failed[0]}"
    return True, f"C = {format_float(rows[0].constant)}"


def check_bound_slope(group, mu, levels: range) -> Tuple[bool, str]:
    report = entropy_bound(mu, SLOPE_K, group, levels, exact_k=ENTROPY_K.stop - 1)
    reached = [row.k for row in report.rows if row.bound]
    slope = bound_slope(report.rows)
    if slope is None or max(reached) < SLOPE_K.stop - 1:
        raise PreconditionError(f"Levels {levels.start}..{levels.stop - 1} do not reach k = {SLOPE_K.stop - 1}")
    return slope <= report.alpha + SLOPE_SLACK, f"slope {format_float(slope)} alpha {format_float(report.alpha)}"


def check_edge_statistic(group, mu, levels: range) -> Tuple[bool, str]:
    report = entropy_bound(mu, [1], group, levels, edge_levels=levels)
    values = [edge.supremum for edge in report.edges]
    if len(values) < 2:
        raise PreconditionError("The edge statistic needs at least two traced levels")
    return all(b < a for a, b in zip(values, values[1:])), " ".join(format_float(value) for value in values)


def check_trace_stability(group, mu, levels: range) -> Tuple[bool, str]:
    """Same number of traced states and the same edge-measure supports on every level."""
    tracker = SectionTracker(group.generators, group.groups)
    shapes = []
    for n in levels:
        try:
            _, traced, _, _ = traced_level_diagram(mu, n, group, tracker)
        except TracePreconditionError as e:
            raise PreconditionError(e.message) from e
        supports = sorted(
            tuple(sorted(str(g) for g in traced.measures[edge].support)) for edge in traced.edges()
        )
        shapes.append((len(traced), supports))
    stable = all(shape == shapes[0] for shape in shapes)
    return stable, f"{shapes[0][0]} traced states"


# Automaton checks
def check_activity(group) -> Tuple[bool, str]:
    aut = group.automaton
    report = activity_degree(aut)
    if not validate_witness(aut, report):
        return False, "witness is not a chain of cycles"
    check = cross_validate_activity(aut, report)
    if not check.passed:
        return False, check.messages[0]
    return True, f"degree {report.degree_label()}"


def check_section_laws(group) -> Tuple[bool, str]:
    """Cocycle, inverse-section and right-action laws on every vertex of levels 1..4."""
    S: List[TreeAutomorphism] = list(group.generators)
    checked = 0
    for n in ALGEBRA_LEVELS:
        for v in level_vertices(group.valency, n):
            for g, h in itertools.product(S, repeat=2):
                checked += 1
                gh = multiply(g, h)
                if apply(gh, v) != apply(h, apply(g, v)):
                    return False, f"v·({g}{h}) ≠ (v·{g})·{h} at {v}"
                if not equals(section(gh, v), multiply(section(g, v), section(h, apply(g, v)))):
                    return False, f"({g}{h})|_{v} breaks the cocycle law"
            for g in S:
                if not equals(section(inverse(g), apply(g, v)), inverse(section(g, v))):
                    return False, f"{g}⁻¹ at {v}·{g} is not the inverse of {g}|_{v}"
    return True, f"{checked} products"


def check_reduction(group) -> Tuple[bool, str]:
    aut = group.automaton
    reduction = reduce_with_mapping(aut)
    depth = ALGEBRA_LEVELS.stop - 1
    for state, representative in reduction.state_map.items():
        if portrait(aut.element(state), depth) != portrait(reduction.automaton.element(representative), depth):
            return False, f"state {state} and its representative {representative} differ"
    return True, f"{len(aut.states)} states reduced to {len(reduction.automaton.states)}"


# Directed checks
def check_group_orders(group) -> Tuple[bool, str]:
    A, B = group.groups
    m = group.valency.first
    expected_A = math.factorial(m) ** (m - 1) * math.factorial(m - 1)
    passed = True
    if group.name.startswith("mother"):
        passed = A.order == expected_A and B.order == math.factorial(m)
    return passed, f"|A| = {A.order} |B| = {B.order}"


def check_directed_sections(group) -> Tuple[bool, str]:
    tracker = SectionTracker(group.generators, group.groups)
    n0 = tracker.find_n0()
    if n0 is None:
        return False, "section structure never stabilized"
    classification = classify_sections(group.generators, n0, group.groups, tracker=tracker)
    report = check_section_lemma(group.generators, classification, group.groups)
    if not report.holds:
        return False, report.violations[0]

    O = orbit(list(group.measure.support), Vertex.root(n0))
    d = build_ascension(group.measure, O)
    messages = check_edge_conditions(d, classification, group.groups)
    if messages:
        return False, messages[0]
    return True, f"n0 = {n0}, {report.checked} sections checked"


def check_star_paths(group, levels: range) -> Tuple[bool, str]:
    for n in levels:
        net = level_network(group.generators, n, with_sections=False)
        if not is_path_with_loops(star_projection(net)):
            return False, f"star projection at level {n} is not a path"
    return True, f"levels {levels.start}..{levels.stop - 1}"


def check_resistance_growth(group, levels: range) -> Tuple[bool, str]:
    profile = resistance_profile(group, levels, group.measure)
    ratios = profile.ratios()
    low = [ratio for ratio in ratios if ratio is None or ratio < MIN_RESISTANCE_RATIO]
    detail = " ".join(format_float(ratio) for ratio in ratios)
    return not low, detail


def run_suite(group, mu, levels: range) -> List[CheckResult]:
    """
    Runs every check that applies to the group.

    Args:
        group (GroupConfig): Group under test.
        mu (FiniteMeasure): Step measure.
        levels (range): Levels for the network and trace checks.
    """
    checks = [
        ("symmetric_measure", lambda: check_symmetric(group, mu)),
        ("commute_identity", lambda: check_commute_identity(group, mu, levels.start)),
        ("resistance_dominance", lambda: check_resistance_dominance(group, mu, levels)),
        ("entropy_invariants", lambda: check_entropy(group, mu, levels)),
        ("ascension_inequality", lambda: check_ascension_inequality(group, mu)),
        ("length_bound", lambda: check_length_bound(group, mu)),
        ("bound_slope", lambda: check_bound_slope(group, mu, levels)),
        ("edge_statistic", lambda: check_edge_statistic(group, mu, levels)),
        ("trace_stability", lambda: check_trace_stability(group, mu, levels)),
    ]
    if group.automaton is not None:
        checks += [
            ("activity", lambda: check_activity(group)),
            ("section_laws", lambda: check_section_laws(group)),
            ("reduction", lambda: check_reduction(group)),
        ]
    if group.groups is not None:
        checks += [
            ("group_orders", lambda: check_group_orders(group)),
            ("section_lemma", lambda: check_directed_sections(group)),
            ("star_paths", lambda: check_star_paths(group, levels)),
            ("resistance_growth", lambda: check_resistance_growth(group, levels)),
        ]

    results = []
    for name, check in checks:
        logger.debug(f"Running check {name}")
        results.append(_guarded(name, check))
    return results


# ****
if __name__ == "__main__":
    raise Exception("This file is not meant to run on its own.")
