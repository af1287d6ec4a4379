# -*- coding: utf-8 -*-

"""
Tests for finite measures, ascension diagrams, traces and the entropy bounds.
"""

# **** IMPORTS ****
import math
import itertools
from fractions import Fraction

import numpy as np
import pytest

from treewalk.algebra.vertex import Vertex
from treewalk.algebra.elements import table_for
from treewalk.networks.network import orbit
from treewalk.rwidf.measure import FiniteMeasure
from treewalk.rwidf.diagram import (
    Diagram,
    build_ascension,
    edge_supremum,
    restricted_stationary,
    stationary,
    trace,
)
from treewalk.rwidf.simulation import (
    ascension_operator,
    empirical_law,
    monte_carlo_trace,
    projected_diagram,
    simulate,
    support_lower_bound,
    total_variation,
    traverse_statistics,
)
from treewalk.rwidf.bounds import (
    alpha,
    ascension_inequality_check,
    bound_slope,
    check_entropy_invariants,
    entropy_bound,
    length_bound_check,
    traced_level_diagram,
)
from treewalk.fixtures import build_fixture
from treewalk.exceptions import PreconditionError, ReducibleChainError, TracePreconditionError, ValidationError

# **** FIXTURES ****
@pytest.fixture(scope="module")
def hanoi():
    return build_fixture("hanoi")


@pytest.fixture(scope="module")
def mother3():
    return build_fixture("mother3")


def _brute_force_support(mu: FiniteMeasure, k: int) -> int:
    table = table_for(mu.valency)
    products = set()
    for word in itertools.product(mu.support, repeat=k):
        g = table.identity
        for letter in word:
            g = table.product(g, letter)
        products.add(g)
    return len(products)


# **** TESTS ****
def test_two_state_chain_stationary(hanoi):
    e = FiniteMeasure.delta(hanoi.valency)
    d = Diagram(
        ("x", "y"),
        {"x": {"x": Fraction(1, 2), "y": Fraction(1, 2)}, "y": {"x": Fraction(1)}},
        {("x", "x"): e, ("x", "y"): e, ("y", "x"): e},
        hanoi.valency,
    )
    assert stationary(d) == {"x": Fraction(2, 3), "y": Fraction(1, 3)}
    assert d.is_reflection_symmetric()


def test_diagram_validation(hanoi):
    e = FiniteMeasure.delta(hanoi.valency)
    with pytest.raises(ValidationError):
        Diagram(("x",), {"x": {"x": Fraction(1, 2)}}, {("x", "x"): e}, hanoi.valency)
    with pytest.raises(ReducibleChainError):
        Diagram(
            ("x", "y"),
            {"x": {"x": Fraction(1)}, "y": {"x": Fraction(1)}},
            {("x", "x"): e, ("y", "x"): e},
            hanoi.valency,
        )


def test_convolution_powers(hanoi):
    mu = hanoi.measure
    assert mu.is_symmetric()
    assert sum(p for _, p in mu.items()) == 1
    square = mu.power(2)
    table = table_for(hanoi.valency)
    assert square[table.identity] == Fraction(1, 3)
    assert len(square) == 7
    assert mu.power(0).is_delta_identity
    assert math.isclose(mu.entropy(), math.log(3))


@pytest.mark.parametrize("k", range(1, 7))
def test_support_sizes_match_word_enumeration(hanoi, k):
    assert len(hanoi.measure.power(k)) == _brute_force_support(hanoi.measure, k)


def test_entropy_invariants(hanoi):
    report = entropy_bound(hanoi.measure, range(1, 7), hanoi, range(1, 4))
    assert check_entropy_invariants(report) == []
    for row in report.rows:
        assert 0 <= row.entropy <= math.log(row.support) + 1e-12
    assert report.seed is not None
    assert report.to_csv().splitlines()[0].startswith("k,H_exact")


def test_entropy_per_step_decreases(hanoi):
    entropies = [nu.entropy() for nu in hanoi.measure.powers(10)]
    ratios = [entropies[k] / k for k in range(2, 11)]
    assert all(b <= a + 1e-12 for a, b in zip(ratios, ratios[1:]))


def test_ascension_inequality(hanoi, mother3):
    assert ascension_inequality_check(hanoi.measure, 2, 5).holds
    assert ascension_inequality_check(mother3.measure, 1, 2).holds


def test_length_bound(hanoi):
    rows = length_bound_check(hanoi.measure, hanoi.generators, 5)
    assert all(row.holds for row in rows)
    assert math.isclose(rows[0].constant, math.log(4))
    assert rows[0].mean_length == 1


def test_alpha_values():
    assert alpha(2) == pytest.approx(0.5)
    assert alpha(3) == pytest.approx(0.7304, abs=1e-4)


def test_hanoi_ascension_and_trace(hanoi):
    O = orbit(list(hanoi.measure.support), Vertex.root(2))
    d = build_ascension(hanoi.measure, O)
    assert len(d) == 9
    assert d.is_reflection_symmetric()
    root = Vertex.root(2)
    assert d.p(root, root) == Fraction(1, 3)

    W = [Vertex.parse("00"), Vertex.parse("11"), Vertex.parse("22")]
    traced = trace(d, W)
    assert len(traced) == 3
    p = traced.p(W[0], W[1])
    q = traced.p(W[0], W[0])
    assert traced.p(W[0], W[2]) == p
    assert 2 * p + q == 1
    assert stationary(traced) == restricted_stationary(stationary(d), traced.states)
    assert edge_supremum(traced, traced.states, traced.states) == p


def test_trace_refuses_hidden_labels(hanoi):
    O = orbit(list(hanoi.measure.support), Vertex.root(1))
    d = build_ascension(hanoi.measure, O)
    with pytest.raises(TracePreconditionError):
        trace(d, [Vertex.parse("1")])


def test_monte_carlo_trace_is_seeded(hanoi):
    O = orbit(list(hanoi.measure.support), Vertex.root(1))
    d = build_ascension(hanoi.measure, O)
    first = monte_carlo_trace(d, [Vertex.parse("1")], 200, seed=7)
    second = monte_carlo_trace(d, [Vertex.parse("1")], 200, seed=7)
    assert first.transitions == second.transitions
    assert first.measures == second.measures
    assert first.excursions == 200
    assert support_lower_bound(hanoi.measure, 8, 100, seed=3) == support_lower_bound(hanoi.measure, 8, 100, seed=3)


def test_single_vertex_trace_is_an_empirical_law(hanoi):
    estimate = ascension_operator(hanoi.measure, "1", 300, seed=7)
    assert estimate.vertex == Vertex.parse("1")
    assert estimate.samples == 300
    assert estimate.support_lower_bound == len(estimate.measure)
    assert sum(weight for _, weight in estimate.measure.items()) == 1
    assert estimate.measure == ascension_operator(hanoi.measure, "1", 300, seed=7).measure


def test_mother_traced_diagram_has_three_states(mother3):
    d, traced, A, B = traced_level_diagram(mother3.measure, 2, mother3)
    assert len(d) == 9
    assert A == (Vertex.root(2),)
    assert len(B) == 2
    assert len(traced) == 3
    assert stationary(traced) == restricted_stationary(stationary(d), traced.states)


def test_bound_slope_uses_the_largest_decade(hanoi):
    report = entropy_bound(hanoi.measure, range(1, 101), hanoi, range(1, 5), exact_k=3)
    assert report.row(50).entropy is None
    slope = bound_slope(report.rows)
    assert slope is not None
    assert slope > 0


@pytest.mark.slow
def test_hanoi_traces_keep_their_shape(hanoi):
    off_diagonal, shapes = [], []
    for n in range(2, 8):
        _, traced, _, _ = traced_level_diagram(hanoi.measure, n, hanoi)
        states = traced.states
        assert len(traced) == 3
        assert 2 * traced.p(states[0], states[1]) + traced.p(states[0], states[0]) == 1
        off_diagonal.append(edge_supremum(traced, states, states))
        shapes.append(sorted(
            (states.index(v), states.index(w), tuple(sorted(str(g) for g in traced.measures[(v, w)].support)))
            for v, w in traced.edges()
        ))
    assert all(b < a for a, b in zip(off_diagonal, off_diagonal[1:]))
    assert off_diagonal[-1] < off_diagonal[0] / 2
    assert all(shape == shapes[0] for shape in shapes)


def test_identity_labels_keep_the_start_element(hanoi):
    O = orbit(list(hanoi.measure.support), Vertex.root(2))
    d = projected_diagram(hanoi.measure, O)
    table = table_for(d.valency)
    start = table.key(hanoi.generator("a"))
    run = simulate(d, (start, Vertex.root(2)), 200, seed=3)
    assert run.steps == 200
    assert all(g == start for g in run.elements)
    assert simulate(d, (start, Vertex.root(2)), 200, seed=3).states == run.states


def test_visit_frequencies_approach_the_stationary_law(hanoi):
    O = orbit(list(hanoi.measure.support), Vertex.root(2))
    d = build_ascension(hanoi.measure, O)
    nu = stationary(d)
    assert all(p == Fraction(1, 9) for p in nu.values())
    k = 10 ** 5
    run = simulate(d, (None, Vertex.root(2)), k, seed=11, track_elements=False)
    P = np.array([[float(d.p(x, y)) for y in d.states] for x in d.states])
    second = sorted(np.abs(np.linalg.eigvals(P)))[-2]
    frequencies = run.visit_frequencies()
    for state, p in nu.items():
        p = float(p)
        sigma = math.sqrt(p * (1 - p) * (1 + second) / ((1 - second) * k))
        assert abs(frequencies.get(state, 0.0) - p) <= 3 * sigma


def test_simulate_rejects_bad_starts(hanoi):
    O = orbit(list(hanoi.measure.support), Vertex.root(1))
    d = projected_diagram(hanoi.measure, O)
    with pytest.raises(PreconditionError):
        simulate(d, (None, Vertex.parse("00")), 5)
    with pytest.raises(PreconditionError):
        simulate(d, (None, Vertex.root(1)), -1)


def test_traverses_are_counted_on_direct_steps(hanoi):
    stats = traverse_statistics(hanoi.measure, [Vertex.parse("0")], [Vertex.parse("1")], 20_000, seed=5)
    assert stats.edge_flow == Fraction(1, 9)
    assert abs(stats.rate - 1 / 9) < 5 * math.sqrt((1 / 9) / 20_000)
    again = traverse_statistics(hanoi.measure, [Vertex.parse("0")], [Vertex.parse("1")], 20_000, seed=5)
    assert again.traverses == stats.traverses


@pytest.mark.slow
def test_visits_to_the_watched_set_follow_the_trace(hanoi):
    O = orbit(list(hanoi.measure.support), Vertex.root(2))
    d = build_ascension(hanoi.measure, O)
    W = [Vertex.parse("00"), Vertex.parse("11"), Vertex.parse("22")]
    traced = trace(d, W)
    table = table_for(d.valency)

    law = {(table.identity, W[0]): Fraction(1)}
    for _ in range(3):
        following = {}
        for (g, x), p in law.items():
            for y, pxy in traced.transitions[x].items():
                for h, q in traced.measures[(x, y)].items():
                    key = (table.product(g, h), y)
                    following[key] = following.get(key, Fraction(0)) + p * pxy * q
        law = following

    samples = 20_000
    draws = []
    for index in range(samples):
        run = simulate(d, (None, W[0]), 40, seed=index, watched=W)
        if len(run.visit_times) > 3:
            t = run.visit_times[3]
            draws.append((table.key(run.elements[t]), run.states[t]))
    assert len(draws) > 0.99 * samples
    exact = {}
    for (g, y), p in law.items():
        exact[(table.key(g), y)] = exact.get((table.key(g), y), Fraction(0)) + p
    assert total_variation(empirical_law(draws), exact) <= 0.05
