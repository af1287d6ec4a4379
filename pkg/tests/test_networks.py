# -*- coding: utf-8 -*-

"""
Tests for Schreier graphs, level networks, effective resistance and resistance profiles.
"""

# **** IMPORTS ****
from fractions import Fraction

import numpy as np
import pytest

from treewalk.algebra.vertex import Vertex, level_vertices
from treewalk.networks.network import (
    LabeledNetwork,
    export_edge_list,
    is_path_with_loops,
    level_network,
    level_orbits,
    orbit,
    path_order,
    schreier_graph,
    star_projection,
)
from treewalk.networks.resistance import effective_resistance, escape_probability
from treewalk.networks.profile import SECTIONS, WATCHED, resistance_profile
from treewalk.fixtures import build_fixture
from treewalk.exceptions import PreconditionError, ValidationError

# **** FIXTURES ****
@pytest.fixture(scope="module")
def hanoi():
    return build_fixture("hanoi")


@pytest.fixture(scope="module")
def mother3():
    return build_fixture("mother3")


def _random_cycle(seed: int) -> LabeledNetwork:
    """Weighted cycle of 4 to 12 vertices with one chord and one loop, integer weights drawn from a seeded generator."""
    rng = np.random.default_rng(seed)
    size = 4 + seed % 9
    weights = rng.integers(1, 6, size=size + 2)
    edges = [(i, (i + 1) % size, int(weights[i])) for i in range(size)]
    edges.append((0, size // 2 - 1, int(weights[size])))
    edges.append((1, 1, int(weights[size + 1])))
    return LabeledNetwork.from_undirected(range(size), edges)


# **** TESTS ****
def test_series_and_parallel_resistance():
    single = LabeledNetwork.from_undirected([0, 1], [(0, 1, 1)])
    assert effective_resistance(single, [0], [1]).value == 1
    parallel = LabeledNetwork.from_undirected([0, 1], [(0, 1, 1), (0, 1, 1)])
    assert effective_resistance(parallel, [0], [1]).value == Fraction(1, 2)
    triangle = LabeledNetwork.from_undirected([0, 1, 2], [(0, 1, 1), (1, 2, 1), (0, 2, 1)])
    assert effective_resistance(triangle, [0], [1]).value == Fraction(2, 3)
    series = LabeledNetwork.from_undirected([0, 1, 2], [(0, 1, 1), (1, 2, 1)])
    assert effective_resistance(series, [0], [2]).value == 2


def test_disconnected_sets_have_infinite_resistance():
    net = LabeledNetwork.from_undirected([0, 1, 2], [(0, 1, 1)])
    assert effective_resistance(net, [0], [2]).infinite


def test_resistance_rejects_bad_sets():
    net = LabeledNetwork.from_undirected([0, 1], [(0, 1, 1)])
    with pytest.raises(PreconditionError):
        effective_resistance(net, [], [1])
    with pytest.raises(PreconditionError):
        effective_resistance(net, [0], [0, 1])
    with pytest.raises(PreconditionError):
        effective_resistance(net, [0], [5])


def test_network_rejects_negative_weights():
    with pytest.raises(ValidationError):
        LabeledNetwork.from_undirected([0, 1], [(0, 1, -1)])


def test_escape_identity_on_single_edge():
    single = LabeledNetwork.from_undirected([0, 1], [(0, 1, 1)])
    escape = escape_probability(single, [0], [1], exact=True)
    assert escape.hitting == Fraction(1, 2)
    assert escape.formula == Fraction(1, 2)


def test_escape_identity_on_triangle():
    triangle = LabeledNetwork.from_undirected([0, 1, 2], [(0, 1, 1), (1, 2, 1), (0, 2, 1)])
    escape = escape_probability(triangle, [0], [1], exact=True)
    assert escape.hitting == Fraction(1, 4)
    assert escape.formula == Fraction(1, 4)
    assert escape.discrepancy == 0
    assert escape.total_weight == 3


@pytest.mark.parametrize("seed", range(50))
def test_escape_identity_on_weighted_cycles(seed):
    net = _random_cycle(seed)
    B = [net.size // 2]
    exact = escape_probability(net, [0], B, exact=True)
    assert exact.discrepancy == 0
    approximate = escape_probability(net, [0], B, exact=False)
    assert approximate.discrepancy < 1e-10
    assert abs(float(approximate.hitting) - float(exact.hitting)) < 1e-10


def test_hanoi_level_orbits_and_schreier_graph(hanoi):
    assert len(level_orbits(hanoi.generators, hanoi.valency, 3)) == 1
    O = orbit(list(hanoi.measure.support), Vertex.root(2))
    assert len(O) == 9
    net = schreier_graph(hanoi.measure, O)
    assert net.size == 9
    assert len(net.edges) == 9 * len(hanoi.measure)
    lines = export_edge_list(net).splitlines()
    assert len(lines) == len(net.edges)


def test_level_network_weights(hanoi):
    net = level_network(hanoi.generators, 1, with_sections=False)
    assert net.size == 3
    assert net.total_weight() == Fraction(9, 2)
    conductance, loops = net.conductances()
    assert all(c == 1 for c in conductance.values())
    assert sum(loops.values()) == 3


@pytest.mark.parametrize("n", [1, 2, 3])
def test_mother_star_projection_is_a_path(mother3, n):
    net = level_network(mother3.generators, n, with_sections=False)
    star = star_projection(net)
    assert star.size == 2 ** n
    assert is_path_with_loops(star)
    order = path_order(star)
    assert set(order) == set(star.vertices)
    assert "0" * n in (order[0], order[-1])


def test_mother_resistance_profile(mother3):
    profile = resistance_profile(mother3, range(1, 4))
    assert profile.is_increasing()
    for row in profile.rows:
        assert row.collapse == SECTIONS
        assert row.A == (Vertex.root(row.level),)
        assert len(row.B) == 2
        assert row.weighted_resistance >= row.resistance
        assert row.volume == 3 ** row.level
    assert all(ratio > 1 for ratio in profile.ratios())
    csv = profile.to_csv().splitlines()
    assert csv[0].startswith("n,V_n,R_n")
    assert len(csv) == 4


def test_hanoi_profile_falls_back_to_watched_pairs(hanoi):
    profile = resistance_profile(hanoi, range(1, 4))
    first = profile.row(1)
    assert first.collapse == WATCHED
    assert first.resistance == Fraction(2, 3)
    assert first.weighted_resistance == 3 * first.resistance
    assert profile.is_increasing()
    for row in profile.rows:
        assert len(row.A) == 1 and len(row.B) == 1
        assert row.A[0] in level_vertices(hanoi.valency, row.level)


def test_profile_reports_simulated_traverses(hanoi, mother3):
    profile = resistance_profile(hanoi, range(1, 3), traverse_steps=20_000, seed=7)
    first = profile.row(1).traverses
    assert first.edge_flow == Fraction(1, 9)
    assert abs(first.rate - 1 / 9) < 0.02
    assert profile.to_csv().splitlines()[0].endswith("edge_flow,traverse_sim,traverse_steps")
    assert resistance_profile(hanoi, range(1, 3)).row(1).traverses is None
    for row in resistance_profile(mother3, range(1, 3), traverse_steps=5_000, seed=7).rows:
        assert row.traverses.steps == 5_000
        if row.traverses.edge_flow == 0:
            assert row.traverses.traverses == 0


@pytest.mark.slow
def test_mother_resistance_grows_geometrically(mother3):
    profile = resistance_profile(mother3, range(2, 9))
    assert all(ratio >= 1.35 for ratio in profile.ratios())
