# -*- coding: utf-8 -*-

"""
Tests for automata: parsing, reduction, Moore diagrams and activity degree.
"""

# **** IMPORTS ****
import math

import pytest

from treewalk.algebra.automorphism import equals
from treewalk.automata.automaton import make_automaton, moore_diagram
from treewalk.automata.parsing import load_automaton
from treewalk.automata.reduction import reduce, reduce_with_mapping, state_partition
from treewalk.automata.activity import (
    activity_degree,
    activity_function,
    activity_profile,
    cross_validate_activity,
    dual_moore_level,
    validate_witness,
)
from treewalk.fixtures import hanoi_automaton, twoloop_automaton
from treewalk.exceptions import (
    DanglingTransitionError,
    NonBijectivePermutationError,
    SpecSyntaxError,
    ValidationError,
)

# **** CONSTANTS ****
HANOI_TEXT = """
# Hanoi towers group
alphabet: 3
trivial: e
state a; perm 0 2 1; to a e e
state b; perm 2 1 0; to e b e
state c; perm 1 0 2; to e e c
state e; perm 0 1 2; to e e e
"""

# **** FIXTURES ****
@pytest.fixture(scope="module")
def hanoi():
    return hanoi_automaton()


@pytest.fixture(scope="module")
def twoloop():
    return twoloop_automaton()


# **** TESTS ****
def test_hanoi_recursions(hanoi):
    assert hanoi.recursion("a") == "a=(a,e,e)(12)"
    assert hanoi.recursion("b") == "b=(e,b,e)(02)"
    assert hanoi.recursion("c") == "c=(e,e,c)(01)"
    assert [str(g) for g in hanoi.generators()] == ["a", "b", "c"]


def test_parsed_file_matches_fixture(hanoi):
    parsed = load_automaton(HANOI_TEXT, name="hanoi")
    assert parsed == hanoi
    assert parsed.trivial_state == "e"


def test_parser_errors():
    with pytest.raises(SpecSyntaxError):
        load_automaton("alphabet: 2\nstate a; perm 1 0\n")
    with pytest.raises(NonBijectivePermutationError):
        load_automaton("alphabet: 2\nstate a; perm 0 0; to a a\n")
    with pytest.raises(DanglingTransitionError):
        load_automaton("alphabet: 2\nstate a; perm 1 0; to a z\n")


def test_designated_trivial_state_must_be_trivial():
    with pytest.raises(ValidationError):
        make_automaton(2, {"a": ((1, 0), ("a", "a"))}, trivial_state="a")


def test_reduction_merges_equivalent_states():
    aut = make_automaton(
        2,
        {
            "a": ((1, 0), ("e", "a")),
            "a2": ((1, 0), ("e", "a2")),
            "e": ((0, 1), ("e", "e")),
            "f": ((0, 1), ("e", "f")),
        },
        trivial_state="e",
    )
    partition = state_partition(aut)
    assert partition["a"] == partition["a2"]
    assert partition["e"] == partition["f"]
    reduction = reduce_with_mapping(aut)
    assert reduction.state_map == {"a": "a", "a2": "a", "e": "e", "f": "e"}
    assert reduction.merged == {"a": ("a", "a2"), "e": ("e", "f")}
    reduced = reduce(aut)
    assert reduced.states == ("a", "e")
    assert equals(reduced.element("a"), aut.element("a2"))


def test_moore_diagram_edges(hanoi):
    diagram = moore_diagram(hanoi)
    assert diagram.out_degree("a") == 3
    lines = diagram.edge_list().splitlines()
    assert "a a 0 0" in lines
    assert "a e 1 2" in lines


def test_hanoi_has_bounded_activity(hanoi):
    report = activity_degree(hanoi)
    assert report.degree == 0
    assert report.bounded
    assert report.degree_label() == "0"
    assert validate_witness(hanoi, report)
    assert cross_validate_activity(hanoi, report).passed
    assert activity_function(hanoi, "a", 5) == 1
    assert activity_function(hanoi, "e", 5) == 0


def test_twoloop_has_unbounded_activity(twoloop):
    report = activity_degree(twoloop)
    assert math.isinf(report.degree)
    assert report.degree_label() == "inf"
    assert validate_witness(twoloop, report)
    assert cross_validate_activity(twoloop, report, n_max=12).passed
    assert activity_profile(twoloop, 4)["a"] == (1, 2, 4, 8, 16)


def test_dual_moore_level_is_the_level_network(hanoi):
    net = dual_moore_level(hanoi, 2)
    assert net.size == 9
    assert len(net.edges) == 9 * len(hanoi.states)


def test_activity_function_rejects_unknown_state(hanoi):
    with pytest.raises(ValidationError):
        activity_function(hanoi, "z", 3)
