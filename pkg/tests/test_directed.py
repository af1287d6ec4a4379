# -*- coding: utf-8 -*-

"""
Tests for directed automorphisms, their finite groups and section classification.
"""

# **** IMPORTS ****
import pytest

from treewalk.algebra.valency import ValencySequence
from treewalk.algebra.vertex import Vertex, anti_roots
from treewalk.algebra.automorphism import TreeAutomorphism, apply, equals, is_trivial
from treewalk.directed.directed import DirectedElement, h_sigma_bar
from treewalk.directed.groups import (
    augment_with_h_sigma,
    close_group,
    h_sigma_group,
    mother_group,
    section_groups,
    section_groups_recursive,
)
from treewalk.directed.parsing import load_directed_group
from treewalk.directed.sections import SectionTracker, check_section_lemma, classify_sections
from treewalk.fixtures import build_fixture
from treewalk.exceptions import DirectedSpecError, ValidationError

# **** CONSTANTS ****
TERNARY = ValencySequence.constant(3)

DIRECTED_TEXT = """
name: example
head:
period: 3
directed a
  period:
  level 0 2 1 | 1 0 2 | 0 1 2
rooted b: 1 0 2
"""

# **** FIXTURES ****
@pytest.fixture(scope="module")
def mother3():
    return build_fixture("mother3")


# **** TESTS ****
def test_h_sigma_moves_the_letter_after_the_first_nonzero():
    h = h_sigma_bar({3: (1, 0, 2)}, TERNARY)
    assert str(apply(TreeAutomorphism.of(h), Vertex.parse("2 0 1"))) == "211"
    assert apply(TreeAutomorphism.of(h), Vertex.root(3)) == Vertex.root(3)


def test_h_sigma_elements_form_a_group():
    group = h_sigma_group(TERNARY)
    assert group.order == 6
    assert group.identity.is_identity


def test_directed_element_products():
    a = DirectedElement.from_levels(TERNARY, [], [((0, 2, 1), ((1, 0, 2), (0, 1, 2)))])
    assert a.multiply(a.inverse()).is_identity
    assert equals(TreeAutomorphism.of(a.multiply(a)), TreeAutomorphism.of(a) * TreeAutomorphism.of(a))
    assert a.shift(1) == DirectedElement.from_levels(TERNARY, [], [((0, 2, 1), ((1, 0, 2), (0, 1, 2)))])


def test_directed_element_must_fix_the_ray():
    with pytest.raises(ValidationError):
        DirectedElement.from_levels(TERNARY, [], [((1, 0, 2), ((0, 1, 2), (0, 1, 2)))])


@pytest.mark.parametrize("m, order_a, order_b", [(2, 2, 2), (3, 72, 6)])
def test_mother_group_orders(m, order_a, order_b):
    A, B = mother_group(m)
    assert A.order == order_a
    assert B.order == order_b
    assert A.elements[0].is_identity


def test_mother_section_groups_are_self_similar():
    A, B = mother_group(3)
    for n in (1, 2):
        A_n, B_n = section_groups(A, n, B)
        assert A_n.order == 72
        assert B_n.order == 6
    A_2, B_2 = section_groups_recursive(A, 2)
    assert (A_2.order, B_2.order) == (72, 6)


def test_mother_group_already_holds_the_h_sigma_elements():
    A, _ = mother_group(3)
    assert augment_with_h_sigma(A).order == A.order


def test_directed_spec_file():
    definition = load_directed_group(DIRECTED_TEXT)
    assert definition.name == "example"
    assert definition.tree == TERNARY
    assert len(definition.directed) == 1
    assert definition.rooted_names == ("b",)
    A = close_group(definition.directed, definition.tree)
    assert A.order > 1
    with pytest.raises(DirectedSpecError):
        load_directed_group("period: 3\nlevel 0 1 2\n")


def test_mother_sections_stabilize_at_the_root(mother3):
    classification = classify_sections(mother3.generators, 2, mother3.groups)
    assert classification.n0 == 0
    assert classification.classified
    assert classification.disjoint
    assert classification.A_vertices == (Vertex.root(2),)
    assert classification.B_vertices == tuple(sorted(anti_roots(TERNARY, 2), key=str))
    report = check_section_lemma(mother3.generators, classification, mother3.groups, levels=range(1, 3))
    assert report.holds
    assert report.checked == 77 * (3 + 9)


def test_hanoi_sections_follow_three_rays():
    hanoi = build_fixture("hanoi")
    tracker = SectionTracker(hanoi.generators)
    A, B, W = tracker.vertex_sets(3)
    assert A == (Vertex.root(3),)
    assert B == ()
    assert [str(v) for v in W] == ["000", "111", "222"]
    assert tracker.find_n0(max_level=4) is None


def test_sections_of_generators_sharing_a_name_stay_apart():
    hanoi = build_fixture("hanoi")
    a, b, _ = hanoi.generators
    tracker = SectionTracker([a.named("s"), b.named("s")])
    records = tracker.records_at(0)
    assert [record.generator.word for record in records] == [a.word, b.word]
    _, _, W = tracker.vertex_sets(3)
    assert [str(v) for v in W] == ["000", "111"]


def test_rooted_section_is_trivial_below_first_level(mother3):
    b = mother3.generator("b(01)")
    assert is_trivial(b * b)
    assert apply(b, "1") == Vertex.parse("0")
