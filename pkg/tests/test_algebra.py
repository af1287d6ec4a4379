# -*- coding: utf-8 -*-

"""
Tests for vertices, valencies, tree automorphisms and canonical keys.
"""

# **** IMPORTS ****
import itertools

import numpy as np
import pytest

from treewalk.algebra.valency import ValencySequence
from treewalk.algebra.vertex import Vertex, anti_roots, as_vertex, level_vertices, vertex_index
from treewalk.algebra.atoms import RootedPermutation
from treewalk.algebra.permutation import format_permutation, parse_permutation
from treewalk.algebra.portrait import apply_portrait, portrait
from treewalk.algebra.elements import ElementTable, section_group_generators, table_for
from treewalk.algebra.automorphism import (
    TreeAutomorphism,
    apply,
    equals,
    format_wreath_recursion,
    inverse,
    is_trivial,
    level_action,
    multiply,
    section,
    wreath_recursion,
)
from treewalk.fixtures import build_fixture, hanoi_automaton
from treewalk.exceptions import IncompatibleElementsError, InvalidVertexError, ValidationError

# **** FIXTURES ****
@pytest.fixture(scope="module")
def hanoi():
    aut = hanoi_automaton()
    return {name: aut.element(name) for name in ("a", "b", "c")}


# **** TESTS ****
def test_vertex_text_is_read_right_to_left():
    v = Vertex.parse("21")
    assert v.letters == (1, 2)
    assert v.letter(1) == 1
    assert str(v) == "21"
    assert v.level == 2
    assert str(Vertex.root(3)) == "000"
    assert str(Vertex(())) == "ε"


def test_vertex_rejects_bad_letters():
    with pytest.raises(InvalidVertexError):
        Vertex.parse("1x")
    with pytest.raises(InvalidVertexError):
        Vertex.parse("3").validate(ValencySequence.constant(3))


def test_anti_roots_and_level_order():
    tree = ValencySequence.constant(3)
    assert [str(v) for v in anti_roots(tree, 2)] == ["10", "20"]
    vertices = list(level_vertices(tree, 2))
    assert len(vertices) == 9
    assert [vertex_index(v, tree) for v in vertices] == list(range(9))
    assert as_vertex("12") == Vertex((2, 1))


def test_eventually_periodic_valency():
    tree = ValencySequence.of((2,), (3,))
    assert tree[1] == 2
    assert tree[2] == 3
    assert tree.volume(3) == 18
    assert tree.m_star == 3
    assert tree.shift(1) == ValencySequence.constant(3)
    assert tree.shift(1).is_constant
    with pytest.raises(ValidationError):
        ValencySequence.of((), ())


def test_permutation_text():
    assert format_permutation((0, 2, 1)) == "(12)"
    assert format_permutation((0, 1, 2)) == "e"
    assert parse_permutation("(12)", 3) == (0, 2, 1)
    assert parse_permutation("2 0 1", 3) == (2, 0, 1)


def test_overlapping_cycles_compose_left_to_right():
    assert parse_permutation("(01)(12)", 3) == (2, 0, 1)
    assert parse_permutation("(12)(01)", 3) == (1, 2, 0)
    assert parse_permutation("(01)(01)", 3) == (0, 1, 2)
    with pytest.raises(ValidationError):
        parse_permutation("(010)", 3)


def test_hanoi_action_on_vertices(hanoi):
    a = hanoi["a"]
    assert apply(a, "1") == Vertex.parse("2")
    assert apply(a, "00") == Vertex.parse("00")
    assert apply(a, "10") == Vertex.parse("20")
    assert apply(a, "01") == Vertex.parse("02")
    with pytest.raises(InvalidVertexError):
        apply(a, "3")


def _law_generators(name):
    generators = build_fixture(name).generators
    # mother3 has 77 generators; a few directed and rooted ones cover both kinds
    return generators if len(generators) <= 6 else generators[:4] + generators[-2:]


@pytest.mark.parametrize("name", ["hanoi", "mother3"])
@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_right_action_law(name, n):
    generators = _law_generators(name)
    tree = generators[0].valency
    for g, h in itertools.product(generators, repeat=2):
        gh = multiply(g, h)
        for v in level_vertices(tree, n):
            image = apply(gh, v)
            assert image == apply(h, apply(g, v))
            assert image.level == n


@pytest.mark.parametrize("name", ["hanoi", "mother3"])
@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_section_cocycle_and_inverse_law(name, n):
    generators = _law_generators(name)
    tree = generators[0].valency
    for g, h in itertools.product(generators, repeat=2):
        for v in level_vertices(tree, n):
            assert equals(section(g * h, v), section(g, v) * section(h, apply(g, v)))
    for g in generators:
        for v in level_vertices(tree, n):
            assert equals(section(inverse(g), apply(g, v)), inverse(section(g, v)))


def test_hanoi_generators_are_involutions(hanoi):
    a, b, c = hanoi["a"], hanoi["b"], hanoi["c"]
    for g in (a, b, c):
        assert is_trivial(g * g)
    assert not is_trivial(a * b)
    assert not equals(a, b)


def test_wreath_recursion(hanoi):
    a = hanoi["a"]
    sections, root = wreath_recursion(a)
    assert root == (0, 2, 1)
    assert equals(sections[0], a)
    assert is_trivial(sections[1]) and is_trivial(sections[2])
    assert format_wreath_recursion(a, {a: "a"}) == "(a,e,e)(12)"


def test_level_action_and_portrait(hanoi):
    a = hanoi["a"]
    assert list(level_action(a, 1)) == [0, 2, 1]
    p = portrait(a, 3)
    assert p.label("") == (0, 2, 1)
    assert p.label("0") == (0, 2, 1)
    assert p.label("1") == (0, 1, 2)
    for v in level_vertices(a.valency, 3):
        assert apply_portrait(p, v) == apply(a, v)


def test_element_table_canonical_keys(hanoi):
    a, b = hanoi["a"], hanoi["b"]
    table = table_for(a.valency)
    assert table.key(a * a) == table.identity
    assert table.product(table.key(a), table.key(a)) == table.identity
    assert table.inverse(table.key(a)) == table.key(a)
    assert table.key(a * b * b) == table.key(a)
    assert table.key(a * b) != table.key(b * a)
    assert np.array_equal(table.signature(table.key(a)), table.signature(a))


@pytest.mark.parametrize("long_first", [True, False])
def test_canonical_key_is_the_shortest_known_word(hanoi, long_first):
    a, b, c = hanoi["a"], hanoi["b"], hanoi["c"]
    table = ElementTable(a.valency)
    long_word = a * b * b * a * c
    if long_first:
        early = table.key(long_word)
        assert table.key(c).word == c.word
        assert table.key(early).word == c.word
    else:
        assert table.key(c).word == c.word
    assert table.key(long_word).word == c.word
    assert table.product(table.key(a), table.key(a * c)).word == c.word
    assert len(table) == 4  # e, c, a, a·c


def test_first_level_sections_generate_hanoi_again(hanoi):
    a, b, c = hanoi["a"], hanoi["b"], hanoi["c"]
    generators = section_group_generators([a, b, c], 1)
    assert {g.word for g in generators} == {a.word, b.word, c.word}
    assert section_group_generators([], 1) == set()


def test_elements_over_different_trees_do_not_mix():
    two = RootedPermutation((1, 0), ValencySequence.constant(2))
    three = RootedPermutation((1, 0, 2), ValencySequence.constant(3))
    with pytest.raises(IncompatibleElementsError):
        multiply(TreeAutomorphism.of(two), TreeAutomorphism.of(three))
