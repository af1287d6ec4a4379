# -*- coding: utf-8 -*-

"""
Tree automorphisms as words over atoms.

Words are kept unnormalized; equality is decided by `is_trivial` on the
quotient, through a memoized search over section words shared by every
caller of the module-level oracle.
"""

# **** IMPORTS ****
import logging
import threading
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple

import numpy as np

from treewalk import config
from treewalk.algebra.atoms import Atom
from treewalk.algebra.valency import ValencySequence
from treewalk.algebra.vertex import Vertex, as_vertex, level_vertices, vertex_index
from treewalk.algebra.permutation import Images, format_permutation, is_identity_images
from treewalk.exceptions import IncompatibleElementsError, UndecidedError, UnsupportedError

# **** LOGGING ****
logger = logging.getLogger(__name__)

# **** TYPES ****
Word = Tuple[Atom, ...]

# **** CLASSES ****
@dataclass(frozen=True, eq=False)
class TreeAutomorphism:
    """
    Element of Aut(T_m̄) written as a product of atoms, leftmost acting first.

    Attributes:
        word (Tuple[Atom, ...]): Atoms s₁…s_k; the element acts as w ↦ (…(w·s₁)·s₂…)·s_k.
        valency (ValencySequence): Valency sequence of the tree the element acts on.
        name (str | None): Display name (generators of fixtures carry one).
    """
    word: Word
    valency: ValencySequence
    name: Optional[str] = field(default=None)
    _hash: int = field(init=False, repr=False)

    # **** DUNDER METHODS ****
    def __post_init__(self):
        word = tuple(atom for atom in self.word if not atom.is_identity)
        for atom in word:
            if atom.valency != self.valency:
                raise IncompatibleElementsError(
                    f"Atom {atom} lives over {atom.valency}, not {self.valency}",
                )
        object.__setattr__(self, "word", word)
        object.__setattr__(self, "_hash", hash((self.valency, word)))

    def __eq__(self, other) -> bool:
        """Word equality (use `equals` for equality as automorphisms)."""
        return (
            isinstance(other, TreeAutomorphism)
            and self._hash == other._hash
            and self.word == other.word
            and self.valency == other.valency
        )

    def __hash__(self) -> int:
        return self._hash

    def __str__(self) -> str:
        if self.name:
            return self.name
        if not self.word:
            return "e"
        return "·".join(str(atom) for atom in self.word)

    def __repr__(self) -> str:
        return f"TreeAutomorphism({self})"

    def __len__(self) -> int:
        return len(self.word)

    def __mul__(self, other: "TreeAutomorphism") -> "TreeAutomorphism":
        return multiply(self, other)

    # **** CLASS METHODS ****
    @classmethod
    def identity(cls, valency: ValencySequence) -> "TreeAutomorphism":
        return cls((), valency)

    @classmethod
    def of(cls, atom: Atom, name: Optional[str] = None) -> "TreeAutomorphism":
        return cls((atom,), atom.valency, name=name)

    # **** METHODS ****
    def named(self, name: Optional[str]) -> "TreeAutomorphism":
        return TreeAutomorphism(self.word, self.valency, name=name)

    def sort_key(self) -> Tuple:
        return (len(self.word), tuple(atom.sort_key() for atom in self.word))


class TrivialityOracle:
    """
    Memoized decision procedure for "g acts trivially".

    A word is trivial iff its root permutation is the identity and every
    first-level section is trivial.  The search explores section words
    depth first; a word met again on the current exploration is assumed
    trivial, which is sound because any nontrivial word is refuted at a
    finite depth.  The table of decided words is shared and guarded by a lock.

    Attributes:
        budget (int): Maximum number of distinct words explored per query.
    """

    def __init__(self, budget: Optional[int] = None):
        self.budget = budget if budget is not None else config.TRIVIALITY_BUDGET
        self._known: Dict[Tuple[ValencySequence, Word], bool] = {}
        self._lock = threading.RLock()

    def __len__(self) -> int:
        return len(self._known)

    def clear(self) -> None:
        with self._lock:
            self._known.clear()

    def is_trivial(self, g: TreeAutomorphism) -> bool:
        return self.is_trivial_word(g.word, g.valency)

    def is_trivial_word(self, word: Word, valency: ValencySequence) -> bool:
        """
        Raises:
            UndecidedError: If more than `budget` section words are needed.
            UnsupportedError: If the word holds something that is not an atom.
        """
        word = free_reduce(word)
        if not word:
            return True
        top = (valency, word)
        with self._lock:
            known = self._known.get(top)
        if known is not None:
            return known

        visited: Set[Tuple[ValencySequence, Word]] = set()
        stack: List[Tuple[ValencySequence, Word]] = [top]
        trivial = True
        while stack:
            current = stack.pop()
            if current in visited:
                continue
            with self._lock:
                known = self._known.get(current)
            if known is True:
                continue
            if known is False:
                trivial = False
                break
            visited.add(current)
            if len(visited) > self.budget:
                raise UndecidedError(
                    f"Triviality of a word of length {len(word)} needs more than {self.budget} section words",
                    budget=self.budget,
                    word=" ".join(str(atom) for atom in word),
                )

            current_valency, current_word = current
            sections, moved = first_level_decomposition(current_word, current_valency.first)
            if moved:
                trivial = False
                with self._lock:
                    self._known[current] = False
                break
            child_valency = current_valency.shift(1)
            for section_word in sections:
                reduced = free_reduce(section_word)
                if reduced:
                    stack.append((child_valency, reduced))

        with self._lock:
            if trivial:
                for key in visited:
                    self._known[key] = True
            else:
                self._known[top] = False
        return trivial


# **** FUNCTIONS ****
def _check_atom(atom) -> Atom:
    if not isinstance(atom, Atom):
        raise UnsupportedError(f"{atom!r} is not a tree automorphism atom")
    return atom


def free_reduce(word: Sequence[Atom]) -> Word:
    """Cancels adjacent pairs s·s⁻¹ and drops structural identities."""
    stack: List[Atom] = []
    for atom in word:
        _check_atom(atom)
        if atom.is_identity:
            continue
        if stack and stack[-1].inverse() == atom:
            stack.pop()
        else:
            stack.append(atom)
    return tuple(stack)


def first_level_decomposition(word: Word, m: int) -> Tuple[List[Word], bool]:
    """
    Sections of `word` at the first-level letters, and whether its root permutation moves a letter.
    """
    sections: List[Word] = []
    moved = False
    for x in range(m):
        y = x
        section: List[Atom] = []
        for atom in word:
            child = atom.first_section(y)
            if child is not None:
                section.append(child)
            y = atom.act_letter(y)
        if y != x:
            moved = True
            break
        sections.append(tuple(section))
    return sections, moved


def _require_same_tree(g: TreeAutomorphism, h: TreeAutomorphism) -> None:
    if g.valency != h.valency:
        raise IncompatibleElementsError(f"{g} lives over {g.valency} but {h} over {h.valency}")


def multiply(g: TreeAutomorphism, h: TreeAutomorphism) -> TreeAutomorphism:
    """Word concatenation g·h (g acts first).

    Raises:
        IncompatibleElementsError: If the valency sequences differ.
    """
    _require_same_tree(g, h)
    if not h.word:
        return g
    if not g.word:
        return h
    return TreeAutomorphism(g.word + h.word, g.valency)


def multiply_all(elements: Iterable[TreeAutomorphism], valency: ValencySequence) -> TreeAutomorphism:
    word: List[Atom] = []
    for element in elements:
        if element.valency != valency:
            raise IncompatibleElementsError(f"{element} lives over {element.valency}, not {valency}")
        word.extend(element.word)
    return TreeAutomorphism(tuple(word), valency)


def inverse(g: TreeAutomorphism) -> TreeAutomorphism:
    """Reversed word of inverted atoms."""
    return TreeAutomorphism(tuple(atom.inverse() for atom in reversed(g.word)), g.valency)


def _act_atom(atom: Optional[Atom], letters: Sequence[int]) -> Tuple[int, ...]:
    out: List[int] = []
    current = atom
    for index, x in enumerate(letters):
        if current is None:
            out.extend(letters[index:])
            break
        out.append(current.act_letter(x))
        current = current.first_section(x)
    return tuple(out)


def apply(g: TreeAutomorphism, w: "Vertex | str") -> Vertex:
    """
    Image w·g.

    Raises:
        InvalidVertexError: If a letter of w is outside its alphabet.
    """
    vertex = as_vertex(w).validate(g.valency)
    letters = vertex.letters
    for atom in g.word:
        letters = _act_atom(atom, letters)
    return Vertex(letters)


def atom_section(atom: Atom, letters: Sequence[int]) -> Optional[Atom]:
    """Section of a single atom along the vertex with the given letters."""
    current: Optional[Atom] = atom
    for x in letters:
        if current is None:
            return None
        current = current.first_section(x)
    return current


def section(g: TreeAutomorphism, w: "Vertex | str") -> TreeAutomorphism:
    """
    Section g|_w over the shifted valency sequence, via (gh)|_w = g|_w·h|_{w·g}.

    Raises:
        InvalidVertexError: If a letter of w is outside its alphabet.
    """
    vertex = as_vertex(w).validate(g.valency)
    letters = vertex.letters
    word: List[Atom] = []
    for atom in g.word:
        child = atom_section(atom, letters)
        if child is not None:
            word.append(child)
        letters = _act_atom(atom, letters)
    return TreeAutomorphism(tuple(word), g.valency.shift(vertex.level))


def root_images(g: TreeAutomorphism) -> Images:
    """Root permutation of g as an image tuple."""
    m = g.valency.first
    images = list(range(m))
    for atom in g.word:
        images = [atom.act_letter(y) for y in images]
    return tuple(images)


def wreath_recursion(g: TreeAutomorphism) -> Tuple[Tuple[TreeAutomorphism, ...], Images]:
    """First-level decomposition g = (g|_0, …, g|_{m₁−1})σ."""
    sections = tuple(section(g, Vertex((x,))) for x in range(g.valency.first))
    return sections, root_images(g)


def format_wreath_recursion(g: TreeAutomorphism, names: Optional[Dict[TreeAutomorphism, str]] = None) -> str:
    """Text such as "(a,e,e)(12)"; sections equal to a named element print its name."""
    sections, images = wreath_recursion(g)
    parts = []
    for child in sections:
        label = None
        if names:
            for element, element_name in names.items():
                if element.valency == child.valency and equals(child, element):
                    label = element_name
                    break
        if label is None:
            label = "e" if is_trivial(child) else str(child)
        parts.append(label)
    root = format_permutation(images)
    return "(" + ",".join(parts) + ")" + ("" if root == "e" else root)


def level_action(g: TreeAutomorphism, n: int) -> np.ndarray:
    """Permutation of the level-n vertex indices induced by g."""
    vertices = list(level_vertices(g.valency, n))
    images = np.empty(len(vertices), dtype=np.int64)
    for index, vertex in enumerate(vertices):
        images[index] = vertex_index(apply(g, vertex), g.valency)
    return images


def moved_vertex(g: TreeAutomorphism, max_level: int) -> Optional[Vertex]:
    """A vertex of level ≤ `max_level` moved by g, or None."""
    for n in range(1, max_level + 1):
        for vertex in level_vertices(g.valency, n):
            if apply(g, vertex) != vertex:
                return vertex
    return None


DEFAULT_ORACLE = TrivialityOracle()

def is_trivial(g: TreeAutomorphism, oracle: Optional[TrivialityOracle] = None) -> bool:
    """
    Whether g acts trivially on every level.

    Raises:
        UndecidedError: If the memoization budget is exhausted.
    """
    return (oracle or DEFAULT_ORACLE).is_trivial(g)


def equals(g: TreeAutomorphism, h: TreeAutomorphism, oracle: Optional[TrivialityOracle] = None) -> bool:
    """g = h as automorphisms, decided by is_trivial(g·h⁻¹)."""
    _require_same_tree(g, h)
    return is_trivial(multiply(g, inverse(h)), oracle)


def is_root_trivial(g: TreeAutomorphism) -> bool:
    return is_identity_images(root_images(g))


# ****
if __name__ == "__main__":
    raise Exception("This file is not meant to run on its own.")
