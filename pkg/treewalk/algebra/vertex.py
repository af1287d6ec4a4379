# -*- coding: utf-8 -*-

"""
Vertices of a spherically homogeneous rooted tree.

Letters are stored first level first: `letters[0]` is position 1, the
rightmost letter of the textual form.  Text is written right to left, so the
child `xv` of `v` appends `x` to the stored tuple and prints it on the left.
"""

# **** IMPORTS ****
import logging
import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence, Tuple

from treewalk.algebra.valency import ValencySequence
from treewalk.exceptions import InvalidVertexError

# **** LOGGING ****
logger = logging.getLogger(__name__)

# **** CLASSES ****
@dataclass(frozen=True, order=True)
class Vertex:
    """
    A word x_n…x_1 naming a vertex at level n.

    Attributes:
        letters (Tuple[int, ...]): (x_1, ..., x_n), position 1 first.
    """
    letters: Tuple[int, ...] = ()

    # **** DUNDER METHODS ****
    def __str__(self) -> str:
        if not self.letters:
            return "ε"
        if all(letter < 10 for letter in self.letters):
            return "".join(str(letter) for letter in reversed(self.letters))
        return ",".join(str(letter) for letter in reversed(self.letters))

    def __len__(self) -> int:
        return len(self.letters)

    # **** CLASS METHODS ****
    @classmethod
    def parse(cls, text: str) -> "Vertex":
        """
        Reads the textual form: digits right to left ("21" has x_1 = 1),
        optionally separated by spaces or commas for valencies above 10.

        Raises:
            InvalidVertexError: If a token is not a non-negative integer.
        """
        cleaned = text.strip()
        if cleaned in ("", "ε", "e"):
            return cls(())
        if "," in cleaned or " " in cleaned:
            tokens = [token for token in cleaned.replace(",", " ").split() if token]
        else:
            tokens = list(cleaned)
        try:
            values = [int(token) for token in tokens]
        except ValueError as exc:
            raise InvalidVertexError(f"Cannot read vertex {text!r}") from exc
        if any(value < 0 for value in values):
            raise InvalidVertexError(f"Negative letter in vertex {text!r}")
        return cls(tuple(reversed(values)))

    @classmethod
    def root(cls, n: int) -> "Vertex":
        """r_n = 0…0 at level n."""
        return cls((0,) * n)

    # **** PROPERTIES ****
    @property
    def level(self) -> int:
        return len(self.letters)

    # **** METHODS ****
    def letter(self, position: int) -> int:
        """Letter at 1-based `position` (1 is rightmost)."""
        return self.letters[position - 1]

    def child(self, x: int) -> "Vertex":
        """The vertex xv one level below."""
        return Vertex(self.letters + (x,))

    def prefix(self, n: int) -> "Vertex":
        """The ancestor at level `n` (positions 1..n)."""
        return Vertex(self.letters[:n])

    def suffix_from(self, n: int) -> "Vertex":
        """Letters at positions n+1.. as a vertex of the shifted tree."""
        return Vertex(self.letters[n:])

    def validate(self, valency: ValencySequence) -> "Vertex":
        """
        Checks every letter against the governing valencies.

        Raises:
            InvalidVertexError: If a letter at position i is not below m_i.
        """
        for position, letter in enumerate(self.letters, start=1):
            if letter < 0 or letter >= valency[position]:
                raise InvalidVertexError(
                    f"Letter {letter} at position {position} of {self} is outside 0..{valency[position] - 1}",
                    vertex=str(self),
                    position=position,
                )
        return self


# **** FUNCTIONS ****
def level_vertices(valency: ValencySequence, n: int) -> Iterator[Vertex]:
    """All vertices of level n, in lexicographic order of their textual form."""
    ranges = [range(valency[position]) for position in range(n, 0, -1)]
    for word in itertools.product(*ranges):
        yield Vertex(tuple(reversed(word)))


def vertex_index(vertex: Vertex, valency: ValencySequence) -> int:
    """Position of `vertex` in `level_vertices` order."""
    index = 0
    for position in range(vertex.level, 0, -1):
        index = index * valency[position] + vertex.letters[position - 1]
    return index


def anti_roots(valency: ValencySequence, n: int) -> Tuple[Vertex, ...]:
    """The vertices x0…0 with x ≠ 0 at position n."""
    if n == 0:
        return ()
    return tuple(Vertex((0,) * (n - 1) + (x,)) for x in range(1, valency[n]))


def as_vertex(value: "Vertex | str | Sequence[int]") -> Vertex:
    if isinstance(value, Vertex):
        return value
    if isinstance(value, str):
        return Vertex.parse(value)
    return Vertex(tuple(value))


# ****
if __name__ == "__main__":
    raise Exception("This file is not meant to run on its own.")
