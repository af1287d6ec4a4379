# -*- coding: utf-8 -*-

"""
Portraits: the permutation an automorphism induces below each vertex.
"""

# **** IMPORTS ****
import logging
from dataclasses import dataclass
from typing import Dict, List, Tuple

from treewalk.algebra.vertex import Vertex
from treewalk.algebra.atoms import Atom
from treewalk.algebra.automorphism import TreeAutomorphism
from treewalk.algebra.permutation import Images, format_permutation, is_identity_images, to_sympy
from treewalk.exceptions import ValidationError

# **** LOGGING ****
logger = logging.getLogger(__name__)

# **** CLASSES ****
@dataclass(frozen=True)
class Portrait:
    """
    Truncated portrait of an automorphism.

    Attributes:
        depth (int): Labels exist for vertices of levels 0..depth−1.
        labels (Dict[Vertex, Images]): Permutation of the children of each vertex.
    """
    depth: int
    labels: Dict[Vertex, Images]

    def __hash__(self) -> int:
        return hash((self.depth, tuple(sorted(self.labels.items()))))

    def label(self, vertex: "Vertex | str") -> Images:
        key = vertex if isinstance(vertex, Vertex) else Vertex.parse(vertex)
        return self.labels[key]

    def permutation(self, vertex: "Vertex | str"):
        """Label as a sympy permutation."""
        return to_sympy(self.label(vertex))

    @property
    def is_identity(self) -> bool:
        return all(is_identity_images(images) for images in self.labels.values())

    def to_dict(self) -> Dict:
        """Nested map {level: {vertex: cycle notation}} for serialization."""
        nested: Dict[str, Dict[str, str]] = {}
        for vertex in sorted(self.labels, key=lambda v: (v.level, str(v))):
            nested.setdefault(str(vertex.level), {})[str(vertex)] = format_permutation(self.labels[vertex])
        return {"depth": self.depth, "labels": nested}


# **** FUNCTIONS ****
def _root_and_sections(word: Tuple[Atom, ...], m: int) -> Tuple[Images, List[Tuple[Atom, ...]]]:
    images = []
    sections = []
    for x in range(m):
        y = x
        section: List[Atom] = []
        for atom in word:
            child = atom.first_section(y)
            if child is not None:
                section.append(child)
            y = atom.act_letter(y)
        images.append(y)
        sections.append(tuple(section))
    return tuple(images), sections


def portrait(g: TreeAutomorphism, depth: int) -> Portrait:
    """
    Portrait of g down to `depth` levels.

    Raises:
        ValidationError: If depth is negative.
    """
    if depth < 0:
        raise ValidationError(f"Portrait depth must be non-negative, got {depth}")
    labels: Dict[Vertex, Images] = {}
    frontier: List[Tuple[Vertex, Tuple[Atom, ...]]] = [(Vertex(()), g.word)]
    for level in range(depth):
        m = g.valency[level + 1]
        next_frontier = []
        for vertex, word in frontier:
            images, sections = _root_and_sections(word, m)
            labels[vertex] = images
            for x in range(m):
                next_frontier.append((vertex.child(x), sections[x]))
        frontier = next_frontier
    return Portrait(depth=depth, labels=labels)


def apply_portrait(p: Portrait, w: Vertex) -> Vertex:
    """Image of a vertex of level ≤ depth under the automorphism the portrait describes."""
    if w.level > p.depth:
        raise ValidationError(f"Portrait of depth {p.depth} cannot act on level {w.level}")
    out = []
    for position in range(w.level):
        out.append(p.labels[w.prefix(position)][w.letters[position]])
    return Vertex(tuple(out))


# ****
if __name__ == "__main__":
    raise Exception("This file is not meant to run on its own.")
