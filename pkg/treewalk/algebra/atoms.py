# -*- coding: utf-8 -*-

"""
Atomic generators of tree automorphisms.

An atom knows how it permutes the first-level letters and what its
first-level sections are.  Sections of atoms are atoms again (or the
identity, returned as None), which is what makes sections of words over
atoms computable.
"""

# **** IMPORTS ****
import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional, Tuple

from treewalk.algebra.valency import ValencySequence
from treewalk.algebra.permutation import (
    Images,
    format_permutation,
    identity_images,
    invert_images,
    is_identity_images,
    to_sympy,
    validate_images,
)

# **** LOGGING ****
logger = logging.getLogger(__name__)

# **** CLASSES ****
class Atom(ABC):
    """
    Interface shared by rooted permutations, automaton states and directed elements.

    Subclasses are immutable and hashable.
    """

    @property
    @abstractmethod
    def valency(self) -> ValencySequence:
        """Valency sequence of the tree the atom acts on."""

    @abstractmethod
    def act_letter(self, x: int) -> int:
        """Image of the first-level letter x."""

    @abstractmethod
    def first_section(self, x: int) -> Optional["Atom"]:
        """Section at the first-level vertex x, None when it is the identity."""

    @abstractmethod
    def inverse(self) -> "Atom":
        """Inverse atom."""

    @property
    @abstractmethod
    def is_identity(self) -> bool:
        """Structural identity test (may be False for atoms that act trivially)."""

    @property
    def kind(self) -> str:
        return type(self).__name__

    @property
    def root_images(self) -> Images:
        """Root permutation as an image tuple."""
        return tuple(self.act_letter(x) for x in range(self.valency.first))

    def sort_key(self) -> Tuple:
        return (self.kind, str(self))


@dataclass(frozen=True, eq=False)
class RootedPermutation(Atom):
    """
    Automorphism acting only on the first level.

    Attributes:
        images (Images): Images x·σ of the first-level letters.
        tree (ValencySequence): Valency sequence of the tree the permutation acts on.
    """
    images: Images
    tree: ValencySequence
    _key: Tuple = field(init=False, repr=False)

    def __post_init__(self):
        images = validate_images(self.images, self.tree.first)
        object.__setattr__(self, "images", images)
        object.__setattr__(self, "_key", (self.tree, images))

    def __eq__(self, other) -> bool:
        return isinstance(other, RootedPermutation) and self._key == other._key

    def __hash__(self) -> int:
        return hash(("rooted",) + self._key)

    def __str__(self) -> str:
        return format_permutation(self.images)

    @classmethod
    def identity(cls, tree: ValencySequence) -> "RootedPermutation":
        return cls(identity_images(tree.first), tree)

    @property
    def valency(self) -> ValencySequence:
        return self.tree

    @property
    def permutation(self):
        """The sympy permutation."""
        return to_sympy(self.images)

    @property
    def is_identity(self) -> bool:
        return is_identity_images(self.images)

    def act_letter(self, x: int) -> int:
        return self.images[x]

    def first_section(self, x: int) -> Optional[Atom]:
        return None

    @cached_property
    def _inverse(self) -> "RootedPermutation":
        return RootedPermutation(invert_images(self.images), self.tree)

    def inverse(self) -> "RootedPermutation":
        return self._inverse

    def multiply(self, other: "RootedPermutation") -> "RootedPermutation":
        return RootedPermutation(tuple(other.images[y] for y in self.images), self.tree)


# ****
if __name__ == "__main__":
    raise Exception("This file is not meant to run on its own.")
