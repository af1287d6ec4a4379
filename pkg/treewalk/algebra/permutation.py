# -*- coding: utf-8 -*-

"""
Permutations of a finite alphabet {0, …, m−1}.

`sympy.combinatorics.Permutation` is the public permutation type.  Hot loops
work on plain image tuples where `images[x]` is the image x·p of the letter x;
composition is the right action, so (p·q)[x] = q[p[x]].
"""

# **** IMPORTS ****
import re
import itertools
import logging
from typing import Iterable, Sequence, Tuple, Union

from sympy.combinatorics import Permutation

from treewalk.exceptions import ValidationError

# **** LOGGING ****
logger = logging.getLogger(__name__)

# **** TYPES ****
Images = Tuple[int, ...]
PermutationLike = Union[Permutation, Sequence[int]]

# **** CONSTANTS ****
CYCLE_PATTERN = re.compile(r"\(([^()]*)\)")

# **** FUNCTIONS ****
def validate_images(images: Sequence[int], m: int) -> Images:
    """
    Checks that `images` is a bijection of {0, …, m−1}.

    Raises:
        ValidationError: If the length or the image set is wrong.
    """
    images = tuple(int(value) for value in images)
    if len(images) != m:
        raise ValidationError(f"Permutation {list(images)} has length {len(images)}, expected {m}")
    if sorted(images) != list(range(m)):
        raise ValidationError(f"Images {list(images)} are not a bijection of 0..{m - 1}")
    return images


def to_images(permutation: PermutationLike, m: int) -> Images:
    """Image tuple of length m (sympy permutations of smaller size are padded with fixed points)."""
    if isinstance(permutation, Permutation):
        array = list(permutation.array_form)
        if len(array) > m:
            if any(array[x] != x for x in range(m, len(array))):
                raise ValidationError(f"Permutation {permutation} moves letters beyond {m - 1}")
            array = array[:m]
        array.extend(range(len(array), m))
        return validate_images(array, m)
    return validate_images(permutation, m)


def to_sympy(images: Sequence[int]) -> Permutation:
    return Permutation(list(images), size=len(images))


def identity_images(m: int) -> Images:
    return tuple(range(m))


def is_identity_images(images: Images) -> bool:
    return all(x == y for x, y in enumerate(images))


def compose_images(first: Images, second: Images) -> Images:
    """Right-action product: apply `first`, then `second`."""
    return tuple(second[y] for y in first)


def invert_images(images: Images) -> Images:
    inverse = [0] * len(images)
    for x, y in enumerate(images):
        inverse[y] = x
    return tuple(inverse)


def format_permutation(images: Images) -> str:
    """Cycle notation such as "(12)", "e" for the identity."""
    cycles = to_sympy(images).cyclic_form
    if not cycles:
        return "e"
    wide = len(images) > 10
    parts = []
    for cycle in cycles:
        if wide:
            parts.append("(" + " ".join(str(x) for x in cycle) + ")")
        else:
            parts.append("(" + "".join(str(x) for x in cycle) + ")")
    return "".join(parts)


def parse_permutation(text: str, m: int) -> Images:
    """
    Reads cycle notation "(12)(03)", "e", or an explicit image list "0 2 1".

    Cycles compose left to right, so "(01)(12)" sends 0 to 2.

    Raises:
        ValidationError: If the text is neither form, names a letter ≥ m or repeats a letter in a cycle.
    """
    cleaned = text.strip()
    if cleaned in ("e", "()", "id"):
        return identity_images(m)
    if cleaned.startswith("("):
        product = Permutation(list(range(m)))
        for body in CYCLE_PATTERN.findall(cleaned):
            tokens = body.split() if (" " in body or "," in body) else list(body)
            cycle = [int(token) for token in " ".join(tokens).replace(",", " ").split()]
            if not cycle:
                continue
            if any(x < 0 or x >= m for x in cycle):
                raise ValidationError(f"Cycle {body!r} names a letter outside 0..{m - 1}")
            if len(set(cycle)) != len(cycle):
                raise ValidationError(f"Cycle {body!r} repeats a letter")
            product = product * Permutation([cycle], size=m)
        return to_images(product, m)
    tokens = cleaned.replace(",", " ").replace("[", " ").replace("]", " ").split()
    try:
        return validate_images([int(token) for token in tokens], m)
    except ValueError as exc:
        raise ValidationError(f"Cannot read permutation {text!r}") from exc


def transposition(m: int, x: int, y: int) -> Images:
    images = list(range(m))
    images[x], images[y] = images[y], images[x]
    return tuple(images)


def all_images(m: int) -> Iterable[Images]:
    """Every permutation of {0, …, m−1} as image tuples, in lexicographic order."""
    return itertools.permutations(range(m))


# ****
if __name__ == "__main__":
    raise Exception("This file is not meant to run on its own.")
