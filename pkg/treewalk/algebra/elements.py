# -*- coding: utf-8 -*-

"""
Canonical keys for group elements.

Each table stores one representative word per element met so far, the
length-lexicographically least one.  A new word is looked up by its action on a fixed
level (a blake3 fingerprint of the index permutation) and then confirmed
against the candidates of that bucket with the triviality oracle, so two
words share a key only if they are equal as automorphisms.
"""

# **** IMPORTS ****
import logging
import threading
from typing import Dict, Iterable, List, Optional, Set, Tuple

import numpy as np
from blake3 import blake3

from treewalk import config
from treewalk.algebra.atoms import Atom
from treewalk.algebra.valency import ValencySequence
from treewalk.algebra.vertex import Vertex, level_vertices, vertex_index
from treewalk.algebra.automorphism import (
    DEFAULT_ORACLE,
    TreeAutomorphism,
    TrivialityOracle,
    _act_atom,
    free_reduce,
    inverse,
    section,
)
from treewalk.exceptions import IncompatibleElementsError

# **** LOGGING ****
logger = logging.getLogger(__name__)

# **** CLASSES ****
class ElementTable:
    """
    Canonicalization table for elements over one valency sequence.

    The key of an element is the length-lexicographically least word the
    table has proved equal to it.  When a shorter word turns up later it
    takes over the bucket and the old representative becomes an alias, so
    keys handed out earlier still resolve through `key`.

    Attributes:
        valency (ValencySequence): Tree the elements act on.
        depth (int): Level whose action is used as the signature.
        oracle (TrivialityOracle): Arbiter of equality.
        generation (int): Number of representatives replaced so far.
    """

    def __init__(self, valency: ValencySequence, depth: Optional[int] = None, oracle: Optional[TrivialityOracle] = None):
        self.valency = valency
        self.depth = depth if depth is not None else signature_depth(valency)
        self.oracle = oracle or DEFAULT_ORACLE
        self.generation = 0
        self._lock = threading.RLock()
        self._vertices: List[Vertex] = list(level_vertices(valency, self.depth))
        self._atom_signatures: Dict[Atom, np.ndarray] = {}
        self._signatures: Dict[TreeAutomorphism, np.ndarray] = {}
        self._aliases: Dict[TreeAutomorphism, TreeAutomorphism] = {}
        self._buckets: Dict[bytes, List[TreeAutomorphism]] = {}
        self._products: Dict[Tuple[TreeAutomorphism, TreeAutomorphism], TreeAutomorphism] = {}
        self._inverses: Dict[TreeAutomorphism, TreeAutomorphism] = {}
        self.identity = TreeAutomorphism.identity(valency)
        identity_signature = np.arange(len(self._vertices), dtype=np.int64)
        self._signatures[self.identity] = identity_signature
        self._buckets[self._fingerprint(identity_signature)] = [self.identity]

    def __len__(self) -> int:
        return len(self._signatures) - len(self._aliases)

    def __contains__(self, key: TreeAutomorphism) -> bool:
        return key in self._signatures

    # **** SIGNATURES ****
    @staticmethod
    def _fingerprint(signature: np.ndarray) -> bytes:
        return blake3(signature.tobytes()).digest(length=16)

    def _atom_signature(self, atom: Atom) -> np.ndarray:
        with self._lock:
            signature = self._atom_signatures.get(atom)
            if signature is None:
                signature = np.empty(len(self._vertices), dtype=np.int64)
                for index, vertex in enumerate(self._vertices):
                    image = Vertex(_act_atom(atom, vertex.letters))
                    signature[index] = vertex_index(image, self.valency)
                self._atom_signatures[atom] = signature
            return signature

    def signature(self, g: TreeAutomorphism) -> np.ndarray:
        """Index permutation of the signature level induced by g."""
        known = self._signatures.get(g)
        if known is not None:
            return known
        signature = np.arange(len(self._vertices), dtype=np.int64)
        for atom in g.word:
            signature = self._atom_signature(atom)[signature]
        return signature

    # **** CANONICALIZATION ****
    def _check(self, g: TreeAutomorphism) -> None:
        if g.valency != self.valency:
            raise IncompatibleElementsError(f"{g} lives over {g.valency}, table is over {self.valency}")

    def _resolve(self, word: TreeAutomorphism) -> TreeAutomorphism:
        with self._lock:
            target = self._aliases.get(word)
            if target is None:
                return word
            chain = [word]
            while target in self._aliases:
                chain.append(target)
                target = self._aliases[target]
            for stale in chain:
                self._aliases[stale] = target
            return target

    def _lookup(self, word: TreeAutomorphism, signature: np.ndarray) -> TreeAutomorphism:
        fingerprint = self._fingerprint(signature)
        with self._lock:
            self._signatures[word] = signature
            bucket = self._buckets.setdefault(fingerprint, [])
            for index, candidate in enumerate(bucket):
                if not self.oracle.is_trivial_word(word.word + inverse(candidate).word, self.valency):
                    continue
                if word.sort_key() < candidate.sort_key():
                    bucket[index] = word
                    self._aliases[candidate] = word
                    self.generation += 1
                    logger.debug(f"{word} replaces {candidate} as canonical key")
                    return word
                self._aliases[word] = candidate
                return candidate
            bucket.append(word)
            return word

    def key(self, g: TreeAutomorphism) -> TreeAutomorphism:
        """
        Canonical representative of g.

        Raises:
            IncompatibleElementsError: If g lives over another tree.
            UndecidedError: If equality with a candidate cannot be decided in budget.
        """
        self._check(g)
        if g in self._signatures:
            return self._resolve(g)
        word = TreeAutomorphism(free_reduce(g.word), self.valency)
        if word in self._signatures:
            return self._resolve(word)
        return self._lookup(word, self.signature(word))

    def keys(self, elements: Iterable[TreeAutomorphism]) -> List[TreeAutomorphism]:
        return [self.key(element) for element in elements]

    def product(self, g: TreeAutomorphism, h: TreeAutomorphism) -> TreeAutomorphism:
        """Canonical key of g·h."""
        pair = (g, h)
        known = self._products.get(pair)
        if known is not None:
            return self._resolve(known)
        g, h = self.key(g), self.key(h)
        if not g.word:
            result = h
        elif not h.word:
            result = g
        else:
            word = TreeAutomorphism(free_reduce(g.word + h.word), self.valency)
            if word in self._signatures:
                result = self._resolve(word)
            else:
                signature = self._signatures[h][self._signatures[g]]
                result = self._lookup(word, signature)
        with self._lock:
            self._products[pair] = result
        return result

    def inverse(self, g: TreeAutomorphism) -> TreeAutomorphism:
        """Canonical key of g⁻¹."""
        known = self._inverses.get(g)
        if known is None:
            known = self.key(inverse(g))
            with self._lock:
                self._inverses[g] = known
                self._inverses[known] = self.key(g)
        return self._resolve(known)

    def equal(self, g: TreeAutomorphism, h: TreeAutomorphism) -> bool:
        return self.key(g) == self.key(h)


# **** FUNCTIONS ****
def signature_depth(valency: ValencySequence, minimum: Optional[int] = None) -> int:
    """Smallest level with at least `minimum` vertices (falls back to level 12 for degenerate trees)."""
    minimum = minimum if minimum is not None else config.SIGNATURE_VERTICES
    for n in range(1, 13):
        if valency.volume(n) >= minimum:
            return n
    return 12


_TABLES: Dict[ValencySequence, ElementTable] = {}
_TABLES_LOCK = threading.Lock()

def table_for(valency: ValencySequence) -> ElementTable:
    """Shared canonicalization table of a valency sequence."""
    with _TABLES_LOCK:
        table = _TABLES.get(valency)
        if table is None:
            table = ElementTable(valency)
            _TABLES[valency] = table
        return table


def canonical(g: TreeAutomorphism) -> TreeAutomorphism:
    """Canonical key of g in the shared table of its tree."""
    return table_for(g.valency).key(g)


def section_group_generators(S: Iterable[TreeAutomorphism], n: int) -> Set[TreeAutomorphism]:
    """
    Canonical nontrivial sections {s|_w : s ∈ S, w at level n}, the generators of the group of n-th level sections.
    """
    generators: Set[TreeAutomorphism] = set()
    elements = list(S)
    if not elements:
        return generators
    valency = elements[0].valency
    table = table_for(valency.shift(n))
    for vertex in level_vertices(valency, n):
        for element in elements:
            key = table.key(section(element, vertex))
            if key.word:
                generators.add(key)
    return generators


# ****
if __name__ == "__main__":
    raise Exception("This file is not meant to run on its own.")
