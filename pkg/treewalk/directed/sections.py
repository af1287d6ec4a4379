# -*- coding: utf-8 -*-

"""
Where the generators of a principal directed group keep nontrivial sections.

Nontrivial sections are followed level by level from the root, so a level
is never scanned vertex by vertex.  Each (generator, vertex) section is put
in class "A" (a directed element, in A_n) or class "B" (a rooted
permutation, in B_n); anything else leaves the level unstable.
"""

# **** IMPORTS ****
import logging
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from treewalk import config
from treewalk.algebra.atoms import Atom, RootedPermutation
from treewalk.algebra.vertex import Vertex, level_vertices
from treewalk.algebra.automorphism import (
    TreeAutomorphism,
    equals,
    free_reduce,
    is_trivial,
    root_images,
    section,
)
from treewalk.algebra.permutation import is_identity_images
from treewalk.directed.directed import DirectedElement
from treewalk.directed.groups import FinitePermGroup, section_groups
from treewalk.exceptions import PreconditionError, ResourceError

# **** LOGGING ****
logger = logging.getLogger(__name__)

# **** CONSTANTS ****
CLASS_A = "A"
CLASS_B = "B"

# **** CLASSES ****
@dataclass(frozen=True)
class SectionRecord:
    """
    Attributes:
        generator (TreeAutomorphism): The generator s.
        vertex (Vertex): Vertex v carrying the section.
        section (TreeAutomorphism): s|_v, collapsed to a single atom when possible.
        kind (str | None): "A", "B", or None when the section is in neither class.
    """
    generator: TreeAutomorphism
    vertex: Vertex
    section: TreeAutomorphism
    kind: Optional[str]


@dataclass(frozen=True)
class SectionClassification:
    """
    Attributes:
        level (int): Level n.
        A_vertices (Tuple[Vertex, ...]): 𝔸_n, vertices with a section of class A.
        B_vertices (Tuple[Vertex, ...]): 𝔹_n, vertices with a section of class B.
        suffixes (Tuple[Vertex, ...]): The stable suffixes w_j (level n₀), sorted; empty when n₀ is unknown.
        n0 (int | None): Least level from which the suffix structure is stable, None if not found.
        records (Tuple[SectionRecord, ...]): Every nontrivial generator section at level n.
        watched (Tuple[Vertex, ...]): 𝕎_n, every vertex carrying a nontrivial section.
    """
    level: int
    A_vertices: Tuple[Vertex, ...]
    B_vertices: Tuple[Vertex, ...]
    suffixes: Tuple[Vertex, ...]
    n0: Optional[int]
    records: Tuple[SectionRecord, ...]
    watched: Tuple[Vertex, ...]

    @property
    def sections(self) -> Dict[Tuple[TreeAutomorphism, Vertex], Tuple[TreeAutomorphism, Optional[str]]]:
        return {(record.generator, record.vertex): (record.section, record.kind) for record in self.records}

    @property
    def classified(self) -> bool:
        return all(record.kind is not None for record in self.records)

    @property
    def disjoint(self) -> bool:
        return not set(self.A_vertices) & set(self.B_vertices)

    @property
    def stable(self) -> bool:
        """Whether the level is at or above n₀."""
        return self.n0 is not None and self.level >= self.n0

    def vertex_class(self, vertex: Vertex) -> Optional[str]:
        if vertex in self.A_vertices:
            return CLASS_A
        if vertex in self.B_vertices:
            return CLASS_B
        return None


@dataclass(frozen=True)
class SectionLemmaReport:
    """
    Attributes:
        levels (Tuple[int, ...]): Levels checked exhaustively.
        checked (int): Number of (generator, vertex) pairs inspected.
        violations (Tuple[str, ...]): Human-readable failures.
    """
    levels: Tuple[int, ...]
    checked: int
    violations: Tuple[str, ...]

    @property
    def holds(self) -> bool:
        return not self.violations


class SectionTracker:
    """
    Follows the nontrivial sections of a generating set down the tree.

    Attributes:
        generators (Tuple[TreeAutomorphism, ...]): The set S.
        groups (Tuple[FinitePermGroup, FinitePermGroup] | None): (A, B) used for membership checks.
    """

    def __init__(
        self,
        S: Sequence[TreeAutomorphism],
        groups: Optional[Tuple[FinitePermGroup, FinitePermGroup]] = None,
    ):
        self.generators = tuple(S)
        if not self.generators:
            raise PreconditionError("Section classification needs at least one generator")
        self._order = {s: index for index, s in enumerate(self.generators)}
        self.valency = self.generators[0].valency
        self.groups = groups
        self._section_groups: Dict[int, Tuple[FinitePermGroup, FinitePermGroup]] = {}
        root = Vertex(())
        first: Dict[Tuple[TreeAutomorphism, Vertex], TreeAutomorphism] = {}
        for s in self.generators:
            collapsed = _collapse(s)
            if collapsed.word and not is_trivial(collapsed):
                first[(s, root)] = collapsed
        self._levels: List[Dict[Tuple[TreeAutomorphism, Vertex], TreeAutomorphism]] = [first]
        self._records: Dict[int, Tuple[SectionRecord, ...]] = {}

    # **** LEVELS ****
    def sections_at(self, n: int) -> Dict[Tuple[TreeAutomorphism, Vertex], TreeAutomorphism]:
        while len(self._levels) <= n:
            self._levels.append(self._descend(self._levels[-1], len(self._levels) - 1))
        return self._levels[n]

    def _descend(self, current: Dict[Tuple[TreeAutomorphism, Vertex], TreeAutomorphism], level: int) -> Dict[Tuple[TreeAutomorphism, Vertex], TreeAutomorphism]:
        following: Dict[Tuple[TreeAutomorphism, Vertex], TreeAutomorphism] = {}
        m = self.valency[level + 1]
        for (s, vertex), g in current.items():
            for x in range(m):
                child = _collapse(section(g, Vertex((x,))))
                if not child.word or is_trivial(child):
                    continue
                following[(s, vertex.child(x))] = child
        if len(following) > config.VERTEX_BUDGET:
            raise ResourceError(f"Level {level + 1} carries {len(following)} nontrivial sections", level=level + 1)
        logger.debug(f"Level {level + 1}: {len(following)} nontrivial generator sections")
        return following

    def groups_at(self, n: int) -> Optional[Tuple[FinitePermGroup, FinitePermGroup]]:
        if self.groups is None:
            return None
        known = self._section_groups.get(n)
        if known is None:
            A, B = self.groups
            known = section_groups(A, n, B)
            self._section_groups[n] = known
        return known

    def records_at(self, n: int) -> Tuple[SectionRecord, ...]:
        known = self._records.get(n)
        if known is None:
            groups = self.groups_at(n)
            known = tuple(
                SectionRecord(s, vertex, g, classify_element(g, groups))
                for (s, vertex), g in sorted(self.sections_at(n).items(), key=lambda item: (str(item[0][1]), self._order[item[0][0]]))
            )
            self._records[n] = known
        return known

    def vertex_sets(self, n: int) -> Tuple[Tuple[Vertex, ...], Tuple[Vertex, ...], Tuple[Vertex, ...]]:
        """(𝔸_n, 𝔹_n, 𝕎_n), each sorted by textual form."""
        records = self.records_at(n)
        A = sorted({r.vertex for r in records if r.kind == CLASS_A}, key=str)
        B = sorted({r.vertex for r in records if r.kind == CLASS_B}, key=str)
        W = sorted({r.vertex for r in records}, key=str)
        return tuple(A), tuple(B), tuple(W)

    # **** STABILIZATION ****
    def suffixes_from(self, n: int) -> Tuple[Vertex, ...]:
        A_next, _, _ = self.vertex_sets(n + 1)
        return tuple(sorted({vertex.prefix(n) for vertex in A_next}, key=str))

    def stable_at(self, n: int, span: int = 3) -> bool:
        """Whether level n classifies fully and levels n+1..n+span follow the suffix pattern."""
        if not all(record.kind is not None for record in self.records_at(n)):
            return False
        suffixes = self.suffixes_from(n)
        for k in range(n + 1, n + span + 1):
            records = self.records_at(k)
            if not all(record.kind is not None for record in records):
                return False
            A, B, _ = self.vertex_sets(k)
            if set(A) & set(B):
                return False
            expected_A = {Vertex(w.letters + (0,) * (k - n)) for w in suffixes}
            if set(A) != expected_A:
                return False
            allowed_B = {
                Vertex(w.letters + (0,) * (k - n - 1) + (x,))
                for w in suffixes
                for x in range(1, self.valency[k])
            }
            if not set(B) <= allowed_B:
                return False
        return True

    def find_n0(self, max_level: Optional[int] = None) -> Optional[int]:
        cap = max_level if max_level is not None else config.MAX_STABLE_LEVEL
        for n in range(cap + 1):
            if self.stable_at(n):
                return n
        logger.warning(f"Section structure did not stabilize by level {cap}")
        return None

    def classification(self, n: int, n0: Optional[int]) -> SectionClassification:
        A, B, W = self.vertex_sets(n)
        suffixes = self.suffixes_from(n0) if n0 is not None else ()
        return SectionClassification(
            level=n,
            A_vertices=A,
            B_vertices=B,
            suffixes=suffixes,
            n0=n0,
            records=self.records_at(n),
            watched=W,
        )


# **** FUNCTIONS ****
def _collapse(g: TreeAutomorphism) -> TreeAutomorphism:
    """Multiplies out words made only of directed elements or only of rooted permutations."""
    word = free_reduce(g.word)
    if len(word) <= 1:
        return TreeAutomorphism(word, g.valency, g.name)
    if all(isinstance(atom, DirectedElement) for atom in word):
        product = word[0]
        for atom in word[1:]:
            product = product.multiply(atom)
        return TreeAutomorphism((product,), g.valency)
    if all(isinstance(atom, RootedPermutation) for atom in word):
        product = word[0]
        for atom in word[1:]:
            product = product.multiply(atom)
        return TreeAutomorphism((product,), g.valency)
    return TreeAutomorphism(word, g.valency)


def _single(g: TreeAutomorphism) -> Optional[Atom]:
    return g.word[0] if len(g.word) == 1 else None


def _first_sections_trivial(g: TreeAutomorphism, letters: Iterable[int]) -> bool:
    return all(is_trivial(section(g, Vertex((x,)))) for x in letters)


def classify_element(g: TreeAutomorphism, groups: Optional[Tuple[FinitePermGroup, FinitePermGroup]] = None) -> Optional[str]:
    """
    "A" when g is directed (in A_n if groups are given), "B" when g is a rooted permutation
    (in B_n if groups are given), None otherwise.
    """
    atom = _single(g)
    m = g.valency.first
    if isinstance(atom, DirectedElement):
        if groups is None or atom in groups[0]:
            return CLASS_A
        return None
    if isinstance(atom, RootedPermutation):
        if groups is None or atom in groups[1]:
            return CLASS_B
        return None

    images = root_images(g)
    if _first_sections_trivial(g, range(m)):
        if groups is None:
            return CLASS_B
        rooted = RootedPermutation(images, g.valency)
        return CLASS_B if rooted in groups[1] else None

    if groups is None:
        if images[0] == 0 and all(
            _first_sections_trivial(section(g, Vertex((x,))), range(g.valency[2])) for x in range(1, m)
        ):
            return CLASS_A
        return None
    for candidate in groups[0].elements:
        if isinstance(candidate, DirectedElement) and candidate.root_images == images:
            if equals(g, TreeAutomorphism.of(candidate)):
                return CLASS_A
    return None


def classify_sections(
    S: Sequence[TreeAutomorphism],
    n: int,
    groups: Optional[Tuple[FinitePermGroup, FinitePermGroup]] = None,
    max_level: Optional[int] = None,
    tracker: Optional[SectionTracker] = None,
) -> SectionClassification:
    """
    Classifies the level-n sections of S and detects the stabilization level n₀.

    Args:
        S: Generators, words over directed and rooted atoms (any atoms are accepted; classes
            are then decided structurally).
        n (int): Level to report.
        groups: (A, B); when given, class membership is checked against A_n and B_n.
        max_level (int | None): Search cap for n₀ (defaults to the configured maximum).

    Returns:
        SectionClassification: n0 is None (with a warning) when no stabilization was found.
    """
    tracker = tracker or SectionTracker(S, groups)
    n0 = tracker.find_n0(max_level)
    classification = tracker.classification(n, n0)
    if n0 is not None and n < n0:
        logger.info(f"Level {n} lies below the stabilization level {n0}")
    return classification


def check_section_lemma(
    S: Sequence[TreeAutomorphism],
    classification: SectionClassification,
    groups: Optional[Tuple[FinitePermGroup, FinitePermGroup]] = None,
    levels: Optional[Iterable[int]] = None,
) -> SectionLemmaReport:
    """
    Exhaustive check that s|_v is in A_n on 𝔸_n, in B_n on 𝔹_n and trivial elsewhere.

    Args:
        levels: Levels to scan; defaults to n₀ … n₀+3.

    Raises:
        PreconditionError: If no levels are given and n₀ is unknown.
        ResourceError: If a scanned level exceeds the vertex budget.
    """
    if levels is None:
        if classification.n0 is None:
            raise PreconditionError("The section structure never stabilized; pass explicit levels")
        levels = range(classification.n0, classification.n0 + 4)
    levels = tuple(levels)
    tracker = SectionTracker(S, groups)
    valency = tracker.valency
    violations: List[str] = []
    checked = 0
    for k in levels:
        if valency.volume(k) > config.VERTEX_BUDGET:
            raise ResourceError(f"Level {k} has {valency.volume(k)} vertices", level=k)
        A, B, _ = tracker.vertex_sets(k)
        A, B = set(A), set(B)
        section_groups_k = tracker.groups_at(k)
        for vertex in level_vertices(valency, k):
            for s in S:
                checked += 1
                g = _collapse(section(s, vertex))
                if vertex in A or vertex in B:
                    if is_trivial(g):
                        continue
                    kind = classify_element(g, section_groups_k)
                    wanted = CLASS_A if vertex in A else CLASS_B
                    if kind != wanted and not (vertex in A and vertex in B and kind in (CLASS_A, CLASS_B)):
                        violations.append(f"{s}|_{vertex} is not in {wanted}_{k}")
                elif not is_trivial(g):
                    violations.append(f"{s}|_{vertex} is nontrivial outside 𝕎_{k}")
    if violations:
        logger.warning(f"Section check found {len(violations)} violations on levels {levels}")
    return SectionLemmaReport(levels, checked, tuple(violations))


# ****
if __name__ == "__main__":
    raise Exception("This file is not meant to run on its own.")
