# -*- coding: utf-8 -*-

"""
Finite groups of directed automorphisms and of rooted permutations.

Rooted groups are closed with sympy's `PermutationGroup`; directed groups
by breadth-first closure over the closed-form product of `DirectedElement`.
Anything else (mixed words) falls back to the canonical element table.
"""

# **** IMPORTS ****
import math
import logging
import itertools
from collections import deque
from dataclasses import dataclass, field
from typing import FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

from sympy.combinatorics import PermutationGroup

from treewalk import config
from treewalk.algebra.atoms import Atom, RootedPermutation
from treewalk.algebra.valency import ValencySequence
from treewalk.algebra.automorphism import TreeAutomorphism
from treewalk.algebra.elements import table_for
from treewalk.algebra.permutation import identity_images, to_sympy, transposition
from treewalk.directed.directed import DirectedElement, LevelData, h_sigma_bar
from treewalk.exceptions import NotFiniteWithinBudgetError, ValidationError

# **** LOGGING ****
logger = logging.getLogger(__name__)

# **** TYPES ****
GroupElement = Union[Atom, TreeAutomorphism]

# **** CLASSES ****
@dataclass(frozen=True)
class FinitePermGroup:
    """
    Finite group given by its full element list.

    Attributes:
        tree (ValencySequence): Tree the elements act on.
        elements (Tuple): Every element, the identity first.
        generators (Tuple): Generating subset.
    """
    tree: ValencySequence
    elements: Tuple[GroupElement, ...]
    generators: Tuple[GroupElement, ...]
    _members: FrozenSet[GroupElement] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_members", frozenset(self.elements))

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[GroupElement]:
        return iter(self.elements)

    def __contains__(self, element: GroupElement) -> bool:
        if isinstance(element, TreeAutomorphism) and len(element.word) == 1 and element.word[0] in self._members:
            return True
        if isinstance(element, TreeAutomorphism) and not element.word:
            return True
        return element in self._members

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def identity(self) -> GroupElement:
        return self.elements[0]

    @property
    def is_trivial(self) -> bool:
        return len(self.elements) == 1

    def automorphisms(self, include_identity: bool = False) -> Tuple[TreeAutomorphism, ...]:
        """Elements as tree automorphisms (named generators keep their names)."""
        out = []
        for element in self.elements:
            if isinstance(element, TreeAutomorphism):
                automorphism = element
            else:
                automorphism = TreeAutomorphism.of(element, name=getattr(element, "name", None))
            if include_identity or automorphism.word:
                out.append(automorphism)
        return tuple(out)


# **** FUNCTIONS ****
def _budget_exceeded(size: int) -> NotFiniteWithinBudgetError:
    return NotFiniteWithinBudgetError(
        f"Group closure passed {config.CLOSURE_BUDGET} elements", budget=config.CLOSURE_BUDGET, size=size
    )


def _close_rooted(generators: Sequence[RootedPermutation], tree: ValencySequence) -> Tuple[RootedPermutation, ...]:
    m = tree.first
    group = PermutationGroup([to_sympy(g.images) for g in generators] or [to_sympy(identity_images(m))])
    if group.order() > config.CLOSURE_BUDGET:
        raise _budget_exceeded(int(group.order()))
    identity = RootedPermutation.identity(tree)
    others = sorted(
        (RootedPermutation(tuple(p.array_form) + tuple(range(p.size, m)), tree) for p in group.generate() if not p.is_Identity),
        key=lambda g: g.images,
    )
    return (identity,) + tuple(others)


def _close_by(generators: Sequence, identity, product) -> Tuple:
    elements = [identity]
    seen = {identity}
    queue = deque([identity])
    while queue:
        current = queue.popleft()
        for generator in generators:
            candidate = product(current, generator)
            if candidate not in seen:
                seen.add(candidate)
                elements.append(candidate)
                if len(elements) > config.CLOSURE_BUDGET:
                    raise _budget_exceeded(len(elements))
                queue.append(candidate)
    return tuple(elements)


def close_group(gens: Iterable[GroupElement], tree: Optional[ValencySequence] = None) -> FinitePermGroup:
    """
    Closure of a generating set expected to generate a finite group.

    Args:
        gens: DirectedElements or RootedPermutations (TreeAutomorphism words are accepted too).
        tree (ValencySequence | None): Needed only when `gens` is empty.

    Raises:
        NotFiniteWithinBudgetError: If the closure outgrows the configured budget.
    """
    generators = tuple(gens)
    if tree is None:
        if not generators:
            raise ValidationError("An empty generating set needs an explicit valency sequence")
        tree = generators[0].valency
    for generator in generators:
        if generator.valency != tree:
            raise ValidationError(f"Generator {generator} lives over {generator.valency}, not {tree}")

    if all(isinstance(g, RootedPermutation) for g in generators):
        elements = _close_rooted(generators, tree)
    elif all(isinstance(g, DirectedElement) for g in generators):
        elements = _close_by(generators, DirectedElement.identity(tree), lambda g, h: g.multiply(h))
    else:
        table = table_for(tree)
        words = [g if isinstance(g, TreeAutomorphism) else TreeAutomorphism.of(g) for g in generators]
        keys = table.keys(words)
        elements = _close_by(keys, table.identity, table.product)
    logger.debug(f"Closed {len(generators)} generators over {tree} to {len(elements)} elements")
    return FinitePermGroup(tree, elements, generators)


def mother_group(m: int) -> Tuple[FinitePermGroup, FinitePermGroup]:
    """
    The finite groups behind the bounded-activity mother group on the m-regular tree.

    A holds every h = (h, τ₁, …, τ_{m−1})ρ with ρ fixing 0, so |A| = (m!)^{m−1}·(m−1)!;
    B is the full symmetric group on the first level.
    """
    if m < 2:
        raise ValidationError(f"The mother group needs m ≥ 2, got {m}")
    tree = ValencySequence.constant(m)
    identity = identity_images(m)
    rho_choices = [(0,) + tail for tail in itertools.permutations(range(1, m))]
    tau_choices = list(itertools.permutations(range(m)))
    elements: List[DirectedElement] = []
    for rho in rho_choices:
        for taus in itertools.product(tau_choices, repeat=m - 1):
            elements.append(DirectedElement(tree, (), (LevelData(tuple(rho), tuple(taus)),)))
    elements.sort(key=lambda h: (not h.is_identity, h.period[0].rho, h.period[0].tau))

    generators: List[DirectedElement] = []
    for x in range(1, m - 1):
        data = LevelData(transposition(m, x, x + 1), tuple(identity for _ in range(m - 1)))
        generators.append(DirectedElement(tree, (), (data,)))
    for y in range(m - 1):
        taus = (transposition(m, y, y + 1),) + tuple(identity for _ in range(m - 2))
        generators.append(DirectedElement(tree, (), (LevelData(identity, taus),)))

    expected = math.factorial(m) ** (m - 1) * math.factorial(m - 1)
    if len(elements) > config.CLOSURE_BUDGET:
        raise _budget_exceeded(len(elements))
    A = FinitePermGroup(tree, tuple(elements), tuple(generators))
    B = close_group([RootedPermutation(transposition(m, x, x + 1), tree) for x in range(m - 1)], tree)
    logger.debug(f"Mother group m={m}: |A| = {A.order} (expected {expected}), |B| = {B.order}")
    return A, B


def section_groups(
    A: FinitePermGroup,
    n: int,
    B: Optional[FinitePermGroup] = None,
) -> Tuple[FinitePermGroup, FinitePermGroup]:
    """
    The level-n section groups (A_n, B_n) of a finite directed group A.

    A_n = ⟨a|_{0…0}⟩ over the shifted tree and B_n = ⟨a|_{x0…0} : x ≠ 0⟩; at n = 0 the
    pair (A, B) is returned as given (B defaults to the trivial rooted group).
    """
    if n < 0:
        raise ValidationError(f"Section level must be non-negative, got {n}")
    if n == 0:
        return A, B if B is not None else close_group([], A.tree)
    directed = [g for g in A.generators if isinstance(g, DirectedElement)]
    if len(directed) != len(A.generators):
        raise ValidationError("Section groups need a group generated by directed elements")
    shifted_tree = A.tree.shift(n)
    A_n = close_group([g.shift(n) for g in directed], shifted_tree)
    taus = {g.tau(n, x) for g in directed for x in range(1, A.tree[n])}
    B_n = close_group(sorted(taus, key=lambda t: t.images), shifted_tree)
    return A_n, B_n


def section_groups_recursive(A: FinitePermGroup, n: int) -> Tuple[FinitePermGroup, FinitePermGroup]:
    """(A_n, B_n) through A_n = ⟨a′|_0 : a′ ∈ A_{n−1}⟩ and B_n = ⟨a′|_x : a′ ∈ A_{n−1}, x ≠ 0⟩."""
    if n == 0:
        return section_groups(A, 0)
    previous, _ = section_groups_recursive(A, n - 1)
    shifted = previous.tree.shift(1)
    A_n = close_group([g.shift(1) for g in previous.elements], shifted)
    taus = {g.tau(1, x) for g in previous.elements for x in range(1, previous.tree.first)}
    B_n = close_group(sorted(taus, key=lambda t: t.images), shifted)
    return A_n, B_n


def h_sigma_group(tree: ValencySequence) -> FinitePermGroup:
    """All elements h_σ̄, closed from adjacent transpositions in each S_i with i a valency below the root."""
    span = tree.preperiod + len(tree.period) + 1
    valencies = sorted({tree[n + 1] for n in range(1, span + 1)})
    generators = []
    for i in valencies:
        for x in range(i - 1):
            generators.append(h_sigma_bar({i: transposition(i, x, x + 1)}, tree))
    return close_group(generators, tree)


def augment_with_h_sigma(A: FinitePermGroup) -> FinitePermGroup:
    """A together with every h_σ̄, closed again."""
    extra = h_sigma_group(A.tree).generators
    augmented = close_group(tuple(A.generators) + tuple(extra), A.tree)
    if augmented.order != A.order:
        logger.info(f"Augmenting with the h_σ elements grew the directed group from {A.order} to {augmented.order}")
    return augmented


# ****
if __name__ == "__main__":
    raise Exception("This file is not meant to run on its own.")
