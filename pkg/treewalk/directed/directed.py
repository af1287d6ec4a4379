# -*- coding: utf-8 -*-

"""
Directed automorphisms: elements fixing the 0-ray whose only nontrivial
sections sit along the ray and at its neighbours.

The element h = (h', τ₁, …, τ_{m₁−1})ρ is stored as per-level data
(ρ_n, τ_{n,1}, …, τ_{n,m_n−1}) in head/period form aligned with its valency
sequence.  Products and inverses have closed forms on this data.
"""

# **** IMPORTS ****
import math
import logging
from functools import cached_property
from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence, Tuple, Union

from treewalk.algebra.atoms import Atom, RootedPermutation
from treewalk.algebra.valency import (
    ValencySequence,
    normalize_eventually_periodic,
    shift_eventually_periodic,
)
from treewalk.algebra.permutation import (
    Images,
    compose_images,
    format_permutation,
    identity_images,
    invert_images,
    is_identity_images,
    to_images,
)
from treewalk.algebra.automorphism import TreeAutomorphism
from treewalk.exceptions import IncompatibleElementsError, ValidationError

# **** LOGGING ****
logger = logging.getLogger(__name__)

# **** CLASSES ****
@dataclass(frozen=True)
class LevelData:
    """
    Data of a directed element at one level n.

    Attributes:
        rho (Images): ρ_n on m_n letters with 0·ρ_n = 0.
        tau (Tuple[Images, ...]): τ_{n,x} on m_{n+1} letters for x = 1, …, m_n − 1.
    """
    rho: Images
    tau: Tuple[Images, ...]

    def __str__(self) -> str:
        taus = ",".join(format_permutation(t) for t in self.tau)
        return f"[{format_permutation(self.rho)};{taus}]"

    @property
    def is_identity(self) -> bool:
        return is_identity_images(self.rho) and all(is_identity_images(t) for t in self.tau)

    def compose(self, other: "LevelData") -> "LevelData":
        """Data of g·h at this level, from the data of g (self) and h (other)."""
        rho = compose_images(self.rho, other.rho)
        tau = tuple(
            compose_images(self.tau[x - 1], other.tau[self.rho[x] - 1])
            for x in range(1, len(self.rho))
        )
        return LevelData(rho, tau)

    def invert(self) -> "LevelData":
        inverse_rho = invert_images(self.rho)
        tau = tuple(invert_images(self.tau[inverse_rho[x] - 1]) for x in range(1, len(self.rho)))
        return LevelData(inverse_rho, tau)


@dataclass(frozen=True, eq=False)
class DirectedElement(Atom):
    """
    Element of H_m̄ as an atom.

    Attributes:
        tree (ValencySequence): Valency sequence the element acts on.
        head (Tuple[LevelData, ...]): Data of the first levels.
        period (Tuple[LevelData, ...]): Data repeated after the head.
        name (str | None): Display name.
    """
    tree: ValencySequence
    head: Tuple[LevelData, ...]
    period: Tuple[LevelData, ...]
    name: Optional[str] = None
    _key: Tuple = field(init=False, repr=False)

    # **** DUNDER METHODS ****
    def __post_init__(self):
        if not self.period:
            raise ValidationError("Directed element data needs a non-empty period")
        head, period = normalize_eventually_periodic(tuple(self.head), tuple(self.period))
        object.__setattr__(self, "head", head)
        object.__setattr__(self, "period", period)
        self._validate()
        object.__setattr__(self, "_key", (self.tree, head, period))

    def __eq__(self, other) -> bool:
        return isinstance(other, DirectedElement) and self._key == other._key

    def __hash__(self) -> int:
        return hash(("directed",) + self._key)

    def __str__(self) -> str:
        if self.name:
            return self.name
        if self.is_identity:
            return "e"
        if not self.head and len(self.period) == 1:
            return f"h{self.period[0]}"
        head = "".join(str(level) for level in self.head)
        period = "".join(str(level) for level in self.period)
        return f"h{head}({period})*"

    # **** VALIDATION ****
    def _validate(self) -> None:
        span = max(len(self.head), self.tree.preperiod) + math.lcm(len(self.period), len(self.tree.period))
        for n in range(1, span + 1):
            data = self.level(n)
            m_n, m_next = self.tree[n], self.tree[n + 1]
            if len(data.rho) != m_n or sorted(data.rho) != list(range(m_n)):
                raise ValidationError(f"ρ_{n} must be a permutation of {m_n} letters, got {list(data.rho)}")
            if data.rho[0] != 0:
                raise ValidationError(f"ρ_{n} must fix the letter 0, got {list(data.rho)}")
            if len(data.tau) != m_n - 1:
                raise ValidationError(f"Level {n} needs {m_n - 1} τ permutations, got {len(data.tau)}")
            for x, tau in enumerate(data.tau, start=1):
                if len(tau) != m_next or sorted(tau) != list(range(m_next)):
                    raise ValidationError(f"τ_{n},{x} must be a permutation of {m_next} letters, got {list(tau)}")

    # **** CLASS METHODS ****
    @classmethod
    def from_levels(
        cls,
        tree: ValencySequence,
        head: Sequence[Tuple[Sequence[int], Sequence[Sequence[int]]]],
        period: Sequence[Tuple[Sequence[int], Sequence[Sequence[int]]]],
        name: Optional[str] = None,
    ) -> "DirectedElement":
        """Builds an element from (ρ images, [τ images per x]) pairs."""
        def level(pair):
            rho, taus = pair
            return LevelData(tuple(int(v) for v in rho), tuple(tuple(int(v) for v in tau) for tau in taus))

        return cls(tree, tuple(level(pair) for pair in head), tuple(level(pair) for pair in period), name)

    @classmethod
    def identity(cls, tree: ValencySequence) -> "DirectedElement":
        return cls(tree, (), tuple(_identity_level(tree, n) for n in range(1, len(tree.period) + 1)))

    # **** PROPERTIES ****
    @property
    def valency(self) -> ValencySequence:
        return self.tree

    @cached_property
    def is_identity(self) -> bool:
        return all(level.is_identity for level in self.head + self.period)

    @cached_property
    def _first(self) -> LevelData:
        return self.level(1)

    @cached_property
    def _sections(self) -> Tuple[Optional[Atom], ...]:
        first = self._first
        child_tree = self.tree.shift(1)
        sections = [None if self._shifted.is_identity else self._shifted]
        for tau in first.tau:
            sections.append(None if is_identity_images(tau) else RootedPermutation(tau, child_tree))
        return tuple(sections)

    @cached_property
    def _shifted(self) -> "DirectedElement":
        head, period = shift_eventually_periodic(self.head, self.period, 1)
        return DirectedElement(self.tree.shift(1), head, period)

    @cached_property
    def _inverse(self) -> "DirectedElement":
        return DirectedElement(
            self.tree,
            tuple(level.invert() for level in self.head),
            tuple(level.invert() for level in self.period),
        )

    # **** METHODS ****
    def level(self, n: int) -> LevelData:
        """Data (ρ_n, τ_n) at 1-based level n."""
        if n <= len(self.head):
            return self.head[n - 1]
        return self.period[(n - len(self.head) - 1) % len(self.period)]

    def shift(self, n: int) -> "DirectedElement":
        """Section along the 0-ray at level n."""
        if n == 0:
            return self
        head, period = shift_eventually_periodic(self.head, self.period, n)
        return DirectedElement(self.tree.shift(n), head, period)

    def tau(self, n: int, x: int) -> RootedPermutation:
        """Section at the vertex x0…0 of level n as a rooted permutation."""
        return RootedPermutation(self.level(n).tau[x - 1], self.tree.shift(n))

    def act_letter(self, x: int) -> int:
        return self._first.rho[x]

    def first_section(self, x: int) -> Optional[Atom]:
        return self._sections[x]

    def inverse(self) -> "DirectedElement":
        return self._inverse

    def multiply(self, other: "DirectedElement") -> "DirectedElement":
        """Closed-form product (self acts first)."""
        if self.tree != other.tree:
            raise IncompatibleElementsError(f"{self} and {other} live over different trees")
        head_length = max(len(self.head), len(other.head))
        period_length = math.lcm(len(self.period), len(other.period))
        levels = [self.level(n).compose(other.level(n)) for n in range(1, head_length + period_length + 1)]
        return DirectedElement(self.tree, tuple(levels[:head_length]), tuple(levels[head_length:]))

    def named(self, name: Optional[str]) -> "DirectedElement":
        return DirectedElement(self.tree, self.head, self.period, name)

    def element(self) -> TreeAutomorphism:
        return TreeAutomorphism.of(self, name=self.name)

    def sort_key(self) -> Tuple:
        return ("DirectedElement", str(self._key[1:]))


# **** FUNCTIONS ****
def _identity_level(tree: ValencySequence, n: int) -> LevelData:
    return LevelData(identity_images(tree[n]), tuple(identity_images(tree[n + 1]) for _ in range(tree[n] - 1)))


def h_sigma_bar(
    sigma: Union[Mapping[int, Sequence[int]], Sequence[Sequence[int]]],
    tree: ValencySequence,
) -> DirectedElement:
    """
    The element permuting, below the first non-zero letter at position i, the letter i+1 by σ_{m_{i+1}}.

    Args:
        sigma: σ_i ∈ S_i for valencies i; a mapping {i: images} or a sequence whose entry i−1 is σ_i.
            Missing valencies use the identity.
        tree (ValencySequence): Valency sequence of the tree.

    Raises:
        ValidationError: If some σ_i is not a permutation of i letters.
    """
    if isinstance(sigma, Mapping):
        table = {int(i): images for i, images in sigma.items()}
    else:
        table = {i: images for i, images in enumerate(sigma, start=1)}
    for i in table:
        if i > tree.m_star or i < 1:
            raise ValidationError(f"σ_{i} given but valencies only reach {tree.m_star}")
    resolved = {}
    for i in range(1, tree.m_star + 1):
        images = table.get(i)
        resolved[i] = identity_images(i) if images is None else to_images(images, i)

    def level(n: int) -> LevelData:
        m_n, m_next = tree[n], tree[n + 1]
        return LevelData(identity_images(m_n), tuple(resolved[m_next] for _ in range(m_n - 1)))

    head = tuple(level(n) for n in range(1, tree.preperiod + 1))
    period = tuple(level(n) for n in range(tree.preperiod + 1, tree.preperiod + len(tree.period) + 1))
    return DirectedElement(tree, head, period)


# ****
if __name__ == "__main__":
    raise Exception("This file is not meant to run on its own.")
