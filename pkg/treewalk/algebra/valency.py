# -*- coding: utf-8 -*-

"""
Valency sequences of spherically homogeneous rooted trees.

A tree is governed by a bounded sequence m_1, m_2, ... where every vertex at
level i−1 has m_i children.  Only eventually periodic sequences are
representable: a finite head followed by a period repeated forever.
"""

# **** IMPORTS ****
import logging
from functools import cached_property
from dataclasses import dataclass
from typing import Sequence, Tuple, TypeVar

from treewalk.exceptions import ValidationError

# **** LOGGING ****
logger = logging.getLogger(__name__)

# **** TYPES ****
T = TypeVar("T")

# **** FUNCTIONS ****
def minimal_period(period: Tuple[T, ...]) -> Tuple[T, ...]:
    """Shortest block whose repetition gives `period`."""
    size = len(period)
    for candidate in range(1, size + 1):
        if size % candidate == 0 and period[:candidate] * (size // candidate) == period:
            return period[:candidate]
    return period


def normalize_eventually_periodic(head: Tuple[T, ...], period: Tuple[T, ...]) -> Tuple[Tuple[T, ...], Tuple[T, ...]]:
    """
    Canonical (head, period) pair of an eventually periodic sequence.

    The period is made minimal and trailing head entries that already match
    the periodic tail are rotated into the period.
    """
    period = minimal_period(tuple(period))
    head = tuple(head)
    while head and head[-1] == period[-1]:
        period = (period[-1],) + period[:-1]
        head = head[:-1]
    return head, period


def shift_eventually_periodic(head: Tuple[T, ...], period: Tuple[T, ...], n: int) -> Tuple[Tuple[T, ...], Tuple[T, ...]]:
    """Drops the first `n` entries of the sequence."""
    if n <= len(head):
        return head[n:], period
    offset = (n - len(head)) % len(period)
    return (), period[offset:] + period[:offset]


# **** CLASSES ****
@dataclass(frozen=True)
class ValencySequence:
    """
    Eventually periodic valency sequence m̄ = (m_1, m_2, ...).

    Attributes:
        head (Tuple[int, ...]): Entries m_1..m_h read before the period starts.
        period (Tuple[int, ...]): Non-empty block repeated forever after the head.
    """
    head: Tuple[int, ...]
    period: Tuple[int, ...]

    # **** DUNDER METHODS ****
    def __post_init__(self):
        head = tuple(int(value) for value in self.head)
        period = tuple(int(value) for value in self.period)
        if not period:
            raise ValidationError("Valency period must be non-empty")
        for value in head + period:
            if value < 1:
                raise ValidationError(f"Valencies must be at least 1, got {value}", head=head, period=period)
        head, period = normalize_eventually_periodic(head, period)
        object.__setattr__(self, "head", head)
        object.__setattr__(self, "period", period)

    def __getitem__(self, index: int) -> int:
        """m_i with 1-based `index`."""
        if index < 1:
            raise IndexError(f"Valency positions start at 1, got {index}")
        if index <= len(self.head):
            return self.head[index - 1]
        return self.period[(index - len(self.head) - 1) % len(self.period)]

    def __str__(self) -> str:
        if not self.head and len(self.period) == 1:
            return f"m={self.period[0]}"
        head = ",".join(str(value) for value in self.head)
        period = ",".join(str(value) for value in self.period)
        return f"[{head}]({period})*"

    # **** CLASS METHODS ****
    @classmethod
    def constant(cls, m: int) -> "ValencySequence":
        """The regular m-ary tree."""
        return cls(head=(), period=(m,))

    @classmethod
    def of(cls, head: Sequence[int], period: Sequence[int]) -> "ValencySequence":
        return cls(head=tuple(head), period=tuple(period))

    # **** PROPERTIES ****
    @cached_property
    def m_star(self) -> int:
        """Maximum valency m_*."""
        return max(self.head + self.period)

    @property
    def first(self) -> int:
        """m_1, the number of children of the root."""
        return self[1]

    @property
    def is_constant(self) -> bool:
        return not self.head and len(self.period) == 1

    @property
    def preperiod(self) -> int:
        return len(self.head)

    # **** METHODS ****
    def shift(self, n: int) -> "ValencySequence":
        """The sequence σⁿm̄ governing the subtrees hanging at level n."""
        if n == 0:
            return self
        head, period = shift_eventually_periodic(self.head, self.period, n)
        return ValencySequence(head=head, period=period)

    def prefix(self, n: int) -> Tuple[int, ...]:
        """(m_1, ..., m_n)."""
        return tuple(self[i] for i in range(1, n + 1))

    def volume(self, n: int) -> int:
        """V_n = m_1⋯m_n, the number of vertices at level n."""
        total = 1
        for i in range(1, n + 1):
            total *= self[i]
        return total


# ****
if __name__ == "__main__":
    raise Exception("This file is not meant to run on its own.")
