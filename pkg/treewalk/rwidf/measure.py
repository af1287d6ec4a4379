# -*- coding: utf-8 -*-

"""
Finitely supported probability measures on a group of tree automorphisms.

Keys are canonical representatives from the shared element table of the
tree, so two words for the same automorphism always collide.
"""

# **** IMPORTS ****
import math
import logging
from fractions import Fraction
from dataclasses import dataclass, field
from typing import Callable, Dict, Hashable, Iterable, Iterator, Mapping, Optional, Tuple

import numpy as np
from scipy.stats import entropy as shannon_entropy

from treewalk import config
from treewalk.algebra.valency import ValencySequence
from treewalk.algebra.automorphism import TreeAutomorphism
from treewalk.algebra.elements import table_for
from treewalk.exceptions import IncompatibleElementsError, ResourceError, ValidationError

# **** LOGGING ****
logger = logging.getLogger(__name__)

# **** CLASSES ****
@dataclass(frozen=True, eq=False)
class FiniteMeasure:
    """
    Probability measure with finite support.

    Attributes:
        valency (ValencySequence): Tree the elements act on.
        weights (Dict[TreeAutomorphism, Fraction]): Canonical key ↦ positive weight, summing to 1.
    """
    valency: ValencySequence
    weights: Dict[TreeAutomorphism, Fraction]
    _sorted: Tuple[Tuple[TreeAutomorphism, Fraction], ...] = field(init=False, repr=False)

    def __post_init__(self):
        total = Fraction(0)
        for key, weight in self.weights.items():
            if key.valency != self.valency:
                raise IncompatibleElementsError(f"{key} lives over {key.valency}, not {self.valency}")
            if weight <= 0:
                raise ValidationError(f"Weight of {key} must be positive, got {weight}")
            total += weight
        if total != 1:
            raise ValidationError(f"Measure weights sum to {total}, not 1")
        ordered = tuple(sorted(self.weights.items(), key=lambda item: item[0].sort_key()))
        object.__setattr__(self, "_sorted", ordered)

    # **** DUNDER METHODS ****
    def __len__(self) -> int:
        return len(self.weights)

    def __iter__(self) -> Iterator[TreeAutomorphism]:
        return (key for key, _ in self._sorted)

    def __getitem__(self, g: TreeAutomorphism) -> Fraction:
        return self.current_weights().get(table_for(self.valency).key(g), Fraction(0))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FiniteMeasure)
            and self.valency == other.valency
            and self.current_weights() == other.current_weights()
        )

    def __hash__(self) -> int:
        # Weight values survive re-keying, the keys themselves may not
        return hash((self.valency, tuple(sorted(self.weights.values()))))

    def __str__(self) -> str:
        return "{" + ", ".join(f"{key}: {weight}" for key, weight in self._sorted) + "}"

    # **** CLASS METHODS ****
    @classmethod
    def from_weights(cls, weights: Mapping[TreeAutomorphism, object], valency: Optional[ValencySequence] = None) -> "FiniteMeasure":
        """Canonicalizes keys, merges colliding words and drops zero weights."""
        if not weights:
            raise ValidationError("A measure needs at least one element")
        valency = valency or next(iter(weights)).valency
        table = table_for(valency)
        merged: Dict[TreeAutomorphism, Fraction] = {}
        for g, weight in weights.items():
            weight = Fraction(weight)
            if weight < 0:
                raise ValidationError(f"Weight of {g} must be non-negative, got {weight}")
            if weight == 0:
                continue
            key = table.key(g)
            merged[key] = merged.get(key, Fraction(0)) + weight
        return cls(valency, merged)

    @classmethod
    def uniform(cls, elements: Iterable[TreeAutomorphism], valency: Optional[ValencySequence] = None) -> "FiniteMeasure":
        """Uniform measure on the listed elements (repeats add weight)."""
        elements = list(elements)
        if not elements:
            raise ValidationError("A uniform measure needs at least one element")
        share = Fraction(1, len(elements))
        weights: Dict[TreeAutomorphism, Fraction] = {}
        for g in elements:
            weights[g] = weights.get(g, Fraction(0)) + share
        return cls.from_weights(weights, valency)

    @classmethod
    def delta(cls, valency: ValencySequence, g: Optional[TreeAutomorphism] = None) -> "FiniteMeasure":
        """δ_g (δ_e by default)."""
        table = table_for(valency)
        key = table.identity if g is None else table.key(g)
        return cls(valency, {key: Fraction(1)})

    # **** PROPERTIES ****
    @property
    def support(self) -> Tuple[TreeAutomorphism, ...]:
        return tuple(key for key, _ in self._sorted)

    @property
    def is_delta_identity(self) -> bool:
        return len(self.weights) == 1 and not next(iter(self.weights)).word

    # **** METHODS ****
    def current_weights(self) -> Dict[TreeAutomorphism, Fraction]:
        """Weights keyed by the representatives the element table uses now."""
        table = table_for(self.valency)
        if table.generation == 0:
            return self.weights
        cached = self.__dict__.get("_rekeyed")
        if cached is not None and cached[0] == table.generation:
            return cached[1]
        rekeyed: Dict[TreeAutomorphism, Fraction] = {}
        for key, weight in self.weights.items():
            current = table.key(key)
            rekeyed[current] = rekeyed.get(current, Fraction(0)) + weight
        object.__setattr__(self, "_rekeyed", (table.generation, rekeyed))
        return rekeyed

    def items(self) -> Tuple[Tuple[TreeAutomorphism, Fraction], ...]:
        return self._sorted

    def entropy(self) -> float:
        """Shannon entropy in nats."""
        return distribution_entropy(self.weights.values())

    def entropy_bits(self) -> float:
        return self.entropy() / math.log(2)

    def convolve(self, other: "FiniteMeasure", budget: Optional[int] = None) -> "FiniteMeasure":
        """
        μ * ν, the law of g·h for independent g ~ μ and h ~ ν.

        Raises:
            IncompatibleElementsError: If the measures live over different trees.
            ResourceError: If the support outgrows the budget.
        """
        if self.valency != other.valency:
            raise IncompatibleElementsError(f"Cannot convolve measures over {self.valency} and {other.valency}")
        budget = budget if budget is not None else config.SUPPORT_BUDGET
        table = table_for(self.valency)
        out: Dict[TreeAutomorphism, Fraction] = {}
        for g, p in self._sorted:
            for h, q in other._sorted:
                key = table.product(g, h)
                out[key] = out.get(key, Fraction(0)) + p * q
                if len(out) > budget:
                    raise ResourceError(
                        f"Convolution support passed the budget of {budget} keys", budget=budget, support=len(out)
                    )
        return FiniteMeasure(self.valency, out)

    def power(self, k: int, budget: Optional[int] = None) -> "FiniteMeasure":
        """
        μ^{*k}, with μ^{*0} = δ_e.

        Raises:
            ResourceError: If some intermediate power outgrows the budget (`details["k"]` is the last completed power).
        """
        result = None
        for result in self.powers(k, budget):
            pass
        return result

    def powers(self, k_max: int, budget: Optional[int] = None) -> Iterator["FiniteMeasure"]:
        """Yields μ^{*0}, μ^{*1}, …, μ^{*k_max}."""
        if k_max < 0:
            raise ValidationError(f"Convolution power must be non-negative, got {k_max}")
        current = FiniteMeasure.delta(self.valency)
        yield current
        for k in range(1, k_max + 1):
            try:
                current = current.convolve(self, budget)
            except ResourceError as exc:
                exc.details["k"] = k - 1
                raise
            logger.debug(f"μ^{k}: support {len(current)}")
            yield current

    def reflected(self) -> "FiniteMeasure":
        """μ̂(g) = μ(g⁻¹)."""
        table = table_for(self.valency)
        return FiniteMeasure(self.valency, {table.inverse(g): p for g, p in self._sorted})

    def is_symmetric(self) -> bool:
        return self.reflected() == self

    def mass(self, predicate: Callable[[TreeAutomorphism], bool]) -> Fraction:
        return sum((p for g, p in self._sorted if predicate(g)), Fraction(0))

    def pushforward(self, function: Callable[[TreeAutomorphism], Hashable]) -> Dict[Hashable, Fraction]:
        """Law of function(g) for g ~ μ."""
        out: Dict[Hashable, Fraction] = {}
        for g, p in self._sorted:
            value = function(g)
            out[value] = out.get(value, Fraction(0)) + p
        return out

    def as_floats(self) -> np.ndarray:
        return np.array([float(p) for _, p in self._sorted])


# **** FUNCTIONS ****
def distribution_entropy(probabilities: Iterable[object]) -> float:
    """Shannon entropy in nats of a finite probability vector (zeros ignored)."""
    values = np.array([float(p) for p in probabilities if p], dtype=float)
    if values.size <= 1:
        return 0.0
    return float(shannon_entropy(values))


def entropy(nu: FiniteMeasure) -> float:
    return nu.entropy()


def convolve(mu: FiniteMeasure, nu: FiniteMeasure) -> FiniteMeasure:
    return mu.convolve(nu)


def power(mu: FiniteMeasure, k: int) -> FiniteMeasure:
    return mu.power(k)


def reflected(mu: FiniteMeasure) -> FiniteMeasure:
    return mu.reflected()


def is_symmetric(mu: FiniteMeasure) -> bool:
    return mu.is_symmetric()


# ****
if __name__ == "__main__":
    raise Exception("This file is not meant to run on its own.")
