# -*- coding: utf-8 -*-

"""
Ready-made groups with their default step measures.

A `GroupConfig` bundles everything the commands need: the tree, the
named generators, the step measure and, for directed groups, the finite
groups (A, B) behind them.
"""

# **** IMPORTS ****
import re
import logging
import functools
import dataclasses
from pathlib import Path
from fractions import Fraction
from dataclasses import dataclass
from typing import Callable, Dict, Mapping, Optional, Sequence, Tuple

from treewalk.algebra.valency import ValencySequence
from treewalk.algebra.automorphism import TreeAutomorphism, inverse, multiply_all
from treewalk.algebra.elements import table_for
from treewalk.algebra.permutation import format_permutation
from treewalk.automata.automaton import FiniteAutomaton, make_automaton
from treewalk.automata.parsing import load_automaton
from treewalk.directed.groups import FinitePermGroup, close_group, mother_group
from treewalk.directed.parsing import load_directed_group
from treewalk.rwidf.measure import FiniteMeasure
from treewalk.util import parse_fraction
from treewalk.exceptions import ConfigError, UnknownFixtureError, ValidationError

# **** LOGGING ****
logger = logging.getLogger(__name__)

# **** CONSTANTS ****
INVERSE_PATTERN = re.compile(r"^(?P<name>[^⁻^]+)(?:⁻¹|\^-1)$")

# **** CLASSES ****
@dataclass(frozen=True)
class GroupConfig:
    """
    Attributes:
        name (str): Fixture or file name.
        valency (ValencySequence): Tree the group acts on.
        generators (Tuple[TreeAutomorphism, ...]): Named generating set S.
        measure (FiniteMeasure): Step measure μ.
        automaton (FiniteAutomaton | None): Source automaton, for automaton groups.
        groups (Tuple[FinitePermGroup, FinitePermGroup] | None): (A, B), for directed groups.
    """
    name: str
    valency: ValencySequence
    generators: Tuple[TreeAutomorphism, ...]
    measure: FiniteMeasure
    automaton: Optional[FiniteAutomaton] = None
    groups: Optional[Tuple[FinitePermGroup, FinitePermGroup]] = None

    @property
    def m_star(self) -> int:
        return self.valency.m_star

    @property
    def kind(self) -> str:
        if self.automaton is not None:
            return "automaton"
        if self.groups is not None:
            return "directed"
        return "generators"

    def generator(self, name: str) -> TreeAutomorphism:
        for g in self.generators:
            if g.name == name:
                return g
        raise ValidationError(f"{self.name} has no generator named {name!r}")

    def with_measure(self, measure: FiniteMeasure) -> "GroupConfig":
        return dataclasses.replace(self, measure=measure)


# **** FUNCTIONS ****
def symmetric_uniform(generators: Sequence[TreeAutomorphism]) -> FiniteMeasure:
    """Uniform measure on S ∪ S⁻¹ (canonical keys, so involutions are not doubled)."""
    valency = generators[0].valency
    keys = {}
    table = table_for(valency)
    for g in generators:
        keys[table.key(g)] = None
        keys[table.inverse(table.key(g))] = None
    return FiniteMeasure.uniform(list(keys), valency)


def hanoi_automaton() -> FiniteAutomaton:
    """a = (a,e,e)(12), b = (e,b,e)(02), c = (e,e,c)(01) over three letters."""
    return make_automaton(
        3,
        {
            "a": ((0, 2, 1), ("a", "e", "e")),
            "b": ((2, 1, 0), ("e", "b", "e")),
            "c": ((1, 0, 2), ("e", "e", "c")),
            "e": ((0, 1, 2), ("e", "e", "e")),
        },
        trivial_state="e",
        name="hanoi",
    )


def twoloop_automaton() -> FiniteAutomaton:
    """a = (a,a)(01): one state looping on both letters, so activity is unbounded."""
    return make_automaton(
        2,
        {
            "a": ((1, 0), ("a", "a")),
            "e": ((0, 1), ("e", "e")),
        },
        trivial_state="e",
        name="twoloop",
    )


def automaton_config(aut: FiniteAutomaton) -> GroupConfig:
    generators = aut.generators()
    if not generators:
        raise ValidationError(f"Automaton {aut.name} has no nontrivial state")
    return GroupConfig(
        name=aut.name,
        valency=aut.valency,
        generators=generators,
        measure=symmetric_uniform(generators),
        automaton=aut,
    )


def directed_config(
    name: str,
    A: FinitePermGroup,
    B: FinitePermGroup,
    generators: Sequence[TreeAutomorphism],
) -> GroupConfig:
    return GroupConfig(
        name=name,
        valency=A.tree,
        generators=tuple(generators),
        measure=symmetric_uniform(generators),
        groups=(A, B),
    )


def mother_config(m: int) -> GroupConfig:
    """M(A, B) with S = (A ∪ B) ∖ {e}, directed elements named a1, a2, … and rooted ones by their cycles."""
    A, B = mother_group(m)
    generators = []
    for index, h in enumerate(A.elements[1:], start=1):
        generators.append(TreeAutomorphism.of(h.named(f"a{index}"), name=f"a{index}"))
    for b in B.elements[1:]:
        generators.append(TreeAutomorphism.of(b, name=f"b{format_permutation(b.images)}"))
    return directed_config(f"mother{m}", A, B, generators)


_FIXTURES: Dict[str, Callable[[], GroupConfig]] = {
    "hanoi": lambda: automaton_config(hanoi_automaton()),
    "twoloop": lambda: automaton_config(twoloop_automaton()),
    "mother2": lambda: mother_config(2),
    "mother3": lambda: mother_config(3),
}


def fixture_names() -> Tuple[str, ...]:
    return tuple(sorted(_FIXTURES))


@functools.lru_cache(maxsize=None)
def build_fixture(name: str) -> GroupConfig:
    """
    Raises:
        UnknownFixtureError: If the name is not a known fixture.
    """
    builder = _FIXTURES.get(name)
    if builder is None:
        raise UnknownFixtureError(f"Unknown fixture {name!r}; known: {', '.join(fixture_names())}", fixture=name)
    config = builder()
    logger.debug(f"Built fixture {name}: {len(config.generators)} generators over {config.valency}")
    return config


def config_from_file(path: Path, kind: str) -> GroupConfig:
    """
    Group configuration from an automaton file (kind "automaton") or a directed-group file (kind "directed").

    Raises:
        ConfigError: If the file is missing or the kind is unknown.
    """
    if not path.exists():
        raise ConfigError(f"Group file {path} does not exist", path=str(path))
    if kind == "automaton":
        return automaton_config(load_automaton(path))
    if kind == "directed":
        definition = load_directed_group(path)
        A = close_group(definition.directed, definition.tree)
        B = close_group(definition.rooted, definition.tree)
        generators = [TreeAutomorphism.of(h, name=h.name) for h in definition.directed]
        generators += [
            TreeAutomorphism.of(b, name=name) for b, name in zip(definition.rooted, definition.rooted_names)
        ]
        return directed_config(definition.name, A, B, generators)
    raise ConfigError(f"Unknown group file kind {kind!r}", kind=kind)


def parse_word(config: GroupConfig, text: str) -> TreeAutomorphism:
    """
    Reads a generator word such as "a b⁻¹ c" or "a·b^-1" ("e" is the identity).

    Raises:
        ValidationError: If a token names no generator.
    """
    tokens = [token for token in re.split(r"[\s·*]+", text.strip()) if token]
    factors = []
    for token in tokens:
        if token == "e":
            continue
        match = INVERSE_PATTERN.match(token)
        if match:
            factors.append(inverse(config.generator(match.group("name"))))
        else:
            factors.append(config.generator(token))
    return multiply_all(factors, config.valency)


def read_weight_table(text: str) -> Dict[str, str]:
    """
    Reads `<generator word> <p/q>` lines into {word: "p/q"}; `#` starts a comment.

    Raises:
        ConfigError: If a line is malformed or a weight is not an exact rational.
    """
    weights: Dict[str, str] = {}
    for line_number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        word, _, weight = line.rpartition(" ")
        word = " ".join(word.split())
        if not word:
            raise ConfigError(f"Weight line {line_number} needs a word and a weight", line=line_number)
        value = parse_fraction(weight)
        if word in weights:
            value += Fraction(weights[word])
        weights[word] = str(value)
    return weights


def measure_from_weights(config: GroupConfig, weights: Mapping[str, str], symmetric: bool = False) -> FiniteMeasure:
    """
    Step measure from a {generator word: "p/q"} table.

    Raises:
        ConfigError: If a word names no generator, the weights do not sum to 1, or the
            measure is declared symmetric but is not.
    """
    table: Dict[TreeAutomorphism, Fraction] = {}
    for word, weight in weights.items():
        try:
            element = parse_word(config, word)
        except ValidationError as exc:
            raise ConfigError(f"Weight table: {exc.message}", word=word) from exc
        table[element] = table.get(element, Fraction(0)) + parse_fraction(weight)
    total = sum(table.values(), Fraction(0))
    if total != 1:
        raise ConfigError(f"Weights sum to {total}, not 1", total=str(total))
    measure = FiniteMeasure.from_weights(table, config.valency)
    if symmetric and not measure.is_symmetric():
        raise ConfigError("The weight table was declared symmetric but μ(g) ≠ μ(g⁻¹) for some g")
    return measure


# ****
if __name__ == "__main__":
    raise Exception("This file is not meant to run on its own.")
