"""Brute-force reference miner and random-instance generator.

Everything here trades speed for obviousness: support comes straight from
the ground-truth containment test, candidates are generated exhaustively,
and constraints are evaluated in their declarative form (the regular one by
simulating the nondeterministic automaton, so the deterministic pipeline is
never its own referee). Intended for desk-scale instances only.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .automata import Nfa, nfa_accepts
from .database import (
    ItemDictionary,
    ItemId,
    Sequence,
    SequenceDatabase,
    support,
)
from .errors import ParameterError

Pattern = tuple[ItemId, ...]


@dataclass(frozen=True)
class RandomDbParams:
    """Shape of a generated database; output is deterministic in the seed."""

    seed: int
    num_sequences: int
    max_length: int
    alphabet_size: int

    def __post_init__(self) -> None:
        if self.num_sequences < 1 or self.max_length < 1 or self.alphabet_size < 1:
            raise ParameterError(f"all size parameters must be at least 1: {self}")


@dataclass
class OracleConfig:
    """Threshold plus the declarative forms of the side constraints.

    `among` lists (item, lower, upper) occurrence windows; upper None means
    unbounded. `regex_nfa` is a compiled nondeterministic automaton.
    """

    minsup: int
    max_pattern_length: int
    min_size: int | None = None
    among: tuple[tuple[ItemId, int, int | None], ...] = ()
    regex_nfa: Nfa | None = None

    def __post_init__(self) -> None:
        if self.minsup < 1:
            raise ParameterError(f"minsup must be at least 1, got {self.minsup}")
        if self.max_pattern_length < 1:
            raise ParameterError("max_pattern_length must be at least 1")


def check_pattern(p: Pattern, cfg: OracleConfig) -> bool:
    """Evaluate the declarative side constraints on one pattern."""
    if cfg.min_size is not None and len(p) < cfg.min_size:
        return False
    for item, lower, upper in cfg.among:
        occurrences = sum(1 for a in p if a == item)
        if occurrences < lower:
            return False
        if upper is not None and occurrences > upper:
            return False
    if cfg.regex_nfa is not None and not nfa_accepts(cfg.regex_nfa, p):
        return False
    return True


def enumerate_frequent(db: SequenceDatabase, cfg: OracleConfig) -> set[Pattern]:
    """Every pattern with support >= minsup that passes the side constraints.

    Breadth-first candidate extension: each frequent pattern is extended by
    every alphabet item and kept when still frequent. Extending can never
    raise support, so this reaches every frequent pattern. Side constraints
    are applied as a final filter; they do not prune generation.
    """
    alphabet = range(db.num_items)
    frontier = [(a,) for a in alphabet if support(db, (a,)) >= cfg.minsup]
    frequent: list[Pattern] = list(frontier)
    length = 1
    while frontier and length < cfg.max_pattern_length:
        frontier = [
            p + (a,)
            for p in frontier
            for a in alphabet
            if support(db, p + (a,)) >= cfg.minsup
        ]
        frequent.extend(frontier)
        length += 1
    return {p for p in frequent if check_pattern(p, cfg)}


def random_db(params: RandomDbParams) -> SequenceDatabase:
    """Uniform random database over a fully pre-registered alphabet.

    Items get letter names (A, B, ...) while they last, then numbered
    names. The whole nominal alphabet is interned up front even if some
    item never occurs, so constraint expressions over it always resolve.
    """
    rng = random.Random(params.seed)
    dictionary = ItemDictionary()
    for k in range(params.alphabet_size):
        dictionary.intern(item_name(k))
    sequences = []
    for sid in range(1, params.num_sequences + 1):
        n = rng.randint(1, params.max_length)
        items = tuple(rng.randrange(params.alphabet_size) for _ in range(n))
        sequences.append(Sequence(sid, items))
    return SequenceDatabase(tuple(sequences), dictionary)


def item_name(k: int) -> str:
    """Stable name of generated item k: letters first, then numbered."""
    return chr(ord("A") + k) if k < 26 else f"i{k}"
