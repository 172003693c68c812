"""Constraint-based sequential pattern mining.

A small constraint solver whose search enumerates frequent sequential
patterns: pattern positions are variables, frequency is enforced by a
global filter working on incrementally projected databases, and further
pattern constraints (size, item occurrence bounds, regular expressions)
plug into the same propagation loop.
"""

from .automata import Dfa, compile_regex, compile_regex_nfa, nfa_accepts, parse_regex
from .constraints import AmongFilter, MinSizeFilter, RegularFilter, among_filters
from .core import EMPTY, ConstraintFilter, MiningStats, PatternVars
from .database import (
    DbStats,
    ItemDictionary,
    ItemId,
    Sequence,
    SequenceDatabase,
    dump_spmf,
    dump_symbolic,
    is_subsequence,
    load_spmf,
    load_symbolic,
    stats,
    support,
)
from .engine import (
    MiningResult,
    Pattern,
    SearchState,
    decode_solution,
    mine,
    new_search,
    propagate,
    resolve_minsup,
    solve_all,
)
from .errors import (
    EmptyDatabaseError,
    ParameterError,
    ParseError,
    RegexSyntaxError,
    SeqMineError,
    SpmfFormatError,
    UnknownItemError,
)
from .frequency import FilterCallRecord, ProjectedFrequencyFilter, PsdbStack
from .oracle import (
    OracleConfig,
    RandomDbParams,
    check_pattern,
    enumerate_frequent,
    item_name,
    random_db,
)
from .projection import (
    FrequentItemSet,
    PseudoProjection,
    SuffixIndex,
    WorkCounter,
    frequent_items,
    initial_projection,
    project,
)

__version__ = "0.1.0"

__all__ = [
    "EMPTY",
    "AmongFilter",
    "ConstraintFilter",
    "DbStats",
    "Dfa",
    "EmptyDatabaseError",
    "FilterCallRecord",
    "FrequentItemSet",
    "ItemDictionary",
    "ItemId",
    "MinSizeFilter",
    "MiningResult",
    "MiningStats",
    "OracleConfig",
    "ParameterError",
    "ParseError",
    "Pattern",
    "PatternVars",
    "ProjectedFrequencyFilter",
    "PsdbStack",
    "PseudoProjection",
    "RandomDbParams",
    "RegexSyntaxError",
    "RegularFilter",
    "SearchState",
    "SeqMineError",
    "Sequence",
    "SequenceDatabase",
    "SpmfFormatError",
    "SuffixIndex",
    "UnknownItemError",
    "WorkCounter",
    "among_filters",
    "check_pattern",
    "compile_regex",
    "compile_regex_nfa",
    "decode_solution",
    "dump_spmf",
    "dump_symbolic",
    "enumerate_frequent",
    "frequent_items",
    "initial_projection",
    "is_subsequence",
    "item_name",
    "load_spmf",
    "load_symbolic",
    "mine",
    "new_search",
    "nfa_accepts",
    "parse_regex",
    "project",
    "propagate",
    "random_db",
    "resolve_minsup",
    "solve_all",
    "stats",
    "support",
]
