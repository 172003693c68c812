"""Depth-first mining search over fixed-length pattern variables.

The solver assigns positions strictly left to right. After each assignment
the registered filters run to a fixpoint; the frequency filter always runs
first so side constraints see domains already restricted to locally
frequent items. Backtracking undoes domain changes through the trail and
tells each filter to roll its own state back.

Every complete assignment decodes, by stripping the padding suffix, to one
distinct pattern, so solutions are emitted exactly once and in search
preorder: a pattern always precedes its extensions, extensions are ordered
by item id.
"""

from __future__ import annotations

import math
import sys
import time
from dataclasses import dataclass

from .core import EMPTY, MiningStats, PatternVars
from .database import ItemId, SequenceDatabase
from .errors import EmptyDatabaseError, ParameterError
from .frequency import ProjectedFrequencyFilter

Pattern = tuple[ItemId, ...]


def resolve_minsup(num_sequences: int, pct: float) -> int:
    """Convert a percentage threshold to an absolute support count, rounding up."""
    if not 0 < pct <= 100:
        raise ParameterError(f"minsup percentage must be in (0, 100], got {pct}")
    return math.ceil(num_sequences * pct / 100.0)


class SearchState:
    """Everything one mining run owns: variables, filters, statistics."""

    def __init__(
        self,
        db: SequenceDatabase,
        vars: PatternVars,
        minsup: int,
        filters: list,
        freq_filter: ProjectedFrequencyFilter,
    ):
        self.db = db
        self.vars = vars
        self.minsup = minsup
        self.filters = filters
        self.freq_filter = freq_filter
        self.stats = MiningStats()
        self.depth = 0
        self.root_failed = False


def new_search(db: SequenceDatabase, ell, minsup: int, filters) -> SearchState:
    """Validate parameters, order the filters, and run their install hooks.

    `ell` is the pattern capacity; "auto" uses the longest sequence length.
    `filters` must contain exactly one frequency filter; it is moved to the
    front of the propagation order. An install hook may report that the
    constraints are unsatisfiable outright, which marks the root as failed
    rather than raising.
    """
    if len(db) == 0:
        raise EmptyDatabaseError("cannot mine an empty database")
    if not isinstance(minsup, int) or minsup < 1:
        raise ParameterError(f"minsup must be a positive integer, got {minsup!r}")
    if ell == "auto":
        ell = db.maxlen
    if not isinstance(ell, int) or ell < 1:
        raise ParameterError(f"pattern capacity must be a positive integer, got {ell!r}")
    freq = [f for f in filters if isinstance(f, ProjectedFrequencyFilter)]
    if len(freq) != 1:
        raise ParameterError(
            f"exactly one frequency filter is required, got {len(freq)}"
        )
    freq_filter = freq[0]
    if freq_filter.db is not db:
        raise ParameterError("frequency filter was built for a different database")
    if freq_filter.minsup != minsup:
        raise ParameterError(
            f"frequency filter minsup {freq_filter.minsup} != search minsup {minsup}"
        )
    ordered = [freq_filter] + [f for f in filters if f is not freq_filter]
    vars = PatternVars(ell, db.num_items)
    state = SearchState(db, vars, minsup, ordered, freq_filter)
    for f in ordered:
        if not f.install(state):
            state.root_failed = True
            break
    return state


def propagate(state: SearchState, depth: int) -> bool:
    """Run every filter until none removes a value. False means failure."""
    vars = state.vars
    stats = state.stats
    while True:
        before = vars.total_removals
        for f in state.filters:
            stats.filter_calls += 1
            if not f.filter(state, depth):
                return False
        if vars.total_removals == before:
            return True


def decode_solution(vars: PatternVars) -> Pattern:
    """Strip the padding suffix off a complete assignment."""
    items = []
    for pos in range(1, vars.length + 1):
        value = vars.value(pos)
        if value == EMPTY:
            break
        items.append(value)
    return tuple(items)


def solve_all(state: SearchState, emit=None) -> MiningStats:
    """Enumerate every solution of the installed constraint system.

    `emit(pattern, support)` is called once per solution, in search
    preorder. Returns the populated statistics.
    """
    stats = state.stats
    start = time.perf_counter()
    if state.root_failed:
        stats.failures += 1
    else:
        needed = state.vars.length * 3 + 1000
        limit = sys.getrecursionlimit()
        try:
            if needed > limit:
                sys.setrecursionlimit(needed)
            if propagate(state, 0):
                _descend(state, 1, emit)
            else:
                stats.failures += 1
        finally:
            if needed > limit:
                sys.setrecursionlimit(limit)
    stats.removals = state.vars.total_removals
    stats.projection_work = state.freq_filter.work.units
    stats.millis = (time.perf_counter() - start) * 1000.0
    return stats


def _descend(state: SearchState, pos: int, emit) -> None:
    vars = state.vars
    if pos > vars.length:
        state.stats.solutions += 1
        if emit is not None:
            emit(decode_solution(vars), state.freq_filter.prefix_support())
        return
    for value in vars.ordered_values(pos):
        vars.checkpoint()
        state.stats.nodes += 1
        state.depth = pos
        if vars.assign(pos, value) and propagate(state, pos):
            _descend(state, pos + 1, emit)
        else:
            state.stats.failures += 1
        vars.restore()
        state.depth = pos - 1
        for f in state.filters:
            f.on_restore(state, pos - 1)


@dataclass
class MiningResult:
    """Solution list (pattern, support) plus the search statistics."""

    patterns: list[tuple[Pattern, int]]
    stats: MiningStats
    state: SearchState

    @property
    def pattern_set(self) -> set[Pattern]:
        return {p for p, _ in self.patterns}

    def named(self) -> list[tuple[tuple[str, ...], int]]:
        db = self.state.db
        return [(db.names(p), s) for p, s in self.patterns]


def mine(
    db: SequenceDatabase,
    minsup: int,
    ell="auto",
    constraints=(),
    backend: str = "auto",
    record_calls: bool = False,
) -> MiningResult:
    """Build the usual filter stack, run the search, collect the solutions."""
    freq = ProjectedFrequencyFilter(
        db, minsup, backend=backend, record_calls=record_calls
    )
    state = new_search(db, ell, minsup, [freq, *constraints])
    collected: list[tuple[Pattern, int]] = []
    solve_all(state, emit=lambda p, s: collected.append((p, s)))
    return MiningResult(collected, state.stats, state)
