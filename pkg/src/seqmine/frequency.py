"""The frequency global constraint driven by incremental pseudo-projection.

One filter instance owns a stack of pseudo-projections, level k holding the
projected database of the current k-item prefix. Each assignment event
either pads the rest of the pattern (the prefix is already certified
frequent) or extends the stack by one projection step, fails when the
projection is too small to ever reach the support threshold, and removes
items that are no longer locally frequent from every later position.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import EMPTY, ConstraintFilter, PatternVars
from .database import SequenceDatabase
from .errors import ParameterError
from .projection import (
    FrequentItemSet,
    PseudoProjection,
    SuffixIndex,
    WorkCounter,
    frequent_items,
    initial_projection,
    project,
)

# Databases at least this large (total matrix cells) get the vectorized backend.
_INDEX_THRESHOLD = 250_000


class PsdbStack:
    """Pseudo-projections of the current prefix, one level per prefix item.

    Level 0 is the initial projection of the whole database; level k the
    projection of the first k assigned items. Levels are popped on
    backtrack, never recomputed.
    """

    def __init__(self, root: PseudoProjection):
        self.levels = [root]

    @property
    def top(self) -> PseudoProjection:
        return self.levels[-1]

    def level(self, k: int) -> PseudoProjection:
        return self.levels[k]

    def push(self, proj: PseudoProjection) -> None:
        self.levels.append(proj)

    def pop_to(self, count: int) -> None:
        """Drop levels until at most `count` remain."""
        del self.levels[count:]

    def __len__(self) -> int:
        return len(self.levels)


@dataclass
class FilterCallRecord:
    """Instrumented cost of one projection event inside the frequency filter.

    `work` is the operation count actually spent; `budget` the linear
    feature it is expected to track: items in the scanned suffixes, plus one
    counting pass over the alphabet, plus one pruning pass over all future
    domains.
    """

    prefix_length: int
    work: int
    budget: int


class ProjectedFrequencyFilter(ConstraintFilter):
    """Prunes locally infrequent items from every position after the prefix.

    `backend` selects how projections are computed: "scan" walks suffixes in
    Python (and feeds the work counter), "index" uses the vectorized
    `SuffixIndex`, "auto" picks by database size. Results are identical.

    With `record_calls` the filter keeps a `FilterCallRecord` per projection
    event; this forces the scan backend since only it meters its work.
    """

    def __init__(
        self,
        db: SequenceDatabase,
        minsup: int,
        backend: str = "auto",
        record_calls: bool = False,
    ):
        if minsup < 1:
            raise ParameterError(f"minsup must be at least 1, got {minsup}")
        if backend not in ("auto", "scan", "index"):
            raise ParameterError(f"unknown projection backend {backend!r}")
        if backend == "auto":
            backend = "index" if len(db) * db.maxlen >= _INDEX_THRESHOLD else "scan"
        if record_calls and backend != "scan":
            raise ParameterError("call recording requires the scan backend")
        self.db = db
        self.minsup = minsup
        self.backend = backend
        self.index = SuffixIndex(db) if backend == "index" else None
        self.work = WorkCounter()
        self.call_records: list[FilterCallRecord] | None = (
            [] if record_calls else None
        )
        self.stack = PsdbStack(initial_projection(db))
        # Highest assignment event already handled; 0 is the root event.
        self._pruned_through = -1

    # -- filter protocol ---------------------------------------------------

    def install(self, state) -> bool:
        self.stack = PsdbStack(initial_projection(self.db))
        self._pruned_through = -1
        return True

    def filter(self, state, depth: int) -> bool:
        vars = state.vars
        if self._pruned_through < 0:
            # Root event: the whole database projects the empty prefix.
            root = self.stack.level(0)
            if len(root) < self.minsup:
                return False
            self._pruned_through = 0
            units_before = self.work.units
            freq = self._frequent(root)
            self._record(0, vars, root, units_before)
            if not self._prune_future(vars, 0, freq):
                return False
        while self._pruned_through < depth:
            pos = self._pruned_through + 1
            value = vars.value(pos)
            if value == EMPTY:
                # The prefix was certified frequent one level up; the only
                # extension left is padding through to the end.
                self._pruned_through = vars.length
                return self._pad_rest(vars, pos)
            base = self.stack.top
            units_before = self.work.units
            psdb = self._project_step(base, value)
            if len(psdb) < self.minsup:
                return False
            self.stack.push(psdb)
            self._pruned_through = pos
            freq = self._frequent(psdb)
            self._record(pos, vars, base, units_before)
            if not self._prune_future(vars, pos, freq):
                return False
        return True

    def on_restore(self, state, depth: int) -> None:
        if self._pruned_through > depth:
            self._pruned_through = depth
        if len(self.stack) > depth + 1:
            self.stack.pop_to(depth + 1)

    # -- results -------------------------------------------------------------

    def prefix_support(self) -> int:
        """Support of the current fully-projected prefix."""
        return len(self.stack.top)

    # -- helpers -------------------------------------------------------------

    def _pad_rest(self, vars: PatternVars, pos: int) -> bool:
        for j in range(pos + 1, vars.length + 1):
            if not vars.assign(j, EMPTY):
                return False
        return True

    def _prune_future(self, vars: PatternVars, pos: int, freq: FrequentItemSet) -> bool:
        for j in range(pos + 1, vars.length + 1):
            if not vars.retain_items(j, freq.items):
                return False
        return True

    def _project_step(self, base: PseudoProjection, item: int) -> PseudoProjection:
        if self.index is not None:
            return self.index.project(base, item)
        return project(self.db, base, (item,), self.work)

    def _frequent(self, proj: PseudoProjection) -> FrequentItemSet:
        if self.index is not None:
            return self.index.frequent_items(proj, self.minsup)
        return frequent_items(self.db, proj, self.minsup, self.work)

    def _record(
        self,
        pos: int,
        vars: PatternVars,
        scanned: PseudoProjection,
        units_before: int,
    ) -> None:
        if self.call_records is None:
            return
        d = self.db.num_items
        work = self.work.units - units_before + (vars.length - pos) * d
        budget = self._suffix_items(scanned) + d + vars.length * d
        self.call_records.append(FilterCallRecord(pos, work, budget))

    def _suffix_items(self, proj: PseudoProjection) -> int:
        sequences = self.db.sequences
        return sum(
            len(sequences[sid - 1].items) - start + 1 for sid, start in proj
        )
