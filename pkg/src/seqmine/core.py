"""Pattern variables with backtrackable bitmask domains.

A candidate pattern is a fixed-length vector of variables, each ranging over
the item alphabet plus a padding value :data:`EMPTY`. Padding marks unused
trailing positions so a single vector length covers every pattern size:
position 1 never allows padding, and once a position is padded every later
position must be too. With both rules in force a full assignment decodes
uniquely to the pattern formed by its non-padding prefix.

Domains are Python-int bitsets, which keeps hundreds of positions over tens
of thousands of items affordable. Every removal after the first checkpoint
is recorded on a trail of `(position, cleared_mask)` pairs so that
backtracking is a cheap bitwise OR; removals made before any checkpoint are
permanent.
"""

from __future__ import annotations

from dataclasses import dataclass, field

EMPTY = -1
"""Public encoding of the padding value. Sorts before all item ids."""

_EMPTY_BIT = 0  # internal bit index of the padding value


def _bit_to_value(bit: int) -> int:
    return EMPTY if bit == _EMPTY_BIT else bit - 1


def _value_to_bit(value: int) -> int:
    return _EMPTY_BIT if value == EMPTY else value + 1


class PatternVars:
    """`length` variables over `num_items` items plus the padding value.

    Fresh domains contain every item everywhere and the padding value at all
    positions except the first. All positions are 1-based.
    """

    def __init__(self, length: int, num_items: int):
        assert length >= 1 and num_items >= 1
        self.length = length
        self.num_items = num_items
        full = (1 << (num_items + 1)) - 1
        self._domains = [full] * length
        self._domains[0] = full & ~1  # no padding at the first position
        self._trail: list[tuple[int, int]] = []
        self._checkpoints: list[int] = []
        self.total_removals = 0

    # -- queries ---------------------------------------------------------

    def domain_size(self, pos: int) -> int:
        return self._domains[pos - 1].bit_count()

    def domain(self, pos: int) -> set[int]:
        """The domain as a set of public values (items and possibly EMPTY)."""
        mask = self._domains[pos - 1]
        out = set()
        if mask & 1:
            out.add(EMPTY)
        mask >>= 1
        v = 0
        while mask:
            if mask & 1:
                out.add(v)
            mask >>= 1
            v += 1
        return out

    def contains(self, pos: int, value: int) -> bool:
        return bool(self._domains[pos - 1] >> _value_to_bit(value) & 1)

    def is_assigned(self, pos: int) -> bool:
        mask = self._domains[pos - 1]
        return mask != 0 and mask & (mask - 1) == 0

    def value(self, pos: int) -> int:
        """The single value of an assigned position."""
        mask = self._domains[pos - 1]
        assert mask != 0 and mask & (mask - 1) == 0, f"position {pos} not assigned"
        return _bit_to_value(mask.bit_length() - 1)

    def is_failed(self, pos: int) -> bool:
        return self._domains[pos - 1] == 0

    def ordered_values(self, pos: int) -> list[int]:
        """Domain values in branching order: padding first, then items ascending."""
        mask = self._domains[pos - 1]
        out = []
        bit = 0
        while mask:
            if mask & 1:
                out.append(_bit_to_value(bit))
            mask >>= 1
            bit += 1
        return out

    # -- updates ---------------------------------------------------------

    def _clear(self, pos: int, cleared: int) -> None:
        if not cleared:
            return
        i = pos - 1
        self._domains[i] &= ~cleared
        if self._checkpoints:
            self._trail.append((pos, cleared))
        self.total_removals += cleared.bit_count()

    def remove_value(self, pos: int, value: int) -> bool:
        """Remove one value. Returns False if the domain wiped out."""
        bit = 1 << _value_to_bit(value)
        self._clear(pos, self._domains[pos - 1] & bit)
        return self._domains[pos - 1] != 0

    def assign(self, pos: int, value: int) -> bool:
        """Reduce the domain to a single value. Returns False on wipeout."""
        bit = 1 << _value_to_bit(value)
        mask = self._domains[pos - 1]
        if not mask & bit:
            self._clear(pos, mask)
            return False
        self._clear(pos, mask & ~bit)
        return True

    def retain_items(self, pos: int, keep: set[int]) -> bool:
        """Drop every item not in `keep`; the padding value is never touched."""
        keep_mask = 1  # padding bit survives
        for a in keep:
            keep_mask |= 1 << (a + 1)
        self._clear(pos, self._domains[pos - 1] & ~keep_mask)
        return self._domains[pos - 1] != 0

    # -- backtracking ----------------------------------------------------

    def checkpoint(self) -> None:
        self._checkpoints.append(len(self._trail))

    def restore(self) -> None:
        """Undo every removal since the matching checkpoint."""
        mark = self._checkpoints.pop()
        trail = self._trail
        domains = self._domains
        while len(trail) > mark:
            pos, cleared = trail.pop()
            domains[pos - 1] |= cleared

    @property
    def trail_length(self) -> int:
        return len(self._trail)

    @property
    def depth(self) -> int:
        return len(self._checkpoints)


@dataclass
class MiningStats:
    """Search effort counters reported alongside the solution set."""

    nodes: int = 0
    solutions: int = 0
    failures: int = 0
    filter_calls: int = 0
    removals: int = 0
    projection_work: int = 0
    millis: float = 0.0


class ConstraintFilter:
    """Base for propagators plugged into the search.

    Subclasses override any of the three hooks. `install` runs once before
    search and may prune permanently; `filter` runs inside the fixpoint loop
    at every node; `on_restore` runs after the solver backtracks to `depth`.
    Both pruning hooks return False to signal failure.
    """

    def install(self, state) -> bool:
        return True

    def filter(self, state, depth: int) -> bool:
        return True

    def on_restore(self, state, depth: int) -> None:
        pass
