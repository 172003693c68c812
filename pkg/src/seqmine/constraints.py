"""Side-constraint filters: minimum size, item occurrence bounds, regular.

All three plug into the search through the same hook protocol as the
frequency filter and only ever narrow domains; completeness comes from the
search, so a filter is free to prune less than the strongest possible
deduction as long as it accepts exactly the right complete assignments.
"""

from __future__ import annotations

from .automata import Dfa
from .core import EMPTY, ConstraintFilter
from .errors import ParameterError


class MinSizeFilter(ConstraintFilter):
    """Patterns must use at least `min_size` real items.

    Equivalent to forbidding padding at the first `min_size` positions, so
    the whole constraint is enforced once at install time. A bound larger
    than the pattern capacity is unsatisfiable and fails the root.
    """

    def __init__(self, min_size: int):
        if min_size < 1:
            raise ParameterError(f"min-size must be at least 1, got {min_size}")
        self.min_size = min_size

    def install(self, state) -> bool:
        vars = state.vars
        if self.min_size > vars.length:
            return False
        for pos in range(2, self.min_size + 1):
            if not vars.remove_value(pos, EMPTY):
                return False
        return True


class AmongFilter(ConstraintFilter):
    """Keeps the occurrence count of one item inside [lower, upper].

    Padding never counts as an occurrence. `upper=None` means no upper
    bound. Filtering is bounds-based: it fails when the count can no longer
    land in the window, drops the item from open positions once the upper
    bound is reached, and when every open chance is needed to reach the
    lower bound, forces positions that could only offer this item or
    padding to take the item.
    """

    def __init__(self, item: int, lower: int, upper: int | None = None):
        if item < 0:
            raise ParameterError(f"item id must be nonnegative, got {item}")
        if lower < 0:
            raise ParameterError(f"lower bound must be nonnegative, got {lower}")
        if upper is not None and upper < lower:
            raise ParameterError(f"bounds out of order: [{lower}, {upper}]")
        self.item = item
        self.lower = lower
        self.upper = upper

    def filter(self, state, depth: int) -> bool:
        vars = state.vars
        t = self.item
        assigned = 0
        open_positions = []
        for pos in range(1, vars.length + 1):
            if not vars.contains(pos, t):
                continue
            if vars.is_assigned(pos):
                assigned += 1
            else:
                open_positions.append(pos)
        if self.upper is not None and assigned > self.upper:
            return False
        if assigned + len(open_positions) < self.lower:
            return False
        if self.upper is not None and assigned == self.upper:
            for pos in open_positions:
                if not vars.remove_value(pos, t):
                    return False
            return True
        if 0 < self.lower and self.lower - assigned == len(open_positions):
            # Every open position must end up providing the item; where the
            # only alternative left is padding, drop the padding.
            for pos in open_positions:
                if vars.domain_size(pos) == 2 and vars.contains(pos, EMPTY):
                    if not vars.remove_value(pos, EMPTY):
                        return False
        return True


def among_filters(items, lower: int, upper: int | None = None) -> list[AmongFilter]:
    """Occurrence-bound filters for a whole item set, one per member."""
    return [AmongFilter(t, lower, upper) for t in items]


class RegularFilter(ConstraintFilter):
    """The padded assignment must spell a word the automaton accepts.

    Classic layered filtering: a forward pass collects the automaton states
    reachable through the current domains, a backward pass keeps those that
    can still reach acceptance at the last layer, and a value survives only
    if some surviving state pair is connected through it.
    """

    def __init__(self, dfa: Dfa):
        self.dfa = dfa

    def filter(self, state, depth: int) -> bool:
        vars = state.vars
        dfa = self.dfa
        ell = vars.length
        domains = [vars.ordered_values(pos) for pos in range(1, ell + 1)]

        forward: list[set[int]] = [{dfa.start}]
        for pos in range(1, ell + 1):
            layer = {
                nxt
                for q in forward[pos - 1]
                for v in domains[pos - 1]
                if (nxt := dfa.step(q, v)) != dfa.dead
            }
            forward.append(layer)

        live = forward[ell] & dfa.accepting
        if not live:
            return False
        backward = [live]
        for pos in range(ell, 0, -1):
            prev = {
                q
                for q in forward[pos - 1]
                if any(dfa.step(q, v) in backward[0] for v in domains[pos - 1])
            }
            backward.insert(0, prev)

        for pos in range(1, ell + 1):
            for v in domains[pos - 1]:
                supported = any(
                    dfa.step(q, v) in backward[pos] for q in backward[pos - 1]
                )
                if not supported and not vars.remove_value(pos, v):
                    return False
        return True
