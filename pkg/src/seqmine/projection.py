"""Pseudo-projected databases and locally frequent item counting.

A projected database for a prefix never copies suffixes: each surviving
sequence is represented by a `(sid, start)` pair where `start` is the 1-based
position of the first suffix item (`length + 1` encodes the empty suffix).
Projections are extended incrementally one prefix item at a time, which keeps
each step linear in the items actually scanned.

Two interchangeable implementations are provided: the plain scanning
functions below, and :class:`SuffixIndex`, a vectorized backend used for
large databases. Both produce identical projections and counts.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence as PySequence

import numpy as np

from .database import ItemId, SequenceDatabase


class WorkCounter:
    """Accumulates the unit work performed by projection and filtering calls."""

    __slots__ = ("units",)

    def __init__(self) -> None:
        self.units = 0

    def add(self, n: int) -> None:
        self.units += n


class PseudoProjection:
    """Ordered `(sid, start)` pairs representing a projected database.

    Each sid appears at most once and the number of entries equals the
    support of the defining prefix.
    """

    __slots__ = ("sids", "starts")

    def __init__(self, sids: np.ndarray, starts: np.ndarray):
        self.sids = sids
        self.starts = starts

    @classmethod
    def from_entries(cls, entries: Iterable[tuple[int, int]]) -> "PseudoProjection":
        pairs = list(entries)
        sids = np.fromiter((p[0] for p in pairs), dtype=np.int64, count=len(pairs))
        starts = np.fromiter((p[1] for p in pairs), dtype=np.int64, count=len(pairs))
        return cls(sids, starts)

    @property
    def entries(self) -> list[tuple[int, int]]:
        return list(zip(self.sids.tolist(), self.starts.tolist()))

    def __len__(self) -> int:
        return len(self.sids)

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return zip(self.sids.tolist(), self.starts.tolist())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PseudoProjection):
            return NotImplemented
        return np.array_equal(self.sids, other.sids) and np.array_equal(
            self.starts, other.starts
        )

    def __repr__(self) -> str:
        return f"PseudoProjection({self.entries!r})"


@dataclass
class FrequentItemSet:
    """Items whose local support in a projection reaches the threshold."""

    items: set[ItemId]
    counts: dict[ItemId, int] = field(default_factory=dict)

    def __contains__(self, item: ItemId) -> bool:
        return item in self.items


def initial_projection(db: SequenceDatabase) -> PseudoProjection:
    """The whole database, untouched: one `(sid, 1)` entry per sequence."""
    m = len(db)
    return PseudoProjection(
        np.arange(1, m + 1, dtype=np.int64), np.ones(m, dtype=np.int64)
    )


def project(
    db: SequenceDatabase,
    proj: PseudoProjection,
    alpha: PySequence[ItemId],
    work: WorkCounter | None = None,
) -> PseudoProjection:
    """Extend a projection by scanning each suffix for the leftmost embedding of alpha.

    Entries whose suffix does not contain alpha are dropped; the others are
    replaced by `(sid, pos)` where `pos` is the position just after the
    match. Input order is preserved.
    """
    assert alpha, "projection prefix must be non-empty"
    sequences = db.sequences
    out_sids: list[int] = []
    out_starts: list[int] = []
    la = len(alpha)
    scanned = 0
    for sid, start in proj:
        items = sequences[sid - 1].items
        n = len(items)
        assert 1 <= start <= n + 1, f"invalid projection entry ({sid}, {start})"
        k = 0
        pos = start - 1
        while k < la and pos < n:
            if items[pos] == alpha[k]:
                k += 1
            pos += 1
            scanned += 1
        if k == la:
            out_sids.append(sid)
            out_starts.append(pos + 1)
    if work is not None:
        work.add(scanned)
    return PseudoProjection(
        np.array(out_sids, dtype=np.int64), np.array(out_starts, dtype=np.int64)
    )


def frequent_items(
    db: SequenceDatabase,
    proj: PseudoProjection,
    minsup: int,
    work: WorkCounter | None = None,
) -> FrequentItemSet:
    """Count, per entry, the first occurrence of each item in the suffix.

    An item contributes at most 1 per entry no matter how often it repeats.
    Counts live in a dense array indexed by item id; the per-entry seen
    marks are reset in O(1) with a generation stamp.
    """
    assert minsup >= 1, "minsup must be at least 1"
    d = db.num_items
    counts = [0] * d
    seen = [0] * d
    sequences = db.sequences
    gen = 0
    scanned = 0
    for sid, start in proj:
        gen += 1
        items = sequences[sid - 1].items
        for j in range(start - 1, len(items)):
            a = items[j]
            if seen[a] != gen:
                seen[a] = gen
                counts[a] += 1
        scanned += len(items) - (start - 1)
    if work is not None:
        work.add(scanned + 2 * d)
    freq = {a for a in range(d) if counts[a] >= minsup}
    return FrequentItemSet(freq, {a: counts[a] for a in freq})


class SuffixIndex:
    """Vectorized projection backend over a padded item matrix.

    Builds two static views of the database: a `(m, maxlen)` matrix of item
    ids for leftmost-occurrence searches, and per-sequence `(item, last
    position)` tables for distinct-item support counting. Results are
    identical to :func:`project` and :func:`frequent_items`.
    """

    def __init__(self, db: SequenceDatabase):
        self.db = db
        m = len(db)
        d = db.num_items
        maxlen = db.maxlen
        self.num_items = d
        mat = np.full((m, maxlen), d, dtype=np.int32)
        lengths = np.empty(m, dtype=np.int32)
        for i, seq in enumerate(db):
            row = seq.items
            lengths[i] = len(row)
            mat[i, : len(row)] = row
        self.mat = mat
        self.lengths = lengths
        self._cols = np.arange(maxlen, dtype=np.int32)

        # Per-sequence distinct items with their last occurrence, flattened.
        flat_items: list[np.ndarray] = []
        flat_last: list[np.ndarray] = []
        offsets = np.zeros(m + 1, dtype=np.int64)
        for i, seq in enumerate(db):
            row = np.asarray(seq.items, dtype=np.int64)
            last = np.full(d, -1, dtype=np.int64)
            last[row] = np.arange(1, len(row) + 1)  # later writes win
            present = np.nonzero(last >= 0)[0]
            flat_items.append(present)
            flat_last.append(last[present])
            offsets[i + 1] = offsets[i] + len(present)
        self.item_table = (
            np.concatenate(flat_items) if flat_items else np.zeros(0, dtype=np.int64)
        )
        self.last_table = (
            np.concatenate(flat_last) if flat_last else np.zeros(0, dtype=np.int64)
        )
        self.offsets = offsets

    def project(self, proj: PseudoProjection, item: ItemId) -> PseudoProjection:
        """Single-item projection step, vectorized across all entries."""
        sids, starts = proj.sids, proj.starts
        if len(sids) == 0:
            return PseudoProjection(sids.copy(), starts.copy())
        rows = self.mat[sids - 1]
        hits = (rows == item) & (self._cols >= (starts - 1)[:, None])
        found = hits.any(axis=1)
        first = hits.argmax(axis=1)
        return PseudoProjection(
            sids[found].astype(np.int64), (first[found] + 2).astype(np.int64)
        )

    def frequent_items(
        self, proj: PseudoProjection, minsup: int
    ) -> FrequentItemSet:
        assert minsup >= 1, "minsup must be at least 1"
        d = self.num_items
        sids, starts = proj.sids, proj.starts
        if len(sids) == 0:
            return FrequentItemSet(set(), {})
        seg_start = self.offsets[sids - 1]
        seg_len = self.offsets[sids] - seg_start
        total = int(seg_len.sum())
        if total == 0:
            return FrequentItemSet(set(), {})
        # Ragged gather of every (item, last position) row for the entry's sid.
        ends = np.cumsum(seg_len)
        within = np.arange(total, dtype=np.int64) - np.repeat(ends - seg_len, seg_len)
        idx = np.repeat(seg_start, seg_len) + within
        items = self.item_table[idx]
        in_suffix = self.last_table[idx] >= np.repeat(starts, seg_len)
        counts = np.bincount(items[in_suffix], minlength=d)
        freq_ids = np.nonzero(counts >= minsup)[0]
        freq = set(freq_ids.tolist())
        return FrequentItemSet(freq, {int(a): int(counts[a]) for a in freq_ids})
