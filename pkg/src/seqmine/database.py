"""Immutable sequence databases and the ground-truth containment primitives.

A database is a list of identified item sequences over a finite alphabet.
Item names (either symbolic words or the integer tokens of the SPMF text
format) are interned into dense integer ids in first-seen order; all mining
code works on the dense ids and converts back to names only at the output
boundary.

Sequence identifiers and positions are 1-based throughout the public API.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import IO, Iterable, Iterator, Sequence as PySequence

from .errors import EmptyDatabaseError, ParseError, SpmfFormatError, UnknownItemError

ItemId = int
"""Dense non-negative index into the item dictionary."""


@dataclass(frozen=True)
class Sequence:
    """One database row: an identifier and an ordered list of item ids."""

    sid: int
    items: tuple[ItemId, ...]

    def __len__(self) -> int:
        return len(self.items)

    def __iter__(self) -> Iterator[ItemId]:
        return iter(self.items)


@dataclass(frozen=True)
class DbStats:
    num_sequences: int
    num_items: int
    avg_length: float
    max_length: int


class ItemDictionary:
    """Bijection between external item names and dense ids.

    Ids are assigned in first-seen order, so reloading a dump of a database
    reproduces the same ids.
    """

    def __init__(self) -> None:
        self._id_of: dict[str, int] = {}
        self._names: list[str] = []

    def intern(self, name: str) -> ItemId:
        item = self._id_of.get(name)
        if item is None:
            item = len(self._names)
            self._id_of[name] = item
            self._names.append(name)
        return item

    def id_of(self, name: str) -> ItemId:
        try:
            return self._id_of[name]
        except KeyError:
            raise UnknownItemError(f"unknown item name: {name!r}") from None

    def name_of(self, item: ItemId) -> str:
        return self._names[item]

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(self._names)

    def __contains__(self, name: str) -> bool:
        return name in self._id_of

    def __len__(self) -> int:
        return len(self._names)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ItemDictionary):
            return NotImplemented
        return self._names == other._names


class SequenceDatabase:
    """Immutable store of sequences plus their item dictionary.

    Safe to share across threads once constructed; sids are dense 1..m.
    """

    def __init__(self, sequences: tuple[Sequence, ...], dictionary: ItemDictionary):
        self.sequences = sequences
        self.dictionary = dictionary
        self.maxlen = max((len(s) for s in sequences), default=0)

    @classmethod
    def from_rows(cls, rows: Iterable[PySequence[str]]) -> "SequenceDatabase":
        """Build a database from rows of item names, interning in first-seen order."""
        dictionary = ItemDictionary()
        sequences = []
        for sid, row in enumerate(rows, start=1):
            items = tuple(dictionary.intern(name) for name in row)
            sequences.append(Sequence(sid, items))
        return cls(tuple(sequences), dictionary)

    def seq(self, sid: int) -> Sequence:
        """Return the sequence with the given 1-based identifier."""
        return self.sequences[sid - 1]

    @property
    def num_items(self) -> int:
        return len(self.dictionary)

    def __len__(self) -> int:
        return len(self.sequences)

    def __iter__(self) -> Iterator[Sequence]:
        return iter(self.sequences)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SequenceDatabase):
            return NotImplemented
        return self.sequences == other.sequences and self.dictionary == other.dictionary

    def names(self, items: Iterable[ItemId]) -> tuple[str, ...]:
        name_of = self.dictionary.name_of
        return tuple(name_of(a) for a in items)

    def ids(self, names: Iterable[str]) -> tuple[ItemId, ...]:
        id_of = self.dictionary.id_of
        return tuple(id_of(n) for n in names)


def load_spmf(source: IO[str]) -> SequenceDatabase:
    """Parse the SPMF sequence format: -1 closes an itemset, -2 closes a sequence.

    Every itemset must contain exactly one item; multi-item itemsets are
    rejected rather than flattened because flattening silently changes
    supports.
    """
    rows: list[list[str]] = []
    current: list[str] = []
    itemset: list[str] = []
    for token in _tokens(source):
        if token == "-1":
            if len(itemset) != 1:
                raise SpmfFormatError(
                    f"sequence {len(rows) + 1}: itemset of size {len(itemset)}, "
                    "expected exactly one item"
                )
            current.append(itemset[0])
            itemset = []
        elif token == "-2":
            if itemset:
                raise SpmfFormatError(
                    f"sequence {len(rows) + 1}: itemset not closed by -1 before -2"
                )
            if not current:
                raise SpmfFormatError(f"sequence {len(rows) + 1}: empty sequence")
            rows.append(current)
            current = []
        else:
            try:
                value = int(token)
            except ValueError:
                raise ParseError(f"non-integer token {token!r}") from None
            if value < 0:
                raise ParseError(f"unexpected negative token {token!r}")
            itemset.append(token)
    if itemset or current:
        raise SpmfFormatError("trailing tokens after the last -2 terminator")
    if not rows:
        raise EmptyDatabaseError("input contains no sequences")
    return SequenceDatabase.from_rows(rows)


def load_symbolic(source: IO[str]) -> SequenceDatabase:
    """Parse the symbolic format: one sequence per line of whitespace-separated names."""
    rows = [line.split() for line in source if line.strip()]
    if not rows:
        raise EmptyDatabaseError("input contains no sequences")
    return SequenceDatabase.from_rows(rows)


def dump_spmf(db: SequenceDatabase, out: IO[str]) -> None:
    """Write the SPMF representation; item names must be integer tokens."""
    for seq in db:
        names = db.names(seq.items)
        for name in names:
            try:
                int(name)
            except ValueError:
                raise SpmfFormatError(
                    f"item name {name!r} is not an integer token; use dump_symbolic"
                ) from None
        out.write(" -1 ".join(names) + " -1 -2\n")


def dump_symbolic(db: SequenceDatabase, out: IO[str]) -> None:
    for seq in db:
        out.write(" ".join(db.names(seq.items)) + "\n")


def _tokens(source: IO[str]) -> Iterator[str]:
    for line in source:
        yield from line.split()


def is_subsequence(alpha: PySequence[ItemId], s: Sequence) -> bool:
    """True iff alpha embeds into s at strictly increasing positions.

    The greedy left-to-right scan is correct for plain containment and runs
    in O(len(s)).
    """
    if not alpha:
        return True
    k = 0
    last = len(alpha)
    for item in s.items:
        if item == alpha[k]:
            k += 1
            if k == last:
                return True
    return False


def support(db: SequenceDatabase, p: PySequence[ItemId]) -> int:
    """Number of database sequences containing p."""
    return sum(1 for s in db if is_subsequence(p, s))


def stats(db: SequenceDatabase) -> DbStats:
    if len(db) == 0:
        raise EmptyDatabaseError("statistics of an empty database are undefined")
    total = sum(len(s) for s in db)
    return DbStats(
        num_sequences=len(db),
        num_items=db.num_items,
        avg_length=total / len(db),
        max_length=db.maxlen,
    )
