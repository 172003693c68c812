import pytest

from seqmine import SequenceDatabase

# The four-sequence worked example used throughout the tests:
#   s1 = A B C B C,  s2 = B A B C,  s3 = A B,  s4 = B C D
SDB1_ROWS = [
    ["A", "B", "C", "B", "C"],
    ["B", "A", "B", "C"],
    ["A", "B"],
    ["B", "C", "D"],
]

# All its patterns with support >= 2, verified by hand and by the oracle.
SDB1_FREQUENT_2 = {
    "A", "B", "C", "A B", "A C", "B B", "B C", "A B C", "B B C",
}


@pytest.fixture
def sdb1() -> SequenceDatabase:
    return SequenceDatabase.from_rows(SDB1_ROWS)


def pattern_names(db: SequenceDatabase, patterns) -> set[str]:
    """Render id-tuples as space-joined names for readable comparisons."""
    return {" ".join(db.names(p)) for p in patterns}


def ids(db: SequenceDatabase, text: str) -> tuple[int, ...]:
    """Inverse of pattern_names for a single pattern, e.g. "A B C"."""
    return db.ids(text.split())
