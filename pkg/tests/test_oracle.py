"""The brute-force reference miner and the random-instance generator."""

import itertools

import pytest

from seqmine import (
    OracleConfig,
    ParameterError,
    RandomDbParams,
    Sequence,
    SequenceDatabase,
    check_pattern,
    compile_regex_nfa,
    enumerate_frequent,
    is_subsequence,
    item_name,
    random_db,
    support,
)
from conftest import SDB1_FREQUENT_2, ids, pattern_names


def brute_force(db: SequenceDatabase, minsup: int, max_len: int) -> set:
    """Fully independent enumeration: all item tuples up to max_len."""
    found = set()
    for n in range(1, max_len + 1):
        for p in itertools.product(range(db.num_items), repeat=n):
            if support(db, p) >= minsup:
                found.add(p)
    return found


class TestRandomDb:
    def test_deterministic_in_the_seed(self):
        params = RandomDbParams(7, 10, 6, 4)
        first = random_db(params)
        second = random_db(params)
        assert [s.items for s in first.sequences] == [
            s.items for s in second.sequences
        ]
        assert first.dictionary == second.dictionary

    def test_different_seeds_differ(self):
        a = random_db(RandomDbParams(1, 10, 8, 4))
        b = random_db(RandomDbParams(2, 10, 8, 4))
        assert [s.items for s in a.sequences] != [s.items for s in b.sequences]

    def test_shape_respected(self):
        db = random_db(RandomDbParams(3, 12, 5, 3))
        assert len(db) == 12
        assert all(1 <= len(s.items) <= 5 for s in db.sequences)
        assert all(0 <= a < 3 for s in db.sequences for a in s.items)
        assert [s.sid for s in db.sequences] == list(range(1, 13))

    def test_full_alphabet_interned(self):
        db = random_db(RandomDbParams(4, 1, 1, 6))
        assert db.num_items == 6
        assert db.dictionary.names == ("A", "B", "C", "D", "E", "F")

    def test_item_names_past_the_letters(self):
        assert item_name(0) == "A"
        assert item_name(25) == "Z"
        assert item_name(26) == "i26"

    def test_parameter_validation(self):
        with pytest.raises(ParameterError):
            RandomDbParams(1, 0, 5, 3)
        with pytest.raises(ParameterError):
            RandomDbParams(1, 5, 0, 3)
        with pytest.raises(ParameterError):
            RandomDbParams(1, 5, 5, 0)


class TestCheckPattern:
    def test_min_size(self):
        cfg = OracleConfig(minsup=1, max_pattern_length=5, min_size=2)
        assert not check_pattern((0,), cfg)
        assert check_pattern((0, 1), cfg)

    def test_among_window(self):
        cfg = OracleConfig(minsup=1, max_pattern_length=5, among=((1, 1, 2),))
        assert not check_pattern((0, 0), cfg)
        assert check_pattern((0, 1), cfg)
        assert check_pattern((1, 1), cfg)
        assert not check_pattern((1, 1, 1), cfg)

    def test_unbounded_upper(self):
        cfg = OracleConfig(minsup=1, max_pattern_length=5, among=((0, 2, None),))
        assert check_pattern((0,) * 4, cfg)
        assert not check_pattern((0,), cfg)

    def test_regex(self):
        dic = random_db(RandomDbParams(1, 1, 1, 2)).dictionary
        nfa = compile_regex_nfa("A B *", dic)
        cfg = OracleConfig(minsup=1, max_pattern_length=5, regex_nfa=nfa)
        assert check_pattern((0,), cfg)
        assert check_pattern((0, 1, 1), cfg)
        assert not check_pattern((1,), cfg)

    def test_config_validation(self):
        with pytest.raises(ParameterError):
            OracleConfig(minsup=0, max_pattern_length=5)
        with pytest.raises(ParameterError):
            OracleConfig(minsup=1, max_pattern_length=0)


class TestEnumerateFrequent:
    def test_worked_example(self, sdb1):
        cfg = OracleConfig(minsup=2, max_pattern_length=sdb1.maxlen)
        assert pattern_names(sdb1, enumerate_frequent(sdb1, cfg)) == SDB1_FREQUENT_2

    def test_matches_independent_enumeration(self):
        for seed in range(1, 16):
            db = random_db(RandomDbParams(seed, 7, 5, 3))
            for minsup in (1, 2, 3):
                cfg = OracleConfig(minsup=minsup, max_pattern_length=5)
                assert enumerate_frequent(db, cfg) == brute_force(db, minsup, 5), (
                    seed,
                    minsup,
                )

    def test_single_sequence_db(self):
        db = SequenceDatabase.from_rows([["A", "B", "A"]])
        cfg = OracleConfig(minsup=1, max_pattern_length=3)
        assert pattern_names(db, enumerate_frequent(db, cfg)) == {
            "A", "B", "A B", "A A", "B A", "A B A",
        }

    def test_threshold_above_size_is_empty(self, sdb1):
        cfg = OracleConfig(minsup=len(sdb1) + 1, max_pattern_length=sdb1.maxlen)
        assert enumerate_frequent(sdb1, cfg) == set()

    def test_every_result_is_frequent_and_closed_downward(self):
        db = random_db(RandomDbParams(11, 9, 6, 4))
        cfg = OracleConfig(minsup=2, max_pattern_length=6)
        frequent = enumerate_frequent(db, cfg)
        for p in frequent:
            assert support(db, p) >= 2
            if len(p) > 1:
                assert p[:-1] in frequent

    def test_max_pattern_length_caps_results(self, sdb1):
        cfg = OracleConfig(minsup=2, max_pattern_length=2)
        assert pattern_names(sdb1, enumerate_frequent(sdb1, cfg)) == {
            "A", "B", "C", "A B", "A C", "B B", "B C",
        }

    def test_side_constraints_post_filter(self, sdb1):
        c = ids(sdb1, "C")[0]
        cfg = OracleConfig(
            minsup=2, max_pattern_length=sdb1.maxlen, among=((c, 1, None),)
        )
        assert pattern_names(sdb1, enumerate_frequent(sdb1, cfg)) == {
            "C", "A C", "B C", "A B C", "B B C",
        }


class TestContainmentGroundTruth:
    def test_embedding_respects_order(self):
        seq = Sequence(1, (0, 1, 2))
        assert is_subsequence((0, 2), seq)
        assert not is_subsequence((2, 0), seq)

    def test_empty_pattern_always_embeds(self):
        assert is_subsequence((), Sequence(1, (0,)))
        assert is_subsequence((), Sequence(1, ()))
