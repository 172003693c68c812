"""Minimum-size, occurrence-bound, and regular-language filtering."""

import itertools

import pytest

from seqmine import (
    EMPTY,
    AmongFilter,
    MinSizeFilter,
    OracleConfig,
    ParameterError,
    PatternVars,
    ProjectedFrequencyFilter,
    RandomDbParams,
    RegularFilter,
    SequenceDatabase,
    among_filters,
    compile_regex,
    compile_regex_nfa,
    enumerate_frequent,
    mine,
    new_search,
    nfa_accepts,
    propagate,
    random_db,
    solve_all,
)
from conftest import SDB1_FREQUENT_2, ids, pattern_names


def search_with(db, constraints, minsup=2, ell="auto"):
    freq = ProjectedFrequencyFilter(db, minsup)
    return new_search(db, ell, minsup, [freq, *constraints])


class TestMinSize:
    def test_install_removes_padding_from_early_positions(self, sdb1):
        state = search_with(sdb1, [MinSizeFilter(3)])
        assert not state.vars.contains(2, EMPTY)
        assert not state.vars.contains(3, EMPTY)
        assert state.vars.contains(4, EMPTY)
        assert state.vars.contains(5, EMPTY)

    def test_size_one_changes_nothing(self, sdb1):
        plain = search_with(sdb1, [])
        sized = search_with(sdb1, [MinSizeFilter(1)])
        for pos in range(1, 6):
            assert sized.vars.domain(pos) == plain.vars.domain(pos)

    def test_bound_beyond_capacity_fails_the_root(self, sdb1):
        state = search_with(sdb1, [MinSizeFilter(6)])
        assert state.root_failed
        stats = solve_all(state)
        assert stats.solutions == 0
        assert stats.failures == 1

    def test_mining_keeps_only_long_patterns(self, sdb1):
        result = mine(sdb1, 2, constraints=[MinSizeFilter(3)])
        assert pattern_names(sdb1, result.pattern_set) == {"A B C", "B B C"}

    def test_validation(self):
        with pytest.raises(ParameterError):
            MinSizeFilter(0)


class TestAmong:
    def test_require_item(self, sdb1):
        b = ids(sdb1, "B")[0]
        result = mine(sdb1, 2, constraints=among_filters([b], 1))
        assert pattern_names(sdb1, result.pattern_set) == SDB1_FREQUENT_2 - {
            "A", "C", "A C",
        }

    def test_exclude_item(self, sdb1):
        c = ids(sdb1, "C")[0]
        result = mine(sdb1, 2, constraints=among_filters([c], 0, 0))
        assert pattern_names(sdb1, result.pattern_set) == {"A", "B", "A B", "B B"}

    def test_exclusion_prunes_at_the_root(self, sdb1):
        c = ids(sdb1, "C")[0]
        state = search_with(sdb1, among_filters([c], 0, 0))
        assert propagate(state, 0)
        for pos in range(1, 6):
            assert not state.vars.contains(pos, c)

    def test_at_least_two_occurrences(self, sdb1):
        b = ids(sdb1, "B")[0]
        result = mine(sdb1, 2, constraints=[AmongFilter(b, 2)])
        assert pattern_names(sdb1, result.pattern_set) == {"B B", "B B C"}

    def test_at_most_one_occurrence(self, sdb1):
        b = ids(sdb1, "B")[0]
        result = mine(sdb1, 2, constraints=[AmongFilter(b, 0, 1)])
        assert pattern_names(sdb1, result.pattern_set) == SDB1_FREQUENT_2 - {
            "B B", "B B C",
        }

    def test_lower_bound_forces_padding_out(self):
        # Two open positions whose only alternative to the item is padding,
        # and both are needed to reach the bound.
        vars = PatternVars(length=3, num_items=3)
        b = 1
        vars.assign(1, 0)
        for pos in (2, 3):
            vars.retain_items(pos, {b})

        class Stub:
            pass

        state = Stub()
        state.vars = vars
        assert AmongFilter(b, 2).filter(state, 1)
        assert vars.domain(2) == {b}
        assert vars.domain(3) == {b}

    def test_impossible_window_fails(self):
        vars = PatternVars(length=2, num_items=2)
        vars.assign(1, 0)
        vars.assign(2, 0)

        class Stub:
            pass

        state = Stub()
        state.vars = vars
        assert not AmongFilter(0, 0, 1).filter(state, 2)
        assert not AmongFilter(1, 1).filter(state, 2)

    def test_oracle_agreement(self):
        for seed in range(1, 11):
            db = random_db(RandomDbParams(seed, 8, 6, 4))
            t = db.ids(["A"])[0]
            for lower, upper in [(1, None), (0, 0), (2, None), (0, 1)]:
                got = mine(db, 2, constraints=among_filters([t], lower, upper))
                cfg = OracleConfig(
                    minsup=2, max_pattern_length=db.maxlen, among=((t, lower, upper),)
                )
                expected = enumerate_frequent(db, cfg)
                assert got.pattern_set == set(expected), (seed, lower, upper)

    def test_validation(self):
        with pytest.raises(ParameterError):
            AmongFilter(-1, 0)
        with pytest.raises(ParameterError):
            AmongFilter(0, -1)
        with pytest.raises(ParameterError):
            AmongFilter(0, 2, 1)


class TestRegular:
    def test_forces_first_item_and_padding(self, sdb1):
        dfa = compile_regex("A", sdb1.dictionary)
        state = search_with(sdb1, [RegularFilter(dfa)], ell=3)
        assert propagate(state, 0)
        a = ids(sdb1, "A")[0]
        assert state.vars.domain(1) == {a}
        assert state.vars.domain(2) == {EMPTY}
        assert state.vars.domain(3) == {EMPTY}

    def test_worked_example(self, sdb1):
        dfa = compile_regex("A * B C", sdb1.dictionary)
        result = mine(sdb1, 2, constraints=[RegularFilter(dfa)])
        assert pattern_names(sdb1, result.pattern_set) == {"B C", "A B C"}

    def test_language_disjoint_from_frequent_items_fails_root(self, sdb1):
        # D is the only word, but D is infrequent at this threshold.
        dfa = compile_regex("D", sdb1.dictionary)
        state = search_with(sdb1, [RegularFilter(dfa)])
        assert not propagate(state, 0)
        result = mine(sdb1, 2, constraints=[RegularFilter(dfa)])
        assert result.pattern_set == set()

    def test_exhaustive_small_languages(self):
        # Complete database of every word up to length 4 over three items at
        # threshold 1: mining with the filter must return exactly the words
        # the automaton accepts.
        names = ["A", "B", "C"]
        rows = [
            [names[i] for i in word]
            for n in range(1, 5)
            for word in itertools.product(range(3), repeat=n)
        ]
        db = SequenceDatabase.from_rows(rows)
        exprs = [
            "A",
            "A *",
            "A * B ( B | C )",
            "( A | B ) + C ?",
            ". . *",
            "A ? B ? C ?",
            "( A | B | C ) ( A | B | C )",
        ]
        for expr in exprs:
            dfa = compile_regex(expr, db.dictionary)
            nfa = compile_regex_nfa(expr, db.dictionary)
            got = mine(db, 1, ell=4, constraints=[RegularFilter(dfa)])
            expected = {
                word
                for n in range(1, 5)
                for word in itertools.product(range(3), repeat=n)
                if nfa_accepts(nfa, word)
            }
            assert got.pattern_set == expected, expr

    def test_oracle_agreement_with_stacked_filters(self):
        for seed in range(1, 9):
            db = random_db(RandomDbParams(seed, 8, 6, 3))
            expr = "A . * B ?"
            dfa = compile_regex(expr, db.dictionary)
            nfa = compile_regex_nfa(expr, db.dictionary)
            b = db.ids(["B"])[0]
            got = mine(
                db,
                2,
                constraints=[
                    MinSizeFilter(2),
                    RegularFilter(dfa),
                    *among_filters([b], 0, 1),
                ],
            )
            cfg = OracleConfig(
                minsup=2,
                max_pattern_length=db.maxlen,
                min_size=2,
                among=((b, 0, 1),),
                regex_nfa=nfa,
            )
            assert got.pattern_set == set(enumerate_frequent(db, cfg)), seed
