"""Command-line front end: mine, verify against the oracle, benchmark.

Exit codes: 0 success (and, for verify, agreement), 1 verification
mismatch, 2 usage or parameter error, 3 unreadable or malformed input.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

from .automata import compile_regex, compile_regex_nfa
from .constraints import MinSizeFilter, RegularFilter, among_filters
from .database import SequenceDatabase, load_spmf, load_symbolic
from .engine import MiningResult, mine, resolve_minsup
from .errors import (
    EmptyDatabaseError,
    ParameterError,
    ParseError,
    RegexSyntaxError,
    SpmfFormatError,
    UnknownItemError,
)
from .oracle import OracleConfig, RandomDbParams, enumerate_frequent, random_db

# Largest instance the oracle-backed verify command will accept.
_VERIFY_MAX_SEQUENCES = 25
_VERIFY_MAX_LENGTH = 10
_VERIFY_MAX_ITEMS = 6

_SWEEP_PARAMS = {"num_sequences": 15, "max_length": 8, "alphabet_size": 5}


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ParameterError, RegexSyntaxError, UnknownItemError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (OSError, SpmfFormatError, ParseError, EmptyDatabaseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="seqmine",
        description="Constraint-based sequential pattern mining.",
    )
    sub = parser.add_subparsers(required=True)

    constraint_flags = argparse.ArgumentParser(add_help=False)
    constraint_flags.add_argument(
        "--format", choices=("spmf", "symbolic"), default="spmf",
        help="input format: SPMF integer lines or symbolic names (default spmf)",
    )
    constraint_flags.add_argument(
        "--ell", type=int, default=None, metavar="N",
        help="pattern capacity; default: longest sequence length",
    )
    constraint_flags.add_argument(
        "--min-size", type=int, default=None, metavar="N",
        help="emit only patterns with at least N items",
    )
    constraint_flags.add_argument(
        "--require", action="append", default=[], metavar="ITEM",
        help="item that must occur in every pattern (repeatable)",
    )
    constraint_flags.add_argument(
        "--exclude", action="append", default=[], metavar="ITEM",
        help="item that must not occur in any pattern (repeatable)",
    )
    constraint_flags.add_argument(
        "--regex", default=None, metavar="EXPR",
        help="patterns must match this expression (items, '.', '|', '*', '+', '?')",
    )
    constraint_flags.add_argument(
        "--backend", choices=("auto", "scan", "index"), default="auto",
        help="projection backend (default auto)",
    )

    p_mine = sub.add_parser(
        "mine", parents=[constraint_flags],
        help="enumerate all patterns satisfying the constraints",
    )
    p_mine.add_argument("input", help="path to the sequence database")
    p_mine.add_argument(
        "--minsup", required=True, metavar="N[%]",
        help="minimum support, absolute count or percentage like 5%%",
    )
    p_mine.add_argument(
        "--output", choices=("text", "csv", "jsonl"), default="text",
        help="pattern listing format (default text)",
    )
    p_mine.set_defaults(func=cmd_mine)

    p_verify = sub.add_parser(
        "verify", parents=[constraint_flags],
        help="cross-check the engine against the brute-force oracle",
    )
    p_verify.add_argument("input", nargs="?", help="path to a small database")
    p_verify.add_argument(
        "--minsup", default=None, metavar="N[%]",
        help="minimum support for single-instance verification",
    )
    p_verify.add_argument(
        "--sweep", type=int, default=None, metavar="SEEDS",
        help="verify SEEDS random databases across all constraint combinations",
    )
    p_verify.add_argument(
        "--perturb", action="store_true", help=argparse.SUPPRESS
    )
    p_verify.set_defaults(func=cmd_verify)

    p_bench = sub.add_parser(
        "bench", parents=[constraint_flags],
        help="time mining runs and emit one CSV row per run",
    )
    p_bench.add_argument("input", help="path to the dataset")
    p_bench.add_argument(
        "--minsup", required=True, metavar="LIST",
        help="comma-separated thresholds, each absolute or a percentage",
    )
    p_bench.add_argument(
        "--repeats", type=int, default=1, metavar="N",
        help="repetitions per threshold (default 1)",
    )
    p_bench.set_defaults(func=cmd_bench)
    return parser


# -- shared helpers ----------------------------------------------------------


def _load_db(path: str, fmt: str) -> SequenceDatabase:
    loader = load_spmf if fmt == "spmf" else load_symbolic
    with open(path, encoding="utf-8") as handle:
        return loader(handle)


def _resolve_minsup_arg(text: str, num_sequences: int) -> int:
    if text.endswith("%"):
        try:
            pct = float(text[:-1])
        except ValueError:
            raise ParameterError(f"bad minsup percentage {text!r}") from None
        return resolve_minsup(num_sequences, pct)
    try:
        minsup = int(text)
    except ValueError:
        raise ParameterError(f"bad minsup {text!r}") from None
    if minsup < 1:
        raise ParameterError(f"minsup must be at least 1, got {minsup}")
    return minsup


def _build_constraints(args, db: SequenceDatabase) -> list:
    constraints = []
    if args.min_size is not None:
        constraints.append(MinSizeFilter(args.min_size))
    if args.require:
        constraints += among_filters(db.ids(args.require), 1, None)
    if args.exclude:
        constraints += among_filters(db.ids(args.exclude), 0, 0)
    if args.regex is not None:
        constraints.append(RegularFilter(compile_regex(args.regex, db.dictionary)))
    return constraints


def _run(args, db: SequenceDatabase, minsup: int) -> MiningResult:
    return mine(
        db,
        minsup,
        ell=args.ell if args.ell is not None else "auto",
        constraints=_build_constraints(args, db),
        backend=args.backend,
    )


def _summary(result: MiningResult, minsup: int) -> str:
    stats = result.stats
    return (
        f"#PATTERNS={stats.solutions} #MINSUP={minsup} #NODES={stats.nodes}"
        f" #FILTER_CALLS={stats.filter_calls} #REMOVALS={stats.removals}"
        f" #TIME_MS={stats.millis:.1f}"
    )


# -- mine ---------------------------------------------------------------------


def cmd_mine(args) -> int:
    db = _load_db(args.input, args.format)
    minsup = _resolve_minsup_arg(args.minsup, len(db))
    result = _run(args, db, minsup)
    if args.output == "text":
        for pattern, sup in result.named():
            print(f"{' '.join(pattern)} #SUP={sup}")
        print(_summary(result, minsup))
    elif args.output == "csv":
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(["pattern", "support"])
        for pattern, sup in result.named():
            writer.writerow([" ".join(pattern), sup])
        print(_summary(result, minsup), file=sys.stderr)
    else:
        for pattern, sup in result.named():
            print(json.dumps({"pattern": list(pattern), "support": sup}))
        print(_summary(result, minsup), file=sys.stderr)
    return 0


# -- verify --------------------------------------------------------------------


def _oracle_config(args, db: SequenceDatabase, minsup: int) -> OracleConfig:
    among = [(t, 1, None) for t in db.ids(args.require)]
    among += [(t, 0, 0) for t in db.ids(args.exclude)]
    return OracleConfig(
        minsup=minsup,
        max_pattern_length=args.ell if args.ell is not None else db.maxlen,
        min_size=args.min_size,
        among=tuple(among),
        regex_nfa=(
            compile_regex_nfa(args.regex, db.dictionary)
            if args.regex is not None
            else None
        ),
    )


def _verify_instance(args, db: SequenceDatabase, minsup: int) -> tuple[bool, int, str]:
    """Returns (match, solution count, human-readable detail)."""
    engine_set = _run(args, db, minsup).pattern_set
    if args.perturb and engine_set:
        engine_set.discard(max(engine_set))
    oracle_set = enumerate_frequent(db, _oracle_config(args, db, minsup))
    if engine_set == oracle_set:
        return True, len(oracle_set), ""
    missing = sorted(oracle_set - engine_set)
    extra = sorted(engine_set - oracle_set)
    detail = []
    if missing:
        names = ", ".join(" ".join(db.names(p)) for p in missing[:10])
        detail.append(f"missing {len(missing)}: {names}")
    if extra:
        names = ", ".join(" ".join(db.names(p)) for p in extra[:10])
        detail.append(f"extra {len(extra)}: {names}")
    return False, len(oracle_set), "; ".join(detail)


def cmd_verify(args) -> int:
    if args.sweep is not None:
        return _verify_sweep(args)
    if args.input is None or args.minsup is None:
        raise ParameterError("verify needs an input file and --minsup, or --sweep")
    db = _load_db(args.input, args.format)
    if (
        len(db) > _VERIFY_MAX_SEQUENCES
        or db.maxlen > _VERIFY_MAX_LENGTH
        or db.num_items > _VERIFY_MAX_ITEMS
    ):
        raise ParameterError(
            "instance exceeds oracle scale "
            f"(max {_VERIFY_MAX_SEQUENCES} sequences, length {_VERIFY_MAX_LENGTH},"
            f" {_VERIFY_MAX_ITEMS} items)"
        )
    minsup = _resolve_minsup_arg(args.minsup, len(db))
    match, count, detail = _verify_instance(args, db, minsup)
    if match:
        print(f"MATCH ({count} patterns)")
        return 0
    print(f"MISMATCH: {detail}")
    return 1


def _sweep_combos(db: SequenceDatabase):
    """Constraint combinations exercised per seed, as argument overrides."""
    names = db.dictionary.names
    first, second = names[0], names[1 % len(names)]
    return [
        ("freq", {}),
        ("size", {"min_size": 2}),
        ("require", {"require": [first]}),
        ("exclude", {"exclude": [second]}),
        ("regex", {"regex": f"{first} . * {second} ?"}),
        (
            "all",
            {
                "min_size": 2,
                "require": [first],
                "exclude": [second],
                "regex": f"{first} . *",
            },
        ),
    ]


def _verify_sweep(args) -> int:
    if args.sweep < 1:
        raise ParameterError("sweep needs at least one seed")
    failures = 0
    for seed in range(1, args.sweep + 1):
        db = random_db(RandomDbParams(seed=seed, **_SWEEP_PARAMS))
        minsup = 1 + (seed - 1) % 5
        cells = []
        for label, overrides in _sweep_combos(db):
            combo_args = argparse.Namespace(**vars(args))
            combo_args.min_size = overrides.get("min_size")
            combo_args.require = overrides.get("require", [])
            combo_args.exclude = overrides.get("exclude", [])
            combo_args.regex = overrides.get("regex")
            match, _, _ = _verify_instance(combo_args, db, minsup)
            cells.append(f"{label}={'ok' if match else 'FAIL'}")
            failures += 0 if match else 1
        print(f"seed={seed} minsup={minsup} " + " ".join(cells))
    if failures:
        print(f"{failures} mismatching runs", file=sys.stderr)
        return 1
    print("all runs match", file=sys.stderr)
    return 0


# -- bench ----------------------------------------------------------------------


def cmd_bench(args) -> int:
    thresholds = [part.strip() for part in args.minsup.split(",") if part.strip()]
    if not thresholds:
        raise ParameterError("bench needs at least one minsup value")
    if args.repeats < 1:
        raise ParameterError("repeats must be at least 1")
    db = _load_db(args.input, args.format)
    name = Path(args.input).stem
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(
        ["dataset", "minsup", "patterns", "nodes", "filter_calls", "removals", "millis"]
    )
    for threshold in thresholds:
        minsup = _resolve_minsup_arg(threshold, len(db))
        for _ in range(args.repeats):
            stats = _run(args, db, minsup).stats
            writer.writerow(
                [
                    name,
                    minsup,
                    stats.solutions,
                    stats.nodes,
                    stats.filter_calls,
                    stats.removals,
                    f"{stats.millis:.1f}",
                ]
            )
    return 0


if __name__ == "__main__":
    sys.exit(main())
