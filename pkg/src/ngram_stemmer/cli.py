"""Command-line front end.

Exit codes: 0 success, 1 selftest failure, 2 input error, 3 when stored
edit distances in a pairs file disagree with the recomputed ones.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .corpus import load_index
from .evaluation import check_expected, compare_report, paired_distances, read_pairs_tsv
from .report import dump_json, report_document, report_tsv, stem_record, stems_tsv
from .selftest import run_selftest
from .stemmer import StemmerConfig, stem

EXIT_OK = 0
EXIT_SELFTEST_FAILED = 1
EXIT_INPUT = 2
EXIT_MISMATCH = 3


class InputError(Exception):
    pass


def _non_negative(text):
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {value}")
    return value


def _alpha(text):
    value = float(text)
    if not 0 < value < 1:
        raise argparse.ArgumentTypeError(f"alpha must lie in (0, 1), got {value}")
    return value


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8", newline="\n")
    else:
        sys.stdout.write(text)


def _require_file(path: str) -> None:
    if not Path(path).is_file():
        raise InputError(f"{path}: no such file")


def cmd_index_stats(args) -> int:
    _require_file(args.corpus)
    index = load_index(args.corpus, raw_text=args.raw_text)
    lines = [f"entries={index.entry_count} tokens={index.total_tokens}"]
    for prefix, freq in index.top_prefixes(args.prefix_len, args.top):
        lines.append(f"{prefix}*\t{freq}")
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def cmd_stem(args) -> int:
    _require_file(args.corpus)
    words = list(args.words)
    if args.input:
        _require_file(args.input)
        with open(args.input, encoding="utf-8") as fh:
            words += fh.read().split()
    if not words:
        raise InputError("no words to stem")
    config = StemmerConfig(
        gamma=args.gamma,
        frequency_floor=args.floor,
        oov_passthrough=not args.no_oov_passthrough,
    )
    index = load_index(args.corpus, raw_text=args.raw_text)
    records = [stem_record(w, stem(index, w, config), trace=args.trace) for w in words]
    if args.format == "json":
        text = dump_json(records) + "\n"
    else:
        text = stems_tsv(records, trace=args.trace)
    _emit(text, args.out)
    return EXIT_OK


def cmd_eval(args) -> int:
    _require_file(args.pairs)
    rows = read_pairs_tsv(args.pairs)
    if not rows:
        raise InputError(f"{args.pairs}: no pairs")
    records = paired_distances([r.pair for r in rows])
    report = compare_report(
        records,
        args.alpha,
        exact=args.exact,
        correction=args.correction,
        tie_correction=args.tie_correction,
    )
    doc = report_document(report, include_rows=args.rows)
    _emit(dump_json(doc) + "\n" if args.format == "json" else report_tsv(doc), args.out)
    mismatches = check_expected(rows, records)
    for m in mismatches:
        print(f"mismatch: {m}", file=sys.stderr)
    return EXIT_MISMATCH if mismatches else EXIT_OK


def cmd_selftest(args) -> int:
    text, ok = run_selftest(Path(args.data_dir) if args.data_dir else None)
    _emit(text, args.out)
    return EXIT_OK if ok else EXIT_SELFTEST_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ngram-stem",
        description="Prefix-frequency N-gram stemmer and stemmer evaluation.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def corpus_flags(p):
        p.add_argument("--corpus", required=True, help="word<TAB>count TSV, or plain text with --raw-text")
        p.add_argument("--raw-text", action="store_true", help="tokenize the corpus file as running text")

    def out_flag(p):
        p.add_argument("--out", help="write output here instead of stdout")

    index = sub.add_parser("index", help="corpus index utilities")
    index_sub = index.add_subparsers(dest="index_command", required=True)
    stats = index_sub.add_parser("stats", help="entry count, token total and top prefixes")
    corpus_flags(stats)
    stats.add_argument("--top", type=_non_negative, default=10, help="number of prefixes to list")
    stats.add_argument("--prefix-len", type=int, default=4, help="prefix length to rank (default 4)")
    out_flag(stats)
    stats.set_defaults(func=cmd_index_stats)

    st = sub.add_parser("stem", help="stem words against a corpus")
    corpus_flags(st)
    st.add_argument("words", nargs="*", help="words to stem")
    st.add_argument("--input", help="file of whitespace-separated words")
    st.add_argument("--gamma", type=_non_negative, default=0, help="frequency-drop threshold (default 0)")
    st.add_argument("--floor", type=_non_negative, default=0, help="report prefix counts below this as 0")
    st.add_argument("--no-oov-passthrough", action="store_true", help="stem words whose 4-gram is unseen")
    st.add_argument("--format", choices=("tsv", "json"), default="tsv")
    st.add_argument("--trace", action="store_true", help="include the per-step trace")
    out_flag(st)
    st.set_defaults(func=cmd_stem)

    ev = sub.add_parser("eval", help="compare two stemmers with the Wilcoxon signed-rank test")
    ev.add_argument("pairs", help="word<TAB>stem_a<TAB>stem_b[<TAB>ld_a<TAB>ld_b] file")
    ev.add_argument("--alpha", type=_alpha, default=0.05)
    ev.add_argument("--format", choices=("tsv", "json"), default="tsv")
    ev.add_argument("--rows", action="store_true", help="include per-row distances")
    ev.add_argument("--correction", action="store_true", help="apply a continuity correction")
    ev.add_argument("--tie-correction", action="store_true", help="use the tie-adjusted variance")
    ev.add_argument("--exact", action="store_true", help="exact enumeration instead of the normal approximation")
    out_flag(ev)
    ev.set_defaults(func=cmd_eval)

    sf = sub.add_parser("selftest", help="run the acceptance checks on the bundled fixtures")
    sf.add_argument("--data-dir", help="read fixtures from this directory instead")
    out_flag(sf)
    sf.set_defaults(func=cmd_selftest)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InputError, OSError, ValueError) as exc:
        # corpus/pairs format errors and the exact test's size guard land here
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
