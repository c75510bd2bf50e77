"""Command line front end: preprocess, parseval, and gec subcommands.

Exit codes: 0 on success, 2 for usage problems, 3 when the two inputs
cannot be aligned, 4 for malformed input files.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import __version__
from .align import AlignmentError, SimilarityConfig
from .gec import M2Error, merge_and_reindex, parse_m2, score_gec
from .parseval import evaluate_parseval, format_report
from .preprocess import evaluate_basic, evaluate_joint, prf
from .textmodel import (ConlluError, DEFAULT_EXCEPTION_LEXICON, LexiconError,
                        NormalizationPolicy, load_exception_lexicon, read_conllu,
                        read_plain)
from .tree import (DEFAULT_LEGACY_PARAMS, DUMMY_ROOT_LABEL, TreeError,
                   parse_bracketed, read_legacy_params)

EXCEPTIONS_ENV_VAR = "JPEVAL_EXCEPTIONS"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="jpeval",
        description="Evaluate system output against a gold standard even when "
                    "sentence boundaries and tokenization disagree.")
    parser.add_argument("--version", action="version", version=f"jpeval {__version__}")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common(p):
        p.add_argument("--gold", required=True, help="gold standard file")
        p.add_argument("--sys", required=True, dest="sys_path", help="system output file")
        p.add_argument("--alpha", type=float, default=0.9,
                       help="near-match similarity threshold; 1.0 disables near matching")
        p.add_argument("--lowercase", action="store_true",
                       help="compare case-insensitively")
        p.add_argument("--exceptions", default=None,
                       help=f"exception lexicon file, or 'builtin' for the built-in "
                            f"entries (default: ${EXCEPTIONS_ENV_VAR} if set)")
        p.add_argument("--output", choices=("text", "json"), default="text",
                       help="report format")
        p.add_argument("--out", default=None, help="write the report to this path "
                                                   "instead of standard output")

    p = sub.add_parser("preprocess", help="tokenization and sentence boundary scores")
    common(p)
    p.add_argument("--input-format", choices=("plain", "conllu"), default="plain",
                   help="how to read the gold and system files")

    p = sub.add_parser("parseval", help="bracket scores over constituency trees")
    common(p)
    p.add_argument("--legacy", action="store_true",
                   help="apply classical parameter-file filtering before scoring")
    p.add_argument("--params", default=None,
                   help="parameter file for --legacy (default: built-in rules)")
    p.add_argument("--dummy-label", default=DUMMY_ROOT_LABEL,
                   help="label of the root inserted when merging trees")

    p = sub.add_parser("gec", help="grammatical error correction scores over m2 files")
    common(p)
    p.add_argument("--beta", type=float, default=0.5, help="F-measure beta")
    p.add_argument("--mode", choices=("correction", "detection"), default="correction",
                   help="match edits with or without their corrections")
    return parser


def _read(path: str) -> str:
    with open(path, encoding="utf-8") as handle:
        return handle.read()


def _policy_from_args(args) -> NormalizationPolicy:
    source = args.exceptions or os.environ.get(EXCEPTIONS_ENV_VAR) or None
    if source is None:
        lexicon = {}
    elif source == "builtin":
        lexicon = dict(DEFAULT_EXCEPTION_LEXICON)
    else:
        lexicon = load_exception_lexicon(_read(source))
    return NormalizationPolicy(lowercase=args.lowercase, exception_lexicon=lexicon)


def _config_echo(args, policy) -> dict:
    echo = {
        "gold": args.gold,
        "sys": args.sys_path,
        "alpha": args.alpha,
        "lowercase": policy.lowercase,
        "exceptions": args.exceptions or os.environ.get(EXCEPTIONS_ENV_VAR) or "",
    }
    if args.subcommand == "preprocess":
        echo["input_format"] = args.input_format
    if args.subcommand == "parseval":
        echo["legacy"] = args.legacy
        echo["params"] = args.params or ""
        echo["dummy_label"] = args.dummy_label
    if args.subcommand == "gec":
        echo["beta"] = args.beta
        echo["mode"] = args.mode
    return echo


def _fmt_counts_line(name, tp, fp, fn, scores) -> str:
    return (f"{name:<10} {tp:>8} {fp:>8} {fn:>8} "
            f"{scores.precision:>10.4f} {scores.recall:>10.4f} {scores.f1:>10.4f}")


def _run_preprocess(args, policy, cfg) -> dict:
    reader = read_conllu if args.input_format == "conllu" else read_plain
    gold = reader(_read(args.gold), source_label="gold")
    sysd = reader(_read(args.sys_path), source_label="sys")
    counts = evaluate_joint(gold, sysd, policy, cfg)
    check = evaluate_basic(gold, sysd, policy, cfg)
    if check != counts:
        raise RuntimeError("internal error: joint and basic counts disagree")
    sb = prf(counts.tp_sb, counts.c_sb_sys, counts.c_sb_gold)
    tk = prf(counts.tp_tk, counts.c_tk_sys, counts.c_tk_gold)
    text_lines = [
        f"{'':>10} {'TP':>8} {'FP':>8} {'FN':>8} {'Precision':>10} {'Recall':>10} {'F1':>10}",
        _fmt_counts_line("sentences", counts.tp_sb, counts.c_sb_sys - counts.tp_sb,
                         counts.c_sb_gold - counts.tp_sb, sb),
        _fmt_counts_line("tokens", counts.tp_tk, counts.c_tk_sys - counts.tp_tk,
                         counts.c_tk_gold - counts.tp_tk, tk),
    ]
    return {
        "counts": {
            "c_sb_gold": counts.c_sb_gold, "c_sb_sys": counts.c_sb_sys,
            "c_tk_gold": counts.c_tk_gold, "c_tk_sys": counts.c_tk_sys,
            "tp_sb": counts.tp_sb, "tp_tk": counts.tp_tk,
            "fp_sb": counts.c_sb_sys - counts.tp_sb,
            "fn_sb": counts.c_sb_gold - counts.tp_sb,
            "fp_tk": counts.c_tk_sys - counts.tp_tk,
            "fn_tk": counts.c_tk_gold - counts.tp_tk,
        },
        "metrics": {
            "sentences": {"precision": round(sb.precision, 4), "recall": round(sb.recall, 4),
                          "f1": round(sb.f1, 4)},
            "tokens": {"precision": round(tk.precision, 4), "recall": round(tk.recall, 4),
                       "f1": round(tk.f1, 4)},
        },
        "text": "\n".join(text_lines) + "\n",
    }


def _run_parseval(args, policy, cfg) -> dict:
    gold = parse_bracketed(_read(args.gold))
    sysd = parse_bracketed(_read(args.sys_path))
    legacy = None
    if args.legacy:
        legacy = (read_legacy_params(_read(args.params))
                  if args.params else DEFAULT_LEGACY_PARAMS)
    rows, summary = evaluate_parseval(gold, sysd, policy, cfg, legacy=legacy,
                                      dummy_label=args.dummy_label)
    return {
        "counts": {"c_gold": summary.c_gold, "c_sys": summary.c_sys, "c_tp": summary.c_tp,
                   "sentences": summary.sentences},
        "metrics": {"precision": round(summary.precision, 2),
                    "recall": round(summary.recall, 2),
                    "f1": round(summary.f1, 2),
                    "pos_accuracy": round(summary.pos_accuracy, 2),
                    "complete_match": round(summary.complete_match, 2)},
        "rows": [{"id": r.id, "length": r.length, "status": r.status,
                  "recall": round(r.recall, 2), "precision": round(r.precision, 2),
                  "matched_brackets": r.matched_brackets, "gold_brackets": r.gold_brackets,
                  "test_brackets": r.test_brackets, "cross_brackets": r.cross_brackets,
                  "words": r.words, "correct_tags": r.correct_tags,
                  "tag_accuracy": round(r.tag_accuracy, 2)} for r in rows],
        "text": format_report(rows, summary),
    }


def _run_gec(args, policy, cfg) -> dict:
    gold = parse_m2(_read(args.gold))
    sysd = parse_m2(_read(args.sys_path))
    pairs = merge_and_reindex(gold, sysd, policy, cfg)
    score = score_gec(pairs, beta=args.beta, mode=args.mode)
    label = f"F{args.beta:g}"
    lines = [
        f"{'type':<12} {'TP':>8} {'FP':>8} {'FN':>8}",
    ]
    for t, (tpt, fpt, fnt) in score.per_type.items():
        lines.append(f"{t:<12} {tpt:>8} {fpt:>8} {fnt:>8}")
    lines.append("")
    lines.append(f"{'TP':>8} {'FP':>8} {'FN':>8} {'Precision':>10} {'Recall':>10} {label:>10}")
    lines.append(f"{score.tp:>8} {score.fp:>8} {score.fn:>8} "
                 f"{score.precision:>10.4f} {score.recall:>10.4f} {score.f_beta:>10.4f}")
    return {
        "counts": {"tp": score.tp, "fp": score.fp, "fn": score.fn,
                   "entries": len(pairs)},
        "metrics": {"precision": round(score.precision, 4),
                    "recall": round(score.recall, 4),
                    "f_beta": round(score.f_beta, 4),
                    "beta": score.beta},
        "per_type": {t: {"tp": v[0], "fp": v[1], "fn": v[2]}
                     for t, v in score.per_type.items()},
        "text": "\n".join(lines) + "\n",
    }


def emit_structured(report: dict) -> str:
    """Deterministic attribute-value rendering of a report."""
    return json.dumps(report, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def run(argv) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 2
    for path in (args.gold, args.sys_path):
        if not os.path.isfile(path):
            print(f"jpeval: cannot read {path!r}", file=sys.stderr)
            return 2
    try:
        cfg = SimilarityConfig(threshold_alpha=args.alpha)
        policy = _policy_from_args(args)
        if args.subcommand == "preprocess":
            body = _run_preprocess(args, policy, cfg)
        elif args.subcommand == "parseval":
            body = _run_parseval(args, policy, cfg)
        else:
            body = _run_gec(args, policy, cfg)
    except AlignmentError as exc:
        print(f"jpeval: alignment impossible: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"jpeval: cannot read {exc.filename!r}", file=sys.stderr)
        return 2
    except (M2Error, TreeError, ConlluError, LexiconError, ValueError) as exc:
        print(f"jpeval: {exc}", file=sys.stderr)
        return 4

    config = _config_echo(args, policy)
    if args.output == "json":
        report = {"tool": "jpeval", "version": __version__,
                  "subcommand": args.subcommand, "config": config}
        report.update({k: v for k, v in body.items() if k != "text"})
        rendered = emit_structured(report)
    else:
        header = [f"jpeval {__version__} {args.subcommand}"]
        header.extend(f"  {k} = {v}" for k, v in sorted(config.items()))
        rendered = "\n".join(header) + "\n\n" + body["text"]
    if args.out:
        with open(args.out, "w", encoding="utf-8") as handle:
            handle.write(rendered)
    else:
        sys.stdout.write(rendered)
    return 0


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
