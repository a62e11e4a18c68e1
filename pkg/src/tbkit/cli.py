"""tbkit command line: batch access to every toolkit capability.

Exit codes: 0 success, 1 findings (validation errors, conflicts),
2 usage or I/O errors. Reports go to stdout, logs to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import metrics
from .conllu import ConlluError, parse_document, serialize_document
from .rules import ChangeSet, ChangeSetError, Lexicons, RULE_ORDER, run_rules
from .validation import InventoryConfig, has_errors, validate

EXIT_OK = 0
EXIT_FINDINGS = 1
EXIT_USAGE = 2


class CliError(Exception):
    def __init__(self, message, code=EXIT_USAGE):
        super().__init__(message)
        self.code = code


def _read_treebank(path):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror}")
    try:
        return parse_document(text, source=str(path))
    except ConlluError as exc:
        raise CliError(f"{path}: {exc}")


def _write(path, text):
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    try:
        Path(path).write_text(text, encoding="utf-8")
    except OSError as exc:
        raise CliError(f"cannot write {path}: {exc.strerror}")


def _load_lexicons_from_args(args):
    lex_dir = getattr(args, "lexicon", None)
    if lex_dir is None:
        return Lexicons.load()
    lex_dir = Path(lex_dir)
    if lex_dir.is_dir():
        def pick(name):
            candidate = lex_dir / name
            return candidate if candidate.exists() else None
        return Lexicons.load(
            lvc=pick("lvc_nouns.txt"),
            temporal=pick("temporal_nouns.txt"),
            stems=pick("stems.txt"),
        )
    raise CliError(f"--lexicon must name a directory: {lex_dir}")


def _load_inventory(args):
    path = getattr(args, "inventory", None)
    try:
        return InventoryConfig.load(path)
    except (OSError, json.JSONDecodeError, KeyError) as exc:
        raise CliError(f"cannot load inventory {path}: {exc}")


def cmd_validate(args):
    tb = _read_treebank(args.input)
    diagnostics = validate(tb, level=args.level, config=_load_inventory(args))
    if args.format == "json":
        for diag in diagnostics:
            print(diag.to_json())
    else:
        for diag in diagnostics:
            print(diag.render())
    return EXIT_FINDINGS if has_errors(diagnostics) else EXIT_OK


def cmd_transform(args):
    tb = _read_treebank(args.input)
    rules = [r for r in args.rules.split(",") if r]
    if not rules:
        raise CliError("--rules needs at least one rule name")
    lexicons = _load_lexicons_from_args(args)
    try:
        result, cs = run_rules(tb, rules, lexicons, mode=args.mode)
    except ValueError as exc:
        raise CliError(str(exc))
    except ChangeSetError as exc:
        print(f"conflict: {exc}", file=sys.stderr)
        return EXIT_FINDINGS
    if args.changes:
        _write(args.changes, cs.to_jsonl())
    if args.mode == "suggest":
        if not args.changes:
            sys.stdout.write(cs.to_jsonl())
    else:
        _write(args.output, serialize_document(result))
    print(f"{len(cs)} change records from rules {','.join(cs.rules)}", file=sys.stderr)
    return EXIT_OK


def cmd_stats(args):
    report = metrics.treebank_stats(_read_treebank(args.input))
    print(metrics.reports_to_json(report) if args.format == "json" else report.render())
    return EXIT_OK


def cmd_diff(args):
    old = _read_treebank(args.old)
    new = _read_treebank(args.new)
    fields = (
        tuple(f for f in args.fields.split(",") if f) if args.fields else metrics.DIFF_FIELDS
    )
    try:
        report = metrics.diff_treebanks(old, new, fields)
    except metrics.AlignmentError as exc:
        print(f"alignment error: {exc}", file=sys.stderr)
        return EXIT_FINDINGS
    for idx in report.skipped_sentences:
        print(f"warning: sentence {idx + 1} could not be aligned", file=sys.stderr)
    print(metrics.reports_to_json(report) if args.format == "json" else report.render())
    return EXIT_OK


def cmd_agree(args):
    ann_a = _read_treebank(args.ann_a)
    ann_b = _read_treebank(args.ann_b)
    try:
        report = metrics.agreement_report(ann_a, ann_b)
    except metrics.ScoringError as exc:
        print(f"scoring error: {exc}", file=sys.stderr)
        return EXIT_FINDINGS
    print(metrics.reports_to_json(report) if args.format == "json" else report.render())
    return EXIT_OK


def cmd_eval(args):
    gold = _read_treebank(args.gold)
    pred = _read_treebank(args.pred)
    try:
        uas, las = metrics.attachment_scores(gold, pred)
    except metrics.ScoringError as exc:
        print(f"scoring error: {exc}", file=sys.stderr)
        return EXIT_FINDINGS
    if args.format == "json":
        print(json.dumps({"uas": f"{uas:.2f}", "las": f"{las:.2f}"}))
    else:
        print(f"UAS {uas:.2f}")
        print(f"LAS {las:.2f}")
    return EXIT_OK


def cmd_serve(args):
    from .service import serve

    if not Path(args.data).exists():
        raise CliError(f"cannot read {args.data}: no such file")
    serve(
        args.data,
        port=args.port,
        inventory=_load_inventory(args),
        lexicons=_load_lexicons_from_args(args),
    )
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="tbkit", description="Treebank engineering toolkit"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a CoNLL-U file")
    p.add_argument("input")
    p.add_argument("--level", choices=["basic", "ud"], default="ud")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.add_argument("--inventory")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("transform", help="run re-annotation rules")
    p.add_argument("input")
    p.add_argument("--rules", required=True,
                   help=f"comma-separated subset of {','.join(RULE_ORDER)}")
    p.add_argument("--mode", choices=["suggest", "apply", "auto-only"],
                   default="suggest")
    p.add_argument("-o", "--output", default="-")
    p.add_argument("--changes", help="write the ChangeSet as JSON lines here")
    p.add_argument("--lexicon", help="directory with lexicon .txt overrides")
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("stats", help="treebank statistics")
    p.add_argument("input")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("diff", help="change accounting between two versions")
    p.add_argument("old")
    p.add_argument("new")
    p.add_argument("--fields", help="comma-separated subset of UPOS,XPOS,FEATS,DEPREL,MISC")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_diff)

    p = sub.add_parser("agree", help="inter-annotator agreement")
    p.add_argument("ann_a")
    p.add_argument("ann_b")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_agree)

    p = sub.add_parser("eval", help="attachment scores against gold")
    p.add_argument("--gold", required=True)
    p.add_argument("--pred", required=True)
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("serve", help="start the annotation service")
    p.add_argument("--data", required=True, help="CoNLL-U file to open")
    p.add_argument("--port", type=int, default=8750)
    p.add_argument("--inventory")
    p.add_argument("--lexicon")
    p.set_defaults(func=cmd_serve)

    return parser


def run(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except CliError as exc:
        print(f"tbkit: {exc}", file=sys.stderr)
        return exc.code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
