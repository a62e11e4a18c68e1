"""
Running the full transform pipeline with a review log
=====================================================

"""

from pathlib import Path

from tbkit import parse_document
from tbkit.rules import RULE_ORDER, Lexicons, run_rules

FIXTURES = Path(__file__).resolve().parent.parent / "tests" / "fixtures"

treebank = parse_document((FIXTURES / "mixed50.conllu").read_text(encoding="utf-8"))
lexicons = Lexicons.load()

# Suggest mode runs every rule against the untouched input and returns
# the combined change log without modifying anything.
_, suggested = run_rules(treebank, list(RULE_ORDER), lexicons, mode="suggest")
by_rule = {}
for record in suggested.records:
    by_rule.setdefault(record.rule, []).append(record)
for rule in RULE_ORDER:
    records = by_rule.get(rule, [])
    auto = sum(1 for r in records if r.confidence == "auto")
    print(f"{rule:8s} {len(records):3d} suggestions ({auto} auto)")

# auto-only mode applies just the high-confidence records; the rest stay
# in the log for a human to accept one by one.
applied, log = run_rules(treebank, list(RULE_ORDER), lexicons, mode="auto-only")
print("tokens before:", sum(len(s.tokens) for s in treebank.sentences))
print("tokens after: ", sum(len(s.tokens) for s in applied.sentences))

# The log serializes to JSON lines for archival or later replay.
print(log.to_jsonl().splitlines()[0])
