"""
Splitting suffixal -ki words into host + clitic
===============================================

"""

from pathlib import Path

from tbkit import parse_document, serialize_document
from tbkit.rules import run_rules

FIXTURES = Path(__file__).resolve().parent.parent / "tests" / "fixtures"

# "başındaki şapkası": the first word carries an adjectivizer -ki.
before = parse_document((FIXTURES / "table5.conllu").read_text(encoding="utf-8"))
print("before:")
print(serialize_document(before))

# The ki rule classifies each candidate (adjectivizer vs pronominal),
# strips the clitic, reconstructs the host's case features, and records
# the original surface form as a multiword span.
after, changes = run_rules(before, ["ki"], mode="apply")
print("after:")
print(serialize_document(after))

# Every edit is logged: token splits carry the full replacement rows.
for record in changes.records:
    print(record.kind, "rule=%s" % record.rule, "confidence=%s" % record.confidence)

# The pronominal variant ("seninki") keeps ki as a PRON head instead.
pron = parse_document((FIXTURES / "table7.conllu").read_text(encoding="utf-8"))
split, _ = run_rules(pron, ["ki"], mode="apply")
print(serialize_document(split))
