"""
Corpus statistics, version diffs and annotator agreement
========================================================

"""

from pathlib import Path

from tbkit import parse_document
from tbkit.metrics import (
    agreement_report,
    attachment_scores,
    diff_treebanks,
    treebank_stats,
)

FIXTURES = Path(__file__).resolve().parent.parent / "tests" / "fixtures"

treebank = parse_document((FIXTURES / "mixed50.conllu").read_text(encoding="utf-8"))

# Descriptive statistics keep exact fractions internally and render to
# two decimals only at the edge.
stats = treebank_stats(treebank)
print("sentences:", stats.sentence_count)
print("avg tokens/sentence:", stats.to_dict()["avg_tokens_per_sentence"])
print("avg arc length:", stats.to_dict()["avg_arc_length"])

# Diffing two revisions of the same text aligns tokens by character
# offsets, so token splits line up instead of derailing the comparison.
old = parse_document((FIXTURES / "table5.conllu").read_text(encoding="utf-8"))
new = parse_document((FIXTURES / "table6.conllu").read_text(encoding="utf-8"))
report = diff_treebanks(old, new)
print("changes by field:", dict(report.field_counts))
print("UPOS transitions:", report.top_transitions("UPOS"))

# Attachment scores and chance-corrected agreement need identical
# tokenization; scoring a file against itself is the sanity baseline.
print("self UAS/LAS:", attachment_scores(treebank, treebank))
agreement = agreement_report(treebank, treebank)
print("label kappa:", agreement.label_kappa)
print("attachment kappa:", agreement.uas_kappa)
