"""
Parsing CoNLL-U and writing it back unchanged
=============================================

"""

from pathlib import Path

from tbkit import parse_document, serialize_document

FIXTURES = Path(__file__).resolve().parent.parent / "tests" / "fixtures"

# Load a two-token sentence. The document keeps comments, tokens and
# multiword spans exactly as they appear on disk.
text = (FIXTURES / "table5.conllu").read_text(encoding="utf-8")
treebank = parse_document(text)

sentence = treebank.sentences[0]
for token in sentence.tokens:
    print(token.id, token.form, token.upos, token.head, token.deprel)

# Serialization is byte-identical to the normalized input, so a parse
# followed by a write never introduces spurious diffs.
assert serialize_document(treebank) == text
print("round trip is byte-identical")

# Feature bags normalize on output: keys sort case-insensitively.
token = sentence.token(1)
print("features:", token.feats.serialize())
