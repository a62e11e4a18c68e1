"""
Validating a treebank at two strictness levels
==============================================

"""

from pathlib import Path

from tbkit import parse_document
from tbkit.validation import diagnostic_catalog, validate

FIXTURES = Path(__file__).resolve().parent.parent / "tests" / "fixtures"

# The catalog lists every diagnostic the validator can emit.
for code, severity, summary in diagnostic_catalog():
    print(f"{code:16s} {severity:7s} {summary}")

# A deliberately broken sentence: head points outside the sentence.
broken = parse_document(
    "1\tev\tev\tNOUN\tNoun\t_\t9\tnmod\t_\t_\n"
    "2\tbüyük\tbüyük\tADJ\tAdj\t_\t1\tamod\t_\t_\n\n"
)
for diag in validate(broken, level="basic"):
    print(diag.render())

# The ud level adds tree shape, tag inventories and convention checks.
# An unsplit -ki adjective is flagged as a warning, not an error.
unsplit = parse_document(
    "1\tduvardaki\tduvardaki\tADJ\tAdj\t_\t2\tamod\t_\t_\n"
    "2\tresim\tresim\tNOUN\tNoun\t_\t0\troot\t_\t_\n\n"
)
for diag in validate(unsplit, level="ud"):
    print(diag.render())

# Clean data produces an empty report.
clean = parse_document((FIXTURES / "table6.conllu").read_text(encoding="utf-8"))
print("diagnostics on clean data:", validate(clean, level="ud"))
