"""Well-formedness checking with the extended tag and relation inventories.

Findings are data (Diagnostic values), never exceptions: annotation in
progress is expected to be invalid and still needs to be loadable and
inspectable.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .morphology import turkish_lower
from .rules import KiClass, classify_ki

SEVERITY_ERROR = "error"
SEVERITY_WARNING = "warning"

# (code, severity, description); every code validate() can emit.
CATALOG = (
    ("E_ID_SEQ", SEVERITY_ERROR, "token ids are not a gapless 1..n sequence"),
    ("E_HEAD_RANGE", SEVERITY_ERROR, "head is not 0 or the id of a token in the sentence"),
    ("E_HEAD_MISSING", SEVERITY_ERROR, "token has an empty head field"),
    ("E_SPAN_RANGE", SEVERITY_ERROR, "multiword span covers ids that do not exist"),
    ("E_FEATS_FORMAT", SEVERITY_ERROR, "FEATS is not well-formed Key=Value pairs with unique keys"),
    ("W_MULTI_ROOT", SEVERITY_WARNING, "more than one token with head 0 (basic level)"),
    ("E_MULTI_ROOT", SEVERITY_ERROR, "more than one token with head 0"),
    ("E_NO_ROOT", SEVERITY_ERROR, "no token with head 0"),
    ("E_CYCLE", SEVERITY_ERROR, "head references contain a cycle or unreachable token"),
    ("E_UPOS_INV", SEVERITY_ERROR, "UPOS outside the configured inventory"),
    ("W_XPOS_INV", SEVERITY_WARNING, "XPOS outside the configured inventory"),
    ("E_DEPREL_INV", SEVERITY_ERROR, "deprel outside the configured inventory"),
    ("E_MISC_VALUE", SEVERITY_ERROR, "recognized MISC key with an invalid value"),
    ("E_DEPDER_SHAPE", SEVERITY_ERROR, "dep:der on a token that is not PART with XPOS Attr"),
    ("E_PARTIC_UPOS", SEVERITY_ERROR, "XPOS Partic on a token that is not PRON"),
    ("W_KI_UNSPLIT", SEVERITY_WARNING, "adjectivizer -ki form that is a candidate for splitting"),
)

_SEVERITY = {code: severity for code, severity, _ in CATALOG}


def diagnostic_catalog():
    """The stable catalog of diagnostic codes."""
    return list(CATALOG)


@dataclass(frozen=True)
class Diagnostic:
    code: str
    severity: str
    sentence: int
    token: int | None
    message: str

    def render(self):
        where = f"sent {self.sentence + 1}"
        if self.token is not None:
            where += f" token {self.token}"
        return f"{self.severity.upper()} {self.code} [{where}] {self.message}"

    def to_json(self):
        return json.dumps({
            "code": self.code,
            "severity": self.severity,
            "sentence": self.sentence,
            "token": self.token,
            "message": self.message,
        }, ensure_ascii=False)


@dataclass(frozen=True)
class InventoryConfig:
    """Allowed tag sets plus the MISC key grammar."""

    upos: frozenset
    xpos: frozenset
    deprel: frozenset
    misc_values: dict = field(default_factory=dict)   # key -> allowed values, None = any nonempty
    feats_values: dict = field(default_factory=dict)  # key -> known values (vocab only)

    @classmethod
    def from_dict(cls, data):
        misc = {}
        for key, values in data.get("misc", {}).items():
            misc[key] = None if values is None else frozenset(values)
        return cls(
            upos=frozenset(data["upos"]),
            xpos=frozenset(data["xpos"]),
            deprel=frozenset(data["deprel"]),
            misc_values=misc,
            feats_values={k: list(v) for k, v in data.get("feats", {}).items()},
        )

    @classmethod
    def load(cls, path=None):
        """Load from a JSON config file, or the bundled default inventory."""
        if path is not None:
            return cls.from_dict(json.loads(Path(path).read_text(encoding="utf-8")))
        data = resources.files("tbkit.data").joinpath("inventory.json")
        return cls.from_dict(json.loads(data.read_text(encoding="utf-8")))


def _diag(out, code, sentence, token, message):
    out.append(Diagnostic(code, _SEVERITY[code], sentence, token, message))


def _check_basic(sent, idx, out, level):
    ids = [t.id for t in sent.tokens]
    if ids != list(range(1, len(ids) + 1)):
        _diag(out, "E_ID_SEQ", idx, None, f"ids are {ids}")
    id_set = set(ids)
    for tok in sent.tokens:
        if tok.head is None:
            _diag(out, "E_HEAD_MISSING", idx, tok.id, "head is empty")
        elif tok.head != 0 and tok.head not in id_set:
            _diag(out, "E_HEAD_RANGE", idx, tok.id, f"head {tok.head} does not exist")
        if tok.feats.problems:
            _diag(out, "E_FEATS_FORMAT", idx, tok.id, "; ".join(tok.feats.problems))
    for sp in sent.spans:
        missing = [i for i in range(sp.start, sp.end + 1) if i not in id_set]
        if missing:
            _diag(out, "E_SPAN_RANGE", idx, sp.start,
                  f"span {sp.start}-{sp.end} covers missing ids {missing}")
    roots = [t for t in sent.tokens if t.head == 0]
    if len(roots) > 1 and level == "basic":
        _diag(out, "W_MULTI_ROOT", idx, roots[1].id, f"{len(roots)} roots")
    return roots


def _check_tree(sent, idx, roots, out):
    heads = {t.id: t.head for t in sent.tokens}
    if any(h is None or (h != 0 and h not in heads) for h in heads.values()):
        return  # head problems already reported; tree shape undecidable
    if not roots:
        _diag(out, "E_NO_ROOT", idx, None, "no token attaches to 0")
        return
    if len(roots) > 1:
        _diag(out, "E_MULTI_ROOT", idx, roots[1].id, f"{len(roots)} roots")
    for start in heads:
        seen = set()
        node = start
        while node != 0:
            if node in seen:
                _diag(out, "E_CYCLE", idx, start, f"token {start} never reaches the root")
                return
            seen.add(node)
            node = heads[node]


def _check_inventory(sent, idx, config, out):
    for tok in sent.tokens:
        if tok.upos and tok.upos not in config.upos:
            _diag(out, "E_UPOS_INV", idx, tok.id, f"UPOS {tok.upos!r}")
        if tok.xpos and tok.xpos not in config.xpos:
            _diag(out, "W_XPOS_INV", idx, tok.id, f"XPOS {tok.xpos!r}")
        if tok.deprel and tok.deprel not in config.deprel:
            _diag(out, "E_DEPREL_INV", idx, tok.id, f"deprel {tok.deprel!r}")
        for key, value in tok.misc.entries:
            if key not in config.misc_values:
                continue
            allowed = config.misc_values[key]
            if allowed is None:
                if not value:
                    _diag(out, "E_MISC_VALUE", idx, tok.id, f"{key}= needs a value")
            elif value not in allowed:
                _diag(out, "E_MISC_VALUE", idx, tok.id,
                      f"{key}={value!r} not in {sorted(allowed)}")
        if tok.deprel == "dep:der" and not (tok.upos == "PART" and tok.xpos == "Attr"):
            _diag(out, "E_DEPDER_SHAPE", idx, tok.id,
                  f"dep:der with UPOS {tok.upos!r} XPOS {tok.xpos!r}")
        if tok.xpos == "Partic" and tok.upos != "PRON":
            _diag(out, "E_PARTIC_UPOS", idx, tok.id, f"Partic with UPOS {tok.upos!r}")


def _check_ki_candidates(sent, idx, out):
    in_span = set()
    for sp in sent.spans:
        in_span.update(range(sp.start, sp.end + 1))
    for tok in sent.tokens:
        if tok.id in in_span:
            continue
        if tok.upos == "ADJ" and classify_ki(tok, sent) is KiClass.ADJECTIVIZER:
            _diag(out, "W_KI_UNSPLIT", idx, tok.id,
                  f"{tok.form!r} looks like an unsplit adjectivizer -ki")


def validate(tb, level="basic", config=None):
    """Check a treebank; returns Diagnostics sorted by location."""
    if level not in ("basic", "ud"):
        raise ValueError(f"unknown validation level {level!r}")
    if config is None and level == "ud":
        config = InventoryConfig.load()
    out = []
    for idx, sent in enumerate(tb.sentences):
        roots = _check_basic(sent, idx, out, level)
        if level == "ud":
            _check_tree(sent, idx, roots, out)
            _check_inventory(sent, idx, config, out)
            _check_ki_candidates(sent, idx, out)
    out.sort(key=lambda d: (d.sentence, d.token if d.token is not None else 0, d.code))
    return out


def has_errors(diagnostics):
    return any(d.severity == SEVERITY_ERROR for d in diagnostics)
