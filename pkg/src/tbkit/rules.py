"""Re-annotation rules emitting reviewable change sets.

Each rule is a pure function Treebank -> ChangeSet. Records carry a
confidence of "auto" (safe to apply mechanically) or "review" (needs a
human eye); nothing is ever silently skipped when a rule matched but
could not analyze its target fully.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from enum import Enum
from importlib import resources
from pathlib import Path

from .conllu import EMPTY, FeatureBag, MiscBag, Sentence, Token, Treebank, insert_split
from .morphology import (
    analyze_ki_host,
    harmony_surface,
    has_case_suffix,
    turkish_lower,
)

EDITABLE_FIELDS = ("UPOS", "XPOS", "FEATS", "HEAD", "DEPREL", "MISC")

NOMINAL_UPOS = {"NOUN", "ADJ", "PRON", "PROPN", "NUM"}
CLAUSAL_DEPRELS = {"root", "conj", "parataxis", "ccomp", "xcomp", "advcl", "acl", "csubj"}
_NON_CONTENT_UPOS = {"PUNCT", "SYM", "PART", "CCONJ", "SCONJ", "ADP", "DET", "INTJ"}

COPULA_LEMMAS = {"ol", "olmak"}


class KiClass(Enum):
    ADJECTIVIZER = "adjectivizer"
    PRONOMINAL = "pronominal"
    NONE = "none"


class ChangeSetError(Exception):
    pass


class StaleChangeSetError(ChangeSetError):
    pass


class ConflictError(ChangeSetError):
    pass


@dataclass(frozen=True)
class SplitPayload:
    """Token-split parts with heads in a symbolic space.

    A part head is either an integer (original sentence id space, 0 for
    root) or "part:<i>" pointing at another part of the same split.
    `head_map` tells where other tokens that pointed at the split token
    should attach ("part:<i>").
    """

    parts: tuple            # tuples of 10 serialized column values, head symbolic
    span_form: str
    head_map: str = "part:0"


@dataclass(frozen=True)
class ChangeRecord:
    sentence: int
    token: int
    kind: str               # "field-edit" | "token-split"
    rule: str
    confidence: str         # "auto" | "review"
    field: str = ""
    old: str = ""
    new: str = ""
    split: SplitPayload | None = None
    note: str = ""

    def __post_init__(self):
        if self.kind == "field-edit" and self.old == self.new:
            raise ValueError("field-edit with old == new")

    def to_json(self):
        data = {
            "sentence": self.sentence,
            "token": self.token,
            "kind": self.kind,
            "rule": self.rule,
            "confidence": self.confidence,
        }
        if self.kind == "field-edit":
            data.update(field=self.field, old=self.old, new=self.new)
        else:
            data["split"] = {
                "parts": [list(p) for p in self.split.parts],
                "span_form": self.split.span_form,
                "head_map": self.split.head_map,
            }
        if self.note:
            data["note"] = self.note
        return json.dumps(data, ensure_ascii=False)

    @classmethod
    def from_json(cls, line):
        data = json.loads(line)
        split = None
        if data.get("split"):
            split = SplitPayload(
                parts=tuple(tuple(p) for p in data["split"]["parts"]),
                span_form=data["split"]["span_form"],
                head_map=data["split"]["head_map"],
            )
        return cls(
            sentence=data["sentence"],
            token=data["token"],
            kind=data["kind"],
            rule=data["rule"],
            confidence=data["confidence"],
            field=data.get("field", ""),
            old=data.get("old", ""),
            new=data.get("new", ""),
            split=split,
            note=data.get("note", ""),
        )


@dataclass(frozen=True)
class ChangeSet:
    records: tuple = ()
    rules: tuple = ()
    fingerprint: str = ""

    def __len__(self):
        return len(self.records)

    def check_conflicts(self):
        """Raise ConflictError unless records are pairwise non-conflicting.

        At most one field-edit per (sentence, token, field); a
        token-split conflicts with any other record for its token.
        """
        edits = set()
        split_tokens = set()
        for rec in self.records:
            target = (rec.sentence, rec.token)
            if rec.kind == "token-split":
                if target in split_tokens or any(e[:2] == target for e in edits):
                    raise ConflictError(f"conflicting records for {target}")
                split_tokens.add(target)
            else:
                key = (rec.sentence, rec.token, rec.field)
                if key in edits or target in split_tokens:
                    raise ConflictError(f"conflicting records for {target}")
                edits.add(key)
        return self

    def to_jsonl(self):
        header = json.dumps(
            {"changeset": {"rules": list(self.rules), "fingerprint": self.fingerprint}},
            ensure_ascii=False,
        )
        return "\n".join([header] + [rec.to_json() for rec in self.records]) + "\n"

    @classmethod
    def from_jsonl(cls, text):
        lines = [ln for ln in text.split("\n") if ln.strip()]
        rules, fingerprint, records = (), "", []
        for line in lines:
            data = json.loads(line)
            if "changeset" in data:
                rules = tuple(data["changeset"].get("rules", ()))
                fingerprint = data["changeset"].get("fingerprint", "")
            else:
                records.append(ChangeRecord.from_json(line))
        return cls(tuple(records), rules, fingerprint)


@dataclass(frozen=True)
class Lexicons:
    """Word lists steering the copula, temporal, and df rules."""

    lvc_nouns: frozenset = frozenset()
    temporal_nouns: frozenset = frozenset()
    stems: frozenset = frozenset()

    @staticmethod
    def read_wordlist(path):
        entries = set()
        for line in Path(path).read_text(encoding="utf-8").split("\n"):
            line = line.strip()
            if line and not line.startswith("#"):
                entries.add(turkish_lower(line))
        return frozenset(entries)

    @classmethod
    def load(cls, lvc=None, temporal=None, stems=None):
        """Load lexicons from files, falling back to the bundled defaults."""
        data = resources.files("tbkit.data")
        def load_one(path, default_name):
            if path is not None:
                return cls.read_wordlist(path)
            with resources.as_file(data / default_name) as p:
                return cls.read_wordlist(p)
        return cls(
            lvc_nouns=load_one(lvc, "lvc_nouns.txt"),
            temporal_nouns=load_one(temporal, "temporal_nouns.txt"),
            stems=load_one(stems, "stems.txt"),
        )


def _sorted_records(records):
    return tuple(sorted(records, key=lambda r: (r.sentence, r.token, r.field)))


def _changeset(records, rule, tb):
    return ChangeSet(_sorted_records(records), (rule,), tb.fingerprint()).check_conflicts()


def _ki_suffix(form):
    low = turkish_lower(form)
    for suffix in ("ki", "kü"):
        if low.endswith(suffix) and len(low) > len(suffix):
            return form[: -len(suffix)], low[-len(suffix):]
    return None, None


def classify_ki(token, sentence):
    """Decide which -ki morpheme (if any) a token carries."""
    residue, _ = _ki_suffix(token.form)
    if residue is None or not has_case_suffix(residue):
        return KiClass.NONE
    adnominal = token.upos == "ADJ" or token.deprel == "amod"
    if adnominal:
        return KiClass.ADJECTIVIZER
    if token.upos in ("NOUN", "PRON") and token.deprel != "amod":
        analysis = analyze_ki_host(residue)
        if analysis is not None and analysis.case == "Gen":
            return KiClass.PRONOMINAL
        low = turkish_lower(residue)
        if any(low.endswith(e) for e in ("ın", "in", "un", "ün")):
            return KiClass.PRONOMINAL
    return KiClass.NONE


def _part_columns(form, lemma, upos, xpos, feats, head, deprel, misc=EMPTY):
    return (form, lemma, upos, xpos or EMPTY, feats, head, deprel, EMPTY, misc)


def _split_record(sent_idx, token, parts, span_form, head_map, confidence, note=""):
    return ChangeRecord(
        sentence=sent_idx,
        token=token.id,
        kind="token-split",
        rule="ki",
        confidence=confidence,
        split=SplitPayload(tuple(parts), span_form, head_map),
        note=note,
    )


def split_ki(tb, lexicons=None):
    """Split adjectivizer and pronominal -ki forms into host + ki tokens."""
    records = []
    for sent_idx, sent in enumerate(tb.sentences):
        in_span = set()
        for sp in sent.spans:
            in_span.update(range(sp.start, sp.end + 1))
        for token in sent.tokens:
            if token.id in in_span:
                continue
            cls = classify_ki(token, sent)
            if cls is KiClass.NONE:
                continue
            residue, suffix = _ki_suffix(token.form)
            analysis = analyze_ki_host(residue)
            note = ""
            confidence = "auto"
            if analysis is None:
                confidence = "review"
                note = f"residue {residue!r} has no recognized case morphology"
            old_head = str(token.head) if token.head is not None else EMPTY
            if cls is KiClass.ADJECTIVIZER:
                host_feats = (
                    FeatureBag(analysis.feature_pairs).serialize()
                    if analysis else token.feats.serialize()
                )
                host = _part_columns(
                    form=residue,
                    lemma=analysis.lemma if analysis else turkish_lower(residue),
                    upos="NOUN" if token.upos in ("ADJ", "") else token.upos,
                    xpos="",
                    feats=host_feats,
                    head=old_head,
                    deprel="nmod" if token.deprel == "amod" else (token.deprel or EMPTY),
                    misc=token.misc.serialize(),
                )
                ki = _part_columns(
                    form=suffix, lemma="ki", upos="PART", xpos="Attr",
                    feats=EMPTY, head="part:0", deprel="dep:der",
                )
                records.append(_split_record(
                    sent_idx, token, [host, ki], token.form, "part:0", confidence, note,
                ))
            else:
                host_number = token.feats.get("Number", "Sing")
                if analysis and analysis.pronominal:
                    host_upos, host_xpos = "PRON", "PERS"
                elif token.upos == "PRON":
                    host_upos, host_xpos = "PRON", ""
                else:
                    host_upos, host_xpos = "NOUN", ""
                host_feats = (
                    FeatureBag(analysis.feature_pairs).serialize()
                    if analysis else token.feats.serialize()
                )
                host = _part_columns(
                    form=residue,
                    lemma=analysis.lemma if analysis else turkish_lower(residue),
                    upos=host_upos,
                    xpos=host_xpos,
                    feats=host_feats,
                    head="part:1",
                    deprel="nmod:poss",
                )
                ki = _part_columns(
                    form=suffix, lemma="ki", upos="PRON", xpos="Partic",
                    feats=FeatureBag.of(("Case", "Nom"), ("Number", host_number)).serialize(),
                    head=old_head,
                    deprel=token.deprel or EMPTY,
                    misc=token.misc.serialize(),
                )
                records.append(_split_record(
                    sent_idx, token, [host, ki], token.form, "part:1", confidence, note,
                ))
    return _changeset(records, "ki", tb)


_DF_SUFFIXES = ("lI", "sIz")


def suggest_df(tb, lexicons=None):
    """Mark -lI / -sIz adjectives with a df= (derived-from) MISC entry."""
    stems = lexicons.stems if lexicons else frozenset()
    records = []
    for sent_idx, sent in enumerate(tb.sentences):
        for token in sent.tokens:
            if token.upos != "ADJ" or "df" in token.misc:
                continue
            low = turkish_lower(token.form)
            residue = None
            for archi in _DF_SUFFIXES:
                for surface_len in (2, 3):
                    if len(low) < surface_len + 2:
                        continue
                    candidate, tail = token.form[:-surface_len], low[-surface_len:]
                    try:
                        expected = harmony_surface(archi, candidate)
                    except ValueError:
                        continue
                    if tail == expected:
                        residue = candidate
                        break
                if residue is not None:
                    break
            if residue is None:
                continue
            confidence = "auto" if turkish_lower(residue) in stems else "review"
            new_misc = token.misc.with_pair("df", turkish_lower(residue))
            records.append(ChangeRecord(
                sentence=sent_idx, token=token.id, kind="field-edit", rule="df",
                confidence=confidence, field="MISC",
                old=token.misc.serialize(), new=new_misc.serialize(),
            ))
    return _changeset(records, "df", tb)


def _dependents(sent, head_id):
    return [t for t in sent.tokens if t.head == head_id]


def suggest_nullcop(tb, lexicons=None, clausal_deprels=CLAUSAL_DEPRELS):
    """Mark null-copula nominal predicates with nullcop=3s / nullcop=3p."""
    records = []
    for sent_idx, sent in enumerate(tb.sentences):
        for token in sent.tokens:
            if token.upos not in NOMINAL_UPOS:
                continue
            if not (token.head == 0 or token.deprel in clausal_deprels):
                continue
            if "nullcop" in token.misc:
                continue
            if token.feats.get("Person") in ("1", "2"):
                continue
            deps = _dependents(sent, token.id)
            if any(d.deprel == "cop" for d in deps):
                continue
            if any(d.upos == "AUX" and d.deprel in ("cop", "aux") for d in deps):
                continue
            plural = token.feats.get("Number") == "Plur" or any(
                d.deprel == "nsubj" and d.feats.get("Number") == "Plur" for d in deps
            )
            value = "3p" if plural else "3s"
            new_misc = token.misc.with_pair("nullcop", value)
            records.append(ChangeRecord(
                sentence=sent_idx, token=token.id, kind="field-edit", rule="nullcop",
                confidence="review", field="MISC",
                old=token.misc.serialize(), new=new_misc.serialize(),
            ))
    return _changeset(records, "nullcop", tb)


def _is_participle(token):
    return token.xpos == "Ptcp" or "Part" in (token.feats.get("VerbForm") or "")


def _field_edits(sent_idx, token, rule, confidence, **targets):
    records = []
    for fname, new in targets.items():
        fname = fname.upper()
        old = token.field_value(fname)
        if new is not None and old != new:
            records.append(ChangeRecord(
                sentence=sent_idx, token=token.id, kind="field-edit", rule=rule,
                confidence=confidence, field=fname, old=old, new=new,
            ))
    return records


def classify_copula(tb, lexicons=None, clausal_deprels=CLAUSAL_DEPRELS):
    """Distinguish the copular functions of ol-, var, and yok."""
    lvc = lexicons.lvc_nouns if lexicons else frozenset()
    records = []
    for sent_idx, sent in enumerate(tb.sentences):
        by_id = {t.id: t for t in sent.tokens}
        for token in sent.tokens:
            lemma = turkish_lower(token.lemma)
            is_head = token.head == 0 or token.deprel in clausal_deprels
            if lemma in ("var", "yok"):
                if not is_head:
                    continue
                records += _field_edits(
                    sent_idx, token, "cop", "auto",
                    upos="NOUN", xpos="Exist",
                    deprel="root" if token.head == 0 else None,
                )
                continue
            if lemma not in COPULA_LEMMAS:
                continue
            prev = by_id.get(token.id - 1)
            if _is_participle(token) and token.head != 0:
                records += _field_edits(
                    sent_idx, token, "cop", "review",
                    upos="AUX", xpos="Ptcp", deprel="cop",
                )
            elif prev is not None and _is_participle(prev):
                records += _field_edits(
                    sent_idx, token, "cop", "review", upos="AUX", deprel="aux",
                )
            elif (
                prev is not None
                and prev.upos == "NOUN"
                and turkish_lower(prev.lemma) in lvc
                and prev.feats.get("Case") in (None, "Nom")
            ):
                records += _field_edits(
                    sent_idx, token, "cop", "review",
                    upos="VERB", deprel="compound:lvc",
                )
            else:
                records += _field_edits(
                    sent_idx, token, "cop", "review",
                    upos="VERB", deprel="root" if token.head == 0 else None,
                )
    return _changeset(records, "cop", tb)


def suggest_emph(tb, lexicons=None):
    """Relabel standalone dA clitics as advmod:emph on the preceding word."""
    records = []
    for sent_idx, sent in enumerate(tb.sentences):
        for pos, token in enumerate(sent.tokens):
            if turkish_lower(token.form) not in ("de", "da"):
                continue
            if token.upos not in ("PART", "CCONJ", "SCONJ") and token.deprel != "advmod:emph":
                continue
            anchor = None
            for prev in reversed(sent.tokens[:pos]):
                if prev.upos not in _NON_CONTENT_UPOS:
                    anchor = prev
                    break
            if anchor is None:
                continue
            records += _field_edits(
                sent_idx, token, "emph", "review",
                deprel="advmod:emph", head=str(anchor.id),
            )
    return _changeset(records, "emph", tb)


def suggest_tmod(tb, lexicons=None):
    """Relabel temporal obliques as obl:tmod."""
    temporal = lexicons.temporal_nouns if lexicons else frozenset()
    records = []
    for sent_idx, sent in enumerate(tb.sentences):
        for token in sent.tokens:
            if token.deprel != "obl":
                continue
            if turkish_lower(token.lemma) not in temporal:
                continue
            records += _field_edits(
                sent_idx, token, "tmod", "review", deprel="obl:tmod",
            )
    return _changeset(records, "tmod", tb)


RULES = {
    "ki": split_ki,
    "df": suggest_df,
    "nullcop": suggest_nullcop,
    "cop": classify_copula,
    "emph": suggest_emph,
    "tmod": suggest_tmod,
}

# Splits change token ids, so ki always runs first.
RULE_ORDER = ("ki", "df", "nullcop", "cop", "emph", "tmod")


def _resolve_symbolic(value, at_cur, id_map_after):
    if isinstance(value, str) and value.startswith("part:"):
        return at_cur + int(value.split(":", 1)[1])
    head = int(value)
    return 0 if head == 0 else id_map_after[head]


def _apply_split(sentence, record, id_map):
    at_cur = id_map[record.token]
    grown = len(record.split.parts) - 1
    id_map_after = {
        orig: cur + grown if cur > at_cur else cur for orig, cur in id_map.items()
    }
    parts = []
    for cols in record.split.parts:
        form, lemma, upos, xpos, feats, head, deprel, deps, misc = cols
        parts.append(Token(
            id=1,  # renumbered by insert_split
            form=form,
            lemma=lemma,
            upos="" if upos == EMPTY else upos,
            xpos="" if xpos == EMPTY else xpos,
            feats=FeatureBag.parse(feats),
            head=_resolve_symbolic(head, at_cur, id_map_after) if head != EMPTY else None,
            deprel="" if deprel == EMPTY else deprel,
            deps="" if deps == EMPTY else deps,
            misc=MiscBag.parse(misc),
        ))
    redirect = _resolve_symbolic(record.split.head_map, at_cur, id_map_after)
    new_sentence = insert_split(
        sentence, at_cur, parts, record.split.span_form, {at_cur: redirect}
    )
    id_map_after[record.token] = at_cur
    return new_sentence, id_map_after


def apply_changeset(tb, cs, mode="all"):
    """Apply a ChangeSet, returning a new Treebank.

    mode "auto-only" skips confidence=review records. Records are
    checked against the current value of their target; a mismatch means
    the set was produced from a different document state.
    """
    if mode not in ("all", "auto-only"):
        raise ValueError(f"unknown mode {mode!r}")
    if cs.fingerprint and cs.fingerprint != tb.fingerprint():
        raise StaleChangeSetError("changeset fingerprint does not match treebank")
    cs.check_conflicts()
    sentences = list(tb.sentences)
    id_maps = {}
    for rec in cs.records:
        if mode == "auto-only" and rec.confidence != "auto":
            continue
        if not 0 <= rec.sentence < len(sentences):
            raise ConflictError(f"record targets missing sentence {rec.sentence}")
        sent = sentences[rec.sentence]
        id_map = id_maps.setdefault(
            rec.sentence, {t.id: t.id for t in sent.tokens}
        )
        if rec.token not in id_map:
            raise ConflictError(
                f"record targets missing token {rec.token} in sentence {rec.sentence}"
            )
        if rec.kind == "field-edit":
            token = sent.token(id_map[rec.token])
            current = token.field_value(rec.field)
            if current != rec.old:
                raise ConflictError(
                    f"stale record: sentence {rec.sentence} token {rec.token} "
                    f"{rec.field} is {current!r}, expected {rec.old!r}"
                )
            new_tokens = tuple(
                token.with_field(rec.field, rec.new) if t.id == token.id else t
                for t in sent.tokens
            )
            sentences[rec.sentence] = Sentence(sent.comments, new_tokens, sent.spans)
        elif rec.kind == "token-split":
            new_sentence, id_maps[rec.sentence] = _apply_split(sent, rec, id_map)
            sentences[rec.sentence] = new_sentence
        else:
            raise ConflictError(f"unknown record kind {rec.kind!r}")
    return Treebank(tuple(sentences), source=tb.source)


def run_rules(tb, rule_names, lexicons=None, mode="suggest"):
    """Run rules in canonical order.

    mode "suggest": every rule runs against the input; returns
    (treebank unchanged, combined ChangeSet). mode "apply"/"auto-only":
    rules run staged, each against the output of the previous stage;
    returns (transformed treebank, concatenation of stage ChangeSets).
    """
    unknown = set(rule_names) - set(RULES)
    if unknown:
        raise ValueError(f"unknown rules: {', '.join(sorted(unknown))}")
    ordered = [name for name in RULE_ORDER if name in set(rule_names)]
    if mode == "suggest":
        records = []
        for name in ordered:
            records.extend(RULES[name](tb, lexicons).records)
        return tb, ChangeSet(tuple(records), tuple(ordered), tb.fingerprint())
    apply_mode = "auto-only" if mode == "auto-only" else "all"
    current = tb
    all_records = []
    for name in ordered:
        cs = RULES[name](current, lexicons)
        current = apply_changeset(current, cs, mode=apply_mode)
        all_records.extend(cs.records)
    combined = ChangeSet(tuple(all_records), tuple(ordered), tb.fingerprint())
    return current, combined
