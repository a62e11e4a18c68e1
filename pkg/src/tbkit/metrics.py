"""Treebank statistics, version diffing, agreement, and attachment scoring."""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

DIFF_FIELDS = ("UPOS", "XPOS", "FEATS", "DEPREL", "MISC")


class AlignmentError(Exception):
    pass


class ScoringError(Exception):
    pass


def _two_dp(value):
    return None if value is None else f"{float(value):.2f}"


@dataclass(frozen=True)
class StatsReport:
    sentence_count: int
    token_count: int
    avg_tokens: Fraction | None
    avg_arc_length: Fraction | None
    upos_counts: dict
    xpos_counts: dict
    deprel_counts: dict
    misc_key_counts: dict

    def to_dict(self):
        return {
            "sentences": self.sentence_count,
            "tokens": self.token_count,
            "avg_tokens_per_sentence": _two_dp(self.avg_tokens),
            "avg_arc_length": _two_dp(self.avg_arc_length),
            "upos": dict(sorted(self.upos_counts.items())),
            "xpos": dict(sorted(self.xpos_counts.items())),
            "deprel": dict(sorted(self.deprel_counts.items())),
            "misc_keys": dict(sorted(self.misc_key_counts.items())),
        }

    def render(self):
        d = self.to_dict()
        lines = [
            f"sentences            {d['sentences']}",
            f"tokens               {d['tokens']}",
            f"avg tokens/sentence  {d['avg_tokens_per_sentence']}",
            f"avg arc length       {d['avg_arc_length']}",
        ]
        for name in ("upos", "xpos", "deprel", "misc_keys"):
            for key, count in d[name].items():
                lines.append(f"{name:<8} {key:<16} {count}")
        return "\n".join(lines)


def treebank_stats(tb):
    """Counts, histograms, and exact-rational averages for a treebank.

    Arc length is |id - head| averaged over non-root arcs; root arcs
    would conflate arc length with the root's sentence position.
    """
    upos, xpos, deprel, misc_keys = Counter(), Counter(), Counter(), Counter()
    token_count = 0
    arc_total = 0
    arc_count = 0
    for sent in tb.sentences:
        for tok in sent.tokens:
            token_count += 1
            if tok.upos:
                upos[tok.upos] += 1
            if tok.xpos:
                xpos[tok.xpos] += 1
            if tok.deprel:
                deprel[tok.deprel] += 1
            for key, _ in tok.misc.entries:
                misc_keys[key] += 1
            if tok.head is not None and tok.head > 0:
                arc_total += abs(tok.id - tok.head)
                arc_count += 1
    sentences = len(tb.sentences)
    return StatsReport(
        sentence_count=sentences,
        token_count=token_count,
        avg_tokens=Fraction(token_count, sentences) if sentences else None,
        avg_arc_length=Fraction(arc_total, arc_count) if arc_count else None,
        upos_counts=dict(upos),
        xpos_counts=dict(xpos),
        deprel_counts=dict(deprel),
        misc_key_counts=dict(misc_keys),
    )


@dataclass(frozen=True)
class ChangeReport:
    field_counts: dict                 # field -> changed-token count (plus "split")
    transitions: dict                  # field -> Counter of (old, new)
    skipped_sentences: tuple = ()

    @property
    def total(self):
        return sum(self.field_counts.values())

    def top_transitions(self, fname, k=10):
        counter = self.transitions.get(fname, Counter())
        return counter.most_common(k)

    def to_dict(self, k=10):
        return {
            "counts": dict(self.field_counts),
            "total": self.total,
            "transitions": {
                fname: [
                    {"old": old, "new": new, "count": count}
                    for (old, new), count in self.top_transitions(fname, k)
                ]
                for fname in sorted(self.transitions)
            },
            "skipped_sentences": list(self.skipped_sentences),
        }

    def render(self):
        lines = [f"total changes  {self.total}"]
        for fname, count in sorted(self.field_counts.items()):
            lines.append(f"{fname:<8} {count}")
        for fname in sorted(self.transitions):
            for (old, new), count in self.top_transitions(fname):
                lines.append(f"{fname:<8} {old or '_'} -> {new or '_'}  {count}")
        if self.skipped_sentences:
            lines.append(f"skipped sentences: {list(self.skipped_sentences)}")
        return "\n".join(lines)


def _char_spans(tokens):
    spans = []
    offset = 0
    for tok in tokens:
        spans.append((tok, offset, offset + len(tok.form)))
        offset += len(tok.form)
    return spans, offset


def _align_sentence(old_sent, new_sent):
    """Map each old token to the new tokens covering its character span."""
    old_spans, old_len = _char_spans(old_sent.tokens)
    new_spans, new_len = _char_spans(new_sent.tokens)
    if old_len != new_len:
        return None
    groups = []
    j = 0
    for old_tok, start, end in old_spans:
        members = []
        while j < len(new_spans) and new_spans[j][1] < end:
            if new_spans[j][1] < start or new_spans[j][2] > end:
                return None  # a new token straddles an old token boundary
            members.append(new_spans[j][0])
            j += 1
        if not members or members[0].form != old_tok.form[: len(members[0].form)]:
            return None
        groups.append((old_tok, members))
    return groups


def diff_treebanks(old, new, fields=DIFF_FIELDS):
    """Per-field change accounting between two versions of a treebank.

    Tokens are aligned by character offsets of concatenated forms; a
    source token covered by several new tokens counts once under
    "split", its field diffs are taken against the first (host) part,
    and the deprel of each extra part is counted as a new relation.
    """
    if len(old.sentences) != len(new.sentences):
        raise AlignmentError(
            f"sentence count mismatch: {len(old.sentences)} vs {len(new.sentences)}"
        )
    fields = tuple(f.upper() for f in fields)
    counts = Counter()
    transitions = {fname: Counter() for fname in fields}
    skipped = []
    for idx, (old_sent, new_sent) in enumerate(zip(old.sentences, new.sentences)):
        groups = _align_sentence(old_sent, new_sent)
        if groups is None:
            skipped.append(idx)
            continue
        for old_tok, members in groups:
            host = members[0]
            for fname in fields:
                old_val = old_tok.field_value(fname)
                new_val = host.field_value(fname)
                if old_val != new_val:
                    counts[fname] += 1
                    transitions[fname][(old_val, new_val)] += 1
            if len(members) > 1:
                counts["split"] += 1
                if "DEPREL" in fields:
                    for part in members[1:]:
                        counts["DEPREL"] += 1
                        transitions["DEPREL"][("", part.field_value("DEPREL"))] += 1
    return ChangeReport(dict(counts), transitions, tuple(skipped))


def _paired_tokens(gold, pred):
    if len(gold.sentences) != len(pred.sentences):
        raise ScoringError(
            f"sentence count mismatch: {len(gold.sentences)} vs {len(pred.sentences)}"
        )
    pairs = []
    for idx, (gs, ps) in enumerate(zip(gold.sentences, pred.sentences)):
        if len(gs.tokens) != len(ps.tokens):
            raise ScoringError(f"token count mismatch in sentence {idx + 1}")
        for gt, pt in zip(gs.tokens, ps.tokens):
            if gt.form != pt.form:
                raise ScoringError(
                    f"tokenization mismatch at sentence {idx + 1} token {gt.id}: "
                    f"{gt.form!r} vs {pt.form!r}"
                )
            pairs.append((idx, gt, pt))
    return pairs


def attachment_scores(gold, pred):
    """(UAS, LAS) as percentages over tokens with matching forms."""
    pairs = _paired_tokens(gold, pred)
    if not pairs:
        raise ScoringError("nothing to score: no tokens")
    head_ok = sum(1 for _, g, p in pairs if g.head == p.head)
    label_ok = sum(
        1 for _, g, p in pairs if g.head == p.head and g.deprel == p.deprel
    )
    n = len(pairs)
    return 100.0 * head_ok / n, 100.0 * label_ok / n


def cohen_kappa(labels_a, labels_b):
    """Chance-corrected agreement: (p_o - p_e) / (1 - p_e).

    Chance p_e comes from each sequence's own label marginals. When
    p_e = 1 (both raters constant), returns 1.0 on full agreement and
    0.0 otherwise, by convention.
    """
    labels_a, labels_b = list(labels_a), list(labels_b)
    if len(labels_a) != len(labels_b):
        raise ValueError("label sequences differ in length")
    if not labels_a:
        raise ValueError("label sequences are empty")
    n = len(labels_a)
    p_o = Fraction(sum(1 for a, b in zip(labels_a, labels_b) if a == b), n)
    count_a, count_b = Counter(labels_a), Counter(labels_b)
    p_e = sum(
        Fraction(count_a[label], n) * Fraction(count_b[label], n)
        for label in set(labels_a) | set(labels_b)
    )
    if p_e == 1:
        return 1.0 if p_o == 1 else 0.0
    return float((p_o - p_e) / (1 - p_e))


@dataclass(frozen=True)
class AgreementReport:
    token_count: int
    label_match: float          # raw % deprel agreement
    label_kappa: float
    uas: float
    las: float
    uas_kappa: float
    las_kappa: float

    def to_dict(self):
        return {
            "tokens": self.token_count,
            "label_match": _two_dp(self.label_match),
            "label_kappa": round(self.label_kappa, 4),
            "uas": _two_dp(self.uas),
            "las": _two_dp(self.las),
            "uas_kappa": round(self.uas_kappa, 4),
            "las_kappa": round(self.las_kappa, 4),
        }

    def render(self):
        d = self.to_dict()
        return "\n".join(f"{k:<14} {v}" for k, v in d.items())


def _attachment_kappa(p_o, p_e):
    if p_e >= 1:
        return 1.0 if p_o >= 1 else 0.0
    return float((Fraction(p_o) - Fraction(p_e)) / (1 - Fraction(p_e)))


def agreement_report(ann_a, ann_b):
    """Agreement between two annotations of the same tokenized text.

    Attachment kappas use a uniform-random-head chance model: in a
    sentence of n tokens each head is drawn from n + 1 candidates
    (the tokens plus root), so two independent raters agree on a given
    token with probability 1/(n+1). The chance term is the
    token-weighted mean of that probability; raw percentages are
    reported alongside since the chance model is a modeling choice.
    """
    pairs = _paired_tokens(ann_a, ann_b)
    if not pairs:
        raise ScoringError("nothing to compare: no tokens")
    n = len(pairs)
    deprels_a = [g.deprel for _, g, _ in pairs]
    deprels_b = [p.deprel for _, _, p in pairs]
    label_match = 100.0 * sum(1 for a, b in zip(deprels_a, deprels_b) if a == b) / n
    head_ok = sum(1 for _, g, p in pairs if g.head == p.head)
    label_ok = sum(1 for _, g, p in pairs if g.head == p.head and g.deprel == p.deprel)
    p_o_head = Fraction(head_ok, n)
    p_o_las = Fraction(label_ok, n)

    p_e_head = (
        sum(
            len(sent.tokens) * Fraction(1, len(sent.tokens) + 1)
            for sent in ann_a.sentences
            if sent.tokens
        )
        / n
    )
    count_a, count_b = Counter(deprels_a), Counter(deprels_b)
    p_e_label = sum(
        Fraction(count_a[label], n) * Fraction(count_b[label], n)
        for label in set(deprels_a) | set(deprels_b)
    )
    return AgreementReport(
        token_count=n,
        label_match=label_match,
        label_kappa=cohen_kappa(deprels_a, deprels_b),
        uas=100.0 * head_ok / n,
        las=100.0 * label_ok / n,
        uas_kappa=_attachment_kappa(p_o_head, p_e_head),
        las_kappa=_attachment_kappa(p_o_las, p_e_head * p_e_label),
    )


def reports_to_json(report, **extra):
    data = report.to_dict()
    data.update(extra)
    return json.dumps(data, ensure_ascii=False, indent=2)
