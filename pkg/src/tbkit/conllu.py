"""CoNLL-U parsing, in-memory representation, and serialization.

Documents are held losslessly apart from two normalizations applied on
output: feature bags are re-sorted case-insensitively by key, and line
endings are emitted as LF. Multiword-token span lines and comments are
preserved in order.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field, replace

FIELD_NAMES = (
    "ID", "FORM", "LEMMA", "UPOS", "XPOS", "FEATS", "HEAD", "DEPREL", "DEPS", "MISC",
)

EMPTY = "_"


class ConlluError(Exception):
    """Base class for CoNLL-U handling errors."""


class ParseError(ConlluError):
    def __init__(self, message, line_no=None):
        if line_no is not None:
            message = f"line {line_no}: {message}"
        super().__init__(message)
        self.line_no = line_no


class SerializeError(ConlluError):
    pass


class FeatsFormatError(ConlluError):
    pass


def _check_field_text(value, what):
    if "\t" in value or "\n" in value or "\r" in value:
        raise SerializeError(f"{what} contains a tab or newline: {value!r}")


@dataclass(frozen=True)
class FeatureBag:
    """Morphological features: unique keys, serialized sorted by key.

    Malformed input (entries without "=", duplicate keys) is retained
    verbatim so that documents under annotation can still be loaded;
    `problems` lists what is wrong and `require_wellformed` raises.
    """

    entries: tuple = ()

    @classmethod
    def parse(cls, text):
        if text == EMPTY or text == "":
            return cls()
        entries = []
        for part in text.split("|"):
            if "=" in part:
                key, value = part.split("=", 1)
                entries.append((key, value))
            else:
                entries.append((part, None))
        return cls(tuple(entries))

    @classmethod
    def of(cls, *pairs):
        return cls(tuple(pairs))

    @property
    def problems(self):
        out = []
        seen = set()
        for key, value in self.entries:
            if value is None:
                out.append(f"entry without '=': {key!r}")
                continue
            if key in seen:
                out.append(f"duplicate key: {key!r}")
            seen.add(key)
            if not key or not value:
                out.append(f"empty key or value in {key!r}={value!r}")
        return out

    def require_wellformed(self):
        problems = self.problems
        if problems:
            raise FeatsFormatError("; ".join(problems))
        return self

    def get(self, key, default=None):
        for k, v in self.entries:
            if k == key:
                return v
        return default

    def __contains__(self, key):
        return self.get(key) is not None

    def __len__(self):
        return len(self.entries)

    def with_pair(self, key, value):
        entries = [(k, v) for k, v in self.entries if k != key]
        entries.append((key, value))
        return FeatureBag(tuple(entries))

    def serialize(self):
        if not self.entries:
            return EMPTY
        if self.problems:
            parts = [k if v is None else f"{k}={v}" for k, v in self.entries]
            return "|".join(parts)
        ordered = sorted(self.entries, key=lambda kv: (kv[0].lower(), kv[0]))
        return "|".join(f"{k}={v}" for k, v in ordered)


def parse_feats(text):
    """Parse a FEATS column value strictly; malformed input raises."""
    return FeatureBag.parse(text).require_wellformed()


@dataclass(frozen=True)
class MiscBag:
    """MISC column: pipe-joined entries kept in original order.

    Entries are (key, value) pairs or bare flags (value None).
    """

    entries: tuple = ()

    @classmethod
    def parse(cls, text):
        if text == EMPTY or text == "":
            return cls()
        entries = []
        for part in text.split("|"):
            if "=" in part:
                key, value = part.split("=", 1)
                entries.append((key, value))
            else:
                entries.append((part, None))
        return cls(tuple(entries))

    def get(self, key, default=None):
        for k, v in self.entries:
            if k == key:
                return v
        return default

    def __contains__(self, key):
        return any(k == key for k, _ in self.entries)

    def __len__(self):
        return len(self.entries)

    def with_pair(self, key, value):
        return MiscBag(self.entries + ((key, value),))

    def serialize(self):
        if not self.entries:
            return EMPTY
        return "|".join(k if v is None else f"{k}={v}" for k, v in self.entries)


@dataclass(frozen=True)
class Token:
    """One syntactic word: the ten CoNLL-U columns."""

    id: int
    form: str
    lemma: str = EMPTY
    upos: str = EMPTY
    xpos: str = ""
    feats: FeatureBag = field(default_factory=FeatureBag)
    head: int | None = None
    deprel: str = ""
    deps: str = ""
    misc: MiscBag = field(default_factory=MiscBag)

    def field_value(self, name):
        """Return the serialized value of a column by CoNLL-U name."""
        name = name.upper()
        if name == "ID":
            return str(self.id)
        if name == "FORM":
            return self.form
        if name == "LEMMA":
            return self.lemma
        if name == "UPOS":
            return self.upos or EMPTY
        if name == "XPOS":
            return self.xpos or EMPTY
        if name == "FEATS":
            return self.feats.serialize()
        if name == "HEAD":
            return EMPTY if self.head is None else str(self.head)
        if name == "DEPREL":
            return self.deprel or EMPTY
        if name == "DEPS":
            return self.deps or EMPTY
        if name == "MISC":
            return self.misc.serialize()
        raise KeyError(name)

    def with_field(self, name, value):
        """Return a copy with one column replaced by its serialized value."""
        name = name.upper()
        if name == "ID":
            return replace(self, id=int(value))
        if name == "FORM":
            return replace(self, form=value)
        if name == "LEMMA":
            return replace(self, lemma=value)
        if name == "UPOS":
            return replace(self, upos="" if value == EMPTY else value)
        if name == "XPOS":
            return replace(self, xpos="" if value == EMPTY else value)
        if name == "FEATS":
            return replace(self, feats=FeatureBag.parse(value))
        if name == "HEAD":
            return replace(self, head=None if value == EMPTY else int(value))
        if name == "DEPREL":
            return replace(self, deprel="" if value == EMPTY else value)
        if name == "DEPS":
            return replace(self, deps="" if value == EMPTY else value)
        if name == "MISC":
            return replace(self, misc=MiscBag.parse(value))
        raise KeyError(name)

    def serialize(self):
        values = [self.field_value(name) for name in FIELD_NAMES]
        for name, value in zip(FIELD_NAMES, values):
            _check_field_text(value, f"{name} of token {self.id}")
        return "\t".join(v if v != "" else EMPTY for v in values)


@dataclass(frozen=True)
class MultiwordSpan:
    """An "a-b" surface-form line covering tokens start..end."""

    start: int
    end: int
    form: str

    def serialize(self):
        _check_field_text(self.form, f"FORM of span {self.start}-{self.end}")
        return "\t".join([f"{self.start}-{self.end}", self.form] + [EMPTY] * 8)


@dataclass(frozen=True)
class Sentence:
    comments: tuple = ()
    tokens: tuple = ()
    spans: tuple = ()

    def token(self, token_id):
        for tok in self.tokens:
            if tok.id == token_id:
                return tok
        raise KeyError(f"no token with id {token_id}")

    def __len__(self):
        return len(self.tokens)

    def serialize_lines(self):
        lines = list(self.comments)
        span_at = {sp.start: sp for sp in self.spans}
        for tok in self.tokens:
            if tok.id in span_at:
                lines.append(span_at[tok.id].serialize())
            lines.append(tok.serialize())
        return lines


@dataclass(frozen=True)
class Treebank:
    sentences: tuple = ()
    source: str | None = None

    def __len__(self):
        return len(self.sentences)

    def fingerprint(self):
        """Stable content hash of the serialized document."""
        return hashlib.sha256(serialize_document(self).encode("utf-8")).hexdigest()


def _parse_token_line(columns, line_no):
    raw_id, form, lemma, upos, xpos, feats, head, deprel, deps, misc = columns
    try:
        token_id = int(raw_id)
    except ValueError:
        raise ParseError(f"non-integer token id {raw_id!r}", line_no)
    if token_id < 1:
        raise ParseError(f"token id must be >= 1, got {raw_id}", line_no)
    if head == EMPTY:
        head_val = None
    else:
        try:
            head_val = int(head)
        except ValueError:
            raise ParseError(f"non-integer head {head!r}", line_no)
        if head_val < 0:
            raise ParseError(f"negative head {head}", line_no)
    return Token(
        id=token_id,
        form=form,
        lemma=lemma,
        upos="" if upos == EMPTY else upos,
        xpos="" if xpos == EMPTY else xpos,
        feats=FeatureBag.parse(feats),
        head=head_val,
        deprel="" if deprel == EMPTY else deprel,
        deps="" if deps == EMPTY else deps,
        misc=MiscBag.parse(misc),
    )


def _finish_sentence(comments, tokens, spans, line_no):
    ids = [t.id for t in tokens]
    covered = set()
    for sp in spans:
        if sp.start >= sp.end:
            raise ParseError(f"span {sp.start}-{sp.end} must have start < end", line_no)
        ids_in_span = set(range(sp.start, sp.end + 1))
        if covered & ids_in_span:
            raise ParseError(f"overlapping span {sp.start}-{sp.end}", line_no)
        covered |= ids_in_span
    return Sentence(tuple(comments), tuple(tokens), tuple(spans))


def parse_document(text, source=None):
    """Parse CoNLL-U text into a Treebank.

    Format-level problems (wrong column count, non-integer ids,
    overlapping spans) raise ParseError with a line number. Structural
    well-formedness beyond that (id gaps, head range, tree shape) is
    left to the validation module so that in-progress annotation files
    remain loadable.
    """
    sentences = []
    comments, tokens, spans = [], [], []
    saw_content = False
    for line_no, line in enumerate(text.split("\n"), start=1):
        line = line.rstrip("\r")
        if line == "":
            if saw_content:
                sentences.append(_finish_sentence(comments, tokens, spans, line_no))
                comments, tokens, spans = [], [], []
                saw_content = False
            continue
        saw_content = True
        if line.startswith("#"):
            comments.append(line)
            continue
        columns = line.split("\t")
        if len(columns) != 10:
            raise ParseError(f"expected 10 columns, got {len(columns)}", line_no)
        raw_id = columns[0]
        if "-" in raw_id:
            start_s, _, end_s = raw_id.partition("-")
            try:
                start, end = int(start_s), int(end_s)
            except ValueError:
                raise ParseError(f"malformed span id {raw_id!r}", line_no)
            spans.append(MultiwordSpan(start, end, columns[1]))
            continue
        if "." in raw_id:
            raise ParseError(f"empty-node id {raw_id!r} is not supported", line_no)
        tokens.append(_parse_token_line(columns, line_no))
    if saw_content:
        sentences.append(_finish_sentence(comments, tokens, spans, None))
    return Treebank(tuple(sentences), source=source)


def serialize_document(tb):
    """Render a Treebank back to CoNLL-U text (LF, feats sorted)."""
    blocks = []
    for sent in tb.sentences:
        blocks.append("\n".join(sent.serialize_lines()) + "\n")
    return "".join(block + "\n" for block in blocks)


def _shift_id(token_id, at, grown):
    return token_id + grown if token_id > at else token_id


def insert_split(sentence, at, parts, span_form, head_map=None):
    """Replace token `at` with `parts`, renumbering the rest of the sentence.

    `parts` carry their head values in the final (post-split) id space.
    `head_map` redirects other tokens whose head was `at`; it maps `at`
    to a final id (default: the first part, which keeps id `at`).
    Records a MultiwordSpan over the new part ids.
    """
    if len(parts) < 2:
        raise ValueError("a split needs at least 2 parts")
    sentence.token(at)
    grown = len(parts) - 1
    if head_map is None:
        head_map = {at: at}
    redirected = head_map.get(at, at)

    new_tokens = []
    for tok in sentence.tokens:
        if tok.id == at:
            for i, part in enumerate(parts):
                new_tokens.append(replace(part, id=at + i))
            continue
        new_id = _shift_id(tok.id, at, grown)
        head = tok.head
        if head is not None and head != 0:
            head = redirected if head == at else _shift_id(head, at, grown)
        new_tokens.append(replace(tok, id=new_id, head=head))

    new_spans = []
    for sp in sentence.spans:
        if sp.start <= at <= sp.end:
            raise ValueError(f"token {at} is already inside span {sp.start}-{sp.end}")
        new_spans.append(
            MultiwordSpan(_shift_id(sp.start, at, grown), _shift_id(sp.end, at, grown), sp.form)
        )
    new_spans.append(MultiwordSpan(at, at + grown, span_form))
    new_spans.sort(key=lambda sp: sp.start)

    result = Sentence(sentence.comments, tuple(new_tokens), tuple(new_spans))
    n = len(result.tokens)
    for tok in result.tokens:
        if tok.head is not None and not 0 <= tok.head <= n:
            raise AssertionError(
                f"internal error: head {tok.head} out of range after split at {at}"
            )
    return result
