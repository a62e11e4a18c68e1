"""Local HTTP/JSON service backing the annotation UI.

Explicit-save semantics: the only code path that touches the disk is
POST /save, which writes atomically (temp file + rename). Everything
else operates on the in-memory treebank. Mutations are serialized
through a single lock so concurrent clients cannot interleave edits.
"""

from __future__ import annotations

import os
import tempfile
import threading
from dataclasses import replace
from pathlib import Path

from fastapi import FastAPI, HTTPException
from fastapi.responses import JSONResponse

from . import conllu
from .conllu import Sentence, parse_document, serialize_document
from .layout import graph_layout
from .morphology import turkish_lower
from .rules import (
    ChangeSet,
    KiClass,
    Lexicons,
    apply_changeset,
    classify_ki,
    run_rules,
    split_ki,
)
from .validation import InventoryConfig, validate

EDITABLE_FIELDS = ("FORM", "LEMMA", "UPOS", "XPOS", "FEATS", "HEAD", "DEPREL", "DEPS", "MISC")


class Session:
    """One open document plus its undo history."""

    def __init__(self, path, inventory=None, lexicons=None):
        self.path = Path(path)
        self.treebank = parse_document(
            self.path.read_text(encoding="utf-8"), source=str(self.path)
        )
        self.saved_fingerprint = self.treebank.fingerprint()
        self.inventory = inventory or InventoryConfig.load()
        self.lexicons = lexicons or Lexicons.load()
        self.undo_stack = []        # (sentence index, Sentence before the edit)
        self.last_suggestion = None
        self.lock = threading.Lock()

    @property
    def dirty(self):
        return self.treebank.fingerprint() != self.saved_fingerprint

    def sentence(self, index):
        if not 0 <= index < len(self.treebank.sentences):
            raise HTTPException(404, f"no sentence {index}")
        return self.treebank.sentences[index]

    def replace_sentence(self, index, new_sentence, record_undo=True):
        if record_undo:
            self.undo_stack.append((index, self.treebank.sentences[index]))
        sentences = list(self.treebank.sentences)
        sentences[index] = new_sentence
        self.treebank = replace(self.treebank, sentences=tuple(sentences))

    def save(self):
        text = serialize_document(self.treebank)
        fd, tmp = tempfile.mkstemp(
            dir=str(self.path.parent), prefix=self.path.name, suffix=".tmp"
        )
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as handle:
                handle.write(text)
            os.replace(tmp, str(self.path))
        finally:
            if os.path.exists(tmp):
                os.unlink(tmp)
        self.saved_fingerprint = self.treebank.fingerprint()


def _vocabularies(inventory):
    vocab = {
        "UPOS": sorted(inventory.upos),
        "XPOS": sorted(inventory.xpos),
        "DEPREL": sorted(inventory.deprel),
        "FEATS": sorted(inventory.feats_values),
        "MISC": sorted(inventory.misc_values),
    }
    for key, values in inventory.feats_values.items():
        vocab[f"FEATS:{key}"] = sorted(values)
    return vocab


def _sentence_payload(session, index):
    sent = session.sentence(index)
    diagnostics = validate(
        conllu.Treebank((sent,)), level="ud", config=session.inventory
    )
    return {
        "index": index,
        "comments": list(sent.comments),
        "spans": [
            {"start": sp.start, "end": sp.end, "form": sp.form} for sp in sent.spans
        ],
        "tokens": [
            {name: tok.field_value(name) for name in conllu.FIELD_NAMES}
            for tok in sent.tokens
        ],
        "diagnostics": [
            {
                "code": d.code,
                "severity": d.severity,
                "token": d.token,
                "message": d.message,
            }
            for d in diagnostics
        ],
        "layout": graph_layout(sent),
    }


def create_app(document_path, inventory=None, lexicons=None):
    session = Session(document_path, inventory=inventory, lexicons=lexicons)
    app = FastAPI(title="tbkit annotation service")
    app.state.session = session
    vocab = _vocabularies(session.inventory)

    @app.exception_handler(HTTPException)
    async def _http_error(request, exc):
        return JSONResponse(
            status_code=exc.status_code,
            content={"code": exc.status_code, "message": str(exc.detail)},
        )

    @app.get("/document")
    def document():
        return {
            "path": str(session.path),
            "sentence_count": len(session.treebank.sentences),
            "dirty": session.dirty,
        }

    @app.get("/sentence/{index}")
    def sentence(index: int):
        return _sentence_payload(session, index)

    @app.patch("/sentence/{index}/token/{token_id}")
    def patch_token(index: int, token_id: int, body: dict):
        field = str(body.get("field", "")).upper()
        if field not in EDITABLE_FIELDS:
            raise HTTPException(400, f"field must be one of {EDITABLE_FIELDS}")
        if "value" not in body:
            raise HTTPException(400, "missing 'value'")
        value = str(body["value"])
        with session.lock:
            sent = session.sentence(index)
            try:
                token = sent.token(token_id)
            except KeyError:
                raise HTTPException(404, f"no token {token_id} in sentence {index}")
            try:
                new_token = token.with_field(field, value)
            except ValueError as exc:
                raise HTTPException(400, f"bad value for {field}: {exc}")
            new_tokens = tuple(
                new_token if t.id == token_id else t for t in sent.tokens
            )
            session.replace_sentence(
                index, Sentence(sent.comments, new_tokens, sent.spans)
            )
        return _sentence_payload(session, index)

    @app.post("/sentence/{index}/split")
    def split_token(index: int, body: dict):
        token_id = body.get("token")
        if not isinstance(token_id, int):
            raise HTTPException(400, "missing integer 'token'")
        with session.lock:
            sent = session.sentence(index)
            try:
                token = sent.token(token_id)
            except KeyError:
                raise HTTPException(404, f"no token {token_id} in sentence {index}")
            if classify_ki(token, sent) is KiClass.NONE:
                raise HTTPException(409, f"token {token.form!r} is not a -ki candidate")
            one = conllu.Treebank((sent,))
            cs = split_ki(one, session.lexicons)
            wanted = [r for r in cs.records if r.token == token_id]
            if not wanted:
                raise HTTPException(409, f"no split suggestion for token {token_id}")
            new_tb = apply_changeset(one, ChangeSet(tuple(wanted), ("ki",), one.fingerprint()))
            session.replace_sentence(index, new_tb.sentences[0])
        return _sentence_payload(session, index)

    @app.post("/undo")
    def undo():
        with session.lock:
            if not session.undo_stack:
                raise HTTPException(409, "nothing to undo")
            index, previous = session.undo_stack.pop()
            session.replace_sentence(index, previous, record_undo=False)
        return _sentence_payload(session, index)

    @app.get("/vocab/{field}")
    def vocab_candidates(field: str, prefix: str = ""):
        values = vocab.get(field) or vocab.get(field.upper())
        if values is None:
            raise HTTPException(404, f"no vocabulary for field {field!r}")
        low = turkish_lower(prefix)
        candidates = [v for v in values if turkish_lower(v).startswith(low)]
        return {
            "candidates": candidates,
            "auto_fill": candidates[0] if len(candidates) == 1 else None,
        }

    @app.post("/validate")
    def validate_document(body: dict | None = None):
        level = (body or {}).get("level", "ud")
        diagnostics = validate(session.treebank, level=level, config=session.inventory)
        return {
            "diagnostics": [
                {
                    "code": d.code,
                    "severity": d.severity,
                    "sentence": d.sentence,
                    "token": d.token,
                    "message": d.message,
                }
                for d in diagnostics
            ]
        }

    @app.post("/suggest")
    def suggest(rules: str = ""):
        names = [r for r in rules.split(",") if r]
        if not names:
            raise HTTPException(400, "no rules given, e.g. /suggest?rules=ki,df")
        try:
            _, cs = run_rules(session.treebank, names, session.lexicons, mode="suggest")
        except ValueError as exc:
            raise HTTPException(400, str(exc))
        session.last_suggestion = cs
        return {
            "fingerprint": cs.fingerprint,
            "rules": list(cs.rules),
            "records": [
                {"id": i, **_record_dict(rec)} for i, rec in enumerate(cs.records)
            ],
        }

    @app.post("/apply")
    def apply_records(body: dict):
        ids = body.get("records")
        if not isinstance(ids, list):
            raise HTTPException(400, "missing 'records' list of suggestion ids")
        with session.lock:
            cs = session.last_suggestion
            if cs is None:
                raise HTTPException(409, "no suggestion to apply; POST /suggest first")
            try:
                chosen = [cs.records[i] for i in ids]
            except (IndexError, TypeError):
                raise HTTPException(400, "record id out of range")
            subset = ChangeSet(tuple(chosen), cs.rules, cs.fingerprint)
            before = session.treebank.sentences
            try:
                new_tb = apply_changeset(session.treebank, subset)
            except Exception as exc:
                raise HTTPException(409, str(exc))
            for idx, sent in enumerate(new_tb.sentences):
                if sent is not before[idx]:
                    session.undo_stack.append((idx, before[idx]))
            session.treebank = new_tb
            session.last_suggestion = None
        return {"applied": len(chosen), "dirty": session.dirty}

    @app.post("/save")
    def save():
        with session.lock:
            if session.path is None:
                raise HTTPException(409, "no open document")
            session.save()
        return {"saved": str(session.path), "dirty": session.dirty}

    return app


def _record_dict(rec):
    import json

    return json.loads(rec.to_json())


def serve(document_path, port=8750, host="127.0.0.1", inventory=None, lexicons=None):
    """Run the annotation service with uvicorn (blocking)."""
    import uvicorn

    app = create_app(document_path, inventory=inventory, lexicons=lexicons)
    uvicorn.run(app, host=host, port=port, log_level="info")
