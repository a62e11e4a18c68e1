import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tbkit.conllu import (
    FeatsFormatError,
    FeatureBag,
    MiscBag,
    ParseError,
    Sentence,
    SerializeError,
    Token,
    Treebank,
    insert_split,
    parse_document,
    parse_feats,
    serialize_document,
)

from conftest import fixture_text, random_sentence, random_treebank

MINIMAL = "1\thasta\thasta\tNOUN\t_\t_\t0\troot\t_\t_\n\n"


class TestParse:
    def test_minimal_sentence(self):
        tb = parse_document(MINIMAL)
        assert len(tb) == 1
        (sent,) = tb.sentences
        assert len(sent.tokens) == 1
        assert sent.tokens[0].form == "hasta"
        assert sent.tokens[0].head == 0

    def test_table6_structure(self, table6):
        (sent,) = table6.sentences
        assert [(sp.start, sp.end, sp.form) for sp in sent.spans] == [(1, 2, "başındaki")]
        ki = sent.token(2)
        assert ki.form == "ki"
        assert ki.deprel == "dep:der"

    def test_nine_columns_is_an_error(self):
        bad = "1\ta\ta\tNOUN\t_\t_\t0\troot\t_\n\n"
        with pytest.raises(ParseError) as err:
            parse_document(bad)
        assert "line 1" in str(err.value)

    def test_non_integer_id(self):
        with pytest.raises(ParseError):
            parse_document("x\ta\ta\tNOUN\t_\t_\t0\troot\t_\t_\n\n")

    def test_non_integer_head(self):
        with pytest.raises(ParseError):
            parse_document("1\ta\ta\tNOUN\t_\t_\tz\troot\t_\t_\n\n")

    def test_overlapping_spans_rejected(self):
        text = (
            "1-2\tab\t_\t_\t_\t_\t_\t_\t_\t_\n"
            "2-3\tbc\t_\t_\t_\t_\t_\t_\t_\t_\n"
            "1\ta\ta\tNOUN\t_\t_\t0\troot\t_\t_\n"
            "2\tb\tb\tNOUN\t_\t_\t1\tnmod\t_\t_\n"
            "3\tc\tc\tNOUN\t_\t_\t1\tnmod\t_\t_\n\n"
        )
        with pytest.raises(ParseError):
            parse_document(text)

    def test_empty_node_ids_rejected(self):
        with pytest.raises(ParseError):
            parse_document("1.1\ta\ta\tNOUN\t_\t_\t0\troot\t_\t_\n\n")

    def test_crlf_tolerated(self):
        tb = parse_document(MINIMAL.replace("\n", "\r\n"))
        assert serialize_document(tb) == MINIMAL


class TestSerialize:
    def test_minimal_round_trip(self):
        assert serialize_document(parse_document(MINIMAL)) == MINIMAL

    def test_feats_sorted_on_output(self):
        tok = Token(
            id=1, form="a", lemma="a", upos="NOUN",
            feats=FeatureBag((("Number", "Sing"), ("Case", "Nom"))),
            head=0, deprel="root",
        )
        tb = Treebank((Sentence((), (tok,), ()),))
        assert "Case=Nom|Number=Sing" in serialize_document(tb)

    def test_table8_contains_partic_line(self, table8):
        line = "2\tki\tki\tPRON\tPartic\tCase=Nom|Number=Sing\t0\troot\t_\t_"
        assert line in serialize_document(table8)

    def test_tab_in_field_rejected(self):
        tok = Token(id=1, form="a\tb", lemma="a", upos="NOUN", head=0, deprel="root")
        tb = Treebank((Sentence((), (tok,), ()),))
        with pytest.raises(SerializeError):
            serialize_document(tb)

    def test_round_trip_random_documents(self, rng):
        for _ in range(50):
            tb = random_treebank(rng, sentences=rng.randint(1, 5))
            text = serialize_document(tb)
            assert serialize_document(parse_document(text)) == text


class TestParseFeats:
    def test_paper_feature_string(self):
        bag = parse_feats("Case=Gen|Number=Sing|Person=2|PronType=Prs")
        assert len(bag) == 4
        assert bag.get("Person") == "2"

    def test_underscore_is_empty(self):
        assert len(parse_feats("_")) == 0

    def test_duplicate_key_is_an_error(self):
        with pytest.raises(FeatsFormatError):
            parse_feats("Case=Nom|Case=Gen")

    def test_entry_without_equals_is_an_error(self):
        with pytest.raises(FeatsFormatError):
            parse_feats("Nominative")

    def test_serialization_deterministic_in_key_value_set(self):
        a = FeatureBag((("B", "1"), ("A", "2")))
        b = FeatureBag((("A", "2"), ("B", "1")))
        assert a.serialize() == b.serialize() == "A=2|B=1"


class TestMiscBag:
    def test_order_preserved(self):
        bag = MiscBag.parse("SpaceAfter=No|df=tüy")
        assert bag.serialize() == "SpaceAfter=No|df=tüy"

    def test_bare_flags(self):
        bag = MiscBag.parse("Flagged|df=x")
        assert bag.serialize() == "Flagged|df=x"
        assert bag.get("df") == "x"


def brute_force_renumber(sentence, at, k, redirect):
    """Independent renumbering: an explicit old-id -> new-id map."""
    id_map = {}
    for tok in sentence.tokens:
        if tok.id < at:
            id_map[tok.id] = tok.id
        elif tok.id > at:
            id_map[tok.id] = tok.id + k - 1
    expected = {}
    for tok in sentence.tokens:
        if tok.id == at:
            continue
        head = tok.head
        if head not in (None, 0):
            head = redirect if head == at else id_map[head]
        expected[id_map[tok.id]] = head
    return expected


class TestInsertSplit:
    def _two_parts(self, head1, head2):
        return [
            Token(id=1, form="a1", lemma="a1", upos="NOUN", head=head1, deprel="nmod"),
            Token(id=1, form="a2", lemma="a2", upos="PART", head=head2, deprel="dep:der"),
        ]

    def test_basic_shift(self):
        sent = parse_document(
            "1\ta\ta\tNOUN\t_\t_\t2\tnmod\t_\t_\n"
            "2\tb\tb\tNOUN\t_\t_\t0\troot\t_\t_\n"
            "3\tc\tc\tNOUN\t_\t_\t1\tnmod\t_\t_\n\n"
        ).sentences[0]
        out = insert_split(sent, 1, self._two_parts(3, 1), "a1a2")
        assert [t.id for t in out.tokens] == [1, 2, 3, 4]
        assert out.token(3).head == 0        # b shifted to 3
        assert out.token(4).head == 1        # c's head pointed at 1, redirected to part 1
        assert out.spans[0].start == 1 and out.spans[0].end == 2

    def test_split_at_last_token(self):
        sent = parse_document(
            "1\ta\ta\tNOUN\t_\t_\t0\troot\t_\t_\n"
            "2\tb\tb\tNOUN\t_\t_\t1\tnmod\t_\t_\n\n"
        ).sentences[0]
        parts = [
            Token(id=1, form="b1", lemma="b1", upos="NOUN", head=1, deprel="nmod"),
            Token(id=1, form="b2", lemma="b2", upos="PART", head=2, deprel="dep:der"),
        ]
        out = insert_split(sent, 2, parts, "b1b2")
        assert [t.id for t in out.tokens] == [1, 2, 3]
        assert out.spans[-1].start == 2 and out.spans[-1].end == 3

    def test_fewer_than_two_parts_rejected(self):
        sent = parse_document(MINIMAL).sentences[0]
        with pytest.raises(ValueError):
            insert_split(sent, 1, [Token(id=1, form="x", head=0, deprel="root")], "x")

    def test_against_brute_force_oracle(self, rng):
        for _ in range(100):
            sent = random_sentence(rng, max_len=5, with_spans=False)
            n = len(sent.tokens)
            at = rng.randint(1, n)
            k = rng.randint(2, 3)
            parts = [
                Token(id=1, form=f"p{i}", lemma=f"p{i}", upos="NOUN",
                      head=at + 1 if i == 0 and k > 1 else at, deprel="nmod")
                for i in range(k)
            ]
            parts[0] = Token(id=1, form="p0", lemma="p0", upos="NOUN",
                             head=0, deprel="root")
            out = insert_split(sent, at, parts, "xyz", {at: at})
            expected = brute_force_renumber(sent, at, k, redirect=at)
            got = {t.id: t.head for t in out.tokens if not at <= t.id < at + k}
            assert got == expected
            assert [t.id for t in out.tokens] == list(range(1, n + k))


@st.composite
def conllu_sentences(draw):
    n = draw(st.integers(min_value=1, max_value=15))
    seed = draw(st.integers(min_value=0, max_value=2 ** 31))
    r = random.Random(seed)
    return random_sentence(r, max_len=n)


@given(st.lists(conllu_sentences(), min_size=1, max_size=4))
@settings(max_examples=60, deadline=None)
def test_round_trip_property(sentences):
    tb = Treebank(tuple(sentences))
    text = serialize_document(tb)
    assert serialize_document(parse_document(text)) == text
