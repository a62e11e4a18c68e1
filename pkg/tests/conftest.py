import random
from pathlib import Path

import pytest

from tbkit.conllu import FeatureBag, MiscBag, MultiwordSpan, Sentence, Token, Treebank

FIXTURES = Path(__file__).parent / "fixtures"

UPOS_POOL = ["NOUN", "VERB", "ADJ", "ADV", "PRON", "PROPN", "NUM", "DET", "ADP", "PUNCT"]
DEPREL_POOL = ["nsubj", "obj", "obl", "amod", "advmod", "nmod", "det", "case", "punct", "conj"]
FORM_POOL = [
    "ev", "kedi", "masa", "kitap", "su", "gel", "git", "oku", "gör", "al",
    "güzel", "eski", "yeni", "ama", "ve", "bir", "bu", "o", "ne", "kim",
]


def fixture_path(name):
    return FIXTURES / name


def fixture_text(name):
    return (FIXTURES / name).read_text(encoding="utf-8")


def random_tree_heads(n, rng):
    """A random single-rooted tree over ids 1..n, built by attaching each
    node to an already-placed one."""
    order = list(range(1, n + 1))
    rng.shuffle(order)
    heads = {order[0]: 0}
    for i, node in enumerate(order[1:], start=1):
        heads[node] = rng.choice(order[:i])
    return [heads[i] for i in range(1, n + 1)]


def random_sentence(rng, max_len=15, with_spans=True, with_feats=True):
    n = rng.randint(1, max_len)
    heads = random_tree_heads(n, rng)
    tokens = []
    for i in range(1, n + 1):
        feats = FeatureBag()
        if with_feats and rng.random() < 0.4:
            pairs = []
            if rng.random() < 0.7:
                pairs.append(("Number", rng.choice(["Sing", "Plur"])))
            if rng.random() < 0.5:
                pairs.append(("Case", rng.choice(["Nom", "Acc", "Loc", "Gen"])))
            feats = FeatureBag(tuple(pairs))
        misc = MiscBag()
        if rng.random() < 0.1:
            misc = MiscBag((("SpaceAfter", "No"),))
        tokens.append(Token(
            id=i,
            form=rng.choice(FORM_POOL),
            lemma=rng.choice(FORM_POOL),
            upos=rng.choice(UPOS_POOL),
            xpos="",
            feats=feats,
            head=heads[i - 1],
            deprel="root" if heads[i - 1] == 0 else rng.choice(DEPREL_POOL),
            misc=misc,
        ))
    spans = ()
    if with_spans and n >= 2 and rng.random() < 0.3:
        start = rng.randint(1, n - 1)
        end = min(n, start + rng.randint(1, 2))
        spans = (MultiwordSpan(start, end, tokens[start - 1].form + tokens[end - 1].form),)
    comments = ()
    if rng.random() < 0.5:
        comments = (f"# sent_id = r{rng.randint(1, 10 ** 6)}",)
    return Sentence(comments, tuple(tokens), spans)


def random_treebank(rng, sentences=10, max_len=15, **kwargs):
    return Treebank(tuple(
        random_sentence(rng, max_len=max_len, **kwargs) for _ in range(sentences)
    ))


@pytest.fixture
def rng():
    return random.Random(20240817)


@pytest.fixture
def table5():
    from tbkit.conllu import parse_document
    return parse_document(fixture_text("table5.conllu"))


@pytest.fixture
def table6():
    from tbkit.conllu import parse_document
    return parse_document(fixture_text("table6.conllu"))


@pytest.fixture
def table7():
    from tbkit.conllu import parse_document
    return parse_document(fixture_text("table7.conllu"))


@pytest.fixture
def table8():
    from tbkit.conllu import parse_document
    return parse_document(fixture_text("table8.conllu"))


@pytest.fixture
def mixed50():
    from tbkit.conllu import parse_document
    return parse_document(fixture_text("mixed50.conllu"))
