import string

from hypothesis import given, strategies as st

from stance_context.textproc import TokenKind, normalize, strip_urls, tokenize


def kinds_norms(text):
    return [(t.kind, t.norm) for t in tokenize(text)]


def test_hashtag_mention_word():
    assert kinds_norms("#StopHillary2016 @HillaryClinton NO") == [
        (TokenKind.HASHTAG, "stophillary2016"),
        (TokenKind.MENTION, "hillaryclinton"),
        (TokenKind.WORD, "no"),
    ]


def test_punctuation_one_token_per_char():
    assert kinds_norms("Hello!! How?") == [
        (TokenKind.WORD, "hello"),
        (TokenKind.PUNCT, "!"),
        (TokenKind.PUNCT, "!"),
        (TokenKind.WORD, "how"),
        (TokenKind.PUNCT, "?"),
    ]


def test_empty():
    assert tokenize("") == []


def test_url_is_single_token():
    toks = tokenize("see https://t.co/a.b?c=1, ok")
    assert [t.kind for t in toks] == [TokenKind.WORD, TokenKind.URL, TokenKind.WORD]
    # The comma glued to the URL stays inside it.
    assert toks[1].surface == "https://t.co/a.b?c=1,"


def test_apostrophe_word_and_stem():
    (tok,) = tokenize("She's")
    assert (tok.kind, tok.norm, tok.stem) == (TokenKind.WORD, "she's", "she")
    assert tok.forms == ("she's", "she")
    (curly,) = tokenize("O’Malley")
    assert curly.norm == "o'malley"


def test_mention_keeps_underscore_and_numbers():
    toks = tokenize("@SA_Hartdegen 2016 2nd")
    assert [(t.kind, t.norm) for t in toks] == [
        (TokenKind.MENTION, "sa_hartdegen"),
        (TokenKind.NUMBER, "2016"),
        (TokenKind.WORD, "2nd"),
    ]


def test_bare_markers_are_punct():
    assert [t.kind for t in tokenize("# @ -")] == [TokenKind.PUNCT] * 3


tweetish = st.text(
    alphabet=string.ascii_letters + string.digits + " #@!?.,;:'-_/" + "é’",
    max_size=80,
) | st.text(max_size=40)


@given(tweetish)
def test_norm_idempotent(text):
    for t in tokenize(text):
        assert normalize(t.norm) == t.norm


@given(tweetish)
def test_marker_invariants(text):
    for t in tokenize(text):
        if t.kind is TokenKind.HASHTAG:
            assert t.surface.startswith("#") and not t.norm.startswith("#") and t.norm
        if t.kind is TokenKind.MENTION:
            assert t.surface.startswith("@") and not t.norm.startswith("@") and t.norm
        if t.kind is TokenKind.WORD:
            assert t.norm


@given(tweetish)
def test_punct_count_matches_characters_outside_urls(text):
    marks = "!?.,;"
    expected = sum(strip_urls(text).count(c) for c in marks)
    got = sum(1 for t in tokenize(text) if t.kind is TokenKind.PUNCT and t.surface in marks)
    assert got == expected


@given(tweetish)
def test_surfaces_appear_in_order(text):
    pos = 0
    for t in tokenize(text):
        found = text.find(t.surface, pos)
        assert found >= 0
        pos = found + len(t.surface)


@given(tweetish, tweetish)
def test_whitespace_concatenation_additive(a, b):
    assert len(tokenize(a + " " + b)) == len(tokenize(a)) + len(tokenize(b))
