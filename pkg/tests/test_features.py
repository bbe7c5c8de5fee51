import io

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from stance_context.corpus import OpinionTowards, Sentiment, StanceLabel, TweetRecord
from stance_context.errors import ConfigurationError
from stance_context.features import (
    CANONICAL_ORDER,
    GROUP_FEATURES,
    FeatureGroup as G,
    assemble_vector,
    encode_annotation_features,
    extract_structural,
    feature_matrix,
    parse_groups,
    write_feature_table,
)
from stance_context.lexicons import LexiconSet
from stance_context.textproc import tokenize


def rec(text, sentiment=Sentiment.POSITIVE, opinion=OpinionTowards.DIRECT):
    return TweetRecord("1", "Hillary Clinton", text, StanceLabel.NONE, sentiment, opinion)


def test_structural_counts():
    s = extract_structural(tokenize("#a #b @c"))
    assert (s.hashtag_count, s.mention_count, s.punct[-1]) == (2, 1, 0)
    s = extract_structural(tokenize("Hello!! How?"))
    assert s.punct == (2, 1, 0, 0, 0, 3)
    s = extract_structural(tokenize(""))
    assert (s.hashtag_count, s.mention_count, s.punct) == (0, 0, (0,) * 6)


def test_structural_all_marks():
    s = extract_structural(tokenize("a! b? c. d, e; f: g- see http://x.y/z?q=1."))
    assert s.punct == (1, 1, 1, 1, 1, 5)


@pytest.mark.parametrize(
    "sentiment, opinion, expected",
    [
        (Sentiment.POSITIVE, OpinionTowards.DIRECT, (1, 0, 0, 0, 1, 0, 0)),
        (Sentiment.NONE, OpinionTowards.NO_OPINION, (0, 0, 0, 1, 0, 0, 1)),
        (Sentiment.NEUTRAL, OpinionTowards.INDIRECT, (0, 0, 1, 0, 0, 1, 0)),
    ],
)
def test_one_hot(sentiment, opinion, expected):
    assert encode_annotation_features(sentiment, opinion) == expected


def test_one_hot_needs_both_labels():
    with pytest.raises(ConfigurationError, match="experiment1"):
        encode_annotation_features(Sentiment.NEGATIVE, None)


def test_group_sizes():
    sizes = {g: len(GROUP_FEATURES[g]) for g in G}
    assert sizes == {G.AFINN: 1, G.HL: 1, G.LIWC: 1, G.DAL: 6, G.HASHTAG: 1, G.MENTION: 1,
                     G.PUNCT_MARKS: 6, G.CONTEXT_BASED: 6, G.LABELED_BASED: 7}
    names = [n for g in G for n in GROUP_FEATURES[g]]
    assert len(names) == len(set(names))


def test_vector_lengths(lexicons, clinton_kb):
    r = rec("I love #Hillary!")
    assert len(assemble_vector(r, set(G), lexicons, clinton_kb)) == 30
    best1 = parse_groups(["mention", "punct_marks", "AFINN", "LIWC", "HL", "context_based"])
    assert len(assemble_vector(r, best1, lexicons, clinton_kb)) == 16
    best2 = parse_groups(["hashtag", "mention", "context-based", "labeled-based"])
    assert len(assemble_vector(r, best2, lexicons, clinton_kb)) == 15


def test_canonical_order(lexicons, clinton_kb):
    v = assemble_vector(rec("x"), [G.LABELED_BASED, G.AFINN, G.MENTION], lexicons, clinton_kb)
    assert [g for g, _ in v.schema] == [G.AFINN, G.MENTION] + [G.LABELED_BASED] * 7


def test_missing_resource_names_group(clinton_kb):
    with pytest.raises(ConfigurationError, match="DAL"):
        assemble_vector(rec("x"), [G.DAL], LexiconSet(), clinton_kb)
    with pytest.raises(ConfigurationError, match="CONTEXT_BASED"):
        assemble_vector(rec("x"), [G.CONTEXT_BASED], LexiconSet(), None)


def test_labeled_needs_annotations(lexicons, clinton_kb):
    r = TweetRecord("9", "Hillary Clinton", "x", StanceLabel.NONE)
    with pytest.raises(ConfigurationError):
        assemble_vector(r, [G.LABELED_BASED], lexicons, clinton_kb)
    with pytest.raises(ConfigurationError, match="experiment1"):
        feature_matrix([r], [G.LABELED_BASED], lexicons, clinton_kb)


def test_disabling_lexicon_removes_only_its_features(lexicons, clinton_kb):
    r = rec("I love calm happy #Hillary!!")
    full = assemble_vector(r, set(G), lexicons, clinton_kb)
    no_dal = LexiconSet(lexicons.afinn, lexicons.hl, lexicons.liwc, None)
    fewer = assemble_vector(r, set(G) - {G.DAL}, no_dal, clinton_kb)
    kept = [(k, v) for k, v in zip(full.schema, full.values) if k[0] is not G.DAL]
    assert kept == list(zip(fewer.schema, fewer.values))


def test_feature_table(lexicons, clinton_kb, mini_corpus):
    schema, X = feature_matrix(mini_corpus[:3], [G.HASHTAG, G.AFINN], lexicons, clinton_kb)
    buf = io.StringIO()
    write_feature_table(buf, mini_corpus[:3], schema, X)
    lines = buf.getvalue().splitlines()
    assert lines[0] == "id\tstance\tafinn_sum\thashtag_count"
    assert lines[1].split("\t")[:2] == ["101", "AGAINST"]
    assert len(lines) == 4


def test_group_parse_aliases():
    assert parse_groups(["punc_marks", "Context-Based", "hashtags"]) == (G.HASHTAG, G.PUNCT_MARKS, G.CONTEXT_BASED)
    with pytest.raises(ValueError):
        parse_groups(["ngrams"])


vocab = ["love", "hate", "calm", "storm", "happy", "sad", "#Hillary", "@HillaryClinton", "she", "Bernie",
         "#Rubio2016", "Democrats", "!", "?", ".", ",", ";", "great", "awful", "good", "bad", "vote"]
tweet_text = st.lists(st.sampled_from(vocab), min_size=1, max_size=15).map(" ".join)
group_sets = st.sets(st.sampled_from(CANONICAL_ORDER), min_size=1)


@settings(max_examples=200)
@given(tweet_text, tweet_text, group_sets)
def test_schema_stability(lexicons, clinton_kb, a, b, groups):
    va = assemble_vector(rec(a), groups, lexicons, clinton_kb)
    vb = assemble_vector(rec(b, Sentiment.NEGATIVE, OpinionTowards.INDIRECT), groups, lexicons, clinton_kb)
    assert va.schema == vb.schema


@given(tweet_text, group_sets, st.sampled_from(CANONICAL_ORDER))
def test_group_locality(lexicons, clinton_kb, text, groups, toggled):
    r = rec(text)
    with_g = assemble_vector(r, groups | {toggled}, lexicons, clinton_kb)
    without = groups - {toggled}
    if not without:
        return
    without_g = assemble_vector(r, without, lexicons, clinton_kb)
    rest = [(k, v) for k, v in zip(with_g.schema, with_g.values) if k[0] is not toggled]
    assert rest == list(zip(without_g.schema, without_g.values))
    assert with_g.group_slice(toggled) == assemble_vector(r, [toggled], lexicons, clinton_kb).values


@given(tweet_text)
def test_deterministic(lexicons, clinton_kb, text):
    a = assemble_vector(rec(text), set(G), lexicons, clinton_kb)
    b = assemble_vector(rec(text), set(G), lexicons, clinton_kb)
    assert a == b
    assert np.array_equal(np.array(a.values), np.array(b.values))
