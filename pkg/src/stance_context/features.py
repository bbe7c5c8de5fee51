"""Structural and labeled-based features, and assembly of named feature vectors."""
from __future__ import annotations

import csv
import enum
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from stance_context.context_kb import CONTEXT_FEATURE_NAMES, TargetKnowledge, extract_context_features
from stance_context.corpus import OpinionTowards, Sentiment, TweetRecord
from stance_context.errors import ConfigurationError
from stance_context.lexicons import DAL_DIMENSIONS, LexiconSet, score_afinn, score_dal, score_hl, score_liwc
from stance_context.textproc import Token, TokenKind, tokenize


class FeatureGroup(enum.Enum):
    # Declaration order is the canonical concatenation order.
    AFINN = "AFINN"
    HL = "HL"
    LIWC = "LIWC"
    DAL = "DAL"
    HASHTAG = "HASHTAG"
    MENTION = "MENTION"
    PUNCT_MARKS = "PUNCT_MARKS"
    CONTEXT_BASED = "CONTEXT_BASED"
    LABELED_BASED = "LABELED_BASED"

    @classmethod
    def parse(cls, name: str) -> "FeatureGroup":
        key = name.strip().upper().replace("-", "_")
        key = {"PUNC_MARKS": "PUNCT_MARKS", "HASHTAGS": "HASHTAG", "MENTIONS": "MENTION"}.get(key, key)
        try:
            return cls[key]
        except KeyError:
            raise ValueError(f"unknown feature group {name!r}") from None

    @property
    def label(self) -> str:
        """Lower-case name in the style of the result tables."""
        return self.value if self.value in ("AFINN", "HL", "LIWC", "DAL") else self.value.lower()


CANONICAL_ORDER = tuple(FeatureGroup)
EXPERIMENT1_GROUPS = tuple(g for g in FeatureGroup if g is not FeatureGroup.LABELED_BASED)
EXPERIMENT2_GROUPS = CANONICAL_ORDER

PUNCT_CHARS = {"!": "exclamation", "?": "question", ".": "period", ",": "comma", ";": "semicolon"}
SENTIMENT_ORDER = (Sentiment.POSITIVE, Sentiment.NEGATIVE, Sentiment.NEUTRAL, Sentiment.NONE)
OPINION_ORDER = (OpinionTowards.DIRECT, OpinionTowards.INDIRECT, OpinionTowards.NO_OPINION)

GROUP_FEATURES = {
    FeatureGroup.AFINN: ("afinn_sum",),
    FeatureGroup.HL: ("hl_pos_minus_neg",),
    FeatureGroup.LIWC: ("liwc_posemo_minus_negemo",),
    FeatureGroup.DAL: tuple(f"dal_{d}_sum" for d in DAL_DIMENSIONS)
    + tuple(f"dal_{d}_mean" for d in DAL_DIMENSIONS),
    FeatureGroup.HASHTAG: ("hashtag_count",),
    FeatureGroup.MENTION: ("mention_count",),
    FeatureGroup.PUNCT_MARKS: tuple(f"punct_{n}" for n in PUNCT_CHARS.values()) + ("punct_total",),
    FeatureGroup.CONTEXT_BASED: CONTEXT_FEATURE_NAMES,
    FeatureGroup.LABELED_BASED: tuple(f"sentiment_{s.value.lower()}" for s in SENTIMENT_ORDER)
    + tuple(f"opinion_towards_{int(o)}" for o in OPINION_ORDER),
}


def parse_groups(names: Iterable[str | FeatureGroup]) -> tuple[FeatureGroup, ...]:
    chosen = {n if isinstance(n, FeatureGroup) else FeatureGroup.parse(n) for n in names}
    return canonical(chosen)


def canonical(groups: Iterable[FeatureGroup]) -> tuple[FeatureGroup, ...]:
    chosen = set(groups)
    return tuple(g for g in CANONICAL_ORDER if g in chosen)


def schema_for(groups: Iterable[FeatureGroup]) -> tuple[tuple[FeatureGroup, str], ...]:
    return tuple((g, name) for g in canonical(groups) for name in GROUP_FEATURES[g])


@dataclass(frozen=True)
class StructuralFeatures:
    hashtag_count: int
    mention_count: int
    punct: tuple[int, int, int, int, int, int]  # ! ? . , ; total


@dataclass(frozen=True)
class FeatureVector:
    schema: tuple[tuple[FeatureGroup, str], ...]
    values: tuple[float, ...]

    def __post_init__(self):
        if len(self.schema) != len(self.values):
            raise ValueError("schema and values differ in length")

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(name for _, name in self.schema)

    def group_slice(self, group: FeatureGroup) -> tuple[float, ...]:
        return tuple(v for (g, _), v in zip(self.schema, self.values) if g is group)

    def __len__(self):
        return len(self.values)


def extract_structural(tokens: Sequence[Token]) -> StructuralFeatures:
    hashtags = mentions = 0
    punct = dict.fromkeys(PUNCT_CHARS, 0)
    for t in tokens:
        if t.kind is TokenKind.HASHTAG:
            hashtags += 1
        elif t.kind is TokenKind.MENTION:
            mentions += 1
        elif t.kind is TokenKind.PUNCT and t.surface in punct:
            punct[t.surface] += 1
    counts = tuple(punct.values())
    return StructuralFeatures(hashtags, mentions, (*counts, sum(counts)))


def encode_annotation_features(sentiment: Sentiment | None, opinion_towards: OpinionTowards | None) -> tuple[float, ...]:
    if sentiment is None or opinion_towards is None:
        raise ConfigurationError(
            "labeled-based features need sentiment and opinion-towards annotations; "
            "use the experiment1 setting for corpora without them"
        )
    return tuple(float(s is sentiment) for s in SENTIMENT_ORDER) + tuple(
        float(o is opinion_towards) for o in OPINION_ORDER
    )


def check_resources(groups: Iterable[FeatureGroup], lex: LexiconSet | None, kb: TargetKnowledge | None) -> None:
    lex = lex or LexiconSet()
    needs = {
        FeatureGroup.AFINN: lex.afinn,
        FeatureGroup.HL: lex.hl,
        FeatureGroup.LIWC: lex.liwc,
        FeatureGroup.DAL: lex.dal,
        FeatureGroup.CONTEXT_BASED: kb,
    }
    for g in groups:
        if g in needs and needs[g] is None:
            what = "knowledge base" if g is FeatureGroup.CONTEXT_BASED else "lexicon"
            raise ConfigurationError(f"feature group {g.value} selected but its {what} is not available")


def _group_values(group, tokens, record, lex, kb, structural):
    if group is FeatureGroup.AFINN:
        return (score_afinn(tokens, lex.afinn),)
    if group is FeatureGroup.HL:
        return (score_hl(tokens, lex.hl),)
    if group is FeatureGroup.LIWC:
        return (score_liwc(tokens, lex.liwc),)
    if group is FeatureGroup.DAL:
        return score_dal(tokens, lex.dal)
    if group is FeatureGroup.HASHTAG:
        return (float(structural().hashtag_count),)
    if group is FeatureGroup.MENTION:
        return (float(structural().mention_count),)
    if group is FeatureGroup.PUNCT_MARKS:
        return tuple(float(c) for c in structural().punct)
    if group is FeatureGroup.CONTEXT_BASED:
        return tuple(float(v) for v in extract_context_features(tokens, kb).as_tuple())
    if group is FeatureGroup.LABELED_BASED:
        return encode_annotation_features(record.sentiment, record.opinion_towards)
    raise AssertionError(group)


def assemble_vector(
    record: TweetRecord,
    groups: Iterable[FeatureGroup],
    lex: LexiconSet | None = None,
    kb: TargetKnowledge | None = None,
) -> FeatureVector:
    groups = canonical(groups)
    check_resources(groups, lex, kb)
    tokens = tokenize(record.text)
    cache = []

    def structural():
        if not cache:
            cache.append(extract_structural(tokens))
        return cache[0]

    values = []
    for g in groups:
        values.extend(_group_values(g, tokens, record, lex, kb, structural))
    return FeatureVector(schema_for(groups), tuple(values))


def feature_matrix(
    records: Sequence[TweetRecord],
    groups: Iterable[FeatureGroup],
    lex: LexiconSet | None = None,
    kb: TargetKnowledge | None = None,
) -> tuple[tuple[tuple[FeatureGroup, str], ...], np.ndarray]:
    """Vectors for many records stacked into an (n_records, n_features) array."""
    groups = canonical(groups)
    check_resources(groups, lex, kb)
    if FeatureGroup.LABELED_BASED in groups:
        missing = [r.id for r in records if not r.has_annotations]
        if missing:
            raise ConfigurationError(
                f"{len(missing)} records lack sentiment/opinion annotations (first: {missing[0]}); "
                "labeled-based features need the annotated release or the experiment1 setting"
            )
    schema = schema_for(groups)
    matrix = np.zeros((len(records), len(schema)))
    for i, record in enumerate(records):
        matrix[i] = assemble_vector(record, groups, lex, kb).values
    return schema, matrix


def write_feature_table(sink, records: Sequence[TweetRecord], schema, matrix: np.ndarray) -> None:
    writer = csv.writer(sink, delimiter="\t", lineterminator="\n")
    writer.writerow(["id", "stance", *(name for _, name in schema)])
    for record, row in zip(records, matrix):
        writer.writerow([record.id, record.stance.value, *(repr(float(v)) for v in row)])
