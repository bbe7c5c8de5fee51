"""Reading, writing and summarizing the tab-separated stance corpus."""
from __future__ import annotations

import csv
import enum
import io
import re
from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, TextIO

from stance_context.errors import RowError, SchemaError, StanceError


class StanceLabel(enum.Enum):
    # Declaration order is the canonical class order used for tie-breaking.
    AGAINST = "AGAINST"
    FAVOR = "FAVOR"
    NONE = "NONE"

    @classmethod
    def parse(cls, value: str) -> "StanceLabel":
        try:
            return cls(value.strip().upper())
        except ValueError:
            raise ValueError(f"unknown stance label {value!r}") from None


class Sentiment(enum.Enum):
    POSITIVE = "POSITIVE"
    NEGATIVE = "NEGATIVE"
    NEUTRAL = "NEUTRAL"
    NONE = "NONE"

    @classmethod
    def parse(cls, value: str) -> "Sentiment":
        key = value.strip().lower()
        alias = _SENTIMENT_ALIASES.get(key)
        if alias is None:
            raise ValueError(f"unknown sentiment label {value!r}")
        return alias


# The post-competition release spells labels "pos", "neg" and "other".
_SENTIMENT_ALIASES = {
    "positive": Sentiment.POSITIVE,
    "pos": Sentiment.POSITIVE,
    "negative": Sentiment.NEGATIVE,
    "neg": Sentiment.NEGATIVE,
    "neutral": Sentiment.NEUTRAL,
    "none": Sentiment.NONE,
    "other": Sentiment.NONE,
}


class OpinionTowards(enum.IntEnum):
    DIRECT = 1
    INDIRECT = 2
    NO_OPINION = 3

    @classmethod
    def parse(cls, value: str) -> "OpinionTowards":
        text = value.strip()
        # Release files carry the full description, e.g. "1.  The tweet explicitly ..."
        m = re.match(r"^([123])(?:\D|$)", text)
        if m:
            return cls(int(m.group(1)))
        try:
            return cls[text.upper()]
        except KeyError:
            raise ValueError(f"unknown opinion-towards label {value!r}") from None


@dataclass(frozen=True)
class TweetRecord:
    id: str
    target: str
    text: str
    stance: StanceLabel
    sentiment: Sentiment | None = None
    opinion_towards: OpinionTowards | None = None

    def __post_init__(self):
        if not self.text:
            raise ValueError("tweet text is empty")
        if (self.sentiment is None) != (self.opinion_towards is None):
            raise ValueError("sentiment and opinion_towards must be both present or both absent")

    @property
    def has_annotations(self) -> bool:
        return self.sentiment is not None


@dataclass(frozen=True)
class CorpusSchema:
    """Column mapping for a corpus file.

    Header names are matched case-insensitively after trimming. Set
    ``id_column`` to None for releases without an ID column; the 1-based data
    row number is used instead. ``opinion_column``/``sentiment_column`` are
    optional, but only as a pair.
    """

    id_column: str | None = "ID"
    target_column: str = "Target"
    text_column: str = "Tweet"
    stance_column: str = "Stance"
    opinion_column: str | None = None
    sentiment_column: str | None = None
    target: str | None = None
    delimiter: str = "\t"

    @classmethod
    def annotated(cls, **kwargs) -> "CorpusSchema":
        """Schema for the stance+sentiment release."""
        kwargs.setdefault("opinion_column", "Opinion towards")
        kwargs.setdefault("sentiment_column", "Sentiment")
        return cls(**kwargs)

    def __post_init__(self):
        if (self.opinion_column is None) != (self.sentiment_column is None):
            raise SchemaError("opinion and sentiment columns must be configured together")


@dataclass(frozen=True)
class DistributionReport:
    total: int
    pct_against: float
    pct_favor: float
    pct_none: float
    counts: dict

    def __str__(self) -> str:
        return (
            f"total={self.total} against={self.pct_against:.1f} "
            f"favor={self.pct_favor:.1f} none={self.pct_none:.1f}"
        )


def _reader(source: TextIO, delimiter: str):
    if delimiter == "\t":
        # Tweets contain bare quote characters; never treat them as quoting.
        return csv.reader(source, delimiter="\t", quoting=csv.QUOTE_NONE)
    return csv.reader(source, delimiter=delimiter)


def parse_corpus(source: TextIO | str, schema: CorpusSchema = CorpusSchema()) -> list[TweetRecord]:
    if isinstance(source, str):
        source = io.StringIO(source, newline="")
    rows = _reader(source, schema.delimiter)
    try:
        header = next(rows)
    except StopIteration:
        raise SchemaError("corpus is empty: missing header row") from None

    index = {name.strip().lstrip("﻿").lower(): i for i, name in enumerate(header)}

    def column(name):
        if name is None:
            return None
        key = name.strip().lower()
        if key not in index:
            raise SchemaError(f"missing column {name!r}")
        return index[key]

    i_id = column(schema.id_column)
    i_target = column(schema.target_column)
    i_text = column(schema.text_column)
    i_stance = column(schema.stance_column)
    i_opinion = column(schema.opinion_column)
    i_sentiment = column(schema.sentiment_column)
    width = max(i for i in (i_id, i_target, i_text, i_stance, i_opinion, i_sentiment) if i is not None)
    wanted = schema.target.strip() if schema.target is not None else None

    records = []
    for rownum, row in enumerate(rows, start=1):
        if not row or (len(row) == 1 and not row[0].strip()):
            continue
        if len(row) <= width:
            raise RowError(rownum, f"expected at least {width + 1} columns, got {len(row)}")
        target = row[i_target].strip()
        if wanted is not None and target != wanted:
            continue
        text = row[i_text].strip()
        if not text:
            raise RowError(rownum, "empty tweet text")
        try:
            stance = StanceLabel.parse(row[i_stance])
            sentiment = opinion = None
            if i_opinion is not None:
                raw_op, raw_sent = row[i_opinion].strip(), row[i_sentiment].strip()
                if raw_op or raw_sent:
                    opinion = OpinionTowards.parse(raw_op)
                    sentiment = Sentiment.parse(raw_sent)
        except ValueError as exc:
            raise RowError(rownum, str(exc)) from None
        records.append(
            TweetRecord(
                id=row[i_id].strip() if i_id is not None else str(rownum),
                target=target,
                text=text,
                stance=stance,
                sentiment=sentiment,
                opinion_towards=opinion,
            )
        )
    return records


def read_corpus(path, schema: CorpusSchema = CorpusSchema(), encoding: str = "utf-8") -> list[TweetRecord]:
    with open(path, encoding=encoding, newline="") as fh:
        return parse_corpus(fh, schema)


def write_corpus(records: Iterable[TweetRecord], sink: TextIO, with_annotations: bool | None = None) -> None:
    """Serialize records in the tab-separated format ``parse_corpus`` reads."""
    records = list(records)
    if with_annotations is None:
        with_annotations = any(r.has_annotations for r in records)
    header = ["ID", "Target", "Tweet", "Stance"]
    if with_annotations:
        header += ["Opinion towards", "Sentiment"]
    sink.write("\t".join(header) + "\n")
    for r in records:
        if any(c in r.text for c in "\t\r\n"):
            raise StanceError(f"record {r.id}: text contains a tab or newline")
        cells = [r.id, r.target, r.text, r.stance.value]
        if with_annotations:
            cells += [
                str(int(r.opinion_towards)) if r.opinion_towards else "",
                r.sentiment.value if r.sentiment else "",
            ]
        sink.write("\t".join(cells) + "\n")


def corpus_stats(records: list[TweetRecord]) -> DistributionReport:
    if not records:
        raise StanceError("cannot summarize an empty corpus")
    counts = Counter(r.stance for r in records)
    total = len(records)

    def pct(label):
        return round(100.0 * counts[label] / total, 1)

    return DistributionReport(
        total=total,
        pct_against=pct(StanceLabel.AGAINST),
        pct_favor=pct(StanceLabel.FAVOR),
        pct_none=pct(StanceLabel.NONE),
        counts={label.value: counts[label] for label in StanceLabel},
    )


def corpus_path_schema(path: Path | str, **kwargs) -> CorpusSchema:
    """Guess a schema from a file's header: annotated columns are used when present."""
    with open(path, encoding=kwargs.pop("encoding", "utf-8"), newline="") as fh:
        first = fh.readline()
    delimiter = kwargs.pop("delimiter", "\t" if "\t" in first else ",")
    names = {c.strip().lstrip("﻿").lower() for c in first.rstrip("\r\n").split(delimiter)}
    if "opinion towards" in names and "sentiment" in names:
        kwargs.setdefault("opinion_column", "Opinion towards")
        kwargs.setdefault("sentiment_column", "Sentiment")
    if "id" not in names:
        kwargs.setdefault("id_column", None)
    return CorpusSchema(delimiter=delimiter, **kwargs)
