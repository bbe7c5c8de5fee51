"""Affect lexicon loaders and the sentiment-based feature scorers.

Four resources are supported: a polarity lexicon (AFINN), positive/negative
opinion wordlists (Hu & Liu), a category lexicon with prefix patterns (LIWC or
any compatible resource) and a three-dimension affect dictionary (DAL).
Scorers look up WORD and HASHTAG norms; mentions, URLs and numbers are never
looked up.
"""
from __future__ import annotations

import logging
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping

from stance_context.errors import LexiconLoadError
from stance_context.textproc import Token, TokenKind

log = logging.getLogger(__name__)

POSEMO = "PosEmo"
NEGEMO = "NegEmo"
DAL_DIMENSIONS = ("pleasantness", "activation", "imagery")

_LOOKUP_KINDS = (TokenKind.WORD, TokenKind.HASHTAG)


def _lookup_norms(tokens: Iterable[Token]):
    return (t.norm for t in tokens if t.kind in _LOOKUP_KINDS)


def _read_lines(path: Path):
    raw = Path(path).read_bytes()
    try:
        text = raw.decode("utf-8-sig")
    except UnicodeDecodeError:
        # The published Hu & Liu lists are latin-1.
        text = raw.decode("latin-1")
    return enumerate(text.splitlines(), start=1)


@dataclass(frozen=True)
class PolarityLexicon:
    entries: Mapping[str, int]

    def __post_init__(self):
        for word, value in self.entries.items():
            if not -5 <= value <= 5:
                raise ValueError(f"polarity of {word!r} outside [-5, 5]: {value}")

    def __len__(self):
        return len(self.entries)

    @classmethod
    def load(cls, path) -> "PolarityLexicon":
        entries = {}
        for lineno, line in _read_lines(path):
            if not line.strip():
                continue
            parts = line.rstrip().split("\t")
            if len(parts) != 2:
                raise LexiconLoadError(path, lineno, "expected 'word<TAB>integer'")
            word, value = parts[0].strip().lower(), parts[1].strip()
            try:
                score = int(value)
            except ValueError:
                raise LexiconLoadError(path, lineno, f"not an integer: {value!r}") from None
            if not -5 <= score <= 5:
                raise LexiconLoadError(path, lineno, f"polarity {score} outside [-5, 5]")
            entries[word] = score
        return cls(entries)


@dataclass(frozen=True)
class OpinionLexicon:
    positive: frozenset
    negative: frozenset

    @classmethod
    def from_words(cls, positive: Iterable[str], negative: Iterable[str]) -> "OpinionLexicon":
        pos = {w.lower() for w in positive}
        neg = {w.lower() for w in negative}
        both = pos & neg
        if both:
            log.warning("dropping %d words listed as both positive and negative: %s",
                        len(both), ", ".join(sorted(both)))
        return cls(frozenset(pos - both), frozenset(neg - both))

    @staticmethod
    def read_wordlist(path) -> list[str]:
        words = []
        for lineno, line in _read_lines(path):
            word = line.strip()
            if not word or word.startswith(";"):
                continue
            if any(c.isspace() for c in word):
                raise LexiconLoadError(path, lineno, "expected one word per line")
            words.append(word)
        return words

    @classmethod
    def load(cls, positive_path, negative_path) -> "OpinionLexicon":
        return cls.from_words(cls.read_wordlist(positive_path), cls.read_wordlist(negative_path))


@dataclass(frozen=True)
class CategoryLexicon:
    """Category name -> patterns; a trailing '*' makes a prefix pattern."""

    categories: Mapping[str, tuple]
    _literals: dict = field(init=False, repr=False, compare=False)
    _prefixes: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        literals, prefixes = {}, {}
        for name, patterns in self.categories.items():
            lit, pre = set(), set()
            for p in patterns:
                if not p or p == "*" or "*" in p[:-1]:
                    raise ValueError(f"bad pattern {p!r} in category {name}")
                (pre.add(p[:-1]) if p.endswith("*") else lit.add(p))
            literals[name], prefixes[name] = frozenset(lit), frozenset(pre)
        object.__setattr__(self, "_literals", literals)
        object.__setattr__(self, "_prefixes", prefixes)

    def matches(self, category: str, norm: str) -> bool:
        if norm in self._literals.get(category, ()):
            return True
        prefixes = self._prefixes.get(category, ())
        return any(norm[:k] in prefixes for k in range(1, len(norm) + 1))

    @classmethod
    def load(cls, path) -> "CategoryLexicon":
        lines = list(_read_lines(path))
        first = next((line.strip() for _, line in lines if line.strip()), "")
        if first.startswith("%"):
            return cls._load_dic(path, lines)
        cats: dict[str, list] = {}
        for lineno, line in lines:
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            parts = line.strip().split("\t")
            if len(parts) != 2 or not parts[1].strip():
                raise LexiconLoadError(path, lineno, "expected 'category<TAB>pattern'")
            pattern = parts[1].strip().lower()
            if pattern == "*" or "*" in pattern[:-1]:
                raise LexiconLoadError(path, lineno, f"'*' allowed only at the end: {pattern!r}")
            cats.setdefault(_canonical_category(parts[0].strip()), []).append(pattern)
        return cls({k: tuple(v) for k, v in cats.items()})

    @classmethod
    def _load_dic(cls, path, lines) -> "CategoryLexicon":
        # LIWC .dic layout: "%" / "id<TAB>name" lines / "%" / "word<TAB>id<TAB>id..." lines.
        ids: dict[str, str] = {}
        cats: dict[str, list] = {}
        section = 0
        for lineno, line in lines:
            stripped = line.strip()
            if not stripped:
                continue
            if stripped == "%":
                section += 1
                continue
            parts = stripped.split()
            if section == 1:
                if len(parts) < 2:
                    raise LexiconLoadError(path, lineno, "expected 'id name' in category header")
                ids[parts[0]] = _canonical_category(parts[1])
            elif section >= 2:
                word = parts[0].lower()
                if "*" in word[:-1]:
                    raise LexiconLoadError(path, lineno, f"'*' allowed only at the end: {word!r}")
                for cid in parts[1:]:
                    if cid not in ids:
                        # Some .dic files mix in phrase tokens and bracketed codes; skip those.
                        if not cid.isdigit():
                            break
                        raise LexiconLoadError(path, lineno, f"unknown category id {cid}")
                    cats.setdefault(ids[cid], []).append(word)
        return cls({k: tuple(v) for k, v in cats.items()})

    def size(self, category: str) -> int:
        return len(self.categories.get(category, ()))


def _canonical_category(name: str) -> str:
    low = name.lower()
    if low == "posemo":
        return POSEMO
    if low == "negemo":
        return NEGEMO
    return name


@dataclass(frozen=True)
class DalLexicon:
    entries: Mapping[str, tuple]

    def __len__(self):
        return len(self.entries)

    @classmethod
    def load(cls, path) -> "DalLexicon":
        entries = {}
        for lineno, line in _read_lines(path):
            parts = line.split()
            if not parts:
                continue
            if lineno == 1 and parts[-1].lower() == "imagery":
                continue
            if len(parts) != 4:
                raise LexiconLoadError(path, lineno, "expected 'word<TAB>real<TAB>real<TAB>real'")
            try:
                values = tuple(float(v) for v in parts[1:])
            except ValueError:
                raise LexiconLoadError(path, lineno, "non-numeric rating") from None
            entries[parts[0].lower()] = values
        return cls(entries)


@dataclass(frozen=True)
class LexiconSet:
    """The four resources; a None member disables its feature group."""

    afinn: PolarityLexicon | None = None
    hl: OpinionLexicon | None = None
    liwc: CategoryLexicon | None = None
    dal: DalLexicon | None = None


RESOURCE_KEYS = ("afinn", "hl_positive", "hl_negative", "liwc", "dal")


def load_lexicons(config: Mapping[str, str | os.PathLike | None]) -> LexiconSet:
    """Load resources from a path map with keys from ``RESOURCE_KEYS``.

    Missing or None entries disable the resource. The opinion wordlists need
    both ``hl_positive`` and ``hl_negative``.
    """
    unknown = set(config) - set(RESOURCE_KEYS)
    if unknown:
        raise KeyError(f"unknown lexicon keys: {sorted(unknown)}")

    def path(key):
        value = config.get(key)
        if value is None:
            return None
        p = Path(value)
        if not p.is_file():
            raise FileNotFoundError(f"{key} lexicon not found: {p}")
        return p

    afinn, pos, neg, liwc, dal = (path(k) for k in RESOURCE_KEYS)
    if (pos is None) != (neg is None):
        raise KeyError("hl_positive and hl_negative must be given together")
    return LexiconSet(
        afinn=PolarityLexicon.load(afinn) if afinn else None,
        hl=OpinionLexicon.load(pos, neg) if pos else None,
        liwc=CategoryLexicon.load(liwc) if liwc else None,
        dal=DalLexicon.load(dal) if dal else None,
    )


def score_afinn(tokens: Iterable[Token], lex: PolarityLexicon) -> float:
    return float(sum(lex.entries.get(norm, 0) for norm in _lookup_norms(tokens)))


def score_hl(tokens: Iterable[Token], lex: OpinionLexicon) -> float:
    score = 0
    for norm in _lookup_norms(tokens):
        if norm in lex.positive:
            score += 1
        elif norm in lex.negative:
            score -= 1
    return float(score)


def score_liwc(tokens: Iterable[Token], lex: CategoryLexicon) -> float:
    score = 0
    for norm in _lookup_norms(tokens):
        score += lex.matches(POSEMO, norm) - lex.matches(NEGEMO, norm)
    return float(score)


def score_dal(tokens: Iterable[Token], lex: DalLexicon) -> tuple[float, ...]:
    """Sums then means of (pleasantness, activation, imagery) over matched words."""
    sums = [0.0, 0.0, 0.0]
    hits = 0
    for norm in _lookup_norms(tokens):
        rating = lex.entries.get(norm)
        if rating is None:
            continue
        hits += 1
        for i in range(3):
            sums[i] += rating[i]
    if hits == 0:
        return (0.0,) * 6
    return (*sums, *(s / hits for s in sums))
