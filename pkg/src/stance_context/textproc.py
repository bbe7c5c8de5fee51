"""Tweet tokenizer producing typed tokens for every feature extractor."""
from __future__ import annotations

import enum
import re
from dataclasses import dataclass


class TokenKind(enum.Enum):
    WORD = "WORD"
    HASHTAG = "HASHTAG"
    MENTION = "MENTION"
    PUNCT = "PUNCT"
    URL = "URL"
    NUMBER = "NUMBER"


_APOSTROPHES = "'’"

_TOKEN_RE = re.compile(
    r"""
    (?P<url>[A-Za-z][A-Za-z0-9+.\-]*://\S+)
    | (?P<hashtag>\#\w+)
    | (?P<mention>@\w+)
    | (?P<word>[^\W_]+(?:['’][^\W_]+)*)
    | (?P<punct>\S)
    """,
    re.VERBOSE,
)


def normalize(surface: str) -> str:
    return surface.lower().replace("’", "'")


@dataclass(frozen=True)
class Token:
    kind: TokenKind
    surface: str
    norm: str

    @property
    def stem(self) -> str | None:
        """Pre-apostrophe part of a WORD ("she's" -> "she"), else None."""
        if self.kind is TokenKind.WORD and "'" in self.norm:
            return self.norm.split("'", 1)[0]
        return None

    @property
    def forms(self) -> tuple[str, ...]:
        stem = self.stem
        return (self.norm,) if stem is None else (self.norm, stem)


def tokenize(text: str) -> list[Token]:
    tokens = []
    for m in _TOKEN_RE.finditer(text):
        surface = m.group()
        kind = m.lastgroup
        if kind == "url":
            tokens.append(Token(TokenKind.URL, surface, surface.lower()))
        elif kind == "hashtag":
            tokens.append(Token(TokenKind.HASHTAG, surface, normalize(surface[1:])))
        elif kind == "mention":
            tokens.append(Token(TokenKind.MENTION, surface, normalize(surface[1:])))
        elif kind == "word":
            k = TokenKind.NUMBER if surface.isdigit() else TokenKind.WORD
            tokens.append(Token(k, surface, normalize(surface)))
        else:
            tokens.append(Token(TokenKind.PUNCT, surface, normalize(surface)))
    return tokens


def strip_urls(text: str) -> str:
    return _TOKEN_RE.sub(lambda m: " " if m.lastgroup == "url" else m.group(), text)
