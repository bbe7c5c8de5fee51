"""Friend/enemy knowledge bases and the six context-based features.

Matching rule: a plain WORD matches a knowledge token by equality of its norm
or of its pre-apostrophe stem ("she's" -> "she"); HASHTAG and MENTION tokens
match when the knowledge token is a substring of the norm ("#StopHillary2016"
contains "hillary"). Each tweet token adds at most 1 to a category.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, fields
from importlib import resources
from pathlib import Path
from typing import Iterable

from stance_context.errors import ConfigurationError
from stance_context.textproc import Token, TokenKind


@dataclass(frozen=True)
class TargetSpec:
    target_name: str
    name_tokens: tuple[str, ...]
    pronoun_tokens: tuple[str, ...]
    party_tokens: tuple[str, ...]
    colleague_tokens: tuple[str, ...]
    rival: "TargetSpec | None" = None

    def __post_init__(self):
        for f in ("name_tokens", "pronoun_tokens", "party_tokens", "colleague_tokens"):
            values = tuple(getattr(self, f))
            object.__setattr__(self, f, values)
            for v in values:
                if not v or v != v.lower() or v != v.strip():
                    raise ConfigurationError(f"{self.target_name}: bad {f} entry {v!r}")
        if self.rival is not None and (
            self.rival is self or self.rival.target_name == self.target_name
        ):
            raise ConfigurationError(f"{self.target_name}: rival must be a different target")


@dataclass(frozen=True)
class TargetKnowledge:
    spec: TargetSpec
    oppositor_tokens: tuple[str, ...]

    def lists(self) -> tuple[frozenset, ...]:
        s = self.spec
        return (
            frozenset(s.name_tokens),
            frozenset(s.pronoun_tokens),
            frozenset(s.party_tokens),
            frozenset(s.colleague_tokens),
            frozenset(self.oppositor_tokens),
        )


@dataclass(frozen=True)
class ContextFeatures:
    target_by_name: int = 0
    target_by_pronoun: int = 0
    target_party: int = 0
    target_party_colleagues: int = 0
    targets_oppositors: int = 0
    nobody: int = 1

    def as_tuple(self) -> tuple[int, ...]:
        return tuple(getattr(self, f.name) for f in fields(self))


CONTEXT_FEATURE_NAMES = tuple(f.name for f in fields(ContextFeatures))


def build_knowledge(spec: TargetSpec, with_oppositors: bool = True) -> TargetKnowledge:
    if spec.rival is None:
        if with_oppositors:
            raise ConfigurationError(
                f"{spec.target_name}: oppositor features need a rival target"
            )
        return TargetKnowledge(spec, ())
    rival = spec.rival
    oppositors = sorted(set(rival.party_tokens) | set(rival.colleague_tokens))
    return TargetKnowledge(spec, tuple(oppositors))


def _matches(token: Token, entries: frozenset) -> bool:
    if token.kind is TokenKind.WORD:
        return any(form in entries for form in token.forms)
    if token.kind in (TokenKind.HASHTAG, TokenKind.MENTION):
        return any(entry in token.norm for entry in entries)
    return False


def extract_context_features(tokens: Iterable[Token], kb: TargetKnowledge) -> ContextFeatures:
    lists = kb.lists()
    counts = [0] * len(lists)
    for token in tokens:
        for i, entries in enumerate(lists):
            if _matches(token, entries):
                counts[i] += 1
    return ContextFeatures(*counts, nobody=int(not any(counts)))


# -- knowledge files ---------------------------------------------------------
#
# JSON object: {"target": str, "names": [...], "pronouns": [...],
#               "party": [...], "colleagues": [...], "rival": str | null}
# "rival" names another target; it is resolved against sibling files.

_FILE_KEYS = {"target", "names", "pronouns", "party", "colleagues", "rival"}


def _read_kb_file(path) -> dict:
    data = json.loads(Path(path).read_text(encoding="utf-8"))
    missing = _FILE_KEYS - {"rival"} - set(data)
    if missing:
        raise ConfigurationError(f"{path}: missing fields {sorted(missing)}")
    extra = set(data) - _FILE_KEYS
    if extra:
        raise ConfigurationError(f"{path}: unknown fields {sorted(extra)}")
    return data


def _spec_from_dict(data: dict, rival: TargetSpec | None = None) -> TargetSpec:
    return TargetSpec(
        target_name=data["target"],
        name_tokens=data["names"],
        pronoun_tokens=data["pronouns"],
        party_tokens=data["party"],
        colleague_tokens=data["colleagues"],
        rival=rival,
    )


def load_target_spec(path, rival_path=None) -> TargetSpec:
    """Load a target and its rival.

    Without ``rival_path`` the rival is looked up among ``*.json`` files next
    to ``path`` by its ``target`` field.
    """
    path = Path(path)
    data = _read_kb_file(path)
    rival_name = data.get("rival")
    rival_data = None
    if rival_path is not None:
        rival_data = _read_kb_file(rival_path)
        if rival_name is not None and rival_data["target"] != rival_name:
            raise ConfigurationError(
                f"{path}: rival is {rival_name!r} but {rival_path} describes {rival_data['target']!r}"
            )
    elif rival_name is not None:
        for candidate in sorted(path.parent.glob("*.json")):
            if candidate.resolve() == path.resolve():
                continue
            other = _read_kb_file(candidate)
            if other["target"] == rival_name:
                rival_data = other
                break
        else:
            raise ConfigurationError(f"{path}: rival {rival_name!r} not found in {path.parent}")
    rival = _spec_from_dict(rival_data) if rival_data is not None else None
    return _spec_from_dict(data, rival)


def load_knowledge(path, rival_path=None) -> TargetKnowledge:
    return build_knowledge(load_target_spec(path, rival_path))


SHIPPED_TARGETS = {"Hillary Clinton": "clinton.json", "Donald Trump": "trump.json"}


def shipped_kb_path(target: str) -> Path:
    try:
        name = SHIPPED_TARGETS[target]
    except KeyError:
        raise ConfigurationError(
            f"no shipped knowledge base for {target!r}; pass a knowledge file"
        ) from None
    return Path(str(resources.files("stance_context") / "data" / "kb" / name))


def shipped_knowledge(target: str) -> TargetKnowledge:
    return load_knowledge(shipped_kb_path(target))
