"""Locations of shipped data and resource discovery in user directories."""
from __future__ import annotations

import os
from importlib import resources
from pathlib import Path

LEXICON_DIR_ENV = "STANCE_LEXICON_DIR"
KB_DIR_ENV = "STANCE_KB_DIR"

# First existing name wins when a lexicon directory is scanned.
LEXICON_FILENAMES = {
    "afinn": ("afinn.tsv", "AFINN-111.txt", "AFINN-165.txt", "AFINN-en-165.txt"),
    "hl_positive": ("hl_positive.txt", "positive-words.txt"),
    "hl_negative": ("hl_negative.txt", "negative-words.txt"),
    "liwc": ("liwc.tsv", "LIWC2015.dic", "LIWC2015_English.dic", "LIWC2007.dic", "LIWC2007_English.dic"),
    "dal": ("dal.tsv", "dal.txt", "DAL.txt", "dictionary_of_affect.txt"),
}


def data_dir() -> Path:
    return Path(str(resources.files("stance_context") / "data"))


def fixture_dir() -> Path:
    return data_dir() / "fixtures"


def kb_dir() -> Path:
    return data_dir() / "kb"


def scan_lexicon_dir(directory) -> dict[str, Path]:
    directory = Path(directory)
    found = {}
    for key, names in LEXICON_FILENAMES.items():
        for name in names:
            if (directory / name).is_file():
                found[key] = directory / name
                break
    return found


def fixture_lexicon_config() -> dict[str, Path]:
    return scan_lexicon_dir(fixture_dir())


def env_lexicon_dir() -> Path | None:
    value = os.environ.get(LEXICON_DIR_ENV)
    return Path(value) if value else None


def env_kb_dir() -> Path | None:
    value = os.environ.get(KB_DIR_ENV)
    return Path(value) if value else None
