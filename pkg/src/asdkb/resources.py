"""Access to bundled data files (fixture dataset, dictionaries, patterns)."""

from __future__ import annotations

from importlib import resources
from pathlib import Path


def data_path(*parts: str) -> Path:
    base = resources.files("asdkb") / "data"
    return Path(str(base.joinpath(*parts)))


def read_data_text(*parts: str) -> str:
    return data_path(*parts).read_text(encoding="utf-8")


def fixture_dir() -> Path:
    """Directory of the bundled fixture dataset."""
    return data_path("fixtures")


def default_ontology_text() -> str:
    return read_data_text("ontology.txt")


def load_word_list(name: str) -> set:
    words = set()
    for line in read_data_text(name).splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            words.add(line)
    return words
