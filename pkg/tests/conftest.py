import pytest

from asdkb.ingest import ingest_all
from asdkb.ontology import load_ontology
from asdkb.qa import QaEngine, load_patterns
from asdkb.resources import (
    default_ontology_text,
    fixture_dir,
    load_word_list,
    read_data_text,
)


@pytest.fixture(scope="session")
def schema():
    return load_ontology(default_ontology_text())


@pytest.fixture(scope="session")
def kb():
    result = ingest_all(fixture_dir())
    assert not result.report.violations, result.report.violations
    return result


@pytest.fixture(scope="session")
def engine(kb):
    return QaEngine(
        kb.store,
        kb.schema,
        load_patterns(read_data_text("patterns.jsonl")),
        sorted(load_word_list("intent_lexicon.txt")),
    )
