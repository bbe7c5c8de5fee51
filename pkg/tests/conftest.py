import pytest

from stance_context.context_kb import shipped_knowledge
from stance_context.corpus import CorpusSchema, read_corpus
from stance_context.lexicons import load_lexicons
from stance_context.paths import fixture_dir, fixture_lexicon_config


@pytest.fixture(scope="session")
def fixtures():
    return fixture_dir()


@pytest.fixture(scope="session")
def lexicons():
    return load_lexicons(fixture_lexicon_config())


@pytest.fixture(scope="session")
def clinton_kb():
    return shipped_knowledge("Hillary Clinton")


@pytest.fixture(scope="session")
def trump_kb():
    return shipped_knowledge("Donald Trump")


@pytest.fixture(scope="session")
def mini_corpus(fixtures):
    return read_corpus(fixtures / "mini_corpus.tsv", CorpusSchema.annotated())


@pytest.fixture(scope="session")
def mini_transfer(fixtures):
    return read_corpus(fixtures / "mini_transfer.tsv", CorpusSchema.annotated())
