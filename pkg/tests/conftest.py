import pytest

from placeql import Compiler, Config


@pytest.fixture(scope="session")
def compiler():
    c = Compiler(Config())
    c.load_kb()
    return c


@pytest.fixture(scope="session")
def kb(compiler):
    return compiler.kb


@pytest.fixture(scope="session")
def lexicons(compiler):
    return compiler.lexicons


@pytest.fixture(scope="session")
def vectors(compiler):
    return compiler.vectors


@pytest.fixture(scope="session")
def corpus_entries(compiler):
    from placeql.corpus import load_corpus
    return load_corpus(compiler.config.corpus_dir)


INTRO_QUESTION = "How many pharmacies are in 200 meter radius of High Street in Oxford?"


@pytest.fixture(scope="session")
def intro_result(compiler):
    return compiler.compile(INTRO_QUESTION)
