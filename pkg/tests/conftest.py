import pytest

from ngram_stemmer import build_index, load_index
from ngram_stemmer import fixtures


@pytest.fixture
def small_index():
    return build_index([("cat", 3), ("car", 2), ("dog", 5)])


@pytest.fixture(scope="session")
def juggling_index():
    return load_index(fixtures.data_path(fixtures.JUGGLING))


@pytest.fixture(scope="session")
def create_index():
    return load_index(fixtures.data_path(fixtures.CREATE_CLUSTER))


@pytest.fixture(scope="session")
def table_rows():
    from ngram_stemmer import read_pairs_tsv

    return read_pairs_tsv(fixtures.data_path(fixtures.STEM_PAIRS_100))
