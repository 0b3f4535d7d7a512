import pytest

from fuzzyrank.config import default_config
from fuzzyrank.ontology import load_taxonomies, term_catalog
from fuzzyrank.textproc import build_pipeline


@pytest.fixture(scope="session")
def cfg():
    return default_config()


@pytest.fixture(scope="session")
def pipe(cfg):
    return build_pipeline(cfg.pipeline)


@pytest.fixture(scope="session")
def taxa(pipe):
    return load_taxonomies(pipe)


@pytest.fixture(scope="session")
def catalog(taxa):
    return term_catalog(taxa)
