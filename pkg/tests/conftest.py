import pathlib
import sys

import pytest

TESTS_DIR = pathlib.Path(__file__).parent
sys.path.insert(0, str(TESTS_DIR))

FIXTURES = TESTS_DIR.parent / "fixtures"


@pytest.fixture(scope="session")
def pizza_text() -> str:
    return (FIXTURES / "pizza.ofn").read_text()


@pytest.fixture(scope="session")
def broken_text() -> str:
    return (FIXTURES / "broken.ofn").read_text()


@pytest.fixture(scope="session")
def pizza_bundle(pizza_text):
    from ontoview.config import AppConfig
    from ontoview.session import Engine
    return Engine(AppConfig()).load_text(pizza_text)


@pytest.fixture(scope="session")
def core_bundle():
    """DBpedia-core-scale synthetic ontology, built once."""
    from generators import dbpedia_scale_document
    from ontoview.config import AppConfig
    from ontoview.session import Engine
    return Engine(AppConfig()).load_text(dbpedia_scale_document())
