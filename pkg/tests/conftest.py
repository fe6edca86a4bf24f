import pathlib

import pytest

from minipair.workspace import Workspace, demo_data_path

FIXTURES = pathlib.Path(__file__).parent / "fixtures"
GOLDEN = pathlib.Path(__file__).parent / "golden"


@pytest.fixture(scope="session")
def demo_ws():
    return Workspace(demo_data_path())


@pytest.fixture(scope="session")
def demo_lexicon(demo_ws):
    return demo_ws.load_lexicon()


@pytest.fixture(scope="session")
def demo_phrases(demo_ws):
    return demo_ws.load_phrases()


@pytest.fixture(scope="session")
def demo_paradigms(demo_ws):
    return demo_ws.load_paradigms()


@pytest.fixture(scope="session")
def linked_demo(demo_ws, demo_paradigms):
    return {p.id: demo_ws.link(p) for p in demo_paradigms}


@pytest.fixture(scope="session")
def catch_linked(demo_ws):
    return demo_ws.link(demo_ws.load_catch_paradigm())
