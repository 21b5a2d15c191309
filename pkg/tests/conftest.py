import os

import pytest

from korlex import MINI_MANIFEST
from korlex.build import compile_bundle, load_bundle

FIXTURES = os.path.join(os.path.dirname(__file__), "fixtures")


def fixture_path(*parts):
    return os.path.join(FIXTURES, *parts)


@pytest.fixture(scope="session")
def mini_bundle():
    return load_bundle(MINI_MANIFEST)


@pytest.fixture(scope="session")
def mini_compiled():
    return compile_bundle(MINI_MANIFEST)


@pytest.fixture(scope="session")
def mini_lexicon(mini_compiled):
    return mini_compiled[0]


@pytest.fixture(scope="session")
def mini_report(mini_compiled):
    return mini_compiled[1]
