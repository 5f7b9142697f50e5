import pytest
from hypothesis import settings

from triple_branch.analysis import analyze_genus
from triple_branch.golden import load_golden

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


@pytest.fixture(scope="session")
def golden():
    return load_golden()


_ANALYSES = {}


def genus_analysis(g):
    if g not in _ANALYSES:
        _ANALYSES[g] = analyze_genus(g)
    return _ANALYSES[g]


@pytest.fixture(scope="session")
def analyses():
    return genus_analysis
