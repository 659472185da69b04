import os

import pytest

from uncoverings.construct import ubb_hamdec, ubb_wheel
from uncoverings.decompose import circulant_decomposition
from uncoverings.graph import build_circulant
from uncoverings.graphreader import load_graphs

FIXTURES = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), 'fixtures')


def fixture_path(name):
    return os.path.join(FIXTURES, name)


@pytest.fixture
def c7():
    return build_circulant(7, [1, 2])


@pytest.fixture
def c7_ubb(c7):
    return ubb_hamdec(c7, circulant_decomposition(c7))


@pytest.fixture
def w7_ubb():
    return ubb_wheel(7)


@pytest.fixture(scope='session')
def small_catalog():
    return [g for _, g in load_graphs(fixture_path('connected-upto5.g6'))]
