import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from freebycyclic import load_fixture, parse_graph_map  # noqa: E402


@pytest.fixture
def gersten():
    return load_fixture("gersten.tt")


@pytest.fixture
def quad():
    return load_fixture("quad.tt")


@pytest.fixture
def notrich1():
    return load_fixture("notrich1.tt")


@pytest.fixture
def notrich2():
    return load_fixture("notrich2.tt")


@pytest.fixture
def nested():
    return load_fixture("nested.tt")


@pytest.fixture
def eg():
    return load_fixture("eg.tt")


def rose(images, vertex="x"):
    """A map on a one-vertex rose from {edge: "image tokens"} (insertion order)."""
    lines = [f"vertex {vertex}"]
    lines += [f"edge {name} {vertex} {vertex}" for name in images]
    lines += [f"map {name} = {img}" for name, img in images.items()]
    return parse_graph_map("\n".join(lines))
