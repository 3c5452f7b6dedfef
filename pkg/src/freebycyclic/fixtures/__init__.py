"""Bundled example maps (``*.tt``) and one Delta encoding (``*.delta``)."""
from importlib import resources
from pathlib import Path

FIXTURES = ("gersten.tt", "quad.tt", "notrich1.tt", "notrich2.tt", "rank2.tt", "nested.tt",
            "eg.tt", "cat0nonhhg.delta")
MAP_FIXTURES = tuple(name for name in FIXTURES if name.endswith(".tt"))


def fixture_path(name: str) -> Path:
    if name not in FIXTURES:
        raise KeyError(f"no bundled fixture {name!r}")
    return Path(str(resources.files(__name__).joinpath(name)))


def load_fixture(name: str):
    from ..core import parse_graph_map

    return parse_graph_map(fixture_path(name).read_text(encoding="utf-8"))
