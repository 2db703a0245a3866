"""Evolutionary client-server network design."""

import json as _json

from . import _core
from ._core import ConfigError, PlacementError, population_size

__all__ = [
    "ConfigError",
    "PlacementError",
    "default_config",
    "evaluate",
    "initial_network",
    "population_size",
    "run",
    "shortest_distances",
    "sweep",
]


def _config(config=None, **overrides):
    merged = dict(config or {})
    merged.update(overrides)
    return _json.dumps(merged)


def _network(network):
    return network if isinstance(network, str) else _json.dumps(network)


def default_config():
    return _json.loads(_core.default_config())


def initial_network(config=None, **overrides):
    """Edgeless starting network (a network document as a dict)."""
    return _json.loads(_core.initial_network(_config(config, **overrides)))


def evaluate(network):
    return _json.loads(_core.evaluate(_network(network)))


def shortest_distances(network):
    """Returns (node ids, distance rows); unreachable pairs are inf."""
    ids, rows = _core.shortest_distances(_network(network))
    return ids, rows


def run(config=None, **overrides):
    """Per-generation records of one seeded run."""
    return _json.loads(_core.run(_config(config, **overrides)))


def sweep(which, config=None, runs=0, values=(), out_dir=None, **overrides):
    """Runs 'table1' (link failure) or 'table2' (population size).

    Returns (summary rows, CSV text).
    """
    summary, csv = _core.sweep(which, _config(config, **overrides), runs, list(values), out_dir or "")
    return _json.loads(summary)["rows"], csv
