"""Bundled example automata and graphs.

Set ``DAGAUTOMATA_FIXTURES`` to a directory to load fixtures from there instead.
"""

from __future__ import annotations

import os
from pathlib import Path

from .serialize import automaton_from_json, dag_from_json

ENV_VAR = "DAGAUTOMATA_FIXTURES"


def fixture_dir() -> Path:
    override = os.environ.get(ENV_VAR)
    if override:
        return Path(override)
    return Path(__file__).with_name("data")


def fixture_path(name: str) -> Path:
    if not name.endswith(".json"):
        name += ".json"
    return fixture_dir() / name


def load_automaton(name: str):
    return automaton_from_json(fixture_path(name))


def load_dag(name: str):
    return dag_from_json(fixture_path(name))
