"""Shared fixtures: a persistent repo-local expansion cache and warm generators."""
from pathlib import Path

import pytest

from e8jacobi import config
from e8jacobi.genring import sakai_generators
from e8jacobi.orbitalg import load_tables, save_tables

REPO_CACHE = Path(__file__).resolve().parent.parent / ".cache"


@pytest.fixture(scope="session", autouse=True)
def engine_cache():
    """Point the engine at the repo-local cache so repeat runs stay fast."""
    config.configure(cache_dir=str(REPO_CACHE))
    load_tables()
    yield
    save_tables()


@pytest.fixture(scope="session")
def gens6(engine_cache):
    """All named generator expansions at the default truncation."""
    return sakai_generators(6)
