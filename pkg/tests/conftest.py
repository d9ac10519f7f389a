import json
import pathlib

import pytest

from circroots.montecarlo import run_experiment

REPO_ROOT = pathlib.Path(__file__).resolve().parent.parent
THRESHOLDS_PATH = REPO_ROOT / "thresholds.json"


@pytest.fixture(scope="session")
def thresholds():
    if not THRESHOLDS_PATH.exists():
        pytest.fail("thresholds.json missing; run `circroots pilot --suite all` "
                    "from the repo root and commit the output")
    with open(THRESHOLDS_PATH, encoding="utf-8") as fh:
        return json.load(fh)


@pytest.fixture(scope="session")
def cached_run():
    """Session cache so determinism tests reuse the heavy experiment runs."""
    cache = {}

    def run(cfg):
        if cfg not in cache:
            cache[cfg] = run_experiment(cfg)
        return cache[cfg]

    return run
