import functools

import pytest

from dighydro import load_config, run_simulation, scenario_path


@functools.lru_cache(maxsize=None)
def cached_scenario_run(name: str, overrides: tuple = ()):
    """Run a bundled scenario once per test session; overrides are
    ("section.key", "value") pairs."""
    cfg = load_config(scenario_path(name), dict(overrides))
    return cfg, run_simulation(cfg)


@pytest.fixture
def scenario_run():
    return cached_scenario_run
