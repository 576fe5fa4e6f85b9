"""Shared fixtures: the four showcase propagations, run once per session.

Each fixture returns (trajectory, wall_seconds, settings) so the acceptance
tests can check both the physics and the runtime budget without repeating
the propagation.
"""

import time

import pytest

from svealab.cli import PRESETS, load_settings, _get, _grid_from, _initial_from, _model_from
from svealab.solver import RunConfig, propagate


def run_preset(name):
    settings = load_settings(name, None)
    grid = _grid_from(settings)
    initial = _initial_from(settings, grid)
    cfg = RunConfig(
        model=_model_from(settings),
        dt=_get(settings, "run", "dt", float, 1e-3),
        t_final=_get(settings, "run", "t_final", float, 30.0),
        snapshot_stride=_get(settings, "run", "snapshot_stride", int, 100),
    )
    t0 = time.monotonic()
    traj = propagate(initial, cfg)
    return traj, time.monotonic() - t0, settings


@pytest.fixture(scope="session")
def case1_run():
    return run_preset("case1")


@pytest.fixture(scope="session")
def case2_run():
    return run_preset("case2")


@pytest.fixture(scope="session")
def case3_run():
    return run_preset("case3")


@pytest.fixture(scope="session")
def case4_run():
    return run_preset("case4")
