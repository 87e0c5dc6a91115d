#!/usr/bin/env python3

"""Tests for Settings object"""

import os
import pytest
from indcluster import Settings


def test_defaults():
    settings = Settings()

    assert settings.jobs == 1
    assert settings.morphism_depth == 3
    assert settings.similarity_bound == 12
    assert settings.probe_bound is None


def test_from_env():
    assert Settings.from_env({'INDCLUSTER_JOBS': '4'}).jobs == 4
    assert Settings.from_env({}).jobs == 1
    assert Settings.from_env({'INDCLUSTER_JOBS': ''}).jobs == 1


def test_from_process_env(mocker):
    mocker.patch.dict(os.environ, {'INDCLUSTER_JOBS': '3'})

    assert Settings.from_env().jobs == 3


def test_from_env_invalid():
    with pytest.raises(ValueError):
        Settings.from_env({'INDCLUSTER_JOBS': 'many'})

    with pytest.raises(ValueError):
        Settings.from_env({'INDCLUSTER_JOBS': '0'})


def test_invalid_values():
    with pytest.raises(ValueError):
        Settings(morphism_depth=-1)

    with pytest.raises(ValueError):
        Settings(oracle_trials=0)

    with pytest.raises(ValueError):
        Settings(similarity_bound=0)


def test_updated():
    settings = Settings(jobs=2)
    changed = settings.updated(rng_seed=7, jobs=None)

    assert changed.rng_seed == 7
    assert changed.jobs == 2
    assert settings.rng_seed == 0
