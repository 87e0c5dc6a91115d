import json
import random

import pytest
from indcluster import LaurentPoly, VariableRegistry, rect_seed, q_infty_window, Seed
from indcluster.systems import GrassmannChain, MergingChain, components_example_seed

RNG_SEED = 20240601

KP_RELATION_TEXT = 'd[2,2]*d[] - d[2,1]*d[1] + d[2]*d[1,1] = 0'

POINT_22 = {
    "stratum": [1],
    "band": 2,
    "coeffs": [[1, 1, "3"], [2, 1, "-1/2"], [0, 2, "2"], [2, 2, "5"]]
}


@pytest.fixture
def registry_instance():
    yield VariableRegistry()


@pytest.fixture
def xyz(registry_instance):
    yield tuple(LaurentPoly.symbol(name, registry_instance) for name in ('x', 'y', 'z'))


@pytest.fixture
def rng():
    yield random.Random(RNG_SEED)


@pytest.fixture
def rect22_seed():
    yield rect_seed(2, 2)


@pytest.fixture
def rect33_seed():
    yield rect_seed(3, 3)


@pytest.fixture
def window22_seed():
    yield q_infty_window(2, 2)


@pytest.fixture
def a2_seed(registry_instance):
    # x1 -> x2 -> f with x1, x2 exchangeable
    yield Seed.from_arrows(['x1', 'x2', 'f'], ['x1', 'x2'], [('x1', 'x2', 1), ('x2', 'f', 1)],
                           registry=registry_instance)


@pytest.fixture
def components_seed():
    yield components_example_seed()


@pytest.fixture
def grass_chain():
    yield GrassmannChain()


@pytest.fixture
def merging_chain():
    yield MergingChain()


@pytest.fixture
def seed_file(tmp_path, rect22_seed):
    path = tmp_path / 'rect22.json'
    path.write_text(json.dumps(rect22_seed.to_json()), encoding='utf-8')
    yield str(path)


@pytest.fixture
def point_file(tmp_path):
    path = tmp_path / 'point.json'
    path.write_text(json.dumps(POINT_22), encoding='utf-8')
    yield str(path)
