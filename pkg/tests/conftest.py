import pytest
from .fixtures import registry_instance, xyz, rng, rect22_seed, rect33_seed, window22_seed, a2_seed, \
    components_seed, grass_chain, merging_chain, seed_file, point_file
