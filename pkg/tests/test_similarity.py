#!/usr/bin/env python3

"""Tests for Similarity object"""

import pytest
from indcluster import Seed, seeds_similar, rect_seed
from indcluster.exceptions import SearchTooLargeError


@pytest.fixture
def reversed_a2_seed(registry_instance):
    yield Seed.from_arrows(['y1', 'y2', 'g'], ['y1', 'y2'], [('y2', 'y1', 1), ('g', 'y2', 1)],
                           registry=registry_instance)


def test_similar_to_itself(rect22_seed):
    found = seeds_similar(rect22_seed, rect22_seed, {n: n for n in rect22_seed.names})

    assert found is not None
    assert found.strong
    assert found.positive
    assert found.signs == {'d[1]': 1}


def test_opposite_quiver_with_bijection(a2_seed, reversed_a2_seed):
    found = seeds_similar(a2_seed, reversed_a2_seed, {'x1': 'y1', 'x2': 'y2', 'f': 'g'})

    assert found is not None
    assert found.signs == {'x1': -1}
    assert not found.strong
    assert not found.positive


def test_identity_with_flipped_signs_is_strong(a2_seed, registry_instance):
    flipped = Seed.from_arrows(['x1', 'x2', 'f'], ['x1', 'x2'], [('x2', 'x1', 1), ('f', 'x2', 1)],
                               registry=registry_instance)
    found = seeds_similar(a2_seed, flipped, {'x1': 'x1', 'x2': 'x2', 'f': 'f'})

    assert found is not None
    assert found.signs == {'x1': -1}
    assert found.strong
    assert not found.positive


def test_opposite_quiver_search(a2_seed, reversed_a2_seed):
    found = seeds_similar(a2_seed, reversed_a2_seed)

    assert found is not None
    assert found.mapping == {'x1': 'y1', 'x2': 'y2', 'f': 'g'}


def test_not_a_bijection(a2_seed, reversed_a2_seed):
    assert seeds_similar(a2_seed, reversed_a2_seed, {'x1': 'y1', 'x2': 'y1', 'f': 'g'}) is None


def test_exchangeability_must_match(a2_seed, registry_instance):
    other = Seed.from_arrows(['y1', 'y2', 'g'], ['y1', 'g'], [('y1', 'y2', 1), ('y2', 'g', 1)],
                             registry=registry_instance)

    assert seeds_similar(a2_seed, other, {'x1': 'y1', 'x2': 'y2', 'f': 'g'}) is None


def test_multiplicity_mismatch(a2_seed, registry_instance):
    other = Seed.from_arrows(['y1', 'y2', 'g'], ['y1', 'y2'], [('y1', 'y2', 2), ('y2', 'g', 1)],
                             registry=registry_instance)

    assert seeds_similar(a2_seed, other) is None
    assert seeds_similar(a2_seed, other, {'x1': 'y1', 'x2': 'y2', 'f': 'g'}) is None


def test_sizes_differ(rect22_seed, rect33_seed):
    assert seeds_similar(rect22_seed, rect33_seed) is None


def test_search_bound(rect33_seed):
    with pytest.raises(SearchTooLargeError):
        seeds_similar(rect33_seed, rect_seed(3, 3), bound=3)


def test_sign_per_component(components_seed):
    flipped = components_seed.to_json()
    first = ('x1', 'x2', 'x3', 'x4')
    flipped['B'] = [[r, c, -b if r in first else b] for r, c, b in flipped['B']]
    other = Seed.from_json(flipped)

    found = seeds_similar(components_seed, other, {n: n for n in components_seed.names})

    assert found is not None
    assert found.signs == {'x1': -1, 'x5': 1, 'x7': 1, 'x10': 1}
    assert found.strong
