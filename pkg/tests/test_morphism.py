#!/usr/bin/env python3

"""Tests for MeltingMorphismSpec object"""

import pytest
from indcluster import MeltingMorphismSpec, check_melting_morphism, rect_seed, r_map


def test_identity(rect22_seed):
    report = check_melting_morphism(MeltingMorphismSpec.identity(rect22_seed), rect22_seed, rect22_seed, depth=3)

    assert report
    assert report.failures == []
    assert report.checked_sequences == 2


@pytest.mark.parametrize('src, dst', [((2, 2), (3, 3)), ((2, 3), (3, 4))])
def test_r_maps(src, dst):
    f = r_map(*src, *dst)
    report = check_melting_morphism(f, rect_seed(*src), rect_seed(*dst), depth=3)

    assert report
    assert report.failing_sequence is None
    assert report.checked_sequences > 1


def test_exchangeable_to_zero(rect22_seed):
    image = MeltingMorphismSpec.identity(rect22_seed).to_json()
    image['d[1]'] = 0
    report = check_melting_morphism(MeltingMorphismSpec(image), rect22_seed, rect22_seed)

    assert not report
    assert any(failure.startswith('iMCM') for failure in report.failures)


def test_neighbour_specialisation(rect22_seed):
    image = MeltingMorphismSpec.identity(rect22_seed).to_json()
    image['d[]'] = 2
    report = check_melting_morphism(MeltingMorphismSpec(image), rect22_seed, rect22_seed)

    assert not report
    assert any(failure.startswith('specialisation') for failure in report.failures)
    assert report.failing_sequence == ('d[1]',)


def test_missing_image(rect22_seed):
    image = MeltingMorphismSpec.identity(rect22_seed).to_json()
    del image['d[]']
    report = check_melting_morphism(MeltingMorphismSpec(image), rect22_seed, rect22_seed)

    assert not report
    assert report.failures == ['CM1: d[] has no image']
    assert report.checked_sequences == 0


def test_exchangeable_to_frozen(rect22_seed):
    image = MeltingMorphismSpec.identity(rect22_seed).to_json()
    image['d[1]'] = 'd[2]'
    report = check_melting_morphism(MeltingMorphismSpec(image), rect22_seed, rect22_seed)

    assert any(failure.startswith('MCM') for failure in report.failures)


def test_negative_depth(rect22_seed):
    with pytest.raises(ValueError):
        check_melting_morphism(MeltingMorphismSpec.identity(rect22_seed), rect22_seed, rect22_seed, depth=-1)
