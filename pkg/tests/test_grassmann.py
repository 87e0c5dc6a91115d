#!/usr/bin/env python3

"""Tests for Grassmannian seeds"""

import itertools

import pytest
from indcluster import Partition, rect_seed, q_infty_window, quad_quiver, r_map, square_move, plucker_clusters, \
    seeds_similar
from indcluster.grassmann import KP_SEQUENCE, PlueckerNamer, label_set, r_map_indices
from indcluster.partition import weakly_separated
from indcluster.exceptions import NotQuadrilateralError, BoxShrinksError


#
# Rectangle seeds
#

def test_rect_seed_layout(rect33_seed):
    assert len(rect33_seed) == 10
    assert sorted(rect33_seed.var(i).name for i in rect33_seed.ex) == ['d[1,1]', 'd[1]', 'd[2,2]', 'd[2]']
    assert rect33_seed.var('d[1]').label == Partition((1,))
    assert rect33_seed.validate()


def test_rect_seed_arrows(rect22_seed):
    assert rect22_seed.entry('d[1]', 'd[]') == -1
    assert rect22_seed.entry('d[1]', 'd[2]') == 1
    assert rect22_seed.entry('d[1]', 'd[1,1]') == 1
    assert rect22_seed.entry('d[1]', 'd[2,2]') == -1


def test_rect_seed_invalid():
    with pytest.raises(ValueError):
        rect_seed(0, 2)


def test_q_infty_window(window22_seed):
    locked = sorted(window22_seed.var(i).name for i in window22_seed.locked)

    assert locked == ['d[1,1]', 'd[2,2]', 'd[2]']
    assert not window22_seed.is_exchangeable('d[]')
    assert window22_seed.is_exchangeable('d[2,2]')

    with pytest.raises(ValueError):
        q_infty_window(0, 1)


#
# Square moves
#

def test_square_move(rect22_seed, rect33_seed):
    assert square_move(rect22_seed, 'd[1]') == Partition((2, 1))
    assert square_move(rect33_seed, 'd[2]') == Partition((3, 2))


def test_square_move_not_quadrilateral(rect22_seed, rect33_seed):
    with pytest.raises(NotQuadrilateralError):
        square_move(rect33_seed, 'd[2,2]')

    with pytest.raises(NotQuadrilateralError):
        square_move(rect22_seed, 'd[]')


def test_namer(rect22_seed, rect33_seed):
    namer = PlueckerNamer()

    assert namer(rect22_seed, rect22_seed.resolve('d[1]')) == ('d[2,1]', Partition((2, 1)))
    assert namer(rect33_seed, rect33_seed.resolve('d[2,2]')) is None
    assert namer == PlueckerNamer()


def test_mutation_follows_square_move(rect22_seed):
    mutated = rect22_seed.mutate('d[1]')

    assert mutated.var('d[2,1]').label == Partition((2, 1))
    assert label_set(mutated) == label_set(rect22_seed) - {Partition((1,))} | {Partition((2, 1))}


#
# Quadrilateral quivers
#

def test_quad_quiver_2():
    seed = quad_quiver(2)

    assert [v.label for v in seed.vars] == [Partition(), Partition((2,)), Partition((1, 1)), Partition((2, 1)),
                                            Partition((2, 2))]
    assert [seed.var(i).name for i in seed.ex] == ['d[2,1]']
    assert seed.entry('d[2,1]', 'd[2]') == -1
    assert seed.entry('d[2,1]', 'd[1,1]') == -1
    assert seed.entry('d[2,1]', 'd[2,2]') == 1
    assert seed.entry('d[2,1]', 'd[]') == 1


def test_quad_quiver_4():
    seed = quad_quiver(4)

    assert len(seed) == 17
    assert len(seed.ex) == 9
    assert all(len(seed.neighbours(i)) == 4 for i in seed.ex)
    assert seed.validate()


@pytest.mark.parametrize('size', [4, 5, 6])
def test_kp_sequence_reaches_quad_quiver(size):
    quad = quad_quiver(4)
    seed = q_infty_window(size, size).mutate_seq(KP_SEQUENCE)
    labels = [v.label for v in quad.vars]
    sub = seed.restrict(labels, ex=[v.label for v in quad.vars if v.id in quad.ex])

    similarity = seeds_similar(sub, quad, {name: name for name in quad.names})

    assert similarity is not None
    assert similarity.strong
    assert similarity.positive
    assert all(len(sub.neighbours(i)) == 4 for i in sub.ex)


def test_quad_quiver_invalid():
    with pytest.raises(ValueError):
        quad_quiver(1)


#
# r-maps
#

def test_r_map():
    spec = r_map(2, 2, 3, 3)

    assert spec('d[2,2]') == 'd[2,2]'
    assert sorted(spec.image) == sorted(['d[]', 'd[1]', 'd[2]', 'd[1,1]', 'd[2,2]'])

    with pytest.raises(BoxShrinksError):
        r_map(3, 3, 2, 3)


def test_r_map_indices():
    assert r_map_indices((0, 1), 2, 3) == (-3, 0, 1)
    assert r_map_indices((0, 1), 2, 2) == (0, 1)

    with pytest.raises(BoxShrinksError):
        r_map_indices((0, 1, 2), 3, 2)

    with pytest.raises(ValueError):
        r_map_indices((0,), 2, 3)


#
# Plücker clusters
#

def test_plucker_clusters_gr24(rect22_seed):
    assert len(plucker_clusters(rect22_seed, 0)) == 1
    assert len(plucker_clusters(rect22_seed, 1)) == 2
    assert len(plucker_clusters(rect22_seed, 2)) == 2


def test_plucker_clusters_gr25():
    found = plucker_clusters(rect_seed(2, 3), 2, jobs=2)

    assert len(found) == 5
    assert len({label_set(seed) for seed in found}) == 5


def test_plucker_clusters_weakly_separated():
    found = plucker_clusters(rect_seed(3, 4), 6)

    assert len(found) == 259
    for seed in found:
        labels = [v.label for v in seed.vars]
        assert all(weakly_separated(a, b) for a, b in itertools.combinations(labels, 2)), label_set(seed)


def test_plucker_clusters_negative_depth(rect22_seed):
    with pytest.raises(ValueError):
        plucker_clusters(rect22_seed, -1)
