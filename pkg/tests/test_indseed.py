#!/usr/bin/env python3

"""Tests for ind-seed windows"""

import pytest
from indcluster import ConstantSystem, DirectedSystem, stable_class, attained_entry, ind_seed_window, \
    verify_mutation_commutes, seeds_similar, q_infty_window
from indcluster.indseed import ClassStatus, EntryStatus, MutatedSystem, lift_steps
from indcluster.partition import rectangles
from indcluster.systems import GrassmannChain
from indcluster.exceptions import IndexOutOfRangeError, UnknownVariableError


#
# Directed systems
#

def test_directed_system_is_abstract():
    with pytest.raises(TypeError):
        DirectedSystem()


def test_levels(grass_chain, merging_chain):
    assert grass_chain.seed(2) is grass_chain.seed(2)
    assert merging_chain.morphism(3)('v1') == 'x3'

    with pytest.raises(IndexOutOfRangeError):
        grass_chain.seed(0)

    with pytest.raises(IndexOutOfRangeError):
        merging_chain.images_at(4, 3)


def test_images_at(merging_chain):
    images = merging_chain.images_at(2, 4)

    assert images['v1'] == 'x2'
    assert images['s'] == 1
    assert images["z'1"] == 'z1'
    assert images['y2'] == 'y2'


def test_mutated_system(a2_seed):
    system = MutatedSystem(ConstantSystem(a2_seed), 0, {n: [0] for n in range(4)})
    seed = system.seed(1)

    assert seed.names[0] != 'x1'
    assert system.morphism(1)(seed.names[0]) == system.seed(2).names[0]


#
# Stable classes
#

def test_stable_class_specialized(merging_chain):
    found = stable_class(merging_chain, 2, 's')

    assert found.status == ClassStatus.SPECIALIZED
    assert found.value == 1
    assert found.key is None


def test_stable_class_merged(merging_chain):
    found = stable_class(merging_chain, 2, 'v1', bound=4)

    assert found.status == ClassStatus.STABLE
    assert found.trace == ('v1', 'x2', 'x2')
    assert found.key == 'x2'


def test_stable_class_hint(grass_chain):
    found = stable_class(grass_chain, 2, 'd[1]', bound=4)

    assert found.trace == ('d[1]',) * 3


def test_stable_class_errors(merging_chain):
    with pytest.raises(IndexOutOfRangeError):
        stable_class(merging_chain, 1, 'x1')

    with pytest.raises(IndexOutOfRangeError):
        stable_class(merging_chain, 4, 'x1', bound=3)

    with pytest.raises(UnknownVariableError):
        stable_class(merging_chain, 2, 'nope')


#
# Attainment
#

def test_attained_entry(grass_chain):
    found = attained_entry(grass_chain, 'd[1]', 'd[2]')

    assert found.status == EntryStatus.ATTAINED
    assert found.value == 1
    assert found.attained_at == 2
    assert found.to_json()['status'] == 'attained'


def test_zero_entry(grass_chain):
    found = attained_entry(grass_chain, 'd[1]', 'd[3]')

    assert found.status == EntryStatus.ZERO
    assert found.value == 0


#
# Windows
#

def test_constant_window(a2_seed):
    window = ind_seed_window(ConstantSystem(a2_seed), ['x1', 'x2', 'f'])

    assert window.uniform_level == 0
    assert window.sign_choices == {'x1': ('x1', 'x2')}
    assert not window.seed.locked
    assert seeds_similar(window.seed, a2_seed, {'x1': 'x1', 'x2': 'x2', 'f': 'f'}).strong


def test_merging_window(merging_chain):
    window = ind_seed_window(merging_chain, ['x3', 'y3', 'z3'], bound=6)

    assert window.seed.entry('x3', 'z3') == 1
    assert window.seed.entry('y3', 'z3') == 1
    assert window.certificates[('x3', 'z3')].attained_at == 4
    assert window.certificates[('y3', 'z3')].attained_at == 4
    assert window.column_uniform_levels['z3'] == 5
    assert window.uniform_level == 5
    assert sorted(window.seed.var(i).name for i in window.seed.locked) == ['x3', 'y3']


def test_merging_window_multiplicities(merging_chain):
    window = ind_seed_window(merging_chain, ['x1', 'x2', 'x3'], bound=6, jobs=2)

    assert window.seed.entry('x1', 'x2') == 1
    assert window.seed.entry('x2', 'x3') == 2
    assert window.seed.entry('x2', 'x1') == -1
    assert window.seed.entry('x3', 'x2') == -2


def test_window_certificates_json(merging_chain):
    window = ind_seed_window(merging_chain, ['x3', 'y3', 'z3'], bound=6)
    data = window.certificates_json()

    assert data['system'] == 'merging-chain'
    assert data['bound'] == 6
    assert data['uniform_level'] == 5
    assert {(e['row'], e['col']) for e in data['entries']} == {('x3', 'z3'), ('y3', 'z3')}
    assert window.to_json() == window.seed.to_json()


def test_grass_chain_window(grass_chain):
    names = [lab.name() for lab in rectangles(3, 3)]
    window = ind_seed_window(grass_chain, names)
    target = q_infty_window(3, 3)

    similarity = seeds_similar(window.seed, target, {name: name for name in names})

    assert similarity is not None
    assert similarity.strong
    assert window.seed.locked == target.locked


def test_window_unknown_class(merging_chain):
    with pytest.raises(UnknownVariableError):
        ind_seed_window(merging_chain, ['x3', 'nope'], bound=6)


#
# Mutation
#

def test_lift_steps(grass_chain):
    names = [lab.name() for lab in rectangles(3, 3)]
    window = ind_seed_window(grass_chain, names)
    start, slots = lift_steps(grass_chain, window, ['d[1]'], window.bound)

    assert start == 2
    assert slots[start] == [grass_chain.seed(start).slot('d[1]')]


def _free_steps(seed):
    return sorted(seed.var(i).name for i in seed.ex - seed.locked)


@pytest.fixture(scope='module')
def grass_window():
    system = GrassmannChain()
    yield system, ind_seed_window(system, [lab.name() for lab in rectangles(3, 3)])


def test_mutation_commutes_trivially(grass_window):
    system, window = grass_window
    report = verify_mutation_commutes(system, window, [])

    assert report
    assert report.similarity.strong


@pytest.mark.parametrize('first', ['d[1]', 'd[1,1]', 'd[2]', 'd[2,2]'])
def test_mutation_commutes(grass_window, first):
    system, window = grass_window
    assert first in _free_steps(window.seed)

    sequences = [[first]] + [[first, second] for second in _free_steps(window.seed.mutate(first))]
    assert len(sequences) == 5

    for steps in sequences:
        report = verify_mutation_commutes(system, window, steps)

        assert report, (steps, report.message)
        assert report.similarity.strong


def test_mutation_at_window_boundary(grass_chain):
    names = [lab.name() for lab in rectangles(3, 3)]
    window = ind_seed_window(grass_chain, names)
    report = verify_mutation_commutes(grass_chain, window, ['d[3,3,3]'])

    assert not report
    assert report.message.startswith('Direct mutation failed')
