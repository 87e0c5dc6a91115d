#!/usr/bin/env python3

"""Tests for the command line front end"""

import io
import os
import json
import pytest
from indcluster import Partition, rect_seed, r_map, laurent_expansion
from indcluster.cli import main, describe, Explorer, EXIT_OK, EXIT_FAILED, EXIT_USAGE
from indcluster.systems import load_seed
from indcluster.tau import Tau, point_from_matrix

from .fixtures import KP_RELATION_TEXT


def _write_json(path, data):
    path.write_text(json.dumps(data), encoding='utf-8')
    return str(path)


#
# Global options
#

def test_version(capsys):
    assert main(['--version']) == EXIT_OK
    assert '0.1.0' in capsys.readouterr().out


def test_missing_verb():
    assert main([]) == EXIT_USAGE


def test_bad_jobs_env(mocker, capsys):
    mocker.patch.dict(os.environ, {'INDCLUSTER_JOBS': 'many'})

    assert main(['check', 'weak-sep', '(2)', '(1,1)']) == EXIT_USAGE
    assert 'indcluster: error:' in capsys.readouterr().err


#
# Seeds and mutation
#

def test_describe(rect22_seed):
    lines = describe(rect22_seed).splitlines()

    assert lines[0] == 'exchangeable: d[1]'
    assert lines[1] == 'frozen: d[] d[2] d[1,1] d[2,2]'
    assert set(lines[2:]) == {'d[] -> d[1]', 'd[1] -> d[2]', 'd[1] -> d[1,1]', 'd[2,2] -> d[1]'}


def test_seed_grass(capsys):
    assert main(['seed', 'grass', '2', '2']) == EXIT_OK
    assert capsys.readouterr().out.startswith('exchangeable: d[1]\n')


def test_seed_grass_mutate(capsys):
    assert main(['seed', 'grass', '2', '2', '--mutate', 'd[1]', '--show-relations']) == EXIT_OK

    out = capsys.readouterr().out.splitlines()
    assert out[0] == 'd[2,1]*d[1] = d[2]*d[1,1] + d[]*d[2,2]'
    assert out[1] == 'exchangeable: d[2,1]'


def test_seed_mutate_by_label(capsys):
    assert main(['seed', 'grass', '3', '3', '--mutate', '(2)', '--quiet', '--show-relations']) == EXIT_OK
    assert capsys.readouterr().out.startswith('d[3,2]*d[2] = ')


def test_seed_wrong_arity(capsys):
    assert main(['seed', 'grass', '2']) == EXIT_USAGE
    assert 'indcluster: error:' in capsys.readouterr().err


def test_seed_json_and_dot(tmp_path, rect22_seed):
    out, dot = tmp_path / 'seed.json', tmp_path / 'seed.dot'

    assert main(['seed', 'grass', '2', '2', '--json', str(out), '--dot', str(dot), '--quiet']) == EXIT_OK
    assert load_seed(str(out)) == rect22_seed
    assert dot.read_text(encoding='utf-8').startswith('digraph "seed" {')


def test_seed_window_and_quad(capsys):
    assert main(['seed', 'qinf-window', '2', '2']) == EXIT_OK
    assert 'locked: d[2] d[1,1] d[2,2]' in capsys.readouterr().out

    assert main(['seed', 'quad', '2']) == EXIT_OK
    assert capsys.readouterr().out.startswith('exchangeable: d[2,1]\n')


def test_seed_validate(seed_file, tmp_path, capsys):
    assert main(['seed', 'validate', seed_file]) == EXIT_OK
    assert capsys.readouterr().out == 'valid\n'

    broken = _write_json(tmp_path / 'broken.json', {
        'vars': [{'name': 'a', 'frozen': False}, {'name': 'b', 'frozen': False}],
        'ex': ['a', 'b'],
        'B': [['a', 'b', 1], ['b', 'a', 1]],
    })
    assert main(['seed', 'validate', broken]) == EXIT_FAILED
    assert 'invalid: ' in capsys.readouterr().out


def test_mutate_file(seed_file, capsys):
    assert main(['mutate', seed_file, '--seq', 'd[1]']) == EXIT_OK

    data = json.loads(capsys.readouterr().out)
    assert [v['name'] for v in data['vars']] == ['d[]', 'd[2,1]', 'd[2]', 'd[1,1]', 'd[2,2]']


def test_mutate_file_involution(seed_file, tmp_path, rect22_seed):
    out = tmp_path / 'back.json'

    assert main(['mutate', seed_file, '--seq', 'd[1]; d[2,1]', '--out', str(out)]) == EXIT_OK
    assert load_seed(str(out)).names == rect22_seed.names


def test_mutate_file_errors(seed_file, capsys):
    assert main(['mutate', seed_file, '--seq', 'd[]']) == EXIT_USAGE
    assert main(['mutate', seed_file, '--seq', 'nope']) == EXIT_USAGE
    assert main(['mutate', 'missing.json', '--seq', 'd[1]']) == EXIT_USAGE


def test_dot(seed_file, tmp_path):
    out = tmp_path / 'rect.dot'

    assert main(['dot', seed_file, str(out)]) == EXIT_OK
    assert '"d[]" [shape=box];' in out.read_text(encoding='utf-8')


#
# Checks
#

def test_weak_separation(capsys):
    assert main(['check', 'weak-sep', '(3,1,1)', '(1)']) == EXIT_FAILED
    assert 'NOT weakly separated' in capsys.readouterr().out

    assert main(['check', 'weak-sep', '(2)', '(1,1)']) == EXIT_OK
    assert capsys.readouterr().out == '(2) and (1,1) are weakly separated\n'


def test_check_morphism(seed_file, tmp_path, capsys):
    dst = _write_json(tmp_path / 'rect33.json', rect_seed(3, 3).to_json())
    good = _write_json(tmp_path / 'good.json', r_map(2, 2, 3, 3).to_json())
    bad = _write_json(tmp_path / 'bad.json', dict(r_map(2, 2, 3, 3).to_json(), **{'d[]': 2}))

    assert main(['check', 'morphism', seed_file, dst, good, '--depth', '2']) == EXIT_OK
    assert capsys.readouterr().out.startswith('PASS (')

    assert main(['check', 'morphism', seed_file, dst, bad]) == EXIT_FAILED
    assert 'FAIL specialisation:' in capsys.readouterr().out


def test_check_similar(seed_file, tmp_path, capsys):
    other = _write_json(tmp_path / 'rect33.json', rect_seed(3, 3).to_json())

    assert main(['check', 'similar', seed_file, seed_file]) == EXIT_OK
    out = capsys.readouterr().out.splitlines()
    assert out[0] in ('similar', 'strongly similar')
    assert out[-1].startswith('sign d[1]: ')

    assert main(['check', 'similar', seed_file, other]) == EXIT_FAILED
    assert capsys.readouterr().out == 'NOT similar\n'


def test_check_similar_bound(seed_file):
    assert main(['check', 'similar', seed_file, seed_file, '--similarity-bound', '3']) == EXIT_USAGE


#
# Relations and expansions
#

def test_relations_pluecker(capsys):
    assert main(['relations', 'pluecker', '2', '[-2]', '[-1,0,1]', '--verify', '2', '2']) == EXIT_OK
    assert capsys.readouterr().out.splitlines() == [KP_RELATION_TEXT, 'oracle on Gr(2, 4): PASS']


def test_relations_hook_and_diag(capsys):
    assert main(['relations', 'hook', '1', '1']) == EXIT_OK
    assert capsys.readouterr().out == KP_RELATION_TEXT + '\n'

    assert main(['relations', 'diag', '0', '--json']) == EXIT_OK
    assert json.loads(capsys.readouterr().out)[0] == {'coeff': 1, 'pair': ['(2,2)', '()']}


def test_relations_exact(capsys):
    assert main(['relations', 'diag', '1', '--verify', '2', '2', '--exact']) == EXIT_OK
    assert capsys.readouterr().out.endswith('PASS\n')


def test_relations_wrong_arity():
    assert main(['relations', 'hook', '1']) == EXIT_USAGE


def test_laurent(capsys):
    expected = laurent_expansion(Partition((2, 1)), 2, 2).to_fraction_text()

    assert main(['laurent', '(2,1)', '--box', '2', '2', '--verify-oracle']) == EXIT_OK
    assert capsys.readouterr().out.splitlines() == [expected, 'oracle: PASS (3 matrices)']


def test_laurent_outside_box():
    assert main(['laurent', '(3)', '--box', '2', '2']) == EXIT_USAGE


#
# Ind-seeds
#

def test_ind_window(tmp_path, capsys):
    certificates = tmp_path / 'certificates.json'

    assert main(['ind', 'window', '--system', 'merging-chain', '--classes', 'x3', 'y3', 'z3', '--bound', '6',
                 '--certificates', str(certificates)]) == EXIT_OK

    window = json.loads(capsys.readouterr().out)
    assert [v['name'] for v in window['vars']] == ['x3', 'y3', 'z3']
    assert sorted(window['locked']) == ['x3', 'y3']
    assert json.loads(certificates.read_text(encoding='utf-8'))['uniform_level'] == 5


def test_ind_window_by_example_name(capsys):
    assert main(['ind', 'window', '--system', 'example-2-5', '--classes', 'x3', 'y3', 'z3', '--bound', '6']) == EXIT_OK

    window = json.loads(capsys.readouterr().out)
    assert [v['name'] for v in window['vars']] == ['x3', 'y3', 'z3']
    assert sorted(window['locked']) == ['x3', 'y3']


def test_ind_window_unknown_system():
    assert main(['ind', 'window', '--system', 'nope', '--classes', 'x1']) == EXIT_USAGE


#
# Tau-functions
#

def test_tau_from_point_and_kp(point_file, tmp_path, capsys):
    out = tmp_path / 'tau.json'

    assert main(['tau', 'from-point', point_file, '--size', '4', '--out', str(out)]) == EXIT_OK
    assert json.loads(out.read_text(encoding='utf-8'))['(1)'] == '1/1'

    assert main(['tau', 'kp', str(out)]) == EXIT_OK
    assert capsys.readouterr().out == 'KP residual: 0\n'


def test_tau_from_point_needs_size(point_file):
    assert main(['tau', 'from-point', point_file]) == EXIT_USAGE


def test_tau_check(tmp_path, capsys):
    good = _write_json(tmp_path / 'good.json', Tau.schur(Partition((2, 1))).to_json())
    bad = _write_json(tmp_path / 'bad.json', {'()': '1', '(1)': '1', '(2)': '1', '(1,1)': '1', '(2,1)': '1',
                                              '(2,2)': '1'})

    assert main(['tau', 'check', good, '--m-bound', '2', '--index-bound', '3']) == EXIT_OK
    assert capsys.readouterr().out.startswith('PASS (')

    assert main(['tau', 'check', bad, '--m-bound', '2', '--index-bound', '2']) == EXIT_FAILED
    assert capsys.readouterr().out.startswith('FAIL ')

    assert main(['tau', 'kp', bad]) == EXIT_FAILED
    assert capsys.readouterr().out == 'KP residual: 1\n'


def test_giambelli(tmp_path, capsys):
    point = _write_json(tmp_path / 'point.json', point_from_matrix(2, 2, [[1, 0, 3, 5], [0, 1, 7, 11]]).to_json())

    assert main(['giambelli', point, '(2,2)']) == EXIT_OK
    assert capsys.readouterr().out == '(2,2): -2 vs -2, residual 0\n'


def test_giambelli_empty_coordinate(point_file):
    assert main(['giambelli', point_file, '(1)']) == EXIT_USAGE


def test_positivity(tmp_path, capsys):
    data = _write_json(tmp_path / 'values.json', {
        'box': [2, 2],
        'values': {'()': 1, '(1)': 1, '(2)': 1, '(1,1)': 1, '(2,2)': 1},
        'labels': ['(2,1)'],
    })

    assert main(['positivity', data]) == EXIT_OK
    assert capsys.readouterr().out == '(2,1): 2\n'


def test_positivity_non_positive(tmp_path):
    data = _write_json(tmp_path / 'values.json', {'box': [2, 2], 'values': {'()': 1, '(1)': '-1/2'}})

    assert main(['positivity', data]) == EXIT_USAGE


#
# Explorer
#

def test_explorer_session(rect22_seed):
    stdin = io.StringIO('mutate d[1]\nundo\nundo\nmutate d[]\nmutate nope\nfrobnicate\nquit\n')
    stdout = io.StringIO()
    explorer = Explorer(rect22_seed, stdin=stdin, stdout=stdout)
    explorer.cmdloop()

    out = stdout.getvalue()
    assert 'd[2,1]*d[1] = d[2]*d[1,1] + d[]*d[2,2]' in out
    assert 'Undone' in out
    assert 'Nothing to undo' in out
    assert 'Refused: ' in out
    assert "Unknown variable 'nope'" in out
    assert "Unknown command 'frobnicate'" in out
    assert explorer.seed == rect22_seed


def test_explorer_mutate_by_label(rect22_seed):
    stdout = io.StringIO()
    explorer = Explorer(rect22_seed, stdin=io.StringIO('mutate (1)\nshow\n'), stdout=stdout)
    explorer.cmdloop()

    assert 'exchangeable: d[2,1]' in stdout.getvalue()
    assert len(explorer.undo_stack) == 1


def test_explorer_dot(rect22_seed, tmp_path):
    out = tmp_path / 'explorer.dot'
    explorer = Explorer(rect22_seed, stdin=io.StringIO(f'dot {out}\nlabels\n'), stdout=io.StringIO())
    explorer.cmdloop()

    assert out.read_text(encoding='utf-8').startswith('digraph')
    assert 'd[1]\t(1)\tex' in explorer.stdout.getvalue()
