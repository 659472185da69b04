import json

import pytest

from conftest import fixture_path
from uncoverings.config import Config
from uncoverings.core import run
from uncoverings.graph import build_circulant
from uncoverings.graphreader import graph_to_graph6, load_graph


def read_json(path):
    with open(path) as fh:
        return json.load(fh)


def test_construct_wheel(tmp_path):
    out = tmp_path / 'w7.json'
    assert run(['construct', '--family', 'wheel', '-n', '7', '--out', str(out)]) == 0
    body = read_json(out)
    assert len(body['trees']) == 6 and body['t'] == 2


@pytest.mark.parametrize('argv', [
    ['--family', 'complete', '-n', '5'],
    ['--family', 'complete', '-n', '6'],
    ['--family', 'bipartite', '-n', '4', '-m', '3'],
    ['--family', 'wheel', '-n', '5'],
    ['--family', 'circulant', '-n', '7', '--steps', '1', '2'],
    ['--family', 'circulant', '-n', '9', '--steps', '1', '2', '4'],
])
def test_construct_then_verify_round_trip(tmp_path, argv):
    out = tmp_path / 'ubb.json'
    assert run(['construct'] + argv + ['--out', str(out)]) == 0
    verdict = tmp_path / 'verdict.json'
    assert run(['verify', '--ubb', str(out), '--out', str(verdict)]) == 0
    assert read_json(verdict)['status'] == 'valid'


def test_verify_fixture_against_graph6(tmp_path):
    verdict = tmp_path / 'verdict.json'
    code = run(['verify', '--graph', fixture_path('c7.g6'), '--ubb', fixture_path('c7-ubb.json'),
                '--mode', 'exhaustive', '--out', str(verdict)])
    assert code == 0
    assert read_json(verdict) == {'status': 'valid', 'witness': None, 'subsets_checked': 364}


def test_verify_invalid_ubb_exits_1(tmp_path):
    body = read_json(fixture_path('c7-ubb.json'))
    body['trees'] = body['trees'][1:]
    ubb = tmp_path / 'broken.json'
    ubb.write_text(json.dumps(body))
    verdict = tmp_path / 'verdict.json'
    assert run(['verify', '--ubb', str(ubb), '--out', str(verdict)]) == 1
    result = read_json(verdict)
    assert result['status'] == 'invalid' and len(result['witness']) == 3


def test_verify_minimal_and_covering(tmp_path):
    verdict = tmp_path / 'verdict.json'
    assert run(['verify', '--ubb', fixture_path('w7-ubb.json'), '--minimal', '--covering',
                '--out', str(verdict)]) == 0
    body = read_json(verdict)
    assert body['minimality']['minimal'] is True
    assert body['covering_by_bases'] is True


def test_verify_sampled(tmp_path):
    verdict = tmp_path / 'verdict.json'
    assert run(['verify', '--ubb', fixture_path('c7-ubb.json'), '--samples', '500', '--seed', '4',
                '--out', str(verdict)]) == 0
    assert read_json(verdict)['status'] == 'sampled-pass'


def test_verify_precondition_violation(tmp_path):
    body = read_json(fixture_path('w7-ubb.json'))
    body['t'] = 3
    ubb = tmp_path / 'too-big-t.json'
    ubb.write_text(json.dumps(body))
    verdict = tmp_path / 'verdict.json'
    assert run(['verify', '--ubb', str(ubb), '--out', str(verdict)]) == 1
    result = read_json(verdict)
    assert result['status'] == 'precondition-violated'
    assert result['witness'] is None and result['subsets_checked'] == 0
    assert 'lambda=3' in result['reason']


def test_verify_resource_ceiling(tmp_path, monkeypatch):
    monkeypatch.setattr(Config, 'SUBSET_CEILING', 100)
    assert run(['verify', '--ubb', fixture_path('c7-ubb.json')]) == 3


def test_bound(capsys):
    assert run(['bound', '-n', '20', '-k', '7', '-t', '4']) == 0
    assert capsys.readouterr().out.strip() == '11'
    assert run(['bound', '-n', '5', '-k', '5', '-t', '1']) == 2


def test_mincut_with_oracle(tmp_path):
    out = tmp_path / 'cut.json'
    assert run(['mincut', '--graph', fixture_path('c7.g6'), '--oracle', '--out', str(out)]) == 0
    body = read_json(out)
    assert body['lambda'] == body['oracle'] == 4
    assert len(body['cut']) == 4


def test_search_w4(tmp_path):
    g6 = tmp_path / 'w4.g6'
    # hub 4 joined to the 4-cycle 0-1-2-3
    g6.write_text('Dl{\n')
    out = tmp_path / 'w4-ubb.json'
    assert run(['search', '--graph', str(g6), '--out', str(out)]) == 0
    body = read_json(out)
    assert body['search'] == {'size': 6, 'optimal': True, 'nodes': body['search']['nodes']}
    assert len(body['trees']) == 6


def test_scan_catalog(tmp_path):
    out = tmp_path / 'scan.csv'
    dumps = tmp_path / 'ubbs'
    assert run(['scan', '--graphs', fixture_path('connected-upto5.g6'), '--exact-budget', '0',
                '--out', str(out), '--dump-dir', str(dumps)]) == 0
    lines = out.read_text().splitlines()
    assert len(lines) == 32
    assert lines[0].startswith('graph_id,n,edges,lam,t')
    assert (dumps / '10.json').exists()


def test_simulate_is_byte_identical(tmp_path):
    a, b = tmp_path / 'a.json', tmp_path / 'b.json'
    argv = ['simulate', '--ubb', fixture_path('w7-ubb.json'), '--trials', '300',
            '--failure-size', '2', '--seed', '42', '--records']
    assert run(argv + ['--out', str(a)]) == 0
    assert run(argv + ['--out', str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert read_json(a)['success_rate'] == 1.0


def test_malformed_graph6_exits_2(tmp_path, caplog):
    g6 = tmp_path / 'bad.g6'
    g6.write_text('C~\nC\x7f\x7f\n')
    assert run(['scan', '--graphs', str(g6)]) == 2
    assert 'line 2' in caplog.text


@pytest.mark.parametrize('field, value', [('t', 'two'), ('trees', [[-13, 2, 3, 4, 5, 6]])])
def test_malformed_ubb_json_exits_2(tmp_path, field, value):
    body = read_json(fixture_path('c7-ubb.json'))
    if field == 'trees':
        value = value + body['trees'][1:]
    body[field] = value
    ubb = tmp_path / 'broken.json'
    ubb.write_text(json.dumps(body))
    assert run(['verify', '--ubb', str(ubb)]) == 2


def test_usage_errors():
    assert run([]) == 2
    assert run(['construct', '--family', 'petersen', '-n', '10']) == 2
    assert run(['verify', '--ubb', '/nonexistent/ubb.json']) == 2
    assert run(['construct', '--family', 'complete', '-n', '2']) == 2


def test_construct_writes_the_decomposition(tmp_path):
    out, dec = tmp_path / 'k6.json', tmp_path / 'k6-factors.json'
    assert run(['construct', '--family', 'complete', '-n', '6', '--out', str(out),
                '--decomposition', str(dec)]) == 0
    body = read_json(dec)
    assert len(body['factors']) == 5 and all(len(f) == 3 for f in body['factors'])
    assert run(['construct', '--family', 'wheel', '-n', '5', '--out', str(out),
                '--decomposition', str(dec)]) == 2


def test_construct_writes_graph6(tmp_path):
    out, g6 = tmp_path / 'c7.json', tmp_path / 'c7.g6'
    assert run(['construct', '--family', 'circulant', '-n', '7', '--steps', '1', '2',
                '--out', str(out), '--graph6', str(g6)]) == 0
    assert g6.read_text() == graph_to_graph6(build_circulant(7, [1, 2])) + '\n'
    back = load_graph(str(g6))
    assert back.vertex_count == 7
    assert {frozenset(e) for e in back.edges} == {frozenset(e) for e in build_circulant(7, [1, 2]).edges}
    verdict = tmp_path / 'verdict.json'
    assert run(['verify', '--graph', str(g6), '--ubb', str(out), '--out', str(verdict)]) == 0
