from math import comb

import numpy as np
import pytest

from uncoverings.construct import Uncovering, ubb_complete, ubb_complete_bipartite, ubb_wheel
from uncoverings.errors import GraphError, PreconditionViolation, ResourceLimitExceeded
from uncoverings.graph import SpanningTree, build_cycle
from uncoverings.utils import binomial_table, colex_chunks, colex_ranks, colex_unrank
from uncoverings.verify import (EXHAUSTIVE, Sampled, export_covering_design, is_covering_by_bases,
                                is_minimal_ubb, schonheim_bound, verify_covering, verify_ubb)


def fixture_ubbs():
    yield ubb_wheel(7)
    yield ubb_wheel(4)
    yield ubb_complete(5)
    yield ubb_complete(6)
    yield ubb_complete_bipartite(3, 4)


def test_circulant_example_is_valid(c7, c7_ubb):
    verdict = verify_ubb(c7, c7_ubb, EXHAUSTIVE)
    assert verdict.status == 'valid'
    assert verdict.witness is None
    assert verdict.subsets_checked == comb(14, 3) == 364
    assert verdict.to_json() == {'status': 'valid', 'witness': None, 'subsets_checked': 364}


def test_wheel_fixture_is_valid(w7_ubb):
    assert verify_ubb(w7_ubb.graph, w7_ubb).status == 'valid'


def test_deleting_a_path_exposes_a_witness(c7, c7_ubb):
    # tree 0 is the first Hamilton cycle minus edge 0
    broken = c7_ubb.without(0)
    verdict = verify_ubb(c7, broken)
    assert verdict.status == 'invalid'
    w = verdict.witness
    assert len(w) == 3
    assert 0 in w
    assert sum(1 for e in w if e >= 7) == 2
    for tree in broken.trees:
        assert not tree.edges.isdisjoint(w)


def test_witness_is_colex_least(c7, c7_ubb):
    broken = c7_ubb.without(0)
    w = verify_ubb(c7, broken).witness
    masks = [tree.mask for tree in broken.trees]
    combos = np.concatenate([c for _, c in colex_chunks(14, 3, 50)])
    bad = [sum(1 << int(e) for e in combo) for combo in combos
           if all(sum(1 << int(e) for e in combo) & m for m in masks)]
    assert w.mask == min(bad)
    assert w.ids == (0, 7, 8)


def test_threaded_scan_returns_the_same_witness(c7, c7_ubb):
    broken = c7_ubb.without(3)
    single = verify_ubb(c7, broken)
    threaded = verify_ubb(c7, broken, threads=4)
    assert single.witness == threaded.witness


def test_t_at_least_lambda_is_a_precondition_violation():
    g = build_cycle(5)
    trees = [SpanningTree(g, g.full().without(e)) for e in range(5)]
    u = Uncovering(g, 1, trees)
    assert verify_ubb(g, u).status == 'valid'
    with pytest.raises(PreconditionViolation):
        u.with_t(2)


def test_foreign_graph_rejected(c7, w7_ubb):
    with pytest.raises(GraphError):
        verify_ubb(c7, w7_ubb)


def test_exhaustive_ceiling():
    u = ubb_complete(9)
    with pytest.raises(ResourceLimitExceeded):
        verify_ubb(u.graph, u, EXHAUSTIVE, ceiling=10**6)


@pytest.mark.slow
def test_sampled_fallback_on_k9():
    u = ubb_complete(9)
    verdict = verify_ubb(u.graph, u, Sampled(10**6, seed=7))
    assert verdict.status == 'sampled-pass'
    assert verdict.subsets_checked == 10**6


def test_sampled_mode_is_reproducible(c7, c7_ubb):
    broken = c7_ubb.without(0)
    a = verify_ubb(c7, broken, Sampled(2000, seed=11))
    b = verify_ubb(c7, broken, Sampled(2000, seed=11))
    assert a == b
    assert a.status == 'invalid'
    ok = verify_ubb(c7, c7_ubb, Sampled(2000, seed=11))
    assert ok.status == 'sampled-pass'


def test_monotonicity_in_t():
    for u in fixture_ubbs():
        for t in range(1, u.t):
            assert verify_ubb(u.graph, u.with_t(t)).ok


def test_duality_with_covering_designs(c7, c7_ubb):
    for u in list(fixture_ubbs()) + [c7_ubb, c7_ubb.without(0)]:
        valid = verify_ubb(u.graph, u).ok
        blocks = export_covering_design(u.graph, u)
        assert verify_covering(u.graph.edge_count, blocks, u.t) == valid


def test_wheel_export_blocks(w7_ubb):
    blocks = export_covering_design(w7_ubb.graph, w7_ubb)
    assert len(blocks) == 6
    assert all(len(b) == 7 for b in blocks)


def test_verify_covering_trivial_cases():
    n = 6
    all_but_one = [[x for x in range(n) if x != y] for y in range(n)]
    for t in range(n):
        assert verify_covering(n, all_but_one, t)
    assert not verify_covering(n, [[0, 1, 2]], 1)
    with pytest.raises(GraphError):
        verify_covering(3, [[0, 5]], 1)


def test_minimality_reports(c7, c7_ubb, w7_ubb):
    report = is_minimal_ubb(c7, c7_ubb)
    assert report.minimal
    for tree, w in zip(c7_ubb.trees, report.witnesses):
        assert len(w) == 3
        assert tree.edges.isdisjoint(w)
        assert sum(1 for other in c7_ubb.trees if other.edges.isdisjoint(w)) == 1

    padded = w7_ubb.with_tree(w7_ubb.trees[0])
    report = is_minimal_ubb(padded.graph, padded)
    assert not report.minimal
    assert report.witnesses[-1] is None


def test_minimality_witness_is_the_verifier_witness(c7, c7_ubb):
    report = is_minimal_ubb(c7, c7_ubb)
    for i in (0, 5, 9):
        assert verify_ubb(c7, c7_ubb.without(i)).witness == report.witnesses[i]


def test_minimality_needs_a_valid_ubb(c7, c7_ubb):
    with pytest.raises(PreconditionViolation):
        is_minimal_ubb(c7, c7_ubb.without(0))


def test_wheels_are_coverings_by_bases(w7_ubb):
    assert is_covering_by_bases(w7_ubb.graph, w7_ubb)


def test_schonheim_bound_values():
    assert schonheim_bound(20, 7, 4) == 11
    assert schonheim_bound(9, 5, 2) == 7
    for n in range(2, 21):
        assert schonheim_bound(2 * n, n, 2) == 6
    for bad in [(5, 5, 1), (5, 0, 1), (5, 2, 0), (5, 2, 4)]:
        with pytest.raises(PreconditionViolation):
            schonheim_bound(*bad)


def test_schonheim_bound_below_every_fixture(c7_ubb):
    for u in list(fixture_ubbs()) + [c7_ubb]:
        g = u.graph
        assert schonheim_bound(g.edge_count, g.vertex_count - 1, u.t) <= len(u)


def test_colex_helpers():
    table = binomial_table(6, 3)
    combos = np.concatenate([c for _, c in colex_chunks(6, 3, 4)])
    ranks = colex_ranks(combos, table)
    assert sorted(ranks) == list(range(comb(6, 3)))
    for combo, rank in zip(combos, ranks):
        assert colex_unrank(int(rank), 3) == tuple(int(x) for x in combo)
