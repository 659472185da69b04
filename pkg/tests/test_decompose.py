import pytest

from uncoverings.connectivity import edge_connectivity
from uncoverings.decompose import (AuxDigraph, HamiltonianDecomposition, OneFactorisation,
                                   SuccessorMap, auxiliary_digraph, circulant_decomposition,
                                   decomposition_to_json, find_directed_2factor, gk_factorisation,
                                   hkl_successor_for_k2m, restrict_factorisation,
                                   validate_partition, walecki)
from uncoverings.errors import DecompositionError, GraphError
from uncoverings.graph import Graph, build_circulant, build_complete, is_hamilton_cycle


def test_walecki_k5_cycles():
    d = walecki(5)
    g = d.graph
    expected = [[(4, 0), (0, 1), (1, 3), (3, 2), (2, 4)],
                [(4, 1), (1, 2), (2, 0), (0, 3), (3, 4)]]
    assert [c.ids for c in d.cycles] == [g.subset_of_pairs(p).ids for p in expected]


@pytest.mark.parametrize('n', [3, 5, 7, 9, 11])
def test_walecki_is_a_hamiltonian_decomposition(n):
    d = walecki(n)
    assert len(d) == (n - 1) // 2
    assert validate_partition(d.graph, d.cycles)


def test_walecki_rejects_even_n():
    with pytest.raises(GraphError):
        walecki(6)


@pytest.mark.parametrize('v', [4, 6, 8, 10, 12])
def test_gk_factorisation_consecutive_unions_are_hamiltonian(v):
    f = gk_factorisation(v)
    g = f.graph
    assert len(f) == v - 1
    k = v - 1
    for i in range(k):
        assert is_hamilton_cycle(g, f.factors[i] | f.factors[(i + 1) % k])
        if v > 4:
            assert is_hamilton_cycle(g, f.factors[i] | f.factors[(i + 2) % k])


def test_gk4_factors():
    f = gk_factorisation(4)
    g = f.graph
    expected = [[(1, 2), (0, 3)], [(2, 0), (1, 3)], [(0, 1), (2, 3)]]
    assert [x.ids for x in f.factors] == [g.subset_of_pairs(p).ids for p in expected]


def test_partition_validation_errors():
    g = build_complete(4)
    with pytest.raises(DecompositionError):
        OneFactorisation(g, [g.subset_of_pairs([(0, 1), (2, 3)])])
    with pytest.raises(DecompositionError):
        HamiltonianDecomposition(g, [g.full()])


def test_circulant_decomposition():
    g = build_circulant(7, [1, 2])
    d = circulant_decomposition(g)
    assert [c.ids for c in d.cycles] == [tuple(range(7)), tuple(range(7, 14))]
    with pytest.raises(DecompositionError):
        circulant_decomposition(build_circulant(8, [1, 2]))
    with pytest.raises(GraphError):
        circulant_decomposition(build_complete(5))


def test_auxiliary_digraph_of_gk6_is_complete():
    f = gk_factorisation(6)
    h = auxiliary_digraph(f.graph, f)
    assert h.k == 5
    assert h.is_symmetric()
    assert all(h.has_arc(i, j) for i in range(5) for j in range(5) if i != j)


def test_successor_map_validation():
    assert SuccessorMap((1, 2, 0, 4, 3)).cycle_type == [3, 2]
    with pytest.raises(DecompositionError):
        SuccessorMap((0, 2, 1))
    with pytest.raises(DecompositionError):
        SuccessorMap((1, 1, 0))
    digraph = AuxDigraph(3, frozenset({(0, 1), (1, 0), (1, 2), (2, 1)}))
    with pytest.raises(DecompositionError):
        SuccessorMap((1, 2, 0)).check_against(digraph)


def test_find_directed_2factor():
    two_cycles = AuxDigraph(4, frozenset({(0, 1), (1, 0), (2, 3), (3, 2), (0, 2)}))
    assert find_directed_2factor(two_cycles).h == (1, 0, 3, 2)
    path = AuxDigraph(3, frozenset({(0, 1), (1, 0), (1, 2), (2, 1)}))
    assert find_directed_2factor(path) is None
    assert find_directed_2factor(AuxDigraph(0, frozenset())) is None


@pytest.mark.parametrize('v', [4, 6, 8, 10, 12])
def test_hkl_successor(v):
    f = gk_factorisation(v)
    h = hkl_successor_for_k2m(f)
    assert h.cycle_type[0] == 3
    assert all(length == 2 for length in h.cycle_type[1:])
    assert sum(h.cycle_type) == v - 1


def test_hkl_successor_rejects_other_factorisations():
    f = gk_factorisation(6)
    shuffled = OneFactorisation(f.graph, f.factors[1:] + f.factors[:1])
    with pytest.raises(DecompositionError):
        hkl_successor_for_k2m(shuffled)


def test_restricted_gk8_is_five_regular():
    sub, f = restrict_factorisation(gk_factorisation(8), [6, 0, 1, 2, 3])
    assert sub.vertex_count == 8 and sub.edge_count == 20
    assert all(sub.degree(v) == 5 for v in range(8))
    assert edge_connectivity(sub) == 5
    h = SuccessorMap((1, 2, 0, 4, 3)).check_against(auxiliary_digraph(sub, f))
    assert h.cycle_type == [3, 2]


@pytest.mark.parametrize('n', [3, 5, 7, 9, 11])
def test_walecki_gives_connectivity_n_minus_1(n):
    d = walecki(n)
    assert edge_connectivity(d.graph) == 2 * len(d) == n - 1


def test_partition_failures():
    d = walecki(5)
    a, b = d.cycles
    assert not validate_partition(d.graph, [a, a | b])
    assert not validate_partition(d.graph, [a])


def test_auxiliary_digraph_is_loop_free():
    sub, f = restrict_factorisation(gk_factorisation(10), [0, 1, 2, 3])
    h = auxiliary_digraph(sub, f)
    assert h.is_symmetric()
    assert not any(i == j for i, j in h.arcs)


def test_decomposition_json():
    body = decomposition_to_json(walecki(5))
    assert body['n'] == 5 and len(body['edges']) == 10
    assert [len(c) for c in body['cycles']] == [5, 5]
    body = decomposition_to_json(gk_factorisation(4))
    assert body['factors'] == [list(x.ids) for x in gk_factorisation(4).factors]


def test_complete_digraph_on_three_factors_gives_the_3_cycle():
    arcs = frozenset((i, j) for i in range(3) for j in range(3) if i != j)
    h = find_directed_2factor(AuxDigraph(3, arcs))
    assert h.h == (1, 2, 0)
    assert h.cycle_type == [3]
    assert find_directed_2factor(AuxDigraph(2, frozenset({(0, 1), (1, 0)}))).h == (1, 0)


def test_parallel_factors_of_the_cube_have_no_arcs():
    cube = Graph(8, [(v, v ^ b) for v in range(8) for b in (1, 2, 4) if v < v ^ b])
    f = OneFactorisation(cube, [cube.subset_of_pairs([(v, v ^ b) for v in range(8) if not v & b])
                                for b in (1, 2, 4)])
    h = auxiliary_digraph(cube, f)
    assert h.k == 3 and h.arcs == frozenset()
    assert find_directed_2factor(h) is None
