"""Spanning tree counting (Matrix-Tree theorem) and enumeration."""
from __future__ import annotations

import logging
from typing import Iterator

import networkx as nx
import numpy as np

from uncoverings.errors import GraphError, ResourceLimitExceeded
from uncoverings.graph import EdgeSubset, Graph, SpanningTree, is_connected

logger = logging.getLogger(__name__)


def laplacian(g: Graph) -> np.ndarray:
    L = np.zeros((g.vertex_count, g.vertex_count), dtype=np.int64)
    for u, v in g.edges:
        L[u, u] += 1
        L[v, v] += 1
        L[u, v] -= 1
        L[v, u] -= 1
    return L


def bareiss_determinant(rows: list) -> int:
    """Fraction-free Gaussian elimination over Python integers."""
    M = [list(r) for r in rows]
    n = len(M)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if M[i][k] != 0), None)
            if swap is None:
                return 0
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        pivot = M[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * pivot - M[i][k] * M[k][j]) // prev
        prev = pivot
    return sign * M[n - 1][n - 1]


def count_spanning_trees(g: Graph) -> int:
    if g.vertex_count <= 1:
        return 1
    reduced = laplacian(g)[1:, 1:].tolist()
    return bareiss_determinant([[int(x) for x in row] for row in reduced])


def enumerate_spanning_trees(g: Graph, cap: int) -> Iterator[SpanningTree]:
    """Every spanning tree exactly once, by include/exclude branching on edges.

    An edge is included only if it joins two components of the partial forest
    and excluded only if the graph stays connected without it, so every branch
    ends in a tree. Raises ResourceLimitExceeded once more than `cap` trees
    have been produced.
    """
    if not is_connected(g):
        raise GraphError('spanning trees of a disconnected graph do not exist')
    n, m = g.vertex_count, g.edge_count
    if n <= 1:
        yield SpanningTree(g, g.empty())
        return
    target = n - 1
    count = 0

    def branch(e, comp, included, excluded, size):
        nonlocal count
        if size == target:
            count += 1
            if count > cap:
                raise ResourceLimitExceeded('spanning tree enumeration', cap)
            yield included
            return
        if e == m:
            return
        u, v = g.edges[e]
        cu, cv = comp[u], comp[v]
        if cu != cv:
            merged = tuple(cu if c == cv else c for c in comp)
            yield from branch(e + 1, merged, included | (1 << e), excluded, size + 1)
        dropped = excluded | (1 << e)
        if is_connected(g, EdgeSubset(dropped, m)):
            yield from branch(e + 1, comp, included, dropped, size)

    for mask in branch(0, tuple(range(n)), 0, 0, 0):
        yield SpanningTree(g, EdgeSubset(mask, m))


def prufer_code(tree: SpanningTree) -> tuple:
    g = tree.graph
    if g.vertex_count <= 2:
        return ()
    T = nx.Graph()
    T.add_nodes_from(range(g.vertex_count))
    T.add_edges_from(g.edges[e] for e in tree.edges)
    return tuple(nx.to_prufer_sequence(T))


def pool_order_key(tree: SpanningTree) -> tuple:
    """Fewest leaves first, then Prufer code; the canonical order of a search pool."""
    leaves = sum(1 for d in tree.graph.edge_subgraph_degrees(tree.edges) if d == 1)
    return leaves, prufer_code(tree)
