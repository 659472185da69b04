"""Graphs with stable edge ids, edge subsets as bitmasks, named families.

Edge ids follow a canonical order per builder so that fixtures are stable:
lexicographic for K_n and K_{m,n}; rim r_0..r_{n-1} then spokes
s_0..s_{n-1} for wheels; step-major for circulants.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Optional

import networkx as nx
from networkx.utils import UnionFind

from uncoverings.errors import GraphError, NotASpanningTree
from uncoverings.utils import iter_bits, make_mask


#####################################################
@dataclass(frozen=True)
class Graph:
    vertex_count: int
    edges: tuple
    labels: Optional[tuple] = None
    family: Optional[tuple] = field(default=None, compare=False)

    def __post_init__(self):
        if self.vertex_count < 0:
            raise GraphError('vertex_count must be non-negative')
        edges = tuple(tuple(e) for e in self.edges)
        seen = set()
        for u, v in edges:
            if u == v:
                raise GraphError(f'self-loop at vertex {u}')
            if not (0 <= u < self.vertex_count and 0 <= v < self.vertex_count):
                raise GraphError(f'edge ({u}, {v}) has an endpoint outside 0..{self.vertex_count - 1}')
            key = (min(u, v), max(u, v))
            if key in seen:
                raise GraphError(f'duplicate edge {key}')
            seen.add(key)
        object.__setattr__(self, 'edges', edges)
        if self.labels is not None and len(self.labels) != self.vertex_count:
            raise GraphError('one label per vertex is required')

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @cached_property
    def _index(self) -> dict:
        idx = {}
        for e, (u, v) in enumerate(self.edges):
            idx[(u, v)] = e
            idx[(v, u)] = e
        return idx

    @cached_property
    def incidence(self) -> tuple:
        """Per vertex, the mask of incident edge ids."""
        inc = [0] * self.vertex_count
        for e, (u, v) in enumerate(self.edges):
            inc[u] |= 1 << e
            inc[v] |= 1 << e
        return tuple(inc)

    def edge_id(self, u: int, v: int) -> int:
        try:
            return self._index[(u, v)]
        except KeyError:
            raise GraphError(f'no edge between {u} and {v}') from None

    def degree(self, v: int) -> int:
        return self.incidence[v].bit_count()

    def label(self, v: int) -> str:
        if self.labels is None:
            return str(v)
        return self.labels[v]

    def full(self) -> 'EdgeSubset':
        return EdgeSubset((1 << self.edge_count) - 1, self.edge_count)

    def empty(self) -> 'EdgeSubset':
        return EdgeSubset(0, self.edge_count)

    def subset(self, ids: Iterable[int]) -> 'EdgeSubset':
        ids = list(ids)
        for e in ids:
            if not 0 <= e < self.edge_count:
                raise GraphError(f'edge id {e} out of range for a graph with {self.edge_count} edges')
        return EdgeSubset(make_mask(ids), self.edge_count)

    def subset_of_pairs(self, pairs: Iterable) -> 'EdgeSubset':
        return self.subset(self.edge_id(u, v) for u, v in pairs)

    def to_networkx(self, removed: Optional['EdgeSubset'] = None) -> nx.Graph:
        G = nx.Graph()
        G.add_nodes_from(range(self.vertex_count))
        skip = removed.mask if removed is not None else 0
        for e, (u, v) in enumerate(self.edges):
            if not (skip >> e) & 1:
                G.add_edge(u, v, id=e)
        return G

    def edge_subgraph_degrees(self, s: 'EdgeSubset') -> list:
        deg = [0] * self.vertex_count
        for e in s:
            u, v = self.edges[e]
            deg[u] += 1
            deg[v] += 1
        return deg


@dataclass(frozen=True)
class EdgeSubset:
    """A set of edge ids over the id space 0..universe-1 of one graph."""
    mask: int
    universe: int

    def __post_init__(self):
        if self.mask < 0 or self.mask >> self.universe:
            raise GraphError('edge subset mask outside its universe')

    def _check(self, other: 'EdgeSubset'):
        if not isinstance(other, EdgeSubset) or other.universe != self.universe:
            raise GraphError('edge subsets come from different graphs')

    def __len__(self):
        return self.mask.bit_count()

    def __iter__(self) -> Iterator[int]:
        return iter_bits(self.mask)

    def __contains__(self, e: int) -> bool:
        return 0 <= e < self.universe and bool((self.mask >> e) & 1)

    def __and__(self, other):
        self._check(other)
        return EdgeSubset(self.mask & other.mask, self.universe)

    def __or__(self, other):
        self._check(other)
        return EdgeSubset(self.mask | other.mask, self.universe)

    def __sub__(self, other):
        self._check(other)
        return EdgeSubset(self.mask & ~other.mask, self.universe)

    def complement(self) -> 'EdgeSubset':
        return EdgeSubset(((1 << self.universe) - 1) & ~self.mask, self.universe)

    def isdisjoint(self, other: 'EdgeSubset') -> bool:
        self._check(other)
        return not self.mask & other.mask

    def without(self, e: int) -> 'EdgeSubset':
        return EdgeSubset(self.mask & ~(1 << e), self.universe)

    @property
    def ids(self) -> tuple:
        return tuple(iter_bits(self.mask))


class SpanningTree:
    """An edge subset checked at construction to be a spanning tree of its graph."""

    def __init__(self, graph: Graph, edges: EdgeSubset):
        if edges.universe != graph.edge_count:
            raise GraphError('edge subset does not belong to this graph')
        if not is_spanning_tree(graph, edges):
            raise NotASpanningTree(f'edges {list(edges.ids)} do not form a spanning tree')
        self.graph = graph
        self.edges = edges
        self.size = len(edges)

    def __eq__(self, other):
        return isinstance(other, SpanningTree) and self.edges == other.edges

    def __hash__(self):
        return hash(self.edges)

    def __repr__(self):
        return f'SpanningTree({list(self.edges.ids)})'

    @property
    def mask(self) -> int:
        return self.edges.mask


@dataclass(frozen=True)
class WheelLabels:
    rim: tuple
    spokes: tuple

    def r(self, i: int) -> int:
        return self.rim[i % len(self.rim)]

    def s(self, i: int) -> int:
        return self.spokes[i % len(self.spokes)]


#####################################################
# builders
def build_complete(n: int) -> Graph:
    if n < 2:
        raise GraphError(f'K_n needs n >= 2, got {n}')
    edges = [(u, v) for u in range(n) for v in range(u + 1, n)]
    return Graph(n, tuple(edges), family=('complete', n))


def build_complete_bipartite(m: int, n: int) -> Graph:
    """Parts X = 0..m-1 and Y = m..m+n-1, edges in lexicographic order."""
    if m < 2 or m > n:
        raise GraphError(f'K_(m,n) needs 2 <= m <= n, got m={m}, n={n}')
    edges = [(x, m + y) for x in range(m) for y in range(n)]
    labels = tuple(f'x{i}' for i in range(m)) + tuple(f'y{j}' for j in range(n))
    return Graph(m + n, tuple(edges), labels=labels, family=('bipartite', m, n))


def build_wheel(n: int) -> tuple:
    """Rim vertices v_0..v_{n-1} are 0..n-1, the hub v_inf is n."""
    if n < 3:
        raise GraphError(f'W_n needs n >= 3, got {n}')
    hub = n
    rim = [(i, (i + 1) % n) for i in range(n)]
    spokes = [(i, hub) for i in range(n)]
    labels = tuple(f'v{i}' for i in range(n)) + ('v_inf',)
    g = Graph(n + 1, tuple(rim + spokes), labels=labels, family=('wheel', n))
    return g, WheelLabels(tuple(range(n)), tuple(range(n, 2 * n)))


def build_circulant(n: int, steps: Iterable[int]) -> Graph:
    steps = list(steps)
    if len(set(steps)) != len(steps):
        raise GraphError(f'circulant steps must be distinct, got {steps}')
    edges = []
    for s in steps:
        if not 1 <= s <= n / 2:
            raise GraphError(f'circulant step {s} outside 1..{n // 2}')
        count = n // 2 if 2 * s == n else n
        for i in range(count):
            edges.append((i, (i + s) % n))
    return Graph(n, tuple(edges), family=('circulant', n, tuple(steps)))


def build_cycle(n: int) -> Graph:
    return build_circulant(n, [1])


#####################################################
# predicates
def _union_find(g: Graph, mask: int) -> UnionFind:
    uf = UnionFind(range(g.vertex_count))
    for e in iter_bits(mask):
        u, v = g.edges[e]
        uf.union(u, v)
    return uf


def component_count(g: Graph, removed: Optional[EdgeSubset] = None) -> int:
    if g.vertex_count == 0:
        return 0
    keep = g.full().mask
    if removed is not None:
        keep &= ~removed.mask
    uf = _union_find(g, keep)
    return len({uf[v] for v in range(g.vertex_count)})


def is_connected(g: Graph, removed: Optional[EdgeSubset] = None) -> bool:
    return component_count(g, removed) <= 1


def _over(g: Graph, s: EdgeSubset) -> bool:
    return s.universe == g.edge_count


def is_spanning_tree(g: Graph, s: EdgeSubset) -> bool:
    if not _over(g, s) or len(s) != max(g.vertex_count - 1, 0):
        return False
    uf = UnionFind(range(g.vertex_count))
    for e in s:
        u, v = g.edges[e]
        if uf[u] == uf[v]:
            return False
        uf.union(u, v)
    return True


def is_hamilton_cycle(g: Graph, s: EdgeSubset) -> bool:
    n = g.vertex_count
    if n < 3 or not _over(g, s) or len(s) != n:
        return False
    if any(d != 2 for d in g.edge_subgraph_degrees(s)):
        return False
    return component_count(g, s.complement()) == 1


def is_perfect_matching(g: Graph, s: EdgeSubset) -> bool:
    return _over(g, s) and all(d == 1 for d in g.edge_subgraph_degrees(s))


def is_hamilton_path(g: Graph, s: EdgeSubset) -> bool:
    if not is_spanning_tree(g, s):
        return False
    return all(d <= 2 for d in g.edge_subgraph_degrees(s))
