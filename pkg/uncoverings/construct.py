"""Uncovering-by-bases constructions for named graph families.

A t-UBB of a connected graph G is a list of spanning trees such that any t
edges of G miss at least one tree; it can only exist for t < lambda(G).
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, replace
from math import comb
from typing import Iterable, Optional, Sequence

import networkx as nx
from networkx.algorithms.isomorphism import GraphMatcher

from uncoverings.connectivity import edge_connectivity
from uncoverings.decompose import (HamiltonianDecomposition, OneFactorisation, SuccessorMap,
                                   circulant_decomposition, gk_factorisation,
                                   hkl_successor_for_k2m, walecki)
from uncoverings.errors import (ConstructionError, GraphError, NotASpanningTree,
                                PreconditionViolation)
from uncoverings.graph import (EdgeSubset, Graph, SpanningTree, build_circulant,
                               build_complete_bipartite, build_wheel, is_connected)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Uncovering:
    graph: Graph
    t: int
    trees: tuple
    provenance: str = 'unknown'

    def __post_init__(self):
        object.__setattr__(self, 'trees', tuple(self.trees))
        if self.t < 0:
            raise PreconditionViolation(f't must be non-negative, got {self.t}')
        for tree in self.trees:
            if not isinstance(tree, SpanningTree) or tree.graph != self.graph:
                raise GraphError('every member must be a spanning tree of the graph')
        lam = edge_connectivity(self.graph)
        if self.t > max(lam - 1, 0):
            raise PreconditionViolation(
                f't={self.t} needs edge connectivity above t, graph has lambda={lam}')

    def __len__(self):
        return len(self.trees)

    def without(self, index: int) -> 'Uncovering':
        trees = self.trees[:index] + self.trees[index + 1:]
        return replace(self, trees=trees)

    def with_tree(self, tree: SpanningTree) -> 'Uncovering':
        return replace(self, trees=self.trees + (tree,))

    def with_t(self, t: int) -> 'Uncovering':
        return replace(self, t=t)

    @property
    def masks(self) -> list:
        return [tree.mask for tree in self.trees]


def _tree(g: Graph, edges, what: str) -> SpanningTree:
    try:
        return SpanningTree(g, edges)
    except NotASpanningTree as exc:
        raise ConstructionError(f'{what}: {exc}') from exc


#####################################################
def ubb_complete_bipartite(m: int, n: int) -> Uncovering:
    """Double stars T_uv for u in X and v in the first m vertices of Y."""
    g = build_complete_bipartite(m, n)
    trees = []
    for u in range(m):
        for v in range(m, 2 * m):
            edges = EdgeSubset(g.incidence[u] | g.incidence[v], g.edge_count)
            trees.append(_tree(g, edges, f'T_({u},{v})'))
    return Uncovering(g, m - 1, trees, 'complete-bipartite')


def ubb_hamdec(g: Graph, d: HamiltonianDecomposition) -> Uncovering:
    if d.graph != g:
        raise GraphError('decomposition belongs to another graph')
    trees = [_tree(g, cycle.without(e), f'C_{i} minus {e}')
             for i, cycle in enumerate(d.cycles) for e in cycle]
    return Uncovering(g, 2 * len(d) - 1, trees, 'hamiltonian-decomposition')


def ubb_2factor(g: Graph, f: OneFactorisation, h: SuccessorMap) -> Uncovering:
    """P_e = (F U h(F)) minus e for every edge e, F the factor holding e."""
    if f.graph != g:
        raise GraphError('factorisation belongs to another graph')
    k = len(f)
    if len(h) != k:
        raise ConstructionError('successor map size differs from the factor count')
    if any(g.degree(v) != k for v in range(g.vertex_count)):
        raise ConstructionError(f'graph is not {k}-regular')
    trees = []
    for i, factor in enumerate(f.factors):
        pair = factor | f.factors[h[i]]
        for e in factor:
            trees.append(_tree(g, pair.without(e), f'F_{i} U F_{h[i]} minus {e}'))
    return Uncovering(g, k - 1, trees, 'two-factor')


def ubb_wheel(n: int) -> Uncovering:
    """Six trees from the rim/spoke classes A, B, C, D of W_n."""
    g, lab = build_wheel(n)
    r, s = lab.r, lab.s
    if n % 2 == 0:
        A = [s(i) for i in range(1, n, 2)]
        B = [s(i) for i in range(2, n - 1, 2)] + [r(0)]
        C = [r(i) for i in range(1, n, 2)]
        D = [r(i) for i in range(2, n - 1, 2)] + [s(0)]
        recipes = [A + B, A + C, A + D, B + C, B + D, C + D]
    else:
        A = [s(i) for i in range(1, n - 1, 2)]
        B = [s(i) for i in range(2, n, 2)]
        C = [r(i) for i in range(1, n - 1, 2)]
        D = [r(i) for i in range(2, n - 2, 2)]
        r0, rl, s0 = r(0), r(n - 1), s(0)
        recipes = [A + B + [r0], A + C + [rl], A + D + [rl, s0],
                   B + C + [s0], B + D + [rl, r0], C + D + [r0, s0]]
    trees = []
    for i, ids in enumerate(recipes):
        if len(set(ids)) != len(ids):
            raise ConstructionError(f'wheel recipe {i} repeats an edge for n={n}')
        trees.append(_tree(g, g.subset(ids), f'wheel recipe {i} for n={n}'))
    return Uncovering(g, 2, trees, 'wheel')


def ubb_complete(n: int) -> Uncovering:
    if n < 3:
        raise GraphError(f'complete-graph UBB needs n >= 3, got {n}')
    if n % 2:
        d = walecki(n)
        return ubb_hamdec(d.graph, d)
    f = gk_factorisation(n)
    return ubb_2factor(f.graph, f, hkl_successor_for_k2m(f))


def ubb_from_disjoint_trees(g: Graph, trees: Sequence[SpanningTree], t: int) -> Uncovering:
    trees = list(trees)
    if len(trees) < t + 1:
        raise ConstructionError(f'{len(trees)} trees cannot uncover {t} edges; need {t + 1}')
    seen = 0
    for tree in trees:
        if seen & tree.mask:
            raise ConstructionError('trees are not pairwise edge-disjoint')
        seen |= tree.mask
    return Uncovering(g, t, trees, 'disjoint-trees')


#####################################################
# dispatch
def construct_family(family: str, n: int, m: Optional[int] = None,
                     steps: Optional[Iterable[int]] = None) -> Uncovering:
    if family == 'complete':
        return ubb_complete(n)
    if family == 'bipartite':
        if m is None:
            raise GraphError('bipartite family needs -m')
        return ubb_complete_bipartite(m, n)
    if family == 'wheel':
        return ubb_wheel(n)
    if family == 'circulant':
        g = build_circulant(n, list(steps or [1]))
        return ubb_hamdec(g, circulant_decomposition(g))
    raise GraphError(f'unknown family {family!r}')


def _family_candidates(g: Graph) -> list:
    n, m = g.vertex_count, g.edge_count
    degrees = [g.degree(v) for v in range(n)]
    out = []
    if n >= 3 and m == comb(n, 2):
        out.append(('complete', n, None))
    if n >= 4 and m == 2 * (n - 1) and sorted(degrees)[-1] == n - 1:
        out.append(('wheel', n - 1, None))
    if n >= 3 and all(d == 2 for d in degrees) and is_connected(g):
        out.append(('circulant', n, [1]))
    G = g.to_networkx()
    if n >= 4 and is_connected(g) and nx.is_bipartite(G):
        left, right = nx.bipartite.sets(G)
        a, b = sorted((len(left), len(right)))
        if a >= 2 and m == a * b:
            out.append(('bipartite', b, a))
    return out


def _transfer(u: Uncovering, g: Graph) -> Optional[Uncovering]:
    """Carry u onto an isomorphic graph g, or None when they are not isomorphic."""
    matcher = GraphMatcher(u.graph.to_networkx(), g.to_networkx())
    if not matcher.is_isomorphic():
        return None
    phi = matcher.mapping
    trees = []
    for tree in u.trees:
        pairs = (u.graph.edges[e] for e in tree.edges)
        trees.append(SpanningTree(g, g.subset_of_pairs((phi[a], phi[b]) for a, b in pairs)))
    return Uncovering(g, u.t, trees, u.provenance)


def recognise_families(g: Graph) -> list:
    """Constructions of every named family g is isomorphic to, mapped onto g's edge ids."""
    found = []
    for family, n, extra in _family_candidates(g):
        if family == 'bipartite':
            u = construct_family(family, n, m=extra)
        else:
            u = construct_family(family, n, steps=extra)
        if u.graph == g:
            found.append(u)
            continue
        mapped = _transfer(u, g)
        if mapped is not None:
            found.append(mapped)
    logger.debug('graph with %d vertices matches %d named families', g.vertex_count, len(found))
    return found
