"""Hamiltonian decompositions, 1-factorisations and the auxiliary digraph.

The auxiliary digraph of a 1-factorisation has the factors as vertices and an
arc (i, j) whenever F_i U F_j is a Hamilton cycle. A successor map is a
loop-free permutation h of the factors with every (i, h(i)) an arc, i.e. a
directed 2-factor of that digraph.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from math import gcd
from typing import Optional, Sequence

import networkx as nx

from uncoverings.errors import DecompositionError, GraphError
from uncoverings.graph import (EdgeSubset, Graph, build_complete, is_hamilton_cycle,
                               is_perfect_matching)

logger = logging.getLogger(__name__)


def validate_partition(g: Graph, parts: Sequence[EdgeSubset]) -> bool:
    seen = 0
    for p in parts:
        if p.universe != g.edge_count or not p.mask or seen & p.mask:
            return False
        seen |= p.mask
    return seen == g.full().mask


#####################################################
@dataclass(frozen=True)
class HamiltonianDecomposition:
    graph: Graph
    cycles: tuple

    def __post_init__(self):
        object.__setattr__(self, 'cycles', tuple(self.cycles))
        if not validate_partition(self.graph, self.cycles):
            raise DecompositionError('cycles do not partition the edge set')
        for i, c in enumerate(self.cycles):
            if not is_hamilton_cycle(self.graph, c):
                raise DecompositionError(f'part {i} is not a Hamilton cycle')

    def __len__(self):
        return len(self.cycles)


@dataclass(frozen=True)
class OneFactorisation:
    graph: Graph
    factors: tuple

    def __post_init__(self):
        object.__setattr__(self, 'factors', tuple(self.factors))
        if not validate_partition(self.graph, self.factors):
            raise DecompositionError('factors do not partition the edge set')
        for i, f in enumerate(self.factors):
            if not is_perfect_matching(self.graph, f):
                raise DecompositionError(f'factor {i} is not a perfect matching')

    def __len__(self):
        return len(self.factors)

    def factor_of(self, e: int) -> int:
        for i, f in enumerate(self.factors):
            if e in f:
                return i
        raise GraphError(f'edge {e} is in no factor')


@dataclass(frozen=True)
class AuxDigraph:
    k: int
    arcs: frozenset

    def has_arc(self, i: int, j: int) -> bool:
        return (i, j) in self.arcs

    def heads(self, i: int) -> list:
        return sorted(j for (a, j) in self.arcs if a == i)

    def is_symmetric(self) -> bool:
        return all((j, i) in self.arcs for (i, j) in self.arcs)


@dataclass(frozen=True)
class SuccessorMap:
    h: tuple

    def __post_init__(self):
        h = tuple(self.h)
        object.__setattr__(self, 'h', h)
        if sorted(h) != list(range(len(h))):
            raise DecompositionError(f'successor map {h} is not a permutation')
        if any(h[i] == i for i in range(len(h))):
            raise DecompositionError(f'successor map {h} has a fixed point')

    def __getitem__(self, i):
        return self.h[i]

    def __len__(self):
        return len(self.h)

    @property
    def cycle_type(self) -> list:
        """Cycle lengths in order of their smallest member."""
        seen, lengths = set(), []
        for start in range(len(self.h)):
            if start in seen:
                continue
            length, i = 0, start
            while i not in seen:
                seen.add(i)
                i = self.h[i]
                length += 1
            lengths.append(length)
        return lengths

    def check_against(self, digraph: AuxDigraph) -> 'SuccessorMap':
        if len(self.h) != digraph.k:
            raise DecompositionError('successor map and digraph differ in size')
        for i, j in enumerate(self.h):
            if not digraph.has_arc(i, j):
                raise DecompositionError(f'({i}, {j}) is not an arc of the auxiliary digraph')
        return self


#####################################################
# named decompositions
def walecki(n: int) -> HamiltonianDecomposition:
    """Zigzag decomposition of K_n, n = 2m+1 odd, on Z_2m U {inf}.

    Cycle C_i runs inf, i, i+1, i-1, i+2, i-2, ..., i+m, inf (mod 2m);
    the vertex inf is n-1.
    """
    if n < 3 or n % 2 == 0:
        raise GraphError(f'Walecki decomposition needs odd n >= 3, got {n}')
    g = build_complete(n)
    m, inf = (n - 1) // 2, n - 1
    cycles = []
    for i in range(m):
        walk = [i]
        for j in range(1, m):
            walk += [(i + j) % (2 * m), (i - j) % (2 * m)]
        walk.append((i + m) % (2 * m))
        tour = [inf] + walk + [inf]
        cycles.append(g.subset_of_pairs(zip(tour, tour[1:])))
    return HamiltonianDecomposition(g, cycles)


def circulant_decomposition(g: Graph) -> HamiltonianDecomposition:
    """Step cycles of a circulant built by build_circulant.

    Every step must be coprime to n and below n/2; the edges of one step are
    contiguous in the graph's step-major edge order.
    """
    if not g.family or g.family[0] != 'circulant':
        raise GraphError('not a circulant built by build_circulant')
    _, n, steps = g.family
    cycles, offset = [], 0
    for s in steps:
        if 2 * s == n or gcd(s, n) != 1:
            raise DecompositionError(f'step {s} does not give a Hamilton cycle of C_{n}')
        cycles.append(g.subset(range(offset, offset + n)))
        offset += n
    return HamiltonianDecomposition(g, cycles)


def gk_factorisation(v: int) -> OneFactorisation:
    """GK_v: starter F_0 = {{i,-i}} U {{0,inf}} on Z_{v-1} U {inf}, F_i = F_0 + i."""
    if v < 4 or v % 2:
        raise GraphError(f'GK factorisation needs even v >= 4, got {v}')
    g = build_complete(v)
    mod, inf = v - 1, v - 1
    m = v // 2

    def shift(x, i):
        return inf if x == inf else (x + i) % mod

    starter = [(i, (-i) % mod) for i in range(1, m)] + [(0, inf)]
    factors = [g.subset_of_pairs((shift(a, i), shift(b, i)) for a, b in starter)
               for i in range(mod)]
    return OneFactorisation(g, factors)


def restrict_factorisation(f: OneFactorisation, indices: Sequence[int]) -> tuple:
    """Subgraph spanned by the chosen factors, factors renumbered in `indices` order."""
    indices = list(indices)
    if len(set(indices)) != len(indices) or not indices:
        raise DecompositionError('factor indices must be distinct and non-empty')
    g = f.graph
    keep = 0
    for i in indices:
        keep |= f.factors[i].mask
    kept = [e for e in range(g.edge_count) if (keep >> e) & 1]
    sub = Graph(g.vertex_count, tuple(g.edges[e] for e in kept), labels=g.labels)
    renumber = {e: j for j, e in enumerate(kept)}
    factors = [sub.subset(renumber[e] for e in f.factors[i]) for i in indices]
    return sub, OneFactorisation(sub, factors)


#####################################################
def auxiliary_digraph(g: Graph, f: OneFactorisation) -> AuxDigraph:
    if f.graph != g:
        raise GraphError('factorisation belongs to another graph')
    k = len(f)
    arcs = set()
    for i in range(k):
        for j in range(i + 1, k):
            if is_hamilton_cycle(g, f.factors[i] | f.factors[j]):
                arcs.add((i, j))
                arcs.add((j, i))
    logger.debug('auxiliary digraph on %d factors has %d arcs', k, len(arcs))
    return AuxDigraph(k, frozenset(arcs))


def _has_perfect_matching(digraph: AuxDigraph, fixed: dict) -> bool:
    tails = [i for i in range(digraph.k) if i not in fixed]
    used = set(fixed.values())
    B = nx.Graph()
    B.add_nodes_from(('t', i) for i in tails)
    for i in tails:
        for j in digraph.heads(i):
            if j not in used:
                B.add_edge(('t', i), ('h', j))
    if not tails:
        return True
    matching = nx.bipartite.hopcroft_karp_matching(B, top_nodes=[('t', i) for i in tails])
    return sum(1 for i in tails if ('t', i) in matching) == len(tails)


def find_directed_2factor(digraph: AuxDigraph) -> Optional[SuccessorMap]:
    """Lexicographically smallest successor map, or None when none exists.

    Tails are fixed in index order to their smallest head that still leaves a
    perfect matching between the remaining tails and heads.
    """
    if digraph.k == 0 or not _has_perfect_matching(digraph, {}):
        return None
    fixed = {}
    for i in range(digraph.k):
        for j in digraph.heads(i):
            if j in fixed.values():
                continue
            fixed[i] = j
            if _has_perfect_matching(digraph, fixed):
                break
            del fixed[i]
    return SuccessorMap(tuple(fixed[i] for i in range(digraph.k))).check_against(digraph)


def hkl_successor_for_k2m(f: OneFactorisation) -> SuccessorMap:
    """Explicit 2-factor of the GK_2m auxiliary digraph.

    One 3-cycle F_{2m-2} -> F_0 -> F_1 -> F_{2m-2} and 2-cycles
    F_2 <-> F_3, ..., F_{2m-4} <-> F_{2m-3}.
    """
    v = f.graph.vertex_count
    if v < 4 or v % 2 or len(f) != v - 1:
        raise DecompositionError('not a 1-factorisation of K_2m in GK shape')
    if f.factors != gk_factorisation(v).factors or f.graph != build_complete(v):
        raise DecompositionError('factorisation does not follow the GK_2m pattern')
    last = v - 2
    h = [None] * (v - 1)
    h[last], h[0], h[1] = 0, 1, last
    for j in range(2, last - 1, 2):
        h[j], h[j + 1] = j + 1, j
    return SuccessorMap(tuple(h)).check_against(auxiliary_digraph(f.graph, f))


def decomposition_to_json(d) -> dict:
    g = d.graph
    body = {'n': g.vertex_count, 'edges': [list(e) for e in g.edges]}
    if isinstance(d, HamiltonianDecomposition):
        body['cycles'] = [list(c.ids) for c in d.cycles]
    else:
        body['factors'] = [list(c.ids) for c in d.factors]
    return body
