"""Edge connectivity, minimum edge cuts and brute-force oracles."""
from __future__ import annotations

import itertools
import logging
from math import comb
from typing import Optional

import networkx as nx

from uncoverings.errors import GraphError, ResourceLimitExceeded
from uncoverings.graph import EdgeSubset, Graph, is_connected

logger = logging.getLogger(__name__)


def edge_connectivity(g: Graph) -> int:
    """Global minimum cut size; 0 for disconnected or single-vertex graphs."""
    if g.vertex_count < 2 or not is_connected(g):
        return 0
    value, _ = nx.stoer_wagner(g.to_networkx())
    return int(value)


def _crossing(g: Graph, side: set) -> EdgeSubset:
    return g.subset(e for e, (u, v) in enumerate(g.edges) if (u in side) != (v in side))


def min_edge_cut(g: Graph) -> EdgeSubset:
    if g.vertex_count < 2:
        raise GraphError('a minimum cut needs at least two vertices')
    if not is_connected(g):
        raise GraphError('minimum edge cut of a disconnected graph is undefined')
    _, (left, _right) = nx.stoer_wagner(g.to_networkx())
    cut = _crossing(g, set(left))
    logger.debug('min cut of size %d: %s', len(cut), list(cut.ids))
    return cut


def cut_sides(g: Graph, cut: EdgeSubset) -> list:
    """Vertex classes left after removing the cut, the bipartition view of a cut."""
    G = g.to_networkx(removed=cut)
    return [sorted(c) for c in nx.connected_components(G)]


#####################################################
# oracles
def brute_force_edge_connectivity(g: Graph) -> int:
    """Minimum crossing count over all 2^(n-1)-1 vertex bipartitions."""
    n = g.vertex_count
    if n < 2:
        return 0
    best = None
    for bits in range((1 << (n - 1)) - 1):
        side = {0} | {v for v in range(1, n) if (bits >> (v - 1)) & 1}
        crossing = sum(1 for u, v in g.edges if (u in side) != (v in side))
        if best is None or crossing < best:
            best = crossing
    return best if best is not None else 0


def enumerate_min_cuts(g: Graph, limit: Optional[int] = None) -> list:
    """All minimum edge cuts, by testing every lambda-subset of edges.

    Raises ResourceLimitExceeded when C(|E|, lambda) is above `limit`.
    """
    lam = edge_connectivity(g)
    if lam == 0:
        raise GraphError('graph is disconnected')
    demand = comb(g.edge_count, lam)
    if limit is not None and demand > limit:
        raise ResourceLimitExceeded('minimum cut enumeration', limit, demand)
    cuts = []
    for ids in itertools.combinations(range(g.edge_count), lam):
        s = g.subset(ids)
        if not is_connected(g, s):
            cuts.append(s)
    return cuts
