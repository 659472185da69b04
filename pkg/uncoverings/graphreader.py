"""graph6 and JSON readers/writers for graphs and uncoverings."""
from __future__ import annotations

import json
import logging
import os
from typing import IO, Iterator, Optional

import networkx as nx

from uncoverings.config import Config
from uncoverings.construct import Uncovering
from uncoverings.errors import FormatError, GraphError
from uncoverings.graph import Graph, SpanningTree

logger = logging.getLogger(__name__)


#####################################################
# graph6
def parse_graph6_line(text: str, line: Optional[int] = None) -> Graph:
    """One graph6 string; edges sorted lexicographically as (u, v) with u < v."""
    text = text.strip()
    if not text:
        raise FormatError('empty graph6 string', line)
    try:
        G = nx.from_graph6_bytes(text.encode('ascii'))
    except (nx.NetworkXError, ValueError, IndexError) as exc:
        raise FormatError(f'malformed graph6 {text!r}: {exc}', line) from exc
    edges = sorted((min(u, v), max(u, v)) for u, v in G.edges())
    return Graph(G.number_of_nodes(), tuple(edges))


def read_graph6(fh: IO[str]) -> Iterator[tuple]:
    """(line number, Graph) for every non-blank line."""
    for lineno, text in enumerate(fh, 1):
        if not text.strip():
            continue
        yield lineno, parse_graph6_line(text, lineno)


def graph_to_graph6(g: Graph) -> str:
    G = nx.Graph()
    G.add_nodes_from(range(g.vertex_count))
    G.add_edges_from(g.edges)
    return nx.to_graph6_bytes(G, nodes=list(range(g.vertex_count)), header=False).decode('ascii').strip()


def write_graph6(graphs, fh: IO[str]) -> None:
    for g in graphs:
        fh.write(graph_to_graph6(g) + '\n')


#####################################################
# JSON
def _json_load(fh: IO[str]):
    try:
        return json.load(fh)
    except json.JSONDecodeError as exc:
        raise FormatError(exc.msg, exc.lineno) from exc


def _require(obj: dict, *keys):
    if not isinstance(obj, dict):
        raise FormatError('expected a JSON object')
    missing = [k for k in keys if k not in obj]
    if missing:
        raise FormatError(f'missing keys: {", ".join(missing)}')


def _integer(value, what: str) -> int:
    try:
        return int(value)
    except (TypeError, ValueError) as exc:
        raise FormatError(f'{what} must be an integer, got {value!r}') from exc


def graph_to_json(g: Graph) -> dict:
    out = {'n': g.vertex_count, 'edges': [list(e) for e in g.edges]}
    if g.labels is not None:
        out['labels'] = list(g.labels)
    return out


def graph_from_json(obj: dict) -> Graph:
    _require(obj, 'n', 'edges')
    try:
        edges = tuple((int(u), int(v)) for u, v in obj['edges'])
    except (TypeError, ValueError) as exc:
        raise FormatError(f'edges must be pairs of integers: {exc}') from exc
    labels = obj.get('labels')
    if labels is not None and not isinstance(labels, list):
        raise FormatError('labels must be a list')
    labels = tuple(labels) if labels is not None else None
    return Graph(_integer(obj['n'], 'n'), edges, labels=labels)


def uncovering_to_json(u: Uncovering) -> dict:
    out = graph_to_json(u.graph)
    out.update({'t': u.t,
                'trees': [list(tree.edges.ids) for tree in u.trees],
                'provenance': u.provenance})
    return out


def uncovering_from_json(obj: dict, graph: Optional[Graph] = None) -> Uncovering:
    """Rebuild an Uncovering; with `graph`, trees are carried onto its edge ids by endpoints."""
    _require(obj, 'n', 'edges', 't', 'trees')
    own = graph_from_json(obj)
    target = own
    if graph is not None:
        if graph.vertex_count != own.vertex_count or \
                {frozenset(e) for e in graph.edges} != {frozenset(e) for e in own.edges}:
            raise GraphError('uncovering edges do not match the given graph')
        target = graph
    if not isinstance(obj['trees'], list):
        raise FormatError('trees must be a list')
    trees = []
    for ids in obj['trees']:
        if not isinstance(ids, list):
            raise FormatError(f'tree {ids!r} must be a list of edge ids')
        picked = [_integer(e, 'edge id') for e in ids]
        if any(not 0 <= e < own.edge_count for e in picked):
            raise FormatError(f'tree {ids} names an edge id outside 0..{own.edge_count - 1}')
        pairs = [own.edges[e] for e in picked]
        trees.append(SpanningTree(target, target.subset_of_pairs(pairs)))
    return Uncovering(target, _integer(obj['t'], 't'), trees, obj.get('provenance', 'unknown'))


#####################################################
# files
def open_text(path: str, mode: str = 'r') -> IO[str]:
    try:
        return open(path, mode, encoding='utf-8', newline='')
    except OSError as exc:
        raise FormatError(f'cannot open {path}: {exc.strerror}') from exc


def load_graph(path: str) -> Graph:
    """A single graph from a .g6 (first graph) or .json file."""
    if not Config.is_graph_file(os.path.basename(path)):
        raise FormatError(f'{path}: expected a .g6 or .json graph file')
    with open_text(path) as fh:
        if path.lower().endswith('.json'):
            return graph_from_json(_json_load(fh))
        for _, g in read_graph6(fh):
            return g
    raise FormatError(f'{path}: no graph found')


def load_graphs(path: str) -> Iterator[tuple]:
    with open_text(path) as fh:
        yield from read_graph6(fh)


def load_uncovering(path: str, graph: Optional[Graph] = None) -> Uncovering:
    with open_text(path) as fh:
        return uncovering_from_json(_json_load(fh), graph)


def dump_json(obj, path: Optional[str] = None) -> None:
    text = json.dumps(obj, sort_keys=True)
    if path is None or path == '-':
        print(text)
        return
    with open_text(path, 'w') as fh:
        fh.write(text + '\n')
    logger.info('wrote %s', path)
