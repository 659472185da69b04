"""Minimum UBBs as set cover over the dual covering formulation, and the conjecture scanner.

Elements are the t-subsets of E (by colex rank); tree T covers every t-subset
of its complement. Coverage is held as a boolean (trees x subsets) matrix.
"""
from __future__ import annotations

import csv
import itertools
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, fields
from math import comb
from typing import Iterable, Iterator, Optional

import numpy as np
from tqdm import tqdm

from uncoverings.config import Config
from uncoverings.connectivity import edge_connectivity
from uncoverings.construct import Uncovering, recognise_families
from uncoverings.errors import (ConstructionError, PreconditionViolation,
                                ResourceLimitExceeded, UncoveringError)
from uncoverings.graph import Graph, is_connected
from uncoverings.trees import count_spanning_trees, enumerate_spanning_trees, pool_order_key
from uncoverings.utils import binomial_table, colex_ranks
from uncoverings.verify import EXHAUSTIVE, Sampled, schonheim_bound, verify_ubb

logger = logging.getLogger(__name__)


class _BudgetExhausted(Exception):
    pass


class _LowerBoundMet(Exception):
    pass


@dataclass(frozen=True)
class ExactResult:
    size: int
    uncovering: Uncovering
    optimal: bool
    nodes: int


#####################################################
class CoverInstance:
    """The spanning trees of g and the t-subsets each one avoids.

    Tree indices follow pool_order_key: fewest leaves first, then Prufer code.
    """

    def __init__(self, g: Graph, t: int, cap: Optional[int] = None,
                 subset_cap: Optional[int] = None, progress: bool = False):
        cap = Config.TREE_POOL_CAP if cap is None else cap
        subset_cap = Config.SEARCH_SUBSET_CAP if subset_cap is None else subset_cap
        lam = edge_connectivity(g)
        if t >= lam:
            raise PreconditionViolation(f'no {t}-UBB exists: edge connectivity is {lam}')
        tree_count = count_spanning_trees(g)
        if tree_count > cap:
            raise ResourceLimitExceeded('spanning tree pool', cap, tree_count)
        self.g = g
        self.t = t
        self.universe = comb(g.edge_count, t)
        if tree_count * self.universe > subset_cap:
            raise ResourceLimitExceeded('set cover matrix cells', subset_cap,
                                        tree_count * self.universe)
        self.per_tree = comb(g.edge_count - g.vertex_count + 1, t)
        pool = tqdm(enumerate_spanning_trees(g, cap), total=tree_count,
                    disable=not progress, unit='tree')
        self.trees = sorted(pool, key=pool_order_key)
        table = binomial_table(g.edge_count, t)
        self.M = np.zeros((len(self.trees), self.universe), dtype=bool)
        for i, tree in enumerate(self.trees):
            rest = tree.edges.complement().ids
            combos = np.array(list(itertools.combinations(rest, t)), dtype=np.int64)
            combos = combos.reshape(-1, t) if t else np.zeros((1, 0), dtype=np.int64)
            self.M[i, colex_ranks(combos, table)] = True
        logger.debug('cover instance: %d trees, %d subsets of size %d',
                     len(self.trees), self.universe, t)

    def uncovering(self, indices: Iterable[int], provenance: str) -> Uncovering:
        return Uncovering(self.g, self.t, [self.trees[i] for i in sorted(indices)], provenance)

    def greedy(self) -> list:
        uncovered = np.ones(self.universe, dtype=bool)
        chosen = []
        while uncovered.any():
            gains = self.M[:, uncovered].sum(axis=1)
            best = int(np.argmax(gains))
            if gains[best] == 0:
                raise ConstructionError('some t-subset meets every spanning tree')
            chosen.append(best)
            uncovered &= ~self.M[best]
        return sorted(chosen)

    def lower_bound(self) -> int:
        g = self.g
        try:
            return schonheim_bound(g.edge_count, g.vertex_count - 1, self.t)
        except PreconditionViolation:
            return 1

    def branch_and_bound(self, incumbent: list, budget: int) -> tuple:
        """Smallest cover found within `budget` nodes: (indices, optimal, nodes)."""
        lower = self.lower_bound()
        best = list(incumbent)
        nodes = 0
        if len(best) <= lower:
            return best, True, nodes

        def explore(uncovered, allowed, chosen):
            nonlocal best, nodes
            nodes += 1
            if nodes > budget:
                raise _BudgetExhausted
            remaining = int(uncovered.sum())
            if remaining == 0:
                if len(chosen) < len(best):
                    best = sorted(chosen)
                    logger.debug('incumbent improved to %d after %d nodes', len(best), nodes)
                    if len(best) <= lower:
                        raise _LowerBoundMet
                return
            if len(chosen) + -(-remaining // self.per_tree) >= len(best):
                return
            open_cols = np.flatnonzero(uncovered)
            sub = self.M[:, open_cols] & allowed[:, None]
            counts = sub.sum(axis=0)
            pick = int(np.argmin(counts))
            if counts[pick] == 0:
                return
            candidates = np.flatnonzero(sub[:, pick])
            gains = sub[candidates].sum(axis=1)
            order = candidates[np.lexsort((candidates, -gains))]
            allowed = allowed.copy()
            for i in order:
                explore(uncovered & ~self.M[i], allowed, chosen + [int(i)])
                allowed[i] = False

        try:
            explore(np.ones(self.universe, dtype=bool),
                    np.ones(len(self.trees), dtype=bool), [])
        except _BudgetExhausted:
            return best, False, budget
        except _LowerBoundMet:
            return best, True, nodes
        return best, True, nodes


#####################################################
def greedy_min_ubb(g: Graph, t: int, cap: Optional[int] = None,
                   subset_cap: Optional[int] = None, progress: bool = False) -> Uncovering:
    """Greedy set cover; ties go to the lowest pool index. Trees come out in index order."""
    inst = CoverInstance(g, t, cap, subset_cap, progress)
    return inst.uncovering(inst.greedy(), 'greedy')


def exact_min_ubb(g: Graph, t: int, budget: Optional[int] = None, cap: Optional[int] = None,
                  subset_cap: Optional[int] = None, progress: bool = False) -> ExactResult:
    """Branch and bound from the greedy incumbent, stopping early at the Schonheim bound.

    A run that exhausts the node budget returns the incumbent with optimal=False.
    """
    budget = Config.EXACT_BUDGET if budget is None else budget
    inst = CoverInstance(g, t, cap, subset_cap, progress)
    chosen, optimal, nodes = inst.branch_and_bound(inst.greedy(), budget)
    u = inst.uncovering(chosen, 'exact' if optimal else 'branch-and-bound-incumbent')
    logger.info('exact search: size %d, optimal=%s, %d nodes', len(u), optimal, nodes)
    return ExactResult(len(u), u, optimal, nodes)


#####################################################
@dataclass
class ScanRow:
    graph_id: str
    n: int
    edges: int
    lam: Optional[int] = None
    t: Optional[int] = None
    constructed: Optional[int] = None
    greedy: Optional[int] = None
    exact: Optional[int] = None
    exact_optimal: Optional[bool] = None
    ubb_size: Optional[int] = None
    verified: str = ''
    conjecture_holds: Optional[bool] = None
    attains_edge_count: Optional[bool] = None
    status: str = 'ok'
    note: str = ''
    uncovering: Optional[Uncovering] = field(default=None, repr=False, compare=False)

    @classmethod
    def columns(cls) -> list:
        return [f.name for f in fields(cls) if f.name != 'uncovering']

    def to_csv_row(self) -> dict:
        values = ((name, getattr(self, name)) for name in self.columns())
        return {k: '' if v is None else v for k, v in values}


def scan_graph(graph_id: str, g: Graph, budget: Optional[int] = None) -> ScanRow:
    row = ScanRow(str(graph_id), g.vertex_count, g.edge_count)
    if not is_connected(g):
        row.status, row.note = 'skipped', 'disconnected'
        return row
    lam = edge_connectivity(g)
    row.lam = lam
    if lam < 2:
        row.status, row.note = 'skipped', 'edge connectivity below 2'
        return row
    t = row.t = lam - 1
    budget = Config.EXACT_BUDGET if budget is None else budget
    notes = []
    candidates = []
    try:
        built = [u for u in recognise_families(g) if u.t == t]
        if built:
            smallest = min(built, key=len)
            row.constructed = len(smallest)
            candidates.append(smallest)

        try:
            inst = CoverInstance(g, t)
        except ResourceLimitExceeded as exc:
            inst = None
            notes.append(f'construction sizes only ({exc})')
        if inst is not None:
            greedy = inst.greedy()
            row.greedy = len(greedy)
            candidates.append(inst.uncovering(greedy, 'greedy'))
            if budget > 0:
                chosen, optimal, nodes = inst.branch_and_bound(greedy, budget)
                row.exact, row.exact_optimal = len(chosen), optimal
                candidates.append(inst.uncovering(chosen, 'exact' if optimal else 'branch-and-bound-incumbent'))
                if not optimal:
                    notes.append(f'exact budget of {budget} nodes exhausted')

        if not candidates:
            row.status = 'inconclusive'
            row.note = '; '.join(notes)
            return row
        best = min(candidates, key=len)
        try:
            verdict = verify_ubb(g, best, EXHAUSTIVE)
            row.verified = 'exhaustive' if verdict.ok else 'failed'
        except ResourceLimitExceeded:
            verdict = verify_ubb(g, best, Sampled(Config.SAMPLE_COUNT, Config.SEED))
            row.verified = 'sampled' if verdict.ok else 'failed'
        if not verdict.ok:
            raise ConstructionError(f'{best.provenance} UBB fails verification at '
                                    f'{list(verdict.witness.ids)}')
        row.ubb_size = len(best)
        row.uncovering = best
        row.conjecture_holds = len(best) <= g.edge_count
        row.attains_edge_count = bool(row.exact_optimal) and row.exact == g.edge_count
        if not row.conjecture_holds:
            row.status = 'counterexample-candidate' if row.exact_optimal else 'inconclusive'
    except UncoveringError as exc:
        row.status = 'error'
        notes.append(str(exc))
    row.note = '; '.join(notes)
    return row


def conjecture_scan(graphs: Iterable, budget: Optional[int] = None,
                    threads: Optional[int] = None, progress: bool = False) -> Iterator[ScanRow]:
    """Scan rows in input order. Items are graphs or (graph_id, graph) pairs."""
    threads = max(1, threads or Config.THREADS)

    def keyed():
        for i, item in enumerate(graphs, 1):
            yield item if isinstance(item, tuple) else (str(i), item)

    def one(item):
        graph_id, g = item
        row = scan_graph(graph_id, g, budget)
        logger.info('graph %s: %s %s', graph_id, row.status, row.note)
        return row

    bar = tqdm(disable=not progress, unit='graph')
    try:
        if threads == 1:
            for item in keyed():
                bar.update()
                yield one(item)
        else:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                for row in pool.map(one, keyed()):
                    bar.update()
                    yield row
    finally:
        bar.close()


def write_scan_csv(rows: Iterable[ScanRow], fh) -> int:
    writer = csv.DictWriter(fh, fieldnames=ScanRow.columns(), lineterminator='\n')
    writer.writeheader()
    count = 0
    for row in rows:
        writer.writerow(row.to_csv_row())
        count += 1
    return count
