"""Edge-failure broadcast harness.

Each trial removes a set of edges, picks the lowest-indexed tree of the
uncovering that survived, and broadcasts over it from the root.
"""
from __future__ import annotations

import csv
import json
import logging
from collections import Counter
from dataclasses import dataclass, field
from typing import Optional, Union

import networkx as nx
import numpy as np
from tqdm import tqdm

from uncoverings.config import Config
from uncoverings.connectivity import edge_connectivity, enumerate_min_cuts, min_edge_cut
from uncoverings.construct import Uncovering
from uncoverings.errors import GraphError, PreconditionViolation, ResourceLimitExceeded
from uncoverings.graph import EdgeSubset, Graph, is_connected
from uncoverings.verify import EXHAUSTIVE, find_uncovered

logger = logging.getLogger(__name__)

FAILURE_MODELS = ('uniform-random', 'min-cut-adversarial')


@dataclass(frozen=True)
class SimConfig:
    root: int = 0
    trials: int = 1000
    failure_size: Union[int, tuple] = 0
    seed: int = Config.SEED
    failure_model: str = 'uniform-random'

    def __post_init__(self):
        if isinstance(self.failure_size, (tuple, list)):
            lo, hi = self.failure_size
            object.__setattr__(self, 'failure_size', (int(lo), int(hi)))
            if not 0 <= lo <= hi:
                raise GraphError(f'failure size range {lo}..{hi} is empty or negative')
        elif self.failure_size < 0:
            raise GraphError('failure_size must be non-negative')
        if self.failure_model not in FAILURE_MODELS:
            raise GraphError(f'unknown failure model {self.failure_model!r}')
        if self.trials < 0:
            raise GraphError('trials must be non-negative')
        if not 0 <= self.seed < 1 << 64:
            raise GraphError('seed must fit in 64 unsigned bits')

    @property
    def max_failures(self) -> int:
        return self.failure_size[1] if isinstance(self.failure_size, tuple) else self.failure_size


@dataclass(frozen=True)
class TrialRecord:
    trial: int
    failures: tuple
    tree: Optional[int]
    depth: Optional[int]
    messages: int
    residual_connected: bool

    def to_json(self) -> dict:
        return {'trial': self.trial, 'failures': list(self.failures), 'tree': self.tree,
                'depth': self.depth, 'messages': self.messages,
                'residual_connected': self.residual_connected}


@dataclass(frozen=True)
class SimStats:
    records: tuple
    tree_count: int
    histogram: dict = field(default_factory=dict)

    @property
    def trials(self) -> int:
        return len(self.records)

    @property
    def successes(self) -> int:
        return sum(1 for r in self.records if r.tree is not None)

    @property
    def success_rate(self) -> float:
        return self.successes / self.trials if self.records else 1.0

    def to_json(self, records: bool = True) -> dict:
        out = {'trials': self.trials, 'successes': self.successes,
               'success_rate': self.success_rate, 'tree_count': self.tree_count,
               'histogram': {str(k): v for k, v in self.histogram.items()}}
        if records:
            out['records'] = [r.to_json() for r in self.records]
        return out

    def dumps(self, records: bool = True) -> str:
        return json.dumps(self.to_json(records), sort_keys=True)


#####################################################
def broadcast_depth(g: Graph, tree_mask: int, root: int) -> int:
    """Eccentricity of root in the tree: the number of rounds a broadcast takes."""
    T = nx.Graph()
    T.add_nodes_from(range(g.vertex_count))
    T.add_edges_from(g.edges[e] for e in EdgeSubset(tree_mask, g.edge_count))
    return max(nx.single_source_shortest_path_length(T, root).values())


class _FailureDrawer:
    def __init__(self, g: Graph, model: str):
        self.g = g
        self.model = model
        self._cuts = None

    @property
    def cuts(self) -> list:
        if self._cuts is None:
            lam = edge_connectivity(self.g)
            if lam == 0:
                raise GraphError('adversarial failures need a connected graph')
            cuts = None
            if lam <= 4:
                try:
                    cuts = enumerate_min_cuts(self.g, Config.MIN_CUT_ENUM_LIMIT)
                except ResourceLimitExceeded as exc:
                    logger.info('falling back to a single min cut: %s', exc)
            self._cuts = [np.array(c.ids, dtype=np.int64) for c in (cuts or [min_edge_cut(self.g)])]
            logger.debug('adversary draws from %d minimum cuts', len(self._cuts))
        return self._cuts

    def draw(self, rng: np.random.Generator, size: int) -> np.ndarray:
        E = self.g.edge_count
        if self.model == 'uniform-random':
            return rng.choice(E, size=size, replace=False)
        cut = self.cuts[int(rng.integers(len(self.cuts)))]
        if size <= len(cut):
            return rng.choice(cut, size=size, replace=False)
        rest = np.setdiff1d(np.arange(E), cut)
        return np.concatenate([cut, rng.choice(rest, size=size - len(cut), replace=False)])


def simulate(g: Graph, u: Uncovering, cfg: SimConfig, progress: bool = False) -> SimStats:
    if u.graph != g:
        raise GraphError('uncovering belongs to another graph')
    if not 0 <= cfg.root < g.vertex_count:
        raise GraphError(f'root {cfg.root} outside 0..{g.vertex_count - 1}')
    if cfg.max_failures > g.edge_count:
        raise GraphError(f'cannot fail {cfg.max_failures} of {g.edge_count} edges')
    masks = u.masks
    drawer = _FailureDrawer(g, cfg.failure_model)
    depths = {}
    records = []
    usage = Counter()
    for trial in tqdm(range(cfg.trials), disable=not progress, unit='trial'):
        rng = np.random.default_rng(np.random.SeedSequence([cfg.seed, trial]))
        if isinstance(cfg.failure_size, tuple):
            size = int(rng.integers(cfg.failure_size[0], cfg.failure_size[1] + 1))
        else:
            size = cfg.failure_size
        failures = tuple(sorted(int(e) for e in drawer.draw(rng, size)))
        failed = g.subset(failures)
        chosen = next((i for i, m in enumerate(masks) if not m & failed.mask), None)
        depth = None
        messages = 0
        if chosen is not None:
            if chosen not in depths:
                depths[chosen] = broadcast_depth(g, masks[chosen], cfg.root)
            depth = depths[chosen]
            messages = g.vertex_count - 1
        usage['none' if chosen is None else chosen] += 1
        records.append(TrialRecord(trial, failures, chosen, depth, messages,
                                   is_connected(g, failed)))
    histogram = {i: usage.get(i, 0) for i in range(len(masks))}
    histogram['none'] = usage.get('none', 0)
    stats = SimStats(tuple(records), len(masks), histogram)
    logger.info('%d trials, success rate %.4f', stats.trials, stats.success_rate)
    return stats


def worst_case_failures(g: Graph, u: Uncovering, size: int) -> Optional[EdgeSubset]:
    """Colex-least set of `size` edges meeting every tree, or None if none exists."""
    if size < 1:
        raise PreconditionViolation('failure set size must be at least 1')
    if u.graph != g:
        raise GraphError('uncovering belongs to another graph')
    return find_uncovered(g, u.masks, size, EXHAUSTIVE).witness


def write_trials_csv(stats: SimStats, fh) -> None:
    writer = csv.writer(fh, lineterminator='\n')
    writer.writerow(['trial', 'failures', 'tree', 'depth', 'messages', 'residual_connected'])
    for r in stats.records:
        writer.writerow([r.trial, ' '.join(map(str, r.failures)),
                         '' if r.tree is None else r.tree,
                         '' if r.depth is None else r.depth, r.messages, r.residual_connected])
