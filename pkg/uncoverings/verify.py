"""UBB verification, minimality certificates, the Schonheim bound and covering duality.

Verification walks the t-subsets of the edge ids in colex order (numeric order
of their bitmasks) and reports the colex-least subset that meets every tree.
Batches of subsets are tested at once as packed uint64 masks.
"""
from __future__ import annotations

import logging
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from math import comb
from typing import Iterable, Optional, Sequence, Union

import numpy as np
from tqdm import tqdm

from uncoverings.config import Config
from uncoverings.connectivity import edge_connectivity
from uncoverings.construct import Uncovering
from uncoverings.errors import GraphError, PreconditionViolation, ResourceLimitExceeded
from uncoverings.graph import EdgeSubset, Graph
from uncoverings.utils import (colex_chunks, hits_matrix, make_mask, masks_from_combos,
                               pack_masks, unpack_row, words_for)

logger = logging.getLogger(__name__)

EXHAUSTIVE = 'exhaustive'


@dataclass(frozen=True)
class Sampled:
    count: int
    seed: int = 0


Mode = Union[str, Sampled]


@dataclass(frozen=True)
class Verdict:
    status: str
    witness: Optional[EdgeSubset]
    subsets_checked: int

    @property
    def ok(self) -> bool:
        return self.status != 'invalid'

    def to_json(self) -> dict:
        return {'status': self.status,
                'witness': list(self.witness.ids) if self.witness is not None else None,
                'subsets_checked': self.subsets_checked}


@dataclass(frozen=True)
class MinimalityReport:
    minimal: bool
    witnesses: tuple

    def to_json(self) -> dict:
        return {'minimal': self.minimal,
                'witnesses': [list(w.ids) if w is not None else None for w in self.witnesses]}


#####################################################
class SubsetScanner:
    """Tests the t-subsets of range(n) against a list of avoider masks.

    A subset is uncovered when it shares an element with every avoider.
    """

    def __init__(self, n: int, avoiders: Sequence[int], t: int,
                 chunk_size: Optional[int] = None, threads: Optional[int] = None,
                 progress: bool = False):
        self.n = n
        self.t = t
        self.k = len(avoiders)
        self.words = words_for(n)
        self.A = pack_masks(avoiders, self.words)
        self.chunk_size = chunk_size or Config.CHUNK_SIZE
        self.threads = max(1, threads or Config.THREADS)
        self.progress = progress

    @property
    def total(self) -> int:
        return comb(self.n, self.t) if 0 <= self.t <= self.n else 0

    def _results(self, fn):
        chunks = colex_chunks(self.n, self.t, self.chunk_size) if self.t <= self.n else iter(())
        if self.threads == 1:
            for top, combos in chunks:
                yield top, combos, fn(combos)
            return
        with ThreadPoolExecutor(max_workers=self.threads) as pool:
            window = deque()
            for top, combos in chunks:
                window.append((top, combos, pool.submit(fn, combos)))
                if len(window) >= 2 * self.threads:
                    top0, combos0, fut = window.popleft()
                    yield top0, combos0, fut.result()
            while window:
                top0, combos0, fut = window.popleft()
                yield top0, combos0, fut.result()

    def _uncovered(self, combos: np.ndarray) -> Optional[int]:
        S = masks_from_combos(combos, self.words)
        bad = hits_matrix(S, self.A).all(axis=1)
        if not bad.any():
            return None
        return min(unpack_row(S[i]) for i in np.flatnonzero(bad))

    def _owners(self, combos: np.ndarray) -> tuple:
        S = masks_from_combos(combos, self.words)
        disjoint = ~hits_matrix(S, self.A)
        counts = disjoint.sum(axis=1)
        bad = np.flatnonzero(counts == 0)
        uncovered = min((unpack_row(S[i]) for i in bad), default=None)
        owners = {}
        for i in np.flatnonzero(counts == 1):
            j = int(disjoint[i].argmax())
            mask = unpack_row(S[i])
            if j not in owners or mask < owners[j]:
                owners[j] = mask
        return uncovered, owners

    def first_uncovered(self) -> tuple:
        """(colex-least uncovered mask or None, subsets examined)."""
        witness, witness_top, checked = None, None, 0
        with tqdm(total=self.total, disable=not self.progress, unit='subset') as bar:
            for top, combos, found in self._results(self._uncovered):
                if witness is not None and top != witness_top:
                    break
                checked += len(combos)
                bar.update(len(combos))
                if found is not None and (witness is None or found < witness):
                    witness, witness_top = found, top
        return witness, checked

    def unique_owners(self) -> tuple:
        """Per avoider, the colex-least subset disjoint from it alone; plus any uncovered subset."""
        owners, uncovered, checked = {}, None, 0
        with tqdm(total=self.total, disable=not self.progress, unit='subset') as bar:
            for _, combos, (bad, found) in self._results(self._owners):
                checked += len(combos)
                bar.update(len(combos))
                if bad is not None and (uncovered is None or bad < uncovered):
                    uncovered = bad
                for j, mask in found.items():
                    if j not in owners or mask < owners[j]:
                        owners[j] = mask
        return [owners.get(j) for j in range(self.k)], uncovered, checked

    def sample(self, count: int, seed: int) -> tuple:
        if self.t > self.n:
            return None, 0
        rng = np.random.default_rng(seed)
        witness, checked = None, 0
        with tqdm(total=count, disable=not self.progress, unit='sample') as bar:
            while checked < count:
                rows = min(self.chunk_size, count - checked)
                if self.t == 0:
                    combos = np.zeros((rows, 0), dtype=np.int64)
                else:
                    keys = rng.random((rows, self.n))
                    combos = np.sort(np.argpartition(keys, self.t - 1, axis=1)[:, :self.t], axis=1)
                found = self._uncovered(combos)
                if found is not None and (witness is None or found < witness):
                    witness = found
                checked += rows
                bar.update(rows)
        return witness, checked


#####################################################
def find_uncovered(g: Graph, masks: Sequence[int], t: int, mode: Mode = EXHAUSTIVE,
                   ceiling: Optional[int] = None, threads: Optional[int] = None,
                   progress: bool = False) -> Verdict:
    """Verdict for the trees given as masks, without the t < lambda precondition."""
    scanner = SubsetScanner(g.edge_count, masks, t, threads=threads, progress=progress)
    if isinstance(mode, Sampled):
        witness, checked = scanner.sample(mode.count, mode.seed)
        status = 'invalid' if witness is not None else 'sampled-pass'
    elif mode == EXHAUSTIVE:
        ceiling = Config.SUBSET_CEILING if ceiling is None else ceiling
        if scanner.total > ceiling:
            raise ResourceLimitExceeded('exhaustive verification subsets', ceiling, scanner.total)
        witness, checked = scanner.first_uncovered()
        status = 'invalid' if witness is not None else 'valid'
    else:
        raise ValueError(f'unknown verification mode {mode!r}')
    logger.info('checked %d subsets of size %d: %s', checked, t, status)
    witness = EdgeSubset(witness, g.edge_count) if witness is not None else None
    return Verdict(status, witness, checked)


def verify_ubb(g: Graph, u: Uncovering, mode: Mode = EXHAUSTIVE,
               ceiling: Optional[int] = None, threads: Optional[int] = None,
               progress: bool = False) -> Verdict:
    if u.graph != g:
        raise GraphError('uncovering belongs to another graph')
    lam = edge_connectivity(g)
    if u.t >= lam and not (u.t == 0 and lam == 0 and g.vertex_count <= 1):
        raise PreconditionViolation(f'no {u.t}-UBB exists: edge connectivity is {lam}')
    return find_uncovered(g, u.masks, u.t, mode, ceiling, threads, progress)


def is_minimal_ubb(g: Graph, u: Uncovering, ceiling: Optional[int] = None,
                   threads: Optional[int] = None, progress: bool = False) -> MinimalityReport:
    """A tree is necessary iff some t-set is disjoint from it and from no other tree.

    The colex-least such t-set is exactly the witness verify_ubb would report
    for the uncovering with that tree removed.
    """
    if u.graph != g:
        raise GraphError('uncovering belongs to another graph')
    scanner = SubsetScanner(g.edge_count, u.masks, u.t, threads=threads, progress=progress)
    ceiling = Config.SUBSET_CEILING if ceiling is None else ceiling
    if scanner.total > ceiling:
        raise ResourceLimitExceeded('minimality check subsets', ceiling, scanner.total)
    owners, uncovered, _ = scanner.unique_owners()
    if uncovered is not None:
        raise PreconditionViolation('minimality needs a valid uncovering; '
                                    f'{list(EdgeSubset(uncovered, g.edge_count).ids)} meets every tree')
    witnesses = tuple(EdgeSubset(w, g.edge_count) if w is not None else None for w in owners)
    return MinimalityReport(all(w is not None for w in witnesses), witnesses)


#####################################################
def schonheim_bound(n: int, k: int, t: int) -> int:
    """Nested-ceiling lower bound on an (n, k, t)-uncovering, innermost first."""
    if not (n > k >= 1 and 1 <= t <= n - k):
        raise PreconditionViolation(f'Schonheim bound needs n > k >= 1 and 1 <= t <= n-k, '
                                    f'got n={n}, k={k}, t={t}')
    value = 1
    for i in range(t - 1, -1, -1):
        value = -(-(n - i) * value // (n - k - i))
    return value


def export_covering_design(g: Graph, u: Uncovering) -> list:
    return [tree.edges.complement() for tree in u.trees]


def verify_covering(n: int, blocks: Iterable, t: int, ceiling: Optional[int] = None) -> bool:
    """Every t-subset of range(n) lies inside some block."""
    full = (1 << n) - 1
    avoiders = []
    for b in blocks:
        ids = b.ids if isinstance(b, EdgeSubset) else b
        mask = make_mask(ids)
        if mask & ~full:
            raise GraphError(f'block {sorted(ids)} leaves 0..{n - 1}')
        avoiders.append(full & ~mask)
    scanner = SubsetScanner(n, avoiders, t)
    ceiling = Config.SUBSET_CEILING if ceiling is None else ceiling
    if scanner.total > ceiling:
        raise ResourceLimitExceeded('covering verification subsets', ceiling, scanner.total)
    witness, _ = scanner.first_uncovered()
    return witness is None


def is_covering_by_bases(g: Graph, u: Uncovering) -> bool:
    return verify_covering(g.edge_count, [tree.edges for tree in u.trees], u.t)
