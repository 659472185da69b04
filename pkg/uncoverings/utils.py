"""Integer and packed-uint64 bitset helpers, colex subset streams."""
from __future__ import annotations

import itertools
from math import comb
from typing import Iterable, Iterator

import numpy as np

WORD_BITS = 64
_RANK_CLIP = 1 << 62


def make_mask(indexes: Iterable[int]) -> int:
    value = 0
    for idx in indexes:
        value |= 1 << idx
    return value


def iter_bits(value: int) -> Iterator[int]:
    index = 0
    while value:
        if value & 1:
            yield index
        value >>= 1
        index += 1


def words_for(nbits: int) -> int:
    return max(1, -(-nbits // WORD_BITS))


#####################################################
# packed representation used by the vectorised scans
def pack_masks(masks: Iterable[int], words: int) -> np.ndarray:
    masks = list(masks)
    out = np.zeros((len(masks), words), dtype=np.uint64)
    low = (1 << WORD_BITS) - 1
    for r, m in enumerate(masks):
        for w in range(words):
            out[r, w] = (m >> (WORD_BITS * w)) & low
    return out


def unpack_row(row: np.ndarray) -> int:
    value = 0
    for w, word in enumerate(row):
        value |= int(word) << (WORD_BITS * w)
    return value


def masks_from_combos(combos: np.ndarray, words: int) -> np.ndarray:
    """Turn an (rows, t) array of bit indexes into (rows, words) packed masks."""
    out = np.zeros((combos.shape[0], words), dtype=np.uint64)
    if combos.size == 0:
        return out
    word = combos // WORD_BITS
    bit = np.left_shift(np.uint64(1), (combos % WORD_BITS).astype(np.uint64))
    for w in range(words):
        out[:, w] = np.bitwise_or.reduce(np.where(word == w, bit, np.uint64(0)), axis=1)
    return out


def hits_matrix(subsets: np.ndarray, avoiders: np.ndarray) -> np.ndarray:
    """Boolean (rows, k): does subset r share an element with avoider j."""
    if avoiders.shape[0] == 0:
        return np.zeros((subsets.shape[0], 0), dtype=bool)
    both = subsets[:, None, :] & avoiders[None, :, :]
    return (both != 0).any(axis=2)


#####################################################
# colex order
def colex_chunks(n: int, t: int, chunk_size: int) -> Iterator[tuple[int, np.ndarray]]:
    """Yield (top, combos) batches of the t-subsets of range(n) grouped by top element.

    Groups come in increasing top element, so every subset of an earlier group
    is colex-smaller than every subset of a later one. Inside a group rows are
    in lexicographic order.
    """
    if t == 0:
        yield -1, np.zeros((1, 0), dtype=np.int64)
        return
    for top in range(t - 1, n):
        head = itertools.combinations(range(top), t - 1)
        while True:
            rows = list(itertools.islice(head, chunk_size))
            if not rows:
                break
            block = np.empty((len(rows), t), dtype=np.int64)
            if t > 1:
                block[:, :-1] = np.array(rows, dtype=np.int64)
            block[:, -1] = top
            yield top, block


def binomial_table(n: int, t: int) -> np.ndarray:
    table = np.zeros((n + 1, t + 1), dtype=np.int64)
    for a in range(n + 1):
        for i in range(t + 1):
            table[a, i] = min(comb(a, i), _RANK_CLIP)
    return table


def colex_ranks(combos: np.ndarray, table: np.ndarray) -> np.ndarray:
    """Colex rank sum_i C(a_i, i+1) of each sorted row."""
    ranks = np.zeros(combos.shape[0], dtype=np.int64)
    for i in range(combos.shape[1]):
        ranks += table[combos[:, i], i + 1]
    return ranks


def colex_unrank(rank: int, t: int) -> tuple[int, ...]:
    out = []
    for i in range(t, 0, -1):
        a = i - 1
        while comb(a + 1, i) <= rank:
            a += 1
        out.append(a)
        rank -= comb(a, i)
    return tuple(reversed(out))
