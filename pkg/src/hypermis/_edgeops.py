"""Vectorized edge-list kernels used by the round-based solvers.

Edges live in a padded (m, w) int64 matrix: row i holds the ids of edge i
sorted ascending in its first sizes[i] columns, padded with 0 (ids are
1-based, so 0 never collides).  All kernels keep rows sorted and return
fresh arrays; nothing is mutated in place across round boundaries.

Subset keys are bit-packed into uint64 words when the ids fit; otherwise
the kernels fall back to plain Python sets, which is only ever exercised
on tiny instances.
"""

from __future__ import annotations

from itertools import combinations

import numpy as np

from .core import deg_less


def edge_matrix(edges) -> tuple[np.ndarray, np.ndarray]:
    m = len(edges)
    w = max((len(e) for e in edges), default=1)
    mat = np.zeros((m, w), dtype=np.int64)
    sizes = np.zeros(m, dtype=np.int64)
    for i, e in enumerate(edges):
        sizes[i] = len(e)
        mat[i, : len(e)] = e
    return mat, sizes


def matrix_to_edges(mat: np.ndarray, sizes: np.ndarray) -> list[tuple[int, ...]]:
    return [tuple(int(v) for v in mat[i, : sizes[i]]) for i in range(len(sizes))]


def valid_mask(mat: np.ndarray, sizes: np.ndarray) -> np.ndarray:
    cols = np.arange(mat.shape[1], dtype=np.int64)
    return cols[None, :] < sizes[:, None]


def remove_vertices(
    mat: np.ndarray, sizes: np.ndarray, gone: np.ndarray
) -> tuple[np.ndarray, np.ndarray]:
    """Delete every id with gone[id] True from every row.

    Rows stay sorted (stable compaction); width shrinks to the new
    maximum size.  Rows may end up empty: callers decide whether that is
    legal.
    """
    if mat.shape[0] == 0:
        return mat, sizes
    keep = valid_mask(mat, sizes) & ~gone[mat]
    new_sizes = keep.sum(axis=1).astype(np.int64)
    order = np.argsort(~keep, axis=1, kind="stable")
    out = np.take_along_axis(mat, order, axis=1)
    out[~valid_mask(out, new_sizes)] = 0
    w = int(new_sizes.max()) if len(new_sizes) else 1
    return out[:, : max(w, 1)], new_sizes


def drop_rows(mat, sizes, mask):
    return mat[~mask], sizes[~mask]


def dedupe_rows(mat: np.ndarray, sizes: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Remove duplicate edges (rows are sorted+padded, so row equality is
    set equality).  Row order is not preserved; edge order never carries
    meaning here."""
    if mat.shape[0] <= 1:
        return mat, sizes
    uniq, idx = np.unique(mat, axis=0, return_index=True)
    return uniq, sizes[idx]


def _packable(max_subset: int, n: int) -> bool:
    return max_subset * max(n.bit_length(), 1) <= 63


def _pack_combos(rows: np.ndarray, s: int, t: int, bits: int) -> np.ndarray:
    """uint64 keys of all t-subsets of each size-s row; shape (C(s,t)*m,)."""
    keys = []
    shift = np.uint64(bits)
    for combo in combinations(range(s), t):
        k = rows[:, combo[0]].astype(np.uint64)
        for c in combo[1:]:
            k = (k << shift) | rows[:, c].astype(np.uint64)
        keys.append(k)
    return np.concatenate(keys) if keys else np.empty(0, dtype=np.uint64)


def prune_supersets(
    mat: np.ndarray, sizes: np.ndarray, n: int
) -> tuple[np.ndarray, np.ndarray]:
    """Remove every row that strictly contains another row.

    Assumes rows are deduplicated.  Mirrors the cleanup semantics of
    :func:`hypermis.core.normalize` on the array representation.
    """
    m = mat.shape[0]
    if m <= 1:
        return mat, sizes
    present = sorted(set(int(s) for s in sizes))
    if len(present) == 1:
        return mat, sizes  # equal sizes cannot nest strictly
    bits = max(n.bit_length(), 1)
    if not _packable(present[-1] - 1, n):
        return _prune_supersets_py(mat, sizes)
    keys_by_size: dict[int, np.ndarray] = {}
    for s in present[:-1]:
        rows = mat[sizes == s]
        keys_by_size[s] = np.sort(_pack_combos(rows, s, s, bits))
    doomed = np.zeros(m, dtype=bool)
    for s in present[1:]:
        sel = sizes == s
        rows = mat[sel]
        if rows.shape[0] == 0:
            continue
        hit = np.zeros(rows.shape[0], dtype=bool)
        for t in present:
            if t >= s:
                break
            combo_keys = _pack_combos(rows, s, t, bits).reshape(-1, rows.shape[0])
            hit |= np.isin(combo_keys, keys_by_size[t]).any(axis=0)
        doomed[sel] = hit
    return drop_rows(mat, sizes, doomed)


def _prune_supersets_py(mat, sizes):
    edges = matrix_to_edges(mat, sizes)
    smaller: dict[int, set] = {}
    for e in edges:
        smaller.setdefault(len(e), set()).add(e)
    present = sorted(smaller)
    doomed = np.zeros(len(edges), dtype=bool)
    for i, e in enumerate(edges):
        for t in present:
            if t >= len(e):
                break
            if any(sub in smaller[t] for sub in combinations(e, t)):
                doomed[i] = True
                break
    return drop_rows(mat, sizes, doomed)


def max_norm_degree(
    mat: np.ndarray, sizes: np.ndarray, n: int
) -> tuple[int, int] | None:
    """Best (count, j) pair over all subset degrees, None if no edge of
    size >= 2 exists.

    count is the number of size-s edges sharing some subset x of size
    s - j; the normalized degree it encodes is count^(1/j).  Candidates
    are compared exactly with :func:`hypermis.core.deg_less`.
    """
    best: tuple[int, int] | None = None
    present = sorted(set(int(s) for s in sizes if s >= 2))
    if not present:
        return None
    bits = max(n.bit_length(), 1)
    use_np = _packable(present[-1] - 1, n)
    for s in present:
        rows = mat[sizes == s]
        for t in range(1, s):
            if use_np:
                keys = _pack_combos(rows, s, t, bits)
                _, counts = np.unique(keys, return_counts=True)
                c = int(counts.max())
            else:
                tally: dict[tuple, int] = {}
                for row in rows:
                    for x in combinations(row[:s], t):
                        key = tuple(int(v) for v in x)
                        tally[key] = tally.get(key, 0) + 1
                c = max(tally.values())
            pair = (c, s - t)
            if best is None or deg_less(best, pair):
                best = pair
    return best


def degree_value(pair: tuple[int, int] | None) -> float:
    """Float value of a (count, j) degree pair; 1.0 when undefined.

    The 1.0 convention keeps marking probabilities well-defined on
    hypergraphs whose only edges are singletons (those die in the same
    round's cleanup regardless of the coin flips).
    """
    if pair is None:
        return 1.0
    return float(pair[0]) ** (1.0 / pair[1])
