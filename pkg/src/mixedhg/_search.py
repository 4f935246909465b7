"""Backtracking core shared by the counting and streaming search paths.

Vertices are assigned classes depth-first in a fixed order; position ``d``
may take any class index up to one past the maximum used so far, so the walk
visits each canonical (restricted-growth) partition exactly once with no
symmetry factor.  Every edge is checked once per branch, at the moment its
highest-ordered vertex receives a class, and the branch is abandoned on a
violated edge.  That check is sound and complete: a C-edge can only become
polychromatic, and a D-edge monochromatic, once fully assigned.
"""

from __future__ import annotations

import numpy as np

from .core import C_FLAG, D_FLAG, InputError, MixedHypergraph

try:  # pragma: no cover - exercised implicitly by every search call
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    njit = None
    HAVE_NUMBA = False


def _maybe_jit(fn):
    if njit is None:
        return fn
    return njit(cache=True, nogil=True)(fn)


class SearchProblem:
    """Instance compiled to flat arrays under one vertex order.

    ``order[pos]`` is the original vertex searched at position ``pos``.
    Edges are deduplicated across the two families and bucketed by the
    position of their last vertex in search order.
    """

    def __init__(self, h: MixedHypergraph, order: tuple[int, ...]):
        n = h.n
        if tuple(sorted(order)) != tuple(range(n)):
            raise InputError("vertex_order must be a permutation of the vertices")
        pos = [0] * n
        for p, v in enumerate(order):
            pos[v] = p

        flags: dict[tuple[int, ...], int] = {}
        for e in h.c_edges:
            key = tuple(sorted(pos[v] for v in e))
            flags[key] = flags.get(key, 0) | C_FLAG
        for e in h.d_edges:
            key = tuple(sorted(pos[v] for v in e))
            flags[key] = flags.get(key, 0) | D_FLAG
        edges = sorted(flags.items(), key=lambda item: (item[0][-1], item[0]))

        self.n = n
        self.order = tuple(order)
        # Python-side buckets: per position, (vertex-positions, flags) pairs.
        self.buckets: list[list[tuple[tuple[int, ...], int]]] = [
            [] for _ in range(n)
        ]
        for key, fl in edges:
            self.buckets[key[-1]].append((key, fl))

        # Flat arrays for the compiled kernel.
        self.edge_vertices = np.array(
            [v for key, _ in edges for v in key], dtype=np.int32
        )
        starts = [0]
        for key, _ in edges:
            starts.append(starts[-1] + len(key))
        self.edge_starts = np.array(starts, dtype=np.int32)
        self.edge_flags = np.array([fl for _, fl in edges], dtype=np.int32)
        bucket_edges: list[int] = []
        bucket_starts = [0]
        by_last: list[list[int]] = [[] for _ in range(n)]
        for idx, (key, _) in enumerate(edges):
            by_last[key[-1]].append(idx)
        for p in range(n):
            bucket_edges.extend(by_last[p])
            bucket_starts.append(len(bucket_edges))
        self.bucket_edges = np.array(bucket_edges, dtype=np.int32)
        self.bucket_starts = np.array(bucket_starts, dtype=np.int32)

    def violated_at(self, assign: list[int], d: int) -> bool:
        """Check the edges ending at position ``d`` against a partial assignment."""
        for verts, fl in self.buckets[d]:
            if fl & D_FLAG:
                c0 = assign[verts[0]]
                if all(assign[v] == c0 for v in verts[1:]):
                    return True
            if fl & C_FLAG:
                seen = set()
                poly = True
                for v in verts:
                    c = assign[v]
                    if c in seen:
                        poly = False
                        break
                    seen.add(c)
                if poly:
                    return True
        return False


def iter_assignments(
    problem: SearchProblem,
    max_classes: int,
    depth: int | None = None,
    prefix: tuple[int, ...] = (),
):
    """Yield valid class assignments of length ``depth`` in lexicographic order.

    ``prefix`` pins the first positions (assumed already consistent); the
    default depth is the full vertex count, i.e. complete strict colorings.
    """
    n = problem.n
    stop = n if depth is None else depth
    p0 = len(prefix)
    assign = list(prefix) + [0] * (n - p0)
    maxc = [-1] * (stop + 1)
    for i in range(p0):
        maxc[i + 1] = max(maxc[i], assign[i])
    if p0 >= stop:
        if p0:
            yield tuple(assign[:stop])
        return
    nxt = [0] * (stop + 1)
    d = p0
    while d >= p0:
        if d == stop:
            yield tuple(assign[:stop])
            d -= 1
            continue
        c = nxt[d]
        cap = min(maxc[d] + 1, max_classes - 1)
        if c > cap:
            nxt[d] = 0
            d -= 1
            continue
        nxt[d] = c + 1
        assign[d] = c
        if not problem.violated_at(assign, d):
            maxc[d + 1] = max(maxc[d], c)
            d += 1
            nxt[d] = 0


def _dfs_count(
    n,
    edge_vertices,
    edge_starts,
    edge_flags,
    bucket_edges,
    bucket_starts,
    prefix,
    max_classes,
    limit,
    counts,
    witness,
    witness_found,
):
    """Count strict partitions per class count below one search prefix.

    Accumulates into ``counts`` (indexed by k) and records the first complete
    assignment found per k.  Returns 1 and stops as soon as some ``counts[k]``
    reaches ``limit`` (0 disables the limit).
    """
    p0 = prefix.shape[0]
    assign = np.empty(n, np.int32)
    for i in range(p0):
        assign[i] = prefix[i]
    maxc = np.empty(n + 1, np.int32)
    maxc[0] = -1
    for i in range(p0):
        m = maxc[i]
        if assign[i] > m:
            m = assign[i]
        maxc[i + 1] = m
    nxt = np.zeros(n + 1, np.int32)
    d = p0
    if d == n:
        k = maxc[n] + 1
        counts[k] += 1
        if witness_found[k] == 0:
            witness_found[k] = 1
            for i in range(n):
                witness[k, i] = assign[i]
        if limit > 0 and counts[k] >= limit:
            return 1
        return 0
    while d >= p0:
        if d == n:
            k = maxc[n] + 1
            counts[k] += 1
            if witness_found[k] == 0:
                witness_found[k] = 1
                for i in range(n):
                    witness[k, i] = assign[i]
            if limit > 0 and counts[k] >= limit:
                return 1
            d -= 1
            continue
        c = nxt[d]
        cap = maxc[d] + 1
        if cap > max_classes - 1:
            cap = max_classes - 1
        if c > cap:
            nxt[d] = 0
            d -= 1
            continue
        nxt[d] = c + 1
        assign[d] = c
        ok = True
        for bi in range(bucket_starts[d], bucket_starts[d + 1]):
            e = bucket_edges[bi]
            s = edge_starts[e]
            t = edge_starts[e + 1]
            fl = edge_flags[e]
            if fl & 2:
                mono = True
                c0 = assign[edge_vertices[s]]
                for j in range(s + 1, t):
                    if assign[edge_vertices[j]] != c0:
                        mono = False
                        break
                if mono:
                    ok = False
                    break
            if fl & 1:
                poly = True
                for a in range(s, t - 1):
                    ca = assign[edge_vertices[a]]
                    stop_scan = False
                    for b in range(a + 1, t):
                        if ca == assign[edge_vertices[b]]:
                            poly = False
                            stop_scan = True
                            break
                    if stop_scan:
                        break
                if poly:
                    ok = False
                    break
        if ok:
            m = maxc[d]
            if c > m:
                m = c
            maxc[d + 1] = m
            d += 1
            nxt[d] = 0
    return 0


dfs_count = _maybe_jit(_dfs_count)


def run_job(
    problem: SearchProblem,
    prefix: tuple[int, ...],
    max_classes: int,
    limit: int,
):
    """Run one kernel job; returns (counts, witnesses, witness_found, truncated)."""
    n = problem.n
    counts = np.zeros(n + 1, np.int64)
    witness = np.full((n + 1, n), -1, np.int32)
    witness_found = np.zeros(n + 1, np.uint8)
    truncated = dfs_count(
        n,
        problem.edge_vertices,
        problem.edge_starts,
        problem.edge_flags,
        problem.bucket_edges,
        problem.bucket_starts,
        np.array(prefix, dtype=np.int32),
        max_classes,
        limit,
        counts,
        witness,
        witness_found,
    )
    return counts, witness, witness_found, bool(truncated)
