"""Strict-coloring enumeration: spectra, feasible sets, one-realization checks.

The search is a depth-first walk over restricted-growth assignments (see
:mod:`mixedhg._search`), so the feasible partitions are counted directly.
Large instances are split into independent subtree jobs below a fixed prefix
depth; jobs are aggregated in lexicographic order, which makes counts, the
truncation point under a per-k limit, and the recorded witnesses identical
for every worker count.
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping

from . import _search
from .core import (
    ChromaticSpectrum,
    InputError,
    LabeledHypergraph,
    MixedHypergraph,
    Partition,
    as_mixed_hypergraph,
    canonical_form,
    spectrum_from_counts,
)

log = logging.getLogger("mixedhg")

# Single-job threshold and the prefix depth used to split bigger searches.
_SPLIT_MIN_N = 14
_SPLIT_DEPTH = 9


@dataclass(frozen=True)
class SearchOptions:
    """Knobs for the enumeration engine.

    ``max_classes`` caps the number of classes considered; ``per_k_count_limit``
    stops the whole search once some class count has been seen that many
    times (the resulting spectrum is flagged inexact and its entries are
    lower bounds, with the triggering entry reported at the limit).
    ``vertex_order`` permutes the search order without affecting which
    partitions exist.  ``emit`` hints whether partitions are streamed or only
    counted; ``workers`` sizes the thread pool for split searches.
    """

    max_classes: int | None = None
    per_k_count_limit: int | None = None
    vertex_order: tuple[int, ...] | None = None
    emit: bool = True
    workers: int = 1

    def __post_init__(self) -> None:
        if self.max_classes is not None and self.max_classes < 1:
            raise InputError("max_classes must be >= 1")
        if self.per_k_count_limit is not None and self.per_k_count_limit < 1:
            raise InputError("per_k_count_limit must be >= 1")
        if self.workers < 1:
            raise InputError("workers must be >= 1")
        if self.vertex_order is not None:
            object.__setattr__(
                self, "vertex_order", tuple(int(v) for v in self.vertex_order)
            )


@dataclass(frozen=True)
class RealizationReport:
    """Outcome of checking an instance against a target feasible set."""

    target_set: frozenset[int]
    feasible_set: frozenset[int]
    spectrum: ChromaticSpectrum
    is_one_realization: bool
    witness_colorings: Mapping[int, Partition] = field(default_factory=dict)


def degree_descending_order(h: MixedHypergraph | LabeledHypergraph) -> tuple[int, ...]:
    """Heuristic search order: vertices by edge membership count, descending."""
    mhg = as_mixed_hypergraph(h)
    deg = [0] * mhg.n
    for e, _ in mhg.unified_edges():
        for v in e:
            deg[v] += 1
    return tuple(sorted(range(mhg.n), key=lambda v: (-deg[v], v)))


def _resolve(h, opts: SearchOptions | None):
    mhg = as_mixed_hypergraph(h)
    opts = opts or SearchOptions()
    order = opts.vertex_order or tuple(range(mhg.n))
    problem = _search.SearchProblem(mhg, order)
    max_classes = mhg.n if opts.max_classes is None else min(opts.max_classes, mhg.n)
    limit = opts.per_k_count_limit or 0
    return mhg, opts, problem, max_classes, limit


def enumerate_strict_partitions(
    h: MixedHypergraph | LabeledHypergraph, opts: SearchOptions | None = None
) -> Iterator[Partition]:
    """Stream every strict coloring as a canonical partition, exactly once.

    Emission follows lexicographic restricted-growth order of the (possibly
    reordered) assignment.  With ``per_k_count_limit`` set, the stream ends
    early once some class count has been emitted that many times.
    """
    mhg, opts, problem, max_classes, limit = _resolve(h, opts)
    counts = [0] * (mhg.n + 1)
    for assign in _search.iter_assignments(problem, max_classes):
        original = [0] * mhg.n
        for pos, c in enumerate(assign):
            original[problem.order[pos]] = c
        p = canonical_form(original)
        yield p
        if limit:
            counts[p.k] += 1
            if counts[p.k] >= limit:
                return


def enumerate_strict_k_partitions(
    h: MixedHypergraph | LabeledHypergraph,
    k: int,
    opts: SearchOptions | None = None,
) -> Iterator[Partition]:
    """Strict colorings with exactly ``k`` classes.

    Runs the same search capped at ``k`` classes and discards partitions with
    fewer.
    """
    if k < 1:
        raise InputError("k must be >= 1")
    opts = opts or SearchOptions()
    base = min(opts.max_classes, k) if opts.max_classes is not None else k
    capped = SearchOptions(
        max_classes=base,
        per_k_count_limit=opts.per_k_count_limit,
        vertex_order=opts.vertex_order,
        emit=opts.emit,
        workers=opts.workers,
    )
    for p in enumerate_strict_partitions(h, capped):
        if p.k == k:
            yield p


@dataclass(frozen=True)
class _SearchResult:
    counts: tuple[int, ...]  # indexed by k, length n + 1
    truncated: bool
    witnesses: Mapping[int, Partition]


def _job_prefixes(problem: _search.SearchProblem, max_classes: int) -> list[tuple[int, ...]]:
    n = problem.n
    if n <= _SPLIT_MIN_N:
        return [()]
    depth = min(_SPLIT_DEPTH, n - 1)
    return list(_search.iter_assignments(problem, max_classes, depth=depth))


def _run_search(h, opts: SearchOptions | None, want_witnesses: bool) -> _SearchResult:
    mhg, opts, problem, max_classes, limit = _resolve(h, opts)
    n = mhg.n
    prefixes = _job_prefixes(problem, max_classes)
    log.info("search over %d vertices in %d job(s)", n, len(prefixes))

    totals = [0] * (n + 1)
    witnesses: dict[int, Partition] = {}
    truncated = False

    def finish_job(result) -> bool:
        """Fold one job in order; True once the limit decides the search."""
        nonlocal truncated
        counts, witness, witness_found, job_truncated = result
        for k in range(1, n + 1):
            totals[k] += int(counts[k])
        if want_witnesses:
            for k in range(1, n + 1):
                if witness_found[k] and k not in witnesses:
                    original = [0] * n
                    for pos in range(n):
                        original[problem.order[pos]] = int(witness[k, pos])
                    witnesses[k] = canonical_form(original)
        if job_truncated or (limit and any(t >= limit for t in totals[1:])):
            truncated = True
            return True
        return False

    if opts.workers > 1 and len(prefixes) > 1:
        with ThreadPoolExecutor(max_workers=opts.workers) as pool:
            results = pool.map(
                lambda pref: _search.run_job(problem, pref, max_classes, limit),
                prefixes,
            )
            for result in results:
                if finish_job(result):
                    break
    else:
        for pref in prefixes:
            if finish_job(_search.run_job(problem, pref, max_classes, limit)):
                break

    if truncated and limit:
        for k in range(1, n + 1):
            if totals[k] > limit:
                totals[k] = limit
    return _SearchResult(tuple(totals), truncated, witnesses)


def chromatic_spectrum(
    h: MixedHypergraph | LabeledHypergraph, opts: SearchOptions | None = None
) -> ChromaticSpectrum:
    """Count canonical strict partitions per class count.

    Identical for any ``vertex_order`` and any ``workers`` value; ``exact``
    is False iff a ``per_k_count_limit`` truncated the search.
    """
    res = _run_search(h, opts, want_witnesses=False)
    return spectrum_from_counts(res.counts, exact=not res.truncated)


def feasible_set(h: MixedHypergraph | LabeledHypergraph) -> frozenset[int]:
    """All class counts admitting a strict coloring.

    The lower and upper chromatic numbers are ``min``/``max`` of this set
    (also exposed as ``ChromaticSpectrum.chi`` / ``chi_bar``).
    """
    return chromatic_spectrum(h).feasible_set


def is_one_realization(
    h: MixedHypergraph | LabeledHypergraph,
    s: Iterable[int],
    opts: SearchOptions | None = None,
) -> RealizationReport:
    """Check that the feasible set equals ``s`` with every spectrum entry in {0, 1}.

    Runs the search with a per-k count limit of 2, so it terminates as soon
    as any class count repeats; a truncated spectrum therefore already
    refutes the property.
    """
    target = frozenset(int(x) for x in s)
    if not target:
        raise InputError("target set may not be empty")
    if any(x < 1 for x in target):
        raise InputError("target set must contain positive integers")
    base = opts or SearchOptions()
    run_opts = SearchOptions(
        max_classes=base.max_classes,
        per_k_count_limit=2,
        vertex_order=base.vertex_order,
        emit=False,
        workers=base.workers,
    )
    res = _run_search(h, run_opts, want_witnesses=True)
    spectrum = spectrum_from_counts(res.counts, exact=not res.truncated)
    feasible = spectrum.feasible_set
    ok = feasible == target and all(c <= 1 for c in spectrum.counts)
    witnesses = {k: res.witnesses[k] for k in sorted(feasible) if k in res.witnesses}
    return RealizationReport(
        target_set=target,
        feasible_set=feasible,
        spectrum=spectrum,
        is_one_realization=ok,
        witness_colorings=witnesses,
    )
