"""Data model for mixed hypergraphs and the strict-coloring predicate.

A mixed hypergraph couples a vertex set with two edge families: C-edges,
which must contain two vertices of a *common* color in any proper coloring,
and D-edges, which must contain two vertices of *distinct* colors.  A
bi-hypergraph enters every edge in both families, so no edge may be
monochromatic or polychromatic.

Colorings are handled as set partitions in restricted-growth (canonical)
form: class labels appear in order of first occurrence, so each partition is
represented exactly once and "number of feasible partitions" is a
well-defined count with no color-relabeling factor.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Sequence


class MhgError(Exception):
    """Base class for every error raised by this package."""


class InputError(MhgError, ValueError):
    """An operation received arguments that violate its contract."""


class ValidationError(InputError):
    """Construction parameters violate a named rule."""


class ParseError(MhgError, ValueError):
    """Malformed ``.mhg`` input; carries the offending line number."""

    def __init__(self, message: str, line_no: int | None = None):
        if line_no is not None:
            message = f"line {line_no}: {message}"
        super().__init__(message)
        self.line_no = line_no


class GuardError(MhgError):
    """A brute-force operation refused an instance above its size guard."""


class EdgeStatus(enum.Enum):
    """Color status of one edge under a partition."""

    MONOCHROMATIC = "monochromatic"
    POLYCHROMATIC = "polychromatic"
    MIXED = "mixed"


# Bit flags marking which families a (deduplicated) edge belongs to.
C_FLAG = 1
D_FLAG = 2


def _normalize_edges(
    edges: Iterable[Iterable[int]], n: int, kind: str
) -> tuple[tuple[int, ...], ...]:
    out: list[tuple[int, ...]] = []
    seen: set[tuple[int, ...]] = set()
    for raw in edges:
        edge = tuple(sorted(int(v) for v in raw))
        if len(edge) < 2 or len(set(edge)) != len(edge):
            raise InputError(
                f"{kind}-edge {tuple(raw)} must have at least 2 distinct vertices"
            )
        if edge[0] < 0 or edge[-1] >= n:
            raise InputError(f"{kind}-edge {edge} has a vertex outside [0, {n})")
        if edge in seen:
            raise InputError(f"duplicate {kind}-edge {edge}")
        seen.add(edge)
        out.append(edge)
    out.sort()
    return tuple(out)


@dataclass(frozen=True)
class MixedHypergraph:
    """A vertex count plus C-edge and D-edge families over vertex indices.

    Edges are stored as ascending index tuples, each list sorted
    lexicographically, so equal instances serialize identically.  A
    bi-hypergraph is represented by entering every edge in both lists
    (see :meth:`bi`).  Instances are immutable and safe to share.
    """

    n: int
    c_edges: tuple[tuple[int, ...], ...] = ()
    d_edges: tuple[tuple[int, ...], ...] = ()

    def __post_init__(self) -> None:
        if int(self.n) <= 0:
            raise InputError("vertex count must be positive")
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(
            self, "c_edges", _normalize_edges(self.c_edges, self.n, "C")
        )
        object.__setattr__(
            self, "d_edges", _normalize_edges(self.d_edges, self.n, "D")
        )

    @classmethod
    def bi(cls, n: int, edges: Iterable[Iterable[int]]) -> "MixedHypergraph":
        """Build a bi-hypergraph: every edge is both a C-edge and a D-edge."""
        edges = tuple(tuple(e) for e in edges)
        return cls(n, edges, edges)

    @property
    def is_bi(self) -> bool:
        return self.c_edges == self.d_edges

    def unified_edges(self) -> list[tuple[tuple[int, ...], int]]:
        """Distinct edges with a family bitmask (C_FLAG and/or D_FLAG)."""
        flags: dict[tuple[int, ...], int] = {}
        for e in self.c_edges:
            flags[e] = flags.get(e, 0) | C_FLAG
        for e in self.d_edges:
            flags[e] = flags.get(e, 0) | D_FLAG
        return sorted(flags.items())


@dataclass(frozen=True)
class Partition:
    """A vertex partition in restricted-growth form.

    ``assignment[i]`` is the class of vertex ``i``; class 0 appears first and
    every later value exceeds the running maximum by at most one, so every
    class in ``[0, k)`` is non-empty.
    """

    assignment: tuple[int, ...]

    def __post_init__(self) -> None:
        a = tuple(int(x) for x in self.assignment)
        object.__setattr__(self, "assignment", a)
        if not a:
            raise InputError("partition over an empty vertex set")
        top = -1
        for i, v in enumerate(a):
            if v < 0 or v > top + 1:
                raise InputError(
                    f"assignment not in restricted-growth form at position {i}"
                )
            if v > top:
                top = v

    def __len__(self) -> int:
        return len(self.assignment)

    @property
    def k(self) -> int:
        """Number of (non-empty) classes."""
        return max(self.assignment) + 1

    def classes(self) -> list[tuple[int, ...]]:
        """Vertex indices grouped by class, in class order."""
        out: list[list[int]] = [[] for _ in range(self.k)]
        for v, c in enumerate(self.assignment):
            out[c].append(v)
        return [tuple(group) for group in out]


def canonical_form(raw_assignment: Sequence[object]) -> Partition:
    """Relabel classes by order of first appearance.

    Accepts any sequence of hashable class tokens and produces the unique
    restricted-growth representative of the same partition.  Idempotent.
    """
    if not len(raw_assignment):
        raise InputError("cannot canonicalize an empty assignment")
    first: dict[object, int] = {}
    out = []
    for token in raw_assignment:
        if token not in first:
            first[token] = len(first)
        out.append(first[token])
    return Partition(tuple(out))


def edge_color_status(partition: Partition, edge: Iterable[int]) -> EdgeStatus:
    """Classify one edge as monochromatic, polychromatic, or mixed.

    Monochromatic: all vertices share one class.  Polychromatic: all classes
    distinct.  The two are mutually exclusive for edges with >= 2 vertices,
    which the edge type guarantees.
    """
    idx = tuple(edge)
    if len(idx) < 2:
        raise InputError("edge status needs at least 2 vertices")
    a = partition.assignment
    n = len(a)
    seen: set[int] = set()
    for v in idx:
        if v < 0 or v >= n:
            raise InputError(f"vertex {v} outside [0, {n})")
        seen.add(a[v])
    if len(seen) == 1:
        return EdgeStatus.MONOCHROMATIC
    if len(seen) == len(idx):
        return EdgeStatus.POLYCHROMATIC
    return EdgeStatus.MIXED


def _all_distinct(a: Sequence[int], edge: tuple[int, ...]) -> bool:
    seen: set[int] = set()
    for v in edge:
        c = a[v]
        if c in seen:
            return False
        seen.add(c)
    return True


def _all_equal(a: Sequence[int], edge: tuple[int, ...]) -> bool:
    c0 = a[edge[0]]
    return all(a[v] == c0 for v in edge[1:])


def is_strict_coloring(h: "MixedHypergraph | LabeledHypergraph", p: Partition) -> bool:
    """True iff no C-edge is polychromatic and no D-edge is monochromatic.

    A strict coloring is identified with its partition, so the number of
    classes is whatever ``p.k`` says; there is no separate palette.
    """
    mhg = as_mixed_hypergraph(h)
    if len(p) != mhg.n:
        raise InputError(
            f"partition covers {len(p)} vertices, instance has {mhg.n}"
        )
    a = p.assignment
    for e in mhg.c_edges:
        if _all_distinct(a, e):
            return False
    for e in mhg.d_edges:
        if _all_equal(a, e):
            return False
    return True


@dataclass(frozen=True)
class VertexLabel:
    """Integer tuple naming a vertex of a generated construction."""

    entries: tuple[int, ...]

    def __post_init__(self) -> None:
        entries = tuple(int(x) for x in self.entries)
        object.__setattr__(self, "entries", entries)
        if not entries:
            raise InputError("vertex label may not be empty")
        if any(e < 1 for e in entries):
            raise InputError(f"label entries must be >= 1, got {entries}")

    def __str__(self) -> str:
        return ",".join(str(e) for e in self.entries)


@dataclass(frozen=True)
class ChromaticSpectrum:
    """Counts ``(r_1, ..., r_chibar)`` of feasible partitions per class count.

    ``counts[k-1]`` is the number of strict k-colorings (as canonical
    partitions).  ``exact`` is False when a per-k count limit truncated the
    search, in which case entries are lower bounds and at least one entry
    reached the limit.
    """

    counts: tuple[int, ...]
    exact: bool = True

    def __post_init__(self) -> None:
        counts = tuple(int(c) for c in self.counts)
        object.__setattr__(self, "counts", counts)
        if any(c < 0 for c in counts):
            raise InputError("spectrum counts must be non-negative")
        if counts and counts[-1] == 0:
            raise InputError("spectrum must end at its last non-zero entry")

    def r(self, k: int) -> int:
        """r_k, defaulting to 0 beyond the stored range."""
        if k < 1:
            raise InputError("class counts start at 1")
        return self.counts[k - 1] if k <= len(self.counts) else 0

    @property
    def feasible_set(self) -> frozenset[int]:
        return frozenset(k for k, c in enumerate(self.counts, start=1) if c > 0)

    @property
    def chi(self) -> int | None:
        """Lower chromatic number, or None for an uncolorable instance."""
        feas = self.feasible_set
        return min(feas) if feas else None

    @property
    def chi_bar(self) -> int | None:
        """Upper chromatic number, or None for an uncolorable instance."""
        feas = self.feasible_set
        return max(feas) if feas else None


def spectrum_from_counts(
    counts_by_k: Sequence[int], exact: bool = True
) -> ChromaticSpectrum:
    """Build a spectrum from ``counts_by_k[k]`` indexed by class count k."""
    last = 0
    for k in range(1, len(counts_by_k)):
        if counts_by_k[k] > 0:
            last = k
    return ChromaticSpectrum(tuple(int(c) for c in counts_by_k[1 : last + 1]), exact)


@dataclass(frozen=True, eq=True)
class LabeledHypergraph:
    """A mixed hypergraph bound to tuple labels and construction metadata.

    ``r`` is the uniform edge size (0 when the instance is not uniform).
    ``labels`` gives one :class:`VertexLabel` per vertex index when present.
    ``meta`` records provenance such as the construction tag and target set;
    treat it as read-only.
    """

    hypergraph: MixedHypergraph
    r: int = 0
    labels: tuple[VertexLabel, ...] | None = None
    meta: Mapping[str, str] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.labels is not None:
            labels = tuple(
                lab if isinstance(lab, VertexLabel) else VertexLabel(tuple(lab))
                for lab in self.labels
            )
            object.__setattr__(self, "labels", labels)
            if len(labels) != self.hypergraph.n:
                raise InputError(
                    f"{len(labels)} labels for {self.hypergraph.n} vertices"
                )
            if len(set(labels)) != len(labels):
                raise InputError("vertex labels must be pairwise distinct")
            lengths = {len(lab.entries) for lab in labels}
            if len(lengths) > 1:
                raise InputError("vertex labels must all have the same length")
        if self.r < 0:
            raise InputError("uniformity must be >= 0")
        if self.r:
            for e in self.hypergraph.c_edges + self.hypergraph.d_edges:
                if len(e) != self.r:
                    raise InputError(
                        f"edge {e} has {len(e)} vertices in a {self.r}-uniform instance"
                    )
        object.__setattr__(self, "meta", dict(self.meta))

    @property
    def n(self) -> int:
        return self.hypergraph.n

    def index_of(self, label: "VertexLabel | tuple[int, ...]") -> int:
        """Vertex index carrying ``label``."""
        if self.labels is None:
            raise InputError("instance carries no labels")
        if not isinstance(label, VertexLabel):
            label = VertexLabel(tuple(label))
        try:
            return self.labels.index(label)
        except ValueError:
            raise InputError(f"no vertex labeled {label}") from None


def as_mixed_hypergraph(h: MixedHypergraph | LabeledHypergraph) -> MixedHypergraph:
    """Accept either instance flavor where only the edge structure matters."""
    return h.hypergraph if isinstance(h, LabeledHypergraph) else h


def as_labeled(h: MixedHypergraph | LabeledHypergraph) -> LabeledHypergraph:
    """Wrap a bare instance, inferring uniformity from the edge sizes."""
    if isinstance(h, LabeledHypergraph):
        return h
    sizes = {len(e) for e in h.c_edges + h.d_edges}
    r = sizes.pop() if len(sizes) == 1 else 0
    return LabeledHypergraph(h, r=r)


def induced_subhypergraph(
    g: LabeledHypergraph, keep: Iterable[int]
) -> LabeledHypergraph:
    """Restrict to ``keep``: retained edges are exactly those inside ``keep``.

    Vertices are reindexed densely in ascending original order, preserving
    the label association and metadata.
    """
    kept = sorted(set(int(v) for v in keep))
    if not kept:
        raise InputError("induced sub-hypergraph needs a non-empty vertex set")
    n = g.hypergraph.n
    if kept[0] < 0 or kept[-1] >= n:
        raise InputError(f"kept vertices must lie in [0, {n})")
    remap = {old: new for new, old in enumerate(kept)}

    def restrict(edges: tuple[tuple[int, ...], ...]) -> list[tuple[int, ...]]:
        return [
            tuple(remap[v] for v in e) for e in edges if all(v in remap for v in e)
        ]

    sub = MixedHypergraph(
        len(kept), restrict(g.hypergraph.c_edges), restrict(g.hypergraph.d_edges)
    )
    labels = None
    if g.labels is not None:
        labels = tuple(g.labels[v] for v in kept)
    return LabeledHypergraph(sub, r=g.r, labels=labels, meta=dict(g.meta))
