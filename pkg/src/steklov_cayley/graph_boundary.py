"""Finite graphs with boundary.

A graph with boundary is a finite simple connected graph together with a
nonempty vertex set B such that no edge joins two vertices of B. Graphs
either come from an explicit edge list (JSON, hand-built examples) or are
induced inside a Cayley graph by a finite subset Omega: the vertex set is
Omega together with its vertex boundary, the edges are all host edges with
at least one endpoint in Omega, and the boundary is the vertex boundary.
"""
from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np
from scipy import sparse

from .cayley import GroupDescriptor, descriptor_from_dict, neighbors

__all__ = [
    "GraphWithBoundary",
    "InducedSubsetSpec",
    "Violation",
    "DisconnectedResult",
    "GraphSchemaError",
    "InvalidGraphError",
    "validate",
    "vertex_boundary",
    "induce",
    "to_json",
    "from_json",
    "to_dict",
    "from_dict",
    "example_family_G",
]


class DisconnectedResult(ValueError):
    """The graph induced by a subset is not connected."""


class GraphSchemaError(ValueError):
    """Graph JSON does not follow the schema."""


class InvalidGraphError(ValueError):
    """A graph violates the definition of a graph with boundary."""

    def __init__(self, violations: list["Violation"]):
        self.violations = violations
        super().__init__("; ".join(str(v) for v in violations))


@dataclass(frozen=True)
class Violation:
    kind: str  # loop | duplicate_edge | bad_index | empty_boundary | boundary_edge | disconnected | label
    witnesses: tuple = ()

    def __str__(self) -> str:
        return f"{self.kind}: {list(self.witnesses)}"


@dataclass(frozen=True, eq=False)
class GraphWithBoundary:
    """Immutable graph with boundary.

    Vertices are ``0..n-1``. ``edges`` holds pairs ``(i, j)`` with ``i < j``.
    ``labels`` optionally maps each vertex to an element of ``host``.
    """

    n: int
    edges: tuple[tuple[int, int], ...]
    boundary: tuple[bool, ...]
    labels: tuple[tuple[int, ...], ...] | None = None
    host: GroupDescriptor | None = field(default=None)

    @classmethod
    def from_edges(
        cls,
        n: int,
        edges: Iterable[Sequence[int]],
        boundary: Iterable[int],
        labels: Sequence[Sequence[int]] | None = None,
        host: GroupDescriptor | None = None,
    ) -> "GraphWithBoundary":
        """Convenience constructor taking boundary as a collection of indices."""
        bset = set(boundary)
        flags = tuple(i in bset for i in range(n))
        norm = tuple(sorted((min(i, j), max(i, j)) for i, j in edges))
        labs = None if labels is None else tuple(tuple(int(c) for c in lab) for lab in labels)
        return cls(n, norm, flags, labs, host)

    @property
    def boundary_indices(self) -> np.ndarray:
        return self._split[0]

    @property
    def interior_indices(self) -> np.ndarray:
        return self._split[1]

    @cached_property
    def _split(self) -> tuple[np.ndarray, np.ndarray]:
        flags = np.asarray(self.boundary, dtype=bool)
        idx = np.arange(self.n)
        return idx[flags], idx[~flags]

    @property
    def b(self) -> int:
        return int(sum(self.boundary))

    @cached_property
    def laplacian(self) -> sparse.csr_matrix:
        """Combinatorial graph Laplacian D - A as a sparse matrix."""
        if not self.edges:
            return sparse.csr_matrix((self.n, self.n))
        e = np.asarray(self.edges, dtype=np.int64)
        i, j = e[:, 0], e[:, 1]
        ones = np.ones(len(e))
        A = sparse.coo_matrix(
            (np.concatenate([ones, ones]), (np.concatenate([i, j]), np.concatenate([j, i]))),
            shape=(self.n, self.n),
        ).tocsr()
        deg = np.asarray(A.sum(axis=1)).ravel()
        return (sparse.diags(deg) - A).tocsr()

    @cached_property
    def degrees(self) -> np.ndarray:
        deg = np.zeros(self.n, dtype=np.int64)
        for i, j in self.edges:
            deg[i] += 1
            deg[j] += 1
        return deg

    @cached_property
    def adjacency_list(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for i, j in self.edges:
            adj[i].append(j)
            adj[j].append(i)
        return adj

    @cached_property
    def label_index(self) -> dict[tuple[int, ...], int]:
        if self.labels is None:
            return {}
        return {lab: i for i, lab in enumerate(self.labels)}

    def canonical(self) -> tuple:
        """A relabelling-invariant key for labelled graphs, used to compare graphs."""
        if self.labels is None:
            return (self.n, self.edges, self.boundary)
        lab = self.labels
        edges = frozenset(frozenset((lab[i], lab[j])) for i, j in self.edges)
        bnd = frozenset(lab[i] for i in range(self.n) if self.boundary[i])
        return (frozenset(lab), edges, bnd, self.host)

    def __eq__(self, other):
        if not isinstance(other, GraphWithBoundary):
            return NotImplemented
        return (
            self.n == other.n
            and self.edges == other.edges
            and self.boundary == other.boundary
            and self.labels == other.labels
            and self.host == other.host
        )

    __hash__ = None  # type: ignore[assignment]


def _components(n: int, edges: Sequence[tuple[int, int]]) -> list[list[int]]:
    adj: list[list[int]] = [[] for _ in range(n)]
    for i, j in edges:
        adj[i].append(j)
        adj[j].append(i)
    seen = [False] * n
    comps = []
    for s in range(n):
        if seen[s]:
            continue
        seen[s] = True
        comp = [s]
        q = deque([s])
        while q:
            u = q.popleft()
            for w in adj[u]:
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    q.append(w)
        comps.append(sorted(comp))
    return comps


def validate(g: GraphWithBoundary) -> list[Violation]:
    """Every violated clause of the graph-with-boundary definition, with witnesses.

    Checks simplicity (no loops, no repeated edges, indices in range),
    connectedness, a nonempty boundary, no boundary-boundary edge, and that
    labels (when present) are distinct, one per vertex, and adjacent in the
    host whenever an edge joins them.
    """
    out: list[Violation] = []
    seen = set()
    good_edges = []
    for e in g.edges:
        i, j = e
        if not (0 <= i < g.n and 0 <= j < g.n):
            out.append(Violation("bad_index", (e,)))
            continue
        if i == j:
            out.append(Violation("loop", (e,)))
            continue
        key = (min(i, j), max(i, j))
        if key in seen:
            out.append(Violation("duplicate_edge", (key,)))
            continue
        seen.add(key)
        good_edges.append(key)
    if len(g.boundary) != g.n:
        out.append(Violation("bad_index", ("boundary flags", len(g.boundary), g.n)))
        return out
    if not any(g.boundary):
        out.append(Violation("empty_boundary"))
    bb = [e for e in good_edges if g.boundary[e[0]] and g.boundary[e[1]]]
    if bb:
        out.append(Violation("boundary_edge", tuple(bb)))
    if g.n == 0:
        out.append(Violation("disconnected", ("empty graph",)))
    else:
        comps = _components(g.n, good_edges)
        if len(comps) > 1:
            out.append(Violation("disconnected", tuple(tuple(c) for c in comps)))
    if g.labels is not None:
        if len(g.labels) != g.n:
            out.append(Violation("label", ("one label per vertex required",)))
        elif len(set(g.labels)) != g.n:
            out.append(Violation("label", ("duplicate labels",)))
        elif g.host is not None:
            # inclusion in the host: V' in V and E' in E
            bad = [
                e for e in good_edges
                if len(g.labels[e[0]]) != g.host.rank
                or g.labels[e[1]] not in neighbors(g.labels[e[0]], g.host)
            ]
            if bad:
                out.append(Violation("label", ("edges not present in host",) + tuple(bad)))
    return out


@dataclass(frozen=True)
class InducedSubsetSpec:
    """A finite nonempty subset Omega of a Cayley graph's vertex set."""

    host: GroupDescriptor
    omega: frozenset

    def __post_init__(self) -> None:
        om = frozenset(tuple(int(c) for c in w) for w in self.omega)
        if not om:
            raise ValueError("omega must be nonempty")
        for w in om:
            if len(w) != self.host.rank:
                raise ValueError(f"element {w} has wrong rank for host")
        object.__setattr__(self, "omega", om)


def vertex_boundary(spec: InducedSubsetSpec) -> set[tuple[int, ...]]:
    """Elements outside Omega adjacent to some element of Omega."""
    om = spec.omega
    out = set()
    for w in om:
        for h in neighbors(w, spec.host):
            if h not in om:
                out.add(h)
    return out


def induce(spec: InducedSubsetSpec) -> GraphWithBoundary:
    """Graph with boundary induced by Omega inside the host Cayley graph.

    Vertices are ordered interior first, then boundary, each block sorted
    lexicographically by host coordinates.

    Raises
    ------
    DisconnectedResult
        If the induced graph is not connected.
    """
    om = spec.omega
    delta = vertex_boundary(spec)
    order = sorted(om) + sorted(delta)
    index = {lab: i for i, lab in enumerate(order)}
    n_int = len(om)
    edges = set()
    for w in om:
        i = index[w]
        for h in neighbors(w, spec.host):
            j = index[h]
            edges.add((min(i, j), max(i, j)))
    flags = tuple(i >= n_int for i in range(len(order)))
    g = GraphWithBoundary(len(order), tuple(sorted(edges)), flags, tuple(order), spec.host)
    if len(_components(g.n, g.edges)) > 1:
        raise DisconnectedResult("graph induced by omega is not connected")
    return g


def to_dict(g: GraphWithBoundary) -> dict:
    verts = []
    for i in range(g.n):
        v: dict = {"id": i, "boundary": bool(g.boundary[i])}
        if g.labels is not None:
            v["label"] = list(g.labels[i])
        verts.append(v)
    d: dict = {"vertices": verts, "edges": [list(e) for e in g.edges]}
    if g.host is not None:
        d["host"] = g.host.to_dict()
    return d


def to_json(g: GraphWithBoundary) -> str:
    return json.dumps(to_dict(g), separators=(",", ":"))


def _is_int(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


def from_dict(d: dict, check: bool = True) -> GraphWithBoundary:
    if not isinstance(d, dict):
        raise GraphSchemaError("top level must be an object")
    verts = d.get("vertices")
    edges = d.get("edges")
    if not isinstance(verts, list) or not isinstance(edges, list):
        raise GraphSchemaError("'vertices' and 'edges' must be arrays")
    n = len(verts)
    boundary = [False] * n
    labels: list | None = [None] * n
    have_labels = None
    ids = set()
    for v in verts:
        if not isinstance(v, dict) or not _is_int(v.get("id")) or not isinstance(v.get("boundary"), bool):
            raise GraphSchemaError(f"bad vertex record {v!r}")
        i = v["id"]
        if not 0 <= i < n or i in ids:
            raise GraphSchemaError(f"vertex ids must be a permutation of 0..{n - 1}; got {i}")
        ids.add(i)
        boundary[i] = v["boundary"]
        lab = v.get("label")
        if have_labels is None:
            have_labels = lab is not None
        if (lab is not None) != have_labels:
            raise GraphSchemaError("either all vertices carry labels or none do")
        if lab is not None:
            if not isinstance(lab, list) or not all(_is_int(c) for c in lab):
                raise GraphSchemaError(f"label must be an integer array, got {lab!r}")
            labels[i] = tuple(lab)
    norm = []
    for e in edges:
        if not (isinstance(e, list) and len(e) == 2 and all(_is_int(c) for c in e)):
            raise GraphSchemaError(f"bad edge {e!r}")
        i, j = e
        if not (0 <= i < n and 0 <= j < n):
            raise GraphSchemaError(f"edge {e} references a missing vertex")
        norm.append((min(i, j), max(i, j)))
    host = None
    if d.get("host") is not None:
        try:
            host = descriptor_from_dict(d["host"])
        except ValueError as exc:
            raise GraphSchemaError(f"bad host descriptor: {exc}") from exc
    g = GraphWithBoundary(
        n,
        tuple(sorted(norm)),
        tuple(boundary),
        tuple(labels) if have_labels else None,
        host,
    )
    if check:
        violations = validate(g)
        if violations:
            raise InvalidGraphError(violations)
    return g


def from_json(text: str, check: bool = True) -> GraphWithBoundary:
    """Parse graph JSON. Raises GraphSchemaError or InvalidGraphError."""
    try:
        d = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphSchemaError(f"not valid JSON: {exc}") from exc
    return from_dict(d, check=check)


def example_family_G(n: int) -> GraphWithBoundary:
    """Two boundary vertices joined by n paths of length two.

    Interior vertices are ``0..n-1``; the boundary vertices are ``n`` and ``n+1``.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    edges = [(i, n) for i in range(n)] + [(i, n + 1) for i in range(n)]
    return GraphWithBoundary.from_edges(n + 2, edges, [n, n + 1])
