"""Pointed graphs, distance spheres, and sphere-count structure constants.

All sphere and intersection counts are exact integers, so the constants come
out as exact rationals.  Infinite vertex sets (the integer line, free-group
Cayley graphs) are handled as finite windows carrying their radius; any
evaluation that would need a sphere reaching past the window boundary is
refused instead of silently using the clipped sphere, and the constants of a
windowed graph are only reported for the rows that agree with the infinite
graph (a truncated tensor).
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    BoundaryContactError,
    DisconnectedGraphError,
    EmptySphereError,
    PathCountExceededError,
    TruncationExceededError,
)
from .hypergroups import Number, StructureTensor, Word, structure_tensor


@dataclass(frozen=True)
class PointedGraph:
    """Finite simple connected graph with a base vertex.

    ``window_radius`` marks graphs that stand in for an infinite graph: the
    base sits at the center and only spheres staying within the radius are
    trusted by downstream evaluations.
    """

    labels: tuple[str, ...]
    neighbors: tuple[tuple[int, ...], ...]
    base: int
    window_radius: int | None = None

    @property
    def n_vertices(self) -> int:
        return len(self.labels)

    def edges(self):
        for u, nbrs in enumerate(self.neighbors):
            for v in nbrs:
                if u < v:
                    yield (u, v)


def pointed_graph(
    labels: Sequence[str],
    edges: Iterable[tuple[int, int]],
    base: int,
    window_radius: int | None = None,
) -> PointedGraph:
    """Build and check a pointed graph from vertex labels and index edges."""
    labels = tuple(str(l) for l in labels)
    n = len(labels)
    if n == 0:
        raise ValueError("graph has no vertices")
    if len(set(labels)) != n:
        raise ValueError("vertex labels are not unique")
    if not (0 <= base < n):
        raise ValueError(f"base index {base} out of range")
    adj: list[set[int]] = [set() for _ in range(n)]
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"edge ({u}, {v}) out of range")
        if u == v:
            raise ValueError(f"loop at vertex {labels[u]!r}")
        if v in adj[u]:
            raise ValueError(f"duplicate edge ({labels[u]!r}, {labels[v]!r})")
        adj[u].add(v)
        adj[v].add(u)
    seen = {base}
    queue = deque([base])
    while queue:
        u = queue.popleft()
        for v in adj[u]:
            if v not in seen:
                seen.add(v)
                queue.append(v)
    if len(seen) != n:
        missing = [labels[v] for v in range(n) if v not in seen]
        raise DisconnectedGraphError(f"unreachable vertices: {missing}")
    return PointedGraph(
        labels=labels,
        neighbors=tuple(tuple(sorted(s)) for s in adj),
        base=base,
        window_radius=window_radius,
    )


@dataclass(frozen=True)
class SphereTable:
    """All-pairs distances and the spheres S_n(v) of a pointed graph."""

    graph: PointedGraph
    dist: np.ndarray
    index_set: tuple[int, ...]
    spheres: tuple[tuple[tuple[int, ...], ...], ...]  # [v][n] -> vertices

    def sphere(self, v: int, n: int) -> tuple[int, ...]:
        if n < 0 or n >= len(self.spheres[v]):
            return ()
        return self.spheres[v][n]

    def sphere_size(self, v: int, n: int) -> int:
        return len(self.sphere(v, n))

    def base_sphere(self, n: int) -> tuple[int, ...]:
        return self.sphere(self.graph.base, n)

    def standing_assumption_witness(self) -> tuple[int, int] | None:
        """First (vertex, n) with S_n(v) empty for n in the index set, if any."""
        for v in range(self.graph.n_vertices):
            for n in self.index_set:
                if self.sphere_size(v, n) == 0:
                    return (v, n)
        return None

    def _window_check(self, v: int, radius: int) -> None:
        window = self.graph.window_radius
        if window is None:
            return
        if self.dist[self.graph.base, v] + radius > window:
            raise BoundaryContactError(self.graph.labels[v], radius, window)


def build_spheres(graph: PointedGraph) -> SphereTable:
    """BFS from every vertex; the index set is the set of base distances."""
    n = graph.n_vertices
    dist = np.full((n, n), -1, dtype=int)
    for source in range(n):
        dist[source, source] = 0
        queue = deque([source])
        while queue:
            u = queue.popleft()
            for v in graph.neighbors[u]:
                if dist[source, v] < 0:
                    dist[source, v] = dist[source, u] + 1
                    queue.append(v)
    if (dist < 0).any():
        raise DisconnectedGraphError("distance matrix has unreachable pairs")
    max_dist = int(dist.max())
    spheres = tuple(
        tuple(
            tuple(int(w) for w in np.flatnonzero(dist[v] == r))
            for r in range(max_dist + 1)
        )
        for v in range(n)
    )
    index_set = tuple(sorted({int(d) for d in dist[graph.base]}))
    dist.setflags(write=False)
    return SphereTable(graph=graph, dist=dist, index_set=index_set, spheres=spheres)


def _as_table(graph_or_table) -> SphereTable:
    if isinstance(graph_or_table, SphereTable):
        return graph_or_table
    return build_spheres(graph_or_table)


def wildberger_tensor(graph_or_table) -> StructureTensor:
    """Distance-distribution constants of a two-jump walk from the base.

    p[i,j,k] averages, over the first landing vertex v in S_i(base), the
    fraction of the second sphere S_j(v) that lands at base distance k.  The
    result is exact and row-stochastic.  For windowed graphs only the rows
    with i + j <= window radius are produced (as a truncated tensor), since
    those are the rows that agree with the underlying infinite graph.
    """
    table = _as_table(graph_or_table)
    graph = table.graph
    index_set = table.index_set
    size = len(index_set)
    if index_set != tuple(range(size)):
        raise ValueError(f"index set {index_set} is not contiguous")
    window = graph.window_radius
    entries: list[tuple[int, int, int, Number]] = []
    for i in index_set:
        first = table.base_sphere(i)
        if not first:
            raise EmptySphereError(graph.labels[graph.base], i)
        for j in index_set:
            if window is not None and i + j > window:
                continue
            row: dict[int, Fraction] = {}
            for v in first:
                table._window_check(v, j)
                second = table.sphere(v, j)
                if not second:
                    raise EmptySphereError(graph.labels[v], j)
                weight = Fraction(1, len(first) * len(second))
                for w in second:
                    k = int(table.dist[w, graph.base])
                    row[k] = row.get(k, Fraction(0)) + weight
            entries.extend((i, j, k, q) for k, q in row.items())
    return structure_tensor(size, entries, truncation_radius=window)


@dataclass(frozen=True)
class GraphCheckReport:
    name: str
    passed: bool
    witness: tuple | None

    def __str__(self) -> str:
        status = "pass" if self.passed else "FAIL"
        out = f"{self.name}: {status}"
        if self.witness is not None:
            out += f"  witness={self.witness}"
        return out


def check_condition_s(graph_or_table) -> GraphCheckReport:
    """Sphere-symmetry condition: |S_i(v)| constant over vertices, and
    |S_i(v) & S_j(base)| constant over v in S_k(base), for all i, j, k.

    On a windowed graph the scan is restricted to the spheres that agree
    with the infinite graph (base distance plus radius within the window).
    """
    table = _as_table(graph_or_table)
    graph = table.graph
    window = graph.window_radius
    base = graph.base

    def in_window(v: int, i: int) -> bool:
        return window is None or table.dist[base, v] + i <= window

    for i in table.index_set:
        sizes: dict[int, int] = {}
        for v in range(graph.n_vertices):
            if not in_window(v, i):
                continue
            sizes[v] = table.sphere_size(v, i)
        if len(set(sizes.values())) > 1:
            v = next(iter(sizes))
            v2 = next(u for u in sizes if sizes[u] != sizes[v])
            return GraphCheckReport(
                "condition-S", False,
                ("sphere-size", i, graph.labels[v], graph.labels[v2]),
            )
    for i, j, k in itertools.product(table.index_set, repeat=3):
        counts: dict[int, int] = {}
        target = set(table.base_sphere(j))
        for v in table.base_sphere(k):
            if not in_window(v, i):
                continue
            counts[v] = len(target.intersection(table.sphere(v, i)))
        if len(set(counts.values())) > 1:
            v = next(iter(counts))
            v2 = next(u for u in counts if counts[u] != counts[v])
            return GraphCheckReport(
                "condition-S", False,
                ("intersection", i, j, k, graph.labels[v], graph.labels[v2]),
            )
    return GraphCheckReport("condition-S", True, None)


def check_distance_regular(graph_or_table) -> GraphCheckReport:
    """Whether |S_i(u) & S_j(v)| depends only on (i, j, d(u, v))."""
    table = _as_table(graph_or_table)
    n = table.graph.n_vertices
    max_dist = int(table.dist.max())
    seen: dict[tuple[int, int, int], tuple[int, tuple[int, int]]] = {}
    for u, v in itertools.product(range(n), repeat=2):
        d = int(table.dist[u, v])
        for i in range(max_dist + 1):
            su = set(table.sphere(u, i))
            for j in range(max_dist + 1):
                count = len(su.intersection(table.sphere(v, j)))
                key = (i, j, d)
                if key in seen:
                    expected, first_pair = seen[key]
                    if count != expected:
                        return GraphCheckReport(
                            "distance-regular", False,
                            (i, j, d,
                             tuple(table.graph.labels[x] for x in first_pair),
                             (table.graph.labels[u], table.graph.labels[v])),
                        )
                else:
                    seen[key] = (count, (u, v))
    return GraphCheckReport("distance-regular", True, None)


def path_sum_distribution(
    graph_or_table, word: Word, path_cap: int = 10_000_000
) -> list[Number]:
    """Exhaustive jump-path enumeration of the distance distribution.

    Sums over every chain v_1 in S_{k1}(base), v_2 in S_{k2}(v_1), ... the
    product of the uniform sphere weights, placing the mass at the final base
    distance.  This is the graph-level oracle: it never touches structure
    constants.  Refuses with PathCountExceededError when the number of
    chains exceeds ``path_cap``.
    """
    table = _as_table(graph_or_table)
    graph = table.graph
    word = list(word)
    if not word:
        raise ValueError("word must have at least one letter")
    for k in word:
        if k not in table.index_set:
            raise IndexError(f"letter {k} not in index set {table.index_set}")

    # Integer chain count first, so the cap trips before any long enumeration.
    counts = {graph.base: 1}
    total = 1
    for k in word:
        nxt: dict[int, int] = {}
        for v, c in counts.items():
            for w in table.sphere(v, k):
                nxt[w] = nxt.get(w, 0) + c
        counts = nxt
        total = sum(counts.values())
        if total > path_cap:
            raise PathCountExceededError(total, path_cap)

    size = len(table.index_set)
    out: list[Number] = [Fraction(0)] * size
    stack = [(graph.base, 0, Fraction(1))]
    while stack:
        v, depth, weight = stack.pop()
        if depth == len(word):
            out[int(table.dist[v, graph.base])] += weight
            continue
        k = word[depth]
        table._window_check(v, k)
        sphere = table.sphere(v, k)
        if not sphere:
            raise EmptySphereError(graph.labels[v], k)
        share = weight / len(sphere)
        for w in sphere:
            stack.append((w, depth + 1, share))
    return out


@dataclass(frozen=True)
class TransitionMatrixFamily:
    """Row-stochastic matrices P_k with (P_k)[i, j] = Q[k, i, j]."""

    matrices: tuple[np.ndarray, ...]

    @property
    def size(self) -> int:
        return len(self.matrices)


def transition_family(tensor: StructureTensor) -> TransitionMatrixFamily:
    """One transition matrix per index; requires a complete (untruncated) tensor."""
    if tensor.truncation_radius is not None:
        raise TruncationExceededError(
            tensor.size - 1, tensor.size - 1, tensor.truncation_radius
        )
    mats = []
    for k in range(tensor.size):
        mat = np.zeros((tensor.size, tensor.size))
        for i in range(tensor.size):
            for j, q in tensor.row(k, i).items():
                mat[i, j] = float(q)
        mat.setflags(write=False)
        mats.append(mat)
    return TransitionMatrixFamily(matrices=tuple(mats))


# ---------------------------------------------------------------------------
# Named graph generators.


def cycle_graph(n: int) -> PointedGraph:
    if n < 3:
        raise ValueError("cycle needs at least 3 vertices")
    labels = [str(i) for i in range(n)]
    edges = [(i, (i + 1) % n) for i in range(n)]
    return pointed_graph(labels, edges, base=0)


def complete_graph(n: int) -> PointedGraph:
    if n < 2:
        raise ValueError("complete graph needs at least 2 vertices")
    labels = [str(i) for i in range(n)]
    edges = [(i, j) for i in range(n) for j in range(i + 1, n)]
    return pointed_graph(labels, edges, base=0)


def hypercube_graph(d: int) -> PointedGraph:
    if d < 1:
        raise ValueError("hypercube dimension must be positive")
    n = 1 << d
    labels = [format(i, f"0{d}b") for i in range(n)]
    edges = [(i, i ^ (1 << b)) for i in range(n) for b in range(d) if i < i ^ (1 << b)]
    return pointed_graph(labels, edges, base=0)


def path_graph(n: int) -> PointedGraph:
    if n < 2:
        raise ValueError("path needs at least 2 vertices")
    labels = [str(i) for i in range(n)]
    edges = [(i, i + 1) for i in range(n - 1)]
    return pointed_graph(labels, edges, base=0)


def line_window_graph(radius: int) -> PointedGraph:
    """Window {-radius, ..., radius} of the integer line, based at 0."""
    if radius < 1:
        raise ValueError("window radius must be positive")
    points = list(range(-radius, radius + 1))
    labels = [str(p) for p in points]
    edges = [(i, i + 1) for i in range(len(points) - 1)]
    return pointed_graph(labels, edges, base=radius, window_radius=radius)


def free_ball_graph(n_generators: int, radius: int) -> PointedGraph:
    """Ball of the 2n-regular tree (free-group Cayley graph), based at the root."""
    if n_generators < 1:
        raise ValueError("need at least one generator")
    if radius < 1:
        raise ValueError("ball radius must be positive")
    gens = []
    for g in range(n_generators):
        letter = chr(ord("a") + g)
        gens.append(letter)
        gens.append(letter.upper())

    def inverse(letter: str) -> str:
        return letter.lower() if letter.isupper() else letter.upper()

    words = [""]
    index = {"": 0}
    edges = []
    frontier = [""]
    for _ in range(radius):
        nxt = []
        for w in frontier:
            for g in gens:
                if w and g == inverse(w[-1]):
                    continue
                new = w + g
                index[new] = len(words)
                words.append(new)
                nxt.append(new)
                edges.append((index[w], index[new]))
        frontier = nxt
    labels = ["e" if not w else w for w in words]
    return pointed_graph(labels, edges, base=0, window_radius=radius)


_GENERATORS = {
    "cycle": (cycle_graph, ("n",)),
    "complete": (complete_graph, ("n",)),
    "hypercube": (hypercube_graph, ("d",)),
    "path": (path_graph, ("n",)),
    "line_window": (line_window_graph, ("radius",)),
    "free_ball": (free_ball_graph, ("n_generators", "radius")),
}


def generate_graph(name: str, *args, **kwargs) -> PointedGraph:
    """Dispatch to a named generator: cycle(n), complete(n), hypercube(d),
    path(n), line_window(radius), free_ball(n_generators, radius)."""
    key = name.replace("-", "_")
    if key not in _GENERATORS:
        raise ValueError(f"unknown graph family {name!r}")
    fn, _ = _GENERATORS[key]
    return fn(*args, **kwargs)
