"""Dart-based multigraphs, rotation systems and the named ladder builders."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from math import factorial, prod
from pathlib import Path
from typing import Iterator


class GraphError(ValueError):
    pass


class OutOfRange(GraphError):
    pass


@dataclass(frozen=True)
class Multigraph:
    """Undirected multigraph; edge ``e`` owns darts ``2e`` (at ``u``) and ``2e+1`` (at ``v``).

    The twin of dart ``d`` is ``d ^ 1``.  Loops are allowed and keep two
    distinct darts at the same vertex.
    """

    vertex_count: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        edges = tuple((int(u), int(v)) for u, v in self.edges)
        object.__setattr__(self, "edges", edges)
        if self.vertex_count < 1:
            raise GraphError("graph needs at least one vertex")
        if not edges:
            raise GraphError("graph needs at least one edge")
        for u, v in edges:
            if not (0 <= u < self.vertex_count and 0 <= v < self.vertex_count):
                raise GraphError(f"edge ({u}, {v}) out of vertex range")
        if not self.is_connected():
            raise GraphError("graph is not connected")

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @property
    def dart_count(self) -> int:
        return 2 * len(self.edges)

    def dart_vertex(self, d: int) -> int:
        return self.edges[d >> 1][d & 1]

    @staticmethod
    def twin(d: int) -> int:
        return d ^ 1

    def darts_at(self, v: int) -> list[int]:
        return [d for d in range(self.dart_count) if self.dart_vertex(d) == v]

    def degrees(self) -> list[int]:
        deg = [0] * self.vertex_count
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def rotation_count(self) -> int:
        return prod(factorial(d - 1) for d in self.degrees() if d > 0)

    def is_connected(self) -> bool:
        adj = [[] for _ in range(self.vertex_count)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        seen = {0}
        stack = [0]
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.vertex_count

    def relabeled(self, perm: list[int]) -> "Multigraph":
        return Multigraph(self.vertex_count, tuple((perm[u], perm[v]) for u, v in self.edges))


@dataclass(frozen=True)
class RotationSystem:
    """Cyclic order of incident darts at each vertex."""

    cycles: tuple[tuple[int, ...], ...]

    def successor(self) -> dict[int, int]:
        succ = {}
        for cyc in self.cycles:
            for k, d in enumerate(cyc):
                succ[d] = cyc[(k + 1) % len(cyc)]
        return succ

    def validate(self, g: Multigraph) -> None:
        if len(self.cycles) != g.vertex_count:
            raise GraphError("one cycle per vertex required")
        seen = set()
        for v, cyc in enumerate(self.cycles):
            for d in cyc:
                if g.dart_vertex(d) != v:
                    raise GraphError(f"dart {d} listed at vertex {v}")
                if d in seen:
                    raise GraphError(f"dart {d} listed twice")
                seen.add(d)
        if len(seen) != g.dart_count:
            raise GraphError("rotation system misses darts")


def vertex_rotations(darts: list[int]) -> Iterator[tuple[int, ...]]:
    """All cyclic orders of ``darts`` with the smallest dart pinned first."""
    if not darts:
        yield ()
        return
    ds = sorted(darts)
    for rest in permutations(ds[1:]):
        yield (ds[0],) + rest


def iter_rotation_systems(g: Multigraph) -> Iterator[RotationSystem]:
    per_vertex = [list(vertex_rotations(g.darts_at(v))) for v in range(g.vertex_count)]

    def rec(v, acc):
        if v == g.vertex_count:
            yield RotationSystem(tuple(acc))
            return
        for r in per_vertex[v]:
            acc.append(r)
            yield from rec(v + 1, acc)
            acc.pop()

    yield from rec(0, [])


def face_count(g: Multigraph, rot: RotationSystem) -> int:
    """Number of orbits of ``d -> succ(twin(d))``."""
    succ = rot.successor()
    seen = [False] * g.dart_count
    faces = 0
    for d in range(g.dart_count):
        if seen[d]:
            continue
        faces += 1
        e = d
        while not seen[e]:
            seen[e] = True
            e = succ[e ^ 1]
    return faces


def genus_of(g: Multigraph, faces: int) -> int:
    chi = 2 - g.vertex_count + g.edge_count - faces
    if chi < 0 or chi % 2:
        raise GraphError(f"V - E + F = {g.vertex_count - g.edge_count + faces} gives no integer genus")
    return chi // 2


# -- builders -------------------------------------------------------------------

_MIN_N = {"L": 1, "CL": 3, "ML": 3, "RL": 1}


def _ladder_edges(n: int) -> list[tuple[int, int]]:
    xs = list(range(n))
    ys = list(range(n, 2 * n))
    edges = [(xs[i], ys[i]) for i in range(n)]
    edges += [(xs[i], xs[i + 1]) for i in range(n - 1)]
    edges += [(ys[i], ys[i + 1]) for i in range(n - 1)]
    return edges


def build_named_graph(tag: str, n: int) -> Multigraph:
    if tag not in _MIN_N:
        raise OutOfRange(f"no builder for {tag!r}")
    if n < _MIN_N[tag]:
        raise OutOfRange(f"{tag}_n builder needs n >= {_MIN_N[tag]}, got {n}")
    if tag == "L":
        return Multigraph(2 * n, tuple(_ladder_edges(n) + [(0, n), (n - 1, 2 * n - 1)]))
    if tag == "CL":
        return Multigraph(2 * n, tuple(_ladder_edges(n) + [(n - 1, 0), (2 * n - 1, n)]))
    if tag == "ML":
        m = 2 * n
        return Multigraph(m, tuple([(i, (i + 1) % m) for i in range(m)] + [(i, i + n) for i in range(n)]))
    s, t = 2 * n, 2 * n + 1
    extra = [(0, s), (s, n), (n - 1, t), (t, 2 * n - 1), (s, t)]
    return Multigraph(2 * n + 2, tuple(_ladder_edges(n) + extra))


def parse_edge_list(text: str) -> Multigraph:
    """One ``u v`` pair per line, 0-based; repeated pairs are parallel edges."""
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GraphError(f"line {lineno}: expected 'u v', got {raw!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphError(f"line {lineno}: vertex ids must be integers") from None
        if u < 0 or v < 0:
            raise GraphError(f"line {lineno}: negative vertex id")
        edges.append((u, v))
    if not edges:
        raise GraphError("edge list is empty")
    return Multigraph(max(max(e) for e in edges) + 1, tuple(edges))


def read_edge_list(path: str | Path) -> Multigraph:
    return parse_edge_list(Path(path).read_text())
