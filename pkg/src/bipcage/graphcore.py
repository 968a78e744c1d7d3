"""Graphs: graph6 I/O, a catalog of reference graphs, distances and excess graphs."""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np


class GraphError(ValueError):
    pass


class Graph6Error(GraphError):
    pass


@dataclass(frozen=True)
class Graph:
    n: int
    adjacency: tuple[frozenset[int], ...]
    name: str | None = None

    def __post_init__(self):
        if len(self.adjacency) != self.n:
            raise GraphError("adjacency length does not match n")
        for u, nbrs in enumerate(self.adjacency):
            if u in nbrs:
                raise GraphError(f"loop at vertex {u}")
            for v in nbrs:
                if not 0 <= v < self.n or u not in self.adjacency[v]:
                    raise GraphError(f"edge {u}-{v} is not symmetric")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]], name: str | None = None) -> "Graph":
        adj = [set() for _ in range(n)]
        for u, v in edges:
            if u == v:
                raise GraphError(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) leaves the vertex range 0..{n - 1}")
            adj[u].add(v)
            adj[v].add(u)
        return cls(n, tuple(frozenset(s) for s in adj), name)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in sorted(self.adjacency[u]) if u < v]

    def degree(self, u: int) -> int:
        return len(self.adjacency[u])

    def adjacency_matrix(self) -> np.ndarray:
        m = np.zeros((self.n, self.n), dtype=np.int64)
        for u, v in self.edges():
            m[u, v] = m[v, u] = 1
        return m


# graph6

def _encode_n(n: int) -> str:
    if n < 63:
        return chr(n + 63)
    if n < 258048:
        return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    return "~~" + "".join(chr(((n >> s) & 63) + 63) for s in (30, 24, 18, 12, 6, 0))


def write_graph6(g: Graph) -> str:
    bits = []
    for v in range(1, g.n):
        for u in range(v):
            bits.append(1 if u in g.adjacency[v] else 0)
    bits += [0] * (-len(bits) % 6)
    body = "".join(
        chr(63 + int("".join(map(str, bits[i : i + 6])), 2)) for i in range(0, len(bits), 6)
    )
    return _encode_n(g.n) + body


def parse_graph6(text: str, name: str | None = None) -> Graph:
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<") :]
    if not s:
        raise Graph6Error("empty graph6 string")
    data = []
    for ch in s:
        b = ord(ch) - 63
        if not 0 <= b <= 63:
            raise Graph6Error(f"byte {ch!r} outside the graph6 range")
        data.append(b)
    if data[0] == 63:
        if len(data) > 1 and data[1] == 63:
            if len(data) < 8:
                raise Graph6Error("truncated 8-byte header")
            n, pos = _decode_int(data[2:8]), 8
        else:
            if len(data) < 4:
                raise Graph6Error("truncated 4-byte header")
            n, pos = _decode_int(data[1:4]), 4
    else:
        n, pos = data[0], 1
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    body = data[pos:]
    if len(body) != need:
        raise Graph6Error(f"expected {need} data bytes for n={n}, got {len(body)}")
    edges = []
    it = (b >> s & 1 for b in body for s in range(5, -1, -1))
    for v in range(1, n):
        for u in range(v):
            if next(it):
                edges.append((u, v))
    return Graph.from_edges(n, edges, name)


def _decode_int(chunk: Sequence[int]) -> int:
    n = 0
    for b in chunk:
        n = (n << 6) | b
    return n


def read_graph6_file(path) -> list[Graph]:
    with open(path) as fh:
        return [parse_graph6(line) for line in fh if line.strip()]


# catalog

def _lcf(n: int, jumps: Sequence[int], repeats: int, name: str) -> Graph:
    seq = list(jumps) * repeats
    edges = [(i, (i + 1) % n) for i in range(n)]
    edges += [(i, (i + seq[i]) % n) for i in range(n)]
    return Graph.from_edges(n, edges, name)


def petersen() -> Graph:
    # Kneser graph K(5,2): 2-subsets adjacent when disjoint
    pairs = list(combinations(range(5), 2))
    edges = [(i, j) for i, j in combinations(range(10), 2) if not set(pairs[i]) & set(pairs[j])]
    return Graph.from_edges(10, edges, "petersen")


def heawood() -> Graph:
    # incidence graph of the Fano plane, lines {i, i+1, i+3} mod 7
    edges = [(p, 7 + line) for line in range(7) for p in ((line + s) % 7 for s in (0, 1, 3))]
    return Graph.from_edges(14, edges, "heawood")


def pappus() -> Graph:
    return _lcf(18, [5, 7, -7, 7, -7, -5], 3, "pappus")


def mcgee() -> Graph:
    return _lcf(24, [12, 7, -7], 8, "mcgee")


def tutte_coxeter() -> Graph:
    return _lcf(30, [-13, -9, 7, -7, 9, 13], 5, "tutte_coxeter")


def robertson() -> Graph:
    # Hamiltonian 19-cycle with one forward chord per vertex
    chords = [8, 4, 7, 4, 8, 5, 7, 4, 7, 8, 4, 5, 7, 8, 4, 8, 4, 8, 4]
    return _lcf(19, chords, 1, "robertson")


def cycle(n: int) -> Graph:
    if n < 3:
        raise GraphError(f"cycle needs n >= 3, got {n}")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)], f"cycle({n})")


def complete(n: int) -> Graph:
    if n < 1:
        raise GraphError(f"complete graph needs n >= 1, got {n}")
    return Graph.from_edges(n, combinations(range(n), 2), f"complete({n})")


def complete_bipartite(k: int) -> Graph:
    if k < 1:
        raise GraphError(f"complete_bipartite needs k >= 1, got {k}")
    return Graph.from_edges(2 * k, [(i, k + j) for i in range(k) for j in range(k)], f"complete_bipartite({k})")


CATALOG = {
    "petersen": petersen,
    "heawood": heawood,
    "pappus": pappus,
    "mcgee": mcgee,
    "robertson": robertson,
    "tutte_coxeter": tutte_coxeter,
}
PARAMETRIC = {"cycle": cycle, "complete": complete, "complete_bipartite": complete_bipartite}


def builtin(name: str) -> Graph:
    """Look up a catalog graph; parametric families use ``cycle(8)`` style names."""
    key = name.strip().lower().replace("-", "_")
    if key in CATALOG:
        return CATALOG[key]()
    if "(" in key and key.endswith(")"):
        family, arg = key[:-1].split("(", 1)
        if family in PARAMETRIC:
            try:
                value = int(arg)
            except ValueError:
                raise GraphError(f"bad parameter in {name!r}") from None
            return PARAMETRIC[family](value)
    raise GraphError(f"unknown graph {name!r}")


# distances and profile

def moore_bound(k: int, g: int) -> int:
    if k < 2 or g < 3:
        raise GraphError(f"Moore bound needs k >= 2 and g >= 3, got k={k}, g={g}")
    if g % 2:
        return 1 + sum(k * (k - 1) ** i for i in range((g - 3) // 2 + 1))
    return 2 * sum((k - 1) ** i for i in range((g - 2) // 2 + 1))


def bfs_distances(g: Graph, source: int) -> list[int]:
    dist = [-1] * g.n
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for v in g.adjacency[u]:
            if dist[v] < 0:
                dist[v] = dist[u] + 1
                queue.append(v)
    return dist


def distance_matrix(g: Graph) -> list[list[int]]:
    return [bfs_distances(g, u) for u in range(g.n)]


def is_connected(g: Graph) -> bool:
    return g.n == 0 or min(bfs_distances(g, 0)) >= 0


def girth(g: Graph) -> int | None:
    """Shortest cycle length via BFS from every vertex with parent exclusion; None if acyclic."""
    best = None
    for s in range(g.n):
        dist = [-1] * g.n
        parent = [-1] * g.n
        dist[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            if best is not None and 2 * dist[u] + 1 >= best:
                break
            for v in g.adjacency[u]:
                if dist[v] < 0:
                    dist[v] = dist[u] + 1
                    parent[v] = u
                    queue.append(v)
                elif v != parent[u]:
                    length = dist[u] + dist[v] + 1
                    if best is None or length < best:
                        best = length
    return best


def bipartition(g: Graph) -> tuple[list[int], list[int]] | None:
    """Partite sets (V1 holds vertex 0) of a connected bipartite graph, else None."""
    color = [-1] * g.n
    for s in range(g.n):
        if color[s] >= 0:
            continue
        color[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for v in g.adjacency[u]:
                if color[v] < 0:
                    color[v] = 1 - color[u]
                    queue.append(v)
                elif color[v] == color[u]:
                    return None
    return [u for u in range(g.n) if color[u] == 0], [u for u in range(g.n) if color[u] == 1]


@dataclass
class GraphProfile:
    n: int
    k: int | None
    girth: int | None
    diameter: int
    bipartite: bool
    parts: tuple[list[int], list[int]] | None
    moore_bound: int | None
    excess: int | None
    d: int | None = None
    diameter_is_d_plus_1: bool | None = None

    def to_dict(self) -> dict:
        out = {
            "n": self.n,
            "k": self.k,
            "girth": self.girth,
            "diameter": self.diameter,
            "bipartite": self.bipartite,
            "moore_bound": self.moore_bound,
            "excess": self.excess,
            "d": self.d,
            "diameter_is_d_plus_1": self.diameter_is_d_plus_1,
        }
        if self.parts is not None:
            out["parts"] = [list(self.parts[0]), list(self.parts[1])]
        return out


def profile(g: Graph) -> GraphProfile:
    if g.n == 0 or not is_connected(g):
        raise GraphError("graph must be nonempty and connected")
    degrees = {g.degree(u) for u in range(g.n)}
    k = degrees.pop() if len(degrees) == 1 else None
    gi = girth(g)
    diameter = max(max(row) for row in distance_matrix(g))
    parts = bipartition(g)
    mb = excess = d = flag = None
    if k is not None and k >= 2 and gi is not None:
        mb = moore_bound(k, gi)
        excess = g.n - mb
    if gi is not None and gi % 2 == 0:
        d = gi // 2
        flag = diameter == d + 1
    return GraphProfile(g.n, k, gi, diameter, parts is not None, parts, mb, excess, d, flag)


@dataclass
class DistanceDecomposition:
    d: int
    matrices: list[np.ndarray]  # A_0 .. A_{d+1}
    partition_identity: bool  # sum_{i<=d} A_i + E == J

    @property
    def E(self) -> np.ndarray:
        return self.matrices[-1]

    def A(self, i: int) -> np.ndarray:
        return self.matrices[i]


def distance_decomposition(g: Graph, d: int) -> DistanceDecomposition:
    if d < 0:
        raise GraphError("d must be nonnegative")
    if not is_connected(g):
        raise GraphError("graph must be connected")
    dist = np.array(distance_matrix(g), dtype=np.int64)
    diameter = int(dist.max()) if g.n else 0
    if d + 1 < diameter:
        raise GraphError(f"d+1 = {d + 1} is below the diameter {diameter}; some pairs are unclassified")
    mats = [(dist == i).astype(np.int64) for i in range(d + 2)]
    total = sum(mats)
    holds = bool((total == 1).all())
    return DistanceDecomposition(d, mats, holds)


# excess graph

CYCLIC = "CYCLIC"
BICYCLIC = "BICYCLIC"
POLYCYCLIC = "POLYCYCLIC"
NOT_2_REGULAR = "NOT_2_REGULAR"
EMPTY = "EMPTY"
NOT_APPLICABLE = "NOT_APPLICABLE"


@dataclass
class ExcessProfile:
    classification: str
    excess_distance: int | None = None
    cycle_lengths: list[int] = field(default_factory=list)
    cycles: list[list[int]] = field(default_factory=list)
    partite_containment: list[bool] | None = None
    degree_histogram: dict[int, int] | None = None
    reason: str | None = None

    @property
    def c(self) -> int:
        return len(self.cycle_lengths)

    @property
    def c2(self) -> int:
        return sum(1 for l in self.cycle_lengths if l % 2 == 0)

    @property
    def is_2_regular(self) -> bool:
        return self.classification in (CYCLIC, BICYCLIC, POLYCYCLIC)

    def to_dict(self) -> dict:
        return {
            "classification": self.classification,
            "excess_distance": self.excess_distance,
            "cycle_lengths": list(self.cycle_lengths),
            "c": self.c,
            "c2": self.c2,
            "partite_containment": self.partite_containment,
            "degree_histogram": (
                {str(k): v for k, v in sorted(self.degree_histogram.items())}
                if self.degree_histogram is not None
                else None
            ),
            "reason": self.reason,
        }


def excess_distance(prof: GraphProfile) -> int | None:
    """Distance whose pairs form the excess graph, or None when the notion does not apply.

    Even girth 2d: d+1, provided the diameter is at most d+1. Odd girth
    2m+1: the diameter, provided it equals m+1 (the McGee/Robertson usage).
    """
    g = prof.girth
    if g is None:
        return None
    if g % 2 == 0:
        d = g // 2
        return d + 1 if prof.diameter <= d + 1 else None
    m = (g - 1) // 2
    return prof.diameter if prof.diameter == m + 1 else None


def excess_graph(g: Graph) -> ExcessProfile:
    prof = profile(g)
    dist_level = excess_distance(prof)
    if dist_level is None:
        return ExcessProfile(
            NOT_APPLICABLE,
            reason=f"girth {prof.girth} and diameter {prof.diameter} do not fit the excess-graph shape",
        )
    dist = distance_matrix(g)
    enbrs = [sorted(v for v in range(g.n) if dist[u][v] == dist_level) for u in range(g.n)]
    hist = Counter(len(x) for x in enbrs)
    if set(hist) == {0}:
        return ExcessProfile(EMPTY, dist_level, degree_histogram=dict(hist))
    if set(hist) != {2}:
        return ExcessProfile(NOT_2_REGULAR, dist_level, degree_histogram=dict(hist))
    seen = [False] * g.n
    cycles = []
    for start in range(g.n):
        if seen[start]:
            continue
        walk = [start]
        seen[start] = True
        cur = start
        while True:
            nxt = [v for v in enbrs[cur] if not seen[v]]
            if not nxt:
                break
            cur = nxt[0]
            seen[cur] = True
            walk.append(cur)
        cycles.append(walk)
    cycles.sort(key=len, reverse=True)
    containment = None
    if prof.parts is not None:
        side = [0] * g.n
        for u in prof.parts[1]:
            side[u] = 1
        containment = [len({side[u] for u in cyc}) == 1 for cyc in cycles]
    lengths = [len(c) for c in cycles]
    kind = CYCLIC if len(cycles) == 1 else BICYCLIC if len(cycles) == 2 else POLYCYCLIC
    return ExcessProfile(kind, dist_level, lengths, cycles, containment, dict(hist))


def excess_matrix(g: Graph, level: int) -> np.ndarray:
    dist = np.array(distance_matrix(g), dtype=np.int64)
    return (dist == level).astype(np.int64)
