"""Simple labeled graphs with bit-mask node sets.

Nodes are the integers ``0..n-1`` in input order. A node set is a plain
``int`` whose bit ``i`` is set when node ``i`` is a member; this keeps
union/intersection/subset tests to single integer operations.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator, Sequence

FAMILIES = ("path", "cycle", "complete", "star", "empty")


class GraphError(ValueError):
    """Raised for malformed graph input or unsupported family parameters."""


def mask_of(nodes: Iterable[int]) -> int:
    m = 0
    for v in nodes:
        m |= 1 << v
    return m


def members(mask: int) -> list[int]:
    """Ascending list of the nodes in ``mask``."""
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def popcount(mask: int) -> int:
    return bin(mask).count("1")


@dataclass(frozen=True)
class Graph:
    n: int
    edges: frozenset[tuple[int, int]]
    names: tuple[str, ...] | None = None
    adjacency: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not isinstance(self.n, int) or isinstance(self.n, bool) or self.n < 1:
            raise GraphError(f"node count must be an integer >= 1, got {self.n!r}")
        adj = [0] * self.n
        for a, b in self.edges:
            if not (0 <= a < self.n and 0 <= b < self.n):
                raise GraphError(f"edge ({a}, {b}) has an endpoint outside [0, {self.n})")
            if a == b:
                raise GraphError(f"self-loop at node {a}")
            if a > b:
                raise GraphError(f"edge ({a}, {b}) is not normalized")
            adj[a] |= 1 << b
            adj[b] |= 1 << a
        if self.names is not None and len(self.names) != self.n:
            raise GraphError(f"expected {self.n} names, got {len(self.names)}")
        object.__setattr__(self, "adjacency", tuple(adj))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]],
                   names: Sequence[str] | None = None) -> "Graph":
        """Build a graph, rejecting duplicate edges (in either orientation)."""
        seen: set[tuple[int, int]] = set()
        for e in edges:
            if len(e) != 2:
                raise GraphError(f"edge {list(e)!r} must have exactly two endpoints")
            a, b = e
            for x in (a, b):
                if not isinstance(x, int) or isinstance(x, bool):
                    raise GraphError(f"edge endpoint {x!r} is not an integer")
            if a == b:
                raise GraphError(f"self-loop at node {a}")
            key = (min(a, b), max(a, b))
            if key in seen:
                raise GraphError(f"duplicate edge {list(key)}")
            seen.add(key)
        return cls(n, frozenset(seen), tuple(names) if names is not None else None)

    @property
    def full(self) -> int:
        """Mask of the whole node set."""
        return (1 << self.n) - 1

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def neighbors(self, v: int) -> list[int]:
        return members(self.adjacency[v])

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Graph with node ``i`` renamed to ``perm[i]``."""
        return Graph.from_edges(self.n, [(perm[a], perm[b]) for a, b in self.edges])

    def to_dict(self) -> dict:
        d = {"n": self.n, "edges": [list(e) for e in self.sorted_edges()]}
        if self.names is not None:
            d["names"] = list(self.names)
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    def __str__(self):
        return self.to_json()


def parse_graph(text: str) -> Graph:
    """Parse the graph JSON format: ``{"n": int, "edges": [[a, b], ...], "names": [...]}``."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphError(f"malformed graph JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise GraphError("graph JSON must be an object")
    if "n" not in data or "edges" not in data:
        raise GraphError('graph JSON requires "n" and "edges"')
    n, edges = data["n"], data["edges"]
    if not isinstance(n, int) or isinstance(n, bool):
        raise GraphError('"n" must be an integer')
    if not isinstance(edges, list) or not all(isinstance(e, list) for e in edges):
        raise GraphError('"edges" must be an array of 2-element arrays')
    names = data.get("names")
    if names is not None and not (isinstance(names, list) and all(isinstance(s, str) for s in names)):
        raise GraphError('"names" must be an array of strings')
    unknown = set(data) - {"n", "edges", "names"}
    if unknown:
        raise GraphError(f"unknown graph keys: {sorted(unknown)}")
    return Graph.from_edges(n, edges, names)


def generate_family(kind: str, n: int) -> Graph:
    """One of the named families: path, cycle, complete, star or empty."""
    if kind not in FAMILIES:
        raise GraphError(f"unknown family {kind!r}; choose from {', '.join(FAMILIES)}")
    if n < 1:
        raise GraphError(f"{kind} needs n >= 1")
    if kind == "path":
        edges = [(i, i + 1) for i in range(n - 1)]
    elif kind == "cycle":
        if n < 3:
            raise GraphError("cycle needs n >= 3")
        edges = [(i, i + 1) for i in range(n - 1)] + [(0, n - 1)]
    elif kind == "complete":
        edges = list(combinations(range(n), 2))
    elif kind == "star":
        edges = [(0, i) for i in range(1, n)]
    else:
        edges = []
    return Graph.from_edges(n, edges)


def is_connected_subset(g: Graph, s: int) -> bool:
    """True iff ``s`` is nonempty and induces a connected subgraph.

    The empty set is treated as not connected.
    """
    if s == 0:
        return False
    start = s & -s
    seen = start
    frontier = start
    adj = g.adjacency
    while frontier:
        low = frontier & -frontier
        frontier ^= low
        nbrs = adj[low.bit_length() - 1] & s & ~seen
        seen |= nbrs
        frontier |= nbrs
    return seen == s


def components(g: Graph) -> list[int]:
    """Connected components as masks, sorted by least member."""
    out = []
    rest = g.full
    adj = g.adjacency
    while rest:
        start = rest & -rest
        comp = frontier = start
        while frontier:
            low = frontier & -frontier
            frontier ^= low
            nbrs = adj[low.bit_length() - 1] & ~comp
            comp |= nbrs
            frontier |= nbrs
        out.append(comp)
        rest &= ~comp
    return out


def all_graphs(n: int, connected_only: bool = False) -> Iterator[Graph]:
    """Every simple graph on ``n`` labeled nodes, in edge-bitmask order."""
    pairs = list(combinations(range(n), 2))
    for code in range(1 << len(pairs)):
        g = Graph(n, frozenset(p for i, p in enumerate(pairs) if code >> i & 1))
        if connected_only and len(components(g)) != 1:
            continue
        yield g
