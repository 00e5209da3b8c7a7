"""Small simple graphs: strongly regular checks, local subgraphs, isomorphism."""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import networkx as nx
from networkx.algorithms.isomorphism import GraphMatcher


class GraphCheckError(ValueError):
    """A structural check failed; ``witness`` names the offending vertices."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


@dataclass(frozen=True)
class Graph:
    n: int
    edges: FrozenSet[Tuple[int, int]]

    def __post_init__(self):
        for i, j in self.edges:
            if not (0 <= i < j < self.n):
                raise ValueError(f"bad edge {(i, j)}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Tuple[int, int]]) -> "Graph":
        return cls(n, frozenset((min(i, j), max(i, j)) for i, j in edges))

    @classmethod
    def from_adjacency(cls, n: int, adjacent) -> "Graph":
        return cls.from_edges(n, ((i, j) for i, j in combinations(range(n), 2) if adjacent(i, j)))

    @cached_property
    def neighbours(self) -> Tuple[FrozenSet[int], ...]:
        adj: List[set] = [set() for _ in range(self.n)]
        for i, j in self.edges:
            adj[i].add(j)
            adj[j].add(i)
        return tuple(frozenset(a) for a in adj)

    def adjacent(self, i: int, j: int) -> bool:
        return j in self.neighbours[i]

    def degree(self, i: int) -> int:
        return len(self.neighbours[i])

    def induced(self, vertices: Sequence[int]) -> "Graph":
        pos = {v: k for k, v in enumerate(vertices)}
        return Graph.from_edges(
            len(vertices),
            ((pos[i], pos[j]) for i, j in self.edges if i in pos and j in pos),
        )

    def complement(self) -> "Graph":
        return Graph.from_adjacency(self.n, lambda i, j: not self.adjacent(i, j))

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        return len(_bfs(self.neighbours, 0)) == self.n

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.edges)
        return g

    def to_dot(self, name: str = "G", labels: Optional[Sequence[str]] = None) -> str:
        lines = [f"graph {name} {{"]
        for v in range(self.n):
            lab = labels[v] if labels else str(v)
            lines.append(f'  {v} [label="{lab}"];')
        for i, j in sorted(self.edges):
            lines.append(f"  {i} -- {j};")
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        return json.dumps({"vertices": self.n, "edges": sorted(list(e) for e in self.edges)})


def complete_graph(n: int) -> Graph:
    return Graph.from_adjacency(n, lambda i, j: True)


def cocktail_party(m: int) -> Graph:
    """CP(m): 2m vertices, all adjacent except the pairs (2i, 2i+1)."""
    return Graph.from_adjacency(2 * m, lambda i, j: i // 2 != j // 2)


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, ((i, i + 1) for i in range(n - 1)))


def prism_graph(n: int = 3) -> Graph:
    """Two n-cycles joined by a perfect matching; n = 3 is triangle x edge."""
    edges = [(i, (i + 1) % n) for i in range(n)]
    edges += [(n + i, n + (i + 1) % n) for i in range(n)]
    edges += [(i, n + i) for i in range(n)]
    return Graph.from_edges(2 * n, edges)


def disjoint_union(g: Graph, h: Graph) -> Graph:
    return Graph.from_edges(g.n + h.n, list(g.edges) + [(i + g.n, j + g.n) for i, j in h.edges])


def _bfs(neighbours, start: int) -> Dict[int, int]:
    dist = {start: 0}
    queue = deque([start])
    while queue:
        v = queue.popleft()
        for w in neighbours[v]:
            if w not in dist:
                dist[w] = dist[v] + 1
                queue.append(w)
    return dist


def diameter(neighbours) -> Optional[int]:
    """Diameter of a graph given as adjacency sets; None if disconnected."""
    n = len(neighbours)
    best = 0
    for v in range(n):
        dist = _bfs(neighbours, v)
        if len(dist) != n:
            return None
        best = max(best, max(dist.values()))
    return best


def girth(neighbours) -> Optional[int]:
    """Length of a shortest cycle; None for a forest."""
    best = None
    for s in range(len(neighbours)):
        dist = {s: 0}
        parent = {s: -1}
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for w in neighbours[v]:
                if w not in dist:
                    dist[w] = dist[v] + 1
                    parent[w] = v
                    queue.append(w)
                elif parent[v] != w:
                    c = dist[v] + dist[w] + 1
                    if best is None or c < best:
                        best = c
    return best


def srg_check(g: Graph) -> Tuple[int, int, int, int]:
    """Parameters (v, k, lambda, mu) of a strongly regular graph.

    Complete and edgeless graphs are rejected since one of lambda, mu is
    undefined for them.
    """
    if g.n == 0:
        raise GraphCheckError("empty graph")
    k = g.degree(0)
    for v in range(g.n):
        if g.degree(v) != k:
            raise GraphCheckError("not regular", witness=(0, v))
    if k == 0:
        raise GraphCheckError("edgeless graph has no adjacent pairs")
    if k == g.n - 1:
        raise GraphCheckError("complete graph has no non-adjacent pairs")
    lam = mu = None
    nb = g.neighbours
    for i, j in combinations(range(g.n), 2):
        common = len(nb[i] & nb[j])
        if g.adjacent(i, j):
            if lam is None:
                lam = common
            elif common != lam:
                raise GraphCheckError("adjacent pairs disagree on common neighbours", witness=(i, j))
        else:
            if mu is None:
                mu = common
            elif common != mu:
                raise GraphCheckError(
                    "non-adjacent pairs disagree on common neighbours", witness=(i, j))
    return (g.n, k, lam, mu)


def local_subgraph(g: Graph, vertex: int = 0) -> Graph:
    """Induced subgraph on the neighbours of ``vertex``."""
    if g.n == 0:
        raise GraphCheckError("empty graph")
    nb = sorted(g.neighbours[vertex])
    if not nb:
        raise GraphCheckError("vertex has no neighbours", witness=vertex)
    return g.induced(nb)


def find_isomorphism(g: Graph, h: Graph) -> Optional[Dict[int, int]]:
    """A vertex bijection g -> h preserving adjacency, or None."""
    if g.n != h.n or len(g.edges) != len(h.edges):
        return None
    if sorted(g.degree(v) for v in range(g.n)) != sorted(h.degree(v) for v in range(h.n)):
        return None
    matcher = GraphMatcher(g.to_networkx(), h.to_networkx())
    if not matcher.is_isomorphic():
        return None
    mapping = dict(sorted(matcher.mapping.items()))
    if not is_isomorphism(g, h, mapping):
        raise AssertionError("matcher returned an invalid certificate")
    return mapping


def is_isomorphism(g: Graph, h: Graph, mapping: Dict[int, int]) -> bool:
    """Independently check that ``mapping`` is an isomorphism certificate."""
    if g.n != h.n or sorted(mapping) != list(range(g.n)):
        return False
    if sorted(mapping.values()) != list(range(h.n)):
        return False
    return all(
        g.adjacent(i, j) == h.adjacent(mapping[i], mapping[j])
        for i, j in combinations(range(g.n), 2)
    )


def neighbourhoods_isomorphic(g: Graph) -> bool:
    """All local subgraphs pairwise isomorphic (a vertex-transitivity proxy)."""
    if g.n == 0:
        return True
    first = g.induced(sorted(g.neighbours[0]))
    return all(
        find_isomorphism(first, g.induced(sorted(g.neighbours[v]))) is not None
        for v in range(1, g.n)
    )


def maximal_independent_sets(g: Graph) -> List[Tuple[int, ...]]:
    """All maximal independent sets, each sorted, in sorted order."""
    comp = g.complement().to_networkx()
    return sorted(tuple(sorted(c)) for c in nx.find_cliques(comp)) if g.n else []
