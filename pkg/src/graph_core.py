"""
Graph representation, fixture generators and edge-list file I/O
Graphs are finite, simple and undirected with dense vertex ids 0..N-1
"""
import json
import logging
import operator
import os
import random
import tempfile
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import networkx as nx

from errors import GraphError, ParseError

logger = logging.getLogger(__name__)

Edge = Tuple[int, int]


@dataclass(frozen=True)
class Graph:
    """Immutable simple undirected graph stored as sorted adjacency tuples"""

    vertex_count: int
    adjacency: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        if self.vertex_count < 0:
            raise GraphError(f"negative vertex count {self.vertex_count}")
        if len(self.adjacency) != self.vertex_count:
            raise GraphError(
                f"adjacency has {len(self.adjacency)} rows for {self.vertex_count} vertices"
            )
        for i, neighbors in enumerate(self.adjacency):
            if list(neighbors) != sorted(set(neighbors)):
                raise GraphError(f"neighbors of {i} are not sorted and unique")
            for j in neighbors:
                if not 0 <= j < self.vertex_count:
                    raise GraphError(f"neighbor id {j} of vertex {i} out of range")
                if j == i:
                    raise GraphError(f"self-loop at vertex {i}")
                if i not in self.adjacency[j]:
                    raise GraphError(f"edge ({i}, {j}) is not symmetric")

    @property
    def edges(self) -> List[Edge]:
        """Edges as (u, v) pairs with u < v, in lexicographic order"""
        return [(i, j) for i, neighbors in enumerate(self.adjacency) for j in neighbors if i < j]

    @property
    def edge_count(self) -> int:
        return sum(len(neighbors) for neighbors in self.adjacency) // 2

    def vertices(self) -> range:
        return range(self.vertex_count)

    def neighbors(self, i: int) -> Tuple[int, ...]:
        self.check_vertex(i)
        return self.adjacency[i]

    def degree(self, i: int) -> int:
        return len(self.neighbors(i))

    def degrees(self) -> List[int]:
        return [len(neighbors) for neighbors in self.adjacency]

    def has_edge(self, u: int, v: int) -> bool:
        self.check_vertex(u)
        self.check_vertex(v)
        return v in self.adjacency[u]

    def isolated_vertices(self) -> List[int]:
        return [i for i, neighbors in enumerate(self.adjacency) if not neighbors]

    def check_vertex(self, i: int):
        try:
            index = operator.index(i)
        except TypeError:
            raise GraphError(f"vertex id {i!r} is not an integer") from None
        if not 0 <= index < self.vertex_count:
            raise GraphError(f"vertex id {i} out of range for {self.vertex_count} vertices")

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(self.vertex_count))
        graph.add_edges_from(self.edges)
        return graph


@dataclass(frozen=True)
class Motif:
    """
    A connected vertex subset of a host graph, taken with all induced edges.

    The order of `vertices` is significant: copies made by motif doubling
    are appended in this order.
    """

    host: Graph
    vertices: Tuple[int, ...]

    def __post_init__(self):
        if not self.vertices:
            raise GraphError("a motif needs at least one vertex")
        if len(set(self.vertices)) != len(self.vertices):
            raise GraphError(f"motif lists a vertex twice: {self.vertices}")
        for v in self.vertices:
            self.host.check_vertex(v)
        sub, _ = induced_subgraph(self.host, self.vertices)
        if not is_connected(sub):
            raise GraphError(f"motif {self.vertices} does not induce a connected subgraph")

    @property
    def size(self) -> int:
        return len(self.vertices)

    def contains(self, v: int) -> bool:
        return v in self.vertices

    def standalone(self) -> Graph:
        """The motif as a graph of its own, vertex k being vertices[k]"""
        return induced_subgraph(self.host, self.vertices)[0]


def build_graph(n: int, edges: Iterable[Sequence[int]]) -> Graph:
    """
    Build a canonical graph from a vertex count and an edge list

    Args:
        n: Number of vertices
        edges: Iterable of (u, v) pairs; duplicates are collapsed

    Returns:
        Graph with sorted adjacency lists

    Raises:
        GraphError: on an id out of range or a self-loop
    """
    if n < 0:
        raise GraphError(f"negative vertex count {n}")
    neighbor_sets: List[set] = [set() for _ in range(n)]
    for edge in edges:
        u, v = edge
        for x in (u, v):
            if not 0 <= x < n:
                raise GraphError(f"vertex id {x} out of range for {n} vertices")
        if u == v:
            raise GraphError(f"self-loop at vertex {u}")
        neighbor_sets[u].add(v)
        neighbor_sets[v].add(u)
    return Graph(n, tuple(tuple(sorted(s)) for s in neighbor_sets))


def degree(g: Graph, i: int) -> int:
    return g.degree(i)


def is_connected(g: Graph) -> bool:
    """True iff g has at most one component; the empty graph counts as connected"""
    if g.vertex_count <= 1:
        return True
    return nx.is_connected(g.to_networkx())


def is_bipartite(g: Graph) -> bool:
    return nx.is_bipartite(g.to_networkx())


# Generators

def make_empty(n: int) -> Graph:
    return build_graph(n, [])


def make_chain(m: int) -> Graph:
    if m < 1:
        raise GraphError(f"a chain needs at least 1 vertex, got {m}")
    return build_graph(m, [(j, j + 1) for j in range(m - 1)])


def make_cycle(m: int) -> Graph:
    if m < 3:
        raise GraphError(f"a closed chain needs at least 3 vertices, got {m}")
    return build_graph(m, [(j, (j + 1) % m) for j in range(m)])


def make_complete(n: int) -> Graph:
    if n < 1:
        raise GraphError(f"a complete graph needs at least 1 vertex, got {n}")
    return build_graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def make_petal(k: int) -> Graph:
    """k triangles sharing vertex 0; petal t uses vertices 2t+1 and 2t+2"""
    if k < 1:
        raise GraphError(f"a petal graph needs at least 1 triangle, got {k}")
    edges = []
    for t in range(k):
        a, b = 2 * t + 1, 2 * t + 2
        edges.extend([(0, a), (0, b), (a, b)])
    return build_graph(2 * k + 1, edges)


def make_star(k: int) -> Graph:
    if k < 1:
        raise GraphError(f"a star needs at least 1 leaf, got {k}")
    return build_graph(k + 1, [(0, leaf) for leaf in range(1, k + 1)])


def random_graph(n: int, p: float, rng: Optional[random.Random] = None) -> Graph:
    """Erdos-Renyi G(n, p) sample"""
    rng = rng or random.Random()
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    return build_graph(n, edges)


def add_pending_vertex(g: Graph, v: int) -> Graph:
    """Append a new vertex (id g.vertex_count) adjacent only to v"""
    g.check_vertex(v)
    return build_graph(g.vertex_count + 1, g.edges + [(v, g.vertex_count)])


def add_edge(g: Graph, u: int, v: int) -> Graph:
    if g.has_edge(u, v):
        raise GraphError(f"edge ({u}, {v}) already present")
    return build_graph(g.vertex_count, g.edges + [(u, v)])


def disjoint_union(g1: Graph, g2: Graph) -> Tuple[Graph, int]:
    """Union with g2's ids shifted by g1.vertex_count; returns (graph, offset)"""
    offset = g1.vertex_count
    edges = g1.edges + [(u + offset, v + offset) for u, v in g2.edges]
    return build_graph(offset + g2.vertex_count, edges), offset


def induced_subgraph(g: Graph, vertices: Sequence[int]) -> Tuple[Graph, Dict[int, int]]:
    """
    Subgraph induced on `vertices`, relabelled in the given order

    Returns:
        (subgraph, mapping from host id to subgraph id)
    """
    mapping = {v: k for k, v in enumerate(vertices)}
    edges = [
        (mapping[u], mapping[w])
        for u in vertices
        for w in g.neighbors(u)
        if w in mapping and mapping[u] < mapping[w]
    ]
    return build_graph(len(vertices), edges), mapping


def pending_vertices(g: Graph) -> List[Tuple[int, int]]:
    """(q, r) for every vertex q of degree 1 with unique neighbor r"""
    return [(q, neighbors[0]) for q, neighbors in enumerate(g.adjacency) if len(neighbors) == 1]


# Edge-list and JSON formats

def parse_graph(text: str) -> Graph:
    """
    Parse the edge-list format: '#' comment lines, a header "N M",
    then M lines "u v"

    Raises:
        ParseError: on malformed lines or a wrong edge count
        GraphError: on ids out of range or self-loops
    """
    rows = []
    for line_number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith('#'):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"line {line_number}: expected two integers, got {line!r}")
        try:
            rows.append((int(parts[0]), int(parts[1])))
        except ValueError as e:
            raise ParseError(f"line {line_number}: {e}") from e
    if not rows:
        raise ParseError("missing header line 'N M'")
    (n, m), edges = rows[0], rows[1:]
    if n < 0 or m < 0:
        raise ParseError(f"header counts must be nonnegative, got {n} {m}")
    if len(edges) != m:
        raise ParseError(f"header announces {m} edges but {len(edges)} were given")
    try:
        return build_graph(n, edges)
    except GraphError as e:
        raise ParseError(str(e)) from e


def serialize_graph(g: Graph) -> str:
    edges = g.edges
    lines = [f"{g.vertex_count} {len(edges)}"] + [f"{u} {v}" for u, v in edges]
    return "\n".join(lines)


def _json_int(value) -> int:
    # bool is an int subclass
    if isinstance(value, bool) or not isinstance(value, int):
        raise TypeError(f"expected an integer, got {value!r}")
    return value


def parse_graph_json(text: str) -> Graph:
    try:
        data = json.loads(text)
        n = _json_int(data["n"])
        edges = [(_json_int(u), _json_int(v)) for u, v in data["edges"]]
    except (ValueError, KeyError, TypeError) as e:
        raise ParseError(f"invalid graph JSON: {e}") from e
    try:
        return build_graph(n, edges)
    except GraphError as e:
        raise ParseError(str(e)) from e


def serialize_graph_json(g: Graph) -> str:
    return json.dumps({"n": g.vertex_count, "edges": [list(e) for e in g.edges]})


def read_graph(path: str) -> Graph:
    """Read a graph file; a '.json' suffix selects the JSON format"""
    try:
        text = Path(path).read_text(encoding='utf-8')
    except OSError as e:
        raise ParseError(f"cannot read graph file {path}: {e}") from e
    except UnicodeDecodeError as e:
        raise ParseError(f"graph file {path} is not valid UTF-8: {e}") from e
    if str(path).endswith('.json'):
        return parse_graph_json(text)
    return parse_graph(text)


def write_graph(path: str, g: Graph):
    if str(path).endswith('.json'):
        write_text_atomic(path, serialize_graph_json(g) + "\n")
    else:
        write_text_atomic(path, serialize_graph(g) + "\n")


def write_text_atomic(path: str, text: str):
    """Write to a temporary file in the target directory, then rename over the target"""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp_path = tempfile.mkstemp(dir=directory, prefix=".lapmotif-", suffix=".tmp")
    try:
        with os.fdopen(fd, 'w', encoding='utf-8') as f:
            f.write(text)
        os.replace(tmp_path, path)
    except BaseException:
        if os.path.exists(tmp_path):
            os.unlink(tmp_path)
        raise
    logger.debug("wrote %s (%d bytes)", path, len(text))
