"""
Synthesis of graphs with prescribed eigenvalue-1 eigenfunctions
Building blocks realizing (value, excess) pairs and the embedding of an
integer function into a larger graph on which it becomes balanced
"""
import json
import logging
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Sequence, Tuple

from errors import ParityObstruction, ParseError, PreconditionError, VerificationError
from exact_balance import (
    VertexFunction,
    edge_product_sum,
    excess_vector,
    is_balanced,
    parse_function,
    serialize_function,
)
from graph_core import Graph, build_graph, make_chain, make_petal, read_graph, write_graph, write_text_atomic
from operations import Construction, join_graphs

logger = logging.getLogger(__name__)

BLOCK_KINDS = ("triangle", "pentagon")


@dataclass(frozen=True)
class Block:
    """
    Graph with integer function f whose excess vanishes except at p0

    pair = (f(p0), e(p0)).
    """

    graph: Graph
    p0: int
    f: VertexFunction
    pair: Tuple[int, int]

    @property
    def n(self) -> int:
        return self.pair[0]

    @property
    def m(self) -> int:
        return self.pair[1]

    def metadata(self) -> Dict[str, int]:
        return {"p0": self.p0, "n": self.n, "m": self.m}


def _make_block(graph: Graph, p0: int, values: Sequence[int]) -> Block:
    f = VertexFunction(tuple(values))
    pair = (int(f[p0]), int(excess_vector(graph, f)[p0]))
    block = Block(graph, p0, f, pair)
    if not verify_block(block):
        raise VerificationError(f"constructed block for pair {pair} fails verification")
    return block


def verify_block(b: Block) -> bool:
    """
    Exact check of the block invariants: zero excess off p0, the stored
    pair, and n*m = 2 * sum over edges of f(q)f(r)
    """
    if len(b.f) != b.graph.vertex_count or not 0 <= b.p0 < b.graph.vertex_count:
        return False
    if not b.f.is_integral():
        return False
    excesses = excess_vector(b.graph, b.f)
    if any(e != 0 for p, e in enumerate(excesses) if p != b.p0):
        return False
    n, m = b.pair
    if (n, m) != (b.f[b.p0], excesses[b.p0]):
        return False
    return n * m % 2 == 0 and n * m == 2 * edge_product_sum(b.graph, b.f)


def basic_block(kind: str, count: int) -> Block:
    """
    `count` triangles realizing (1, -2*count), or `count` pentagons
    realizing (1, 2*count), all sharing p0 = 0
    """
    if kind not in BLOCK_KINDS:
        raise PreconditionError(f"unknown block kind {kind!r}; expected one of {BLOCK_KINDS}")
    if count < 1:
        raise PreconditionError(f"block count must be at least 1, got {count}")
    if kind == "triangle":
        petal = make_petal(count)
        return _make_block(petal, 0, [1] + [-1] * (petal.vertex_count - 1))
    # each pentagon: 0 - a - c - d - b - 0 with f = 1, 1, -1, -1, 1
    edges = []
    values = [1]
    for t in range(count):
        a, c, d, b = (1 + 4 * t + k for k in range(4))
        edges.extend([(0, a), (a, c), (c, d), (d, b), (b, 0)])
        values.extend([1, -1, -1, 1])
    return _make_block(build_graph(1 + 4 * count, edges), 0, values)


def rotate_block(b: Block) -> Block:
    """New pending vertex at p0 with value -m becomes p0: (n, m) -> (-m, n)"""
    size = b.graph.vertex_count
    graph = build_graph(size + 1, b.graph.edges + [(b.p0, size)])
    return _make_block(graph, size, [int(v) for v in b.f] + [-b.m])


def negate_block(b: Block) -> Block:
    return _make_block(b.graph, b.p0, [-int(v) for v in b.f])


def join_blocks(blocks: Sequence[Block]) -> Block:
    """Identify all p0's: pairs (n, m_j) give (n, sum m_j)"""
    if not blocks:
        raise PreconditionError("join_blocks needs at least one block")
    values_at_p0 = {b.n for b in blocks}
    if len(values_at_p0) != 1:
        raise PreconditionError(f"blocks disagree on f(p0): {sorted(values_at_p0)}")
    graph, p0 = blocks[0].graph, blocks[0].p0
    values = {v: int(x) for v, x in enumerate(blocks[0].f)}
    for block in blocks[1:]:
        joined = join_graphs(graph, p0, block.graph, block.p0)
        for v, target in joined.id_map["second"].items():
            values[target] = int(block.f[v])
        graph = joined.graph
    return _make_block(graph, p0, [values[v] for v in range(graph.vertex_count)])


def _twos(k: int) -> Block:
    """(2, k) from copies of (2, 1) and (2, -1)"""
    plus = rotate_block(basic_block("triangle", 1))
    minus = negate_block(rotate_block(basic_block("pentagon", 1)))
    if k == 0:
        return join_blocks([plus, minus])
    return join_blocks([plus if k > 0 else minus] * abs(k))


def realize_pair(n: int, m: int) -> Block:
    """
    A verified block with pair (n, m), for every n*m even

    Deterministic composition of triangle and pentagon blocks with
    rotations, negations and joins.

    Raises:
        ParityObstruction: if n*m is odd
    """
    if n * m % 2 != 0:
        raise ParityObstruction(n, m)
    if n == 0 and m == 0:
        return _make_block(make_chain(3), 1, [1, 0, -1])
    if abs(n) == 1:
        # (1, -2l) triangles, (1, 2l) pentagons, (1, 0) one of each; (-1, m) = -(1, -m)
        excess = n * m
        if excess < 0:
            block = basic_block("triangle", -excess // 2)
        elif excess > 0:
            block = basic_block("pentagon", excess // 2)
        else:
            block = join_blocks([basic_block("triangle", 1), basic_block("pentagon", 1)])
        return block if n == 1 else negate_block(block)
    if n == 2:
        return _twos(m)
    if m == 2:
        return rotate_block(realize_pair(2, -n))
    if m == -2:
        return negate_block(realize_pair(-n, 2))
    if m % 2 == 0:
        if m == 0:
            return join_blocks([realize_pair(n, 2), realize_pair(n, -2)])
        step = 2 if m > 0 else -2
        return join_blocks([realize_pair(n, step)] * (abs(m) // 2))
    return rotate_block(realize_pair(m, -n))


def odd_product_vertices(g: Graph, f: VertexFunction) -> List[int]:
    """Vertices p with f(p) e(p) odd; always an even number of them"""
    excesses = excess_vector(g, f)
    return [p for p, (value, e) in enumerate(zip(f.as_ints(), excesses)) if value * int(e) % 2 != 0]


def embed_with_eigenfunction(sigma: Graph, f: VertexFunction) -> Construction:
    """
    Extend sigma to a graph on which an extension of f is balanced

    Vertices p with f(p) e(p) odd are first joined to one gadget vertex
    with value 1 (id sigma.vertex_count). Every vertex with nonzero
    remaining excess r(p), and every isolated vertex, then receives a block
    realizing (f(p), -r(p)) glued at its p0.
    """
    if len(f) != sigma.vertex_count:
        raise PreconditionError(f"function has {len(f)} values for {sigma.vertex_count} vertices")
    if not f.is_integral():
        raise PreconditionError("embedding needs an integer-valued function")
    values = f.as_ints()
    odd = odd_product_vertices(sigma, f)
    graph, gadget = sigma, None
    if odd:
        gadget = sigma.vertex_count
        graph = build_graph(gadget + 1, sigma.edges + [(p, gadget) for p in odd])
        values.append(1)
    remaining = [int(e) for e in excess_vector(graph, VertexFunction(tuple(values)))]
    attachments: Dict[int, List[int]] = {}
    for p in range(graph.vertex_count):
        if remaining[p] == 0 and graph.degree(p) > 0:
            continue
        try:
            block = realize_pair(values[p], -remaining[p])
        except ParityObstruction as e:
            raise VerificationError(f"embedding produced an odd pair at vertex {p}: {e}") from e
        joined = join_graphs(graph, p, block.graph, block.p0)
        for v, target in joined.id_map["second"].items():
            if target != p:
                values.append(int(block.f[v]))
        attachments[p] = list(range(graph.vertex_count, joined.graph.vertex_count))
        graph = joined.graph
    function = VertexFunction(tuple(values))
    if not is_balanced(graph, function):
        raise VerificationError("embedding: extended function is not balanced")
    if function.restricted(range(sigma.vertex_count)) != f:
        raise VerificationError("embedding: extended function does not agree with f")
    if not set(sigma.edges) <= set(graph.edges):
        raise VerificationError("embedding: an edge of sigma was lost")
    logger.debug(
        "embedded %d-vertex graph into %d vertices (%d attachments)",
        sigma.vertex_count, graph.vertex_count, len(attachments),
    )
    return Construction(graph, function, Fraction(1), {"gadget": gadget, "attachments": attachments})


# Block files: edge list at path, function at path.fn, metadata at path.block.json

def write_block(path: str, block: Block):
    write_graph(path, block.graph)
    write_text_atomic(f"{path}.fn", serialize_function(block.f) + "\n")
    write_text_atomic(f"{path}.block.json", json.dumps(block.metadata()) + "\n")


def read_block(path: str) -> Block:
    graph = read_graph(path)
    try:
        function_text = Path(f"{path}.fn").read_text(encoding='utf-8')
        metadata = json.loads(Path(f"{path}.block.json").read_text(encoding='utf-8'))
        p0, n, m = int(metadata["p0"]), int(metadata["n"]), int(metadata["m"])
    except (OSError, ValueError, KeyError, TypeError) as e:
        raise ParseError(f"cannot read block files for {path}: {e}") from e
    f = parse_function(function_text, graph.vertex_count)
    if not f.is_integral():
        raise ParseError(f"block function in {path}.fn is not integer-valued")
    block = Block(graph, p0, f, (n, m))
    if not verify_block(block):
        raise ParseError(f"block files for {path} do not describe a valid block for ({n}, {m})")
    return block
