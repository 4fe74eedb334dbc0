"""
Graph operations that create or transport eigenfunctions
Motif, vertex, edge and graph doubling, splitting, joining, and the
vertex identification / connection calculus for balanced functions
"""
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np
from networkx.algorithms import isomorphism

from errors import GraphError, PreconditionError, VerificationError
from exact_balance import (
    Rational,
    VertexFunction,
    excess_vector,
    is_balanced,
    rank_of_functions,
    verify_eigenpair_exact,
)
from graph_core import Graph, Motif, build_graph, disjoint_union, make_cycle, make_petal
from spectral import residual

logger = logging.getLogger(__name__)

MAX_PATTERN_VERTICES = 8
FLOAT_RESIDUAL_TOLERANCE = 1e-9

Pair = Tuple[int, int]


@dataclass(frozen=True)
class Construction:
    """
    A constructed graph with its predicted eigenfunction

    `id_map` records where vertices went, e.g. {"copies": {p: q}}.
    Unpacks as (graph, function).
    """

    graph: Graph
    function: Optional[VertexFunction] = None
    eigenvalue: Optional[Fraction] = None
    id_map: Dict[str, Any] = field(default_factory=dict)

    def __iter__(self):
        return iter((self.graph, self.function))

    def id_map_json(self) -> Dict[str, Any]:
        def convert(value):
            if isinstance(value, Mapping):
                return {str(k): convert(v) for k, v in value.items()}
            if isinstance(value, (list, tuple)):
                return [convert(v) for v in value]
            return value
        return convert(self.id_map)


@dataclass(frozen=True, eq=False)
class EdgeEigenpair:
    """
    One of the two eigenpairs produced by edge doubling

    `exact` and `function` are set only when n1*n2 is a perfect square.
    """

    symbol: str
    value: float
    exact: Optional[Fraction]
    function: Optional[VertexFunction]
    vector: np.ndarray
    residual: float


@dataclass(frozen=True, eq=False)
class EdgeDoubling:
    graph: Graph
    eigenpairs: Tuple[EdgeEigenpair, EdgeEigenpair]
    id_map: Dict[str, Any]


def _check_function(g: Graph, f: VertexFunction, name: str = "function"):
    if len(f) != g.vertex_count:
        raise PreconditionError(f"{name} has {len(f)} values for {g.vertex_count} vertices")


def _require_balanced(g: Graph, f: VertexFunction, name: str = "function"):
    _check_function(g, f, name)
    if not is_balanced(g, f):
        raise PreconditionError(f"{name} is not balanced")


def _verified_balanced(g: Graph, f: VertexFunction, operation: str) -> VertexFunction:
    if f.is_zero() or not is_balanced(g, f):
        raise VerificationError(f"{operation}: constructed function is not a balanced nonzero function")
    return f


def _verified_eigenpair(g: Graph, f: VertexFunction, eigenvalue: Fraction, operation: str) -> VertexFunction:
    if f.is_zero() or not verify_eigenpair_exact(g, f, eigenvalue):
        raise VerificationError(f"{operation}: constructed function fails the eigenvalue {eigenvalue} check")
    return f


def _as_motif(g: Graph, motif) -> Motif:
    if isinstance(motif, Motif):
        if motif.host != g:
            raise PreconditionError("motif belongs to a different host graph")
        return motif
    return Motif(g, tuple(motif))


# Motif and vertex doubling

def double_motif(g: Graph, motif) -> Construction:
    """
    Add a copy q_1..q_m of the motif, wired like the motif internally and to
    every outside neighbor of the corresponding p_alpha

    Copies get ids g.vertex_count + k in motif order.
    """
    motif = _as_motif(g, motif)
    n = g.vertex_count
    copies = {p: n + k for k, p in enumerate(motif.vertices)}
    edges = list(g.edges)
    for p in motif.vertices:
        for r in g.neighbors(p):
            if r in copies:
                if p < r:
                    edges.append((copies[p], copies[r]))
            else:
                edges.append((copies[p], r))
    logger.debug("doubled motif %s into %d vertices", motif.vertices, n + motif.size)
    return Construction(build_graph(n + motif.size, edges), id_map={"copies": copies})


def _antisymmetric_extension(doubled: Construction, motif: Motif, f_sigma: VertexFunction) -> VertexFunction:
    values = {}
    for alpha, p in enumerate(motif.vertices):
        values[p] = f_sigma[alpha]
        values[doubled.id_map["copies"][p]] = -f_sigma[alpha]
    return VertexFunction.from_mapping(doubled.graph.vertex_count, values)


def localized_eigenfunction_for_doubling(g: Graph, motif, f_sigma: VertexFunction) -> VertexFunction:
    """
    f_sigma on the motif, -f_sigma on its copy, 0 elsewhere

    f_sigma must be a nonzero balanced function of the standalone motif; a
    single vertex qualifies trivially.
    """
    motif = _as_motif(g, motif)
    if len(f_sigma) != motif.size:
        raise PreconditionError(f"motif function has {len(f_sigma)} values for {motif.size} motif vertices")
    if f_sigma.is_zero():
        raise PreconditionError("motif function is identically zero")
    if not is_balanced(motif.standalone(), f_sigma):
        raise PreconditionError("motif function is not balanced on the standalone motif")
    doubled = double_motif(g, motif)
    return _verified_balanced(doubled.graph, _antisymmetric_extension(doubled, motif, f_sigma), "motif doubling")


def double_vertex(g: Graph, v: int) -> Construction:
    """Vertex doubling: +1 at v, -1 at its copy (id g.vertex_count)"""
    g.check_vertex(v)
    motif = Motif(g, (v,))
    doubled = double_motif(g, motif)
    f = localized_eigenfunction_for_doubling(g, motif, VertexFunction((1,)))
    return Construction(doubled.graph, f, Fraction(1), doubled.id_map)


def double_motif_general(g: Graph, motif, f: VertexFunction, eigenvalue: Rational) -> Construction:
    """
    Motif doubling for an arbitrary eigenvalue

    Requires (1/n_i) sum_{j in motif, j~i} f(j) = (1 - lambda) f(i) on the
    motif, with n_i the degree in g (doubling leaves those degrees unchanged).
    """
    motif = _as_motif(g, motif)
    eigenvalue = Fraction(eigenvalue)
    if len(f) != motif.size:
        raise PreconditionError(f"motif function has {len(f)} values for {motif.size} motif vertices")
    if f.is_zero():
        raise PreconditionError("motif function is identically zero")
    position = {p: alpha for alpha, p in enumerate(motif.vertices)}
    for alpha, p in enumerate(motif.vertices):
        inner = sum((f[position[r]] for r in g.neighbors(p) if r in position), Fraction(0))
        if inner != (1 - eigenvalue) * g.degree(p) * f[alpha]:
            raise PreconditionError(
                f"motif equation fails at vertex {p} for eigenvalue {eigenvalue}"
            )
    doubled = double_motif(g, motif)
    function = _antisymmetric_extension(doubled, motif, f)
    _verified_eigenpair(doubled.graph, function, eigenvalue, "general motif doubling")
    return Construction(doubled.graph, function, eigenvalue, doubled.id_map)


def double_edge(g: Graph, p1: int, p2: int) -> EdgeDoubling:
    """
    Edge doubling with both eigenvalues 1 -/+ 1/sqrt(n1 n2)

    The motif equations force f(p2)/f(p1) = +/- sqrt(n1/n2). When n1*n2 is
    a perfect square the pairs are exact; otherwise they are checked by
    float residual.
    """
    if not g.has_edge(p1, p2):
        raise PreconditionError(f"vertices {p1} and {p2} are not adjacent")
    n1, n2 = g.degree(p1), g.degree(p2)
    product = n1 * n2
    root = math.isqrt(product)
    motif = Motif(g, (p1, p2))
    doubled = double_motif(g, motif)
    copies = doubled.id_map["copies"]
    eigenpairs = []
    for sign in (1, -1):
        symbol = f"1 {'-' if sign > 0 else '+'} 1/sqrt({product})"
        if root * root == product:
            exact = 1 - Fraction(sign, root)
            construction = double_motif_general(g, motif, VertexFunction((n2, sign * root)), exact)
            function = construction.function
            vector = function.as_floats()
            value = float(exact)
        else:
            exact, function = None, None
            value = 1.0 - sign / math.sqrt(product)
            ratio = sign * math.sqrt(n1 / n2)
            vector = np.zeros(doubled.graph.vertex_count)
            vector[p1], vector[p2] = 1.0, ratio
            vector[copies[p1]], vector[copies[p2]] = -1.0, -ratio
        error = residual(doubled.graph, vector, value)
        if error >= FLOAT_RESIDUAL_TOLERANCE:
            raise VerificationError(f"edge doubling: residual {error:.3e} for eigenvalue {symbol}")
        eigenpairs.append(EdgeEigenpair(symbol, value, exact, function, vector, error))
    return EdgeDoubling(doubled.graph, (eigenpairs[0], eigenpairs[1]), doubled.id_map)


# Motif counting

def doubling_trace_pattern(g: Graph, v: int, neighbors: Sequence[int]) -> Graph:
    """
    Pattern left by repeated doubling of v: two non-adjacent copies of v
    (pattern vertices 0 and 1), both joined to the chosen neighbors of v
    (vertices 2, 3, ...), plus the edges among those neighbors in g
    """
    if not neighbors:
        raise PreconditionError("choose at least one neighbor")
    for r in neighbors:
        if not g.has_edge(v, r):
            raise PreconditionError(f"vertex {r} is not a neighbor of {v}")
    index = {r: k + 2 for k, r in enumerate(neighbors)}
    edges = [(0, index[r]) for r in neighbors] + [(1, index[r]) for r in neighbors]
    edges += [(index[r], index[s]) for r in neighbors for s in neighbors if r < s and g.has_edge(r, s)]
    return build_graph(len(neighbors) + 2, edges)


def count_subgraph_embeddings(g: Graph, pattern: Graph, induced: bool = False) -> int:
    """
    Count distinct copies of `pattern` in g

    Non-induced copies are injective edge-preserving images, deduplicated
    by pattern automorphisms (distinct vertex and edge sets). Induced copies
    are vertex subsets whose induced subgraph is isomorphic to the pattern.
    """
    if pattern.vertex_count > MAX_PATTERN_VERTICES:
        raise PreconditionError(
            f"pattern has {pattern.vertex_count} vertices; at most {MAX_PATTERN_VERTICES} are supported"
        )
    matcher = isomorphism.GraphMatcher(g.to_networkx(), pattern.to_networkx())
    images = set()
    if induced:
        for mapping in matcher.subgraph_isomorphisms_iter():
            images.add(frozenset(mapping))
    else:
        for mapping in matcher.subgraph_monomorphisms_iter():
            inverse = {b: a for a, b in mapping.items()}
            edge_image = frozenset(frozenset((inverse[a], inverse[b])) for a, b in pattern.edges)
            images.add((frozenset(mapping), edge_image))
    return len(images)


# Graph doubling

def double_graph(g: Graph) -> Construction:
    """
    Two copies p_i = i and q_i = n + i, each keeping the internal edges, plus
    cross edges p_i ~ q_j and p_j ~ q_i for every edge p_i ~ p_j
    """
    n = g.vertex_count
    edges = []
    for u, v in g.edges:
        edges.extend([(u, v), (u + n, v + n), (u, v + n), (v, u + n)])
    doubled = build_graph(2 * n, edges)
    for i in range(n):
        if doubled.degree(i) != 2 * g.degree(i) or doubled.degree(i + n) != 2 * g.degree(i):
            raise VerificationError(f"graph doubling: degree of vertex {i} did not double")
    return Construction(doubled, id_map={"copies": {i: i + n for i in range(n)}})


def doubled_graph_kernel_basis(g: Graph) -> List[VertexFunction]:
    """The n independent balanced functions +1 at p_i, -1 at q_i on double_graph(g)"""
    isolated = g.isolated_vertices()
    if isolated:
        raise GraphError(f"graph doubling needs a graph without isolated vertices, found {isolated}")
    n = g.vertex_count
    doubled = double_graph(g).graph
    basis = [
        _verified_balanced(doubled, VertexFunction.from_mapping(2 * n, {i: 1, i + n: -1}), "graph doubling")
        for i in range(n)
    ]
    if rank_of_functions(basis) != n:
        raise VerificationError("graph doubling: kernel functions are not independent")
    return basis


def lift_to_double(g: Graph, f: VertexFunction, eigenvalue: Rational) -> VertexFunction:
    """An eigenfunction of g copied onto both halves of double_graph(g)"""
    _check_function(g, f)
    if f.is_zero() or not verify_eigenpair_exact(g, f, eigenvalue):
        raise PreconditionError(f"function is not an eigenfunction for {eigenvalue}")
    lifted = f.extended(f.values)
    return _verified_eigenpair(double_graph(g).graph, lifted, Fraction(eigenvalue), "lift to double")


# Splitting and chain attachment

def split_graph(
    g: Graph,
    sigma0: Sequence[int],
    sigma1: Sequence[int],
    sigma2: Sequence[int],
    edge_side: Mapping[Pair, int],
    f1: VertexFunction,
) -> Construction:
    """
    Split g along sigma0 and bridge the two copies of every q in sigma0

    Gamma_1 keeps the original ids of sigma1 and sigma0; sigma2 keeps its
    ids; the second copy of sigma0 and then the bridge vertices w_q are
    appended in ascending q order. The function is f1 on Gamma_1, -f1 on
    Gamma_2 and minus the Gamma_1 neighbor sum of q at w_q.

    Args:
        edge_side: side (1 or 2) for every edge with both ends in sigma0
    """
    n = g.vertex_count
    side_of: Dict[int, int] = {}
    for side, part in enumerate((sigma0, sigma1, sigma2)):
        for v in part:
            g.check_vertex(v)
            if v in side_of:
                raise PreconditionError(f"vertex {v} appears in more than one part")
            side_of[v] = side
    if len(side_of) != n:
        missing = sorted(set(range(n)) - set(side_of))
        raise PreconditionError(f"parts do not cover vertices {missing}")
    _require_balanced(g, f1, "f1")

    routing = {}
    for edge, side in edge_side.items():
        if side not in (1, 2):
            raise PreconditionError(f"edge {edge} routed to side {side}; expected 1 or 2")
        routing[tuple(sorted(edge))] = side
    inner_edges = {(u, v) for u, v in g.edges if side_of[u] == 0 and side_of[v] == 0}
    if set(routing) != inner_edges:
        raise PreconditionError("edge_side must cover exactly the edges inside sigma0")

    sigma0 = sorted(sigma0)
    second = {q: n + k for k, q in enumerate(sigma0)}
    bridge = {q: n + len(sigma0) + k for k, q in enumerate(sigma0)}

    def in_second(v: int) -> int:
        return second[v] if side_of[v] == 0 else v

    edges = []
    for u, v in g.edges:
        sides = {side_of[u], side_of[v]}
        if sides == {1, 2}:
            raise PreconditionError(f"edge ({u}, {v}) joins sigma1 and sigma2")
        if sides == {0}:
            edges.append((u, v) if routing[(u, v)] == 1 else (second[u], second[v]))
        elif 2 in sides:
            edges.append((in_second(u), in_second(v)))
        else:
            edges.append((u, v))
    for q in sigma0:
        edges.extend([(bridge[q], q), (bridge[q], second[q])])
    graph = build_graph(n + 2 * len(sigma0), edges)

    values = {v: (-f1[v] if side_of[v] == 2 else f1[v]) for v in range(n)}
    for q in sigma0:
        values[second[q]] = -f1[q]
    for q in sigma0:
        values[bridge[q]] = -sum((values[s] for s in graph.neighbors(q) if s != bridge[q]), Fraction(0))
    function = VertexFunction.from_mapping(graph.vertex_count, values)
    _verified_balanced(graph, function, "graph splitting")
    return Construction(graph, function, Fraction(1), {"second_copy": second, "bridges": bridge})


def attach_chain2(g: Graph, f1: VertexFunction, p: int) -> Construction:
    """Hang a 2-chain p - p1 - p2 off p with values 0 and -f1(p)"""
    g.check_vertex(p)
    _require_balanced(g, f1, "f1")
    n = g.vertex_count
    graph = build_graph(n + 2, g.edges + [(p, n), (n, n + 1)])
    function = _verified_balanced(graph, f1.extended([0, -f1[p]]), "chain attachment")
    return Construction(graph, function, Fraction(1), {"chain": [n, n + 1]})


# Joining

def join_graphs(g1: Graph, p1: int, g2: Graph, p2: int) -> Construction:
    """
    Disjoint union with p2 identified with p1

    g1 keeps its ids; the other vertices of g2 follow in ascending order.
    id_map["second"] maps every g2 id to its new id.
    """
    g1.check_vertex(p1)
    g2.check_vertex(p2)
    mapping = {p2: p1}
    for v in range(g2.vertex_count):
        if v != p2:
            mapping[v] = g1.vertex_count + len(mapping) - 1
    edges = g1.edges + [(mapping[u], mapping[v]) for u, v in g2.edges]
    graph = build_graph(g1.vertex_count + g2.vertex_count - 1, edges)
    return Construction(graph, id_map={"second": dict(sorted(mapping.items()))})


def join_eigenfunctions(
    g1: Graph,
    f1: VertexFunction,
    g2: Graph,
    f2: VertexFunction,
    eigenvalue: Rational,
    p1: int,
    p2: int,
) -> VertexFunction:
    """
    Glue eigenfunctions across join_graphs(g1, p1, g2, p2)

    Either function may be identically zero. For eigenvalue 1 the values
    at p1 and p2 must agree; otherwise both must vanish.
    """
    eigenvalue = Fraction(eigenvalue)
    _check_function(g1, f1, "f1")
    _check_function(g2, f2, "f2")
    if f1.is_zero() and f2.is_zero():
        raise PreconditionError("both functions are identically zero")
    for name, g, f in (("f1", g1, f1), ("f2", g2, f2)):
        if not f.is_zero() and not verify_eigenpair_exact(g, f, eigenvalue):
            raise PreconditionError(f"{name} is not an eigenfunction for {eigenvalue}")
    if eigenvalue == 1:
        if f1[p1] != f2[p2]:
            raise PreconditionError(f"values at the joined vertices differ: {f1[p1]} != {f2[p2]}")
    elif f1[p1] != 0 or f2[p2] != 0:
        raise PreconditionError("for eigenvalues other than 1 both functions must vanish at the joined vertices")
    joined = join_graphs(g1, p1, g2, p2)
    values = dict(enumerate(f1))
    for v, target in joined.id_map["second"].items():
        values[target] = f2[v]
    function = VertexFunction.from_mapping(joined.graph.vertex_count, values)
    return _verified_eigenpair(joined.graph, function, eigenvalue, "graph joining")


# Identification and connection calculus

def _check_pairs(g: Graph, pairs: Sequence[Pair]):
    if not pairs:
        raise PreconditionError("no vertex pairs given")
    used = set()
    for p, q in pairs:
        g.check_vertex(p)
        g.check_vertex(q)
        if p == q:
            raise PreconditionError(f"pair ({p}, {q}) repeats a vertex")
        if p in used or q in used:
            raise PreconditionError(f"a vertex of pair ({p}, {q}) is already paired")
        used.update((p, q))


def _require_zero_excess_off(g: Graph, excesses: Sequence[Fraction], paired: set):
    for v, e in enumerate(excesses):
        if v not in paired and e != 0:
            raise PreconditionError(f"nonzero excess {e} at unpaired vertex {v}")


def merge_pairs_with_function(g: Graph, pairs: Sequence[Pair], fn: VertexFunction) -> Construction:
    """
    Identify q_j with p_j for every pair

    Requires fn(p_j) = fn(q_j), e(p_j) = -e(q_j), zero excess elsewhere, and
    that no identification creates a self-loop or a parallel edge. Merged
    vertices keep the id of p_j; remaining ids are compacted in order.
    """
    _check_function(g, fn, "fn")
    _check_pairs(g, pairs)
    excesses = excess_vector(g, fn)
    _require_zero_excess_off(g, excesses, {v for pair in pairs for v in pair})
    for p, q in pairs:
        if g.has_edge(p, q):
            raise PreconditionError(f"pair ({p}, {q}) is adjacent; identification would create a self-loop")
        common = sorted(set(g.neighbors(p)) & set(g.neighbors(q)))
        if common:
            raise PreconditionError(f"pair ({p}, {q}) has common neighbors {common}")
        if fn[p] != fn[q]:
            raise PreconditionError(f"values differ on pair ({p}, {q}): {fn[p]} != {fn[q]}")
        if excesses[p] != -excesses[q]:
            raise PreconditionError(
                f"excesses on pair ({p}, {q}) do not cancel: {excesses[p]} and {excesses[q]}"
            )

    target = {v: v for v in range(g.vertex_count)}
    for p, q in pairs:
        target[q] = p
    surviving = [v for v in range(g.vertex_count) if target[v] == v]
    new_id = {v: k for k, v in enumerate(surviving)}
    image = {v: new_id[target[v]] for v in range(g.vertex_count)}
    edges = set()
    for u, v in g.edges:
        key = tuple(sorted((image[u], image[v])))
        if key in edges:
            raise PreconditionError(f"identification creates a parallel edge at {key}")
        edges.add(key)
    graph = build_graph(len(surviving), sorted(edges))
    function = VertexFunction(tuple(fn[v] for v in surviving))
    _verified_balanced(graph, function, "vertex identification")
    return Construction(graph, function, Fraction(1), {"vertices": image})


def connect_pairs_with_function(g: Graph, pairs: Sequence[Pair], fn: VertexFunction) -> Construction:
    """
    Add the edges p_j - q_j

    Requires fn(p_j) = -e(q_j), fn(q_j) = -e(p_j) and zero excess elsewhere.
    """
    _check_function(g, fn, "fn")
    _check_pairs(g, pairs)
    excesses = excess_vector(g, fn)
    _require_zero_excess_off(g, excesses, {v for pair in pairs for v in pair})
    for p, q in pairs:
        if g.has_edge(p, q):
            raise PreconditionError(f"edge ({p}, {q}) already present")
        if fn[p] != -excesses[q] or fn[q] != -excesses[p]:
            raise PreconditionError(
                f"pair ({p}, {q}) needs f(p) = -e(q) and f(q) = -e(p); "
                f"got f = ({fn[p]}, {fn[q]}), e = ({excesses[p]}, {excesses[q]})"
            )
    graph = build_graph(g.vertex_count, g.edges + [tuple(pair) for pair in pairs])
    function = _verified_balanced(graph, fn, "vertex connection")
    return Construction(graph, function, Fraction(1), {"new_edges": [list(pair) for pair in pairs]})


# Worked families

def petal_eigenbasis(k: int) -> List[VertexFunction]:
    """
    k + 1 independent eigenfunctions for 3/2 on make_petal(k): one per
    triangle (0 at the center, +1 and -1 on the petal) and the function
    with -2 at the center and 1 elsewhere
    """
    petal = make_petal(k)
    size = petal.vertex_count
    functions = [VertexFunction.from_mapping(size, {2 * t + 1: 1, 2 * t + 2: -1}) for t in range(k)]
    functions.append(VertexFunction((-2,) + (1,) * (size - 1)))
    for f in functions:
        _verified_eigenpair(petal, f, Fraction(3, 2), "petal eigenbasis")
    if rank_of_functions(functions) != k + 1:
        raise VerificationError("petal eigenbasis is not independent")
    return functions


def figure_eight(a: int, b: int) -> Construction:
    """
    Closed chains of lengths a = 3 (mod 4) and b = 1 (mod 4) joined at
    vertex 0, with the balanced function that is 1 at the joined node

    Neither closed chain has eigenvalue 1 on its own.
    """
    if a < 3 or a % 4 != 3:
        raise PreconditionError(f"first closed chain needs length 3 mod 4, got {a}")
    if b < 5 or b % 4 != 1:
        raise PreconditionError(f"second closed chain needs length 1 mod 4, got {b}")
    first_pattern, second_pattern = (1, -1, -1, 1), (1, 1, -1, -1)
    union, offset = disjoint_union(make_cycle(a), make_cycle(b))
    values = [first_pattern[i % 4] for i in range(a)] + [second_pattern[i % 4] for i in range(b)]
    return merge_pairs_with_function(union, [(0, offset)], VertexFunction(tuple(values)))
