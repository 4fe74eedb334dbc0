"""
Exact rational computation of balanced functions
Adjacency kernel, eigenvalue-1 multiplicity, excess and exact eigenpair checks
"""
import logging
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Dict, Iterable, Iterator, List, Sequence, Tuple, Union

import numpy as np

from errors import GraphError, ParseError, PreconditionError
from graph_core import Graph

logger = logging.getLogger(__name__)

Rational = Union[int, Fraction]

MERSENNE_61 = (1 << 61) - 1

_RATIONAL_PATTERN = re.compile(r'^\s*([+-]?\d+)(?:\s*/\s*([+-]?\d+))?\s*$')


def parse_rational(text: str) -> Fraction:
    """
    Parse "a" or "a/b" into an exact Fraction

    Float syntax is rejected so that values are never silently rounded.
    """
    match = _RATIONAL_PATTERN.match(str(text))
    if not match:
        raise ParseError(f"not a rational of the form a or a/b: {text!r}")
    numerator = int(match.group(1))
    denominator = int(match.group(2)) if match.group(2) is not None else 1
    if denominator == 0:
        raise ParseError(f"zero denominator in {text!r}")
    return Fraction(numerator, denominator)


@dataclass(frozen=True)
class VertexFunction:
    """Exact rational values, one per vertex"""

    values: Tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, 'values', tuple(Fraction(v) for v in self.values))

    @classmethod
    def zeros(cls, n: int) -> 'VertexFunction':
        return cls((Fraction(0),) * n)

    @classmethod
    def from_mapping(cls, n: int, values: Dict[int, Rational]) -> 'VertexFunction':
        """Function on n vertices with the given values and 0 elsewhere"""
        data = [Fraction(0)] * n
        for v, value in values.items():
            if not 0 <= v < n:
                raise GraphError(f"vertex id {v} out of range for {n} vertices")
            data[v] = Fraction(value)
        return cls(tuple(data))

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, i: int) -> Fraction:
        return self.values[i]

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.values)

    def __neg__(self) -> 'VertexFunction':
        return VertexFunction(tuple(-v for v in self.values))

    def is_zero(self) -> bool:
        return all(v == 0 for v in self.values)

    def is_integral(self) -> bool:
        return all(v.denominator == 1 for v in self.values)

    def as_ints(self) -> List[int]:
        if not self.is_integral():
            raise PreconditionError("function has non-integer values")
        return [int(v) for v in self.values]

    def as_floats(self) -> np.ndarray:
        return np.array([float(v) for v in self.values], dtype=float)

    def extended(self, extra: Iterable[Rational]) -> 'VertexFunction':
        return VertexFunction(self.values + tuple(Fraction(v) for v in extra))

    def restricted(self, vertices: Sequence[int]) -> 'VertexFunction':
        return VertexFunction(tuple(self.values[v] for v in vertices))


@dataclass(frozen=True)
class KernelBasis:
    """Integer basis of ker A, one vector per free variable"""

    basis: Tuple[VertexFunction, ...]

    @property
    def multiplicity(self) -> int:
        return len(self.basis)


def _check_size(g: Graph, f: VertexFunction):
    if len(f) != g.vertex_count:
        raise PreconditionError(
            f"function has {len(f)} values but the graph has {g.vertex_count} vertices"
        )


def _primitive(row: List[int]) -> List[int]:
    content = reduce(math.gcd, row, 0)
    if content > 1:
        return [x // content for x in row]
    return row


def _integer_row_reduce(rows: List[List[int]], columns: int) -> Tuple[List[List[int]], List[int]]:
    """
    Fraction-free Gauss-Jordan elimination over the integers

    Every elimination step cross-multiplies and then divides the row by its
    content, so entries stay integral and small.

    Returns:
        (nonzero rows of the reduced matrix, pivot column per row)
    """
    rows = [_primitive(list(row)) for row in rows]
    pivot_columns: List[int] = []
    rank = 0
    for c in range(columns):
        pivot = next((i for i in range(rank, len(rows)) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        pivot_row = rows[rank]
        a = pivot_row[c]
        for i in range(len(rows)):
            b = rows[i][c]
            if i != rank and b != 0:
                rows[i] = _primitive([a * x - b * y for x, y in zip(rows[i], pivot_row)])
        pivot_columns.append(c)
        rank += 1
    return rows[:rank], pivot_columns


def _normalized_integer_vector(values: Sequence[Fraction]) -> List[int]:
    """Clear denominators, divide by the gcd, make the first nonzero entry positive"""
    common = reduce(lambda acc, v: acc * v.denominator // math.gcd(acc, v.denominator), values, 1)
    ints = _primitive([int(v * common) for v in values])
    first = next((x for x in ints if x != 0), 0)
    if first < 0:
        ints = [-x for x in ints]
    return ints


def adjacency_matrix_rows(g: Graph) -> List[List[int]]:
    rows = [[0] * g.vertex_count for _ in range(g.vertex_count)]
    for i, neighbors in enumerate(g.adjacency):
        for j in neighbors:
            rows[i][j] = 1
    return rows


def adjacency_kernel(g: Graph) -> KernelBasis:
    """
    Exact basis of ker A

    One basis vector per free column of the reduced adjacency matrix, free
    columns taken in ascending vertex order, each scaled to coprime integers
    with a positive first nonzero entry.
    """
    n = g.vertex_count
    reduced, pivot_columns = _integer_row_reduce(adjacency_matrix_rows(g), n)
    pivots = set(pivot_columns)
    free_columns = [c for c in range(n) if c not in pivots]
    basis = []
    for free in free_columns:
        vector = [Fraction(0)] * n
        vector[free] = Fraction(1)
        for row, pivot in zip(reduced, pivot_columns):
            vector[pivot] = Fraction(-row[free], row[pivot])
        basis.append(VertexFunction(tuple(_normalized_integer_vector(vector))))
    logger.debug("adjacency kernel of %d-vertex graph has dimension %d", n, len(basis))
    return KernelBasis(tuple(basis))


def eigenvalue_one_multiplicity(g: Graph) -> int:
    return adjacency_kernel(g).multiplicity


def adjacency_rank_mod_prime(g: Graph, p: int = MERSENNE_61) -> int:
    """Rank of A over GF(p); agrees with the rational rank unless p divides a pivot"""
    rows = [[x % p for x in row] for row in adjacency_matrix_rows(g)]
    rank = 0
    for c in range(g.vertex_count):
        pivot = next((i for i in range(rank, len(rows)) if rows[i][c]), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inverse = pow(rows[rank][c], p - 2, p)
        rows[rank] = [x * inverse % p for x in rows[rank]]
        for i in range(len(rows)):
            factor = rows[i][c]
            if i != rank and factor:
                rows[i] = [(x - factor * y) % p for x, y in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def rank_of_functions(functions: Sequence[VertexFunction]) -> int:
    """Exact rank of a list of equally sized functions"""
    if not functions:
        return 0
    width = len(functions[0])
    rows = []
    for f in functions:
        if len(f) != width:
            raise PreconditionError("functions of different sizes")
        common = reduce(lambda acc, v: acc * v.denominator // math.gcd(acc, v.denominator), f, 1)
        rows.append([int(v * common) for v in f])
    return len(_integer_row_reduce(rows, width)[0])


def excess(g: Graph, f: VertexFunction, p: int) -> Fraction:
    """e(p): the sum of f over the neighbors of p"""
    _check_size(g, f)
    return sum((f[q] for q in g.neighbors(p)), Fraction(0))


def excess_vector(g: Graph, f: VertexFunction) -> List[Fraction]:
    _check_size(g, f)
    return [sum((f[q] for q in neighbors), Fraction(0)) for neighbors in g.adjacency]


def is_balanced(g: Graph, f: VertexFunction) -> bool:
    """True iff every neighbor sum vanishes; empty sums count as 0"""
    return all(e == 0 for e in excess_vector(g, f))


def edge_product_sum(g: Graph, f: VertexFunction) -> Fraction:
    """Sum over edges (q, r) of f(q) f(r); half of sum_p f(p) e(p)"""
    _check_size(g, f)
    return sum((f[q] * f[r] for q, r in g.edges), Fraction(0))


def verify_eigenpair_exact(g: Graph, f: VertexFunction, eigenvalue: Rational) -> bool:
    """
    Exact check of (1/n_i) sum_{j~i} f(j) = (1 - lambda) f(i) at every vertex

    Degree-0 vertices require f(i) (1 - lambda) = 0.

    Raises:
        PreconditionError: if f is identically zero
    """
    _check_size(g, f)
    if f.is_zero():
        raise PreconditionError("the zero function is not an eigenfunction")
    shift = 1 - Fraction(eigenvalue)
    for i, neighbors in enumerate(g.adjacency):
        total = sum((f[j] for j in neighbors), Fraction(0))
        if total != shift * len(neighbors) * f[i]:
            return False
        if not neighbors and f[i] * shift != 0:
            return False
    return True


def pending_vertex_zeros(g: Graph, basis: KernelBasis) -> bool:
    """True iff every basis element vanishes at every neighbor of a pending vertex"""
    anchors = {r for q, neighbors in enumerate(g.adjacency) if len(neighbors) == 1 for r in neighbors}
    return all(u[r] == 0 for u in basis.basis for r in anchors)


def parse_function(text: str, n: int) -> VertexFunction:
    """
    Parse lines "v a" or "v a/b"; unlisted vertices default to 0

    Raises:
        ParseError: on malformed lines, repeated or out-of-range vertices
    """
    values: Dict[int, Fraction] = {}
    for line_number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith('#'):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"line {line_number}: expected 'vertex value', got {line!r}")
        try:
            v = int(parts[0])
        except ValueError as e:
            raise ParseError(f"line {line_number}: {e}") from e
        if not 0 <= v < n:
            raise ParseError(f"line {line_number}: vertex id {v} out of range for {n} vertices")
        if v in values:
            raise ParseError(f"line {line_number}: vertex {v} listed twice")
        values[v] = parse_rational(parts[1])
    return VertexFunction.from_mapping(n, values)


def serialize_function(f: VertexFunction) -> str:
    return "\n".join(f"{v} {value}" for v, value in enumerate(f))
