"""
Floating-point spectrum of the normalized graph Laplacian
Cyclic Jacobi on the symmetrized operator, multiplicity grouping and residual checks
"""
import logging
import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from errors import ConvergenceError, GraphError, PreconditionError
from exact_balance import eigenvalue_one_multiplicity
from graph_core import Graph, is_bipartite, is_connected
from settings import get_settings

logger = logging.getLogger(__name__)

JACOBI_SWEEP_LIMIT = 50
JACOBI_RELATIVE_TOLERANCE = 1e-12
CLAMP_MARGIN = 1e-9


@dataclass(frozen=True, eq=False)
class Spectrum:
    """
    Grouped spectrum of Delta

    `values` holds all N eigenvalues in ascending order and `eigenvectors`
    the matching orthonormal columns of the symmetrized matrix.
    """

    eigenvalues: Tuple[float, ...]
    multiplicities: Tuple[int, ...]
    values: np.ndarray
    eigenvectors: np.ndarray
    degrees: np.ndarray
    grouping_tolerance: float

    @property
    def size(self) -> int:
        return len(self.values)

    def groups(self) -> List[Tuple[float, int]]:
        return list(zip(self.eigenvalues, self.multiplicities))

    def eigenfunctions(self) -> np.ndarray:
        """Columns u(i) = w(i) / sqrt(n_i), eigenfunctions of Delta itself"""
        return self.eigenvectors / np.sqrt(self.degrees)[:, None]

    def to_json(self, include_eigenvectors: bool = False) -> dict:
        data = {
            "eigenvalues": list(self.eigenvalues),
            "multiplicities": list(self.multiplicities),
            "tol": self.grouping_tolerance,
        }
        if include_eigenvectors:
            data["values"] = self.values.tolist()
            data["eigenvectors"] = self.eigenfunctions().T.tolist()
        return data


@dataclass(frozen=True)
class BipartiteTest:
    """Outcome of the spectral bipartiteness test"""

    bipartite: bool
    mirror_symmetric: bool

    def __bool__(self) -> bool:
        return self.bipartite


@dataclass(frozen=True)
class GraphSummary:
    """Invariants shown by the CLI and the live viewer"""

    vertex_count: int
    edge_count: int
    connected: bool
    bipartite: bool
    eigenvalue_one_multiplicity: int
    spectrum: Optional[Spectrum]


def _require_no_isolated(g: Graph):
    isolated = g.isolated_vertices()
    if isolated:
        raise GraphError(f"the normalized Laplacian is undefined at isolated vertices {isolated}")


def laplacian_apply(g: Graph, v: Sequence[float]) -> np.ndarray:
    """(Delta v)(i) = v(i) - (1/n_i) sum_{j~i} v(j)"""
    _require_no_isolated(g)
    v = np.asarray(v, dtype=float)
    if v.shape != (g.vertex_count,):
        raise PreconditionError(f"vector of shape {v.shape} for {g.vertex_count} vertices")
    averages = np.array([v[list(neighbors)].mean() for neighbors in g.adjacency])
    return v - averages


def symmetrized_matrix(g: Graph) -> np.ndarray:
    """
    M = I - D^{-1/2} A D^{-1/2}, similar to Delta

    An eigenvector w of M gives the eigenfunction u(i) = w(i) / sqrt(n_i).
    """
    _require_no_isolated(g)
    degrees = np.array(g.degrees(), dtype=float)
    m = np.eye(g.vertex_count)
    for i, j in g.edges:
        m[i, j] = m[j, i] = -1.0 / math.sqrt(degrees[i] * degrees[j])
    return m


def _off_diagonal_norm(a: np.ndarray) -> float:
    return float(np.linalg.norm(a - np.diag(np.diag(a))))


def jacobi_eigh(matrix: np.ndarray, max_sweeps: int = JACOBI_SWEEP_LIMIT) -> Tuple[np.ndarray, np.ndarray]:
    """
    Eigen-decomposition of a real symmetric matrix by cyclic Jacobi rotations

    Sweeps stop once the off-diagonal Frobenius norm drops below
    1e-12 times the norm of the matrix.

    Returns:
        (ascending eigenvalues, orthonormal eigenvectors as columns)

    Raises:
        ConvergenceError: if max_sweeps sweeps do not suffice
    """
    a = np.array(matrix, dtype=float)
    n = a.shape[0]
    v = np.eye(n)
    threshold = JACOBI_RELATIVE_TOLERANCE * float(np.linalg.norm(a))
    sweeps = 0
    while _off_diagonal_norm(a) > threshold:
        if sweeps == max_sweeps:
            raise ConvergenceError(
                f"Jacobi did not converge in {max_sweeps} sweeps "
                f"(off-diagonal norm {_off_diagonal_norm(a):.3e})"
            )
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = math.copysign(1.0, theta) / (abs(theta) + math.hypot(theta, 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                col_p, col_q = a[:, p].copy(), a[:, q].copy()
                a[:, p] = c * col_p - s * col_q
                a[:, q] = s * col_p + c * col_q
                row_p, row_q = a[p, :].copy(), a[q, :].copy()
                a[p, :] = c * row_p - s * row_q
                a[q, :] = s * row_p + c * row_q
                a[p, q] = a[q, p] = 0.0
                vec_p, vec_q = v[:, p].copy(), v[:, q].copy()
                v[:, p] = c * vec_p - s * vec_q
                v[:, q] = s * vec_p + c * vec_q
        sweeps += 1
    logger.debug("Jacobi converged on %dx%d matrix after %d sweeps", n, n, sweeps)
    order = np.argsort(np.diag(a), kind='stable')
    return np.diag(a)[order], v[:, order]


def _group(values: np.ndarray, tolerance: float) -> Tuple[Tuple[float, ...], Tuple[int, ...]]:
    groups: List[List[float]] = []
    for x in values:
        if groups and x - groups[-1][-1] < tolerance:
            groups[-1].append(float(x))
        else:
            groups.append([float(x)])
    return (
        tuple(float(np.mean(group)) for group in groups),
        tuple(len(group) for group in groups),
    )


def full_spectrum(g: Graph, grouping_tol: Optional[float] = None) -> Spectrum:
    """
    All N eigenpairs of Delta, grouped into multiplicities

    Args:
        g: Graph without isolated vertices
        grouping_tol: Eigenvalues closer than this are grouped; defaults to
            the configured grouping tolerance

    Returns:
        Spectrum with eigenvalues clamped to [0, 2] when within 1e-9 outside
    """
    tolerance = grouping_tol if grouping_tol is not None else get_settings().grouping_tolerance
    _require_no_isolated(g)
    if not is_connected(g):
        logger.warning("spectrum of a disconnected graph: eigenvalue 0 is not simple")
    values, vectors = jacobi_eigh(symmetrized_matrix(g))
    values = np.where((values < 0.0) & (values >= -CLAMP_MARGIN), 0.0, values)
    values = np.where((values > 2.0) & (values <= 2.0 + CLAMP_MARGIN), 2.0, values)
    eigenvalues, multiplicities = _group(values, tolerance)
    return Spectrum(
        eigenvalues=eigenvalues,
        multiplicities=multiplicities,
        values=values,
        eigenvectors=vectors,
        degrees=np.array(g.degrees(), dtype=float),
        grouping_tolerance=tolerance,
    )


def weighted_inner_product(g: Graph, u: Sequence[float], v: Sequence[float]) -> float:
    """(u, v) = sum_i n_i u(i) v(i)"""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    if u.shape != (g.vertex_count,) or v.shape != (g.vertex_count,):
        raise PreconditionError(f"vectors of shapes {u.shape}, {v.shape} for {g.vertex_count} vertices")
    return float(np.dot(np.array(g.degrees(), dtype=float) * u, v))


def residual(g: Graph, u: Sequence[float], eigenvalue: float) -> float:
    """max |Delta u - lambda u| divided by max |u|"""
    u = np.asarray(u, dtype=float)
    scale = float(np.max(np.abs(u))) if u.size else 0.0
    if scale == 0.0:
        raise PreconditionError("residual of the zero vector is undefined")
    return float(np.max(np.abs(laplacian_apply(g, u) - eigenvalue * u))) / scale


def multiplicity_of(spec: Spectrum, eigenvalue: float, tol: float) -> int:
    return sum(m for value, m in spec.groups() if abs(value - eigenvalue) <= tol)


def spectral_bipartite_test(spec: Spectrum, tol: float) -> BipartiteTest:
    """
    lambda_max >= 2 - tol, plus whether the multiset is symmetric about 1
    """
    if spec.size == 0:
        return BipartiteTest(False, True)
    ascending = np.sort(spec.values)
    mirrored = np.sort(2.0 - spec.values)
    return BipartiteTest(
        bipartite=bool(ascending[-1] >= 2.0 - tol),
        mirror_symmetric=bool(np.all(np.abs(ascending - mirrored) <= tol)),
    )


def summarize_graph(g: Graph, grouping_tol: Optional[float] = None) -> GraphSummary:
    """Counts, connectivity, bipartiteness, exact m1 and, when defined, the spectrum"""
    spectrum = None
    if g.vertex_count and not g.isolated_vertices():
        spectrum = full_spectrum(g, grouping_tol)
    return GraphSummary(
        vertex_count=g.vertex_count,
        edge_count=g.edge_count,
        connected=is_connected(g),
        bipartite=is_bipartite(g),
        eigenvalue_one_multiplicity=eigenvalue_one_multiplicity(g),
        spectrum=spectrum,
    )
