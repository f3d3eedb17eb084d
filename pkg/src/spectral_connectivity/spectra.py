"""Dense symmetric eigensolver and the Laplacian / adjacency / signless spectra.

The solver is a cyclic Jacobi method using the round-robin (parallel)
ordering: each round applies ``n // 2`` disjoint plane rotations at once, so
the same code diagonalises one matrix or a stack of thousands of them.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import (
    ConstantVectorError,
    EmptyOrFullError,
    NoConvergenceError,
    NotACutError,
    PencilDomainError,
    TooSmallError,
)
from .graph import Graph, _check_members, _cut_degree_mask, component_masks

JACOBI_TOL = 1e-12
MAX_SWEEPS = 100


@dataclass(frozen=True)
class Spectrum:
    values: np.ndarray  # descending
    residual: float
    iterations: int
    vectors: np.ndarray | None = None  # column i pairs with values[i]

    def __len__(self):
        return len(self.values)

    def __getitem__(self, i):
        return float(self.values[i])


@lru_cache(maxsize=None)
def _round_robin(n: int) -> tuple[tuple[np.ndarray, np.ndarray], ...]:
    """Rounds of disjoint index pairs covering every (p, q) exactly once."""
    m = n + n % 2
    players = list(range(m))
    rounds = []
    for _ in range(m - 1):
        pairs = []
        for i in range(m // 2):
            p, q = players[i], players[m - 1 - i]
            if p < n and q < n:
                pairs.append((min(p, q), max(p, q)))
        P = np.array([p for p, _ in pairs], dtype=np.intp)
        Q = np.array([q for _, q in pairs], dtype=np.intp)
        rounds.append((P, Q))
        players = [players[0], players[-1], *players[1:-1]]
    return tuple(rounds)


def _off_norm(A: np.ndarray) -> np.ndarray:
    # A has the batch on the last axis: shape (n, n, B)
    off = A * (1.0 - np.eye(A.shape[0]))[:, :, None]
    return np.sqrt(np.einsum("ijb,ijb->b", off, off))


def jacobi_eigh(
    M: np.ndarray,
    vectors: bool = False,
    tol: float = JACOBI_TOL,
    max_sweeps: int = MAX_SWEEPS,
) -> tuple[np.ndarray, np.ndarray | None, int]:
    """Diagonalise a stack of symmetric matrices of shape ``(..., n, n)``.

    Returns eigenvalues sorted descending, the matching eigenvectors (as
    columns) when requested, and the number of sweeps used.  Sweeping stops
    once the off-diagonal Frobenius norm is below ``tol * ||M||_F``.
    """
    M = np.asarray(M, dtype=float)
    if M.ndim < 2 or M.shape[-1] != M.shape[-2] or M.shape[-1] < 1:
        raise ValueError("expected square matrices of order >= 1")
    n = M.shape[-1]
    batch_shape = M.shape[:-2]
    # batch-last layout keeps row and column gathers contiguous
    A = M.reshape(-1, n, n).transpose(1, 2, 0).copy()
    V = np.tile(np.eye(n)[:, :, None], (1, 1, A.shape[-1])) if vectors else None
    target = tol * np.sqrt(np.einsum("ijb,ijb->b", A, A))
    active = np.flatnonzero(_off_norm(A) > target)
    sweeps = 0
    rounds = _round_robin(n)
    while active.size:
        if sweeps == max_sweeps:
            raise NoConvergenceError(f"Jacobi did not converge in {max_sweeps} sweeps")
        sweeps += 1
        whole = active.size == A.shape[-1]
        a = A if whole else np.ascontiguousarray(A[:, :, active])
        v = None
        if vectors:
            v = V if whole else np.ascontiguousarray(V[:, :, active])
        for P, Q in rounds:
            if not P.size:
                continue
            apq = a[P, Q]
            app = a[P, P]
            aqq = a[Q, Q]
            nonzero = apq != 0.0
            with np.errstate(over="ignore"):
                theta = np.divide(aqq - app, 2.0 * apq, out=np.zeros_like(apq), where=nonzero)
                t = np.where(nonzero, np.sign(theta) / (np.abs(theta) + np.hypot(theta, 1.0)), 0.0)
            t = np.where(nonzero & (theta == 0.0), 1.0, t)
            c = 1.0 / np.sqrt(t * t + 1.0)
            s = t * c
            # columns: A J
            cc, sc = c[None, :, :], s[None, :, :]
            colP, colQ = a[:, P], a[:, Q]
            a[:, P] = cc * colP - sc * colQ
            a[:, Q] = sc * colP + cc * colQ
            # rows: J^T (A J)
            cr, sr = c[:, None, :], s[:, None, :]
            rowP, rowQ = a[P], a[Q]
            a[P] = cr * rowP - sr * rowQ
            a[Q] = sr * rowP + cr * rowQ
            if vectors:
                vP, vQ = v[:, P], v[:, Q]
                v[:, P] = cc * vP - sc * vQ
                v[:, Q] = sc * vP + cc * vQ
        if not whole:
            A[:, :, active] = a
            if vectors:
                V[:, :, active] = v
        still = _off_norm(a) > target[active]
        active = active[still]
    values = np.einsum("iib->bi", A)
    order = np.argsort(-values, axis=-1, kind="stable")
    values = np.take_along_axis(values, order, axis=-1).reshape(*batch_shape, n)
    if vectors:
        V = V.transpose(2, 0, 1)
        V = np.take_along_axis(V, order[:, None, :], axis=-1).reshape(*batch_shape, n, n)
    return values, V, sweeps


def eigenvalues_sym(M: np.ndarray) -> Spectrum:
    """Eigen-decomposition of one real symmetric matrix, with residual tracking."""
    M = np.asarray(M, dtype=float)
    if not np.array_equal(M, M.T):
        raise ValueError("matrix is not symmetric")
    values, V, sweeps = jacobi_eigh(M, vectors=True)
    residual = float(np.max(np.abs(M @ V - V * values))) if M.size else 0.0
    return Spectrum(values=values, residual=residual, iterations=sweeps, vectors=V)


# matrices

def adjacency(G: Graph) -> np.ndarray:
    A = np.zeros((G.n, G.n))
    for u, v in G.edges:
        A[u, v] = A[v, u] = 1.0
    return A


def degree_matrix(G: Graph) -> np.ndarray:
    return np.diag(np.array(G.degrees(), dtype=float))


def laplacian(G: Graph) -> np.ndarray:
    return degree_matrix(G) - adjacency(G)


def signless_laplacian(G: Graph) -> np.ndarray:
    return degree_matrix(G) + adjacency(G)


def check_pencil(a: float, b: float) -> None:
    if not (b > 0 and a >= -b):
        raise PencilDomainError(f"need b > 0 and a >= -b, got a={a}, b={b}")


def pencil(G: Graph, a: float, b: float) -> np.ndarray:
    """The matrix ``a D + b A``."""
    check_pencil(a, b)
    return a * degree_matrix(G) + b * adjacency(G)


# cached spectra; graphs are immutable so keying on them is safe

@lru_cache(maxsize=8192)
def laplacian_spectrum(G: Graph) -> Spectrum:
    return eigenvalues_sym(laplacian(G))


@lru_cache(maxsize=8192)
def adjacency_spectrum(G: Graph) -> Spectrum:
    return eigenvalues_sym(adjacency(G))


@lru_cache(maxsize=8192)
def signless_spectrum(G: Graph) -> Spectrum:
    return eigenvalues_sym(signless_laplacian(G))


def _need_two(G: Graph) -> None:
    if G.n < 2:
        raise TooSmallError("need at least two vertices")


def algebraic_connectivity(G: Graph) -> float:
    """Second smallest Laplacian eigenvalue."""
    _need_two(G)
    return laplacian_spectrum(G)[G.n - 2]


def laplacian_radius(G: Graph) -> float:
    _need_two(G)
    return laplacian_spectrum(G)[0]


def lambda2(G: Graph) -> float:
    _need_two(G)
    return adjacency_spectrum(G)[1]


def q2(G: Graph) -> float:
    _need_two(G)
    return signless_spectrum(G)[1]


def pencil_lambda2(G: Graph, a: float, b: float) -> float:
    _need_two(G)
    return float(eigenvalues_sym(pencil(G, a, b)).values[1])


def fiedler_vector(G: Graph) -> np.ndarray:
    _need_two(G)
    return laplacian_spectrum(G).vectors[:, G.n - 2].copy()


def fiedler_quotient(G: Graph, x) -> float:
    """``n * sum_{ij in E} (x_i - x_j)^2 / sum_{i<j} (x_i - x_j)^2``."""
    x = np.asarray(x, dtype=float)
    if x.shape != (G.n,):
        raise ValueError(f"expected a vector of length {G.n}")
    if np.all(x == x[0]):
        raise ConstantVectorError("the quotient is undefined for constant vectors")
    edges = np.array(G.edges, dtype=np.intp).reshape(-1, 2)
    numerator = np.sum((x[edges[:, 0]] - x[edges[:, 1]]) ** 2)
    # sum_{i<j} (x_i - x_j)^2 = n * sum x_i^2 - (sum x_i)^2
    denominator = G.n * np.dot(x, x) - x.sum() ** 2
    return float(G.n * numerator / denominator)


def cut_quotient_bound(G: Graph, X) -> float:
    """``n d(X) / (|X| |V - X|)``, the value of the +-1 test vector."""
    mask = _check_members(G, X)
    if mask == 0 or mask == G.full_mask:
        raise EmptyOrFullError("need a nonempty proper subset")
    size = mask.bit_count()
    return G.n * _cut_degree_mask(G, mask) / (size * (G.n - size))


def vertex_cut_quotient_bound(G: Graph, S, X) -> float:
    """``n d(S) / (n (n - |S|) - (|X| - |Y|)^2)`` with ``Y = V - S - X``.

    ``X`` must be a union of components of ``G - S`` and ``Y`` nonempty.
    """
    s_mask = _check_members(G, S)
    x_mask = _check_members(G, X)
    if s_mask & x_mask or not x_mask:
        raise NotACutError("X must be nonempty and disjoint from S")
    y_mask = G.full_mask & ~s_mask & ~x_mask
    if not y_mask:
        raise NotACutError("S and X cover every vertex")
    if any(G.masks[v] & y_mask for v in range(G.n) if x_mask >> v & 1):
        raise NotACutError("X is not a union of components of G - S")
    if not s_mask:
        raise NotACutError("empty S only separates a disconnected graph")
    n = G.n
    d_s = _cut_degree_mask(G, s_mask)
    sx, sy = x_mask.bit_count(), y_mask.bit_count()
    return n * d_s / (n * (n - s_mask.bit_count()) - (sx - sy) ** 2)


def haemers_bound(mu1: float, mu_fiedler: float) -> float:
    """``((mu1 - mu) / (mu1 + mu))^2``."""
    return ((mu1 - mu_fiedler) / (mu1 + mu_fiedler)) ** 2


def brouwer_haemers_bound(mu1: float, mu_fiedler: float) -> float:
    """``(mu1 - mu)^2 / (4 mu1 mu)``; needs a connected graph (``mu > 0``)."""
    return (mu1 - mu_fiedler) ** 2 / (4.0 * mu1 * mu_fiedler)


def zero_multiplicity(G: Graph, tol: float = 1e-7) -> int:
    return int(np.sum(np.abs(laplacian_spectrum(G).values) < tol))


def count_components(G: Graph) -> int:
    return len(component_masks(G))
