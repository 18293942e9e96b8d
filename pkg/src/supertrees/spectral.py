"""Signless Laplacian and adjacency tensors of uniform hypergraphs.

The order-k tensors are never materialised. Applying them edge by edge
already sums over the (k-1)! index orderings that carry weight 1/(k-1)!
each, so ``(A x^{k-1})_i`` is the sum, over edges containing ``i``, of the
product of the other k-1 entries.
"""

from __future__ import annotations

import os
from dataclasses import asdict, dataclass
from typing import Literal

import numpy as np

from . import _fallback
from .errors import DimensionMismatch, Disconnected, NoConvergence, NotTwoUniform
from .hypergraph import Hypergraph

try:
    from . import _kernels
except ImportError:  # extension not built
    _kernels = None

Tensor = Literal["Q", "A"]

BACKENDS = {"python": _fallback}
if _kernels is not None:
    BACKENDS["cython"] = _kernels

_requested = os.environ.get("SUPERTREES_BACKEND", "").lower()
if _requested in BACKENDS:
    BACKEND = _requested
else:
    BACKEND = "cython" if _kernels is not None else "python"


def set_backend(name: str) -> None:
    """Switch the kernel implementation used by :func:`spectral_radius`."""
    global BACKEND
    if name not in BACKENDS:
        raise ValueError(f"unknown or unavailable backend {name!r}; have {sorted(BACKENDS)}")
    BACKEND = name


def backend_name() -> str:
    return BACKEND


@dataclass(frozen=True)
class SolverOptions:
    tolerance: float = 1e-10
    max_iterations: int = 200_000
    shift: float | None = None  # None means 1 + max degree

    def __post_init__(self):
        if not self.tolerance > 0:
            raise ValueError("tolerance must be positive")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be >= 1")

    def resolved_shift(self, G: Hypergraph) -> float:
        if self.shift is not None:
            return float(self.shift)
        return 1.0 + max(G.degrees, default=0)

    def to_dict(self) -> dict:
        return {"tolerance": self.tolerance, "max_iterations": self.max_iterations,
                "shift": "auto" if self.shift is None else self.shift}


@dataclass(frozen=True)
class SpectralResult:
    value: float
    lower: float
    upper: float
    eigenvector: np.ndarray
    residual: float
    iterations: int
    tensor: str = "Q"

    @property
    def width(self) -> float:
        return self.upper - self.lower

    def to_dict(self) -> dict:
        out = asdict(self)
        out["eigenvector"] = [float(v) for v in self.eigenvector]
        return out


def _arrays(G: Hypergraph):
    edges = np.asarray(G.edges, dtype=np.int64).reshape(G.m, G.k)
    deg = np.asarray(G.degrees, dtype=np.float64)
    return np.ascontiguousarray(edges), deg


def _check_vector(G: Hypergraph, x) -> np.ndarray:
    x = np.asarray(x, dtype=np.float64)
    if x.shape != (G.n,):
        raise DimensionMismatch(f"vector of shape {x.shape} does not match n={G.n}")
    return x


def _apply(G: Hypergraph, x, diag: float) -> np.ndarray:
    x = _check_vector(G, x)
    edges, deg = _arrays(G)
    out = np.empty(G.n)
    _fallback.apply_tensor(edges, deg, diag, x, out)
    return out


def apply_Q(G: Hypergraph, x) -> np.ndarray:
    """``Q(G) x^{k-1}``: degree term plus edge products."""
    return _apply(G, x, 1.0)


def apply_A(G: Hypergraph, x) -> np.ndarray:
    """``A(G) x^{k-1}``."""
    return _apply(G, x, 0.0)


def rayleigh(G: Hypergraph, x, tensor: Tensor = "Q") -> float:
    """``x^T (T x^{k-1})`` evaluated as a sum over edges."""
    x = _check_vector(G, x)
    if G.m == 0:
        return 0.0
    X = x[np.asarray(G.edges, dtype=np.int64)]
    total = G.k * np.prod(X, axis=1).sum()
    if tensor == "Q":
        total += (X**G.k).sum()
    return float(total)


def spectral_radius(G: Hypergraph, tensor: Tensor = "Q",
                    opts: SolverOptions | None = None) -> SpectralResult:
    """Largest H-eigenvalue of ``Q(G)`` or ``A(G)`` with a certified bracket.

    Shifted power iteration from the uniform vector. Every iterate gives a
    Collatz-Wielandt enclosure ``min_i (Tx^{k-1})_i / x_i^{k-1} <= value <=
    max_i ...``; the loop stops once the enclosure is narrower than the
    tolerance.
    """
    opts = opts or SolverOptions()
    if tensor not in ("Q", "A"):
        raise ValueError(f"tensor must be 'Q' or 'A', got {tensor!r}")
    if not G.is_connected():
        raise Disconnected("spectral radius is computed for connected hypergraphs only")
    edges, deg = _arrays(G)
    diag = 1.0 if tensor == "Q" else 0.0
    shift = opts.resolved_shift(G)
    x0 = np.full(G.n, G.n ** (-1.0 / G.k))
    kernel = BACKENDS[BACKEND]
    x, lo, hi, it, ok = kernel.power_iterate(edges, deg, diag, shift, opts.tolerance,
                                             opts.max_iterations, x0)
    if not ok:
        raise NoConvergence(
            f"bracket [{lo!r}, {hi!r}] still wider than {opts.tolerance} after {it} iterations",
            lower=lo, upper=hi, iterations=it,
        )
    value = 0.5 * (lo + hi)
    y = _apply(G, x, diag)
    residual = float(np.max(np.abs(y - value * x ** (G.k - 1)))) if G.n else 0.0
    return SpectralResult(value, lo, hi, x, residual, int(it), tensor)


def bracket_trace(G: Hypergraph, tensor: Tensor = "Q", opts: SolverOptions | None = None,
                  iterations: int = 100) -> list[tuple[float, float]]:
    """Per-iteration ``(lower, upper)`` pairs of the power iteration."""
    opts = opts or SolverOptions()
    edges, deg = _arrays(G)
    diag = 1.0 if tensor == "Q" else 0.0
    shift = opts.resolved_shift(G)
    k = G.k
    x = np.full(G.n, G.n ** (-1.0 / k))
    y = np.empty_like(x)
    trace = []
    for _ in range(iterations):
        _fallback.apply_tensor(edges, deg, diag, x, y)
        y += shift * x ** (k - 1)
        ratio = y / x ** (k - 1)
        trace.append((float(ratio.min()) - shift, float(ratio.max()) - shift))
        x = y ** (1.0 / (k - 1))
        x /= np.sum(x**k) ** (1.0 / k)
    return trace


def oracle_rayleigh_max(G: Hypergraph, restarts: int = 8, steps: int = 3000,
                        tensor: Tensor = "Q", seed: int = 0) -> float:
    """Maximise ``x^T T x^{k-1}`` over ``{x >= 0, sum x_i^k = 1}`` directly.

    Projected gradient ascent with an adaptive step from random starts. It
    never calls the power iteration or the tensor kernels; the objective and
    its gradient come from the edge-sum form, so it is an independent lower
    bound for the spectral radius.
    """
    if not G.is_connected():
        raise Disconnected("oracle requires a connected hypergraph")
    k = G.k
    E = np.asarray(G.edges, dtype=np.int64).reshape(G.m, k)
    deg = np.bincount(E.ravel(), minlength=G.n).astype(float)
    with_degree = tensor == "Q"

    def objective(x):
        val = k * np.prod(x[E], axis=1).sum()
        if with_degree:
            val += float(deg @ x**k)
        return val

    def gradient(x):
        g = np.zeros(G.n)
        for j in range(E.shape[0]):
            row = x[E[j]]
            for t in range(k):
                g[E[j, t]] += k * np.prod(np.delete(row, t))
        if with_degree:
            g += k * deg * x ** (k - 1)
        return g

    def project(x):
        x = np.maximum(x, 0.0)
        s = np.sum(x**k)
        return x / s ** (1.0 / k) if s > 0 else None

    rng = np.random.default_rng(seed)
    best = 0.0
    for _ in range(max(restarts, 1)):
        x = project(rng.uniform(0.05, 1.0, G.n))
        f = objective(x)
        eta = 0.1
        for _ in range(steps):
            g = gradient(x)
            normal = x ** (k - 1)
            # tangent to the constraint surface sum x^k = 1
            g -= (g @ normal) / (normal @ normal) * normal
            cand = project(x + eta * g)
            if cand is not None and (fc := objective(cand)) > f:
                x, f = cand, fc
                eta *= 1.5
            else:
                eta *= 0.5
                if eta < 1e-16:
                    break
        best = max(best, f)
    return float(best)


def _jacobi_max_eigenvalue(M: np.ndarray, sweeps: int = 100, tol: float = 1e-14) -> float:
    """Largest eigenvalue of a symmetric matrix by cyclic Jacobi rotations."""
    A = np.array(M, dtype=float)
    n = A.shape[0]
    for _ in range(sweeps):
        off = np.sqrt(np.sum((A - np.diag(np.diag(A))) ** 2))
        if off < tol * max(1.0, np.abs(A).max()):
            break
        for p in range(n - 1):
            for r in range(p + 1, n):
                if abs(A[p, r]) < 1e-300:
                    continue
                theta = (A[r, r] - A[p, p]) / (2.0 * A[p, r])
                t = np.sign(theta) / (abs(theta) + np.hypot(theta, 1.0)) if theta else 1.0
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                J = np.eye(n)
                J[p, p] = J[r, r] = c
                J[p, r] = s
                J[r, p] = -s
                A = J.T @ A @ J
    return float(np.max(np.diag(A)))


def matrix_oracle_q(G: Hypergraph) -> float:
    """Largest eigenvalue of the ordinary signless Laplacian ``D + A`` (k = 2 only)."""
    if G.k != 2:
        raise NotTwoUniform(f"matrix oracle needs k=2, got k={G.k}")
    M = np.zeros((G.n, G.n))
    for a, b in G.edges:
        M[a, b] += 1.0
        M[b, a] += 1.0
        M[a, a] += 1.0
        M[b, b] += 1.0
    return _jacobi_max_eigenvalue(M)
