"""Dense complex linear algebra used by every other module.

Matrices are plain ``numpy`` arrays of dtype ``complex128``.  Functions never
mutate their inputs.
"""

from __future__ import annotations

import enum

import numpy as np
import scipy.linalg

from .errors import (
    BranchCut,
    InvalidInput,
    NotUnitary,
    OutsideLogDomain,
    UnsupportedExponent,
)

LOG_TERM_CUTOFF = 1e-17
LOG_MAX_TERMS = 200_000
UNITARY_TOL = 1e-8
BRANCH_CUT_TOL = 1e-10


class TraceKind(enum.Enum):
    NORMALIZED = "norm"
    UNNORMALIZED = "unnorm"

    @classmethod
    def parse(cls, value: "str | TraceKind") -> "TraceKind":
        if isinstance(value, cls):
            return value
        key = str(value).strip().lower()
        aliases = {
            "norm": cls.NORMALIZED,
            "normalized": cls.NORMALIZED,
            "unnorm": cls.UNNORMALIZED,
            "unnormalized": cls.UNNORMALIZED,
        }
        if key not in aliases:
            raise InvalidInput(f"unknown trace kind {value!r}")
        return aliases[key]


def as_matrix(m) -> np.ndarray:
    """Validate ``m`` as a finite square complex matrix and return a complex128 array."""
    a = np.asarray(m, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
        raise InvalidInput(f"expected a non-empty square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise InvalidInput("matrix has non-finite entries")
    return a


def identity(dim: int) -> np.ndarray:
    return np.eye(dim, dtype=np.complex128)


def op_norm(m) -> float:
    """Operator norm (largest singular value)."""
    a = as_matrix(m)
    return float(np.linalg.norm(a, 2))


def singular_values(m) -> np.ndarray:
    return np.linalg.svd(as_matrix(m), compute_uv=False)


def schatten_norm(m, p: float) -> float:
    """Unnormalized Schatten p-norm ``(sum s_i**p)**(1/p)``; ``p = inf`` is the operator norm."""
    if not p > 1:
        raise UnsupportedExponent(f"Schatten exponent must satisfy p > 1, got {p}")
    if np.isinf(p):
        return op_norm(m)
    return schatten_from_singular_values(singular_values(m), p)


def schatten_from_singular_values(s: np.ndarray, p: float) -> float:
    if not p > 1:
        raise UnsupportedExponent(f"Schatten exponent must satisfy p > 1, got {p}")
    top = float(s.max())
    if np.isinf(p):
        return top
    if top == 0.0:
        return 0.0
    # scale first so large p does not overflow
    return float(top * np.sum((s / top) ** p) ** (1.0 / p))


def trace(m, kind: TraceKind = TraceKind.NORMALIZED) -> complex:
    a = as_matrix(m)
    t = complex(np.trace(a))
    if kind is TraceKind.NORMALIZED:
        return t / a.shape[0]
    return t


def log_near_identity(u) -> np.ndarray:
    """Power-series logarithm ``-sum_k (1-u)^k / k`` for ``||u - 1|| < 1``.

    Summation stops once the Frobenius norm of a term (an upper bound for its
    operator norm) drops below ``LOG_TERM_CUTOFF``.
    """
    a = as_matrix(u)
    x = identity(a.shape[0]) - a
    r = op_norm(x)
    if r >= 1.0:
        raise OutsideLogDomain(f"||u - 1|| = {r:.6g} >= 1; use unitary_log or subdivide the path")
    acc = np.zeros_like(x)
    power = x.copy()
    for k in range(1, LOG_MAX_TERMS + 1):
        term = power / k
        acc += term
        if np.linalg.norm(term) < LOG_TERM_CUTOFF:
            break
        power = power @ x
    return -acc


def unitary_defect(u) -> float:
    """``||u* u - 1||`` in operator norm."""
    a = as_matrix(u)
    return op_norm(a.conj().T @ a - identity(a.shape[0]))


def is_unitary(u, tol: float = UNITARY_TOL) -> bool:
    return unitary_defect(u) < tol


def unitary_log(u) -> np.ndarray:
    """Principal logarithm of a unitary matrix via its Schur form.

    Eigenvalues within ``BRANCH_CUT_TOL`` of -1 are refused rather than
    assigned to either side of the cut.
    """
    a = as_matrix(u)
    d = unitary_defect(a)
    if d >= UNITARY_TOL:
        raise NotUnitary(f"||u*u - 1|| = {d:.3g}")
    # unitary => normal, so the complex Schur form is diagonal up to roundoff
    t, z = scipy.linalg.schur(a, output="complex")
    eig = np.diag(t)
    close = np.abs(eig + 1.0)
    if np.any(close < BRANCH_CUT_TOL):
        raise BranchCut(f"eigenvalue within {close.min():.2e} of -1")
    return (z * np.log(eig)) @ z.conj().T


def expm(a) -> np.ndarray:
    return scipy.linalg.expm(as_matrix(a))


def random_unitary(dim: int, seed: int) -> np.ndarray:
    """Haar-random unitary: QR of a complex Ginibre matrix with the R-diagonal phases removed."""
    if dim < 1:
        raise InvalidInput("dim must be >= 1")
    rng = np.random.default_rng(seed)
    z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2.0)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


def random_projection(dim: int, rank: int, seed: int) -> np.ndarray:
    """Orthogonal projection of the given rank, conjugated by a Haar unitary."""
    if dim < 1:
        raise InvalidInput("dim must be >= 1")
    if not 0 <= rank <= dim:
        raise InvalidInput(f"rank {rank} outside [0, {dim}]")
    w = random_unitary(dim, seed)
    diag = np.zeros(dim)
    diag[:rank] = 1.0
    p = (w * diag) @ w.conj().T
    return (p + p.conj().T) / 2


def random_hermitian(dim: int, rng: np.random.Generator) -> np.ndarray:
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return (g + g.conj().T) / 2


def random_skew_hermitian(dim: int, norm: float, rng: np.random.Generator) -> np.ndarray:
    """Skew-Hermitian matrix with operator norm exactly ``norm``."""
    h = random_hermitian(dim, rng)
    scale = np.abs(np.linalg.eigvalsh(h)).max()
    if scale == 0.0:
        return np.zeros((dim, dim), dtype=np.complex128)
    return 1j * h * (norm / scale)


def exp_skew_hermitian(k: np.ndarray) -> np.ndarray:
    """exp(k) for skew-Hermitian k, via the eigendecomposition of the Hermitian matrix -ik."""
    h = -1j * as_matrix(k)
    w, v = np.linalg.eigh((h + h.conj().T) / 2)
    return (v * np.exp(1j * w)) @ v.conj().T


def random_near_identity(dim: int, radius: float, rng: np.random.Generator) -> np.ndarray:
    """``1 + x`` with ``x`` a Gaussian direction rescaled to operator norm ``radius``."""
    x = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    x *= radius / np.linalg.norm(x, 2)
    return identity(dim) + x


def random_invertible(dim: int, cond: float, rng: np.random.Generator) -> np.ndarray:
    """Matrix with singular values spread over ``[1, cond]``."""
    seeds = rng.integers(0, 2**63 - 1, size=2)
    w = random_unitary(dim, int(seeds[0]))
    v = random_unitary(dim, int(seeds[1]))
    if dim == 1:
        s = np.array([1.0])
    else:
        s = np.geomspace(1.0, cond, dim)
    return (w * s) @ v
