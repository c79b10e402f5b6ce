"""The trace-of-log functional L, the path pre-determinant, and its class modulo a trace lattice.

The path integral ``(1/2 pi i) tau(int xi' xi^-1 dt)`` is never evaluated by
quadrature.  A sampled path is refined until consecutive ratios are close to
the identity and the value is the telescoping sum of ``L(xi_{k+1} xi_k^-1)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import EndpointMismatch, InvalidInput, OutsideLogDomain, PathTooCoarse
from .linalg import (
    TraceKind,
    as_matrix,
    expm,
    identity,
    is_unitary,
    log_near_identity,
    op_norm,
    trace,
    unitary_log,
)

SEGMENT_RADIUS = 0.5
MAX_SUBDIVISION_DEPTH = 20
INVERTIBLE_TOL = 1e-10
ENDPOINT_TOL = 1e-10


def L_tau(u, kind: TraceKind = TraceKind.NORMALIZED) -> complex:
    """``(1/2 pi i) tau(log u)`` for ``||u - 1|| < 1``."""
    return trace(log_near_identity(u), kind) / (2j * math.pi)


def _ratio(nxt: np.ndarray, cur: np.ndarray) -> np.ndarray:
    return np.linalg.solve(cur.T, nxt.T).T  # nxt @ inv(cur)


def _midpoint(cur: np.ndarray, nxt: np.ndarray) -> np.ndarray:
    if is_unitary(cur) and is_unitary(nxt):
        try:
            return expm(0.5 * unitary_log(_ratio(nxt, cur))) @ cur
        except ValueError:
            pass
    return 0.5 * (cur + nxt)


@dataclass(frozen=True, eq=False)
class PathOfInvertibles:
    """Sampled path of invertible matrices, refined so each step ratio is within 1/2 of 1.

    Coarse segments are bisected (geodesic midpoints for unitary endpoints,
    linear midpoints otherwise) up to ``MAX_SUBDIVISION_DEPTH`` times.
    """

    samples: tuple[np.ndarray, ...]

    def __init__(self, samples: Sequence, max_depth: int = MAX_SUBDIVISION_DEPTH):
        mats = [as_matrix(s) for s in samples]
        if len(mats) < 2:
            raise InvalidInput("a path needs at least two samples")
        dim = mats[0].shape[0]
        if any(m.shape != (dim, dim) for m in mats):
            raise InvalidInput("path samples differ in dimension")
        for m in mats:
            smin = np.linalg.svd(m, compute_uv=False).min()
            if smin <= INVERTIBLE_TOL:
                raise InvalidInput(f"path sample not invertible (smallest singular value {smin:.2e})")
        refined = [mats[0]]
        for nxt in mats[1:]:
            refined.extend(_refine(refined[-1], nxt, max_depth))
        for m in refined:
            m.setflags(write=False)
        object.__setattr__(self, "samples", tuple(refined))

    @property
    def dim(self) -> int:
        return self.samples[0].shape[0]

    @property
    def start(self) -> np.ndarray:
        return self.samples[0]

    @property
    def end(self) -> np.ndarray:
        return self.samples[-1]

    def __len__(self) -> int:
        return len(self.samples)

    def ratios(self) -> list[np.ndarray]:
        return [_ratio(b, a) for a, b in zip(self.samples, self.samples[1:])]

    @classmethod
    def straight(cls, u, num: int = 2) -> "PathOfInvertibles":
        """``t -> (1 - t) + t u`` sampled at ``num`` points."""
        u = as_matrix(u)
        one = identity(u.shape[0])
        return cls([(1 - t) * one + t * u for t in np.linspace(0.0, 1.0, num)])

    @classmethod
    def projection_loop(cls, p, num: int = 64) -> "PathOfInvertibles":
        """``t -> (1 - p) + exp(2 pi i t) p`` sampled at ``num`` points of [0, 1]."""
        p = as_matrix(p)
        one = identity(p.shape[0])
        return cls([(one - p) + np.exp(2j * math.pi * t) * p for t in np.linspace(0.0, 1.0, num)])

    @classmethod
    def constant(cls, u, num: int = 2) -> "PathOfInvertibles":
        return cls([as_matrix(u)] * num)


def _refine(cur: np.ndarray, nxt: np.ndarray, depth: int) -> list[np.ndarray]:
    """Samples strictly after ``cur`` up to and including ``nxt``."""
    if op_norm(_ratio(nxt, cur) - identity(cur.shape[0])) < SEGMENT_RADIUS:
        return [nxt]
    if depth == 0:
        raise PathTooCoarse("segment still outside the log domain at maximal subdivision depth")
    mid = _midpoint(cur, nxt)
    return _refine(cur, mid, depth - 1) + _refine(mid, nxt, depth - 1)


def path_predeterminant(xi: PathOfInvertibles, kind: TraceKind = TraceKind.NORMALIZED) -> complex:
    """Telescoping sum of ``L_tau`` over the step ratios of the path."""
    total = 0j
    for r in xi.ratios():
        try:
            total += L_tau(r, kind)
        except OutsideLogDomain as exc:
            raise PathTooCoarse(str(exc)) from exc
    return total


@dataclass(frozen=True)
class Lattice:
    """``generator * Z``, or the trivial lattice ``{0}`` when ``generator`` is None."""

    generator: float | None = 1.0

    def __post_init__(self):
        if self.generator is not None and not self.generator > 0:
            raise InvalidInput("lattice generator must be positive")

    @classmethod
    def integers(cls) -> "Lattice":
        return cls(1.0)

    @classmethod
    def trivial(cls) -> "Lattice":
        return cls(None)

    @classmethod
    def for_trace(cls, kind: TraceKind, dim: int) -> "Lattice":
        """Image of K0(M_dim) under the trace: Z for Tr, (1/dim)Z for Tr/dim."""
        return cls(1.0 if kind is TraceKind.UNNORMALIZED else 1.0 / dim)

    def nearest_index(self, x: float) -> int:
        if self.generator is None:
            return 0
        return int(round(x / self.generator))

    def point(self, index: int) -> float:
        return 0.0 if self.generator is None else index * self.generator


def determinant_mod_lattice(u, path: PathOfInvertibles, kind: TraceKind, lat: Lattice) -> tuple[complex, float]:
    """Pre-determinant of a path from 1 to ``u`` and the distance of its real part to ``lat``."""
    u = as_matrix(u)
    if u.shape != path.end.shape or op_norm(path.end - u) > ENDPOINT_TOL:
        raise EndpointMismatch("path does not end at u")
    if op_norm(path.start - identity(u.shape[0])) > ENDPOINT_TOL:
        raise EndpointMismatch("path does not start at the identity")
    rep = path_predeterminant(path, kind)
    residual = abs(rep.real - lat.point(lat.nearest_index(rep.real)))
    return rep, residual
