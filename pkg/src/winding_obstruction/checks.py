"""Seeded property suites behind ``winding-obstruction check``.

Each check returns a :class:`CheckResult` holding the worst observed error and
the tolerance it is judged against.  Everything is driven by one seed, so a
suite run twice with the same seed prints the same report.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .cohomology import (
    Chain2,
    Chain3,
    Cocycle2,
    boundary2,
    boundary3,
    coboundary,
    hopf_to_bar,
    is_cycle,
    kronecker,
    random_chain,
    standard_z2_cocycle,
    standard_z2_cycle,
)
from .groups import H3, GroupModel, Z2, hom_to_z2, surface_relator
from .linalg import (
    TraceKind,
    expm,
    identity,
    log_near_identity,
    op_norm,
    random_invertible,
    random_near_identity,
    random_projection,
    random_unitary,
    unitary_log,
)
from .predeterminant import L_tau, PathOfInvertibles, path_predeterminant


@dataclass(frozen=True)
class CheckResult:
    suite: str
    name: str
    worst: float
    tol: float
    samples: int

    @property
    def passed(self) -> bool:
        return self.worst <= self.tol

    def line(self) -> str:
        flag = "PASS" if self.passed else "FAIL"
        return f"{flag}  {self.suite}/{self.name}: worst={self.worst:.3e} tol={self.tol:.0e} samples={self.samples}"


def _rng(seed: int, stream: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(stream,)))


# --- pre-determinant --------------------------------------------------------


def check_additivity(seed: int = 0, samples: int = 500) -> CheckResult:
    rng = _rng(seed, 1)
    worst = 0.0
    for _ in range(samples):
        dim = int(rng.integers(1, 7))
        u1 = random_near_identity(dim, rng.uniform(0, 0.25), rng)
        u2 = random_near_identity(dim, rng.uniform(0, 0.25), rng)
        kind = TraceKind.UNNORMALIZED
        err = abs(L_tau(u1 @ u2, kind) - L_tau(u1, kind) - L_tau(u2, kind))
        worst = max(worst, err)
    return CheckResult("predet", "additivity", worst, 1e-9, samples)


def check_conjugation(seed: int = 0, samples: int = 200) -> CheckResult:
    """Conjugates by matrices of condition number up to 100; ``||u - 1||`` is shrunk so the conjugate stays in the log domain."""
    rng = _rng(seed, 2)
    worst = 0.0
    for _ in range(samples):
        dim = int(rng.integers(2, 7))
        cond = rng.uniform(1, 100)
        v = random_invertible(dim, cond, rng)
        u = random_near_identity(dim, rng.uniform(0, 0.9 / cond), rng)
        conj = v @ u @ np.linalg.inv(v)
        worst = max(worst, abs(L_tau(conj, TraceKind.UNNORMALIZED) - L_tau(u, TraceKind.UNNORMALIZED)))
    return CheckResult("predet", "conjugation", worst, 1e-8, samples)


def check_inverse(seed: int = 0, samples: int = 500) -> CheckResult:
    rng = _rng(seed, 3)
    worst = 0.0
    for _ in range(samples):
        dim = int(rng.integers(1, 7))
        u = random_near_identity(dim, rng.uniform(0, 0.45), rng)
        kind = TraceKind.UNNORMALIZED
        worst = max(worst, abs(L_tau(np.linalg.inv(u), kind) + L_tau(u, kind)))
    return CheckResult("predet", "inverse", worst, 1e-9, samples)


def check_projection_loops(seed: int = 0, samples: int = 50) -> CheckResult:
    rng = _rng(seed, 4)
    worst = 0.0
    for i in range(samples):
        dim = int(rng.integers(1, 9))
        rank = int(rng.integers(0, dim + 1))
        p = random_projection(dim, rank, int(rng.integers(0, 2**32)))
        value = path_predeterminant(PathOfInvertibles.projection_loop(p, 64), TraceKind.UNNORMALIZED)
        worst = max(worst, abs(value - rank))
    return CheckResult("predet", "projection_loop", worst, 1e-8, samples)


def check_refinement(seed: int = 0, samples: int = 50) -> CheckResult:
    """Doubling the sampling of a unitary path leaves the pre-determinant unchanged."""
    rng = _rng(seed, 5)
    worst = 0.0
    for _ in range(samples):
        dim = int(rng.integers(1, 6))
        h = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
        k = 1j * (h + h.conj().T)
        coarse = [expm(t * k) for t in np.linspace(0, 1, 9)]
        fine = [expm(t * k) for t in np.linspace(0, 1, 17)]
        a = path_predeterminant(PathOfInvertibles(coarse), TraceKind.UNNORMALIZED)
        b = path_predeterminant(PathOfInvertibles(fine), TraceKind.UNNORMALIZED)
        worst = max(worst, abs(a - b))
    return CheckResult("predet", "refinement", worst, 1e-9, samples)


# --- chains -----------------------------------------------------------------


def check_dd_zero(seed: int = 0, samples: int = 1000) -> CheckResult:
    """``boundary2(boundary3(r)) == 0`` exactly; the reported value counts surviving cells."""
    worst = 0
    for stream, model in ((10, Z2), (11, H3)):
        rng = _rng(seed, stream)
        for _ in range(samples):
            r = random_chain(Chain3, model, rng)
            worst = max(worst, len(boundary2(boundary3(r))))
    return CheckResult("chains", "dd_zero", float(worst), 0.0, 2 * samples)


def _random_gamma(rng: np.random.Generator, rank: int) -> Callable:
    lin = rng.uniform(-1, 1, rank)
    quad = rng.uniform(-1, 1, (rank, rank))
    wave = rng.uniform(-1, 1, rank)

    def gamma(g) -> float:
        v = np.asarray(g.vector, dtype=float)
        return float(lin @ v + v @ quad @ v + np.sin(wave @ v))

    return gamma


def builtin_relator_cycles() -> list[Chain2]:
    """Bar cycles from every built-in relator datum (Z^2, H3, surface groups pushed to Z^2)."""
    out = [hopf_to_bar([tuple(Z2.generators())])]
    a, b, z = H3.generators()
    out.append(hopf_to_bar([(a, z)]))
    out.append(hopf_to_bar([(b, z), (z, a)]))
    for genus in (2, 3, 4):
        hom = hom_to_z2(genus)
        out.append(hopf_to_bar([(hom(x), hom(y)) for x, y in surface_relator(genus)]))
    return out


def _test_cycles(model: GroupModel, rng: np.random.Generator) -> list[Chain2]:
    cycles = [boundary3(random_chain(Chain3, model, rng, n_terms=2, max_exp=3)) for _ in range(3)]
    cycles += [c for c in builtin_relator_cycles() if c.model == model]
    if model == Z2:
        cycles.append(standard_z2_cycle())
    return cycles


def check_coboundary_pairing(seed: int = 0, samples: int = 100) -> CheckResult:
    worst = 0.0
    for stream, model in ((20, Z2), (21, H3)):
        rng = _rng(seed, stream)
        for _ in range(samples):
            sigma = coboundary(_random_gamma(rng, model.rank), model)
            for c in _test_cycles(model, rng):
                worst = max(worst, abs(kronecker(sigma, c)))
    return CheckResult("chains", "coboundary_pairing", worst, 1e-12, 2 * samples)


def check_hopf_cycles(seed: int = 0) -> CheckResult:
    cycles = builtin_relator_cycles()
    failures = sum(not is_cycle(c) for c in cycles)
    return CheckResult("chains", "hopf_to_bar_is_cycle", float(failures), 0.0, len(cycles))


def check_cocycle_identity(seed: int = 0, samples: int = 1000) -> CheckResult:
    rng = _rng(seed, 30)
    cocycles: list[Cocycle2] = [standard_z2_cocycle(), coboundary(_random_gamma(rng, 2), Z2)]
    worst = max(c.max_identity_violation(rng, samples) for c in cocycles)
    return CheckResult("chains", "cocycle_identity", worst, 1e-12, samples * len(cocycles))


# --- logs -------------------------------------------------------------------


def check_log_roundtrip(seed: int = 0, samples: int = 1000) -> CheckResult:
    rng = _rng(seed, 40)
    worst = 0.0
    for _ in range(samples):
        dim = int(rng.integers(1, 7))
        u = random_near_identity(dim, rng.uniform(0, 0.9), rng)
        worst = max(worst, op_norm(expm(log_near_identity(u)) - u))
    return CheckResult("logs", "series_roundtrip", worst, 1e-10, samples)


def check_log_bound(seed: int = 0, samples: int = 1000) -> CheckResult:
    """``||log u|| <= 2 ||u - 1||`` for ``||u - 1|| < 1/2``; reports the worst excess."""
    rng = _rng(seed, 41)
    worst = 0.0
    for _ in range(samples):
        dim = int(rng.integers(1, 7))
        u = random_near_identity(dim, rng.uniform(0, 0.5), rng)
        excess = op_norm(log_near_identity(u)) - 2 * op_norm(u - identity(dim))
        worst = max(worst, excess)
    return CheckResult("logs", "series_norm_bound", worst, 0.0, samples)


def check_unitary_roundtrip(seed: int = 0, samples: int = 1000) -> CheckResult:
    rng = _rng(seed, 42)
    worst = 0.0
    for _ in range(samples):
        dim = int(rng.integers(1, 9))
        u = random_unitary(dim, int(rng.integers(0, 2**32)))
        log = unitary_log(u)
        real_part = np.abs(np.linalg.eigvals(log).real).max()
        worst = max(worst, op_norm(expm(log) - u), real_part)
    return CheckResult("logs", "unitary_roundtrip", worst, 1e-8, samples)


SUITES: dict[str, list[Callable[[int], CheckResult]]] = {
    "predet": [check_additivity, check_conjugation, check_inverse, check_projection_loops, check_refinement],
    "chains": [check_dd_zero, check_coboundary_pairing, check_hopf_cycles, check_cocycle_identity],
    "logs": [check_log_roundtrip, check_log_bound, check_unitary_roundtrip],
}


def run_suite(name: str, seed: int = 0) -> list[CheckResult]:
    if name == "all":
        return [r for suite in ("predet", "chains", "logs") for r in run_suite(suite, seed)]
    if name not in SUITES:
        raise KeyError(name)
    return [check(seed) for check in SUITES[name]]
