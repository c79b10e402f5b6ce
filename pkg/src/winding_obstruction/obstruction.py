"""Defect cocycle, pairings with 2-cycles, integrality and sweeps over n.

Two routes compute the pairing of an almost representation with a 2-homology
class:

* bar route: ``sum_j k_j omega(a_j, b_j)`` for a bar 2-cycle
* Hopf route: ``(1/2 pi i) tau(log prod_i [rho(a_i), rho(b_i)])`` with the
  principal log of a unitary

With the unnormalized trace both land in Z.  A nonzero integer that survives
while the defects shrink is what rules out perturbing the family to honest
representations.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence, Union

import numpy as np

from .almostrep import (
    Argument,
    AlmostRep,
    amplify,
    defect,
    defect_report,
    evaluate,
    generator_window,
    heisenberg_rep,
    perturb,
    surface_pullback,
    z2_projective_rep,
)
from .cohomology import Chain2, heisenberg_central_cycle, is_cycle, standard_z2_cycle
from .errors import (
    AmbiguousBranch,
    BranchCut,
    DefectTooLarge,
    InvalidInput,
    NotACycle,
    NotUnitary,
    ObstructionError,
    OutsideLogDomain,
    RouteMismatch,
)
from .groups import H3, Word, Z2
from .linalg import TraceKind, identity, op_norm, trace, unitary_defect, unitary_log
from .predeterminant import L_tau, Lattice

INTEGRALITY_TOL = 1e-6
ROUTE_TOL = 1e-8
ADDITIVITY_RADIUS = 0.25


def omega(rep: AlmostRep, s: Argument, t: Argument) -> complex:
    """``(1/2 pi i) tau(log(rho(s) rho(t) rho(st)^-1))``."""
    try:
        return L_tau(defect(rep, s, t), rep.trace_kind)
    except OutsideLogDomain as exc:
        raise DefectTooLarge(f"defect at ({s}, {t}) outside the log domain at n={rep.n_param}") from exc


def pairing_bar_product(rep: AlmostRep, c: Chain2) -> complex:
    """``L(prod_j d_j^k_j)``; only meaningful when the product stays near 1."""
    prod = identity(rep.dim)
    for k, (a, b) in c.items():
        prod = prod @ np.linalg.matrix_power(defect(rep, a, b), k)
    return L_tau(prod, rep.trace_kind)


def pairing_bar(rep: AlmostRep, c: Chain2, cross_check: bool = True) -> complex:
    """Termwise pairing ``sum_j k_j omega(a_j, b_j)`` of the defect cocycle with a 2-cycle.

    When every partial product of defects is guaranteed to stay inside the
    additivity radius, the single-log product form is computed as well and the
    two must agree within ``ROUTE_TOL``.
    """
    if c.model != rep.model:
        raise InvalidInput(f"chain over {c.model} paired with a {rep.model} representation")
    if not is_cycle(c):
        raise NotACycle("the pairing is only defined on 2-cycles")
    total = 0j
    spread = 0.0
    for k, (a, b) in c.items():
        d = defect(rep, a, b)
        total += k * omega(rep, a, b)
        spread += abs(k) * op_norm(d - identity(rep.dim))
    # all partial products within 1/4 once exp(sum |k| delta) - 1 < 1/4
    if cross_check and c and math.expm1(spread) < ADDITIVITY_RADIUS:
        alt = pairing_bar_product(rep, c)
        if abs(alt - total) > ROUTE_TOL:
            raise RouteMismatch(f"termwise {total} vs product {alt}")
    return total


def commutator_product(rep: AlmostRep, pairs: Sequence[tuple[Argument, Argument]]) -> np.ndarray:
    """``prod_i [rho(a_i), rho(b_i)]`` with ``[x, y] = x y x^-1 y^-1``."""
    prod = identity(rep.dim)
    for a, b in pairs:
        x, y = evaluate(rep, a), evaluate(rep, b)
        prod = prod @ x @ y @ np.linalg.inv(x) @ np.linalg.inv(y)
    return prod


def pairing_hopf(rep: AlmostRep, pairs: Sequence[tuple[Argument, Argument]]) -> complex:
    """``(1/2 pi i) tau(log prod_i [rho(a_i), rho(b_i)])`` using the principal unitary log."""
    prod = commutator_product(rep, pairs)
    if unitary_defect(prod) >= 1e-8:
        raise NotUnitary("commutator product is not unitary; the Hopf route needs unitary images")
    try:
        log = unitary_log(prod)
    except BranchCut as exc:
        raise AmbiguousBranch(str(exc)) from exc
    return trace(log, rep.trace_kind) / (2j * math.pi)


def winding(pairing: complex, lat: Lattice = Lattice.integers(), tol: float = INTEGRALITY_TOL) -> tuple[int | None, float]:
    """Nearest lattice index and the distance to it; the index is None beyond ``tol``."""
    k = lat.nearest_index(pairing.real)
    residual = abs(pairing - lat.point(k))
    return (k if residual < tol else None), residual


def invariance_check(rep: AlmostRep, c: Chain2, m: int, tol: float = 1e-9) -> bool:
    """Pairing unchanged under the trace-preserving amplification ``g -> g (x) 1_m``."""
    return abs(pairing_bar(amplify(rep, m), c) - pairing_bar(rep, c)) < tol


@dataclass(frozen=True)
class Family:
    """Built-in family descriptor: ``z2_projective``, ``surface_pullback`` or ``heisenberg``."""

    name: str
    genus: int = 2
    charge: int = 1

    def __post_init__(self):
        if self.name not in ("z2_projective", "surface_pullback", "heisenberg"):
            raise InvalidInput(f"unknown family {self.name!r}")

    def build(self, n: int, trace_kind: TraceKind) -> AlmostRep:
        if self.name == "z2_projective":
            return z2_projective_rep(n, trace_kind, self.charge)
        if self.name == "surface_pullback":
            return surface_pullback(self.genus, n, trace_kind, self.charge)
        return heisenberg_rep(n, trace_kind)

    def default_chain(self) -> Chain2 | None:
        if self.name == "z2_projective":
            return standard_z2_cycle()
        if self.name == "heisenberg":
            return heisenberg_central_cycle("a")
        return None

    def hopf_pairs(self) -> list[tuple[Argument, Argument]]:
        if self.name == "z2_projective":
            return [tuple(Z2.generators())]
        if self.name == "heisenberg":
            return [(H3.element("a"), H3.element("z"))]
        return [tuple(p) for p in surface_pullback(self.genus, 2).relator_pairs]

    def label(self) -> str:
        out = self.name
        if self.name == "surface_pullback":
            out += f"(g={self.genus})"
        if self.charge != 1 and self.name != "heisenberg":
            out += f"[charge={self.charge}]"
        return out


@dataclass
class PairingReport:
    n: int
    dim: int
    theta: float
    route: str
    pairing: complex
    winding: int | None
    lattice_residual: float
    defect_sup: float
    defect_p2: float
    schatten_sup: dict[float, float] = field(default_factory=dict)
    error: str | None = None

    CSV_COLUMNS = (
        "n",
        "dim",
        "theta",
        "route",
        "pairing_re",
        "pairing_im",
        "winding",
        "lattice_residual",
        "defect_op",
        "defect_p2",
    )

    def csv_row(self) -> list[str]:
        return [
            str(self.n),
            str(self.dim),
            repr(self.theta),
            self.route,
            repr(self.pairing.real),
            repr(self.pairing.imag),
            "" if self.winding is None else str(self.winding),
            repr(self.lattice_residual),
            repr(self.defect_sup),
            repr(self.defect_p2),
        ]

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "dim": self.dim,
            "theta": self.theta,
            "route": self.route,
            "pairing_re": self.pairing.real,
            "pairing_im": self.pairing.imag,
            "winding": self.winding,
            "lattice_residual": self.lattice_residual,
            "defect_op": self.defect_sup,
            "defect_p2": self.defect_p2,
            "error": self.error,
        }

    @classmethod
    def from_csv_row(cls, row: dict) -> "PairingReport":
        return cls(
            n=int(row["n"]),
            dim=int(row["dim"]),
            theta=float(row["theta"]),
            route=row["route"],
            pairing=complex(float(row["pairing_re"]), float(row["pairing_im"])),
            winding=int(row["winding"]) if row["winding"] != "" else None,
            lattice_residual=float(row["lattice_residual"]),
            defect_sup=float(row["defect_op"]),
            defect_p2=float(row["defect_p2"]),
        )


@dataclass
class SweepVerdict:
    family: str
    reports: list[PairingReport]
    obstruction_present: bool
    reason: str
    routes_agree: bool = True
    n0: int = 8
    defect_threshold: float = 0.1

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "obstruction_present": self.obstruction_present,
            "reason": self.reason,
            "routes_agree": self.routes_agree,
            "n0": self.n0,
            "defect_threshold": self.defect_threshold,
            "windings": sorted({r.winding for r in self.reports if r.winding is not None}),
            "errors": [{"n": r.n, "route": r.route, "error": r.error} for r in self.reports if r.error],
            "reports": [r.to_json() for r in self.reports],
        }


Cycle = Union[Chain2, str, None]


def point_seed(seed: int, n: int) -> int:
    """Independent per-n seed, so grid points can run in any order."""
    return int(np.random.SeedSequence(seed, spawn_key=(n,)).generate_state(1, dtype=np.uint64)[0])


def _routes(family: Family, cycle: Cycle) -> list[tuple[str, object]]:
    if cycle is None:
        routes = []
        chain = family.default_chain()
        if chain is not None:
            routes.append(("bar", chain))
        routes.append(("hopf", family.hopf_pairs()))
        return routes
    if isinstance(cycle, str):
        if cycle != "hopf":
            raise InvalidInput(f"cycle must be a chain or 'hopf', got {cycle!r}")
        return [("hopf", family.hopf_pairs())]
    return [("bar", cycle)]


def sweep_point(
    family: Family,
    n: int,
    cycle: Cycle = None,
    ps: Sequence[float] = (2.0, math.inf),
    trace_kind: TraceKind = TraceKind.UNNORMALIZED,
    eps: float = 0.0,
    seed: int = 0,
) -> list[PairingReport]:
    """Reports for one grid point, one per applicable route."""
    ps = tuple(sorted({float(p) for p in ps} | {2.0}))
    rep = family.build(n, trace_kind)
    if eps:
        rep = perturb(rep, eps, point_seed(seed, n))
    lat = Lattice.for_trace(trace_kind, rep.dim)
    defects = defect_report(rep, generator_window(rep), ps)
    sch = {p: defects.sup_schatten(p) for p in ps}
    out = []
    for route, data in _routes(family, cycle):
        report = PairingReport(n, rep.dim, rep.theta, route, complex("nan"), None, math.nan, defects.sup_op, sch[2.0], sch)
        try:
            value = pairing_bar(rep, data) if route == "bar" else pairing_hopf(rep, data)
        except ObstructionError as exc:
            report.error = f"{type(exc).__name__}: {exc}"
        else:
            report.pairing = value
            report.winding, report.lattice_residual = winding(value, lat)
        out.append(report)
    return out


def sweep(
    family: Family,
    n_grid: Sequence[int],
    cycle: Cycle = None,
    ps: Sequence[float] = (2.0, math.inf),
    trace_kind: TraceKind = TraceKind.UNNORMALIZED,
    eps: float = 0.0,
    seed: int = 0,
    n0: int = 8,
    defect_threshold: float = 0.1,
    threads: int = 1,
) -> SweepVerdict:
    """Pair the family with a cycle over ``n_grid`` and decide whether an obstruction persists.

    Obstruction is declared when every report with ``n >= n0`` carries a
    nonzero winding, no route failed, and the operator defect at the
    largest ``n`` is below ``defect_threshold``.
    """
    n_grid = [int(n) for n in n_grid]
    if not n_grid:
        raise InvalidInput("n_grid is empty")
    if n_grid != sorted(set(n_grid)):
        raise InvalidInput("n_grid must be strictly ascending")
    if threads > 1:
        with ThreadPoolExecutor(threads) as pool:
            chunks = list(pool.map(lambda n: sweep_point(family, n, cycle, ps, trace_kind, eps, seed), n_grid))
    else:
        chunks = [sweep_point(family, n, cycle, ps, trace_kind, eps, seed) for n in n_grid]
    reports = [r for chunk in chunks for r in chunk]

    routes_agree = True
    for chunk in chunks:
        values = [r.pairing for r in chunk if r.error is None]
        if len(values) > 1 and max(abs(v - values[0]) for v in values) > ROUTE_TOL:
            routes_agree = False
            for r in chunk:
                r.error = r.error or "routes disagree"

    late = [r for r in reports if r.n >= n0]
    windings = {r.winding for r in late}
    last_defect = reports[-1].defect_sup
    if not late:
        present, reason = False, f"no grid point with n >= {n0}"
    elif any(r.error for r in late):
        present, reason = False, "numerical failure at some n >= n0"
    elif None in windings:
        present, reason = False, "pairing off the trace lattice"
    elif windings == {0}:
        present, reason = False, "pairing vanishes: no obstruction detected"
    elif 0 in windings:
        present, reason = False, "pairing vanishes at some n >= n0"
    elif not last_defect < defect_threshold:
        present, reason = False, f"defect {last_defect:.3g} at n={n_grid[-1]} not below {defect_threshold}"
    else:
        present = True
        w = ", ".join(str(k) for k in sorted(windings))
        reason = f"winding {w} persists for n in [{late[0].n}, {late[-1].n}] while the defect falls to {last_defect:.3g}"
    return SweepVerdict(family.label(), reports, present, reason, routes_agree, n0, defect_threshold)
