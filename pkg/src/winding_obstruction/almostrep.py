"""Finite-dimensional almost representations and their multiplicativity defects.

Built-in families, all at size n with lambda_n = exp(2 pi i / n):

* ``heisenberg_rep``     exact representation of H3 by the shift/clock pair
* ``z2_projective_rep``  Z^2 -> U(n), (s1, s2) -> u^s1 v^s2, scalar defects
* ``surface_pullback``   the Z^2 family pulled back along Surface(g) -> Z^2

An element is evaluated by expanding its normal form left to right, so the
set-theoretic section is fixed once and for all.  Surface-group reps evaluate
free words by pushing them to Z^2 first.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Sequence, Union

import numpy as np

from .errors import InvalidInput, NoNormalForm, TraceNotPreserved
from .groups import (
    H3,
    GroupElement,
    GroupModel,
    Homomorphism,
    Word,
    Z2,
    hom_to_z2,
    multiply,
    surface_relator,
)
from .linalg import (
    TraceKind,
    exp_skew_hermitian,
    identity,
    random_skew_hermitian,
    schatten_from_singular_values,
    singular_values,
)

Argument = Union[GroupElement, Word]


@dataclass(frozen=True, eq=False)
class AlmostRep:
    model: GroupModel
    dim: int
    gen_images: tuple[np.ndarray, ...]
    trace_kind: TraceKind = TraceKind.NORMALIZED
    n_param: int = 1
    theta: float = 0.0
    family: str = "custom"
    # surface families: evaluation goes through ``pullback`` into ``base``
    base: "AlmostRep | None" = None
    pullback: Homomorphism | None = None
    relator_pairs: tuple[tuple[Word, Word], ...] = ()
    perturbation: float = 0.0

    def __post_init__(self):
        images = []
        for g in self.gen_images:
            g = np.array(g, dtype=np.complex128)
            if g.shape != (self.dim, self.dim):
                raise InvalidInput(f"generator image has shape {g.shape}, expected {(self.dim, self.dim)}")
            g.setflags(write=False)
            images.append(g)
        if len(images) != self.model.num_generators:
            raise InvalidInput(f"{self.model} needs {self.model.num_generators} generator images")
        object.__setattr__(self, "gen_images", tuple(images))

    def with_trace(self, kind: TraceKind) -> "AlmostRep":
        base = self.base.with_trace(kind) if self.base is not None else None
        return replace(self, trace_kind=kind, base=base)

    def descriptor(self) -> dict:
        """JSON descriptor; matrices are regenerated from it, never stored."""
        out = {
            "family": self.family,
            "n": self.n_param,
            "theta": self.theta,
            "dim": self.dim,
            "trace": self.trace_kind.value,
        }
        if self.model.kind == "surface":
            out["genus"] = self.model.rank
        if self.family in ("z2_projective", "surface_pullback"):
            out["charge"] = round(self.theta * self.n_param)
        if self.perturbation:
            out["eps"] = self.perturbation
        return out


def voiculescu_pair(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Cyclic shift ``u e_j = e_{j+1}`` and clock ``v = diag(lambda, lambda^2, ..., lambda^n)``."""
    if n < 2:
        raise InvalidInput("n must be >= 2")
    u = np.roll(np.eye(n, dtype=np.complex128), 1, axis=0)
    v = np.diag(np.exp(2j * math.pi * np.arange(1, n + 1) / n))
    return u, v


def heisenberg_rep(n: int, trace: TraceKind = TraceKind.NORMALIZED) -> AlmostRep:
    """The exact representation a -> u, b -> v, z -> lambda_n (v u = u v lambda_n)."""
    u, v = voiculescu_pair(n)
    lam = np.exp(2j * math.pi / n)
    return AlmostRep(H3, n, (u, v, lam * identity(n)), trace, n, 1.0 / n, "heisenberg")


def z2_projective_rep(n: int, trace: TraceKind = TraceKind.NORMALIZED, charge: int = 1) -> AlmostRep:
    """``(s1, s2) -> u^s1 v^(charge s2)``; the defect at (s, t) is ``lambda_n^(charge s2 t1)``.

    ``charge`` other than 1 gives the deformation parameter ``theta_n = charge / n``.
    """
    if charge == 0:
        raise InvalidInput("charge must be nonzero")
    u, v = voiculescu_pair(n)
    return AlmostRep(Z2, n, (u, _power(v, charge)), trace, n, charge / n, "z2_projective")


def surface_pullback(genus: int, n: int, trace: TraceKind = TraceKind.NORMALIZED, charge: int = 1) -> AlmostRep:
    """Pullback of ``z2_projective_rep`` along ``a_1 -> x, b_1 -> y``, other generators -> 0."""
    hom = hom_to_z2(genus)
    return _surface_over(z2_projective_rep(n, trace, charge), hom, genus)


def _surface_over(base: AlmostRep, hom: Homomorphism, genus: int) -> AlmostRep:
    model = GroupModel.surface(genus)
    images = [evaluate(base, img) for img in hom.images]
    return AlmostRep(
        model,
        base.dim,
        tuple(images),
        base.trace_kind,
        base.n_param,
        base.theta,
        "surface_pullback",
        base=base,
        pullback=hom,
        relator_pairs=tuple(surface_relator(genus)),
        perturbation=base.perturbation,
    )


def _power(m: np.ndarray, e: int) -> np.ndarray:
    return np.linalg.matrix_power(m, e)


def word_product(rep: AlmostRep, w: Word) -> np.ndarray:
    """Literal product of generator-image powers along ``w``."""
    out = identity(rep.dim)
    for g, e in w.letters:
        out = out @ _power(rep.gen_images[g], e)
    return out


def evaluate(rep: AlmostRep, s: Argument) -> np.ndarray:
    """Image of ``s`` under the section-defined map.

    Group elements expand their canonical word.  Free words are first mapped
    to their normal form, or, for surface reps, through the pullback.
    """
    if isinstance(s, Word):
        if rep.pullback is not None:
            return evaluate(rep.base, rep.pullback(s))
        if not rep.model.has_normal_form:
            raise NoNormalForm(f"{rep.model} rep has no evaluation rule for free words")
        return word_product(rep, rep.model.normal_form(s).canonical)
    if not rep.model.has_normal_form:
        raise NoNormalForm(f"{rep.model} has no normal form; evaluate free words instead")
    if s.model != rep.model:
        raise InvalidInput(f"element of {s.model} passed to a {rep.model} representation")
    return word_product(rep, s.canonical)


def _product(rep: AlmostRep, s: Argument, t: Argument) -> Argument:
    if isinstance(s, Word) and isinstance(t, Word):
        return s * t
    if isinstance(s, GroupElement) and isinstance(t, GroupElement):
        return multiply(s, t)
    raise InvalidInput("mixing words and group elements")


def defect(rep: AlmostRep, s: Argument, t: Argument) -> np.ndarray:
    """``rho(s) rho(t) rho(st)^-1``."""
    st = evaluate(rep, _product(rep, s, t))
    return evaluate(rep, s) @ evaluate(rep, t) @ np.linalg.inv(st)


@dataclass(frozen=True)
class DefectEntry:
    s: Argument
    t: Argument
    op_defect: float
    schatten: dict[float, float] = field(default_factory=dict)


@dataclass(frozen=True)
class DefectReport:
    dim: int
    entries: tuple[DefectEntry, ...]

    @property
    def sup_op(self) -> float:
        return max((e.op_defect for e in self.entries), default=0.0)

    def sup_schatten(self, p: float) -> float:
        return max((e.schatten[p] for e in self.entries), default=0.0)

    def bound_violations(self, tol: float = 1e-9) -> list[DefectEntry]:
        """Entries breaking ``||d||_p <= ||d|| dim^(1/p)``."""
        bad = []
        for e in self.entries:
            for p, val in e.schatten.items():
                bound = e.op_defect if math.isinf(p) else e.op_defect * self.dim ** (1.0 / p)
                if val > bound * (1 + tol) + tol:
                    bad.append(e)
                    break
        return bad


def defect_report(rep: AlmostRep, window: Sequence[tuple[Argument, Argument]], ps: Sequence[float] = (2.0, math.inf)) -> DefectReport:
    """Operator and Schatten norms of ``rho(s) rho(t) - rho(st)`` over a window of pairs."""
    cache: dict = {}

    def image(x):
        if x not in cache:
            cache[x] = evaluate(rep, x)
        return cache[x]

    entries = []
    for s, t in window:
        d = image(s) @ image(t) - image(_product(rep, s, t))
        sv = singular_values(d)
        sch = {float(p): schatten_from_singular_values(sv, p) for p in ps}
        entries.append(DefectEntry(s, t, float(sv.max()), sch))
    report = DefectReport(rep.dim, tuple(entries))
    if report.bound_violations():
        raise AssertionError("Schatten/operator norm inequality violated")
    return report


def generator_window(rep: AlmostRep) -> list[tuple[Argument, Argument]]:
    """All ordered pairs drawn from the generators and their inverses."""
    k = rep.model.num_generators
    if rep.model.has_normal_form:
        gens = [rep.model.normal_form(Word.gen(i, e)) for i in range(k) for e in (1, -1)]
    else:
        gens = [Word.gen(i, e) for i in range(k) for e in (1, -1)]
    return [(s, t) for s in gens for t in gens]


def perturb(rep: AlmostRep, eps: float, seed: int) -> AlmostRep:
    """Multiply each generator image by ``exp(K)``, K skew-Hermitian with ``||K|| = eps``.

    Surface reps are perturbed through their Z^2 base so evaluation still
    factors through the pullback.
    """
    if not 0 <= eps < 0.1:
        raise InvalidInput(f"eps must lie in [0, 0.1), got {eps}")
    if eps == 0:
        return rep
    if rep.base is not None:
        return _surface_over(perturb(rep.base, eps, seed), rep.pullback, rep.model.rank)
    rng = np.random.default_rng(seed)
    images = tuple(exp_skew_hermitian(random_skew_hermitian(rep.dim, eps, rng)) @ g for g in rep.gen_images)
    return replace(rep, gen_images=images, perturbation=rep.perturbation + eps)


def amplify(rep: AlmostRep, m: int) -> AlmostRep:
    """``g -> g (x) 1_m``; only trace preserving for the normalized trace."""
    if m < 1:
        raise InvalidInput("amplification factor must be >= 1")
    if rep.trace_kind is not TraceKind.NORMALIZED:
        raise TraceNotPreserved("Tr is not preserved by g -> g (x) 1_m; use the normalized trace")
    if m == 1:
        return rep
    if rep.base is not None:
        return _surface_over(amplify(rep.base, m), rep.pullback, rep.model.rank)
    one = np.eye(m, dtype=np.complex128)
    images = tuple(np.kron(g, one) for g in rep.gen_images)
    return replace(rep, dim=rep.dim * m, gen_images=images)
