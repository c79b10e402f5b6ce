"""Bar-resolution chains, 2-cocycles and the Kronecker pairing.

Chains live in the unnormalized bar complex: a k-cell is a k-tuple of group
elements and ``[e|a]`` is a legitimate (degenerate) cell.  Cocycles are
Python callables, since the groups involved are infinite.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Mapping, Sequence

import numpy as np

from .errors import InvalidInput, NoNormalForm, NotACycle, NotARelator
from .groups import H3, GroupElement, GroupModel, Z2, multiply, random_element

Cell = tuple[GroupElement, ...]


class Chain:
    """Integer formal sum of bar cells of a fixed degree; zero coefficients are dropped."""

    degree: int = -1

    def __init__(self, model: GroupModel, terms: Iterable[tuple[int, Cell]] | Mapping[Cell, int] = ()):
        if not model.has_normal_form:
            raise NoNormalForm(f"{model} has no normal form; bar chains need one")
        if isinstance(terms, Mapping):
            terms = [(k, cell) for cell, k in terms.items()]
        merged: dict[Cell, int] = defaultdict(int)
        for k, cell in terms:
            cell = tuple(cell)
            if len(cell) != self.degree:
                raise InvalidInput(f"expected a {self.degree}-cell, got {len(cell)} entries")
            if any(g.model != model for g in cell):
                raise InvalidInput("cell element from a different group model")
            merged[cell] += int(k)
        self.model = model
        self._terms = {cell: k for cell, k in merged.items() if k != 0}

    @classmethod
    def cell(cls, *elements: GroupElement, k: int = 1):
        return cls(elements[0].model, [(k, elements)])

    @classmethod
    def zero(cls, model: GroupModel):
        return cls(model)

    @property
    def terms(self) -> dict[Cell, int]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[int, Cell]]:
        """Terms as ``(coefficient, cell)`` in a deterministic order."""
        for cell in sorted(self._terms, key=lambda c: tuple(str(g) for g in c)):
            yield self._terms[cell], cell

    def __iter__(self):
        return self.items()

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def _combine(self, other: "Chain", sign: int) -> "Chain":
        if type(other) is not type(self) or other.model != self.model:
            raise InvalidInput("chains must share degree and group model")
        terms = list(self.items()) + [(sign * k, c) for k, c in other.items()]
        return type(self)(self.model, terms)

    def __add__(self, other: "Chain") -> "Chain":
        return self._combine(other, 1)

    def __sub__(self, other: "Chain") -> "Chain":
        return self._combine(other, -1)

    def __neg__(self) -> "Chain":
        return type(self)(self.model, [(-k, c) for k, c in self.items()])

    def __rmul__(self, scalar: int) -> "Chain":
        return type(self)(self.model, [(int(scalar) * k, c) for k, c in self.items()])

    def __eq__(self, other) -> bool:
        return type(other) is type(self) and other.model == self.model and other._terms == self._terms

    def __hash__(self):
        return hash((type(self), self.model, frozenset(self._terms.items())))

    def __repr__(self) -> str:
        if not self._terms:
            return f"{type(self).__name__}(0)"
        parts = [f"{k:+d}[{'|'.join(str(g) for g in cell)}]" for k, cell in self.items()]
        return f"{type(self).__name__}({' '.join(parts)})"


class Chain1(Chain):
    degree = 1


class Chain2(Chain):
    degree = 2

    def drop_degenerate(self) -> "Chain2":
        """Remove cells containing the identity (they vanish in the normalized complex)."""
        return Chain2(self.model, [(k, c) for k, c in self.items() if not any(g.is_identity for g in c)])

    def to_json(self) -> list[dict]:
        fmt = self.model.format_word
        return [{"k": k, "a": fmt(a.canonical), "b": fmt(b.canonical)} for k, (a, b) in self.items()]

    @classmethod
    def from_json(cls, data: Sequence[Mapping], model: GroupModel) -> "Chain2":
        try:
            terms = [(int(t["k"]), (model.element(str(t["a"])), model.element(str(t["b"])))) for t in data]
        except (KeyError, TypeError) as exc:
            raise InvalidInput(f"malformed chain JSON: {exc}") from exc
        return cls(model, terms)


class Chain3(Chain):
    degree = 3


def boundary2(c: Chain2) -> Chain1:
    """``d[a|b] = [a] - [ab] + [b]``."""
    terms = []
    for k, (a, b) in c.items():
        terms += [(k, (a,)), (-k, (multiply(a, b),)), (k, (b,))]
    return Chain1(c.model, terms)


def boundary3(c: Chain3) -> Chain2:
    """``d[a|b|c] = [b|c] - [ab|c] + [a|bc] - [a|b]``."""
    terms = []
    for k, (a, b, x) in c.items():
        terms += [
            (k, (b, x)),
            (-k, (multiply(a, b), x)),
            (k, (a, multiply(b, x))),
            (-k, (a, b)),
        ]
    return Chain2(c.model, terms)


def is_cycle(c: Chain2) -> bool:
    return boundary2(c).is_zero()


@dataclass(frozen=True)
class Cocycle2:
    model: GroupModel
    fn: Callable[[GroupElement, GroupElement], float]
    name: str = "sigma"

    def __call__(self, a: GroupElement, b: GroupElement) -> float:
        return self.fn(a, b)

    def identity_violation(self, a: GroupElement, b: GroupElement, c: GroupElement) -> float:
        """``|s(a,b) + s(ab,c) - s(a,bc) - s(b,c)|``."""
        lhs = self(a, b) + self(multiply(a, b), c)
        rhs = self(a, multiply(b, c)) + self(b, c)
        return abs(lhs - rhs)

    def max_identity_violation(self, rng: np.random.Generator, samples: int = 1000, max_exp: int = 5) -> float:
        worst = 0.0
        for _ in range(samples):
            a, b, c = (random_element(self.model, rng, max_exp) for _ in range(3))
            worst = max(worst, self.identity_violation(a, b, c))
        return worst

    def is_normalized_at(self, a: GroupElement, tol: float = 1e-12) -> bool:
        e = self.model.identity()
        return abs(self(a, e)) <= tol and abs(self(e, a)) <= tol


def zero_cocycle(model: GroupModel) -> Cocycle2:
    return Cocycle2(model, lambda a, b: 0.0, "zero")


def standard_z2_cocycle() -> Cocycle2:
    """``s(s, t) = s_2 * t_1`` on Z^2."""
    return Cocycle2(Z2, lambda s, t: float(s.vector[1] * t.vector[0]), "sigma_std")


def standard_z2_cycle() -> Chain2:
    """The fundamental cycle ``[x|y] - [y|x]`` of Z^2."""
    x, y = Z2.generators()
    return Chain2(Z2, [(1, (x, y)), (-1, (y, x))])


def heisenberg_central_cycle(generator: str = "a") -> Chain2:
    """``[g|z] - [z|g]`` in H3, a cycle because z is central."""
    g, z = H3.element(generator), H3.element("z")
    return Chain2(H3, [(1, (g, z)), (-1, (z, g))])


def coboundary(gamma: Callable[[GroupElement], float], model: GroupModel, name: str = "dgamma") -> Cocycle2:
    """``(d gamma)(a, b) = gamma(a) - gamma(ab) + gamma(b)``."""
    return Cocycle2(model, lambda a, b: gamma(a) - gamma(multiply(a, b)) + gamma(b), name)


def kronecker(sigma: Cocycle2, c: Chain2) -> float:
    """``<sigma, c> = sum_j k_j sigma(a_j, b_j)``; refuses non-cycles."""
    if not is_cycle(c):
        raise NotACycle("Kronecker pairing needs a 2-cycle")
    return float(sum(k * sigma(a, b) for k, (a, b) in c.items()))


def hopf_to_bar(pairs: Sequence[tuple[GroupElement, GroupElement]]) -> Chain2:
    """Bar 2-cycle representing the Hopf class of ``prod [a_i, b_i]``.

    Sums ``d_i = [I_{i-1}|a_i] + [I_{i-1}a_i|b_i] - [I_{i-1}a_i b_i a_i^-1|a_i] - [I_i|b_i]``
    where ``I_i`` is the partial commutator product.
    """
    if not pairs:
        raise InvalidInput("need at least one commutator pair")
    model = pairs[0][0].model
    partial = model.identity()
    terms = []
    for a, b in pairs:
        pa = multiply(partial, a)
        pab = multiply(pa, b)
        paba = multiply(pab, a.inverse())
        nxt = multiply(paba, b.inverse())
        terms += [(1, (partial, a)), (1, (pa, b)), (-1, (paba, a)), (-1, (nxt, b))]
        partial = nxt
    if not partial.is_identity:
        raise NotARelator(f"commutator product is {partial}, not the identity")
    return Chain2(model, terms)


def random_chain(cls: type[Chain], model: GroupModel, rng: np.random.Generator, n_terms: int = 4, max_exp: int = 5) -> Chain:
    terms = []
    for _ in range(n_terms):
        cell = tuple(random_element(model, rng, max_exp) for _ in range(cls.degree))
        terms.append((int(rng.integers(-3, 4)), cell))
    return cls(model, terms)
