"""Words, normal forms and homomorphisms for the concrete groups in play.

Supported models: free abelian groups Z^d, free groups F_k, the discrete
Heisenberg group H3 = <a, b, z | ba = abz, z central>, and surface groups of
genus g >= 2.  Surface groups carry free-word data only; there is no word
problem solver for them.

Generator indices are fixed: a=0, b=1, z=2 for H3, and a_i = 2i-2,
b_i = 2i-1 for the genus-g surface group.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import InvalidGenus, InvalidInput, NoNormalForm

Letter = tuple[int, int]


@dataclass(frozen=True)
class Word:
    """A word over indexed generators; each letter is ``(generator, nonzero exponent)``."""

    letters: tuple[Letter, ...] = ()

    def __post_init__(self):
        letters = tuple((int(g), int(e)) for g, e in self.letters)
        for g, e in letters:
            if g < 0:
                raise InvalidInput(f"negative generator index {g}")
        object.__setattr__(self, "letters", tuple(l for l in letters if l[1] != 0))

    @classmethod
    def gen(cls, index: int, exponent: int = 1) -> "Word":
        return cls(((index, exponent),))

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def __len__(self) -> int:
        return sum(abs(e) for _, e in self.letters)

    def __bool__(self) -> bool:
        return bool(self.letters)

    def inverse(self) -> "Word":
        return Word(tuple((g, -e) for g, e in reversed(self.letters)))

    def reduced(self) -> "Word":
        """Freely reduced form: merge equal neighbours, drop zero exponents, cascade."""
        stack: list[Letter] = []
        for g, e in self.letters:
            if stack and stack[-1][0] == g:
                total = stack[-1][1] + e
                stack.pop()
                if total:
                    stack.append((g, total))
            else:
                stack.append((g, e))
        return Word(tuple(stack))

    def max_generator(self) -> int:
        return max((g for g, _ in self.letters), default=-1)

    def format(self, names: Sequence[str]) -> str:
        if not self.letters:
            return "e"
        parts = []
        for g, e in self.letters:
            parts.append(names[g] if e == 1 else f"{names[g]}^{e}")
        return " ".join(parts)

    @classmethod
    def parse(cls, text: str, names: Sequence[str]) -> "Word":
        """Parse ``"a^2 b^-1 z^3"`` style text (case-sensitive).  ``"e"`` or ``""`` is the identity."""
        text = text.strip()
        if text in ("", "e", "1"):
            return cls()
        index = {name: i for i, name in enumerate(names)}
        letters = []
        for token in text.split():
            m = re.fullmatch(r"([A-Za-z_][A-Za-z0-9_]*)(?:\^(-?\d+))?", token)
            if m is None or m.group(1) not in index:
                raise InvalidInput(f"cannot parse {token!r} over generators {list(names)}")
            letters.append((index[m.group(1)], int(m.group(2)) if m.group(2) else 1))
        return cls(tuple(letters))


def commutator(x: Word, y: Word) -> Word:
    """``[x, y] = x y x^-1 y^-1``."""
    return x * y * x.inverse() * y.inverse()


@dataclass(frozen=True)
class GroupModel:
    kind: str
    rank: int

    def __post_init__(self):
        if self.kind not in ("zd", "free", "heisenberg", "surface"):
            raise InvalidInput(f"unknown group model {self.kind!r}")
        if self.kind == "surface" and self.rank < 2:
            raise InvalidGenus(f"surface genus must be >= 2, got {self.rank}")
        if self.rank < 1:
            raise InvalidInput("rank must be >= 1")

    @classmethod
    def zd(cls, d: int) -> "GroupModel":
        return cls("zd", d)

    @classmethod
    def free(cls, k: int) -> "GroupModel":
        return cls("free", k)

    @classmethod
    def heisenberg(cls) -> "GroupModel":
        return cls("heisenberg", 3)

    @classmethod
    def surface(cls, genus: int) -> "GroupModel":
        return cls("surface", genus)

    @property
    def num_generators(self) -> int:
        if self.kind == "surface":
            return 2 * self.rank
        return self.rank

    @property
    def names(self) -> tuple[str, ...]:
        if self.kind == "heisenberg":
            return ("a", "b", "z")
        if self.kind == "surface":
            return tuple(f"{c}{i}" for i in range(1, self.rank + 1) for c in "ab")
        if self.rank <= 2:
            return ("x", "y")[: self.rank]
        prefix = "x" if self.kind == "zd" else "f"
        return tuple(f"{prefix}{i}" for i in range(1, self.rank + 1))

    @property
    def has_normal_form(self) -> bool:
        return self.kind != "surface"

    def __str__(self) -> str:
        return {
            "zd": f"Z^{self.rank}",
            "free": f"F_{self.rank}",
            "heisenberg": "H3",
            "surface": f"Surface(g={self.rank})",
        }[self.kind]

    def _check_word(self, w: Word) -> None:
        if w.max_generator() >= self.num_generators:
            raise InvalidInput(f"generator index out of range for {self}")

    def parse_word(self, text: str) -> Word:
        return Word.parse(text, self.names)

    def format_word(self, w: Word) -> str:
        return w.format(self.names)

    def normal_form(self, w: Word) -> "GroupElement":
        self._check_word(w)
        if self.kind == "zd":
            return self.from_vector(_zd_vector(w, self.rank))
        if self.kind == "free":
            return GroupElement(self, w.reduced())
        if self.kind == "heisenberg":
            return heisenberg_normal_form(w)
        raise NoNormalForm(f"{self} has no normal form")

    def element(self, text: str) -> "GroupElement":
        return self.normal_form(self.parse_word(text))

    def identity(self) -> "GroupElement":
        if not self.has_normal_form:
            raise NoNormalForm(f"{self} has no normal form")
        return GroupElement(self, Word())

    def generators(self) -> list["GroupElement"]:
        return [self.normal_form(Word.gen(i)) for i in range(self.num_generators)]

    def from_vector(self, vec: Sequence[int]) -> "GroupElement":
        """Element from exponent data: ``(e_1..e_d)`` for Z^d, ``(i, j, k)`` for a^i b^j z^k in H3."""
        if self.kind not in ("zd", "heisenberg"):
            raise InvalidInput(f"{self} elements are not exponent vectors")
        vec = tuple(int(v) for v in vec)
        if len(vec) != self.rank:
            raise InvalidInput(f"expected {self.rank} exponents, got {len(vec)}")
        return GroupElement(self, Word(tuple((i, e) for i, e in enumerate(vec))))


@dataclass(frozen=True)
class GroupElement:
    model: GroupModel
    canonical: Word

    @property
    def vector(self) -> tuple[int, ...]:
        """Exponent vector (Z^d and H3 only)."""
        if self.model.kind not in ("zd", "heisenberg"):
            raise InvalidInput("only Z^d and H3 elements have exponent vectors")
        vec = [0] * self.model.rank
        for g, e in self.canonical.letters:
            vec[g] += e
        return tuple(vec)

    @property
    def is_identity(self) -> bool:
        return not self.canonical.letters

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        return multiply(self, other)

    def inverse(self) -> "GroupElement":
        return self.model.normal_form(self.canonical.inverse())

    def __pow__(self, k: int) -> "GroupElement":
        w = self.canonical if k >= 0 else self.canonical.inverse()
        return self.model.normal_form(Word(w.letters * abs(k)))

    def __str__(self) -> str:
        return self.model.format_word(self.canonical)

    def __repr__(self) -> str:
        return f"GroupElement({self.model}, {self})"


def _zd_vector(w: Word, d: int) -> tuple[int, ...]:
    vec = [0] * d
    for g, e in w.letters:
        vec[g] += e
    return tuple(vec)


def heisenberg_normal_form(w: Word) -> GroupElement:
    """Rewrite a word over (a, b, z) to a^i b^j z^k.

    Pushing a^m left past b^j costs z^(j*m), since b a = a b z.
    """
    i = j = k = 0
    for g, e in w.letters:
        if g == 0:
            k += j * e
            i += e
        elif g == 1:
            j += e
        elif g == 2:
            k += e
        else:
            raise InvalidInput(f"H3 has generators 0..2, got {g}")
    return GroupModel.heisenberg().from_vector((i, j, k))


def multiply(x: GroupElement, y: GroupElement) -> GroupElement:
    if x.model != y.model:
        raise InvalidInput(f"cannot multiply elements of {x.model} and {y.model}")
    if not x.model.has_normal_form:
        raise NoNormalForm(f"{x.model} has no normal form")
    if x.model.kind == "zd":
        return x.model.from_vector(tuple(a + b for a, b in zip(x.vector, y.vector)))
    return x.model.normal_form(x.canonical * y.canonical)


def surface_relator(genus: int) -> list[tuple[Word, Word]]:
    """Generator pairs ``(a_i, b_i)`` whose commutator product is the surface relator."""
    if genus < 2:
        raise InvalidGenus(f"surface genus must be >= 2, got {genus}")
    return [(Word.gen(2 * i), Word.gen(2 * i + 1)) for i in range(genus)]


def relator_word(pairs: Iterable[tuple[Word, Word]]) -> Word:
    out = Word()
    for a, b in pairs:
        out = out * commutator(a, b)
    return out


@dataclass(frozen=True)
class Homomorphism:
    """A homomorphism out of a free presentation, fixed by generator images."""

    source: GroupModel
    target: GroupModel
    images: tuple[GroupElement, ...]

    def __call__(self, w: Word) -> GroupElement:
        if w.max_generator() >= len(self.images):
            raise InvalidInput("word uses a generator with no image")
        out = self.target.identity()
        for g, e in w.letters:
            out = multiply(out, self.images[g] ** e)
        return out


def hom_to_z2(genus: int) -> Homomorphism:
    """Surface group -> Z^2 sending a_1 to x, b_1 to y and every other generator to 0."""
    source = GroupModel.surface(genus)
    target = GroupModel.zd(2)
    zero = target.identity()
    x, y = target.generators()
    images = [zero] * source.num_generators
    images[0], images[1] = x, y
    hom = Homomorphism(source, target, tuple(images))
    if not hom(relator_word(surface_relator(genus))).is_identity:
        raise AssertionError("relator does not die in Z^2")
    return hom


def random_element(model: GroupModel, rng: np.random.Generator, max_exp: int = 5) -> GroupElement:
    if model.kind in ("zd", "heisenberg"):
        return model.from_vector(rng.integers(-max_exp, max_exp + 1, size=model.rank))
    if model.kind == "free":
        length = int(rng.integers(0, 7))
        gens = rng.integers(0, model.rank, size=length)
        exps = rng.integers(1, 4, size=length) * rng.choice([-1, 1], size=length)
        return model.normal_form(Word(tuple(zip(gens, exps))))
    raise NoNormalForm(f"{model} has no normal form")


Z2 = GroupModel.zd(2)
H3 = GroupModel.heisenberg()
