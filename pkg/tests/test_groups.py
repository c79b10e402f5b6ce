import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from winding_obstruction.errors import InvalidGenus, InvalidInput, NoNormalForm
from winding_obstruction.groups import (
    H3,
    GroupModel,
    Word,
    Z2,
    commutator,
    heisenberg_normal_form,
    hom_to_z2,
    multiply,
    random_element,
    relator_word,
    surface_relator,
)

F2 = GroupModel.free(2)
MODELS = [Z2, GroupModel.zd(3), F2, GroupModel.free(3), H3]

# Faithful integer matrix model of H3: a = 1 + E12, b = 1 + E23, z = 1 - E13.
_A = np.array([[1, 1, 0], [0, 1, 0], [0, 0, 1]])
_B = np.array([[1, 0, 0], [0, 1, 1], [0, 0, 1]])
_Z = np.array([[1, 0, -1], [0, 1, 0], [0, 0, 1]])
_INV = {0: np.array([[1, -1, 0], [0, 1, 0], [0, 0, 1]]), 1: np.array([[1, 0, 0], [0, 1, -1], [0, 0, 1]]), 2: np.array([[1, 0, 1], [0, 1, 0], [0, 0, 1]])}
_GEN = {0: _A, 1: _B, 2: _Z}


def _heisenberg_matrix(w: Word) -> np.ndarray:
    out = np.eye(3, dtype=int)
    for g, e in w.letters:
        m = _GEN[g] if e > 0 else _INV[g]
        for _ in range(abs(e)):
            out = out @ m
    return out


def test_matrix_oracle_satisfies_relations():
    assert np.array_equal(_B @ _A, _A @ _B @ _Z)
    assert np.array_equal(_Z @ _A, _A @ _Z)
    assert np.array_equal(_Z @ _B, _B @ _Z)


def test_multiply_examples():
    x, y = Z2.generators()
    assert multiply(x, y) == Z2.from_vector((1, 1))
    a, b, z = H3.generators()
    assert multiply(b, a) == H3.from_vector((1, 1, 1))
    assert multiply(F2.element("x y"), F2.element("y^-1 x")) == F2.element("x^2")


def test_names():
    assert Z2.names == ("x", "y")
    assert H3.names == ("a", "b", "z")
    assert GroupModel.surface(2).names == ("a1", "b1", "a2", "b2")
    assert F2.names == ("x", "y")
    assert GroupModel.free(3).names == ("f1", "f2", "f3")


def test_heisenberg_normal_form_examples():
    ba = heisenberg_normal_form(H3.parse_word("b a"))
    assert ba.vector == (1, 1, 1)
    assert heisenberg_normal_form(H3.parse_word("a b")).vector == (1, 1, 0)


@pytest.mark.parametrize(
    "text",
    ["b a b^-1 a^-1", "a b a^-1 b^-1", "b^2 a^3", "z a^-1 b^2 a z^-2 b^-1", "a^-2 b^-1 a b a"],
)
def test_heisenberg_normal_form_matches_matrix_oracle(text):
    w = H3.parse_word(text)
    nf = heisenberg_normal_form(w)
    assert np.array_equal(_heisenberg_matrix(w), _heisenberg_matrix(nf.canonical))


def test_heisenberg_commutators():
    # b a = a b z gives b a b^-1 a^-1 = z and a b a^-1 b^-1 = z^-1
    assert H3.element("b a b^-1 a^-1").vector == (0, 0, 1)
    assert H3.element("a b a^-1 b^-1").vector == (0, 0, -1)


@given(st.lists(st.tuples(st.integers(0, 2), st.integers(-3, 3)), max_size=10))
def test_heisenberg_normal_form_oracle_random(letters):
    w = Word(tuple(letters))
    assert np.array_equal(_heisenberg_matrix(w), _heisenberg_matrix(heisenberg_normal_form(w).canonical))


def test_surface_relator():
    pairs = surface_relator(2)
    assert pairs == [(Word.gen(0), Word.gen(1)), (Word.gen(2), Word.gen(3))]
    assert len(surface_relator(3)) == 3
    assert max(max(a.max_generator(), b.max_generator()) for a, b in surface_relator(3)) == 5
    rel = relator_word(pairs)
    assert len(rel.reduced()) == 8
    assert GroupModel.surface(2).format_word(rel) == "a1 b1 a1^-1 b1^-1 a2 b2 a2^-1 b2^-1"
    with pytest.raises(InvalidGenus):
        surface_relator(1)


def test_hom_to_z2():
    hom = hom_to_z2(2)
    assert hom(Word.gen(0)) == Z2.from_vector((1, 0))
    assert hom(Word.gen(1)) == Z2.from_vector((0, 1))
    assert hom(Word.gen(2)).is_identity
    assert hom(relator_word(surface_relator(2))).is_identity
    assert hom(GroupModel.surface(2).parse_word("a1^3 b1^-2 a2 b2^5")) == Z2.from_vector((3, -2))


def test_surface_has_no_normal_form():
    s = GroupModel.surface(2)
    with pytest.raises(NoNormalForm):
        s.normal_form(Word.gen(0))
    with pytest.raises(NoNormalForm):
        s.identity()
    with pytest.raises(InvalidGenus):
        GroupModel.surface(1)


def test_word_parse_format_roundtrip():
    w = H3.parse_word("a^2 b^-1 z^3")
    assert w.letters == ((0, 2), (1, -1), (2, 3))
    assert H3.format_word(w) == "a^2 b^-1 z^3"
    assert H3.parse_word("e") == Word()
    with pytest.raises(InvalidInput):
        H3.parse_word("A")
    with pytest.raises(InvalidInput):
        H3.parse_word("a^x")


def test_commutator_word():
    x, y = Word.gen(0), Word.gen(1)
    assert commutator(x, y).letters == ((0, 1), (1, 1), (0, -1), (1, -1))


@pytest.mark.parametrize("model", MODELS, ids=str)
def test_group_axioms(model):
    rng = np.random.default_rng(7)
    e = model.identity()
    for _ in range(1000):
        a, b, c = (random_element(model, rng) for _ in range(3))
        assert multiply(multiply(a, b), c) == multiply(a, multiply(b, c))
        assert multiply(a, e) == a == multiply(e, a)
        assert multiply(a, a.inverse()) == e


@pytest.mark.parametrize("model", MODELS, ids=str)
def test_normal_form_idempotent(model):
    rng = np.random.default_rng(8)
    for _ in range(200):
        x = random_element(model, rng)
        assert model.normal_form(x.canonical) == x


def test_heisenberg_center():
    rng = np.random.default_rng(9)
    z = H3.element("z")
    for _ in range(500):
        w = random_element(H3, rng)
        assert multiply(z, w) == multiply(w, z)


@given(st.lists(st.tuples(st.integers(0, 3), st.integers(-4, 4)), max_size=15))
def test_free_reduction_never_lengthens(letters):
    w = Word(tuple(letters))
    r = w.reduced()
    assert len(r) <= len(w)
    assert r.reduced() == r
    assert all(g1 != g2 for (g1, _), (g2, _) in zip(r.letters, r.letters[1:]))


def test_mixed_models_rejected():
    with pytest.raises(InvalidInput):
        multiply(Z2.generators()[0], H3.generators()[0])
