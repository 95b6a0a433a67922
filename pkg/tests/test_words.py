import pytest
from hypothesis import given

from grouptool.corpus import phi
from grouptool.errors import ParseError, UnknownGenerator
from grouptool.words import (
    GroupRingElement,
    Hom,
    Word,
    apply_hom,
    commutator,
    compose,
    exponent_vector,
    fox_derivative,
    free_reduce,
    parse_syllables,
    parse_word,
    word_invert,
    word_multiply,
)
from conftest import words

AB = ("a", "b")
ABC = ("a", "b", "c")


def w(text, alphabet=ABC):
    return parse_word(text, alphabet)


def test_free_reduction_examples():
    assert free_reduce([("a", 1), ("a", -1)]) == Word()
    assert free_reduce([("a", 1), ("b", 1), ("b", -1), ("a", 1)]) == Word.gen("a", 2)


def test_multiply_and_invert():
    assert word_multiply(w("a"), w("a^-1")) == Word()
    assert word_invert(w("a b")) == w("b^-1 a^-1")
    assert word_multiply(w("a b"), w("b^-1 c")) == w("a c")


def test_parse_forms():
    assert w("a^2 b^-1") == Word((("a", 2), ("b", -1)))
    assert w("a a a^-1") == w("a")
    assert w("1") == Word()
    assert str(w("a^3 b^-2")) == "a^3 b^-2"
    assert parse_syllables("a a^-1", AB) == (("a", 1), ("a", -1))


def test_parse_errors_carry_position():
    with pytest.raises(ParseError) as exc:
        parse_word("a b^", AB, line=3)
    assert exc.value.line == 3
    assert exc.value.column == 3
    with pytest.raises(ParseError, match="unknown generator"):
        parse_word("a z", AB)


@given(words(ABC))
def test_reduction_idempotent(u):
    assert Word(u.syllables) == u
    assert free_reduce(u.syllables) == u


@given(words(ABC), words(ABC))
def test_inverse_laws(u, v):
    assert u * u.inverse() == Word()
    assert (u * v).inverse() == v.inverse() * u.inverse()


def test_phi_and_inverse():
    f = phi(2)
    assert f(Word.gen("a1")) == parse_word("a1 b1")
    assert f.inverse()(Word.gen("a1")) == parse_word("a1 b1^-1")
    ident = Hom.identity(AB)
    assert ident(w("a b a^-1", AB)) == w("a b a^-1", AB)
    both = compose(f.inverse(), f)
    assert both.is_identity()


def test_hom_rejects_unknown_symbols():
    with pytest.raises(UnknownGenerator):
        apply_hom(Hom.identity(AB), w("c"))


def test_fox_examples():
    x = ("x",)
    assert fox_derivative(Word.gen("x"), "x") == GroupRingElement.one()
    assert fox_derivative(Word.gen("x", -1), "x") == GroupRingElement({Word.gen("x", -1): -1})
    expect = GroupRingElement({Word(): 1, w("a b a^-1"): -1})
    assert fox_derivative(commutator(w("a"), w("b")), "a") == expect
    with pytest.raises(UnknownGenerator):
        fox_derivative(Word.gen("x"), "y", x)


@given(words(ABC))
def test_fox_fundamental_identity(u):
    lhs = GroupRingElement.from_word(u) - 1
    rhs = GroupRingElement()
    for g in ABC:
        rhs = rhs + fox_derivative(u, g) * (GroupRingElement.from_word(Word.gen(g)) - 1)
    assert lhs == rhs


@given(words(ABC))
def test_exponent_vector_additive(u):
    v = exponent_vector(u, ABC)
    assert exponent_vector(u.inverse(), ABC) == [-x for x in v]
