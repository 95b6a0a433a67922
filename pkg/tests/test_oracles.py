import pytest
from hypothesis import given

from grouptool.corpus import f2, proposition_bundle, surface_group, z2
from grouptool.errors import DehnPreconditionFailed, OracleUnavailable
from grouptool.extensions import assemble_total_presentation, total_group_oracle
from grouptool.oracles import make_oracle, max_piece_length
from grouptool.presentations import Presentation, word_is_trivial
from grouptool.words import Word, commutator, parse_word
from conftest import letters, words

GENUS2 = ("a1", "b1", "a2", "b2")


def test_free_oracle():
    P = f2()
    assert word_is_trivial(P, parse_word("a a^-1", P.generators))
    assert not word_is_trivial(P, parse_word("a b a^-1 b^-1", P.generators))


def test_surface_oracle():
    S = surface_group(2)
    assert word_is_trivial(S, S.relators[0])
    assert not word_is_trivial(S, Word.gen("a1"))
    r = S.relators[0]
    assert word_is_trivial(S, Word.gen("a2") * r * Word.gen("a2", -1))


@given(words(GENUS2, 12))
def test_surface_oracle_conjugates_of_relator(u):
    S = surface_group(2)
    assert word_is_trivial(S, u * S.relators[0] * u.inverse())


@given(words(GENUS2, 12))
def test_surface_oracle_consistent_with_abelianization(u):
    S = surface_group(2)
    if word_is_trivial(S, u):
        assert all(u.exponent_sum(g) == 0 for g in GENUS2)


def test_abelian_oracle():
    P = z2()
    a, b = Word.gen("a"), Word.gen("b")
    assert word_is_trivial(P, a * b * a.inverse() * b.inverse())
    assert not word_is_trivial(P, a * a)


def test_oracle_preconditions():
    with pytest.raises(OracleUnavailable):
        make_oracle("free", 1, [[1, 1]])
    with pytest.raises(OracleUnavailable):
        make_oracle("abelian", 2, [])
    with pytest.raises(DehnPreconditionFailed):
        make_oracle("dehn", 2, [[1, 2, -1, -2]])  # the torus fails C'(1/6)
    with pytest.raises(OracleUnavailable):
        make_oracle("none", 2, [])
    with pytest.raises(OracleUnavailable):
        Presentation("P", ("a",), (), "magic")
    S = surface_group(2)
    assert max_piece_length(S.letters(S.relators[0])) == 1


def test_split_extension_oracle_agrees_on_relators():
    E, G = proposition_bundle()
    orc = total_group_oracle(E)
    for r in G.relators:
        assert orc.is_trivial(G.letters(r))
    t, a1, b1 = Word.gen("t"), Word.gen("a1"), Word.gen("b1")
    assert orc.is_trivial(G.letters(t * a1 * t.inverse() * (a1 * b1).inverse()))
    assert not orc.is_trivial(G.letters(commutator(t, a1)))
    assert orc.equal(G.letters(t * a1), G.letters(a1 * b1 * t))
