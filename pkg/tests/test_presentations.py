from fractions import Fraction

import pytest

from grouptool.corpus import (
    f2,
    f2_quotient_map,
    free_abelian,
    free_group,
    mapping_torus_N,
    proposition_bundle,
    surface_group,
    z2,
)
from grouptool.errors import RadiusTooSmall, UnknownGenerator
from grouptool.presentations import (
    Character,
    Presentation,
    SpherePoint,
    abelian_invariants,
    abelianized_relator_matrix,
    adjust_presentation,
    adjusted_violations,
    betti_number,
    character_lattice_basis,
    is_adjusted,
    schreier_ball,
)
from grouptool.words import Hom, Word, parse_word


def pres(gens, *rels, name="P"):
    return Presentation(name, tuple(gens), tuple(parse_word(r, gens) for r in rels))


def test_presentation_guards():
    with pytest.raises(ValueError):
        Presentation("P", ())
    with pytest.raises(ValueError):
        Presentation("P", ("a",), (Word(),))
    with pytest.raises(UnknownGenerator):
        Presentation("P", ("a",), (Word.gen("b"),))


def test_relator_matrix():
    assert abelianized_relator_matrix(surface_group(2)).tolist() == [[0, 0, 0, 0]]
    assert abelianized_relator_matrix(pres("ab", "a^2 b^3")).tolist() == [[2, 3]]
    N = mapping_torus_N()
    M = abelianized_relator_matrix(N).tolist()
    b_cols = [N.generators.index(g) for g in ("b1", "b2")]
    rows = [row for row in M if any(row)]
    assert sorted(sorted(row[j] for j in b_cols) for row in rows) == [[-1, 0], [-1, 0]]


def test_betti_numbers():
    for g in (1, 2, 3):
        assert betti_number(surface_group(g)) == 2 * g
    assert betti_number(proposition_bundle()[1]) == 6
    assert betti_number(free_group(("a", "b", "c"))) == 3
    assert betti_number(mapping_torus_N()) == 3
    assert abelian_invariants(pres("a", "a^2")) == (0, [2])


def test_character_lattice():
    basis = character_lattice_basis(z2())
    assert [c.values for c in basis] == [(1, 0), (0, 1)]
    assert character_lattice_basis(pres("a", "a^2")) == []
    G = proposition_bundle()[1]
    basis = character_lattice_basis(G)
    assert len(basis) == 6
    assert all(c.is_character_of(G) for c in basis)


def test_character_operations():
    P = z2()
    chi = Character.on(P, {"a": 1})
    assert chi.values == (1, 0)
    assert chi(parse_word("a^3 b", P.generators)) == 3
    assert (chi + chi).values == (2, 0)
    assert (-chi).values == (-1, 0)
    assert chi.scale(Fraction(1, 2)).values == (Fraction(1, 2), 0)
    assert chi.restrict(("b",)).is_zero()
    with pytest.raises(ValueError):
        Character.on(pres("ab", "a^2 b^3"), {"a": 1})
    with pytest.raises(UnknownGenerator):
        chi.value("z")


def test_sphere_points():
    pt = SpherePoint.from_vector(("a", "b"), (Fraction(1, 2), Fraction(1, 3)))
    assert pt.direction == (3, 2)
    assert (-pt).direction == (-3, -2)
    assert pt.same_ray(Character(("a", "b"), (6, 4)))
    assert not pt.same_ray(Character(("a", "b"), (-6, -4)))
    assert pt.restrict(("a",)).direction == (1,)
    assert SpherePoint(("a", "b"), (1, 0)).restrict(("b",)) is None
    with pytest.raises(ValueError):
        SpherePoint(("a",), (0,))
    with pytest.raises(ValueError):
        SpherePoint(("a", "b"), (2, 4))


def test_surface_presentation_is_adjusted():
    S = surface_group(2)
    A = adjust_presentation(S)
    assert A.base == S and A.m == 4 and A.r == 0
    assert is_adjusted(S, 4)


def test_adjust_with_torsion():
    P = pres("ab", "a b a^-1 b^-1", "a^2")
    A = adjust_presentation(P)
    assert A.m == betti_number(P) == 1
    assert not adjusted_violations(A.base, A.m)
    for g in P.generators:
        back = A.to_original(A.from_original(Word.gen(g)))
        assert back.exponent_sum(g) == 1


def test_forced_adjustment_of_cyclic_group():
    P = free_group(("y1",), "Y")
    A = adjust_presentation(P, force=True)
    assert (A.m, A.r) == (1, 1)
    assert A.basis_generators == ("h1",) and A.kernel_generators == ("g1",)
    assert not adjusted_violations(A.base, 1)
    assert betti_number(A.base) == 1
    chi = Character.on(A.base, {"h1": 1})
    assert chi.value("g1") == 0


def test_adjust_changes_basis_when_needed():
    P = pres("ab", "a b^-1")
    A = adjust_presentation(P)
    assert A.m == 1
    assert not adjusted_violations(A.base, A.m)


def test_schreier_free_group():
    F = f2()
    h = Hom.from_dict(F.generators, ("z",), {"a": Word.gen("z"), "b": Word()})
    ev = schreier_ball(F, h, 2)
    gens = {str(w) for w in ev.subgroup_generators}
    assert "b" in gens and "a b a^-1" in gens
    assert ev.abelian_rank_lower_bound >= 2
    assert ev.label == "evidence"


def test_schreier_identity_and_guard():
    F = f2()
    ev = schreier_ball(F, Hom.identity(F.generators), 3)
    assert ev.subgroup_generators == () and ev.abelian_rank_lower_bound == 0
    with pytest.raises(RadiusTooSmall):
        schreier_ball(F, Hom.identity(F.generators), 0)


def test_schreier_corpus_growth():
    G = proposition_bundle()[1]
    ranks = [schreier_ball(G, f2_quotient_map(), r).abelian_rank_lower_bound for r in (2, 3)]
    assert ranks[1] > ranks[0]


def test_free_abelian_oracle():
    P = free_abelian(("a", "b", "c"))
    assert P.oracle == "abelian" and betti_number(P) == 3
