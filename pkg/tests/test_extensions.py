import dataclasses

import pytest

from grouptool.corpus import (
    free_group,
    mapping_torus_N,
    mapping_torus_extension,
    phi,
    proposition_bundle,
    surface_group,
)
from grouptool.errors import InvalidExtension, OracleUnavailable
from grouptool.extensions import (
    ExtensionData,
    action_is_unimodular,
    assemble_total_presentation,
    build_pi,
    coinvariants,
    composite_automorphism,
    extension_report,
    from_unadjusted,
    monodromy_on_homology,
    validate_extension,
)
from grouptool.presentations import AdjustedPresentation, Presentation, betti_number
from grouptool.words import Hom, Word, commutator, parse_word


def trivial_extension(K, Q, name="KxQ"):
    ident = Hom.identity(K.generators)
    A = AdjustedPresentation.trivial(Q, betti_number(Q))
    return ExtensionData(K, A, (ident,) * len(Q.generators), (Word(),) * len(Q.relators),
                         None, name)


def test_corpus_bundle_validates():
    E, _ = proposition_bundle()
    assert validate_extension(E) == []
    assert (E.m, E.r) == (4, 0)


def test_wrong_tail_is_named():
    E, _ = proposition_bundle()
    bad = dataclasses.replace(E, tails=(Word.gen("a1"),))
    out = validate_extension(bad)
    assert len(out) == 1 and out[0].startswith("relator r1")


def test_broken_monodromy_is_caught():
    E, _ = proposition_bundle()
    K = E.kernel.generators
    f = Hom.from_dict(K, K, {"a1": Word.gen("a1", 2), "b1": Word.gen("b1"), "a2": Word.gen("a2"),
                             "b2": Word.gen("b2")}, {g: Word.gen(g) for g in K})
    bad = dataclasses.replace(E, monodromy=(f,) + E.monodromy[1:])
    assert validate_extension(bad)


def test_structural_guards():
    E, _ = proposition_bundle()
    with pytest.raises(InvalidExtension):
        dataclasses.replace(E, tails=())
    with pytest.raises(InvalidExtension):
        dataclasses.replace(E, monodromy=E.monodromy[:2])
    K = E.kernel.generators
    no_inverse = Hom.from_dict(K, K, {g: Word.gen(g) for g in K})
    with pytest.raises(InvalidExtension):
        dataclasses.replace(E, monodromy=(no_inverse,) + E.monodromy[1:])


def test_validation_needs_an_oracle():
    E, _ = proposition_bundle()
    K = E.kernel.with_oracle("none")
    with pytest.raises(OracleUnavailable):
        validate_extension(dataclasses.replace(E, kernel=K, tails=(Word.gen("a1"),)))


def test_trivial_extensions_validate():
    K = surface_group(2)
    for Q in (surface_group(2, ("s", "t", "x", "y")), free_group(("u", "v"))):
        assert validate_extension(trivial_extension(K, Q)) == []


def test_assembled_bundle():
    E, G = proposition_bundle()
    s, t, x, y = (Word.gen(g) for g in "stxy")
    assert commutator(s, t) * commutator(x, y) in G.relators
    assert len(G.generators) == 8


def test_direct_product_assembly():
    K = surface_group(2)
    E = trivial_extension(K, free_group(("z",)))
    G = assemble_total_presentation(E)
    z = Word.gen("z")
    for k in K.generators:
        assert commutator(z, Word.gen(k)) in G.relators


def test_mapping_torus_relators():
    N = mapping_torus_N()
    t, a1, b1 = Word.gen("t"), Word.gen("a1"), Word.gen("b1")
    assert t * a1 * t.inverse() * (a1 * b1).inverse() in N.relators


def test_composite_automorphism():
    E, _ = proposition_bundle()
    f = composite_automorphism(E, parse_word("t^2", E.quotient_generators))
    assert f.image("a1") == parse_word("a1 b1^2", E.kernel.generators)
    g = composite_automorphism(E, parse_word("t t^-1", E.quotient_generators))
    assert g.is_identity()


def test_pi_assembly():
    E, _ = proposition_bundle()
    PA = build_pi(E)
    assert PA.stable_letters == ("s", "t", "x", "y")
    alpha_t = PA.alphas[1]
    assert alpha_t.value("t") == 1 and alpha_t.value("a1") == 0
    assert PA.factor(1).generators == E.kernel.generators + ("t",)


def test_pi_for_forced_adjustment():
    K = surface_group(2, name="K")
    E = from_unadjusted(K, free_group(("y1",), "Y"), {"y1": phi(2)}, [], force_adjust=True)
    assert validate_extension(E) == []
    PA = build_pi(E)
    assert len(PA.stable_letters) == 2 and (PA.m, PA.r) == (1, 1)
    alpha2 = PA.alphas[1]
    assert alpha2.value("g1") == 1 and not any(alpha2.value(g) for g in K.generators + ("h1",))


def test_trivial_pi_is_product():
    K = surface_group(2)
    E = trivial_extension(K, free_group(("u", "v")))
    PA = build_pi(E)
    assert PA.pi.relators == assemble_total_presentation(E).relators


def test_homology_action():
    E, _ = proposition_bundle()
    H = monodromy_on_homology(E)
    assert H.matrix("t").tolist() == [[1, 1, 0, 0], [0, 1, 0, 0], [0, 0, 1, 1], [0, 0, 0, 1]]
    assert H.matrix("s").tolist() == [[int(i == j) for j in range(4)] for i in range(4)]
    assert action_is_unimodular(H)
    inv = mapping_torus_extension(surface_group(2), phi(2).inverse())
    A = monodromy_on_homology(inv).matrix("t")
    assert (A @ H.matrix("t")).tolist() == H.matrix("s").tolist()


def test_coinvariants():
    E, _ = proposition_bundle()
    assert coinvariants(E) == (2, [])
    K = surface_group(2)
    assert coinvariants(trivial_extension(K, surface_group(2, ("s", "t", "x", "y"))))[0] == 4
    K1 = free_group(("k",))
    flip = Hom.from_dict(("k",), ("k",), {"k": Word.gen("k", -1)}, {"k": Word.gen("k", -1)})
    assert coinvariants(mapping_torus_extension(K1, flip))[0] == 0


def test_reports():
    E, _ = proposition_bundle()
    rep = extension_report(E)
    assert (rep.b1K, rep.b1Gamma, rep.b1G) == (4, 4, 6)
    assert (rep.coinvariantRank, rep.albaneseDimension) == (2, 2)
    assert rep.eulerCharacteristic == 4 and rep.noncoherenceFlag is True
    N = mapping_torus_extension(surface_group(2), phi(2), name="N")
    assert extension_report(N).albaneseDimension == (2 if betti_number(mapping_torus_N()) > 1 else 1)
    K = surface_group(2)
    prod = dataclasses.replace(trivial_extension(K, surface_group(2, ("s", "t", "x", "y"))),
                               surface=(2, 2))
    rep = extension_report(prod)
    assert rep.b1G == 8 and rep.albaneseDimension == 2
