from fractions import Fraction

import pytest

from grouptool.certificates import IN_SIGMA
from grouptool.corpus import (
    free_abelian,
    free_group,
    mapping_torus_extension,
    phi,
    proposition_bundle,
    surface_group,
)
from grouptool.errors import HypothesisFailed, NotAFibrationCandidate
from grouptool.extensions import (
    ExtensionData,
    build_pi,
    from_unadjusted,
    monodromy_on_homology,
)
from grouptool.fibration import (
    assemble_beta,
    descend,
    fiber,
    non_proportional,
    scale_to_primitive,
    select_gamma,
)
from grouptool.linalg import rational_rank
from grouptool.presentations import AdjustedPresentation, Character, character_lattice_basis
from grouptool.words import Hom, Word


@pytest.fixture(scope="module")
def bundle():
    return proposition_bundle()


@pytest.fixture(scope="module")
def result(bundle):
    return fiber(bundle[0])


def test_scale_to_primitive():
    g = ("a", "b")
    assert scale_to_primitive(Character(g, (2, 4))).direction == (1, 2)
    assert scale_to_primitive(Character(g, (Fraction(1, 2), Fraction(1, 3)))).direction == (3, 2)
    assert scale_to_primitive(Character(g, (-2, 0))).direction == (-1, 0)


def test_select_gamma(bundle):
    E, G = bundle
    gamma = select_gamma(E, G)
    assert gamma.restrict(E.kernel.generators).values == (1, 0, 0, 0)
    assert gamma.is_character_of(G)


def test_hypothesis_failure():
    K = surface_group(2)
    E = mapping_torus_extension(K, Hom.identity(K.generators))
    select_gamma(E)  # b1 = 5 > 1 is fine
    flip = Hom.from_dict(("k",), ("k",), {"k": Word.gen("k", -1)}, {"k": Word.gen("k", -1)})
    E2 = mapping_torus_extension(free_group(("k",)), flip)
    with pytest.raises(HypothesisFailed):
        select_gamma(E2)
    with pytest.raises(HypothesisFailed):
        fiber(E2)


def test_beta_examples(bundle):
    E, G = bundle
    PA = build_pi(E)
    gamma = select_gamma(E, G)
    beta = assemble_beta(PA, gamma, 1)
    assert [beta.value(g) for g in ("s", "t", "x", "y")] == [1, 1, 1, 1]
    assert [beta.value(g) for g in E.kernel.generators] == [1, 0, 0, 0]
    half = assemble_beta(PA, gamma, Fraction(1, 2))
    b = scale_to_primitive(descend(PA, half, G)).character()
    assert b.value("s") == 2 and b.value("a1") == 1
    kernel_free = Character(G.generators, [0, 0, 0, 0, 1, 0, 0, 0])
    with pytest.raises(NotAFibrationCandidate):
        assemble_beta(PA, kernel_free, 1)
    only_first = assemble_beta(PA, gamma, 1, alpha_subset=[0])
    assert only_first.value("s") == 1 and only_first.value("t") == 0


def test_pipeline_invariants(bundle, result):
    E, G = bundle
    b = result.b.character()
    assert b.is_character_of(G)
    assert not b.restrict(E.kernel.generators).is_zero()
    pulled = [tuple(c.values) for c in character_lattice_basis(G)
              if c.restrict(E.kernel.generators).is_zero()]
    assert rational_rank(pulled + [b.values]) > rational_rank(pulled)
    PA = build_pi(E)
    expected = assemble_beta(PA, result.gamma, result.mu)
    ratio = None
    for g in PA.pi.generators:
        if expected.value(g):
            q = result.beta.value(g) / expected.value(g)
            assert ratio is None or q == ratio
            ratio = q
        else:
            assert result.beta.value(g) == 0
    for i in range(PA.n):
        assert non_proportional(PA, result.beta, i)


def test_beta_is_monodromy_invariant(bundle, result):
    E, _ = bundle
    H = monodromy_on_homology(E)
    k = [result.beta.value(g) for g in E.kernel.generators]
    for x in H.generators:
        A = H.matrix(x).tolist()
        image = [sum(A[i][j] * k[j] for j in range(4)) for i in range(4)]
        assert image == k


def test_corpus_is_certified(result):
    assert result.status == "certified"
    assert result.b.direction == (1, 0, 0, 0, 1, 1, 1, 1)
    plus, minus = result.certificates
    assert plus.claim == minus.claim == IN_SIGMA
    assert plus.conclusive and minus.conclusive
    assert minus.point == -plus.point
    assert result.attempts[0].verdicts["rules"] == {"+": "certified", "-": "certified"}


def test_fiber_is_deterministic(bundle, result):
    again = fiber(bundle[0])
    assert again.as_dict() == result.as_dict()


def test_ball_certifier_reports_budget(bundle):
    r = fiber(bundle[0], mu_schedule=(1,), certifiers=("ball",), radius=2)
    assert r.status in ("evidence-only", "constructed-unverified")
    assert r.certificates == (None, None)
    assert set(r.attempts[0].verdicts["ball"]) == {"+", "-"}


def test_mapping_torus_over_z():
    E = mapping_torus_extension(surface_group(2), phi(2), name="N")
    r = fiber(E)
    assert r.status == "certified"
    assert r.b.character().value("t") != 0


def test_trivial_product_with_z2():
    K = surface_group(2)
    Q = free_abelian(("u", "v"), "Z2")
    ident = Hom.identity(K.generators)
    E = ExtensionData(K, AdjustedPresentation.trivial(Q, 2), (ident, ident), (Word(),), None, "KxZ2")
    r = fiber(E)
    assert r.status == "certified"
    b = r.b.character()
    assert not b.restrict(K.generators).is_zero() and not b.restrict(("u", "v")).is_zero()


def test_positive_r_extension():
    K = surface_group(2, name="K")
    E = from_unadjusted(K, free_group(("y1",), "Y"), {"y1": phi(2)}, [], force_adjust=True)
    r = fiber(E)
    assert r.status == "certified"
    assert r.b.character().value("g1") == 0
    assert r.gamma_vanishes_on_kernel_lifts
    assert any("HNN" in line for line in r.attempts[0].trace)


def test_bad_inputs(bundle):
    E, G = bundle
    with pytest.raises(ValueError):
        fiber(E, certifiers=("magic",))
    with pytest.raises(HypothesisFailed):
        fiber(E, gamma=Character(G.generators, (1,) * 8))
    PA = build_pi(E)
    with pytest.raises(ValueError):
        assemble_beta(PA, select_gamma(E, G), 0)
    with pytest.raises(ValueError):
        assemble_beta(PA, select_gamma(E, G), 1, alpha_subset=[7])
