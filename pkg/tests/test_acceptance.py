"""Acceptance criteria, one test per criterion, each printing a PASS/FAIL line."""

import random
import time
from math import gcd

from grouptool.certificates import (
    IN_COMPLEMENT,
    ball_connectivity_evidence,
    monic_alexander_certificate,
    word_valuation,
)
from grouptool.corpus import (
    direct_sum_check,
    f2,
    f2_quotient_map,
    f2xf2,
    f2xf2_rules_certificate,
    f2xf2_sample_points,
    mapping_torus_N,
    product_verdict,
    proposition_bundle,
    relator_images,
    z2,
)
from grouptool.extensions import build_pi, coinvariants, extension_report
from grouptool.fibration import assemble_beta, fiber, non_proportional
from grouptool.linalg import IntMatrix, determinant, rational_rank, smith_normal_form
from grouptool.presentations import Character, betti_number, character_lattice_basis, schreier_ball
from grouptool.words import GroupRingElement, Word, fox_derivative

RESULTS = {}
OFF_AXIS = [(1, 1), (1, -1), (-1, 1), (-1, -1), (2, 1), (1, 2), (-2, 1), (1, -2)]


def record(n, ok, detail):
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'} ({detail})"
    RESULTS[n] = line
    print(line)
    assert ok, line


def test_criterion_1_headline_numbers():
    start = time.perf_counter()
    E, G = proposition_bundle()
    rep = extension_report(E)
    got = (betti_number(G), betti_number(E.quotient.base), coinvariants(E)[0],
           rep.albaneseDimension, rep.eulerCharacteristic)
    elapsed = time.perf_counter() - start
    record(1, got == (6, 4, 2, 2, 4) and elapsed < 5,
           f"b1(G), b1(Gamma), coinvariant rank, albanese, euler = {got}; {elapsed:.2f}s")


def test_criterion_2_g_well_defined():
    start = time.perf_counter()
    _, G = proposition_bundle()
    images = relator_images(G, f2_quotient_map())
    bad = [str(r) for r, img in images if img]
    elapsed = time.perf_counter() - start
    record(2, not bad and elapsed < 1, f"{len(images)} relators, {len(bad)} survive; {elapsed:.3f}s")


def test_criterion_3_direct_sum():
    rep = direct_sum_check()
    ok = rep.holds and (rep.rank_f, rep.rank_g, rep.intersection) == (4, 2, 0)
    record(3, ok, f"ranks {rep.rank_f} + {rep.rank_g}, intersection {rep.intersection}")


def test_criterion_4_pipeline():
    start = time.perf_counter()
    E, G = proposition_bundle()
    res = fiber(E)
    b = res.b.character()
    kernel = E.kernel.generators
    checks = {}
    checks["character"] = b.is_character_of(G)
    checks["primitive"] = gcd(*res.b.direction) == 1 and b.is_integral()
    checks["kernel restriction"] = not b.restrict(kernel).is_zero()
    pulled = [c.values for c in character_lattice_basis(G) if c.restrict(kernel).is_zero()]
    checks["not from Gamma"] = rational_rank(pulled + [b.values]) > rational_rank(pulled)
    PA = build_pi(E)
    beta = assemble_beta(PA, res.gamma, res.mu)
    scale = {res.beta.value(g) / beta.value(g) for g in PA.pi.generators if beta.value(g)}
    zeros = all(res.beta.value(g) == 0 for g in PA.pi.generators if not beta.value(g))
    checks["matches assemble_beta"] = len(scale) == 1 and min(scale) > 0 and zeros
    checks["pullback equals beta"] = all(
        res.beta.value(g) == b(w) for g, w in zip(PA.pi.generators, PA.projection_to_G.images))
    checks["non-proportional"] = all(non_proportional(PA, res.beta, i) for i in range(PA.n))
    elapsed = time.perf_counter() - start
    failed = [k for k, v in checks.items() if not v]
    record(4, not failed and elapsed < 10,
           f"b = {res.b.direction}, mu = {res.mu}, status {res.status}, "
           f"failed checks {failed}; {elapsed:.2f}s")


def test_criterion_5_monic_alexander():
    N = mapping_torus_N()
    t_dual = [int(g == "t") for g in N.generators]
    verdicts = {
        "N +t": monic_alexander_certificate(N, t_dual).verdict,
        "N -t": monic_alexander_certificate(N, [-x for x in t_dual]).verdict,
        "Z2 +(1,0)": monic_alexander_certificate(z2(), (1, 0)).verdict,
        "Z2 -(1,0)": monic_alexander_certificate(z2(), (-1, 0)).verdict,
        "F2 (1,0)": monic_alexander_certificate(f2(), (1, 0)).verdict,
    }
    want = {"N +t": "certified", "N -t": "certified", "Z2 +(1,0)": "certified",
            "Z2 -(1,0)": "certified", "F2 (1,0)": "inconclusive"}
    record(5, verdicts == want, str(verdicts))


def test_criterion_6_f2xf2_rules_match_product_formula():
    start = time.perf_counter()
    P = f2xf2()
    points = f2xf2_sample_points()
    mismatches = []
    for v in points:
        cert = f2xf2_rules_certificate(P, v)
        derived = IN_COMPLEMENT if cert is None else cert.claim
        if derived != product_verdict(P, v):
            mismatches.append(v)
    elapsed = time.perf_counter() - start
    record(6, len(points) == 200 and not mismatches and elapsed < 30,
           f"{len(points)} points, {len(mismatches)} mismatches; {elapsed:.2f}s")


def test_criterion_7_ball_evidence():
    z = [ball_connectivity_evidence(z2(), d, 2, 4).connected for d in OFF_AXIS]
    f = [ball_connectivity_evidence(f2(), d, 2, R).connected for d in OFF_AXIS for R in (4, 5, 6)]
    record(7, all(z) and not any(f),
           f"Z2 connected {sum(z)}/8 at r=2,R=4; F2 connected {sum(f)}/24 at R=4..6")


def _random_word(rnd, gens, n):
    return Word(tuple((rnd.choice(gens), rnd.choice((1, -1))) for _ in range(n)))


def test_criterion_8_property_suites():
    start = time.perf_counter()
    rnd = random.Random(8)
    failures = 0
    for _ in range(500):
        r, c = rnd.randint(1, 8), rnd.randint(1, 8)
        M = IntMatrix(r, c, tuple(rnd.randint(-9, 9) for _ in range(r * c)))
        res = smith_normal_form(M)
        nz = [d for d in res.D.diagonal() if d]
        ok = (res.U @ M @ res.V == res.D and abs(determinant(res.U)) == 1
              and abs(determinant(res.V)) == 1 and res.D.is_diagonal()
              and all(d > 0 for d in nz) and all(b % a == 0 for a, b in zip(nz, nz[1:])))
        failures += not ok
    gens = ("a", "b", "c")
    for _ in range(500):
        w = _random_word(rnd, gens, rnd.randint(0, 20))
        rhs = GroupRingElement()
        for g in gens:
            rhs = rhs + fox_derivative(w, g) * (GroupRingElement.from_word(Word.gen(g)) - 1)
        failures += GroupRingElement.from_word(w) - 1 != rhs
    for _ in range(500):
        chi = Character(gens, [rnd.randint(-3, 3) for _ in gens])
        u = _random_word(rnd, gens, rnd.randint(0, 10)).syllables
        v = _random_word(rnd, gens, rnd.randint(0, 10)).syllables
        lhs = word_valuation(chi, u + v)
        failures += lhs != min(word_valuation(chi, u), chi(Word(u)) + word_valuation(chi, v))
    elapsed = time.perf_counter() - start
    record(8, failures == 0 and elapsed < 60, f"1500 cases, {failures} failures; {elapsed:.2f}s")


def test_criterion_9_schreier_growth():
    _, G = proposition_bundle()
    ranks = [schreier_ball(G, f2_quotient_map(), r).abelian_rank_lower_bound for r in (2, 3, 4)]
    record(9, ranks[0] < ranks[1] < ranks[2], f"ranks at radii 2, 3, 4 = {ranks}")
