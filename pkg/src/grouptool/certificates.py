"""BNS membership as a certificate system.

Every ``Certificate`` is issued by a rule function in this module after
its hypotheses have been checked; constructing one directly raises.
``BallEvidence`` certificates are never conclusive and neither is any
tree containing one.
"""

from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from grouptool import kernels
from grouptool.alexander import find_monic_minor, fox_matrix
from grouptool.errors import (
    BallTooLarge,
    NotConclusive,
    OracleUnavailable,
    RuleInapplicable,
)
from grouptool.linalg import solve_rational
from grouptool.oracles import WordOracle, make_oracle
from grouptool.presentations import Character, Presentation, SpherePoint
from grouptool.words import Hom, Word, apply_hom, commutator

IN_SIGMA = "inSigma1"
IN_COMPLEMENT = "inComplement"

RULES = (
    "MappingTorusAxiom",
    "PullbackRegularity",
    "PullbackExceptional",
    "ProductFormula",
    "LemmaAmalgam",
    "LemmaHNNStable",
    "MonicAlexander",
    "BallEvidence",
    "CorpusAxiom",
)

DEFAULT_ELEMENT_CAP = 20000

_ISSUER = object()


@dataclass(frozen=True)
class Certificate:
    group: Presentation
    point: SpherePoint
    claim: str
    rule: str
    premises: tuple = ()
    payload: dict = field(default_factory=dict, compare=False)
    _issuer: object = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        if self._issuer is not _ISSUER:
            raise RuleInapplicable("certificates are issued only by rule functions")
        if self.claim not in (IN_SIGMA, IN_COMPLEMENT):
            raise ValueError(f"unknown claim {self.claim!r}")
        if self.rule not in RULES:
            raise ValueError(f"unknown rule {self.rule!r}")
        if self.point.generators != self.group.generators:
            raise ValueError("sphere point and group use different generator lists")

    @property
    def conclusive(self) -> bool:
        return self.rule != "BallEvidence" and all(p.conclusive for p in self.premises)

    def as_dict(self) -> dict:
        return {
            "group": self.group.name,
            "point": dict(zip(self.point.generators, self.point.direction)),
            "claim": self.claim,
            "rule": self.rule,
            "conclusive": self.conclusive,
            "payload": self.payload,
            "premises": [p.as_dict() for p in self.premises],
        }


def _issue(group, point, claim, rule, premises=(), payload=None) -> Certificate:
    return Certificate(group, point, claim, rule, tuple(premises), payload or {}, _ISSUER)


def _point(P: Presentation, chi) -> SpherePoint:
    if isinstance(chi, SpherePoint):
        if chi.generators != P.generators:
            raise RuleInapplicable("character is not on this presentation's generators")
        return chi
    if isinstance(chi, Character):
        if chi.generators != P.generators:
            raise RuleInapplicable("character is not on this presentation's generators")
        vals = chi.values
    else:
        vals = tuple(chi)
    if not any(vals):
        raise RuleInapplicable("the zero character is not a sphere point")
    pt = SpherePoint.from_vector(P.generators, vals)
    return pt


def _check_character(P: Presentation, pt: SpherePoint):
    chi = pt.character()
    bad = chi.violated_relators(P)
    if bad:
        raise RuleInapplicable(f"{pt} is not a character of {P.name}: relator {bad[0]}")
    return chi


# valuations and ball evidence -----------------------------------------------


def word_valuation(chi: Character, w) -> Fraction:
    """min over prefixes p of w (the empty prefix included) of chi(p).

    ``w`` is a Word or a raw syllable sequence; the valuation depends on the
    spelling, so unreduced input is read as given.
    """
    table = chi.as_dict()
    low = total = Fraction(0)
    for s, e in (w.syllables if isinstance(w, Word) else w):
        d = (table[s] if s in table else chi.value(s)) * (1 if e > 0 else -1)
        # chi is linear along a run, so its minimum sits at one end
        low = min(low, total + d, total + abs(e) * d)
        total += abs(e) * d
    return low


def valuation_letters(letters, values) -> int:
    """Integer valuation on signed letter codes, via the compiled kernels."""
    low, _ = kernels.prefix_min(list(letters), list(values))
    return low


@dataclass(frozen=True)
class BallEvidence:
    radius_inner: int
    radius_outer: int
    connected: bool
    vertices: int
    nonnegative_vertices: int
    unconnected: tuple
    witness_valuations: dict = field(compare=False)

    def as_dict(self) -> dict:
        return {
            "radiusInner": self.radius_inner,
            "radiusOuter": self.radius_outer,
            "connected": self.connected,
            "vertices": self.vertices,
            "nonnegativeVertices": self.nonnegative_vertices,
            "unconnected": list(self.unconnected),
            "witnessValuations": {k: str(v) for k, v in self.witness_valuations.items()},
            "label": "evidence",
        }


def element_cap() -> int:
    raw = os.environ.get("GROUPTOOL_ELEMENT_CAP")
    return int(raw) if raw else DEFAULT_ELEMENT_CAP


class _Ball:
    """Oracle-distinct group elements of word length <= R, found by BFS."""

    def __init__(self, oracle: WordOracle, ngens: int, R: int, cap: int):
        self.oracle = oracle
        self.reps: list = []
        self.length: list = []
        self.buckets: dict = {}
        self._add([], 0)
        frontier = [0]
        letters = [x for i in range(1, ngens + 1) for x in (i, -i)]
        for depth in range(1, R + 1):
            nxt = []
            for v in frontier:
                for x in letters:
                    w = kernels.free_reduce(self.reps[v] + [x])
                    if len(w) < len(self.reps[v]) or self.find(w) is not None:
                        continue
                    nxt.append(self._add(w, depth))
                    if len(self.reps) > cap:
                        raise BallTooLarge(
                            f"ball of radius {R} exceeds {cap} elements at depth {depth}")
            frontier = nxt

    def _add(self, w, depth):
        idx = len(self.reps)
        self.reps.append(w)
        self.length.append(depth)
        self.buckets.setdefault(self.oracle.bucket(w), []).append(idx)
        return idx

    def find(self, w) -> Optional[int]:
        cands = self.buckets.get(self.oracle.bucket(w))
        if not cands:
            return None
        if self.oracle.exact:
            return cands[0]
        for i in cands:
            if self.oracle.equal(self.reps[i], w):
                return i
        return None


def ball_connectivity_evidence(P: Presentation, chi, r: int, R: int, oracle=None,
                               cap: Optional[int] = None) -> BallEvidence:
    """Connectivity of the chi >= 0 part of the radius-R Cayley ball.

    Checks whether every chi >= 0 element of length <= r lies in the
    component of the identity.  Never conclusive.
    """
    if not 1 <= r <= R:
        raise ValueError("need 1 <= r <= R")
    pt = _point(P, chi)
    if oracle is None:
        if P.oracle == "none":
            raise OracleUnavailable(f"{P.name} declares no word-problem oracle")
        oracle = P.word_oracle
    elif isinstance(oracle, str):
        oracle = make_oracle(oracle, len(P.generators), [P.letters(x) for x in P.relators])
    cap = element_cap() if cap is None else cap
    ball = _Ball(oracle, len(P.generators), R, cap)
    vals = list(pt.direction)
    ngens = len(P.generators)
    chis = [sum(vals[abs(x) - 1] * (1 if x > 0 else -1) for x in w) for w in ball.reps]
    parent = list(range(len(ball.reps)))

    def root(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    nonneg = [i for i, c in enumerate(chis) if c >= 0]
    for v in nonneg:
        for g in range(1, ngens + 1):
            u = ball.find(kernels.free_reduce(ball.reps[v] + [g]))
            if u is not None and chis[u] >= 0:
                a, b = root(u), root(v)
                if a != b:
                    parent[max(a, b)] = min(a, b)
    inner = [i for i in nonneg if ball.length[i] <= r]
    home = root(0)
    lost = [i for i in inner if root(i) != home]
    lost.sort(key=lambda i: (ball.length[i], ball.reps[i]))
    witness = {}
    for i in sorted(inner, key=lambda i: (ball.length[i], ball.reps[i]))[:32]:
        w = ball.reps[i]
        witness[str(P.word(w))] = Fraction(valuation_letters(w, vals))
    return BallEvidence(r, R, not lost, len(ball.reps), len(nonneg),
                        tuple(str(P.word(ball.reps[i])) for i in lost), witness)


def ball_certificate(P: Presentation, chi, evidence: BallEvidence) -> Certificate:
    pt = _point(P, chi)
    claim = IN_SIGMA if evidence.connected else IN_COMPLEMENT
    return _issue(P, pt, claim, "BallEvidence", payload=evidence.as_dict())


# structural recognisers -------------------------------------------------------


@dataclass(frozen=True)
class MappingTorusStructure:
    kernel: Presentation
    stable: str
    monodromy: Hom  # f with s k s^-1 = f(k)


def _rotations(rel: Word):
    letters = [(sym, 1 if e > 0 else -1) for sym, e in rel.syllables for _ in range(abs(e))]
    for word in (letters, [(sym, -e) for sym, e in reversed(letters)]):
        for o in range(len(word)):
            yield Word(tuple(word[o:] + word[:o]))


def _conjugation_form(rel: Word, s: str):
    """(k, W) when a cyclic permutation of rel or rel^-1 reads s k s^-1 W^-1, else None."""
    for rot in _rotations(rel):
        syl = rot.syllables
        if len(syl) < 3 or syl[0] != (s, 1) or syl[2] != (s, -1):
            continue
        k, e = syl[1]
        if e != 1 or k == s:
            continue
        tail = Word(syl[3:])
        if s in tail.symbols():
            continue
        return k, tail.inverse()
    return None


def mapping_torus_structure(P: Presentation, stable: str, kernel_oracle: str = "none"):
    if stable not in P.generators:
        raise RuleInapplicable(f"{stable} is not a generator of {P.name}")
    kgens = tuple(g for g in P.generators if g != stable)
    images: dict = {}
    krels = []
    for rel in P.relators:
        if stable not in rel.symbols():
            krels.append(rel)
            continue
        form = _conjugation_form(rel, stable)
        if form is None:
            raise RuleInapplicable(f"relator {rel} is not of the form s k s^-1 f(k)^-1")
        k, W = form
        if k in images:
            raise RuleInapplicable(f"two conjugation relators for {k}")
        images[k] = W
    missing = [k for k in kgens if k not in images]
    if missing:
        raise RuleInapplicable(f"no conjugation relator for kernel generators {missing}")
    K = Presentation(f"{P.name}|K", kgens, tuple(krels), kernel_oracle) if kgens else None
    f = Hom.from_dict(kgens, kgens, images)
    return MappingTorusStructure(K, stable, f)


def _trivial_in(K: Presentation, w: Word) -> bool:
    if not w:
        return True
    if K is None or K.oracle == "none":
        raise RuleInapplicable(f"cannot decide {w} = 1 without a kernel word oracle")
    return K.word_oracle.is_trivial(K.letters(w))


def _check_automorphism(mt: MappingTorusStructure, inverse: Optional[Hom]):
    f = mt.monodromy
    if f.is_identity():
        return
    if inverse is None:
        raise RuleInapplicable("monodromy is not the identity and no inverse was supplied")
    if inverse.source != f.source:
        raise RuleInapplicable("inverse monodromy is on a different alphabet")
    K = mt.kernel
    for k in f.source:
        kw = Word.gen(k)
        if not _trivial_in(K, apply_hom(f, apply_hom(inverse, kw)) * kw.inverse()) or \
                not _trivial_in(K, apply_hom(inverse, apply_hom(f, kw)) * kw.inverse()):
            raise RuleInapplicable(f"supplied inverse does not invert the monodromy on {k}")
    for rel in K.relators:
        if not _trivial_in(K, apply_hom(f, rel)) or not _trivial_in(K, apply_hom(inverse, rel)):
            raise RuleInapplicable(f"monodromy does not preserve kernel relator {rel}")


def _relator_set(P: Presentation) -> set:
    return set(P.relators)


def same_group(P: Presentation, Q: Presentation) -> bool:
    """Same generator list and same relator set; names and relator order are ignored."""
    return P.generators == Q.generators and _relator_set(P) == _relator_set(Q)


def _check_union(P: Presentation, P1: Presentation, P2: Presentation, K_gens) -> None:
    g1, g2 = set(P1.generators), set(P2.generators)
    if set(P.generators) != g1 | g2:
        raise RuleInapplicable("generators are not the union of the two pieces")
    if g1 & g2 != set(K_gens):
        raise RuleInapplicable("the pieces do not meet exactly in the amalgamated generators")
    if _relator_set(P) != _relator_set(P1) | _relator_set(P2):
        raise RuleInapplicable("relators are not the union of the pieces' relators")


# axioms -----------------------------------------------------------------------


def axiom_mapping_torus(P: Presentation, stable: str, direction: int = 1, *,
                        inverse: Optional[Hom] = None, kernel_oracle: str = "none",
                        chi=None) -> Certificate:
    """[+-dual of the stable letter] lies in Sigma^1 of K x|_f Z.

    With ``chi`` given, it must vanish on K (then it is a multiple of the
    dual) or the monodromy must be the identity with chi(s) != 0; in the
    latter case ker chi is a finite-index subgroup of K up to isomorphism.
    """
    mt = mapping_torus_structure(P, stable, kernel_oracle)
    _check_automorphism(mt, inverse)
    if chi is None:
        if direction not in (1, -1):
            raise ValueError("direction must be +1 or -1")
        pt = SpherePoint(P.generators, tuple(direction * int(g == stable) for g in P.generators))
        variant = "dual"
    else:
        pt = _point(P, chi)
        c = pt.character()
        if c.value(stable) == 0:
            raise RuleInapplicable("chi vanishes on the stable letter")
        on_kernel = any(c.value(k) for k in mt.monodromy.source)
        if on_kernel and not mt.monodromy.is_identity():
            raise RuleInapplicable("chi is nonzero on K and the monodromy is not the identity")
        variant = "product" if on_kernel else "dual"
    _check_character(P, pt)
    return _issue(P, pt, IN_SIGMA, "MappingTorusAxiom",
                  payload={"stable": stable, "variant": variant,
                           "identity_monodromy": mt.monodromy.is_identity()})


def _is_free(P: Presentation) -> bool:
    return not P.relators


def _is_free_abelian(P: Presentation) -> bool:
    from grouptool.oracles import _is_pairwise_commutator_presentation
    return _is_pairwise_commutator_presentation(
        len(P.generators), [P.letters(r) for r in P.relators])


def _surface_genus(P: Presentation) -> Optional[int]:
    if len(P.relators) != 1 or len(P.generators) % 2:
        return None
    g = len(P.generators) // 2
    gens = [Word.gen(x) for x in P.generators]
    expect = Word()
    for i in range(g):
        expect = expect * commutator(gens[2 * i], gens[2 * i + 1])
    return g if P.relators[0] == expect else None


def corpus_axiom(P: Presentation, chi) -> Certificate:
    """Known Sigma^1 facts recognised from the presentation's shape."""
    pt = _point(P, chi)
    _check_character(P, pt)
    if _is_free(P) and len(P.generators) >= 2:
        return _issue(P, pt, IN_COMPLEMENT, "CorpusAxiom",
                      payload={"fact": "S(F_n) is wholly exceptional for n >= 2"})
    genus = _surface_genus(P)
    if genus is not None and genus >= 2:
        return _issue(P, pt, IN_COMPLEMENT, "CorpusAxiom",
                      payload={"fact": "S(surface group) is wholly exceptional for genus >= 2",
                               "genus": genus})
    if _is_free_abelian(P) or len(P.generators) == 1 and not P.relators:
        return _issue(P, pt, IN_SIGMA, "CorpusAxiom",
                      payload={"fact": "Sigma^1(Z^n) is the whole sphere"})
    raise RuleInapplicable(f"no corpus fact applies to {P.name}")


# inference rules --------------------------------------------------------------


def _restrict_point(pt: SpherePoint, gens) -> Optional[SpherePoint]:
    return pt.restrict(gens)


def _check_product(P: Presentation, A: Presentation, B: Presentation) -> None:
    ga, gb = set(A.generators), set(B.generators)
    if ga & gb or set(P.generators) != ga | gb:
        raise RuleInapplicable("generators are not the disjoint union of the factors")
    want = set(A.relators) | set(B.relators)
    for a in A.generators:
        for b in B.generators:
            want.add(commutator(Word.gen(a), Word.gen(b)))
    if set(P.relators) != want:
        raise RuleInapplicable(f"{P.name} is not presented as the direct product of the factors")


def rule_product(P: Presentation, A: Presentation, B: Presentation, chi,
                 premise: Optional[Certificate] = None) -> Certificate:
    """Sigma^1(A x B)^c = Sigma^1(A)^c u Sigma^1(B)^c (embedded via the projections)."""
    _check_product(P, A, B)
    pt = _point(P, chi)
    _check_character(P, pt)
    ra = _restrict_point(pt, A.generators)
    rb = _restrict_point(pt, B.generators)
    if ra is not None and rb is not None:
        return _issue(P, pt, IN_SIGMA, "ProductFormula", payload={"case": "both factors nonzero"})
    factor, rest = (A, ra) if rb is None else (B, rb)
    if premise is None:
        raise RuleInapplicable(f"chi lives on factor {factor.name}; a verdict there is needed")
    if not same_group(premise.group, factor) or premise.point != rest:
        raise RuleInapplicable("premise does not concern the restriction of chi to its factor")
    return _issue(P, pt, premise.claim, "ProductFormula", [premise],
                  payload={"case": f"supported on {factor.name}"})


def _hom_well_defined(src: Presentation, dst: Presentation, h: Hom) -> None:
    if h.source != src.generators or h.target != dst.generators:
        raise RuleInapplicable("hom alphabets do not match the presentations")
    known = set(dst.relators) | {r.inverse() for r in dst.relators}
    for rel in src.relators:
        img = apply_hom(h, rel)
        if not img or img in known:
            continue
        if dst.oracle != "none" and dst.word_oracle.is_trivial(dst.letters(img)):
            continue
        raise RuleInapplicable(f"cannot verify that relator {rel} maps to 1")


def _hom_surjective(h: Hom) -> None:
    hit = {w.syllables[0][0] for w in h.images if len(w.syllables) == 1 and
           abs(w.syllables[0][1]) == 1}
    missing = [g for g in h.target if g not in hit]
    if missing:
        raise RuleInapplicable(f"cannot verify surjectivity: {missing} not hit by a generator")


def pullback_character(h: Hom, chi: Character) -> Character:
    vals = tuple(chi(w) for w in h.images)
    return Character(h.source, vals)


def rule_pullback(cert: Certificate, h: Hom, source: Presentation, target: Presentation,
                  direction: str = "up", kernel_finitely_generated: bool = False) -> Certificate:
    """Transport a verdict along an epimorphism h: source -> target.

    Upward (target verdict to its pullback): exceptional characters pull
    back along any epimorphism; Sigma^1 membership needs a finitely
    generated kernel.  Downward: Sigma^1 membership descends along any
    epimorphism; exceptional status needs a finitely generated kernel.
    """
    _hom_well_defined(source, target, h)
    _hom_surjective(h)
    if direction == "up":
        if not same_group(cert.group, target):
            raise RuleInapplicable("certificate does not concern the target group")
        pulled = pullback_character(h, cert.point.character())
        if pulled.is_zero():
            raise RuleInapplicable("pullback of chi is zero")
        pt = pulled.sphere_point()
        group = source
        needs_fg = cert.claim == IN_SIGMA
    elif direction == "down":
        if not same_group(cert.group, source):
            raise RuleInapplicable("certificate does not concern the source group")
        rows = [[w.exponent_sum(g) for g in target.generators] for w in h.images]
        sol = solve_rational(rows, cert.point.direction)
        if sol is None:
            raise RuleInapplicable("chi is not pulled back from the target")
        pt = SpherePoint.from_vector(target.generators, sol)
        group = target
        needs_fg = cert.claim == IN_COMPLEMENT
    else:
        raise ValueError("direction must be 'up' or 'down'")
    if needs_fg and not kernel_finitely_generated:
        raise RuleInapplicable("this transport needs a hom with finitely generated kernel")
    _check_character(group, pt)
    rule = "PullbackRegularity" if cert.claim == IN_SIGMA else "PullbackExceptional"
    return _issue(group, pt, cert.claim, rule, [cert],
                  payload={"direction": direction, "hom": {g: str(w) for g, w in h.as_dict().items()},
                           "kernel_finitely_generated": kernel_finitely_generated})


def rule_amalgam(cert1: Certificate, cert2: Certificate, P: Presentation,
                 kernel_generators: Sequence[str], chi) -> Certificate:
    """chi_1 in Sigma^1(P1), chi_2 in Sigma^1(P2), chi_K != 0 give chi in Sigma^1(P1 *_K P2)."""
    P1, P2 = cert1.group, cert2.group
    _check_union(P, P1, P2, kernel_generators)
    pt = _point(P, chi)
    _check_character(P, pt)
    if cert1.claim != IN_SIGMA or cert2.claim != IN_SIGMA:
        raise RuleInapplicable("both premises must claim Sigma^1 membership")
    if _restrict_point(pt, kernel_generators) is None:
        raise RuleInapplicable("chi vanishes on the amalgamated subgroup")
    if cert1.point != _restrict_point(pt, P1.generators) or \
            cert2.point != _restrict_point(pt, P2.generators):
        raise RuleInapplicable("premises do not concern the restrictions of chi")
    return _issue(P, pt, IN_SIGMA, "LemmaAmalgam", [cert1, cert2],
                  payload={"amalgamated": list(kernel_generators)})


def rule_hnn_stable(cert1: Certificate, P: Presentation, P2: Presentation, stable: str,
                    chi, *, inverse: Optional[Hom] = None,
                    kernel_oracle: str = "none") -> Certificate:
    """chi|P1 in Sigma^1, chi_K != 0 and chi(s) = 0 give chi in Sigma^1(P1 *_K (K x|_f <s>))."""
    mt = mapping_torus_structure(P2, stable, kernel_oracle)
    _check_automorphism(mt, inverse)
    K_gens = mt.monodromy.source
    P1 = cert1.group
    _check_union(P, P1, P2, K_gens)
    pt = _point(P, chi)
    c = _check_character(P, pt)
    if cert1.claim != IN_SIGMA:
        raise RuleInapplicable("premise must claim Sigma^1 membership")
    if c.value(stable) != 0:
        raise RuleInapplicable("chi does not vanish on the stable letter")
    if _restrict_point(pt, K_gens) is None:
        raise RuleInapplicable("chi vanishes on K")
    if cert1.point != _restrict_point(pt, P1.generators):
        raise RuleInapplicable("premise does not concern the restriction of chi")
    return _issue(P, pt, IN_SIGMA, "LemmaHNNStable", [cert1],
                  payload={"stable": stable, "amalgamated": list(K_gens)})


@dataclass(frozen=True)
class MonicVerdict:
    verdict: str  # certified | inconclusive
    certificate: Optional[Certificate]
    reason: str = ""

    @property
    def certified(self) -> bool:
        return self.verdict == "certified"


def monic_alexander_certificate(P: Presentation, chi, max_minors: int = 20000) -> MonicVerdict:
    """Sufficient condition from the Fox Jacobian specialised along chi.

    Delete the column of the first generator with chi != 0; certify when a
    maximal square minor has top coefficient +-1.
    """
    pt = _point(P, chi)
    _check_character(P, pt)
    vals = list(pt.direction)
    if not P.relators:
        return MonicVerdict("inconclusive", None, "no relators")
    delete = next(i for i, v in enumerate(vals) if v)
    matrix = fox_matrix([P.letters(r) for r in P.relators], vals)
    if len(matrix) < len(vals) - 1:
        return MonicVerdict("inconclusive", None, "fewer relators than columns")
    found = find_monic_minor(matrix, delete, max_minors)
    if found is None:
        return MonicVerdict("inconclusive", None, "no maximal minor with unit top coefficient")
    found["deleted_generator"] = P.generators[delete]
    cert = _issue(P, pt, IN_SIGMA, "MonicAlexander", payload=found)
    return MonicVerdict("certified", cert)


def fibers_algebraically(cert_plus: Certificate, cert_minus: Certificate) -> bool:
    """Both [chi] and [-chi] in Sigma^1 means ker chi is finitely generated."""
    for c in (cert_plus, cert_minus):
        if not c.conclusive:
            raise NotConclusive("ball evidence cannot establish an algebraic fibration")
        if c.claim != IN_SIGMA:
            raise RuleInapplicable("both certificates must claim Sigma^1 membership")
    if not same_group(cert_plus.group, cert_minus.group):
        raise RuleInapplicable("certificates concern different groups")
    if cert_minus.point != -cert_plus.point:
        raise RuleInapplicable("certificates are not for opposite sphere points")
    return True
