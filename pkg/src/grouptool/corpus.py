"""Built-in groups: surface groups, a mapping torus, its fiber-sum bundle group
G and the map G -> F_2, with checkable declared facts.

Generator names: kernel surface a1 b1 a2 b2, base surface s t x y, free
quotient u v.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, Optional

from grouptool.certificates import (
    IN_COMPLEMENT,
    IN_SIGMA,
    axiom_mapping_torus,
    corpus_axiom,
    rule_amalgam,
    rule_hnn_stable,
    rule_product,
    rule_pullback,
)
from grouptool.errors import InvalidExtension
from grouptool.extensions import (
    ExtensionData,
    assemble_total_presentation,
    coinvariants,
    extension_report,
    validate_extension,
)
from grouptool.linalg import primitive, rational_rank
from grouptool.presentations import (
    AdjustedPresentation,
    Character,
    Presentation,
    betti_number,
    character_lattice_basis,
)
from grouptool.words import Hom, Word, apply_hom, commutator, parse_word

PROVENANCE = ("PUBLISHED", "DERIVED", "TRIVIAL", "AXIOM")


def surface_group(genus: int, names=None, name: Optional[str] = None) -> Presentation:
    if genus < 1:
        raise ValueError("genus must be at least 1")
    if names is None:
        names = [n for i in range(1, genus + 1) for n in (f"a{i}", f"b{i}")]
    names = tuple(names)
    if len(names) != 2 * genus:
        raise ValueError(f"need {2 * genus} generator names")
    rel = Word()
    for i in range(genus):
        rel = rel * commutator(Word.gen(names[2 * i]), Word.gen(names[2 * i + 1]))
    oracle = "dehn" if genus >= 2 else "abelian"
    return Presentation(name or f"S{genus}", names, (rel,), oracle)


def free_group(names, name: Optional[str] = None) -> Presentation:
    names = tuple(names)
    return Presentation(name or f"F{len(names)}", names, (), "free")


def free_abelian(names, name: Optional[str] = None) -> Presentation:
    names = tuple(names)
    rels = tuple(commutator(Word.gen(x), Word.gen(y))
                 for i, x in enumerate(names) for y in names[i + 1:])
    return Presentation(name or f"Z{len(names)}", names, rels, "abelian")


def z2() -> Presentation:
    return free_abelian(("a", "b"), "Z2")


def f2() -> Presentation:
    return free_group(("a", "b"), "F2")


def phi(genus: int = 2) -> Hom:
    """a_i -> a_i b_i, b_i -> b_i, with inverse a_i -> a_i b_i^-1."""
    gens = tuple(n for i in range(1, genus + 1) for n in (f"a{i}", f"b{i}"))
    fwd, inv = {}, {}
    for i in range(1, genus + 1):
        a, b = Word.gen(f"a{i}"), Word.gen(f"b{i}")
        fwd[f"a{i}"], fwd[f"b{i}"] = a * b, b
        inv[f"a{i}"], inv[f"b{i}"] = a * b.inverse(), b
    return Hom.from_dict(gens, gens, fwd, inv)


def _cyclic(name: str, gen: str) -> AdjustedPresentation:
    Q = Presentation(name, (gen,), (), "free")
    return AdjustedPresentation.trivial(Q, 1)


def mapping_torus_extension(K: Presentation, f: Hom, stable: str = "t",
                            name: Optional[str] = None) -> ExtensionData:
    """K x|_f Z as an extension over the infinite cyclic group <stable>."""
    return ExtensionData(K, _cyclic("Z", stable), (f,), (), None, name or f"{K.name}x|Z")


def mapping_torus(K: Presentation, f: Hom, stable: str = "t",
                  name: Optional[str] = None) -> Presentation:
    E = mapping_torus_extension(K, f, stable, name)
    bad = validate_extension(E)
    if bad:
        raise InvalidExtension("; ".join(bad))
    return assemble_total_presentation(E, validate=False)


def mapping_torus_N() -> Presentation:
    return mapping_torus(surface_group(2), phi(2), "t", "N")


def proposition_bundle() -> tuple:
    """(ExtensionData, G) for the genus-2 bundle over the genus-2 surface."""
    K = surface_group(2, name="K")
    Q = surface_group(2, ("s", "t", "x", "y"), "Gamma")
    ident = Hom.identity(K.generators)
    mono = (ident, phi(2), ident, ident)
    E = ExtensionData(K, AdjustedPresentation.trivial(Q, 4), mono, (Word(),), (2, 2), "G")
    return E, assemble_total_presentation(E)


PUBLISHED_G_RELATORS = (
    "t a1 t^-1 b1^-1 a1^-1", "t b1 t^-1 b1^-1", "t a2 t^-1 b2^-1 a2^-1", "t b2 t^-1 b2^-1",
    "s a1 s^-1 a1^-1", "s b1 s^-1 b1^-1", "s a2 s^-1 a2^-1", "s b2 s^-1 b2^-1",
    "x a1 x^-1 a1^-1", "x b1 x^-1 b1^-1", "x a2 x^-1 a2^-1", "x b2 x^-1 b2^-1",
    "y a1 y^-1 a1^-1", "y b1 y^-1 b1^-1", "y a2 y^-1 a2^-1", "y b2 y^-1 b2^-1",
    "a1 b1 a1^-1 b1^-1 a2 b2 a2^-1 b2^-1",
    "s t s^-1 t^-1 x y x^-1 y^-1",
)

G_GENERATORS = ("a1", "b1", "a2", "b2", "s", "t", "x", "y")


def published_G() -> Presentation:
    """The bundle group written out relator by relator, including the relators
    making x and y commute with the fiber generators."""
    rels = tuple(parse_word(r, G_GENERATORS) for r in PUBLISHED_G_RELATORS)
    return Presentation("G", G_GENERATORS, rels, "none")


def f2_quotient_map() -> Hom:
    """g: G -> F_2 = <u, v>, a1 -> u, a2 -> v, everything else -> 1."""
    images = {g: Word() for g in G_GENERATORS}
    images["a1"], images["a2"] = Word.gen("u"), Word.gen("v")
    return Hom.from_dict(G_GENERATORS, ("u", "v"), images)


def base_projection() -> Hom:
    """f: G -> Gamma killing the fiber generators."""
    images = {g: Word() for g in G_GENERATORS}
    for g in ("s", "t", "x", "y"):
        images[g] = Word.gen(g)
    return Hom.from_dict(G_GENERATORS, ("s", "t", "x", "y"), images)


def relator_images(G: Presentation, h: Hom) -> list:
    return [(r, apply_hom(h, r)) for r in G.relators]


def pullback_lattice(h: Hom, target: Presentation) -> list:
    return [tuple(chi(w) for w in h.images) for chi in character_lattice_basis(target)]


@dataclass(frozen=True)
class DirectSumReport:
    holds: bool
    rank_f: int
    rank_g: int
    rank_total: int
    b1: int
    intersection: int

    def as_dict(self) -> dict:
        return dict(self.__dict__)


def direct_sum_check(G: Presentation = None, f: Hom = None, g: Hom = None,
                     Gamma: Presentation = None, F: Presentation = None) -> DirectSumReport:
    """Pullbacks from Gamma and from F_2 are independent and span H^1(G; Q)."""
    if G is None:
        G = proposition_bundle()[1]
    f = f or base_projection()
    g = g or f2_quotient_map()
    Gamma = Gamma or surface_group(2, ("s", "t", "x", "y"), "Gamma")
    F = F or free_group(("u", "v"), "F2")
    pf = pullback_lattice(f, Gamma)
    pg = pullback_lattice(g, F)
    for v in pf + pg:
        if Character(G.generators, v).violated_relators(G):
            raise ValueError("a pulled-back vector is not a character of G")
    rf, rg = rational_rank(pf), rational_rank(pg)
    rt = rational_rank(pf + pg)
    b1 = betti_number(G)
    inter = rf + rg - rt
    return DirectSumReport(inter == 0 and rt == b1, rf, rg, rt, b1, inter)


def in_span(vectors, v) -> bool:
    return rational_rank(list(vectors) + [tuple(v)]) == rational_rank(list(vectors))


@dataclass(frozen=True)
class ExceptionalSphere:
    source: str
    dimension: int
    codimension: int
    basis: tuple
    sample_certificates: tuple

    def as_dict(self) -> dict:
        return {
            "source": self.source,
            "dimension": self.dimension,
            "codimension": self.codimension,
            "basis": [list(map(int, v)) for v in self.basis],
            "certificates": [c.as_dict() for c in self.sample_certificates],
        }


def exceptional_spheres_report(b=None) -> dict:
    """The two exceptional sub-spheres f*S(Gamma) and g*S(F_2) inside S(G)."""
    E, G = proposition_bundle()
    check = direct_sum_check(G)
    if not check.holds:
        raise ValueError("direct sum decomposition failed")
    f, g = base_projection(), f2_quotient_map()
    Gamma = E.quotient.base
    F = free_group(("u", "v"), "F2")
    spheres = []
    for label, hom, target, fg in (("f", f, Gamma, True), ("g", g, F, False)):
        basis = pullback_lattice(hom, target)
        certs = []
        for chi in character_lattice_basis(target):
            ax = corpus_axiom(target, chi)
            certs.append(rule_pullback(ax, hom, G, target, "up", kernel_finitely_generated=fg))
        dim = rational_rank(basis)
        spheres.append(ExceptionalSphere(label, dim, check.b1 - dim, tuple(basis), tuple(certs)))
    inter = rational_rank(spheres[0].basis) + rational_rank(spheres[1].basis) - \
        rational_rank(list(spheres[0].basis) + list(spheres[1].basis))
    out = {"spheres": spheres, "intersection": inter, "disjoint": inter == 0}
    if b is not None:
        out["b_in_f_sphere"] = in_span(spheres[0].basis, b)
        out["b_in_g_sphere"] = in_span(spheres[1].basis, b)
    return out


def f2xf2() -> Presentation:
    A = free_group(("a", "b"), "F2a")
    B = free_group(("c", "d"), "F2b")
    rels = tuple(commutator(Word.gen(x), Word.gen(y)) for x in A.generators for y in B.generators)
    return Presentation("F2xF2", A.generators + B.generators, rels, "none")


def f2xf2_factors() -> tuple:
    return free_group(("a", "b"), "F2a"), free_group(("c", "d"), "F2b")


def product_verdict(P: Presentation, chi) -> str:
    """Verdict on F2 x F2 from the product formula and the free-group axiom."""
    A, B = f2xf2_factors()
    pt = Character(P.generators, chi).sphere_point()
    ra, rb = pt.restrict(A.generators), pt.restrict(B.generators)
    if ra is not None and rb is not None:
        return rule_product(P, A, B, pt).claim
    factor, rest = (A, ra) if rb is None else (B, rb)
    return rule_product(P, A, B, pt, corpus_axiom(factor, rest)).claim


# corpus entries -------------------------------------------------------------


@dataclass(frozen=True)
class Fact:
    tag: str
    value: object
    provenance: str
    verifier: Optional[Callable] = field(default=None, compare=False, repr=False)

    def check(self):
        if self.verifier is None:
            return None
        return self.verifier()


@dataclass(frozen=True)
class CorpusEntry:
    key: str
    presentation: Presentation
    extension: Optional[ExtensionData] = None
    facts: tuple = ()
    decompositions: tuple = ()

    def verify(self) -> list:
        """(tag, expected, actual, ok) per fact; axioms report actual None, ok True."""
        out = []
        for fact in self.facts:
            actual = fact.check()
            ok = fact.verifier is None or actual == fact.value
            out.append((fact.tag, fact.value, actual, ok))
        return out


def _entry_z2():
    P = z2()
    return CorpusEntry("z2", P, facts=(
        Fact("b1", 2, "TRIVIAL", lambda: betti_number(P)),
        Fact("sigma1", "whole sphere", "AXIOM"),
    ))


def _entry_f2():
    P = f2()
    return CorpusEntry("f2", P, facts=(
        Fact("b1", 2, "TRIVIAL", lambda: betti_number(P)),
        Fact("sigma1", "empty", "AXIOM"),
    ))


def f2xf2_entry() -> CorpusEntry:
    P = f2xf2()
    return CorpusEntry("f2xf2", P, facts=(
        Fact("b1", 4, "TRIVIAL", lambda: betti_number(P)),
        Fact("verdict(1,0,0,0)", IN_COMPLEMENT, "PUBLISHED", lambda: product_verdict(P, (1, 0, 0, 0))),
        Fact("verdict(1,0,1,0)", IN_SIGMA, "PUBLISHED", lambda: product_verdict(P, (1, 0, 1, 0))),
        Fact("verdict(0,1,-1,2)", IN_SIGMA, "TRIVIAL", lambda: product_verdict(P, (0, 1, -1, 2))),
    ), decompositions=(
        {"kernel": ("a", "b"), "stable": ("c", "d")},
        {"kernel": ("c", "d"), "stable": ("a", "b")},
    ))


def _entry_surface(genus: int):
    P = surface_group(genus)
    return CorpusEntry(f"surface:{genus}", P, facts=(
        Fact("b1", 2 * genus, "TRIVIAL", lambda: betti_number(P)),
    ))


def _entry_mapping_torus():
    P = mapping_torus_N()
    return CorpusEntry("mapping-torus-N", P, mapping_torus_extension(surface_group(2), phi(2)),
                       facts=(
        Fact("b1", 3, "DERIVED", lambda: betti_number(P)),
        Fact("phi preserves the surface relator freely", True, "PUBLISHED",
             lambda: not (apply_hom(phi(2), surface_group(2).relators[0]) *
                          surface_group(2).relators[0].inverse())),
    ))


def _entry_bundle():
    E, G = proposition_bundle()
    F = free_group(("u", "v"), "F2")
    return CorpusEntry("prop-bundle", G, E, facts=(
        Fact("b1(G)", 6, "PUBLISHED", lambda: betti_number(G)),
        Fact("b1(Gamma)", 4, "DERIVED", lambda: betti_number(E.quotient.base)),
        Fact("coinvariant rank", 2, "DERIVED", lambda: coinvariants(E)[0]),
        Fact("albanese dimension", 2, "PUBLISHED", lambda: extension_report(E).albaneseDimension),
        Fact("euler characteristic", 4, "PUBLISHED", lambda: extension_report(E).eulerCharacteristic),
        Fact("extension valid", [], "DERIVED", lambda: validate_extension(E)),
        Fact("matches the amalgamated presentation", True, "PUBLISHED",
             lambda: set(G.relators) == set(published_G().relators)),
        Fact("g kills every relator", True, "PUBLISHED",
             lambda: all(not img for _, img in relator_images(G, f2_quotient_map()))),
        Fact("direct sum", True, "PUBLISHED", lambda: direct_sum_check(G).holds),
        Fact("S(F2) wholly exceptional", "axiom", "AXIOM"),
        Fact("S(Gamma) wholly exceptional", "axiom", "AXIOM"),
    ))


ENTRY_NAMES = ("z2", "f2", "f2xf2", "surface:G", "mapping-torus-N", "prop-bundle")


def corpus_entry(name: str) -> CorpusEntry:
    if name == "z2":
        return _entry_z2()
    if name == "f2":
        return _entry_f2()
    if name == "f2xf2":
        return f2xf2_entry()
    if name.startswith("surface:"):
        try:
            genus = int(name.split(":", 1)[1])
        except ValueError:
            raise KeyError(f"surface genus must be an integer in {name!r}") from None
        return _entry_surface(genus)
    if name == "mapping-torus-N":
        return _entry_mapping_torus()
    if name == "prop-bundle":
        return _entry_bundle()
    raise KeyError(f"unknown corpus entry {name!r}; known: {', '.join(ENTRY_NAMES)}")


def f2xf2_rules_certificate(P: Presentation, chi):
    """Derive [chi] in Sigma^1(F2 x F2) from the amalgam and HNN lemmas, or return None.

    Both splittings (F2 x Z) *_{F2} (F2 x Z) are tried, with either free
    factor as the amalgamated subgroup.
    """
    pt = Character(P.generators, chi).sphere_point()
    c = pt.character()
    for dec in f2xf2_entry().decompositions:
        K, (s1, s2) = dec["kernel"], dec["stable"]
        if c.restrict(K).is_zero():
            continue
        pieces = {s: _piece(P, K, s) for s in (s1, s2)}

        def premise(s):
            Q = pieces[s]
            return axiom_mapping_torus(Q, s, chi=Character(Q.generators, [c.value(g) for g in Q.generators]))

        v1, v2 = c.value(s1), c.value(s2)
        if v1 and v2:
            return rule_amalgam(premise(s1), premise(s2), P, K, pt)
        if v1 or v2:
            live, dead = (s1, s2) if v1 else (s2, s1)
            return rule_hnn_stable(premise(live), P, pieces[dead], dead, pt)
    return None


def _piece(P: Presentation, K, s) -> Presentation:
    gens = tuple(g for g in P.generators if g in K or g == s)
    rels = tuple(r for r in P.relators if r.symbols() <= set(gens))
    return Presentation(f"{P.name}|{s}", gens, rels, "none")


def f2xf2_sample_points(count: int = 200, seed: int = 20240917) -> list:
    """Deterministic primitive integer characters on a, b, c, d, some with a zero factor."""
    rng = random.Random(seed)
    out, seen = [], set()
    while len(out) < count:
        v = [rng.randint(-4, 4) for _ in range(4)]
        k = len(out) % 5
        if k == 1:
            v[2:] = [0, 0]
        elif k == 2:
            v[:2] = [0, 0]
        elif k == 3:
            v[rng.randrange(4)] = 0
        if not any(v[:2]) and not any(v[2:]):
            continue
        p = primitive(v)
        if p in seen:
            continue
        seen.add(p)
        out.append(p)
    return out
