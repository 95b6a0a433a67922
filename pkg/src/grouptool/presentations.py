"""Finitely presented groups, characters and adjusted presentations.

The order of ``Presentation.generators`` is the indexing contract for
relator matrices, character vectors and JSON output.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Mapping, Optional, Sequence

from grouptool import kernels
from grouptool.errors import (
    OracleUnavailable,
    RadiusTooSmall,
    UnknownGenerator,
)
from grouptool.linalg import (
    IntMatrix,
    cokernel_invariants,
    integer_kernel_basis,
    primitive,
    rank,
    smith_normal_form,
    sparse_rank,
)
from grouptool.oracles import ORACLE_TAGS, WordOracle, make_oracle
from grouptool.words import Hom, Word, apply_hom, check_alphabet, exponent_vector


@dataclass(frozen=True)
class Presentation:
    name: str
    generators: tuple
    relators: tuple = ()
    oracle: str = "none"

    def __post_init__(self):
        gens = check_alphabet(self.generators)
        if not gens:
            raise ValueError("a presentation needs at least one generator")
        object.__setattr__(self, "generators", gens)
        rels = tuple(self.relators)
        for r in rels:
            if not isinstance(r, Word):
                raise TypeError(f"relator {r!r} is not a Word")
            if not r:
                raise ValueError("relators must be nonempty reduced words")
            r.check_alphabet(gens)
        object.__setattr__(self, "relators", rels)
        if self.oracle not in ORACLE_TAGS:
            raise OracleUnavailable(f"unknown oracle tag {self.oracle!r}")
        if self.oracle != "none":
            self.word_oracle  # precondition check at load

    @cached_property
    def index(self) -> dict:
        return {g: i for i, g in enumerate(self.generators)}

    @cached_property
    def word_oracle(self) -> WordOracle:
        return make_oracle(self.oracle, len(self.generators),
                           [r.letters(self.index) for r in self.relators])

    def letters(self, w: Word) -> list:
        return w.letters(self.index)

    def word(self, letters) -> Word:
        return Word.from_letters(letters, self.generators)

    def with_oracle(self, oracle: str) -> "Presentation":
        return Presentation(self.name, self.generators, self.relators, oracle)

    def renamed(self, name: str) -> "Presentation":
        return Presentation(name, self.generators, self.relators, self.oracle)

    def __str__(self):
        rels = ", ".join(str(r) for r in self.relators)
        return f"{self.name} = < {' '.join(self.generators)} | {rels} >"


def word_is_trivial(P: Presentation, w: Word, oracle=None) -> bool:
    """Decide w == 1 in P with the named oracle (defaults to P's own tag).

    ``oracle`` may also be a ready ``WordOracle`` instance.
    """
    if isinstance(oracle, WordOracle):
        return oracle.is_trivial(P.letters(w))
    tag = P.oracle if oracle is None else oracle
    if tag == P.oracle:
        orc = P.word_oracle if tag != "none" else make_oracle("none", 0, [])
    else:
        orc = make_oracle(tag, len(P.generators), [P.letters(r) for r in P.relators])
    return orc.is_trivial(P.letters(w))


# characters -----------------------------------------------------------------


@dataclass(frozen=True)
class Character:
    """Rational values on an ordered generator list."""

    generators: tuple
    values: tuple

    def __post_init__(self):
        vals = tuple(Fraction(v) for v in self.values)
        if len(vals) != len(self.generators):
            raise ValueError("one value per generator required")
        object.__setattr__(self, "generators", tuple(self.generators))
        object.__setattr__(self, "values", vals)

    @classmethod
    def on(cls, P: Presentation, values) -> "Character":
        if isinstance(values, Mapping):
            extra = set(values) - set(P.generators)
            if extra:
                raise UnknownGenerator(sorted(extra)[0], P.generators)
            values = [values.get(g, 0) for g in P.generators]
        chi = cls(P.generators, values)
        bad = chi.violated_relators(P)
        if bad:
            raise ValueError(f"not a character of {P.name}: nonzero on relator {bad[0]}")
        return chi

    @classmethod
    def zero(cls, generators) -> "Character":
        return cls(tuple(generators), (0,) * len(generators))

    def violated_relators(self, P: Presentation) -> list:
        return [r for r in P.relators if self(r) != 0]

    def is_character_of(self, P: Presentation) -> bool:
        return self.generators == P.generators and not self.violated_relators(P)

    def value(self, symbol: str) -> Fraction:
        try:
            return self.values[self.generators.index(symbol)]
        except ValueError:
            raise UnknownGenerator(symbol, self.generators) from None

    def __call__(self, w: Word) -> Fraction:
        table = dict(zip(self.generators, self.values))
        total = Fraction(0)
        for s, e in w.syllables:
            try:
                total += e * table[s]
            except KeyError:
                raise UnknownGenerator(s, self.generators) from None
        return total

    def as_dict(self) -> dict:
        return dict(zip(self.generators, self.values))

    def restrict(self, symbols) -> "Character":
        table = self.as_dict()
        symbols = tuple(symbols)
        for s in symbols:
            if s not in table:
                raise UnknownGenerator(s, self.generators)
        return Character(symbols, tuple(table[s] for s in symbols))

    def is_zero(self) -> bool:
        return not any(self.values)

    def scale(self, q) -> "Character":
        q = Fraction(q)
        return Character(self.generators, tuple(q * v for v in self.values))

    def __neg__(self):
        return self.scale(-1)

    def __add__(self, other: "Character") -> "Character":
        if other.generators != self.generators:
            raise ValueError("characters on different generator lists")
        return Character(self.generators, tuple(a + b for a, b in zip(self.values, other.values)))

    def __sub__(self, other):
        return self + (-other)

    def is_integral(self) -> bool:
        return all(v.denominator == 1 for v in self.values)

    def sphere_point(self) -> "SpherePoint":
        return SpherePoint.from_vector(self.generators, self.values)

    def __str__(self):
        return ",".join(f"{g}={v}" for g, v in zip(self.generators, self.values))


@dataclass(frozen=True)
class SpherePoint:
    """Canonical primitive integral representative of a ray R+ * chi."""

    generators: tuple
    direction: tuple

    def __post_init__(self):
        d = tuple(int(x) for x in self.direction)
        if len(d) != len(self.generators):
            raise ValueError("one coordinate per generator required")
        if not any(d):
            raise ValueError("the zero character is not on the sphere")
        if primitive(d) != d:
            raise ValueError(f"direction {d} is not primitive")
        object.__setattr__(self, "generators", tuple(self.generators))
        object.__setattr__(self, "direction", d)

    @classmethod
    def from_vector(cls, generators, values) -> "SpherePoint":
        return cls(tuple(generators), primitive(values))

    def character(self) -> Character:
        return Character(self.generators, self.direction)

    def __neg__(self):
        return SpherePoint(self.generators, tuple(-x for x in self.direction))

    def restrict(self, symbols) -> Optional["SpherePoint"]:
        chi = self.character().restrict(symbols)
        return None if chi.is_zero() else chi.sphere_point()

    def same_ray(self, chi: Character) -> bool:
        if chi.generators != self.generators or chi.is_zero():
            return False
        return primitive(chi.values) == self.direction

    def __str__(self):
        return ",".join(f"{g}={v}" for g, v in zip(self.generators, self.direction))


# abelianization -------------------------------------------------------------


def abelianized_relator_matrix(P: Presentation) -> IntMatrix:
    """Exponent-sum matrix, relators x generators."""
    rows = [exponent_vector(r, P.generators) for r in P.relators]
    return IntMatrix.from_rows(rows, len(P.generators))


def betti_number(P: Presentation) -> int:
    M = abelianized_relator_matrix(P)
    return len(P.generators) - rank(M)


def abelian_invariants(P: Presentation) -> tuple:
    """(free rank, torsion) of H_1(P; Z)."""
    return cokernel_invariants(abelianized_relator_matrix(P).transpose())


def character_lattice_basis(P: Presentation) -> list:
    """Hermite-reduced integral basis of Hom(P, Z) as Characters."""
    M = abelianized_relator_matrix(P)
    return [Character(P.generators, v) for v in integer_kernel_basis(M)]


def _ab_coordinates(P: Presentation):
    """(V, k): free coordinates of a row exponent vector x are (x V)[k:]."""
    snf = smith_normal_form(abelianized_relator_matrix(P))
    return snf.V, snf.rank


def unimodular_inverse(M: IntMatrix) -> IntMatrix:
    n = M.rows
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(M.tolist())]
    for c in range(n):
        piv = next(i for i in range(c, n) if a[i][c])
        a[c], a[piv] = a[piv], a[c]
        p = a[c][c]
        a[c] = [x / p for x in a[c]]
        for i in range(n):
            if i != c and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    inv = [[x for x in row[n:]] for row in a]
    if any(x.denominator != 1 for row in inv for x in row):
        raise ValueError("matrix is not unimodular")
    return IntMatrix.from_rows([[int(x) for x in row] for row in inv], n)


def ab_images(P: Presentation) -> list:
    """Image of each generator in H_1/Tor = Z^b1, in SNF-derived coordinates."""
    V, k = _ab_coordinates(P)
    return [V.row(i)[k:] for i in range(len(P.generators))]


# adjusted presentations -----------------------------------------------------


@dataclass(frozen=True)
class AdjustedPresentation:
    """A presentation whose first ``m`` generators map to a basis of H_1/Tor
    and whose remaining generators lie in the kernel of that map."""

    base: Presentation
    m: int
    original: Presentation
    to_original: Hom  # base generators -> words in the original
    from_original: Hom  # original generators -> words in the base

    @property
    def r(self) -> int:
        return len(self.base.generators) - self.m

    @property
    def basis_generators(self) -> tuple:
        return self.base.generators[:self.m]

    @property
    def kernel_generators(self) -> tuple:
        return self.base.generators[self.m:]

    @classmethod
    def trivial(cls, P: Presentation, m: int) -> "AdjustedPresentation":
        ident = Hom.identity(P.generators)
        return cls(P, m, P, ident, ident)


def adjusted_violations(P: Presentation, m: int) -> list:
    """Reasons why the first ``m`` generators of P do not form an adjusted set."""
    out = []
    b1 = betti_number(P)
    if m != b1:
        out.append(f"m = {m} but b1 = {b1}")
        return out
    imgs = ab_images(P)
    head = IntMatrix.from_rows(imgs[:m], m)
    snf = smith_normal_form(head)
    if snf.D != IntMatrix.identity(m):
        out.append("images of the first m generators do not form a basis of H1/Tor")
    for g, v in zip(P.generators[m:], imgs[m:]):
        if any(v):
            out.append(f"generator {g} has nonzero image in H1/Tor")
    return out


def is_adjusted(P: Presentation, m: int) -> bool:
    return not adjusted_violations(P, m)


def _fresh(prefix, count, reserved):
    names = []
    for i in range(1, count + 1):
        name = f"{prefix}{i}"
        while name in reserved:
            name = "_" + name
        names.append(name)
    return names


def adjust_presentation(P: Presentation, reserved=(), force: bool = False) -> AdjustedPresentation:
    """Return a presentation of the same group adjusted to ab.

    Already-adjusted inputs (first b1 generators a basis, rest in the
    kernel) come back unchanged unless ``force`` is set.  Otherwise new generators h_1..h_m, g_1..g_r
    are introduced from the unimodular SNF column transform V: h_i realises
    the i-th free coordinate, w_j = prod_i h_i^(V[j, k+i]) matches ab(y_j) and
    g_j = y_j w_j^-1.
    """
    m = betti_number(P)
    if not force and is_adjusted(P, m):
        return AdjustedPresentation.trivial(P, m)
    V, k = _ab_coordinates(P)
    Vinv = unimodular_inverse(V)
    orig = P.generators
    r0 = len(orig)
    reserved = set(reserved) | set(orig)
    hs = _fresh("h", m, reserved)
    gs = _fresh("g", r0, reserved | set(hs))
    new_gens = tuple(hs + gs)

    h_words = []  # h_i in the original generators
    for i in range(m):
        row = Vinv.row(k + i)
        h_words.append(Word(tuple((orig[l], row[l]) for l in range(r0))))
    w_words = []  # w_j in the new h generators
    for j in range(r0):
        row = V.row(j)
        w_words.append(Word(tuple((hs[i], row[k + i]) for i in range(m))))

    backward = {orig[j]: Word.gen(gs[j]) * w_words[j] for j in range(r0)}
    from_original = Hom.from_dict(orig, new_gens, backward)
    h_sub = Hom.from_dict(hs, orig, dict(zip(hs, h_words)))
    forward = {hs[i]: h_words[i] for i in range(m)}
    for j in range(r0):
        forward[gs[j]] = Word.gen(orig[j]) * apply_hom(h_sub, w_words[j]).inverse()
    to_original = Hom(new_gens, orig, tuple(forward[g] for g in new_gens),
                      from_original.images)
    from_original = Hom(orig, new_gens, from_original.images, to_original.images)

    rels = []
    for rel in P.relators:
        w = apply_hom(from_original, rel)
        if w:
            rels.append(w)
    for i in range(m):
        w = Word.gen(hs[i]).inverse() * apply_hom(from_original, h_words[i])
        if w:
            rels.append(w)
    base = Presentation(P.name, new_gens, tuple(rels), "none")
    return AdjustedPresentation(base, m, P, to_original, from_original)


# Reidemeister-Schreier evidence ---------------------------------------------


@dataclass(frozen=True)
class SchreierEvidence:
    """Truncated Reidemeister-Schreier data for ker(h) inside a coset ball.

    ``abelian_rank_lower_bound`` is the free rank of the abelianized partial
    presentation (Schreier generators whose edge stays in the ball, modulo
    rewritten relator conjugates that stay in the ball).  It is evidence
    only; nothing here certifies infinite rank.
    """

    radius: int
    cosets: int
    subgroup_generators: tuple
    abelian_rank_lower_bound: int
    relations_used: int
    label: str = field(default="evidence")


def schreier_ball(P: Presentation, h: Hom, radius: int) -> SchreierEvidence:
    if radius < 1:
        raise RadiusTooSmall("radius must be at least 1")
    if h.source != P.generators:
        raise ValueError("hom source must be the presentation's generator list")
    tindex = {g: i for i, g in enumerate(h.target)}
    img = {}
    for i, w in enumerate(h.images):
        lt = w.letters(tindex)
        img[i + 1] = lt
        img[-(i + 1)] = [-x for x in reversed(lt)]

    def move(c, letter):
        return tuple(kernels.free_reduce(list(c) + img[letter]))

    ngen = len(P.generators)
    letters_order = []
    for i in range(1, ngen + 1):
        letters_order += [i, -i]
    reps = {(): []}
    queue = deque([()])
    while queue:
        c = queue.popleft()
        for x in letters_order:
            d = move(c, x)
            if len(d) > radius or d in reps:
                continue
            reps[d] = reps[c] + [x]
            queue.append(d)

    gen_index = {}
    gens_words = []
    for c in sorted(reps, key=lambda t: (len(t), t)):
        for i in range(1, ngen + 1):
            d = move(c, i)
            if d not in reps:
                continue
            word = kernels.free_reduce(reps[c] + [i] + [-y for y in reversed(reps[d])])
            if word:
                gen_index[(c, i)] = len(gens_words)
                gens_words.append(P.word(word))

    rows = []
    used = 0
    rel_letters = [P.letters(r) for r in P.relators]
    for c in reps:
        for rl in rel_letters:
            row = {}
            cur = c
            ok = True
            for x in rl:
                if x > 0:
                    nxt = move(cur, x)
                    if nxt not in reps:
                        ok = False
                        break
                    gi = gen_index.get((cur, x))
                    if gi is not None:
                        row[gi] = row.get(gi, 0) + 1
                    cur = nxt
                else:
                    nxt = move(cur, x)
                    if nxt not in reps:
                        ok = False
                        break
                    gi = gen_index.get((nxt, -x))
                    if gi is not None:
                        row[gi] = row.get(gi, 0) - 1
                    cur = nxt
            if ok:
                used += 1
                rows.append(row)
    rk = sparse_rank(rows)
    return SchreierEvidence(radius, len(reps), tuple(gens_words), len(gens_words) - rk, used)
