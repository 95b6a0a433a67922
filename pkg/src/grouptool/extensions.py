"""Group extensions 1 -> K -> G -> Gamma -> 1 given by monodromy and tails.

Conventions: the lift of a quotient generator ``x`` acts on K by
``x k x^-1 = f_x(k)``, and the lift of a quotient relator ``r_j`` equals
the kernel word ``w_j`` (its tail).  Conjugation by a word ``x1 x2 ... xn``
is therefore ``f_x1 o f_x2 o ... o f_xn``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Optional

from grouptool.errors import InvalidExtension, OracleUnavailable
from grouptool.linalg import IntMatrix, cokernel_invariants, determinant, smith_normal_form
from grouptool.oracles import SplitExtensionOracle, make_oracle
from grouptool.presentations import (
    AdjustedPresentation,
    Character,
    Presentation,
    adjust_presentation,
    adjusted_violations,
    betti_number,
    unimodular_inverse,
)
from grouptool.words import Hom, Word, apply_hom, compose, exponent_vector


@dataclass(frozen=True)
class ExtensionData:
    kernel: Presentation
    quotient: AdjustedPresentation
    monodromy: tuple  # one Hom K -> K per quotient generator
    tails: tuple  # one kernel Word per quotient relator
    surface: Optional[tuple] = None  # (genusF, genusB)
    name: str = "G"

    def __post_init__(self):
        object.__setattr__(self, "monodromy", tuple(self.monodromy))
        object.__setattr__(self, "tails", tuple(self.tails))
        Q = self.quotient.base
        if len(self.monodromy) != len(Q.generators):
            raise InvalidExtension(
                f"{len(self.monodromy)} monodromy maps for {len(Q.generators)} quotient generators")
        if len(self.tails) != len(Q.relators):
            raise InvalidExtension(
                f"{len(self.tails)} tails for {len(Q.relators)} quotient relators")
        clash = set(self.kernel.generators) & set(Q.generators)
        if clash:
            raise InvalidExtension(f"kernel and quotient share generators {sorted(clash)}")
        kg = self.kernel.generators
        for x, f in zip(Q.generators, self.monodromy):
            if f.source != kg or f.target != kg:
                raise InvalidExtension(f"monodromy of {x} is not a map K -> K")
            if f.inverse_images is None:
                raise InvalidExtension(f"monodromy of {x} has no inverse block")
        for j, w in enumerate(self.tails, 1):
            try:
                w.check_alphabet(kg)
            except KeyError as exc:
                raise InvalidExtension(f"tail {j} is not a kernel word: {exc}") from None

    @property
    def quotient_generators(self) -> tuple:
        return self.quotient.base.generators

    def monodromy_of(self, x: str) -> Hom:
        return self.monodromy[self.quotient_generators.index(x)]

    @property
    def m(self) -> int:
        return self.quotient.m

    @property
    def r(self) -> int:
        return self.quotient.r


def composite_automorphism(E: ExtensionData, w: Word) -> Hom:
    """Conjugation by the lift of the quotient word ``w``, as a map K -> K."""
    out = Hom.identity(E.kernel.generators)
    for sym, e in w.syllables:
        f = E.monodromy_of(sym)
        step = f if e > 0 else f.inverse()
        for _ in range(abs(e)):
            out = compose(out, step)
    return out


def from_unadjusted(kernel: Presentation, quotient: Presentation, monodromy: Mapping[str, Hom],
                    tails, surface=None, name="G", force_adjust=False) -> ExtensionData:
    """Adjust ``quotient`` and transport monodromy and tails along the dictionaries."""
    A = adjust_presentation(quotient, reserved=kernel.generators, force=force_adjust)
    if A.base is quotient:
        mono = tuple(monodromy[x] for x in quotient.generators)
        return ExtensionData(kernel, A, mono, tuple(tails), surface, name)
    old = ExtensionData(kernel, AdjustedPresentation.trivial(quotient, A.m),
                        tuple(monodromy[x] for x in quotient.generators), tuple(tails))
    mono = tuple(composite_automorphism(old, A.to_original.image(h)) for h in A.base.generators)
    # rewritten old relators keep their tails; the defining relators h_i^-1 h_i(...) get trivial ones
    new_tails = [t for r, t in zip(quotient.relators, tails) if apply_hom(A.from_original, r)]
    new_tails += [Word()] * (len(A.base.relators) - len(new_tails))
    return ExtensionData(kernel, A, mono, tuple(new_tails), surface, name)


# validation -----------------------------------------------------------------


class _KernelTriviality:
    def __init__(self, K: Presentation):
        self.K = K
        self._oracle = None

    def __call__(self, w: Word) -> bool:
        if not w:
            return True
        if self.K.oracle == "none":
            raise OracleUnavailable(
                f"deciding {w} = 1 in {self.K.name} needs a word-problem oracle")
        return self.K.word_oracle.is_trivial(self.K.letters(w))


def validate_extension(E: ExtensionData) -> list:
    """Violations of the extension invariants; empty iff all consistency checks pass."""
    out = []
    K = E.kernel
    trivial = _KernelTriviality(K)
    kg = K.generators
    for x, f in zip(E.quotient_generators, E.monodromy):
        finv = f.inverse()
        for rel in K.relators:
            if not trivial(apply_hom(f, rel)):
                out.append(f"monodromy of {x} does not preserve kernel relator {rel}")
            if not trivial(apply_hom(finv, rel)):
                out.append(f"inverse monodromy of {x} does not preserve kernel relator {rel}")
        for k in kg:
            kw = Word.gen(k)
            if not trivial(apply_hom(f, apply_hom(finv, kw)) * kw.inverse()) or \
                    not trivial(apply_hom(finv, apply_hom(f, kw)) * kw.inverse()):
                out.append(f"inverse block of {x} is not inverse to its monodromy on {k}")
                break
    for j, (rel, w) in enumerate(zip(E.quotient.base.relators, E.tails), 1):
        phi = composite_automorphism(E, rel)
        for k in kg:
            lhs = phi.image(k)
            rhs = w * Word.gen(k) * w.inverse()
            if not trivial(lhs * rhs.inverse()):
                out.append(f"relator r{j} ({rel}): composite monodromy differs from "
                           f"conjugation by tail {w} on {k}")
                break
    bad = adjusted_violations(E.quotient.base, E.quotient.m)
    out.extend(f"quotient not adjusted: {b}" for b in bad)
    return out


def require_valid(E: ExtensionData) -> None:
    bad = validate_extension(E)
    if bad:
        raise InvalidExtension("; ".join(bad))


# assembly -------------------------------------------------------------------


def _conjugation_relators(kernel: Presentation, letter: str, f: Hom) -> list:
    s = Word.gen(letter)
    return [s * Word.gen(k) * s.inverse() * f.image(k).inverse() for k in kernel.generators]


def assemble_total_presentation(E: ExtensionData, validate: bool = True) -> Presentation:
    if validate:
        require_valid(E)
    K = E.kernel
    gens = K.generators + E.quotient_generators
    rels = list(K.relators)
    for x, f in zip(E.quotient_generators, E.monodromy):
        rels += _conjugation_relators(K, x, f)
    for rel, w in zip(E.quotient.base.relators, E.tails):
        rels.append(rel * w.inverse())
    return Presentation(E.name, gens, tuple(rels), "none")


def total_group_oracle(E: ExtensionData):
    """Word oracle for G when every tail is trivial (G = K x| Gamma)."""
    if any(E.tails):
        raise OracleUnavailable("total-group oracle needs a split extension (trivial tails)")
    K, Q = E.kernel, E.quotient.base
    kor = K.word_oracle if K.oracle != "none" else make_oracle("none", 0, [])
    qor = Q.word_oracle if Q.oracle != "none" else make_oracle("none", 0, [])
    kidx = K.index
    fwd = [[f.image(k).letters(kidx) for k in K.generators] for f in E.monodromy]
    bwd = [[f.inverse().image(k).letters(kidx) for k in K.generators] for f in E.monodromy]
    return SplitExtensionOracle(kor, qor, fwd, bwd)


@dataclass(frozen=True)
class PiAssembly:
    """K x| F_n with stable letters reusing the quotient-generator symbols."""

    pi: Presentation
    stable_letters: tuple
    alphas: tuple
    projection_to_G: Hom
    n: int
    m: int
    r: int
    extension: ExtensionData = field(repr=False, compare=False)

    @property
    def kernel_generators(self) -> tuple:
        return self.extension.kernel.generators

    def factor(self, i: int) -> Presentation:
        """The mapping torus Pi_i = K x|_{f_i} Z (0-based ``i``)."""
        E = self.extension
        s = self.stable_letters[i]
        rels = list(E.kernel.relators) + _conjugation_relators(E.kernel, s, E.monodromy[i])
        return Presentation(f"Pi_{i + 1}", E.kernel.generators + (s,), tuple(rels), "none")


def build_pi(E: ExtensionData, validate: bool = True) -> PiAssembly:
    if validate:
        require_valid(E)
    K = E.kernel
    stable = E.quotient_generators
    gens = K.generators + stable
    rels = list(K.relators)
    for s, f in zip(stable, E.monodromy):
        rels += _conjugation_relators(K, s, f)
    pi = Presentation(f"Pi({E.name})", gens, tuple(rels), "none")
    alphas = tuple(Character(gens, [int(g == s) for g in gens]) for s in stable)
    proj = Hom.identity(gens)
    return PiAssembly(pi, stable, alphas, proj, len(stable), E.m, E.r, E)


# homology -------------------------------------------------------------------


@dataclass(frozen=True)
class HomologyAction:
    """Action of each quotient generator on H_1(K)/Tor (row j = image of basis j)."""

    generators: tuple
    matrices: tuple
    basis: tuple  # exponent vectors of kernel words realising the free basis

    def matrix(self, x: str) -> IntMatrix:
        return self.matrices[self.generators.index(x)]


def _ab_map(K: Presentation, f: Hom) -> IntMatrix:
    return IntMatrix.from_rows([exponent_vector(f.image(k), K.generators) for k in K.generators],
                               len(K.generators))


def monodromy_on_homology(E: ExtensionData) -> HomologyAction:
    K = E.kernel
    snf = smith_normal_form(IntMatrix.from_rows(
        [exponent_vector(r, K.generators) for r in K.relators], len(K.generators)))
    V, k = snf.V, snf.rank
    Vinv = unimodular_inverse(V)
    n = len(K.generators)
    free = range(k, n)
    mats = []
    for f in E.monodromy:
        full = Vinv @ _ab_map(K, f) @ V
        mats.append(IntMatrix.from_rows([[full[i, j] for j in free] for i in free], n - k))
    basis = tuple(tuple(Vinv.row(i)) for i in free)
    return HomologyAction(E.quotient_generators, tuple(mats), basis)


def coinvariant_matrix(E: ExtensionData) -> IntMatrix:
    """Rows generating the relations of H_1(K)_Gamma inside Z^{kernel generators}."""
    K = E.kernel
    n = len(K.generators)
    rows = [exponent_vector(r, K.generators) for r in K.relators]
    for f in E.monodromy:
        F = _ab_map(K, f)
        for i in range(n):
            row = F.row(i)
            row[i] -= 1
            rows.append(row)
    return IntMatrix.from_rows(rows, n)


def coinvariants(E: ExtensionData) -> tuple:
    """(free rank, torsion) of H_1(K; Z)_Gamma."""
    return cokernel_invariants(coinvariant_matrix(E).transpose())


def action_is_unimodular(H: HomologyAction) -> bool:
    return all(abs(determinant(A)) == 1 for A in H.matrices)


@dataclass(frozen=True)
class ExtensionReport:
    b1K: int
    b1Gamma: int
    b1G: int
    coinvariantRank: int
    coinvariantTorsion: tuple
    albaneseDimension: int
    eulerCharacteristic: Optional[int] = None
    noncoherenceFlag: Optional[bool] = None

    def as_dict(self) -> dict:
        return {
            "b1K": self.b1K,
            "b1Gamma": self.b1Gamma,
            "b1G": self.b1G,
            "coinvariantRank": self.coinvariantRank,
            "coinvariantTorsion": list(self.coinvariantTorsion),
            "albaneseDimension": self.albaneseDimension,
            "eulerCharacteristic": self.eulerCharacteristic,
            "noncoherenceFlag": self.noncoherenceFlag,
        }


def extension_report(E: ExtensionData, validate: bool = True) -> ExtensionReport:
    G = assemble_total_presentation(E, validate=validate)
    b1G = betti_number(G)
    b1Q = betti_number(E.quotient.base)
    rank, torsion = coinvariants(E)
    alb = 1 if b1G == b1Q else 2
    euler = flag = None
    if E.surface is not None:
        gF, gB = E.surface
        euler = (2 * gF - 2) * (2 * gB - 2)
        flag = alb == 2 and gF > 1 and gB > 1
    return ExtensionReport(betti_number(E.kernel), b1Q, b1G, rank, tuple(torsion), alb, euler, flag)
