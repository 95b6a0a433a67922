"""Construction of an algebraic-fibration class for an extension with b1(G) > b1(Gamma).

Pipeline: pick gamma on G that is nonzero on the kernel, set
beta = sum of the chosen alpha_i + mu * gamma on Pi = K x| F_n, descend to
b on G (same generator symbols) and scale to a primitive vector.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from grouptool.certificates import (
    Certificate,
    axiom_mapping_torus,
    ball_certificate,
    ball_connectivity_evidence,
    fibers_algebraically,
    monic_alexander_certificate,
    rule_amalgam,
    rule_hnn_stable,
    rule_pullback,
)
from grouptool.errors import (
    BallTooLarge,
    HypothesisFailed,
    NotAFibrationCandidate,
    OracleUnavailable,
    RuleInapplicable,
)
from grouptool.extensions import (
    ExtensionData,
    PiAssembly,
    assemble_total_presentation,
    build_pi,
    require_valid,
    total_group_oracle,
)
from grouptool.linalg import rational_rank
from grouptool.presentations import (
    Character,
    Presentation,
    SpherePoint,
    betti_number,
    character_lattice_basis,
)

DEFAULT_MU_SCHEDULE = (Fraction(1), Fraction(1, 2), Fraction(1, 4), Fraction(1, 8))
CERTIFIERS = ("rules", "monic", "ball")
DEFAULT_CERTIFIERS = ("rules", "monic")


def scale_to_primitive(chi) -> SpherePoint:
    if isinstance(chi, Character):
        return chi.sphere_point()
    raise TypeError("expected a Character")


def select_gamma(E: ExtensionData, G: Optional[Presentation] = None) -> Character:
    """First Hermite-basis character of G with nonzero kernel restriction."""
    G = G or assemble_total_presentation(E)
    b1G, b1Q = betti_number(G), betti_number(E.quotient.base)
    if b1G <= b1Q:
        raise HypothesisFailed(f"b1(G) = {b1G} does not exceed b1(Gamma) = {b1Q}")
    for chi in character_lattice_basis(G):
        if not chi.restrict(E.kernel.generators).is_zero():
            return chi
    raise HypothesisFailed("no character of G is nonzero on the kernel")


def assemble_beta(PA: PiAssembly, gamma: Character, mu, alpha_subset=None) -> Character:
    """beta = sum_{i in subset} alpha_i + mu * (gamma pulled back to Pi)."""
    mu = Fraction(mu)
    if mu <= 0:
        raise ValueError("mu must be positive")
    pulled = Character(PA.pi.generators, [gamma(w) for w in PA.projection_to_G.images])
    if pulled.restrict(PA.kernel_generators).is_zero():
        raise NotAFibrationCandidate(
            "gamma vanishes on the kernel; beta would be a sum of the alpha_i")
    subset = range(PA.m) if alpha_subset is None else alpha_subset
    beta = pulled.scale(mu)
    for i in subset:
        if not 0 <= i < PA.m:
            raise ValueError(f"alpha index {i + 1} outside 1..{PA.m}")
        beta = beta + PA.alphas[i]
    return beta


def descend(PA: PiAssembly, beta: Character, G: Presentation) -> Character:
    """b on G with b o (Pi -> G) = beta; the projection is the identity on symbols."""
    b = Character(G.generators, [beta.value(g) for g in G.generators])
    bad = b.violated_relators(G)
    if bad:
        raise NotAFibrationCandidate(f"beta does not descend to G: relator {bad[0]}")
    return b


def non_proportional(PA: PiAssembly, beta: Character, i: int) -> bool:
    """beta restricted to Pi_i is not a multiple of alpha_i."""
    gens = PA.kernel_generators + (PA.stable_letters[i],)
    u = [beta.value(g) for g in gens]
    v = [PA.alphas[i].value(g) for g in gens]
    return rational_rank([u, v]) == 2


# certification --------------------------------------------------------------


def _factor_premise(PA: PiAssembly, i: int, chi: Character, trace: list) -> Certificate:
    E = PA.extension
    Pi_i = PA.factor(i)
    s = PA.stable_letters[i]
    f = E.monodromy[i]
    restricted = Character(Pi_i.generators, [chi.value(g) for g in Pi_i.generators])
    try:
        cert = axiom_mapping_torus(Pi_i, s, inverse=f.inverse(), kernel_oracle=E.kernel.oracle,
                                   chi=restricted)
        trace.append(f"{Pi_i.name}: mapping-torus axiom")
        return cert
    except RuleInapplicable as exc:
        trace.append(f"{Pi_i.name}: axiom inapplicable ({exc})")
    verdict = monic_alexander_certificate(Pi_i, restricted)
    trace.append(f"{Pi_i.name}: monic {verdict.verdict}")
    if verdict.certified:
        return verdict.certificate
    raise RuleInapplicable(f"no premise for {Pi_i.name}: {verdict.reason}")


def _partial_pi(PA: PiAssembly, indices) -> Presentation:
    E = PA.extension
    gens = PA.kernel_generators + tuple(PA.stable_letters[i] for i in indices)
    rels = list(E.kernel.relators)
    for i in indices:
        rels += [r for r in PA.factor(i).relators if r not in E.kernel.relators]
    name = "Pi_{" + ",".join(str(i + 1) for i in indices) + "}"
    return Presentation(name, gens, tuple(rels), "none")


def rules_certificate(PA: PiAssembly, beta: Character, G: Presentation, trace: list):
    """Chain the lemmas over the factors Pi_i, then descend along Pi -> G."""
    E = PA.extension
    K = PA.kernel_generators
    order = sorted(range(PA.n), key=lambda i: beta.value(PA.stable_letters[i]) == 0)
    if beta.value(PA.stable_letters[order[0]]) == 0:
        raise RuleInapplicable("beta vanishes on every stable letter")

    def on(P):
        return Character(P.generators, [beta.value(g) for g in P.generators])

    done = [order[0]]
    cert = _factor_premise(PA, order[0], beta, trace)
    for i in order[1:]:
        s = PA.stable_letters[i]
        whole = PA.pi if len(done) + 1 == PA.n else _partial_pi(PA, done + [i])
        if beta.value(s) != 0:
            other = _factor_premise(PA, i, beta, trace)
            cert = rule_amalgam(cert, other, whole, K, on(whole))
            trace.append(f"{whole.name}: amalgam over K")
        else:
            cert = rule_hnn_stable(cert, whole, PA.factor(i), s, on(whole),
                                   inverse=E.monodromy[i].inverse(),
                                   kernel_oracle=E.kernel.oracle)
            trace.append(f"{whole.name}: HNN with beta({s}) = 0")
        done.append(i)
    return rule_pullback(cert, PA.projection_to_G, PA.pi, G, "down")


@dataclass(frozen=True)
class Attempt:
    mu: Fraction
    b: SpherePoint
    beta: Character
    verdicts: dict  # certifier -> {"+": ..., "-": ...}
    certificates: tuple  # (plus, minus) conclusive certificates or (None, None)
    trace: tuple

    def as_dict(self) -> dict:
        return {
            "mu": str(self.mu),
            "b": list(self.b.direction),
            "verdicts": self.verdicts,
            "trace": list(self.trace),
        }


@dataclass(frozen=True)
class FibrationResult:
    b: SpherePoint
    beta: Character
    gamma: Character
    mu: Fraction
    certificates: tuple  # (plus, minus); None where not certified
    status: str  # certified | evidence-only | constructed-unverified
    attempts: tuple = ()
    pi: Optional[PiAssembly] = field(default=None, repr=False, compare=False)
    G: Optional[Presentation] = field(default=None, repr=False, compare=False)
    gamma_vanishes_on_kernel_lifts: bool = True

    def as_dict(self) -> dict:
        return {
            "b": dict(zip(self.b.generators, self.b.direction)),
            "mu": str(self.mu),
            "gamma": {g: str(v) for g, v in self.gamma.as_dict().items()},
            "beta": {g: str(v) for g, v in self.beta.as_dict().items()},
            "status": self.status,
            "gammaVanishesOnKernelLifts": self.gamma_vanishes_on_kernel_lifts,
            "attempts": [a.as_dict() for a in self.attempts],
        }


def _certify_end(cert_name, G, PA, beta, b_char, sign, radius, oracle, trace):
    """(verdict string, certificate or None) for one end."""
    chi = b_char.scale(sign)
    beta_s = beta.scale(sign)
    if cert_name == "rules":
        try:
            cert = rules_certificate(PA, beta_s, G, trace)
        except RuleInapplicable as exc:
            trace.append(f"rules {'+' if sign > 0 else '-'}: inapplicable ({exc})")
            return "inconclusive", None
        return "certified", cert
    if cert_name == "monic":
        v = monic_alexander_certificate(G, chi)
        return v.verdict, v.certificate
    if cert_name == "ball":
        try:
            ev = ball_connectivity_evidence(G, chi, max(1, radius // 2), radius, oracle=oracle)
        except BallTooLarge as exc:
            trace.append(f"ball {'+' if sign > 0 else '-'}: {exc}")
            return "ball-too-large", None
        except OracleUnavailable as exc:
            trace.append(f"ball {'+' if sign > 0 else '-'}: {exc}")
            return "oracle-unavailable", None
        cert = ball_certificate(G, chi, ev)
        return ("connected" if ev.connected else "not-connected"), cert
    raise ValueError(f"unknown certifier {cert_name!r}")


def fiber(E: ExtensionData, mu_schedule: Sequence = DEFAULT_MU_SCHEDULE,
          certifiers: Sequence[str] = DEFAULT_CERTIFIERS, radius: int = 4,
          gamma: Optional[Character] = None, alpha_subset=None) -> FibrationResult:
    require_valid(E)
    G = assemble_total_presentation(E, validate=False)
    b1G, b1Q = betti_number(G), betti_number(E.quotient.base)
    if b1Q == 0 or b1G <= b1Q:
        raise HypothesisFailed(f"need b1(G) > b1(Gamma) > 0, got {b1G} and {b1Q}")
    for c in certifiers:
        if c not in CERTIFIERS:
            raise ValueError(f"unknown certifier {c!r}")
    if gamma is None:
        gamma = select_gamma(E, G)
    elif gamma.generators != G.generators or gamma.violated_relators(G):
        raise HypothesisFailed("supplied gamma is not a character of G")
    PA = build_pi(E, validate=False)
    lifts_ok = all(gamma.value(x) == 0 for x in E.quotient.kernel_generators)
    oracle = None
    if "ball" in certifiers:
        try:
            oracle = total_group_oracle(E)
        except OracleUnavailable:
            oracle = None
    attempts = []
    for mu in mu_schedule:
        mu = Fraction(mu)
        beta = assemble_beta(PA, gamma, mu, alpha_subset)
        b_char = descend(PA, beta, G)
        b = scale_to_primitive(b_char)
        b_int = b.character()
        # beta rescaled by the same positive factor is the pullback of b
        beta_int = Character(PA.pi.generators, [b_int.value(g) for g in PA.pi.generators])
        trace: list = []
        verdicts: dict = {}
        best = [None, None]
        for name in certifiers:
            verdicts[name] = {}
            for key, sign in (("+", 1), ("-", -1)):
                if name == "ball" and oracle is None:
                    verdicts[name][key] = "oracle-unavailable"
                    continue
                v, cert = _certify_end(name, G, PA, beta_int, b_int, sign, radius, oracle, trace)
                verdicts[name][key] = v
                slot = 0 if sign > 0 else 1
                if cert is not None and cert.conclusive and best[slot] is None:
                    best[slot] = cert
        attempt = Attempt(mu, b, beta_int, verdicts, tuple(best), tuple(trace))
        attempts.append(attempt)
        if best[0] is not None and best[1] is not None:
            fibers_algebraically(best[0], best[1])
            return FibrationResult(b, beta_int, gamma, mu, tuple(best), "certified",
                                   tuple(attempts), PA, G, lifts_ok)
    last = attempts[-1]
    ball = last.verdicts.get("ball", {})
    status = "evidence-only" if ball and all(v == "connected" for v in ball.values()) \
        else "constructed-unverified"
    return FibrationResult(last.b, last.beta, gamma, last.mu, (None, None), status,
                           tuple(attempts), PA, G, lifts_ok)
