"""Word-problem oracles.

Every presentation carries an explicit oracle tag; there is no silent
fallback.  An oracle works on signed letter codes (see ``_pykernels``)
and offers

* ``is_trivial(letters)``
* ``bucket(letters)`` -- a hashable invariant of the group element;
  when ``exact`` is true it is a complete normal form
* ``equal(u, v)`` -- decided equality of two elements

``SplitExtensionOracle`` is built from extension data rather than from a
tag, since it needs the monodromy.
"""

from __future__ import annotations

from itertools import combinations

from grouptool import kernels
from grouptool.errors import DehnPreconditionFailed, OracleUnavailable

ORACLE_TAGS = ("free", "dehn", "abelian", "none")


def _inverse(letters):
    return [-x for x in reversed(letters)]


class WordOracle:
    tag = "none"
    exact = False

    def __init__(self, ngens):
        self.ngens = ngens

    def is_trivial(self, letters) -> bool:
        raise NotImplementedError

    def bucket(self, letters):
        return tuple(kernels.exponent_sums(letters, self.ngens))

    def equal(self, u, v) -> bool:
        return self.is_trivial(list(u) + _inverse(v))


class FreeOracle(WordOracle):
    tag = "free"
    exact = True

    def is_trivial(self, letters):
        return not kernels.free_reduce(letters)

    def bucket(self, letters):
        return tuple(kernels.free_reduce(letters))

    def equal(self, u, v):
        return self.bucket(u) == self.bucket(v)


class AbelianOracle(WordOracle):
    """Free abelian groups presented by pairwise generator commutators."""

    tag = "abelian"
    exact = True

    def is_trivial(self, letters):
        return not any(kernels.exponent_sums(letters, self.ngens))

    def equal(self, u, v):
        return self.bucket(u) == self.bucket(v)


def _cyclic_reduce(letters):
    w = kernels.free_reduce(letters)
    while len(w) >= 2 and w[0] == -w[-1]:
        w = w[1:-1]
    return w


def max_piece_length(relator_letters) -> int:
    """Longest common prefix of two distinct cyclic permutations of r^(+-1)."""
    r = list(relator_letters)
    L = len(r)
    cyc = []
    for word in (r, _inverse(r)):
        for o in range(L):
            cyc.append(tuple(word[o:] + word[:o]))
    best = 0
    for u, v in combinations(cyc, 2):
        k = 0
        while k < L and u[k] == v[k]:
            k += 1
        best = max(best, k)
    return best


class DehnOracle(WordOracle):
    """Dehn's algorithm for one-relator C'(1/6) presentations."""

    tag = "dehn"

    def __init__(self, ngens, relator_letters):
        super().__init__(ngens)
        r = list(relator_letters)
        if r != _cyclic_reduce(r):
            raise DehnPreconditionFailed("relator is not cyclically reduced")
        piece = max_piece_length(r)
        if 6 * piece >= len(r):
            raise DehnPreconditionFailed(
                f"C'(1/6) fails: piece of length {piece} in relator of length {len(r)}")
        self.relator = tuple(r)
        self.cycles = [tuple(r), tuple(_inverse(r))]
        self.max_piece = piece

    def reduce(self, letters):
        return kernels.dehn_reduce(letters, self.cycles)

    def is_trivial(self, letters):
        return not self.reduce(letters)


class SplitExtensionOracle(WordOracle):
    """Word problem in K x| Gamma with trivial tails.

    An element is written ``q k`` (quotient word then kernel word); the
    normal form is unique because the quotient lifts form a section.
    Kernel generators are letters ``1..nk``, quotient generators
    ``nk+1..nk+nq``.
    """

    tag = "split-extension"

    def __init__(self, kernel_oracle, quotient_oracle, forward, backward):
        nk, nq = kernel_oracle.ngens, quotient_oracle.ngens
        super().__init__(nk + nq)
        self.kernel = kernel_oracle
        self.quotient = quotient_oracle
        self.nk = nk
        # forward[i][j] / backward[i][j]: letter list of f_i(k_j), f_i^-1(k_j)
        self.forward = forward
        self.backward = backward
        self.exact = kernel_oracle.exact and quotient_oracle.exact

    @staticmethod
    def _apply(table, letters):
        out = []
        for x in letters:
            if x > 0:
                out.extend(table[x - 1])
            else:
                out.extend(_inverse(table[-x - 1]))
        return out

    def split(self, letters):
        nk = self.nk
        q: list = []
        k: list = []
        for x in letters:
            a = abs(x)
            if a <= nk:
                k.append(x)
                continue
            i = a - nk - 1
            # q k x = q x f_x^-1(k);  q k x^-1 = q x^-1 f_x(k)
            table = self.backward[i] if x > 0 else self.forward[i]
            k = kernels.free_reduce(self._apply(table, k))
            q.append(i + 1 if x > 0 else -(i + 1))
        return kernels.free_reduce(q), kernels.free_reduce(k)

    def is_trivial(self, letters):
        q, k = self.split(letters)
        return self.quotient.is_trivial(q) and self.kernel.is_trivial(k)

    def bucket(self, letters):
        q, k = self.split(letters)
        return self.quotient.bucket(q), self.kernel.bucket(k)

    def equal(self, u, v):
        q1, k1 = self.split(u)
        q2, k2 = self.split(v)
        return self.quotient.equal(q1, q2) and self.kernel.equal(k1, k2)


def _is_pairwise_commutator_presentation(ngens, relators_letters) -> bool:
    pairs = set()
    for r in relators_letters:
        r = _cyclic_reduce(r)
        if len(r) != 4:
            return False
        a, b, c, d = r
        # some cyclic rotation must read x y x^-1 y^-1
        if not (c == -a and d == -b and abs(a) != abs(b)):
            return False
        pairs.add(frozenset((abs(a), abs(b))))
    need = {frozenset((i, j)) for i in range(1, ngens + 1) for j in range(i + 1, ngens + 1)}
    return need <= pairs


def make_oracle(tag, ngens, relators_letters) -> WordOracle:
    """Build and precondition-check the oracle named by ``tag``."""
    if tag == "free":
        if relators_letters:
            raise OracleUnavailable("the free oracle needs a presentation without relators")
        return FreeOracle(ngens)
    if tag == "abelian":
        if not _is_pairwise_commutator_presentation(ngens, relators_letters):
            raise OracleUnavailable(
                "the abelian oracle needs relators [x, y] for every generator pair")
        return AbelianOracle(ngens)
    if tag == "dehn":
        if len(relators_letters) != 1:
            raise DehnPreconditionFailed("Dehn oracle requires exactly one relator")
        return DehnOracle(ngens, relators_letters[0])
    if tag == "none":
        raise OracleUnavailable("presentation declares no word-problem oracle")
    raise OracleUnavailable(f"unknown oracle tag {tag!r}")
