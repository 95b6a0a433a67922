"""Exact integer and rational linear algebra.

Everything here works over Python ints and ``fractions.Fraction``; no
floating point is used.  The Smith normal form pivots on the entry of
smallest absolute value to keep intermediate entries small.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from grouptool.errors import ParseError


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    entries: tuple  # row-major, length rows * cols

    def __post_init__(self):
        entries = tuple(int(x) for x in self.entries)
        if self.rows < 0 or self.cols < 0 or len(entries) != self.rows * self.cols:
            raise ValueError(
                f"{len(entries)} entries do not fill a {self.rows}x{self.cols} matrix")
        object.__setattr__(self, "entries", entries)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int = None) -> "IntMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise ValueError("ragged rows")
        return cls(len(rows), cols, tuple(x for r in rows for x in r))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls.from_rows([[int(i == j) for j in range(n)] for i in range(n)], n)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, (0,) * (rows * cols))

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> list:
        return list(self.entries[i * self.cols:(i + 1) * self.cols])

    def tolist(self) -> list:
        return [self.row(i) for i in range(self.rows)]

    def column(self, j: int) -> list:
        return [self.entries[i * self.cols + j] for i in range(self.rows)]

    def transpose(self) -> "IntMatrix":
        return IntMatrix.from_rows([self.column(j) for j in range(self.cols)], self.rows)

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        a, b = self.tolist(), other.tolist()
        out = [[sum(a[i][k] * b[k][j] for k in range(self.cols)) for j in range(other.cols)]
               for i in range(self.rows)]
        return IntMatrix.from_rows(out, other.cols)

    def is_diagonal(self) -> bool:
        return all(self[i, j] == 0 for i in range(self.rows) for j in range(self.cols) if i != j)

    def diagonal(self) -> list:
        return [self[i, i] for i in range(min(self.rows, self.cols))]

    def __str__(self):
        return "\n".join(" ".join(str(x) for x in r) for r in self.tolist())


@dataclass(frozen=True)
class SNFResult:
    U: IntMatrix
    D: IntMatrix
    V: IntMatrix

    @property
    def invariants(self) -> list:
        return [d for d in self.D.diagonal() if d]

    @property
    def rank(self) -> int:
        return len(self.invariants)


def determinant(m: IntMatrix) -> int:
    """Bareiss fraction-free determinant."""
    if m.rows != m.cols:
        raise ValueError("determinant of a non-square matrix")
    n = m.rows
    if n == 0:
        return 1
    a = m.tolist()
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def _row_op(mat, dst, src, q):
    # row dst -= q * row src
    rd, rs = mat[dst], mat[src]
    for j, x in enumerate(rs):
        if x:
            rd[j] -= q * x


def _col_op(mat, dst, src, q):
    # col dst -= q * col src
    for r in mat:
        x = r[src]
        if x:
            r[dst] -= q * x


def smith_normal_form(m: IntMatrix) -> SNFResult:
    """Return U, D, V with U @ m @ V == D, U and V unimodular, d1 | d2 | ..."""
    R, C = m.rows, m.cols
    a = m.tolist()
    U = [[int(i == j) for j in range(R)] for i in range(R)]
    V = [[int(i == j) for j in range(C)] for i in range(C)]

    def swap_rows(i, j):
        if i != j:
            a[i], a[j] = a[j], a[i]
            U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        if i != j:
            for r in a:
                r[i], r[j] = r[j], r[i]
            for r in V:
                r[i], r[j] = r[j], r[i]

    t = 0
    while t < min(R, C):
        # smallest nonzero pivot in the trailing block
        best = None
        for i in range(t, R):
            row = a[i]
            for j in range(t, C):
                x = row[j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            p = a[t][t]
            dirty = False
            for i in range(t + 1, R):
                if a[i][t]:
                    q = a[i][t] // p
                    _row_op(a, i, t, q)
                    _row_op(U, i, t, q)
                    if a[i][t]:
                        dirty = True
            for j in range(t + 1, C):
                if a[t][j]:
                    q = a[t][j] // p
                    _col_op(a, j, t, q)
                    _col_op(V, j, t, q)
                    if a[t][j]:
                        dirty = True
            if dirty:
                # move the smallest remainder in row/column t to the pivot
                best = (abs(p), t, t)
                for i in range(t + 1, R):
                    if a[i][t] and abs(a[i][t]) < best[0]:
                        best = (abs(a[i][t]), i, t)
                for j in range(t + 1, C):
                    if a[t][j] and abs(a[t][j]) < best[0]:
                        best = (abs(a[t][j]), t, j)
                swap_rows(t, best[1])
                swap_cols(t, best[2])
                continue
            # divisibility: the pivot must divide the trailing block
            bad = None
            for i in range(t + 1, R):
                for j in range(t + 1, C):
                    if a[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            _row_op(a, t, bad, -1)
            _row_op(U, t, bad, -1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    return SNFResult(IntMatrix.from_rows(U, R), IntMatrix.from_rows(a, C), IntMatrix.from_rows(V, C))


def hermite_normal_form(rows: Sequence[Sequence[int]]) -> list:
    """Row-style HNF of the lattice spanned by ``rows`` (zero rows dropped).

    Pivots are positive and entries above each pivot lie in [0, pivot).
    """
    a = [list(r) for r in rows if any(r)]
    if not a:
        return []
    ncols = len(a[0])
    out = []
    r = 0
    for c in range(ncols):
        # gcd-combine column c among rows r..end
        while True:
            nz = [i for i in range(r, len(a)) if a[i][c]]
            if not nz:
                break
            piv = min(nz, key=lambda i: abs(a[i][c]))
            a[r], a[piv] = a[piv], a[r]
            done = True
            for i in range(r + 1, len(a)):
                if a[i][c]:
                    q = a[i][c] // a[r][c]
                    _row_op(a, i, r, q)
                    if a[i][c]:
                        done = False
            if done:
                break
        if r < len(a) and a[r][c]:
            if a[r][c] < 0:
                a[r] = [-x for x in a[r]]
            p = a[r][c]
            for i in range(r):
                q = a[i][c] // p
                if q:
                    _row_op(a, i, r, q)
            r += 1
            if r == len(a):
                break
    out = [row for row in a[:r]]
    return out


def rank(m: IntMatrix) -> int:
    """Rank by fraction-free elimination; independent of the SNF code path."""
    a = m.tolist()
    R, C = m.rows, m.cols
    rk = 0
    for c in range(C):
        piv = next((i for i in range(rk, R) if a[i][c]), None)
        if piv is None:
            continue
        a[rk], a[piv] = a[piv], a[rk]
        p = a[rk][c]
        for i in range(rk + 1, R):
            x = a[i][c]
            if x:
                a[i] = [p * y - x * z for y, z in zip(a[i], a[rk])]
                g = 0
                for y in a[i]:
                    g = gcd(g, y)
                if g > 1:
                    a[i] = [y // g for y in a[i]]
        rk += 1
        if rk == R:
            break
    return rk


def sparse_rank(rows: Iterable[dict]) -> int:
    """Rank over Q of sparse integer rows given as {column: value} dicts."""
    pivots: dict = {}  # column -> reduced row with that leading column
    rk = 0
    for row in rows:
        row = {k: v for k, v in row.items() if v}
        while row:
            c = min(row)
            prow = pivots.get(c)
            if prow is None:
                g = 0
                for v in row.values():
                    g = gcd(g, v)
                if g > 1:
                    row = {k: v // g for k, v in row.items()}
                pivots[c] = row
                rk += 1
                break
            p, x = prow[c], row[c]
            new = {k: v * p for k, v in row.items()}
            for k, v in prow.items():
                new[k] = new.get(k, 0) - x * v
            row = {k: v for k, v in new.items() if v}
            g = 0
            for v in row.values():
                g = gcd(g, v)
            if g > 1:
                row = {k: v // g for k, v in row.items()}
    return rk


def primitive(vec: Sequence) -> tuple:
    """Clear denominators, divide by the gcd, keep the sign."""
    fr = [Fraction(x) for x in vec]
    den = 1
    for x in fr:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in fr]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        raise ValueError("zero vector has no primitive representative")
    return tuple(x // g for x in ints)


def integer_kernel_basis(m: IntMatrix) -> list:
    """HNF basis of the lattice {v in Z^cols : m v = 0}."""
    snf = smith_normal_form(m)
    r = snf.rank
    V = snf.V
    basis = [[V[i, j] for i in range(V.rows)] for j in range(r, V.cols)]
    return hermite_normal_form(basis)


def rational_kernel_basis(m: IntMatrix) -> list:
    """Basis of the rational null space, as integer-primitive Hermite-reduced vectors."""
    return [tuple(Fraction(x) for x in v) for v in integer_kernel_basis(m)]


def cokernel_invariants(m: IntMatrix) -> tuple:
    """(free rank, torsion coefficients > 1) of Z^rows / m Z^cols."""
    snf = smith_normal_form(m)
    inv = snf.invariants
    return m.rows - len(inv), [d for d in inv if d > 1]


def solve_rational(rows: Sequence[Sequence], rhs: Sequence) -> list:
    """Return x with rows @ x == rhs over Q, or None when inconsistent."""
    n = len(rows[0]) if rows else 0
    a = [[Fraction(x) for x in r] + [Fraction(b)] for r, b in zip(rows, rhs)]
    piv_cols = []
    rk = 0
    for c in range(n):
        piv = next((i for i in range(rk, len(a)) if a[i][c]), None)
        if piv is None:
            continue
        a[rk], a[piv] = a[piv], a[rk]
        p = a[rk][c]
        a[rk] = [x / p for x in a[rk]]
        for i in range(len(a)):
            if i != rk and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[rk])]
        piv_cols.append(c)
        rk += 1
    for i in range(rk, len(a)):
        if a[i][n]:
            return None
    x = [Fraction(0)] * n
    for i, c in enumerate(piv_cols):
        x[c] = a[i][n]
    return x


def rational_rank(vectors: Sequence[Sequence]) -> int:
    """Rank over Q of a list of rational vectors."""
    if not vectors:
        return 0
    dens = []
    for v in vectors:
        d = 1
        for x in v:
            x = Fraction(x)
            d = d * x.denominator // gcd(d, x.denominator)
        dens.append(d)
    ints = [[int(Fraction(x) * d) for x in v] for v, d in zip(vectors, dens)]
    return rank(IntMatrix.from_rows(ints, len(ints[0])))


def parse_matrix(text: str) -> IntMatrix:
    """Parse ``rows cols`` followed by row-major integers."""
    toks = text.split()
    try:
        R, C = int(toks[0]), int(toks[1])
        vals = [int(t) for t in toks[2:]]
    except (IndexError, ValueError):
        raise ParseError("matrix text must be 'rows cols' followed by integers") from None
    if R < 0 or C < 0 or len(vals) != R * C:
        raise ParseError(f"expected {R * C} entries, got {len(vals)}")
    return IntMatrix(R, C, tuple(vals))
