"""Fox Jacobians specialised along an integral character, and their minors.

Laurent polynomials in one variable ``t`` are dicts ``{exponent: coefficient}``.
Determinants are taken over Z[t] after shifting each row to nonnegative
degree, with polynomials stored as coefficient lists (lowest degree first).
"""

from __future__ import annotations

from itertools import combinations
from typing import Optional, Sequence

from grouptool.words import GroupRingElement


def specialize(element: GroupRingElement, values: dict) -> dict:
    """Image of a group-ring element under w -> t^chi(w)."""
    out: dict = {}
    for w, c in element.terms.items():
        e = sum(values[s] * k for s, k in w.syllables)
        out[e] = out.get(e, 0) + c
    return {e: c for e, c in out.items() if c}


def fox_row(letters: Sequence[int], chi: Sequence[int]) -> list:
    """Specialised Fox derivatives of one relator with respect to every generator.

    ``letters`` uses the signed codes of ``grouptool.kernels``.
    """
    row = [dict() for _ in chi]
    p = 0
    for x in letters:
        j = abs(x) - 1
        if x > 0:
            row[j][p] = row[j].get(p, 0) + 1
            p += chi[j]
        else:
            p -= chi[j]
            row[j][p] = row[j].get(p, 0) - 1
    return [{e: c for e, c in d.items() if c} for d in row]


def fox_matrix(relator_letters, chi: Sequence[int]) -> list:
    return [fox_row(r, chi) for r in relator_letters]


# polynomial arithmetic on coefficient lists ----------------------------------


def _trim(p):
    while p and p[-1] == 0:
        p.pop()
    return p


def _sub(a, b):
    n = max(len(a), len(b))
    return _trim([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)])


def _mul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def _divexact(a, b):
    """a / b over Z[t]; the division is known to be exact (Bareiss)."""
    a = list(a)
    if not a:
        return []
    q = [0] * (len(a) - len(b) + 1)
    lb = b[-1]
    for i in range(len(q) - 1, -1, -1):
        c = a[i + len(b) - 1]
        if c:
            qi, rem = divmod(c, lb)
            if rem:
                raise ArithmeticError("inexact polynomial division")
            q[i] = qi
            for j, y in enumerate(b):
                a[i + j] -= qi * y
    if any(a):
        raise ArithmeticError("inexact polynomial division")
    return _trim(q)


def laurent_to_poly(entries: Sequence[dict]):
    """Shift a row of Laurent polynomials to Z[t]; returns (shift, polys)."""
    exps = [e for d in entries for e in d]
    shift = min(exps) if exps else 0
    polys = []
    for d in entries:
        if not d:
            polys.append([])
            continue
        top = max(d) - shift
        p = [0] * (top + 1)
        for e, c in d.items():
            p[e - shift] = c
        polys.append(p)
    return shift, polys


def poly_determinant(rows) -> list:
    """Fraction-free (Bareiss) determinant over Z[t]."""
    a = [[list(p) for p in r] for r in rows]
    n = len(a)
    if n == 0:
        return [1]
    prev = [1]
    sign = 1
    for k in range(n - 1):
        piv = next((i for i in range(k, n) if a[i][k]), None)
        if piv is None:
            return []
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = _sub(_mul(a[i][j], a[k][k]), _mul(a[i][k], a[k][j]))
                a[i][j] = _divexact(num, prev)
            a[i][k] = []
        prev = a[k][k]
    det = a[n - 1][n - 1]
    return [sign * c for c in det]


def poly_str(p, var="t") -> str:
    if not p:
        return "0"
    parts = []
    for e in range(len(p) - 1, -1, -1):
        c = p[e]
        if not c:
            continue
        mono = "" if e == 0 else (var if e == 1 else f"{var}^{e}")
        mag = abs(c)
        body = str(mag) if not mono else (mono if mag == 1 else f"{mag}{mono}")
        parts.append(("-" if c < 0 else "+", body))
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for s, b in parts[1:]:
        out += f" {s} {b}"
    return out


def find_monic_minor(matrix, delete_column: int, max_minors: int = 20000) -> Optional[dict]:
    """Search maximal square minors (after deleting one column) for a unit top coefficient.

    Returns a payload dict for the first such minor in lexicographic row
    order, or ``None``.  Only square minors of size (columns - 1) count.
    """
    if not matrix:
        return None
    cols = [j for j in range(len(matrix[0])) if j != delete_column]
    size = len(cols)
    if len(matrix) < size:
        return None
    shifted = [laurent_to_poly([row[j] for j in cols]) for row in matrix]
    examined = 0
    for chosen in combinations(range(len(matrix)), size):
        examined += 1
        if examined > max_minors:
            return None
        det = poly_determinant([shifted[i][1] for i in chosen])
        if det and abs(det[-1]) == 1:
            shift = sum(shifted[i][0] for i in chosen)
            return {
                "rows": list(chosen),
                "deleted_column": delete_column,
                "leading_coefficient": det[-1],
                "minor": poly_str(det),
                "shift": shift,
                "examined": examined,
            }
    return None
