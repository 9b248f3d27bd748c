"""Integer and rational matrices as plain nested lists.

Integer matrices are lists of rows of Python ints.  The rational helpers work
over ``Fraction`` and are used for cone coordinates and vertex solving.
"""

from fractions import Fraction
from math import gcd


def _copy(A):
    return [list(row) for row in A]


def identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def transpose(A, cols=None):
    if not A:
        return [[] for _ in range(cols or 0)]
    return [list(col) for col in zip(*A)]


def matmul(A, B):
    if not A:
        return []
    inner = len(B)
    cols = len(B[0]) if B else 0
    return [[sum(A[i][k] * B[k][j] for k in range(inner)) for j in range(cols)]
            for i in range(len(A))]


def hermite_normal_form(A):
    """Row-style Hermite normal form.

    Returns ``(H, U)`` with ``U`` unimodular and ``U @ A == H``.  ``H`` is in
    row echelon form with positive pivots, zero rows last, and every entry
    above a pivot reduced into ``[0, pivot)``.
    """
    if not A:
        raise ValueError("empty matrix")
    m, n = len(A), len(A[0])
    H = _copy(A)
    U = identity(m)
    r = 0
    for c in range(n):
        if r == m:
            break
        while True:
            nonzero = [i for i in range(r, m) if H[i][c]]
            if not nonzero:
                break
            p = min(nonzero, key=lambda i: (abs(H[i][c]), i))
            if p != r:
                H[r], H[p] = H[p], H[r]
                U[r], U[p] = U[p], U[r]
            done = True
            for i in range(r + 1, m):
                if H[i][c]:
                    q = H[i][c] // H[r][c]
                    H[i] = [a - q * b for a, b in zip(H[i], H[r])]
                    U[i] = [a - q * b for a, b in zip(U[i], U[r])]
                    if H[i][c]:
                        done = False
            if done:
                break
        if not H[r][c]:
            continue
        if H[r][c] < 0:
            H[r] = [-a for a in H[r]]
            U[r] = [-a for a in U[r]]
        piv = H[r][c]
        for i in range(r):
            q = H[i][c] // piv
            if q:
                H[i] = [a - q * b for a, b in zip(H[i], H[r])]
                U[i] = [a - q * b for a, b in zip(U[i], U[r])]
        r += 1
    return H, U


def integer_kernel(A, cols=None):
    """Lattice basis of ``{x in Z^cols : A x = 0}``, canonicalised by HNF."""
    n = len(A[0]) if A else cols
    if n is None:
        raise ValueError("column count unknown for an empty matrix")
    if not A:
        return identity(n)
    H, U = hermite_normal_form(transpose(A))
    basis = [U[i] for i in range(n) if not any(H[i])]
    if not basis:
        return []
    Hb, _ = hermite_normal_form(basis)
    return [row for row in Hb if any(row)]


def determinant(A):
    """Exact determinant of a square integer or rational matrix (Bareiss-free)."""
    n = len(A)
    M = [[Fraction(x) for x in row] for row in A]
    det = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if M[i][c]), None)
        if p is None:
            return 0
        if p != c:
            M[c], M[p] = M[p], M[c]
            det = -det
        det *= M[c][c]
        for i in range(c + 1, n):
            f = M[i][c] / M[c][c]
            if f:
                M[i] = [a - f * b for a, b in zip(M[i], M[c])]
    return int(det) if det.denominator == 1 else det


def rref(rows):
    """Reduced row echelon form over Q; returns ``(R, pivots)`` without zero rows."""
    M = [[Fraction(x) for x in row] for row in rows]
    if not M:
        return [], []
    m, n = len(M), len(M[0])
    pivots = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, m) if M[i][c]), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        lead = M[r][c]
        M[r] = [a / lead for a in M[r]]
        for i in range(m):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return M[:r], pivots


def rank(rows):
    return len(rref(rows)[1])


def rational_nullspace(rows, cols=None):
    """Basis of ``{x : rows @ x = 0}`` over Q."""
    n = len(rows[0]) if rows else cols
    R, pivots = rref(rows)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * n
        x[f] = Fraction(1)
        for i, p in enumerate(pivots):
            x[p] = -R[i][f]
        basis.append(x)
    return basis


def solve_in_span(generators, target):
    """Coefficients ``c`` with ``sum c_i g_i = target`` or ``None``.

    ``generators`` must be linearly independent; the solution is then unique.
    """
    k = len(generators)
    if k == 0:
        return [] if not any(target) else None
    n = len(target)
    # augmented system: columns are generators
    aug = [[Fraction(generators[j][i]) for j in range(k)] + [Fraction(target[i])]
           for i in range(n)]
    R, pivots = rref(aug)
    if k in pivots:
        return None
    coeffs = [Fraction(0)] * k
    for i, p in enumerate(pivots):
        coeffs[p] = R[i][k]
    return coeffs


def primitive(v):
    g = 0
    for x in v:
        g = gcd(g, int(x))
    if g == 0:
        return list(v)
    return [int(x) // g for x in v]


def to_integer_vector(v):
    """Scale a rational vector to the primitive integer vector on its ray."""
    den = 1
    for x in v:
        den = den * Fraction(x).denominator // gcd(den, Fraction(x).denominator)
    return primitive([int(Fraction(x) * den) for x in v])
