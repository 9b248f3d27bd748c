"""Dense linear algebra over the Novikov field ``Q(T)``."""

from .novikov import ONE, ZERO, NovikovScalar


def _rref(rows, ncols):
    """Reduced row echelon form of a list of scalar rows; drops zero rows."""
    M = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(M)) if M[i][c]), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        inv = M[r][c].inverse()
        M[r] = [a * inv for a in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return [tuple(row) for row in M[:r]], pivots


class ScalarMatrix:
    """Immutable ``rows x cols`` matrix of ``NovikovScalar`` entries."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries, rows=None, cols=None):
        entries = [[NovikovScalar.coerce(x) for x in row] for row in entries]
        self.rows = len(entries) if rows is None else rows
        self.cols = (len(entries[0]) if entries else 0) if cols is None else cols
        if len(entries) != self.rows or any(len(r) != self.cols for r in entries):
            raise ValueError("ragged matrix")
        self.entries = tuple(tuple(r) for r in entries)

    @classmethod
    def identity(cls, n):
        return cls([[ONE if i == j else ZERO for j in range(n)] for i in range(n)], n, n)

    @classmethod
    def zero(cls, rows, cols=None):
        cols = rows if cols is None else cols
        return cls([[ZERO] * cols for _ in range(rows)], rows, cols)

    @classmethod
    def from_columns(cls, columns, rows):
        return cls([[col[i] for col in columns] for i in range(rows)], rows, len(columns))

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def column(self, j):
        return tuple(row[j] for row in self.entries)

    def is_square(self):
        return self.rows == self.cols

    def is_zero(self):
        return not any(x for row in self.entries for x in row)

    def __eq__(self, other):
        if not isinstance(other, ScalarMatrix):
            return NotImplemented
        return (self.rows, self.cols, self.entries) == (other.rows, other.cols, other.entries)

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __add__(self, other):
        return ScalarMatrix([[a + b for a, b in zip(r, s)]
                             for r, s in zip(self.entries, other.entries)],
                            self.rows, self.cols)

    def __sub__(self, other):
        return ScalarMatrix([[a - b for a, b in zip(r, s)]
                             for r, s in zip(self.entries, other.entries)],
                            self.rows, self.cols)

    def scale(self, c):
        c = NovikovScalar.coerce(c)
        return ScalarMatrix([[c * a for a in r] for r in self.entries], self.rows, self.cols)

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        cols = [other.column(j) for j in range(other.cols)]
        out = []
        for r in self.entries:
            row = []
            for col in cols:
                acc = ZERO
                for a, b in zip(r, col):
                    if a and b:
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return ScalarMatrix(out, self.rows, other.cols)

    def apply(self, vec):
        return tuple(sum((a * b for a, b in zip(r, vec) if a and b), ZERO)
                     for r in self.entries)

    def __pow__(self, k):
        if not self.is_square():
            raise ValueError("power of a non-square matrix")
        out = ScalarMatrix.identity(self.rows)
        base = self
        while k:
            if k & 1:
                out = out @ base
            base = base @ base
            k >>= 1
        return out

    def nullspace(self):
        """Kernel as a list of column vectors (unnormalised)."""
        R, pivots = _rref(self.entries, self.cols)
        free = [c for c in range(self.cols) if c not in pivots]
        basis = []
        for f in free:
            x = [ZERO] * self.cols
            x[f] = ONE
            for i, p in enumerate(pivots):
                x[p] = -R[i][f]
            basis.append(tuple(x))
        return basis

    def rank(self):
        return len(_rref(self.entries, self.cols)[1])

    def __str__(self):
        return "\n".join("[" + ", ".join(str(x) for x in r) + "]" for r in self.entries)

    def __repr__(self):
        return f"ScalarMatrix({self.rows}x{self.cols})"


class Subspace:
    """Subspace of ``Q(T)^n`` with its canonical reduced-echelon basis.

    Two subspaces are equal exactly when their bases are equal.
    """

    __slots__ = ("ambient", "basis", "pivots")

    def __init__(self, ambient, vectors=()):
        self.ambient = ambient
        rows = [tuple(NovikovScalar.coerce(x) for x in v) for v in vectors]
        if any(len(v) != ambient for v in rows):
            raise ValueError("vector length differs from ambient dimension")
        basis, pivots = _rref(rows, ambient) if rows else ([], [])
        self.basis = tuple(basis)
        self.pivots = tuple(pivots)

    @classmethod
    def full(cls, n):
        return cls(n, ScalarMatrix.identity(n).entries)

    @property
    def dim(self):
        return len(self.basis)

    def __len__(self):
        return self.dim

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient == other.ambient and self.basis == other.basis

    def __hash__(self):
        return hash((self.ambient, self.basis))

    def contains_vector(self, v):
        return Subspace(self.ambient, self.basis + (tuple(v),)).dim == self.dim

    def __le__(self, other):
        """Containment ``self <= other``."""
        if self.ambient != other.ambient:
            raise ValueError("ambient dimensions differ")
        return Subspace(self.ambient, self.basis + other.basis).dim == other.dim

    def image(self, M):
        return Subspace(M.rows, [M.apply(v) for v in self.basis])

    def __repr__(self):
        return f"Subspace(ambient={self.ambient}, dim={self.dim})"


def kernel_of_power(M, d):
    """``ker(M**d)`` as a :class:`Subspace`."""
    if not M.is_square():
        raise ValueError("matrix must be square")
    if d < 1:
        raise ValueError("power must be at least 1")
    return Subspace(M.rows, (M ** d).nullspace())


def nilpotency_index(M):
    """Smallest ``n <= size`` with ``M**n == 0``, or ``None`` if ``M`` is not nilpotent."""
    if not M.is_square():
        raise ValueError("matrix must be square")
    P = M
    for n in range(1, M.rows + 1):
        if P.is_zero():
            return n
        P = P @ M
    return None
