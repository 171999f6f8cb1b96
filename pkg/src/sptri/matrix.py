"""Small immutable matrices (2x2 and 4x4) over exact or floating scalars.

The block convention for 4x4 matrices is ``[[A, B], [C, D]]`` with 2x2 blocks.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction

from .errors import SingularMatrix
from .linalg import auto_tol
from .scalar import format_scalar, is_zero, to_scalar


class Mat:
    """An immutable square matrix.  Entries are converted with :func:`to_scalar`."""

    __slots__ = ("rows",)

    def __init__(self, rows):
        rows = tuple(tuple(to_scalar(x) for x in r) for r in rows)
        n = len(rows)
        if n == 0 or any(len(r) != n for r in rows):
            raise ValueError("matrix must be square and non-empty")
        object.__setattr__(self, "rows", rows)

    def __setattr__(self, name, value):
        raise AttributeError("Mat is immutable")

    @classmethod
    def identity(cls, n=2):
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, n=2):
        return cls([[0] * n for _ in range(n)])

    @classmethod
    def diag(cls, *entries):
        n = len(entries)
        return cls([[entries[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def from_blocks(cls, a, b, c, d):
        top = [ra + rb for ra, rb in zip(a.rows, b.rows)]
        bottom = [rc + rd for rc, rd in zip(c.rows, d.rows)]
        return cls(top + bottom)

    @property
    def n(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def entries(self):
        for r in self.rows:
            yield from r

    def block(self, i, j):
        """2x2 block ``(i, j)`` of a 4x4 matrix."""
        if self.n != 4:
            raise ValueError("block view needs a 4x4 matrix")
        return Mat([r[2 * j:2 * j + 2] for r in self.rows[2 * i:2 * i + 2]])

    def blocks(self):
        return self.block(0, 0), self.block(0, 1), self.block(1, 0), self.block(1, 1)

    @property
    def is_exact(self) -> bool:
        return all(isinstance(x, Fraction) for x in self.entries())

    @property
    def T(self):
        return Mat(list(zip(*self.rows)))

    def __add__(self, other):
        return Mat([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other):
        return Mat([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __neg__(self):
        return Mat([[-a for a in r] for r in self.rows])

    def __mul__(self, k):
        if isinstance(k, Mat):
            return NotImplemented
        k = to_scalar(k)
        return Mat([[k * a for a in r] for r in self.rows])

    __rmul__ = __mul__

    def __truediv__(self, k):
        k = to_scalar(k)
        return Mat([[a / k for a in r] for r in self.rows])

    def __matmul__(self, other):
        cols = list(zip(*other.rows))
        return Mat([[sum((a * b for a, b in zip(r, c)), Fraction(0)) for c in cols] for r in self.rows])

    def __eq__(self, other):
        return isinstance(other, Mat) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def det(self):
        if self.n == 2:
            (a, b), (c, d) = self.rows
            return a * d - b * c
        # cofactor expansion along the first row; n <= 4 here
        total = Fraction(0)
        for j, a in enumerate(self.rows[0]):
            if is_zero(a):
                continue
            minor = Mat([r[:j] + r[j + 1:] for r in self.rows[1:]])
            total += (-1) ** j * a * minor.det()
        return total

    def trace(self):
        return sum((self.rows[i][i] for i in range(self.n)), Fraction(0))

    def inv(self):
        if self.n == 2:
            (a, b), (c, d) = self.rows
            det = a * d - b * c
            if is_zero(det, 0):
                raise SingularMatrix("determinant is zero")
            return Mat([[d / det, -b / det], [-c / det, a / det]])
        return _gauss_jordan_inverse(self)

    def norm(self) -> float:
        """Max absolute entry."""
        return max(abs(float(x)) for x in self.entries())

    def close(self, other, tol=None) -> bool:
        tol = auto_tol(tol, self, other)
        diff = self - other
        return all(is_zero(x, tol) for x in diff.entries())

    def map(self, fn):
        return Mat([[fn(x) for x in r] for r in self.rows])

    def to_float(self):
        return Mat([[float(x) for x in r] for r in self.rows])

    def tolist(self):
        return [list(r) for r in self.rows]

    def __str__(self):
        return "[" + ",".join("[" + ",".join(format_scalar(x) for x in r) + "]" for r in self.rows) + "]"

    def __repr__(self):
        return f"Mat({self})"


def _gauss_jordan_inverse(m: Mat) -> Mat:
    n = m.n
    exact = m.is_exact
    a = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(m.rows)]
    for c in range(n):
        cand = [i for i in range(c, n) if not is_zero(a[i][c], 0)]
        if not cand:
            raise SingularMatrix("matrix is not invertible")
        p = cand[0] if exact else max(cand, key=lambda i: abs(a[i][c]))
        a[c], a[p] = a[p], a[c]
        piv = a[c][c]
        a[c] = [x / piv for x in a[c]]
        for i in range(n):
            if i != c and not is_zero(a[i][c], 0):
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return Mat([r[n:] for r in a])


def transpose(m: Mat) -> Mat:
    return m.T


def invert(m: Mat) -> Mat:
    return m.inv()


def sharp(h: Mat) -> Mat:
    """``h`` transpose-inverse."""
    return h.inv().T


def dagger(h: Mat, sigma: Mat) -> Mat:
    """The action ``sigma -> (h^-1)^t sigma h^-1`` of GL(2) on symmetric matrices."""
    hi = h.inv()
    return hi.T @ sigma @ hi


def sym(c, b, a) -> Mat:
    """The symmetric matrix ``[[c, b], [b, a]]``."""
    return Mat([[c, b], [b, a]])


def sym_coords(sigma: Mat):
    """Coordinates ``(c, b, a)`` of a symmetric 2x2 matrix."""
    return (sigma[0, 0], sigma[0, 1], sigma[1, 1])


def is_symmetric(m: Mat, tol=None) -> bool:
    return m.close(m.T, tol)


def pairing(s: Mat, t: Mat):
    """Trace form ``tr(s t)``."""
    return (s @ t).trace()


I2 = Mat.identity(2)
I4 = Mat.identity(4)
ZERO2 = Mat.zeros(2)
SIGMA1 = sym(1, 0, 1)
SIGMA2 = sym(1, 0, -1)
SIGMA3 = sym(1, 0, 0)
SIGMA4 = sym(0, 0, 1)
SIGMA5 = sym(0, 1, 0)
LAMBDA = SIGMA2
# generator of the rotations R_t = exp(tJ) = [[cos t, sin t], [-sin t, cos t]]
J2 = Mat([[0, 1], [-1, 0]])
B = Mat([[0, 0], [1, 0]])
J4 = Mat.from_blocks(ZERO2, I2, -I2, ZERO2)


def is_symplectic(m: Mat, tol=None) -> bool:
    if m.n != 4:
        return False
    return (m.T @ J4 @ m).close(J4, tol)


def symplectic_defect(m: Mat) -> float:
    return (m.T @ J4 @ m - J4).norm()


_NUMBER = re.compile(r"(?<![\w.])(-?\d+(?:\.\d+)?(?:[eE][-+]?\d+)?(?:/\d+)?)")


def parse_matrix(text: str) -> Mat:
    """Parse a row-major literal such as ``[[1/2,0],[0,-1]]``; decimals stay exact."""
    quoted = _NUMBER.sub(r'"\1"', text)
    try:
        data = json.loads(quoted)
    except json.JSONDecodeError as exc:
        raise ValueError(f"malformed matrix literal {text!r}") from exc
    return matrix_from_data(data)


def matrix_from_data(data) -> Mat:
    if not isinstance(data, list) or not data or not all(isinstance(r, list) for r in data):
        raise ValueError(f"expected a list of rows, got {data!r}")
    return Mat(data)
