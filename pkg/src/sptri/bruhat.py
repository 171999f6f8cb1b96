"""Weyl group representatives and Bruhat cells of Sp(2,R).

The minimal parabolic ``P`` consists of the ``g(sigma, l)`` with ``l`` lower
triangular.  After reordering coordinates as (0, 1, 3, 2) every element of
``P`` is lower triangular, so the cell of ``g`` in ``P w P`` is read off the
ranks of its top-right submatrices, which are invariant under the row and
column operations performed by ``P`` on either side.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NotSymplectic
from .linalg import auto_tol, rank
from .matrix import I2, SIGMA5, ZERO2, Mat, is_symplectic

S_PLUS = {
    "I": I2,
    "s0": Mat([[1, 0], [0, 0]]),
    "s1": Mat([[0, 0], [0, 1]]),
    "0": ZERO2,
}
PI = {"I": I2, "sigma5": SIGMA5}


@dataclass(frozen=True)
class WeylElement:
    s_plus: str
    pi: str

    @property
    def matrix(self) -> Mat:
        sp = S_PLUS[self.s_plus]
        sm = I2 - sp
        return Mat.from_blocks(sp, -sm, sm, sp) @ Mat.from_blocks(PI[self.pi], ZERO2, ZERO2, PI[self.pi])

    @property
    def tag(self) -> str:
        return f"S+={self.s_plus},pi={self.pi}"

    def __str__(self):
        return self.tag


WEYL = tuple(WeylElement(s, p) for s in ("I", "s0", "s1", "0") for p in ("I", "sigma5"))
IDENTITY_CELL = WeylElement("I", "I")
W0_ELEMENT = WeylElement("s0", "I")
W0 = W0_ELEMENT.matrix

_ORDER = (0, 1, 3, 2)


def _reordered(m: Mat) -> Mat:
    return Mat([[m[_ORDER[i], _ORDER[j]] for j in range(4)] for i in range(4)])


def rank_profile(m: Mat, tol=None):
    """Ranks of the submatrices made of the top ``i`` rows and the right ``4 - j`` columns."""
    r = _reordered(m)
    tol = auto_tol(tol, m)
    if tol:
        a = np.array([[float(x) for x in row] for row in r.rows])
        scale = max(1.0, float(np.abs(a).max()))
        return tuple(
            int(np.linalg.matrix_rank(a[:i, j:], tol=tol * scale)) for i in range(1, 5) for j in range(4)
        )
    rows = [list(row) for row in r.rows]
    return tuple(rank([row[j:] for row in rows[:i]], 0) for i in range(1, 5) for j in range(4))


_PROFILES = {rank_profile(w.matrix, 0): w for w in WEYL}


def bruhat_cell(g: Mat, tol=None) -> WeylElement:
    """The Weyl element ``w`` with ``g`` in ``P w P``."""
    tol = auto_tol(tol, g)
    if g.n != 4 or not is_symplectic(g, tol * max(1.0, g.norm() ** 2) if tol else 0):
        raise NotSymplectic("bruhat_cell needs a symplectic 4x4 matrix")
    prof = rank_profile(g, tol)
    try:
        return _PROFILES[prof]
    except KeyError:
        raise ArithmeticError(f"rank profile {prof} matches no Weyl element (tolerance too loose?)") from None
