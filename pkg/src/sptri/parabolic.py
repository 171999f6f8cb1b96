"""The maximal parabolic subgroup Q of Sp(2,R).

Every element is ``g(sigma, h) = [[h, 0], [sigma h, h^#]]`` with ``sigma``
symmetric and ``h`` invertible; the group law is
``g(s, h) g(s', h') = g(s + h.dagger(s'), h h')``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import NotBlockTriangular, NotSymplectic, SingularMatrix
from .linalg import auto_tol
from .matrix import I2, ZERO2, Mat, dagger, is_symmetric, is_symplectic, parse_matrix, sharp
from .scalar import exact_sqrt, is_zero


@dataclass(frozen=True)
class QElement:
    sigma: Mat
    h: Mat
    _matrix: Mat = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.h.n != 2 or self.sigma.n != 2:
            raise ValueError("sigma and h must be 2x2")

    @classmethod
    def identity(cls):
        return cls(ZERO2, I2)

    @property
    def matrix(self) -> Mat:
        if self._matrix is None:
            m = Mat.from_blocks(self.h, ZERO2, self.sigma @ self.h, sharp(self.h))
            object.__setattr__(self, "_matrix", m)
        return self._matrix

    def __matmul__(self, other):
        return q_compose(self, other)

    def inverse(self):
        return q_invert(self)

    def __str__(self):
        return f"g(sigma={self.sigma}, h={self.h})"


def g(sigma=None, h=None) -> QElement:
    return QElement(ZERO2 if sigma is None else sigma, I2 if h is None else h)


def q_compose(g1: QElement, g2: QElement) -> QElement:
    return QElement(g1.sigma + dagger(g1.h, g2.sigma), g1.h @ g2.h)


def q_invert(x: QElement) -> QElement:
    return QElement(-(x.h.T @ x.sigma @ x.h), x.h.inv())


def q_member(m: Mat, tol=None) -> QElement:
    """Factor a 4x4 matrix as ``g(sigma, h)``.

    Raises :class:`NotBlockTriangular` when the upper-right block is nonzero and
    :class:`NotSymplectic` when the symplectic block conditions fail.
    """
    tol = auto_tol(tol, m)
    a, b, c, _ = m.blocks()
    if not b.close(ZERO2, tol):
        raise NotBlockTriangular(f"upper-right block is {b}")
    if not is_symplectic(m, tol):
        raise NotSymplectic("matrix does not preserve J")
    try:
        sigma = c @ a.inv()
    except SingularMatrix as exc:
        raise NotSymplectic("upper-left block is singular") from exc
    if not is_symmetric(sigma, tol):
        raise NotSymplectic(f"recovered sigma {sigma} is not symmetric")
    return QElement(sigma, a)


def in_q(m: Mat, tol=None) -> bool:
    try:
        q_member(m, tol)
    except (NotBlockTriangular, NotSymplectic):
        return False
    return True


@dataclass(frozen=True)
class LanglandsFactor:
    """``tag`` is ``"M"`` (payload h with det +-1), ``"A"`` (payload lambda > 0) or ``"N"`` (payload sigma)."""

    tag: str
    payload: object

    @property
    def element(self) -> QElement:
        if self.tag == "M":
            return g(h=self.payload)
        if self.tag == "A":
            return g(h=I2 * self.payload)
        return g(sigma=self.payload)


def langlands_split(x: QElement):
    """Return ``(m, a, n)`` with ``x = n m a``."""
    d = abs(x.h.det())
    lam = exact_sqrt(d)
    if lam is None:
        lam = float(d) ** 0.5
    return (LanglandsFactor("M", x.h / lam), LanglandsFactor("A", lam), LanglandsFactor("N", x.sigma))


def is_in_ma(x: QElement, tol=None) -> bool:
    return x.sigma.close(ZERO2, tol)


_ELEMENT = re.compile(r"^\s*g\(\s*sigma\s*=\s*(\[.*\])\s*,\s*h\s*=\s*(\[.*\])\s*\)\s*$")


def parse_element(text: str) -> QElement:
    """Inverse of ``str(QElement)``."""
    m = _ELEMENT.match(text)
    if not m:
        raise ValueError(f"not a Q element literal: {text!r}")
    sigma, h = parse_matrix(m.group(1)), parse_matrix(m.group(2))
    if not is_symmetric(sigma):
        raise ValueError("sigma must be symmetric")
    if is_zero(h.det()):
        raise SingularMatrix("h must be invertible")
    return QElement(sigma, h)
