"""Catalog of connected subgroups of GL(2,R) given in closed form.

An :class:`HFamily` is a base family from the catalog, possibly transposed
and conjugated by a fixed matrix ``c``: its elements are ``c b c^-1`` where
``b`` (or its transpose) runs through the base family.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .errors import SpecError
from .linalg import auto_tol
from .matrix import B, I2, J2, SIGMA3, SIGMA4, SIGMA5, Mat
from .scalar import NUMERIC, is_zero, to_scalar


class Inf:
    """The parameter value infinity (kept distinct from any float)."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __str__(self):
        return "inf"

    def __reduce__(self):
        return (Inf, ())


INF = Inf()


def format_param(p) -> str:
    if p is None:
        return ""
    if p is INF:
        return "inf"
    if isinstance(p, Fraction):
        return str(p.numerator) if p.denominator == 1 else f"{p.numerator}/{p.denominator}"
    return repr(p)


def parse_param(value):
    if value is None:
        return None
    if isinstance(value, str) and value.strip().lower() in ("inf", "infinity", "oo"):
        return INF
    return to_scalar(value)


# Base families.  Each entry: number of parameters, parameter kind, element,
# generators (derivatives at 0 in parameter order), and a locator that
# recovers parameters from an element (verified afterwards by the caller).

def _rot(bk, t):
    c, s = bk.cos(t), bk.sin(t)
    return Mat([[c, s], [-s, c]])


def _boost(bk, t):
    c, s = bk.cosh(t), bk.sinh(t)
    return Mat([[c, s], [s, c]])


def _half_log_det(bk, h):
    d = h.det()
    if d <= 0:
        return None
    return bk.log(d) / 2


def _positive(*xs):
    return all(x > 0 for x in xs)


def _loc_h0_sigma1(bk, h, p):
    t = _half_log_det(bk, h)
    return None if t is None else (t, bk.atan2(h[0, 1], h[0, 0]))


def _loc_halpha_sigma1(bk, h, p):
    t = _half_log_det(bk, h)
    return None if t is None else (t,)


def _loc_hinf_sigma1(bk, h, p):
    return (bk.atan2(h[0, 1], h[0, 0]),)


def _loc_h0_sigma2(bk, h, p):
    # eigenvalues h00 +- h01 = e^(t +- s) keep the recovery well conditioned
    up, down = h[0, 0] + h[0, 1], h[0, 0] - h[0, 1]
    if not _positive(up, down):
        return None
    lu, ld = bk.log(up), bk.log(down)
    return ((lu + ld) / 2, (lu - ld) / 2)


def _loc_halpha_sigma2(bk, h, p):
    up = h[0, 0] + h[0, 1]
    if not _positive(up):
        return None
    return (bk.log(up) / (1 + p),)


def _loc_hinf_sigma2(bk, h, p):
    return (bk.asinh(h[0, 1]),)


def _loc_t0(bk, h, p):
    if not _positive(h[0, 0], h[1, 1]):
        return None
    return (bk.log(h[0, 0]), bk.log(h[1, 1]), h[1, 0])


def _loc_h0_sigma3(bk, h, p):
    return (h[1, 0],)


def _loc_h1_sigma3(bk, h, p):
    if not _positive(h[0, 0]):
        return None
    return (bk.log(h[0, 0]),)


def _loc_hgamma0(bk, h, p):
    if not _positive(h[0, 0], h[1, 1]):
        return None
    return (bk.log(h[1, 1] / h[0, 0]),)


def _loc_k0(bk, h, p):
    if not _positive(h[0, 0], h[1, 1]):
        return None
    return (bk.log(h[0, 0]), bk.log(h[1, 1]))


def _loc_kinf(bk, h, p):
    if not _positive(h[0, 0]):
        return None
    return (bk.log(h[0, 0]), h[1, 0])


def _loc_lgamma(bk, h, p):
    if not _positive(h[0, 0], h[1, 1]):
        return None
    return (bk.log(h[1, 1] / h[0, 0]), h[1, 0])


@dataclass(frozen=True)
class _Base:
    nparams: int
    kind: str | None  # None, "alpha" or "gamma"
    element: object
    generators: object
    locate: object
    ambient: str  # symmetrizer ambient "sigma1" | "sigma2" | "sigma3" | ""


BASES = {
    "H^0(sigma1)": _Base(2, None, lambda bk, x, p: _rot(bk, x[1]) * bk.exp(x[0]),
                         lambda p: [I2, J2], _loc_h0_sigma1, "sigma1"),
    "H_alpha(sigma1)": _Base(1, "alpha", lambda bk, x, p: _rot(bk, p * x[0]) * bk.exp(x[0]),
                             lambda p: [I2 + J2 * p], _loc_halpha_sigma1, "sigma1"),
    "H_inf(sigma1)": _Base(1, None, lambda bk, x, p: _rot(bk, x[0]),
                           lambda p: [J2], _loc_hinf_sigma1, "sigma1"),
    "H^0(sigma2)": _Base(2, None, lambda bk, x, p: _boost(bk, x[1]) * bk.exp(x[0]),
                         lambda p: [I2, SIGMA5], _loc_h0_sigma2, "sigma2"),
    "H_alpha(sigma2)": _Base(1, "alpha", lambda bk, x, p: _boost(bk, p * x[0]) * bk.exp(x[0]),
                             lambda p: [I2 + SIGMA5 * p], _loc_halpha_sigma2, "sigma2"),
    "H_inf(sigma2)": _Base(1, None, lambda bk, x, p: _boost(bk, x[0]),
                           lambda p: [SIGMA5], _loc_hinf_sigma2, "sigma2"),
    "T0": _Base(3, None, lambda bk, x, p: Mat([[bk.exp(x[0]), 0], [x[2], bk.exp(x[1])]]),
                lambda p: [SIGMA3, SIGMA4, B], _loc_t0, "sigma3"),
    "H_0(sigma3)": _Base(1, None, lambda bk, x, p: Mat([[1, 0], [x[0], 1]]),
                         lambda p: [B], _loc_h0_sigma3, "sigma3"),
    "H_1(sigma3)": _Base(1, None, lambda bk, x, p: Mat([[1, 0], [x[0], 1]]) * bk.exp(x[0]),
                         lambda p: [I2 + B], _loc_h1_sigma3, "sigma3"),
    "H_inf(sigma3)": _Base(1, None, lambda bk, x, p: I2 * bk.exp(x[0]),
                           lambda p: [I2], _loc_h1_sigma3, "sigma3"),
    "H_gamma0(sigma3)": _Base(1, "gamma",
                              lambda bk, x, p: Mat.diag(bk.exp(p * x[0]), bk.exp((p + 1) * x[0])),
                              lambda p: [I2 * p + SIGMA4], _loc_hgamma0, "sigma3"),
    "K_0(sigma3)": _Base(2, None, lambda bk, x, p: Mat.diag(bk.exp(x[0]), bk.exp(x[1])),
                         lambda p: [SIGMA3, SIGMA4], _loc_k0, "sigma3"),
    "K_inf(sigma3)": _Base(2, None, lambda bk, x, p: Mat([[bk.exp(x[0]), 0], [x[1], bk.exp(x[0])]]),
                           lambda p: [I2, B], _loc_kinf, "sigma3"),
    "L_gamma(sigma3)": _Base(2, "gamma",
                             lambda bk, x, p: Mat([[bk.exp(p * x[0]), 0], [x[1], bk.exp((p + 1) * x[0])]]),
                             lambda p: [I2 * p + SIGMA4, B], _loc_lgamma, "sigma3"),
    "trivial": _Base(0, None, lambda bk, x, p: I2, lambda p: [], lambda bk, h, p: (), ""),
}

TAGS = tuple(BASES)


@dataclass(frozen=True)
class HFamily:
    tag: str
    param: object = None
    transposed: bool = False
    conjugator: Mat = I2

    def __post_init__(self):
        if self.tag not in BASES:
            raise SpecError(f"unknown family {self.tag!r}; valid tags: {', '.join(TAGS)}", "h_family.name")
        kind = BASES[self.tag].kind
        if kind is None and self.param is not None:
            raise SpecError(f"{self.tag} takes no parameter", "h_family")
        if kind is not None:
            if self.param is None or self.param is INF:
                raise SpecError(f"{self.tag} needs a finite {kind}", f"h_family.{kind}")
            object.__setattr__(self, "param", to_scalar(self.param))
        if is_zero(self.conjugator.det()):
            raise SpecError("conjugator must be invertible", "h_family.conjugator")

    @property
    def base(self) -> _Base:
        return BASES[self.tag]

    @property
    def dim(self) -> int:
        return self.base.nparams

    @property
    def is_plain(self) -> bool:
        return not self.transposed and self.conjugator == I2

    def element(self, params, backend=NUMERIC) -> Mat:
        params = tuple(backend.convert(x) for x in params)
        if len(params) != self.dim:
            raise ValueError(f"{self.tag} takes {self.dim} parameters, got {len(params)}")
        p = None if self.param is None else backend.convert(self.param)
        b = self.base.element(backend, params, p)
        if self.transposed:
            b = b.T
        if self.conjugator == I2:
            return b
        return self.conjugator @ b @ self.conjugator.inv()

    def generators(self):
        gens = self.base.generators(self.param)
        if self.transposed:
            gens = [x.T for x in gens]
        c, ci = self.conjugator, self.conjugator.inv()
        return [c @ x @ ci for x in gens]

    def locate(self, h: Mat, tol=None):
        """Parameters ``x`` with ``element(x)`` equal to ``h`` within tol, or None."""
        tol = auto_tol(tol, h)
        b = h
        if self.conjugator != I2:
            b = self.conjugator.inv() @ h @ self.conjugator
        if self.transposed:
            b = b.T
        try:
            x = self.base.locate(NUMERIC, b, self.param)
        except (ValueError, ZeroDivisionError, OverflowError):
            return None
        if x is None:
            return None
        cand = self.element(x)
        if not tol and not cand.is_exact:
            tol = 1e-9  # the locator went through log/atan2, exactness is gone
        if cand.close(h, tol * max(1.0, h.norm()) if tol else 0):
            return x
        return None

    def contains(self, h: Mat, tol=None) -> bool:
        return self.locate(h, tol) is not None

    def transpose(self):
        """The family of transposes."""
        return HFamily(self.tag, self.param, not self.transposed, self.conjugator.inv().T)

    def conjugate(self, d: Mat):
        """The family ``d H d^-1``."""
        return HFamily(self.tag, self.param, self.transposed, d @ self.conjugator)

    def describe(self) -> str:
        name = self.tag
        kind = self.base.kind
        if kind == "alpha":
            name = name.replace("alpha", f"alpha={format_param(self.param)}", 1)
        elif kind:
            sub = "gamma0" if "gamma0" in name else "gamma"
            tail = ",0" if sub == "gamma0" else ""
            name = name.replace(sub, f"{{gamma={format_param(self.param)}{tail}}}", 1)
        if self.transposed:
            name = "t" + name
        if self.conjugator != I2:
            name = f"{self.conjugator}.{name}"
        return name

    def samples(self, grid=7):
        return [self.element(x) for x in param_samples(self.dim, grid)]


def grid_points(n=7):
    """``n`` symmetric rational sample points; n = 7 gives -2,-1,-1/2,0,1/2,1,2."""
    mags = [Fraction(1, 2), Fraction(1), Fraction(2)]
    k = 3
    while 2 * len(mags) + 1 < n:
        mags += [Fraction(k), Fraction(2 * k - 1, 2)]
        k += 1
    pts = [Fraction(0)]
    for m in mags:
        pts += [m, -m]
    return sorted(pts[:n])


def param_samples(nparams, grid=7):
    """Parameter tuples: the grid for one parameter, the grid squared for two.

    Three parameters use 7x7 triples ``(t_i, t_j, t_{i+j})`` to keep sweeps small.
    """
    pts = grid_points(grid)
    if nparams == 0:
        return [()]
    if nparams == 1:
        return [(t,) for t in pts]
    if nparams == 2:
        return list(itertools.product(pts, pts))
    n = len(pts)
    return [(pts[i], pts[j], pts[(i + j) % n]) for i in range(n) for j in range(n)]


def family(tag, param=None, transposed=False, conjugator=I2) -> HFamily:
    return HFamily(tag, None if param is None else to_scalar(param), transposed, conjugator)
