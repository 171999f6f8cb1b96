"""Lie subalgebras of the symmetrizer algebras h(sigma_i) and their normal forms.

The ambients are ``h(sigma1) = span{I, J}``, ``h(sigma2) = span{I, sigma5}``
and ``h(sigma3)`` = lower-triangular matrices with basis ``{I, sigma4, B}``.
Subalgebras are classified up to conjugation by the symmetrizer group; every
label carries a witness ``l`` with ``l s l^-1`` equal to the normal form.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import AmbientMismatch, NotASubalgebra
from .families import INF, HFamily, format_param
from .linalg import auto_tol, in_span, rank
from .matrix import B, I2, J2, LAMBDA, SIGMA4, SIGMA5, Mat
from .scalar import is_zero

AMBIENTS = ("sigma1", "sigma2", "sigma3")


def bracket(x: Mat, y: Mat) -> Mat:
    return x @ y - y @ x


def _vec(m: Mat):
    return list(m.entries())


def span_equal(xs, ys, tol=None) -> bool:
    """Equality of the linear spans of two lists of 2x2 matrices."""
    tol = auto_tol(tol, *xs, *ys)
    vx, vy = [_vec(m) for m in xs], [_vec(m) for m in ys]
    r = rank(vx, tol) if vx else 0
    return r == (rank(vy, tol) if vy else 0) and r == (rank(vx + vy, tol) if vx + vy else 0)


def span_contains(xs, m: Mat, tol=None) -> bool:
    tol = auto_tol(tol, m, *xs)
    return in_span(_vec(m), [_vec(x) for x in xs], tol)


def ambient_coords(ambient: str, x: Mat, tol=None):
    """Coordinates of ``x`` in the ambient basis, or raise :class:`AmbientMismatch`."""
    tol = auto_tol(tol, x)
    if ambient == "sigma1":
        p, q = x[0, 0], x[0, 1]
        ok = is_zero(x[1, 1] - p, tol) and is_zero(x[1, 0] + q, tol)
        coords = (p, q)  # p I + q J
    elif ambient == "sigma2":
        p, q = x[0, 0], x[0, 1]
        ok = is_zero(x[1, 1] - p, tol) and is_zero(x[1, 0] - q, tol)
        coords = (p, q)  # p I + q sigma5
    elif ambient == "sigma3":
        g = x[0, 0]
        ok = is_zero(x[0, 1], tol)
        coords = (g, x[1, 1] - g, x[1, 0])  # g I + a sigma4 + b B
    else:
        raise AmbientMismatch(f"unknown ambient {ambient!r}")
    if not ok:
        raise AmbientMismatch(f"{x} is not in h({ambient})")
    return coords


@dataclass(frozen=True)
class LieSub:
    ambient: str
    basis: tuple

    def __post_init__(self):
        object.__setattr__(self, "basis", tuple(self.basis))
        if self.ambient not in AMBIENTS:
            raise AmbientMismatch(f"unknown ambient {self.ambient!r}")
        for x in self.basis:
            ambient_coords(self.ambient, x)
        if rank([_vec(x) for x in self.basis], auto_tol(None, *self.basis)) != len(self.basis):
            raise NotASubalgebra("generators are linearly dependent")
        for i, x in enumerate(self.basis):
            for y in self.basis[i + 1:]:
                if not span_contains(self.basis, bracket(x, y)):
                    raise NotASubalgebra(f"[{x}, {y}] leaves the span")

    @property
    def dim(self):
        return len(self.basis)

    def conjugate(self, l: Mat):
        li = l.inv()
        return LieSub(self.ambient, tuple(l @ x @ li for x in self.basis))


@dataclass(frozen=True)
class SubalgebraLabel:
    """``name`` is one of ``h_alpha``, ``full`` (sigma1/sigma2) or ``h_0``,
    ``h_1``, ``h_inf``, ``h_gamma0``, ``k_0``, ``k_inf``, ``l_gamma``, ``full``
    (sigma3); ``witness`` conjugates the input onto :func:`canonical_basis`."""

    ambient: str
    name: str
    param: object
    witness: Mat

    def __str__(self):
        p = f"[{format_param(self.param)}]" if self.param is not None else ""
        return f"{self.name}{p}({self.ambient})"

    @property
    def key(self):
        return (self.ambient, self.name, self.param)


def canonical_basis(ambient, name, param):
    if ambient in ("sigma1", "sigma2"):
        other = J2 if ambient == "sigma1" else SIGMA5
        if name == "full":
            return [I2, other]
        if param is INF:
            return [other]
        return [I2 + other * param]
    table = {
        "h_0": lambda: [B],
        "h_1": lambda: [I2 + B],
        "h_inf": lambda: [I2],
        "h_gamma0": lambda: [I2 * param + SIGMA4],
        "k_0": lambda: [I2, SIGMA4],
        "k_inf": lambda: [I2, B],
        "l_gamma": lambda: [I2 * param + SIGMA4, B],
        "full": lambda: [I2, SIGMA4, B],
    }
    return table[name]()


def _classify_rank1_ambient(s: LieSub, tol):
    if s.dim == 2:
        return "full", None, I2
    p, q = ambient_coords(s.ambient, s.basis[0], tol)
    if is_zero(p, tol):
        return "h_alpha", INF, I2
    alpha = q / p
    if alpha < 0:
        # Lambda flips the sign of J (resp. sigma5) and fixes I
        return "h_alpha", -alpha, LAMBDA
    return "h_alpha", alpha, I2


def _classify_sigma3(s: LieSub, tol):
    coords = [ambient_coords("sigma3", x, tol) for x in s.basis]
    if s.dim == 3:
        return "full", None, I2
    if s.dim == 1:
        g, a, b = coords[0]
        if not is_zero(a, tol):
            return "h_gamma0", g / a, Mat([[1, 0], [b / a, 1]])
        if not is_zero(b, tol):
            gamma = g / b
            if is_zero(gamma, tol):
                return "h_0", None, I2
            return "h_1", None, Mat([[1, 0], [0, gamma]])
        return "h_inf", None, I2
    # dimension 2
    if span_contains(s.basis, B, tol):
        for g, a, b in coords:
            if not is_zero(a, tol):
                return "l_gamma", g / a, I2
        return "k_inf", None, I2
    # B is not in the span: closure forces span{I, sigma4 + mu B}
    rows = [[g, a, b] for g, a, b in coords]
    # find the combination with g = 0, a = 1
    (g0, a0, b0), (g1, a1, b1) = rows
    det = g0 * a1 - g1 * a0
    # solve x*(g0, a0) + y*(g1, a1) = (0, 1)
    x, y = -g1 / det, g0 / det
    mu = x * b0 + y * b1
    return "k_0", None, Mat([[1, 0], [mu, 1]])


def classify_subalgebra(s: LieSub, tol=None) -> SubalgebraLabel:
    tol = auto_tol(tol, *s.basis)
    if s.dim == 0:
        raise NotASubalgebra("empty subalgebra")
    if s.ambient == "sigma3":
        name, param, w = _classify_sigma3(s, tol)
    else:
        name, param, w = _classify_rank1_ambient(s, tol)
    label = SubalgebraLabel(s.ambient, name, param, w)
    if not span_equal(s.conjugate(w).basis, canonical_basis(s.ambient, name, param), tol):
        raise AssertionError(f"witness check failed for {label}")
    return label


_EXP = {
    ("sigma1", "full"): ("H^0(sigma1)", False),
    ("sigma2", "full"): ("H^0(sigma2)", False),
    ("sigma1", "h_alpha"): ("H_alpha(sigma1)", True),
    ("sigma2", "h_alpha"): ("H_alpha(sigma2)", True),
    ("sigma3", "h_0"): ("H_0(sigma3)", False),
    ("sigma3", "h_1"): ("H_1(sigma3)", False),
    ("sigma3", "h_inf"): ("H_inf(sigma3)", False),
    ("sigma3", "h_gamma0"): ("H_gamma0(sigma3)", True),
    ("sigma3", "k_0"): ("K_0(sigma3)", False),
    ("sigma3", "k_inf"): ("K_inf(sigma3)", False),
    ("sigma3", "l_gamma"): ("L_gamma(sigma3)", True),
    ("sigma3", "full"): ("T0", False),
}


def exponentiate(label: SubalgebraLabel) -> HFamily:
    """The catalog family whose Lie algebra is the label's normal form."""
    tag, takes = _EXP[(label.ambient, label.name)]
    if label.name == "h_alpha" and label.param is INF:
        return HFamily(f"H_inf({label.ambient})")
    return HFamily(tag, label.param if takes else None)


def algebra_of(fam: HFamily):
    return fam.generators()


def label_of_family(fam: HFamily):
    """Inverse of :func:`exponentiate` on plain catalog families."""
    for (amb, name), (tag, takes) in _EXP.items():
        if tag == fam.tag:
            return amb, name, fam.param if takes else None
    if fam.tag in ("H_inf(sigma1)", "H_inf(sigma2)"):
        return fam.tag[6:-1], "h_alpha", INF
    return None
