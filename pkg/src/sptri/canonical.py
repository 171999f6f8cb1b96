"""Sylvester normal forms, symmetrizer groups and the MA-conjugacy catalog.

``MA`` is the block-diagonal part ``{g(0, h)}`` of Q.  Conjugating
``Sigma x| H`` by ``g(0, h)`` gives ``h.dagger(Sigma) x| h H h^-1``, so a
class-E group is brought to a catalog entry by one matrix ``h``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import NotClassE, NotInHSigma, SigmaDimZero
from .families import INF, HFamily, format_param
from .linalg import auto_tol
from .matrix import I2, LAMBDA, SIGMA1, SIGMA2, SIGMA3, SIGMA5, ZERO2, Mat, dagger, sharp
from .parabolic import QElement
from .scalar import exact_sqrt, is_zero, sign, sqrt
from .subalgebra import LieSub, classify_subalgebra, span_equal
from .triple import SPANS, SymSpan, Triple, Zero, is_class_E

CANONICAL = {(2, 0, 0): SIGMA1, (1, 1, 0): SIGMA2, (1, 0, 1): SIGMA3, (0, 0, 2): ZERO2}
P_SWAP = SIGMA5


@dataclass(frozen=True)
class Signature:
    """``(p, q, r)`` with ``dagger(witness, canonical) == sign * sigma``.

    ``sign`` is -1 when the input had more negative than positive
    eigenvalues; the span is unchanged by that flip.
    """

    p: int
    q: int
    r: int
    witness: Mat
    sign: int = 1

    @property
    def triple(self):
        return (self.p, self.q, self.r)

    @property
    def canonical(self) -> Mat:
        return CANONICAL[self.triple]


def signature_of(sigma: Mat, tol=None):
    """Exact eigenvalue-sign counts (p, q, r) from the determinant and trace."""
    tol = auto_tol(tol, sigma)
    d, t = sigma.det(), sigma.trace()
    if is_zero(d, tol):
        if all(is_zero(x, tol) for x in sigma.entries()):
            return (0, 0, 2)
        return (1, 0, 1) if t > 0 else (0, 1, 1)
    if d < 0:
        return (1, 1, 0)
    return (2, 0, 0) if t > 0 else (0, 2, 0)


def _ldl(sigma: Mat, tol):
    """``sigma = M^t D M`` with ``D`` diagonal; ``M`` rational (a swap or unipotent)."""
    c, b, a = sigma[0, 0], sigma[0, 1], sigma[1, 1]
    if not is_zero(c, tol):
        u = Mat([[1, b / c], [0, 1]])
        return u, (c, a - b * b / c)
    if not is_zero(a, tol):
        # swap coordinates, then eliminate
        u = Mat([[1, b / a], [0, 1]]) @ P_SWAP
        return u, (a, c - b * b / a)
    return None, None


def sylvester_reduce(sigma: Mat, tol=None) -> Signature:
    """Signature with a witness ``g``: ``dagger(g, I_pqr) = sign * sigma``."""
    tol = auto_tol(tol, sigma)
    sig = signature_of(sigma, tol)
    if sig == (0, 0, 2):
        return Signature(0, 0, 2, I2)
    flip = 1
    if sig[1] > sig[0]:
        flip, sigma, sig = -1, -sigma, (sig[1], sig[0], sig[2])
    m, diag = _ldl(sigma, tol)
    if m is None:
        # sigma = b sigma5 with b > 0 after the flip is not guaranteed; handle sign of b
        b = sigma[0, 1]
        base = Mat([[1, Fraction(1, 2)], [1, Fraction(-1, 2)]])  # base^t sigma2 base = sigma5
        s = sqrt(abs(b))
        m = base * s if b > 0 else base @ LAMBDA * s
    else:
        d0, d1 = diag
        scales = [sqrt(abs(d)) if not is_zero(d, tol) else Fraction(1) for d in (d0, d1)]
        m = Mat.diag(*scales) @ m
        signs = [sign(d) for d in (d0, d1)]
        if signs in ([-1, 1], [0, 1]):
            m = P_SWAP @ m
    g = m.inv()
    return Signature(*sig, g, flip)


def span_normalizer(sigma: Mat, tol=None):
    """``(M, sigma_i)`` with ``dagger(M, sigma)`` a nonzero multiple of ``sigma_i``.

    Only proportionality matters for spans, so square roots are needed only
    for definite or indefinite ``sigma`` whose |det| is not a rational square.
    """
    tol = auto_tol(tol, sigma)
    sig = signature_of(sigma, tol)
    if sig == (0, 0, 2):
        raise SigmaDimZero("zero matrix spans nothing")
    m, diag = _ldl(sigma, tol)
    if m is None:
        return Mat([[1, Fraction(1, 2)], [1, Fraction(-1, 2)]]), SIGMA2
    d0, d1 = diag
    if is_zero(d1, tol):
        return m, SIGMA3
    s = sqrt(abs(d1 / d0))
    m = Mat.diag(1, s) @ m
    return m, (SIGMA1 if sign(d0) == sign(d1) else SIGMA2)


def symmetrizer_membership(h: Mat, sigma: Mat, tol=None):
    """``lam`` with ``dagger(h, sigma) = lam * sigma``, or None."""
    image = dagger(h, sigma)
    tol = auto_tol(tol, image, sigma)
    i, j = max(((i, j) for i in range(2) for j in range(2)), key=lambda ij: abs(sigma[ij]))
    if is_zero(sigma[i, j], 0):
        raise ValueError("sigma must be nonzero")
    lam = image[i, j] / sigma[i, j]
    return lam if image.close(sigma * lam, tol * max(1.0, image.norm()) if tol else 0) else None


def iso_split(h: Mat, sigma: Mat, tol=None):
    """``(e^s, f, eps)`` with ``lam = eps e^s`` and ``f = e^(s/2) h``, so ``dagger(f, sigma) = eps sigma``."""
    lam = symmetrizer_membership(h, sigma, tol)
    if lam is None:
        raise NotInHSigma(f"{h} does not rescale {sigma}")
    es = abs(lam)
    return es, h * sqrt(es), (1 if lam > 0 else -1)


# ---- catalog --------------------------------------------------------------


@dataclass(frozen=True)
class MACatalogEntry:
    ident: str
    sigma_name: str
    tag: str
    transposed: bool = False
    kind: str | None = None  # "alpha" (range [0, inf]) or "gamma" (all reals)

    def family(self, param=None) -> HFamily:
        if self.kind == "alpha" and param is INF:
            return HFamily(self.tag.replace("alpha", "inf"), None, self.transposed)
        if self.kind is None:
            return HFamily(self.tag, None, self.transposed)
        return HFamily(self.tag, param, self.transposed)

    def triple(self, param=None) -> Triple:
        return Triple(SPANS[self.sigma_name], self.family(param), Zero())

    def label(self, param=None) -> str:
        if self.kind is None:
            return self.ident
        return f"{self.ident}:{self.kind}={format_param(param)}"

    @property
    def param_range(self) -> str:
        return {"alpha": "[0, inf]", "gamma": "R", None: ""}[self.kind]


def _entries():
    out = []
    for i, s in ((1, "sigma1"), (2, "sigma2")):
        out += [
            MACatalogEntry(f"({i}.i)", f"Sigma{i}", f"H^0({s})"),
            MACatalogEntry(f"({i}.ii)", f"Sigma{i}", f"H_alpha({s})", kind="alpha"),
            MACatalogEntry(f"({i}.iii)", f"Sigma{i}perp", f"H^0({s})"),
            MACatalogEntry(f"({i}.iv)", f"Sigma{i}perp", f"H_alpha({s})", kind="alpha"),
        ]
    rows = [
        ("i", "T0", None), ("ii", "H_0(sigma3)", None), ("iii", "H_1(sigma3)", None),
        ("iv", "H_inf(sigma3)", None), ("v", "H_gamma0(sigma3)", "gamma"), ("vi", "K_0(sigma3)", None),
        ("vii", "K_inf(sigma3)", None), ("viii", "L_gamma(sigma3)", "gamma"),
    ]
    out += [MACatalogEntry(f"(3.{r})", "Sigma3", tag, False, kind) for r, tag, kind in rows]
    perp_rows = [
        ("ix", "T0", True, None), ("x", "H_0(sigma3)", True, None), ("xi", "H_1(sigma3)", True, None),
        ("xii", "H_inf(sigma3)", True, None), ("xiii", "H_gamma0(sigma3)", False, "gamma"),
        ("xiv", "K_0(sigma3)", False, None), ("xv", "K_inf(sigma3)", True, None),
        ("xvi", "L_gamma(sigma3)", True, "gamma"),
    ]
    out += [MACatalogEntry(f"(3.{r})", "Sigma3perp", tag, t, kind) for r, tag, t, kind in perp_rows]
    return out


MA_CATALOG = tuple(_entries())
ENTRY = {e.ident: e for e in MA_CATALOG}


def ma_catalog():
    return list(MA_CATALOG)


# subalgebra normal form -> catalog entry, for Sigma = Sigma_i and for Sigma = Sigma_i^perp
_BY_ALGEBRA = {
    ("sigma1", "full"): ("(1.i)", "(1.iii)"),
    ("sigma1", "h_alpha"): ("(1.ii)", "(1.iv)"),
    ("sigma2", "full"): ("(2.i)", "(2.iii)"),
    ("sigma2", "h_alpha"): ("(2.ii)", "(2.iv)"),
    ("sigma3", "full"): ("(3.i)", "(3.ix)"),
    ("sigma3", "h_0"): ("(3.ii)", "(3.x)"),
    ("sigma3", "h_1"): ("(3.iii)", "(3.xi)"),
    ("sigma3", "h_inf"): ("(3.iv)", "(3.xii)"),
    ("sigma3", "h_gamma0"): ("(3.v)", "(3.xiii)"),
    ("sigma3", "k_0"): ("(3.vi)", "(3.xiv)"),
    ("sigma3", "k_inf"): ("(3.vii)", "(3.xv)"),
    ("sigma3", "l_gamma"): ("(3.viii)", "(3.xvi)"),
}

_AMBIENT_OF = {id(SIGMA1): "sigma1", id(SIGMA2): "sigma2", id(SIGMA3): "sigma3"}


def _alpha_invariant(x: Mat):
    """|alpha| for ``x`` conjugate to ``p(I + alpha K)``; exact when it is rational."""
    half = x.trace() / 2
    if is_zero(half):
        return INF
    sq = abs((x - I2 * half).det()) / (half * half)
    r = exact_sqrt(sq) if isinstance(sq, Fraction) else None
    return r if r is not None else sqrt(sq)


@dataclass(frozen=True)
class MAReduction:
    entry: MACatalogEntry
    param: object
    h: Mat

    @property
    def conjugator(self) -> QElement:
        return QElement(ZERO2, self.h)

    @property
    def target(self) -> Triple:
        return self.entry.triple(self.param)

    @property
    def label(self) -> str:
        return self.entry.label(self.param)


def _reduce_line(sigma: Mat, gens, tol):
    """Normalize ``(span{sigma}, span(gens))``; returns (ambient, label, h)."""
    m, canon = span_normalizer(sigma, tol)
    ambient = _AMBIENT_OF[id(canon)]
    mi = m.inv()
    algebra = [m @ x @ mi for x in gens]
    lab = classify_subalgebra(LieSub(ambient, algebra), tol=auto_tol(tol, *algebra))
    param = lab.param
    if lab.name == "h_alpha":
        # conjugation invariant, so exact even when m involves square roots
        param = _alpha_invariant(gens[0])
    return ambient, lab.name, param, lab.witness @ m


def ma_reduce(t: Triple, tol=None, check=True) -> MAReduction:
    """Find ``h`` with ``g(0, h) t g(0, h)^-1`` equal to an MA-catalog entry."""
    if t.sigma.dim == 0:
        raise SigmaDimZero("Sigma is zero")
    if t.sigma.dim not in (1, 2) or not is_class_E(t):
        raise NotClassE("ma_reduce needs a class-E triple with dim Sigma in {1, 2}")
    return ma_reduce_algebra(t.sigma, t.h.generators(), tol, check)


def ma_reduce_algebra(sigma: SymSpan, gens, tol=None, check=True) -> MAReduction:
    """:func:`ma_reduce` for a class-E group given by Sigma and Lie generators of H."""
    if sigma.dim not in (1, 2) or not gens:
        raise NotClassE("need 1 <= dim Sigma <= 2 and dim H >= 1")
    if sigma.dim == 1:
        ambient, name, param, h = _reduce_line(sigma.basis[0], gens, tol)
        entry = ENTRY[_BY_ALGEBRA[(ambient, name)][0]]
    else:
        ambient, name, param, k = _reduce_line(sigma.perp().basis[0], [x.T for x in gens], tol)
        h = sharp(k)
        if (ambient, name) == ("sigma1", "h_alpha") and param is not INF and param != 0:
            # transposing h_alpha(sigma1) gives h_-alpha; Lambda restores the sign
            h = LAMBDA @ h
        entry = ENTRY[_BY_ALGEBRA[(ambient, name)][1]]
    red = MAReduction(entry, param, h)
    if check:
        _check_reduction(sigma, gens, red, tol)
    return red


def _check_reduction(sigma: SymSpan, gens, red: MAReduction, tol):
    target = red.target
    h, hi = red.h, red.h.inv()
    image = SymSpan([dagger(h, b) for b in sigma.basis], auto_tol(tol, h, *sigma.basis))
    algebra = [h @ x @ hi for x in gens]
    eff = auto_tol(tol, h, *sigma.basis, *algebra)
    eff = eff * 1e3 if eff else 0  # float witnesses: allow modest amplification
    if not image.equals(target.sigma, eff) or not span_equal(algebra, target.h.generators(), eff):
        raise AssertionError(f"MA reduction to {red.label} failed verification")
