"""Sp(2,R)-conjugacy of class-E groups.

Two class-E groups are conjugate either inside ``MA`` (handled by
:func:`canonical.ma_reduce`) or through the Weyl element ``w0``.  For the
second route the group is first moved by ``MA`` so that Sigma lies in
``sigma4^perp`` and H in the lower-triangular group T, then twisted by a
coboundary ``g(a0 sigma4, I)`` and conjugated by ``w0``.  The image is again
of class E exactly when its tau is a coboundary; this is decided twice, once
through the scalar function Psi on sampled elements and once exactly at the
Lie-algebra level.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .bruhat import W0
from .canonical import ENTRY, MACatalogEntry, MAReduction, ma_reduce, ma_reduce_algebra
from .errors import (
    CrazytauFailed,
    NotClassE,
    NotLowerTriangular,
    PreconditionViolated,
    SptriError,
    SigmaNotInSigma4Perp,
)
from .families import INF, HFamily, format_param, grid_points
from .linalg import auto_tol, nullspace, rref
from .matrix import B, I2, I4, SIGMA3, SIGMA4, SIGMA5, ZERO2, Mat, dagger, sym
from .parabolic import QElement, g
from .scalar import is_zero
from .subalgebra import LieSub, classify_subalgebra, exponentiate, span_contains
from .triple import SPANS, Coboundary, SymSpan, Triple, is_class_E

W0_INV = W0.inv()
SIGMA4_PERP = SPANS["sigma4perp"]

# ---- the gamma dictionaries ------------------------------------------------


def w0_gamma(gamma):
    """``gamma -> -gamma / (2 gamma + 1)`` on R plus infinity (-1/2 <-> infinity)."""
    if gamma is INF:
        return Fraction(-1, 2)
    if gamma == Fraction(-1, 2):
        return INF
    return -gamma / (2 * gamma + 1)


def perp_gamma(gamma):
    """``gamma -> -(gamma + 1) / (2 gamma + 1)``, pairing L_gamma with H_{f(gamma),0} on Sigma3^perp."""
    if gamma is INF:
        return Fraction(-1, 2)
    if gamma == Fraction(-1, 2):
        return INF
    return -(gamma + 1) / (2 * gamma + 1)


def fold_gamma(gamma):
    """Representative of ``{gamma, w0_gamma(gamma)}`` in [-1, 0]."""
    if gamma is not INF and -1 <= gamma <= 0:
        return gamma
    return w0_gamma(gamma)


# ---- Psi and the coboundary conditions -------------------------------------


def _lower(h: Mat, tol=None):
    tol = auto_tol(tol, h)
    if not is_zero(h[0, 1], tol):
        raise NotLowerTriangular(f"{h} is not lower triangular")
    alpha, delta = h[0, 0], h[1, 1]
    return alpha, h[1, 0] / alpha, delta


def psi(sigma: Mat, h: Mat, a0, a1, b1, tol=None):
    """``Psi = beta - b1 (1 - delta/alpha) + a1 (a0 beta + b(sigma)) delta^2``.

    ``h = [[alpha, 0], [beta alpha, delta]]`` and ``sigma = [[c, b], [b, 0]]``;
    ``a1``, ``b1`` are the two free constants of the candidate coboundary.
    """
    if not is_zero(sigma[1, 1], auto_tol(tol, sigma)):
        raise SigmaNotInSigma4Perp(f"{sigma} has a nonzero lower-right entry")
    alpha, beta, delta = _lower(h, tol)
    return beta - b1 * (1 - delta / alpha) + a1 * (a0 * beta + sigma[0, 1]) * delta * delta


@dataclass(frozen=True)
class CrazytauAnalysis:
    pair: tuple | None
    transcript: tuple

    @property
    def ok(self) -> bool:
        return self.pair is not None


def _check_route_preconditions(sigma: SymSpan, fam: HFamily):
    if not all(sigma.contains(b) for b in sigma.basis) or not all(is_zero(b[1, 1], 1e-12) for b in sigma.basis):
        raise PreconditionViolated("Sigma must lie in sigma4^perp")
    if not all(is_zero(x[0, 1], 1e-12) for x in fam.generators()):
        raise PreconditionViolated("H must lie in the lower-triangular group T")


def _sigma_samples(sigma: SymSpan):
    return [ZERO2] + [b * k for b in sigma.basis for k in (1, -2)]


def crazytau_analysis(sigma: SymSpan, fam: HFamily, a0, grid=7, tol=None) -> CrazytauAnalysis:
    """Search constants (a', b') making the w0 image a coboundary twist.

    Conditions on sampled (sigma, h): ``a'(1 - delta^2) = 0``,
    ``[[1, 0], [Psi, 1]] in H`` and ``a0 Psi sigma5 in Sigma``.
    """
    _check_route_preconditions(sigma, fam)
    a0 = Fraction(a0) if not isinstance(a0, float) else a0
    hs = fam.samples(grid)
    ss = _sigma_samples(sigma)
    tol = auto_tol(tol, *hs) or 1e-9
    lines = []
    delta_one = all(is_zero(h[1, 1] - 1, tol) for h in hs)
    if a0 != 0 and not delta_one:
        lines.append("a0 != 0 but delta(h) is not identically 1: the twisted image leaves Q")
        lines.append("crazytau conditions are not satisfied")
        return CrazytauAnalysis(None, tuple(lines))
    has_unipotents = span_contains(fam.generators(), B)
    sigma5_in = sigma.contains(SIGMA5)
    lines.append(f"a0 = {format_param(a0)}; delta == 1 on H: {delta_one}; "
                 f"unipotents in H: {has_unipotents}; sigma5 in Sigma: {sigma5_in}")
    need_zero = (not has_unipotents) or (a0 != 0 and not sigma5_in)
    if not need_zero:
        lines.append("Psi is unconstrained; a' = b' = 0 satisfies all conditions")
        return CrazytauAnalysis((Fraction(0), Fraction(0)), tuple(lines))
    lines.append("Psi must vanish identically" + ("" if has_unipotents else " ([[1,0],[Psi,1]] in H forces Psi = 0)"))
    rows, rhs, raw = [], [], []
    for h in hs:
        alpha, beta, delta = _lower(h, tol)
        for s in ss:
            coef_a = (a0 * beta + s[0, 1]) * delta * delta if delta_one else 0
            rows.append([float(coef_a), float(-(1 - delta / alpha))])
            rhs.append(float(-beta))
            raw.append((h, s))
    a = np.array(rows)
    b = np.array(rhs)
    x, *_ = np.linalg.lstsq(a, b, rcond=None)
    resid = float(np.abs(a @ x - b).max()) if len(b) else 0.0
    if resid > tol * max(1.0, float(np.abs(b).max())):
        worst = int(np.argmax(np.abs(a @ x - b)))
        h, s = raw[worst]
        lines.append(f"no (a', b') makes Psi vanish: at h = {h.map(_short)}, Psi(a'=b'=0) = "
                     f"{_short(float(psi(s, h, a0, 0, 0, tol)))}, least-squares residual {resid:.3g}")
        lines.append("crazytau conditions are not satisfied")
        return CrazytauAnalysis(None, tuple(lines))
    pair = tuple(_snap(v) for v in x)
    lines.append(f"Psi vanishes with a' = {format_param(pair[0])}, b' = {format_param(pair[1])}")
    return CrazytauAnalysis(pair, tuple(lines))


def _short(x):
    return round(float(x), 6) if isinstance(x, float) else x


def _snap(v: float):
    q = Fraction(v).limit_denominator(10**6)
    return q if abs(float(q) - v) < 1e-9 else v


def crazytau_check(sigma: SymSpan, fam: HFamily, a0, grid=7, tol=None):
    return crazytau_analysis(sigma, fam, a0, grid, tol).pair


# ---- Lie-algebra level w0 conjugation --------------------------------------


def _lie_element(a: Mat, c: Mat) -> Mat:
    return Mat.from_blocks(a, ZERO2, c, -a.T)


@dataclass(frozen=True)
class LieImage:
    """``Ad(w0)`` of the Lie algebra of ``(Sigma, H, coboundary(tau0))``.

    ``in_q`` is False when the image leaves the parabolic algebra.  When
    ``tau_class`` is True the image is ``(sigma, gens, coboundary(tau0_prime))``.
    """

    in_q: bool
    sigma: SymSpan | None = None
    gens: tuple = ()
    tau_class: bool = False
    tau0_prime: Mat | None = None
    reason: str = ""


def lie_w0_image(sigma: SymSpan, gens, tau0: Mat) -> LieImage:
    elems = [_lie_element(ZERO2, s) for s in sigma.basis]
    elems += [_lie_element(x, tau0 @ x + x.T @ tau0) for x in gens]
    vecs = []
    for y in elems:
        z = W0 @ y @ W0_INV
        a, bb, c, _ = z.blocks()
        if not bb.close(ZERO2):
            return LieImage(False, reason=f"Ad(w0) image has upper-right block {bb}")
        vecs.append(list(a.entries()) + [c[0, 0], c[0, 1], c[1, 1]])
    rows, pivots = rref(vecs)
    kernel = [sym(r[4], r[5], r[6]) for r, p in zip(rows, pivots) if p >= 4]
    hpart = [(Mat([r[0:2], r[2:4]]), sym(r[4], r[5], r[6])) for r, p in zip(rows, pivots) if p < 4]
    new_sigma = SymSpan(kernel)
    gens_prime = tuple(a for a, _ in hpart)
    # tau0' with C - (tau0' A + A^t tau0') in Sigma' for every generator
    ann = nullspace([[s[0, 0], s[0, 1], s[1, 1]] for s in new_sigma.basis], 3) if new_sigma.dim else [
        [Fraction(int(i == j)) for j in range(3)] for i in range(3)]
    basis = [sym(1, 0, 0), sym(0, 1, 0), sym(0, 0, 1)]
    eq_rows, eq_rhs = [], []
    for a, c in hpart:
        lin = [e @ a + a.T @ e for e in basis]
        for n in ann:
            eq_rows.append([n[0] * m[0, 0] + n[1] * m[0, 1] + n[2] * m[1, 1] for m in lin])
            eq_rhs.append(n[0] * c[0, 0] + n[1] * c[0, 1] + n[2] * c[1, 1])
    sol = _solve(eq_rows, eq_rhs)
    if sol is None:
        return LieImage(True, new_sigma, gens_prime, False, None, "no tau0' removes the twist")
    return LieImage(True, new_sigma, gens_prime, True, sym(*sol))


def _solve(rows, rhs):
    if not rows:
        return [Fraction(0)] * 3
    red, piv = rref([r + [b] for r, b in zip(rows, rhs)])
    if 3 in piv:
        return None
    sol = [Fraction(0)] * 3
    for r, p in zip(red, piv):
        sol[p] = r[3]
    return sol


# ---- sample-level w0 conjugation -------------------------------------------


@dataclass(frozen=True)
class W0Image:
    sigma: SymSpan
    family: HFamily
    tau0: Mat
    h_samples: tuple
    pair: tuple
    residual: float
    transcript: tuple

    @property
    def triple(self) -> Triple:
        return Triple(self.sigma, self.family, Coboundary(self.tau0))


def hprime_algebra(sigma: SymSpan, gens, a0):
    """Lie algebra of the upper-left block of ``w0 g w0^-1``."""
    out = [B * (-s[0, 1]) for s in sigma.basis]
    out += [Mat([[x[0, 0], 0], [-a0 * x[1, 0], -x[1, 1]]]) for x in gens]
    rows, _ = rref([list(m.entries()) for m in out])
    return [Mat([r[0:2], r[2:4]]) for r in rows]


def family_of_algebra(gens) -> HFamily:
    """A catalog family (possibly conjugated) with Lie algebra ``span(gens)`` inside T."""
    lab = classify_subalgebra(LieSub("sigma3", gens))
    return exponentiate(lab).conjugate(lab.witness.inv())


def w0_conjugate(sigma: SymSpan, fam: HFamily, a0, grid=7, tol=None) -> W0Image:
    """``w0 (Sigma, H, a0 coboundary) w0^-1`` from the closed-form block formulas.

    Sigma' is spanned by ``[[c - a0 beta^2, beta], [beta, 0]]`` over the elements
    ``sigma = c sigma3 - a0 beta sigma5`` in Sigma paired with unipotent
    ``h = [[1, 0], [beta, 1]]`` in H; H' consists of the blocks
    ``[[alpha, 0], [-(a0 beta + b) alpha, 1/delta]]``.  Each formula is checked
    against direct 4x4 conjugation.
    """
    an = crazytau_analysis(sigma, fam, a0, grid, tol)
    if not an.ok:
        raise CrazytauFailed("w0 image is not a coboundary twist", an.transcript)
    a1, b1 = an.pair
    tau = Coboundary(SIGMA4 * a0)
    pts = grid_points(grid)
    residual = 0.0
    has_unipotents = span_contains(fam.generators(), B)
    new_basis = []
    for beta in (pts if has_unipotents else [Fraction(0)]):
        for c in pts:
            s = SIGMA3 * c - SIGMA5 * (a0 * beta)
            if not sigma.contains(s):
                continue
            h = Mat([[1, 0], [beta, 1]])
            formula = sym(c - a0 * beta * beta, beta, 0)
            direct = _conj_w0(QElement(s + tau.value(h), h))
            residual = max(residual, (direct.sigma - formula).norm(), (direct.h - I2).norm())
            new_basis.append(formula)
    new_sigma = SymSpan(new_basis)
    hps = []
    for h in fam.samples(grid):
        alpha, beta, delta = _lower(h)
        for s in _sigma_samples(sigma):
            formula = Mat([[alpha, 0], [-(a0 * beta + s[0, 1]) * alpha, 1 / delta]])
            direct = _conj_w0(QElement(s + tau.value(h), h))
            residual = max(residual, (direct.h - formula).norm())
            hps.append(formula)
    fam_prime = family_of_algebra(hprime_algebra(sigma, fam.generators(), a0))
    for hp in hps:
        x = fam_prime.locate(hp, 1e-6)
        residual = max(residual, float("inf") if x is None else (fam_prime.element(x) - hp).norm())
    tau0 = sym(0, b1, a1)
    return W0Image(new_sigma, fam_prime, tau0, tuple(hps), an.pair, residual, an.transcript)


def _conj_w0(x: QElement) -> QElement:
    m = W0 @ x.matrix @ W0_INV
    a, _, c, _ = m.blocks()
    return QElement(c @ a.inv(), a)


# ---- canonical form inside sigma4^perp --------------------------------------


def wcanonical_reduce(sigma: SymSpan):
    """``(t, canonical)`` with ``t`` lower triangular and ``t.dagger(Sigma) = span{canonical}``."""
    if sigma.dim != 1:
        raise ValueError("wcanonical_reduce needs a one-dimensional Sigma")
    s0 = sigma.basis[0]
    if not is_zero(s0[1, 1]):
        raise SigmaNotInSigma4Perp(f"{s0} is not in sigma4^perp")
    c, b = s0[0, 0], s0[0, 1]
    if is_zero(b):
        return I2, SIGMA3
    # t = [[1, 0], [c/2, b]] gives t.dagger([[c, b], [b, 0]]) = sigma5
    t = Mat([[1, 0], [c / 2, b]])
    assert dagger(t, s0) == SIGMA5 or dagger(t, s0).close(SIGMA5, 1e-12)
    return t, SIGMA5


# ---- Theorem labels ----------------------------------------------------------

THEOREM = {
    "(2.1)": ("(1.ii)", "alpha"), "(2.2)": ("(2.ii)", "alpha"), "(2.3)": ("(3.ii)", None),
    "(2.4)": ("(3.iii)", None), "(2.5)": ("(3.v)", "alpha"),
    "(3.1)": ("(1.i)", None), "(3.2)": ("(2.i)", None), "(3.3)": ("(3.vi)", None),
    "(3.4)": ("(3.vii)", None), "(3.5)": ("(3.viii)", "gamma"), "(3.6)": ("(1.iv)", "alpha"),
    "(3.7)": ("(2.iv)", "alpha"), "(3.8)": ("(3.x)", None), "(3.9)": ("(3.xi)", None),
    "(4.1)": ("(3.i)", None), "(4.2)": ("(1.iii)", None), "(4.3)": ("(2.iii)", None),
    "(4.4)": ("(3.xvi)", "gamma"), "(5.1)": ("(3.ix)", None),
}
_BY_ENTRY = {e: (lab, kind) for lab, (e, kind) in THEOREM.items()}
_FOLDED = {"(2.5)", "(4.4)"}


@dataclass(frozen=True)
class SpClassLabel:
    ident: str
    param: object = None

    @property
    def kind(self):
        return THEOREM[self.ident][1]

    @property
    def dim(self) -> int:
        return int(self.ident[1])

    @property
    def entry(self) -> MACatalogEntry:
        return ENTRY[THEOREM[self.ident][0]]

    def representative(self) -> Triple:
        return self.entry.triple(self.param)

    def __str__(self):
        if self.kind is None:
            return self.ident
        return f"{self.ident}:{self.kind}={format_param(self.param)}"


def theorem_label(entry_ident: str, param=None):
    """The Theorem label when the catalog entry is itself a representative, else None."""
    if entry_ident not in _BY_ENTRY:
        return None
    lab, _ = _BY_ENTRY[entry_ident]
    if lab in _FOLDED and not (param is not INF and -1 <= param <= 0):
        return None
    return SpClassLabel(lab, param)


# ---- witnesses ---------------------------------------------------------------


@dataclass(frozen=True)
class ConjugacyWitness:
    """Factors ``(name, matrix)`` listed right to left in order of application."""

    factors: tuple

    @property
    def matrix(self) -> Mat:
        m = I4
        for _, f in self.factors:
            m = f @ m
        return m

    def describe(self) -> str:
        names = [name for name, m in reversed(self.factors) if m != I4]
        return " . ".join(names) or "identity"

    @property
    def is_identity(self) -> bool:
        return self.matrix == I4


def membership_residual(m: Mat, target: Triple) -> float:
    """How far the 4x4 matrix ``m`` is from the group named by ``target``."""
    a, b, c, _ = m.blocks()
    res = b.norm()
    h = a
    try:
        s = c @ h.inv()
    except (ZeroDivisionError, SptriError):
        return float("inf")
    res = max(res, abs(float(s[0, 1] - s[1, 0])))
    s = (s + s.T) / 2
    x = target.h.locate(h, 1e-6)
    if x is None:
        return float("inf")
    res = max(res, (target.h.element(x) - h).norm())
    res = max(res, (m.block(1, 1) - h.inv().T).norm())
    res = max(res, target.sigma.distance(s - target.tau.value(h, x)))
    return res


def witness_residual(w: Mat, source: Triple, target: Triple, grid=7, n=7) -> float:
    wi = w.inv()
    worst = 0.0
    for x in source.sample_elements(grid, limit=n):
        worst = max(worst, membership_residual(w @ x.matrix @ wi, target))
    return worst


# ---- classification ---------------------------------------------------------


@dataclass(frozen=True)
class Candidate:
    reduction: MAReduction
    witness: ConjugacyWitness
    route: str

    @property
    def label(self):
        return theorem_label(self.reduction.entry.ident, self.reduction.param)


@dataclass
class Classification:
    label: SpClassLabel
    witness: ConjugacyWitness
    source_entry: str
    candidates: list
    certificates: list = field(default_factory=list)
    transcripts: list = field(default_factory=list)
    residual: float = 0.0

    @property
    def target(self) -> Triple:
        return self.label.representative()


_SIGMA3_BASE = Mat([[Fraction(1, 2), Fraction(1, 2)], [1, -1]])  # maps Sigma2 onto span{sigma5}


def route_prep(entry: MACatalogEntry):
    """MA element moving the entry into (sigma4^perp, T), or a certificate string."""
    name = entry.sigma_name
    if name == "Sigma3":
        return I2, None
    if name == "Sigma3perp":
        return SIGMA5, None
    if name == "Sigma2":
        return _SIGMA3_BASE, None
    if name == "Sigma1":
        return None, "Sigma1 is spanned by a definite matrix (det > 0), so it never fits in sigma4^perp"
    if name == "Sigma2perp":
        return None, "Sigma2^perp contains the definite sigma1, so it never fits in sigma4^perp"
    return None, "Sigma1^perp has no nonzero degenerate element, so it never equals a conjugate of sigma4^perp"


def w0_candidates(entry: MACatalogEntry, param, tol=None):
    """Catalog entries reachable from the entry through one w0 step, with witnesses."""
    t = entry.triple(param)
    p, cert = route_prep(entry)
    if p is None:
        return [], [cert]
    pi = p.inv()
    sig_p = SymSpan([dagger(p, b) for b in t.sigma.basis])
    gens_p = [p @ x @ pi for x in t.h.generators()]
    notes = []
    if not all(SIGMA4_PERP.contains(b) for b in sig_p.basis) or not all(is_zero(x[0, 1]) for x in gens_p):
        return [], [f"{entry.ident}: no MA move into (sigma4^perp, T)"]
    delta_one = all(is_zero(x[1, 1]) for x in gens_p)
    out = []
    for a0 in ([Fraction(0), Fraction(1)] if delta_one else [Fraction(0)]):
        img = lie_w0_image(sig_p, gens_p, SIGMA4 * a0)
        if not img.in_q:
            notes.append(f"{entry.ident} a0={a0}: {img.reason}")
            continue
        if not img.tau_class:
            an = crazytau_analysis(sig_p, t.h.conjugate(p), a0)
            notes.append(f"{entry.ident} a0={a0}: image twist is not a coboundary; " + "; ".join(an.transcript[1:]))
            continue
        if img.sigma.dim not in (1, 2) or not img.gens:
            notes.append(f"{entry.ident} a0={a0}: image has dim Sigma = {img.sigma.dim}, dim H = {len(img.gens)}")
            continue
        red = ma_reduce_algebra(img.sigma, list(img.gens), tol)
        factors = (
            ("g(0,p)", g(h=p).matrix),
            ("g(a0 sigma4,I)", g(sigma=SIGMA4 * a0).matrix),
            ("w0", W0),
            ("g(-tau0',I)", g(sigma=-img.tau0_prime).matrix),
            ("g(0,h)", g(h=red.h).matrix),
        )
        out.append((red, factors, f"w0 route a0={a0}"))
    return out, notes


def sp_classify(t: Triple, tol=None, grid=7, verify=True) -> Classification:
    """Theorem label of a class-E triple with a verified conjugating witness."""
    if not is_class_E(t):
        raise NotClassE("sp_classify needs a class-E triple")
    if t.sigma.dim not in (1, 2):
        raise NotClassE("only 1 <= dim Sigma <= 2 is classified")
    if t.tau.kind != "zero":
        raise NotClassE("pass the untwisted representative (tau = 0)")
    red0 = ma_reduce(t, tol)
    first = ("g(0,h)", g(h=red0.h).matrix)
    cands = [Candidate(red0, ConjugacyWitness((first,)), "MA")]
    routes, notes = w0_candidates(red0.entry, red0.param, tol)
    for red, factors, route in routes:
        cands.append(Candidate(red, ConjugacyWitness((first,) + factors), route))
    labelled = [c for c in cands if c.label is not None]
    distinct = {(c.label.ident, c.label.param) for c in labelled}
    if len(distinct) != 1:
        raise ArithmeticError(
            f"{red0.label}: reachable representatives {sorted(map(str, distinct))} (expected exactly one)")
    best = labelled[0]
    cls = Classification(best.label, best.witness, red0.label, cands, notes)
    if verify:
        cls.residual = witness_residual(best.witness.matrix, t, best.label.representative(), grid)
    return cls


def certificate(ta: Triple, tb: Triple, tol=None):
    """Why two class-E triples are not conjugate (None when they are)."""
    ca, cb = sp_classify(ta, tol, verify=False), sp_classify(tb, tol, verify=False)
    if (ca.label.ident, ca.label.param) == (cb.label.ident, cb.label.param):
        return None
    reasons = []
    if ta.sigma.dim != tb.sigma.dim:
        reasons.append(f"dim Sigma differs: {ta.sigma.dim} vs {tb.sigma.dim}")
    if ta.h.dim != tb.h.dim:
        reasons.append(f"dim H differs: {ta.h.dim} vs {tb.h.dim}")
    if ca.label.ident != cb.label.ident:
        reasons.append(f"Theorem families differ: {ca.label} vs {cb.label}")
    else:
        reasons.append(f"parameters differ within {ca.label.ident}: {format_param(ca.label.param)} vs "
                       f"{format_param(cb.label.param)}")
    reasons += ca.certificates + cb.certificates
    return reasons


@dataclass(frozen=True)
class PairResult:
    conjugate: bool
    witness: Mat | None
    residual: float
    label_a: SpClassLabel
    label_b: SpClassLabel
    certificate: tuple = ()


def conjugacy_witness(ta: Triple, tb: Triple, tol=None, grid=7) -> PairResult:
    """Either a verified ``W`` with ``W ta W^-1 = tb`` or a non-conjugacy certificate."""
    ca, cb = sp_classify(ta, tol, grid, verify=False), sp_classify(tb, tol, grid, verify=False)
    if (ca.label.ident, ca.label.param) != (cb.label.ident, cb.label.param):
        return PairResult(False, None, 0.0, ca.label, cb.label, tuple(certificate(ta, tb, tol)))
    w = cb.witness.matrix.inv() @ ca.witness.matrix
    return PairResult(True, w, witness_residual(w, ta, tb, grid), ca.label, cb.label)
