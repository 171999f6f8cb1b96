"""The (Sigma, H, tau) model of subgroups of Q.

A triple names the group ``{g(sigma + tau(h), h) : sigma in Sigma, h in H}``.
``Sigma`` is a subspace of symmetric matrices, ``H`` a catalog family and
``tau`` a map from ``H`` to symmetric matrices satisfying the cocycle rule
``tau(h) + h.dagger(tau(h')) - tau(h h') in Sigma``.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import InsufficientSamples, NotInQ, SigmaNotInSpan, SpecError, TauNotZero
from .families import INF, HFamily, param_samples, parse_param
from .linalg import auto_tol, in_span, nullspace, rref
from .matrix import I2, ZERO2, SIGMA1, SIGMA2, SIGMA3, SIGMA4, SIGMA5, Mat, dagger, matrix_from_data, sym
from .parabolic import QElement, q_member
from .scalar import NUMERIC, is_symbolic, is_zero, to_scalar

# symmetric matrix <-> coordinates (c, b, a) of [[c, b], [b, a]]


def _coords(s: Mat):
    return [s[0, 0], s[0, 1], s[1, 1]]


def _from_coords(v) -> Mat:
    return sym(v[0], v[1], v[2])


class SymSpan:
    """A subspace of 2x2 symmetric matrices, stored in reduced echelon form."""

    __slots__ = ("basis", "_key")

    def __init__(self, matrices=(), tol=None):
        vecs = [_coords(m) for m in matrices]
        rows, _ = rref(vecs, tol) if vecs else ([], [])
        self.basis = tuple(_from_coords(r) for r in rows)
        self._key = tuple(tuple(r) for r in rows)

    @classmethod
    def of(cls, *matrices):
        return cls(matrices)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def is_exact(self) -> bool:
        return all(m.is_exact for m in self.basis)

    def contains(self, s: Mat, tol=None) -> bool:
        tol = auto_tol(tol, s, *self.basis)
        if tol:
            return self.distance(s) <= tol * max(1.0, s.norm())
        return in_span(_coords(s), [_coords(b) for b in self.basis], 0)

    def distance(self, s: Mat) -> float:
        """Euclidean distance in (c, b, a) coordinates from ``s`` to the span."""
        v = np.array([float(x) for x in _coords(s)])
        if not self.basis:
            return float(np.abs(v).max())
        a = np.array([[float(x) for x in _coords(b)] for b in self.basis]).T
        x, *_ = np.linalg.lstsq(a, v, rcond=None)
        return float(np.abs(a @ x - v).max())

    def element(self, coeffs) -> Mat:
        out = ZERO2
        for k, m in zip(coeffs, self.basis):
            out = out + m * k
        return out

    def perp(self):
        """Orthogonal complement for the trace form ``tr(s t) = cc' + 2bb' + aa'``."""
        rows = [[c, 2 * b, a] for c, b, a in (_coords(m) for m in self.basis)]
        tol = auto_tol(None, *self.basis)
        return SymSpan([_from_coords(v) for v in nullspace(rows, 3, tol)], tol)

    def image(self, h: Mat):
        """``h.dagger`` applied to the subspace."""
        return SymSpan([dagger(h, m) for m in self.basis])

    def is_invariant(self, h: Mat, tol=None) -> bool:
        return all(self.contains(dagger(h, m), tol) for m in self.basis)

    def reduce(self, s: Mat) -> Mat:
        """``s`` minus its least-squares component in the span (exact when possible)."""
        if not self.basis:
            return s
        if self.is_exact and s.is_exact:
            v = _coords(s)
            rows, pivots = rref([_coords(b) for b in self.basis], 0)
            for r, p in zip(rows, pivots):
                f = v[p]
                v = [x - f * y for x, y in zip(v, r)]
            return _from_coords(v)
        a = np.array([[float(x) for x in _coords(b)] for b in self.basis]).T
        v = np.array([float(x) for x in _coords(s)])
        x, *_ = np.linalg.lstsq(a, v, rcond=None)
        return _from_coords(list(v - a @ x))

    def equals(self, other, tol=None) -> bool:
        return self.dim == other.dim and all(self.contains(b, tol) for b in other.basis)

    def __eq__(self, other):
        return isinstance(other, SymSpan) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __str__(self):
        return "span{" + ", ".join(str(b) for b in self.basis) + "}"

    __repr__ = __str__


SPANS = {
    "Sigma1": SymSpan.of(SIGMA1),
    "Sigma2": SymSpan.of(SIGMA2),
    "Sigma3": SymSpan.of(SIGMA3),
    "Sigma1perp": SymSpan.of(SIGMA2, SIGMA5),
    "Sigma2perp": SymSpan.of(SIGMA1, SIGMA5),
    "Sigma3perp": SymSpan.of(SIGMA4, SIGMA5),
    "sigma4perp": SymSpan.of(SIGMA3, SIGMA5),
    "full": SymSpan.of(SIGMA3, SIGMA4, SIGMA5),
    "zero": SymSpan(),
}


def span_name(s: SymSpan) -> str | None:
    for name, ref in SPANS.items():
        if s.equals(ref):
            return name
    return None


# ---- tau maps -------------------------------------------------------------


class TauMap:
    kind = ""

    def value(self, h: Mat, params=None, backend=NUMERIC) -> Mat:
        raise NotImplementedError


@dataclass(frozen=True)
class Zero(TauMap):
    kind = "zero"

    def value(self, h, params=None, backend=NUMERIC):
        return ZERO2


@dataclass(frozen=True)
class Coboundary(TauMap):
    """``tau(h) = tau0 - h.dagger(tau0)``: the defect of conjugating by ``g(tau0, I)``."""

    tau0: Mat
    kind = "coboundary"

    def value(self, h, params=None, backend=NUMERIC):
        t0 = self.tau0.map(backend.convert) if backend is not NUMERIC else self.tau0
        return t0 - dagger(h, t0)


@dataclass(frozen=True)
class Homomorphic(TauMap):
    """A closed-form map ``fn(h, backend) -> symmetric matrix``."""

    fn: object
    label: str = "closed-form"
    kind = "homomorphic"

    def value(self, h, params=None, backend=NUMERIC):
        return self.fn(h, backend)


@dataclass(frozen=True)
class Sampled(TauMap):
    """A finite table ``params -> (h, tau(h))``; lookups fall back to matching ``h``."""

    table: tuple
    kind = "sampled"

    def value(self, h, params=None, backend=NUMERIC):
        if params is not None:
            key = tuple(to_scalar(x) for x in params)
            for p, _, t in self.table:
                if p == key:
                    return t
        for _, hh, t in self.table:
            if hh.close(h, auto_tol(None, h, hh) or 1e-9):
                return t
        raise KeyError(f"no sampled tau value for {h}")


def giovanni_tau(h: Mat, backend=NUMERIC) -> Mat:
    """``tau(h) = -log(h_00) sigma5``, a cocycle on the diagonal family diag(e^t, e^-t)."""
    return SIGMA5 * (-backend.log(h[0, 0]))


GIOVANNI = Homomorphic(giovanni_tau, "-log(h00)*sigma5")


# ---- triples --------------------------------------------------------------


@dataclass(frozen=True)
class Triple:
    sigma: SymSpan
    h: HFamily
    tau: TauMap = field(default_factory=Zero)

    def element(self, s: Mat, params, backend=NUMERIC) -> QElement:
        return build_group_element(self, s, params, backend)

    def samples(self, grid=7, limit=None):
        """Sampled group elements: Sigma coefficients and H parameters on the grid."""
        hs = param_samples(self.h.dim, grid)
        cs = param_samples(self.sigma.dim, grid) if self.sigma.dim else [()]
        out = []
        n = max(len(hs), len(cs))
        for i in range(n if limit is None else min(n, limit)):
            x, c = hs[i % len(hs)], cs[(3 * i + 1) % len(cs)]
            out.append((self.sigma.element(c), x))
        return out

    def sample_elements(self, grid=7, limit=None):
        return [self.element(s, x) for s, x in self.samples(grid, limit)]

    def with_tau(self, tau):
        return Triple(self.sigma, self.h, tau)

    def describe(self) -> str:
        name = span_name(self.sigma) or str(self.sigma)
        tail = "" if self.tau.kind == "zero" else f", tau={self.tau.kind}"
        return f"({name}, {self.h.describe()}{tail})"


def build_group_element(t: Triple, s: Mat, params, backend=NUMERIC) -> QElement:
    if not t.sigma.contains(s):
        raise SigmaNotInSpan(f"{s} is not in {t.sigma}")
    h = t.h.element(params, backend)
    return QElement(s + t.tau.value(h, params, backend), h)


def default_pairs(dim, grid=7):
    """Parameter pairs for cocycle and homomorphism checks."""
    xs = param_samples(dim, grid)
    if dim <= 1:
        return list(itertools.product(xs, xs))
    n = len(xs)
    return [(xs[i], xs[(3 * i + 1) % n]) for i in range(n)]


@dataclass(frozen=True)
class CocycleReport:
    passed: bool
    worst: float
    exact_zero: bool
    pairs: int


def check_cocycle(t: Triple, pairs=None, tol=None, backend=NUMERIC, grid=7) -> CocycleReport:
    """Check ``tau(h) + h.dagger(tau(h')) - tau(h h') in Sigma`` on sampled pairs."""
    pairs = default_pairs(t.h.dim, grid) if pairs is None else pairs
    worst, all_zero, ok = 0.0, True, True
    for x, y in pairs:
        h1, h2 = t.h.element(x, backend), t.h.element(y, backend)
        h12 = h1 @ h2
        defect = t.tau.value(h1, x, backend) + dagger(h1, t.tau.value(h2, y, backend)) - t.tau.value(h12, None, backend)
        if all(is_zero(e) for e in defect.entries()):
            continue
        all_zero = False
        if any(is_symbolic(e) for e in defect.entries()):
            defect = defect.map(lambda e: float(e))
        d = t.sigma.distance(defect)
        worst = max(worst, d)
        eff = auto_tol(tol, defect, *t.sigma.basis)
        if not t.sigma.contains(defect, eff):
            ok = False
    return CocycleReport(ok, worst, all_zero, len(pairs))


def tau_equivalent(t1: TauMap, t2: TauMap, sigma: SymSpan, fam: HFamily, samples=None, tol=None, grid=7) -> bool:
    samples = param_samples(fam.dim, grid) if samples is None else samples
    for x in samples:
        h = fam.element(x)
        diff = t2.value(h, x) - t1.value(h, x)
        if not sigma.contains(diff, auto_tol(tol, diff, *sigma.basis)):
            return False
    return True


def _sym_basis():
    return [sym(1, 0, 0), sym(0, 1, 0), sym(0, 0, 1)]


def detect_coboundary(tau: TauMap, fam: HFamily, samples=None, tol=None, grid=7):
    """Solve ``tau(h_i) = tau0 - h_i.dagger(tau0)`` for ``tau0``; None if inconsistent."""
    samples = param_samples(fam.dim, grid) if samples is None else list(samples)
    hs = [(x, fam.element(x)) for x in samples]
    distinct = [h for _, h in hs if not h.close(I2, 1e-12)]
    if len(distinct) < 3 and fam.dim > 0:
        raise InsufficientSamples("need at least 3 non-identity samples")
    rows, rhs = [], []
    for x, h in hs:
        cols = [_coords(e - dagger(h, e)) for e in _sym_basis()]
        target = _coords(tau.value(h, x))
        for i in range(3):
            rows.append([cols[k][i] for k in range(3)])
            rhs.append(target[i])
    tol = auto_tol(tol, rows, rhs)
    if not tol:
        aug = [r + [b] for r, b in zip(rows, rhs)]
        red, piv = rref(aug, 0)
        if 3 in piv:
            return None
        sol = [Fraction(0)] * 3
        for r, p in zip(red, piv):
            sol[p] = r[3]
        return _from_coords(sol)
    a = np.array([[float(v) for v in r] for r in rows])
    b = np.array([float(v) for v in rhs])
    x, *_ = np.linalg.lstsq(a, b, rcond=None)
    scale = max(1.0, float(np.abs(b).max()) if len(b) else 1.0)
    if float(np.abs(a @ x - b).max()) > tol * scale:
        return None
    return _from_coords([_snap(v) for v in x])


def _snap(v: float):
    """Round a float to a nearby simple rational when it is within 1e-12."""
    q = Fraction(v).limit_denominator(1000)
    return q if abs(float(q) - v) < 1e-12 else v


def is_class_E(t: Triple, tol=None, grid=7) -> bool:
    if t.sigma.dim < 1 or t.h.dim < 1:
        return False
    if t.tau.kind == "zero":
        return True
    return tau_equivalent(Zero(), t.tau, t.sigma, t.h, tol=tol, grid=grid)


def dual(t: Triple) -> Triple:
    if t.tau.kind != "zero":
        raise TauNotZero("duality is defined for tau = 0")
    return Triple(t.sigma.perp(), t.h.transpose(), Zero())


def invariance_defect(t: Triple, grid=7) -> float:
    """Worst relative distance of ``h.dagger(sigma_i)`` from Sigma over sampled h."""
    worst = 0.0
    for x in param_samples(t.h.dim, grid):
        h = t.h.element(x)
        for b in t.sigma.basis:
            img = dagger(h, b)
            worst = max(worst, t.sigma.distance(img) / max(1.0, float(img.norm())))
    return worst


def is_invariant(t: Triple, tol=None, grid=7) -> bool:
    return all(t.sigma.is_invariant(t.h.element(x), tol) for x in param_samples(t.h.dim, grid))


# ---- extraction from samples ---------------------------------------------


@dataclass(frozen=True)
class Extracted:
    """Result of :func:`extract_triple`.

    ``h_samples`` are the distinct H-parts; ``tau`` is a sampled section
    reduced modulo Sigma; ``diagnostics`` contains ``"DiscreteSigma"`` when
    the kernel sigma-parts look like a lattice rather than a subspace.
    """

    sigma: SymSpan
    h_samples: tuple
    tau: Sampled
    diagnostics: tuple
    kernel: tuple

    @property
    def discrete_sigma(self) -> bool:
        return "DiscreteSigma" in self.diagnostics

    @property
    def trivial(self) -> bool:
        return self.sigma.dim == 0 and len(self.h_samples) <= 1


def extract_triple(elements, tol=None) -> Extracted:
    tol = auto_tol(tol, *elements)
    qs = []
    for m in elements:
        try:
            qs.append(q_member(m, tol))
        except (NotInQ, SpecError):
            raise
        except Exception as exc:
            raise NotInQ(str(exc)) from exc
    kernel = [q.sigma for q in qs if q.h.close(I2, tol)]
    sigma = SymSpan(kernel, tol)
    diags = []
    nonzero = [k for k in kernel if not k.close(ZERO2, tol)]
    for k in nonzero:
        has_neg = any(k2.close(-k, tol) for k2 in kernel)
        has_half = any(k2.close(k / 2, tol) for k2 in kernel)
        if not has_neg and not has_half:
            diags.append("DiscreteSigma")
            break
    table, hs = [], []
    for q in qs:
        if any(q.h.close(h0, tol) for h0 in hs):
            continue
        hs.append(q.h)
        t = ZERO2 if q.h.close(I2, tol) else sigma.reduce(q.sigma)
        table.append(((len(hs) - 1,), q.h, t))
    if sigma.dim == 0 and len(hs) <= 1:
        diags.append("trivial")
    return Extracted(sigma, tuple(hs), Sampled(tuple(table)), tuple(diags), tuple(kernel))


# ---- group-spec files -----------------------------------------------------

SCHEMA_VERSION = 1
_TOP_KEYS = {"schema_version", "sigma_basis", "h_family", "tau", "name"}
_FAMILY_KEYS = {"name", "alpha", "gamma", "transposed", "conjugator"}
_TAU_KEYS = {"kind", "tau0"}
_INF_TAGS = {"H_alpha(sigma1)": "H_inf(sigma1)", "H_alpha(sigma2)": "H_inf(sigma2)"}


def _check_keys(obj, allowed, where):
    if not isinstance(obj, dict):
        raise SpecError("expected an object", where)
    extra = set(obj) - allowed
    if extra:
        raise SpecError(f"unknown keys {sorted(extra)}; allowed {sorted(allowed)}", where)


def _matrix(data, where):
    try:
        return matrix_from_data(data)
    except (ValueError, TypeError) as exc:
        raise SpecError(str(exc), where) from exc


def family_from_spec(d, where="h_family") -> HFamily:
    _check_keys(d, _FAMILY_KEYS, where)
    if "name" not in d:
        raise SpecError("missing family name", f"{where}.name")
    name = d["name"]
    param = None
    for key in ("alpha", "gamma"):
        if key in d:
            try:
                param = parse_param(d[key])
            except (ValueError, TypeError) as exc:
                raise SpecError(str(exc), f"{where}.{key}") from exc
    if param is INF:
        if name not in _INF_TAGS:
            raise SpecError(f"{name} has no infinite parameter value", where)
        name, param = _INF_TAGS[name], None
    transposed = d.get("transposed", False)
    if not isinstance(transposed, bool):
        raise SpecError("must be true or false", f"{where}.transposed")
    conj = _matrix(d["conjugator"], f"{where}.conjugator") if "conjugator" in d else I2
    if conj.n != 2:
        raise SpecError("conjugator must be 2x2", f"{where}.conjugator")
    return HFamily(name, param, transposed, conj)


def triple_from_spec(d) -> Triple:
    _check_keys(d, _TOP_KEYS, "spec")
    if d.get("schema_version") != SCHEMA_VERSION:
        raise SpecError(f"expected schema_version {SCHEMA_VERSION}", "schema_version")
    if "sigma_basis" not in d or not isinstance(d["sigma_basis"], list):
        raise SpecError("expected a list of symmetric matrices", "sigma_basis")
    mats = []
    for i, m in enumerate(d["sigma_basis"]):
        mat = _matrix(m, f"sigma_basis[{i}]")
        if mat.n != 2 or mat != mat.T:
            raise SpecError("must be a symmetric 2x2 matrix", f"sigma_basis[{i}]")
        mats.append(mat)
    sigma = SymSpan(mats)
    if sigma.dim != len(mats):
        raise SpecError("basis is linearly dependent", "sigma_basis")
    if "h_family" not in d:
        raise SpecError("missing", "h_family")
    fam = family_from_spec(d["h_family"])
    tau_d = d.get("tau", {"kind": "zero"})
    _check_keys(tau_d, _TAU_KEYS, "tau")
    kind = tau_d.get("kind")
    if kind == "zero":
        tau = Zero()
    elif kind == "coboundary":
        if "tau0" not in tau_d:
            raise SpecError("missing", "tau.tau0")
        t0 = _matrix(tau_d["tau0"], "tau.tau0")
        if t0.n != 2 or t0 != t0.T:
            raise SpecError("must be a symmetric 2x2 matrix", "tau.tau0")
        tau = Coboundary(t0)
    else:
        raise SpecError(f"unknown kind {kind!r}; valid: zero, coboundary", "tau.kind")
    return Triple(sigma, fam, tau)


def _scalar_out(x):
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    return float(x)


def _matrix_out(m: Mat):
    return [[_scalar_out(x) for x in r] for r in m.rows]


def family_to_spec(f: HFamily) -> dict:
    d = {"name": f.tag}
    if f.tag in ("H_inf(sigma1)", "H_inf(sigma2)"):
        d = {"name": f.tag.replace("inf", "alpha"), "alpha": "inf"}
    elif f.base.kind:
        d[f.base.kind] = _scalar_out(f.param)
    d["transposed"] = f.transposed
    if f.conjugator != I2:
        d["conjugator"] = _matrix_out(f.conjugator)
    return d


def triple_to_spec(t: Triple) -> dict:
    d = {
        "schema_version": SCHEMA_VERSION,
        "sigma_basis": [_matrix_out(b) for b in t.sigma.basis],
        "h_family": family_to_spec(t.h),
    }
    if t.tau.kind == "coboundary":
        d["tau"] = {"kind": "coboundary", "tau0": _matrix_out(t.tau.tau0)}
    elif t.tau.kind == "zero":
        d["tau"] = {"kind": "zero"}
    else:
        raise SpecError(f"tau of kind {t.tau.kind} cannot be written to a spec", "tau")
    return d


def loads_spec(text: str) -> Triple:
    try:
        data = json.loads(text, parse_float=Fraction)
    except json.JSONDecodeError as exc:
        raise SpecError(f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    return triple_from_spec(data)


def load_spec(path) -> Triple:
    with open(path, encoding="utf-8") as fh:
        return loads_spec(fh.read())


def dumps_spec(t: Triple) -> str:
    d = triple_to_spec(t)
    body = ",\n".join(f"  {json.dumps(k)}: {json.dumps(v)}" for k, v in d.items())
    return "{\n" + body + "\n}"
