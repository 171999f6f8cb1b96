"""Exact algebraic identities of the parabolic Q, checked on rational inputs.

Each ``check_*`` function returns True when the identity holds with exact
equality of :class:`Mat` values.  :func:`random_instances` draws rational
inputs so the same checks serve the test suite and ``verify-theorem``.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .bruhat import W0, WeylElement
from .matrix import B, SIGMA3, SIGMA4, SIGMA5, ZERO2, Mat, dagger, pairing, sharp, sym
from .parabolic import QElement, g

_SIGMA5_BLOCK = Mat.from_blocks(SIGMA5, ZERO2, ZERO2, SIGMA5)


def rand_q(rng: random.Random, lo=-5, hi=5) -> Fraction:
    return Fraction(rng.randint(lo, hi), rng.randint(1, 4))


def rand_nonzero(rng: random.Random) -> Fraction:
    x = Fraction(0)
    while x == 0:
        x = rand_q(rng)
    return x


def rand_sym(rng):
    return sym(rand_q(rng), rand_q(rng), rand_q(rng))


def rand_gl(rng):
    while True:
        m = Mat([[rand_q(rng), rand_q(rng)], [rand_q(rng), rand_q(rng)]])
        if m.det() != 0:
            return m


def rand_lower(rng):
    return Mat([[rand_nonzero(rng), 0], [rand_q(rng), rand_nonzero(rng)]])


def check_group_law(s1, h1, s2, h2) -> bool:
    return g(s1, h1).matrix @ g(s2, h2).matrix == g(s1 + dagger(h1, s2), h1 @ h2).matrix


def check_inverse(s, h) -> bool:
    inv = g(-(h.T @ s @ h), h.inv())
    return g(s, h).matrix @ inv.matrix == Mat.identity(4) and inv == g(-dagger(h.inv(), s), h.inv())


def check_dagger_action(h1, h2, s) -> bool:
    return dagger(h1 @ h2, s) == dagger(h1, dagger(h2, s))


def check_perp_pairing(h, tau, s) -> bool:
    """``<(h^t)^dagger[tau], s> = <tau, h^dagger[s]>``."""
    return pairing(dagger(h.T, tau), s) == pairing(tau, dagger(h, s))


def check_sh(b, c) -> bool:
    lhs = W0 @ g(SIGMA5 * b + SIGMA3 * c).matrix @ W0.inv()
    rhs = Mat([[1, 0, 0, 0], [-b, 1, 0, 0], [c, 0, 1, b], [0, 0, 0, 1]])
    return lhs == rhs


def check_nots1() -> bool:
    lhs = _SIGMA5_BLOCK @ WeylElement("s0", "I").matrix @ _SIGMA5_BLOCK
    return lhs == WeylElement("s1", "I").matrix


def check_tauone(a0, alpha, beta, delta) -> bool:
    """``tau1(h) h = a0 (sigma4 h - h^sharp sigma4)`` in closed form, ``h = [[alpha, 0], [beta, delta]]``."""
    h = Mat([[alpha, 0], [beta, delta]])
    tau1 = SIGMA4 * a0 - dagger(h, SIGMA4 * a0)
    closed = Mat([[0, beta / (alpha * delta)], [beta, delta - 1 / delta]]) * a0
    return tau1 @ h == (SIGMA4 @ h - sharp(h) @ SIGMA4) * a0 == closed


def check_ell_conj(a, b, c) -> bool:
    """``l B l^-1 = (a/c) B`` and ``l sigma4 l^-1 = -(b/c) B + sigma4`` for ``l = [[c, 0], [b, a]]``."""
    ell = Mat([[c, 0], [b, a]])
    li = ell.inv()
    return ell @ B @ li == B * (a / c) and ell @ SIGMA4 @ li == B * (-b / c) + SIGMA4


def check_q_closure(s1, h1, s2, h2) -> bool:
    """Products of Q elements compose through :class:`QElement` without leaving Q."""
    x = QElement(s1, h1) @ QElement(s2, h2)
    return x.matrix == g(s1, h1).matrix @ g(s2, h2).matrix


IDENTITIES = {
    "group-law": lambda r: check_group_law(rand_sym(r), rand_gl(r), rand_sym(r), rand_gl(r)),
    "inverse": lambda r: check_inverse(rand_sym(r), rand_gl(r)),
    "dagger-action": lambda r: check_dagger_action(rand_gl(r), rand_gl(r), rand_sym(r)),
    "perp-pairing": lambda r: check_perp_pairing(rand_gl(r), rand_sym(r), rand_sym(r)),
    "w0-shift": lambda r: check_sh(rand_q(r), rand_q(r)),
    "weyl-s1": lambda r: check_nots1(),
    "tau-one": lambda r: check_tauone(rand_q(r), rand_nonzero(r), rand_q(r), rand_nonzero(r)),
    "ell-conjugation": lambda r: check_ell_conj(rand_nonzero(r), rand_q(r), rand_nonzero(r)),
}


def run_identities(n=1000, seed=0):
    """``{name: number of failing instances}`` over ``n`` random rational draws each."""
    out = {}
    for name, fn in IDENTITIES.items():
        rng = random.Random(f"{seed}:{name}")
        out[name] = sum(not fn(rng) for _ in range(n))
    return out
